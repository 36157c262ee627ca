"""Shared domain types and the deterministic bracketed 1-d maximizer.

Everything downstream (operator norms, numerical radius, critical points,
the index search) reduces to maximizing piecewise-smooth functions on a
closed interval, so the maximizer here favors robustness: a dense grid
pre-scan localizes the best cells, golden-section refinement polishes them.
All values are 64-bit floats and all routines are pure functions, so results
are bit-reproducible and safe to evaluate from parallel sweeps.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_EPS = sys.float_info.epsilon

DEFAULT_GRID_N = 4096
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class Exponent:
    """An exponent p in (1, inf) together with its conjugate q = p/(p-1)."""

    p: float
    q: float

    def __post_init__(self):
        if not math.isfinite(self.p) or self.p <= 1.0:
            raise ValueError(f"p must be finite and > 1, got {self.p!r}")
        if not math.isfinite(self.q):
            raise ValueError(f"q must be finite, got {self.q!r}")
        if abs(1.0 / self.p + 1.0 / self.q - 1.0) > 4.0 * _EPS:
            raise ValueError(f"q={self.q!r} is not conjugate to p={self.p!r}")


def make_exponent(p: float) -> Exponent:
    """Validate p and derive the conjugate exponent q = p/(p-1)."""
    p = float(p)
    if not math.isfinite(p) or p <= 1.0:
        raise ValueError(f"p must be finite and > 1, got {p!r}")
    return Exponent(p=p, q=p / (p - 1.0))


@dataclass(frozen=True)
class Mat2:
    """A 2x2 real operator (a b; c d) acting on column vectors."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"matrix entry {name}={v!r} is not finite")
            object.__setattr__(self, name, v)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def apply(self, x1: float, x2: float) -> tuple[float, float]:
        return (self.a * x1 + self.b * x2, self.c * x1 + self.d * x2)

    def scaled(self, lam: float) -> "Mat2":
        return Mat2(lam * self.a, lam * self.b, lam * self.c, lam * self.d)


@dataclass(frozen=True)
class BracketedMax:
    """Result of a bracketed 1-d maximization.

    value equals the objective evaluated at argmax (recomputable bit-for-bit);
    tol is the half-width of the final golden-section bracket.
    """

    value: float
    argmax: float
    tol: float
    evaluations: int


def _eval_grid(objective: Callable, ts: np.ndarray) -> np.ndarray:
    """Evaluate the objective on a grid, vectorized when the callable allows it."""
    try:
        ys = np.asarray(objective(ts), dtype=float)
        if ys.shape == ts.shape:
            return ys
    except (TypeError, ValueError):
        pass
    return np.array([float(objective(float(t))) for t in ts])


def _golden_max(objective: Callable, a: float, b: float, tol: float):
    """Golden-section search for a maximum on [a, b].

    Returns (best_x, best_y, evaluations, final_half_width); best is tracked
    over every point probed, endpoints included.
    """
    evals = 0

    def ev(x):
        nonlocal evals
        y = float(objective(x))
        evals += 1
        if not math.isfinite(y):
            raise FloatingPointError(f"objective returned non-finite value at t={x!r}")
        return y

    best_x, best_y = a, ev(a)
    yb = ev(b)
    if yb > best_y:
        best_x, best_y = b, yb
    h = b - a
    if h / 2.0 <= tol:
        return best_x, best_y, evals, h / 2.0

    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    yc, yd = ev(c), ev(d)
    if yc > best_y:
        best_x, best_y = c, yc
    if yd > best_y:
        best_x, best_y = d, yd

    for _ in range(300):
        if (b - a) / 2.0 <= tol:
            break
        if yc >= yd:
            b, d, yd = d, c, yc
            h = b - a
            c = b - _INV_PHI * h
            yc = ev(c)
            if yc > best_y:
                best_x, best_y = c, yc
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + _INV_PHI * h
            yd = ev(d)
            if yd > best_y:
                best_x, best_y = d, yd
        if h <= 4.0 * _EPS * (abs(a) + abs(b)):
            break
    return best_x, best_y, evals, (b - a) / 2.0


def _top_separated(ys: np.ndarray, k: int) -> list[int]:
    """Indices of the k best grid values, greedily skipping adjacent cells."""
    order = np.argsort(ys, kind="stable")[::-1]
    chosen: list[int] = []
    for i in order:
        i = int(i)
        if all(abs(i - j) > 1 for j in chosen):
            chosen.append(i)
        if len(chosen) >= k:
            break
    return chosen


def maximize_1d(
    objective: Callable,
    lo: float,
    hi: float,
    grid_n: int = DEFAULT_GRID_N,
    tol: float = DEFAULT_TOL,
    polish_k: int = 1,
) -> BracketedMax:
    """Maximize a real objective on [lo, hi].

    Dense pre-scan on grid_n+1 equispaced points, then golden-section
    refinement of the best grid cell (the best polish_k separated cells when
    polish_k > 1, which guards against near-tied local maxima).  The returned
    value is never below the best grid value, and the final bracket half-width
    is at most tol.  Deterministic: identical inputs give identical outputs.
    Non-finite objective values raise FloatingPointError.
    """
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ValueError(f"invalid bracket [{lo!r}, {hi!r}]")
    if grid_n < 3:
        raise ValueError(f"grid_n must be >= 3, got {grid_n}")
    if not (tol > 0.0):
        raise ValueError(f"tol must be > 0, got {tol!r}")
    if polish_k < 1:
        raise ValueError(f"polish_k must be >= 1, got {polish_k}")

    ts = np.linspace(lo, hi, grid_n + 1)
    ys = _eval_grid(objective, ts)
    if not np.isfinite(ys).all():
        bad = ts[~np.isfinite(ys)][0]
        raise FloatingPointError(f"objective returned non-finite value at t={bad!r}")
    evals = int(ts.size)

    best_i = int(np.argmax(ys))
    best_t = float(ts[best_i])
    best_y = float(ys[best_i])

    half = (hi - lo) / (2.0 * grid_n)
    for i in _top_separated(ys, polish_k):
        a = float(ts[max(i - 1, 0)])
        b = float(ts[min(i + 1, grid_n)])
        x, y, n, hw = _golden_max(objective, a, b, tol)
        evals += n
        if i == best_i:
            half = hw
        if y > best_y:
            best_t, best_y = x, y
            half = hw
    return BracketedMax(value=best_y, argmax=best_t, tol=half, evaluations=evals)
