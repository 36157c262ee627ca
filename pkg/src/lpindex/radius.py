"""Numerical radius of 2x2 operators on the l_p plane.

Two independent routes are kept deliberately separate: numerical_radius uses
the closed two-branch form

    v(T) = max( max_t (|a + d t^p| + |b t + c t^(p-1)|) / (1 + t^p),
                max_t (|d + a t^p| + |c t + b t^(p-1)|) / (1 + t^p) ),

with t over [0, 1], while radius_oracle brute-forces the defining supremum of
|x*(Tx)| over norming pairs via the duality map on the unit sphere.  Tests
hold the two against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_GRID_N, Exponent, Mat2, _golden_max, _top_separated, maximize_1d


@dataclass(frozen=True)
class RadiusResult:
    """Numerical radius with the attained branch and its maximizer.

    branch is "first" or "second"; ties within tol report "first".
    """

    value: float
    branch: str
    t_star: float
    tol: float


def conjugate_by_swap(T: Mat2) -> Mat2:
    """Conjugation by the coordinate swap: (a b; c d) -> (d c; b a)."""
    return Mat2(T.d, T.c, T.b, T.a)


def branch_integrand(T: Mat2, e: Exponent):
    """First-branch integrand t -> (|a + d t^p| + |b t + c t^(p-1)|)/(1 + t^p).

    At t = 0 the t^(p-1) term vanishes (p > 1), so the value is exactly |a|.
    The second branch is this integrand applied to the swap-conjugated matrix.
    """
    a, b, c, d = T.as_tuple()
    p = e.p

    def f(t):
        tp = t**p
        return (np.abs(a + d * tp) + np.abs(b * t + c * t ** (p - 1.0))) / (1.0 + tp)

    return f


def numerical_radius(
    T: Mat2,
    e: Exponent,
    tol: float = 1e-10,
    grid_n: int = DEFAULT_GRID_N,
) -> RadiusResult:
    """Numerical radius via the two-branch closed form."""
    if not (tol > 0.0):
        raise ValueError(f"tol must be > 0, got {tol!r}")
    r1 = maximize_1d(branch_integrand(T, e), 0.0, 1.0, grid_n=grid_n, tol=tol, polish_k=2)
    r2 = maximize_1d(
        branch_integrand(conjugate_by_swap(T), e), 0.0, 1.0, grid_n=grid_n, tol=tol, polish_k=2
    )
    value = max(r1.value, r2.value)
    if r2.value > r1.value + tol:
        branch, t_star = "second", r2.argmax
    else:
        branch, t_star = "first", r1.argmax
    return RadiusResult(value=value, branch=branch, t_star=t_star, tol=tol)


def radius_oracle(T: Mat2, e: Exponent, grid_n: int = DEFAULT_GRID_N) -> float:
    """Brute-force supremum of |x*(Tx)| over norming pairs.

    x runs over the half unit sphere x = (sigma*s, (1-s^p)^(1/p)), s in [0, 1]
    (enough, since the pairing is invariant under x -> -x), and x* is the
    duality map (sgn(x1)|x1|^(p-1), sgn(x2)|x2|^(p-1)), the unique norming
    functional for 1 < p < infinity.  The grid includes both endpoints exactly
    because the duality-map exponent p-1 < 1 is non-smooth at the axes; the
    best cells get one golden-section polish each.
    """
    if grid_n < 16:
        raise ValueError(f"grid_n must be >= 16, got {grid_n}")
    a, b, c, d = T.as_tuple()
    p = e.p

    s = np.linspace(0.0, 1.0, grid_n + 1)
    comp = np.maximum(1.0 - s**p, 0.0) ** (1.0 / p)
    s_dual = s ** (p - 1.0)
    comp_dual = comp ** (p - 1.0)

    def pairing(sig):
        x1 = sig * s
        x1s = sig * s_dual
        return np.abs(x1s * (a * x1 + b * comp) + comp_dual * (c * x1 + d * comp))

    def pairing_scalar(t, sig):
        x1 = sig * t
        x2 = max(1.0 - t**p, 0.0) ** (1.0 / p)
        x1s = sig * t ** (p - 1.0)
        x2s = x2 ** (p - 1.0)
        return abs(x1s * (a * x1 + b * x2) + x2s * (c * x1 + d * x2))

    best = 0.0
    for sig in (1.0, -1.0):
        ys = pairing(sig)
        best = max(best, float(ys.max()))
        for i in _top_separated(ys, 2):
            lo = float(s[max(i - 1, 0)])
            hi = float(s[min(i + 1, grid_n)])
            x, y, _, _ = _golden_max(lambda t, sig=sig: pairing_scalar(t, sig), lo, hi, 1e-12)
            best = max(best, y)
    return best
