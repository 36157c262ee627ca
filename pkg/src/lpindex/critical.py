"""Critical point of max_t |t^(p-1) - t| / (1 + t^p) and its certified bracket.

compute_mp finds the interior maximizer t0 and the maximum value; the grid
pre-scan localizes the critical point and a bisection on the closed-form
derivative polishes it to machine precision.  lemma21_bounds evaluates the
bracketing inequalities

    ((2p-2)/(4-p))^(1/(2-p)) <= t0 <= ((p-1)/(2p+1))^(1/p),
    t0^(2p-3) <= q/p,

and reports the smallest slack; a 1e-9 safety band is absorbed into each
comparison so that a pass means the inequality holds with visible margin,
not merely up to rounding.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_GRID_N, Exponent, maximize_1d

_EPS = sys.float_info.epsilon

SAFETY_MARGIN = 1e-9

# hypothesis range of the bracketing inequalities: p in [6/5, 3/2]
_HYP_LO = 1.2
_HYP_HI = 1.5


@dataclass(frozen=True)
class CriticalPoint:
    """Maximizer t0 and value mp of |t^(p-1) - t|/(1 + t^p) on [0, 1].

    derivative_residual is the signed closed-form derivative at the reported
    t0 (0 where it was not used, i.e. the degenerate p = 2 branch).
    """

    p: float
    t0: float
    mp: float
    derivative_residual: float
    degenerate: bool = False


@dataclass(frozen=True)
class BoundsReport:
    """Slack report for the t0 bracket and the exponent inequality at one p."""

    p: float
    lower: float
    t0: float
    upper: float
    exponent_check_lhs: float
    exponent_check_rhs: float
    all_hold: bool
    margin: float
    in_hypothesis: bool = True


def objective(t, e: Exponent):
    """|t^(p-1) - t| / (1 + t^p), vectorized."""
    p = e.p
    return np.abs(t ** (p - 1.0) - t) / (1.0 + t**p)


def phi_derivative(t: float, e: Exponent) -> float:
    """Closed-form derivative of (t^(p-1) - t)/(1 + t^p) on 0 < t < 1.

    This is the signed form (no absolute value): for p < 2 it is the
    derivative of the objective itself, for p > 2 of its negative.
    """
    t = float(t)
    if not (0.0 < t < 1.0):
        raise ValueError(f"t must lie strictly inside (0, 1), got {t!r}")
    p = e.p
    tp = t**p
    tp1 = t ** (p - 1.0)
    tp2 = t ** (p - 2.0)
    return (((p - 1.0) * tp2 - 1.0) * (1.0 + tp) - p * tp1 * (tp1 - t)) / (1.0 + tp) ** 2


def compute_mp(e: Exponent, tol: float = 1e-10) -> CriticalPoint:
    """Maximize |t^(p-1) - t|/(1 + t^p) over [0, 1].

    Grid-plus-golden first, then bisection on the sign of the closed-form
    derivative wherever a sign change brackets the grid argmax.  p = 2 is an
    explicit degenerate branch (the numerator vanishes identically).
    """
    if not (tol > 0.0):
        raise ValueError(f"tol must be > 0, got {tol!r}")
    p = e.p
    if p == 2.0:
        return CriticalPoint(p=p, t0=0.0, mp=0.0, derivative_residual=0.0, degenerate=True)

    sgn = 1.0 if p < 2.0 else -1.0
    f = lambda t: objective(t, e)
    r = maximize_1d(f, 0.0, 1.0, grid_n=DEFAULT_GRID_N, tol=tol)
    t0, mp = r.argmax, r.value

    # The derivative blows up as t -> 0+ for p < 2, so the bisection bracket
    # starts from the grid-localized cell, clear of the singular endpoints.
    h = 1.0 / DEFAULT_GRID_N
    lo = max(t0 - h, 1e-12)
    hi = min(t0 + h, 1.0 - 1e-12)
    resid = sgn * phi_derivative(t0, e) if 0.0 < t0 < 1.0 else math.nan
    if lo < hi and sgn * phi_derivative(lo, e) > 0.0 > sgn * phi_derivative(hi, e):
        while hi - lo > 2.0 * _EPS * hi:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if sgn * phi_derivative(mid, e) > 0.0:
                lo = mid
            else:
                hi = mid
        t_ref = 0.5 * (lo + hi)
        v_ref = float(f(t_ref))
        # the bisected root is the better argmax; only reject it if its value
        # trails the golden-section best by more than rounding noise
        if v_ref >= mp - 8.0 * _EPS * abs(mp):
            t0, mp = t_ref, v_ref
        resid = sgn * phi_derivative(t0, e)
    return CriticalPoint(p=p, t0=t0, mp=mp, derivative_residual=resid, degenerate=False)


def _real_pow(base: float, expo: float) -> float:
    """base**expo as a float, nan outside the real domain."""
    try:
        with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
            return float(np.float64(base) ** np.float64(expo))
    except (ValueError, ZeroDivisionError, OverflowError):
        return math.nan


def lemma21_bounds(e: Exponent, tol: float = 1e-10) -> BoundsReport:
    """Evaluate the t0 bracket and the exponent inequality at one p.

    Outside [6/5, 3/2] the report is still computed but flagged
    in_hypothesis=False (the formulas may leave their real domain there, in
    which case all_hold is False and margin is nan).
    """
    p, q = e.p, e.q
    in_hyp = (_HYP_LO - 1e-12) <= p <= (_HYP_HI + 1e-12)

    lower = _real_pow((2.0 * p - 2.0) / (4.0 - p), 1.0 / (2.0 - p)) if p != 2.0 else math.nan
    upper = _real_pow((p - 1.0) / (2.0 * p + 1.0), 1.0 / p)
    cp = compute_mp(e, tol=tol)
    t0 = cp.t0
    lhs = _real_pow(t0, 2.0 * p - 3.0)
    rhs = q / p

    slacks = (t0 - lower, upper - t0, rhs - lhs)
    if all(math.isfinite(x) for x in slacks):
        margin = min(slacks)
        all_hold = margin >= SAFETY_MARGIN
    else:
        margin = math.nan
        all_hold = False
    return BoundsReport(
        p=p,
        lower=lower,
        t0=t0,
        upper=upper,
        exponent_check_lhs=lhs,
        exponent_check_rhs=rhs,
        all_hold=all_hold,
        margin=margin,
        in_hypothesis=in_hyp,
    )
