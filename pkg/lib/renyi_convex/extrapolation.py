"""
Limit estimation
================

Two tools for s -> 0 and h -> 0 limits:

    richardson_extrapolate   known error order, geometric step sequence
    power_law_limit          fit q(s) = L + c s^beta with beta >= 0.5 free

power_law_limit is used for the surface-body quotients, whose error term
depends on the body and has no known rate.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from .log import get_logger

log = get_logger("extrapolation")


def richardson_extrapolate(base_values: Sequence, p: int, r: float = 2.0):
    """
    Richardson table on approximations computed with steps shrinking by r.

    Parameters:
    -----------
    base_values : sequence of float or np.ndarray
        Approximations, coarsest first
    p : int
        Order of the leading error term; successive columns remove p, 2p, ...
    r : float
        Step reduction factor between entries
    """
    n = len(base_values)
    if n < 2:
        raise ValueError("richardson_extrapolate needs at least two values")
    vals = [np.asarray(v, dtype=float) for v in base_values]
    for j in range(1, n):
        factor = r ** (p * j)
        for k in range(n - 1, j - 1, -1):
            vals[k] = (factor * vals[k] - vals[k - 1]) / (factor - 1.0)
    result = vals[-1]
    return float(result) if result.ndim == 0 else result


@dataclass(frozen=True)
class PowerLawFit:
    limit: float
    coefficient: float
    exponent: float
    residual: float  # max |q - model| over the grid
    monotone: bool


def power_law_limit(s_values, q_values, min_exponent: float = 0.5) -> PowerLawFit:
    """Fit q(s) = L + c s^beta (beta >= min_exponent) and return L."""
    s = np.asarray(s_values, dtype=float)
    q = np.asarray(q_values, dtype=float)
    order = np.argsort(s)
    s, q = s[order], q[order]
    diffs = np.diff(q)
    monotone = bool(np.all(diffs >= -1e-12 * np.abs(q[:-1])) or np.all(diffs <= 1e-12 * np.abs(q[:-1])))

    scale = max(np.max(np.abs(q)), 1e-300)
    s_ref = s[-1]

    def model(x, L, c, beta):
        return L + c * (x / s_ref) ** beta

    span = q[-1] - q[0]
    p0 = (q[0], span if span != 0.0 else 1e-3 * scale, 2.0)
    try:
        params, _ = curve_fit(
            model,
            s,
            q,
            p0=p0,
            bounds=([-np.inf, -np.inf, min_exponent], [np.inf, np.inf, 8.0]),
            x_scale=[scale, scale, 1.0],
            max_nfev=4000,
        )
    except RuntimeError as e:
        log.warning(f"power-law fit failed ({e}); using the smallest-s quotient")
        return PowerLawFit(float(q[0]), 0.0, 0.0, float(np.max(np.abs(q - q[0]))), monotone)

    L, c, beta = (float(v) for v in params)
    residual = float(np.max(np.abs(model(s, L, c, beta) - q)))
    if not monotone:
        log.warning("quotients are not monotone in s; extrapolation is ill-conditioned")
    return PowerLawFit(L, c, beta, residual, monotone)
