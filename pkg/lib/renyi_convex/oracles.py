"""
Closed-form ground truth
========================

    lr_renyi_closed_form    D_alpha for the unit ball of l_r^n (Gamma ratios)
    lr_volume               |B_r^n| by the Dirichlet formula
    mc_lr_volume            hit-or-miss estimate of |B_r^n|
    disk_surface_body_law   surface body of a disk of radius rho, f = 1
    disk_illumination_body_law

All Gamma ratios are formed in log space with scipy.special.gammaln, so n
can go to 50 and beyond without overflow.

REGIMES (l_r balls):
--------------------
With x_PQ = (1 + alpha (r - 2)) / r and x_QP = (r - 1 - alpha (r - 2)) / r
the closed form involves Gamma(x)^n / Gamma(n x); x <= 0 means the Hellinger
integral diverges:

    1 < r < 2:  PQ = +inf iff alpha >= 1 / (2 - r)
                QP = -inf iff alpha <= -(r - 1) / (2 - r)
    r > 2:      PQ = -inf iff alpha <= -1 / (r - 2)
                QP = +inf iff alpha >= (r - 1) / (r - 2)
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from . import constants
from .errors import InvalidArgument


@dataclass(frozen=True)
class LrOracleResult:
    value: float
    regime: str  # finite, plus_inf, minus_inf
    thresholds: dict[str, float] = field(default_factory=dict)


def lr_thresholds(r: float) -> dict[str, float]:
    """The four (r, alpha) boundary values; nan where a regime cannot occur."""
    nan = float("nan")
    if r < 2.0:
        return {
            "PQ_plus_inf": 1.0 / (2.0 - r),
            "PQ_minus_inf": nan,
            "QP_plus_inf": nan,
            "QP_minus_inf": -(r - 1.0) / (2.0 - r),
        }
    if r > 2.0:
        return {
            "PQ_plus_inf": nan,
            "PQ_minus_inf": -1.0 / (r - 2.0),
            "QP_plus_inf": (r - 1.0) / (r - 2.0),
            "QP_minus_inf": nan,
        }
    return {key: nan for key in ("PQ_plus_inf", "PQ_minus_inf", "QP_plus_inf", "QP_minus_inf")}


def lr_renyi_closed_form(n: int, r: float, alpha: float, direction: str = "PQ") -> LrOracleResult:
    """
    D_alpha between the cone measures of the l_r unit ball, alpha != 1.

    Parameters:
    -----------
    n : int
        Dimension, n >= 2
    r : float
        1 < r < inf
    alpha : float
        Finite order other than 1
    direction : str
        "PQ" for D(P || Q), "QP" for D(Q || P)
    """
    if not 1.0 < r < np.inf:
        raise InvalidArgument(f"closed form needs 1 < r < inf, got {r!r}")
    if n < 2:
        raise InvalidArgument(f"dimension must be >= 2, got {n}")
    if alpha == 1.0:
        raise InvalidArgument("no closed form at alpha = 1 (the Kullback-Leibler case)")
    if not np.isfinite(alpha):
        raise InvalidArgument("closed form needs a finite alpha")
    direction = direction.upper()
    if direction not in ("PQ", "QP"):
        raise InvalidArgument(f"direction must be PQ or QP, got {direction!r}")

    thresholds = lr_thresholds(r)
    if direction == "PQ":
        weight_p, x = 1.0 - alpha, (1.0 + alpha * (r - 2.0)) / r
    else:
        weight_p, x = alpha, (r - 1.0 - alpha * (r - 2.0)) / r

    if x <= 0.0:
        # the divergent Hellinger integral is +inf; the sign comes from 1 / (alpha - 1)
        value = np.inf if alpha > 1.0 else -np.inf
        return LrOracleResult(value, "plus_inf" if value > 0 else "minus_inf", thresholds)

    log_first = gammaln(n / r) - n * gammaln(1.0 / r)
    log_second = gammaln(n * (1.0 - 1.0 / r)) - n * gammaln(1.0 - 1.0 / r)
    log_h = weight_p * log_first + (1.0 - weight_p) * log_second + n * gammaln(x) - gammaln(n * x)
    return LrOracleResult(float(log_h / (alpha - 1.0)), "finite", thresholds)


def lr_volume(n: int, r: float) -> float:
    """|B_r^n| = 2^n Gamma(1 + 1/r)^n / Gamma(1 + n/r)."""
    if not 1.0 < r < np.inf:
        raise InvalidArgument(f"lr_volume needs 1 < r < inf, got {r!r}")
    return float(np.exp(n * np.log(2.0) + n * gammaln(1.0 + 1.0 / r) - gammaln(1.0 + n / r)))


def mc_lr_volume(
    n: int, r: float, samples: int = 1_000_000, seed: int = constants.DEFAULT_SEED
) -> tuple[float, float]:
    """Hit-or-miss estimate of |B_r^n| in [-1, 1]^n and its standard error."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0, 1.0, size=(samples, n))
    hits = np.sum(np.abs(x) ** r, axis=1) <= 1.0
    frac = float(np.mean(hits))
    cube = 2.0**n
    return cube * frac, cube * float(np.sqrt(frac * (1.0 - frac) / samples))


def disk_surface_body_law(rho: float, s: float) -> dict[str, float]:
    """K_{1,s} of the disk of radius rho: radius rho cos(s / 2 rho), deficit pi rho^2 sin^2(s / 2 rho)."""
    if not 0.0 <= s < np.pi * rho:
        raise InvalidArgument(f"disk law needs 0 <= s < pi rho, got s = {s!r}")
    t = s / (2.0 * rho)
    return {"radius": rho * np.cos(t), "area_deficit": np.pi * rho**2 * np.sin(t) ** 2}


def disk_illumination_body_law(rho: float, s: float) -> dict[str, float]:
    """K^{1,s} of the disk: radius rho / cos(s / 2 rho), excess pi rho^2 tan^2(s / 2 rho)."""
    if not 0.0 <= s < np.pi * rho:
        raise InvalidArgument(f"disk law needs 0 <= s < pi rho, got s = {s!r}")
    t = s / (2.0 * rho)
    return {"radius": rho / np.cos(t), "area_excess": np.pi * rho**2 * np.tan(t) ** 2}
