"""
Sphere Quadrature
=================

Integration over S^{n-1} with doubling convergence control and infinity
classification.

RULES:
------
    circle_rule(m)                  n = 2, m equispaced angles (trapezoid)
    graded_circle_rule(bps, level)  n = 2, tanh-sinh on each arc between
                                    breakpoints (singular directions)
    s2_rule(level)                  n = 3, Gauss-Legendre x equispaced azimuth
    mc_rule(n, N, seed)             any n, normalized Gaussian directions

A RuleFamily turns "doubling k" into a rule; integrate() walks the family
until two successive values agree to tol, summing node contributions with a
fixed pairwise tree so that results do not depend on evaluation order.

CLASSIFICATION:
---------------
    finite                      converged
    plus_infinity               a node value is +inf, or an endpoint probe
                                shows a non-integrable power law d^beta, beta <= -1
    minus_infinity_logdomain    a node value is -inf
    failed                      NaN at a node, or no convergence
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import gammaln, roots_legendre

from . import constants
from .errors import InvalidArgument, NonConvergence
from .log import get_logger

log = get_logger("quad")

# =============================================================================
# TYPES
# =============================================================================


@dataclass(frozen=True, eq=False)
class SphereRule:
    """Nodes (m, n) on the unit sphere with positive surface-measure weights (m,)."""

    dim: int
    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    level: int = 0
    seed: int | None = None

    @property
    def size(self) -> int:
        return int(self.weights.size)


@dataclass(frozen=True)
class IntegralResult:
    value: float
    err_estimate: float
    classification: str
    nodes_used: int = 0

    @property
    def is_finite(self) -> bool:
        return self.classification == "finite"

    def require(self, what: str = "integral") -> float:
        """The value, or NonConvergence when the integral failed."""
        if self.classification == "failed":
            raise NonConvergence(
                f"{what} did not converge (last change {self.err_estimate:.3e}, "
                f"{self.nodes_used} nodes)"
            )
        return self.value


@dataclass(frozen=True, eq=False)
class RuleFamily:
    """
    Rule generator indexed by the doubling count.

    Attributes:
    -----------
    name : str
        circle, graded, s2, monte_carlo, arc
    build : callable
        doubling k -> SphereRule
    max_doublings : int
        Last admissible k
    breakpoints : np.ndarray
        (k, 2) unit vectors at which the endpoint probe runs (graded only)
    deterministic : bool
        False for Monte Carlo (single evaluation, standard error)
    """

    name: str
    build: Callable[[int], SphereRule]
    max_doublings: int = constants.MAX_DOUBLINGS
    breakpoints: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    deterministic: bool = True

    def rule(self, k: int) -> SphereRule:
        return self.build(k)


def sphere_area(n: int) -> float:
    """|S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)."""
    return float(2.0 * np.exp(0.5 * n * np.log(np.pi) - gammaln(0.5 * n)))


def pairwise_sum(values) -> float:
    """Sum with a fixed binary tree (pad with zeros to even length at each level)."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        return 0.0
    while v.size > 1:
        if v.size % 2:
            v = np.append(v, 0.0)
        v = v[0::2] + v[1::2]
    return float(v[0])


# =============================================================================
# RULES
# =============================================================================


def circle_rule(m: int, offset: float = 0.0) -> SphereRule:
    """m equispaced angles 2 pi (j + offset) / m, weight 2 pi / m."""
    if m < 8 or m % 2:
        raise InvalidArgument(f"circle rule needs an even m >= 8, got {m}")
    theta = 2.0 * np.pi * (np.arange(m) + offset) / m
    nodes = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    return SphereRule(2, nodes, np.full(m, 2.0 * np.pi / m), "circle_trapezoid", level=m)


def s2_rule(level: int) -> SphereRule:
    """
    Gauss-Legendre (level nodes in cos of the polar angle) x 2 level azimuths.

    Exact for spherical polynomials of degree < 2 level in the polar variable
    and azimuthal frequency < 2 level.
    """
    if level < 1:
        raise InvalidArgument(f"s2 rule needs level >= 1, got {level}")
    t, w = roots_legendre(level)
    m = 2 * level
    phi = 2.0 * np.pi * (np.arange(m) + 0.5) / m
    st = np.sqrt(1.0 - t**2)
    nodes = np.stack(
        [
            np.outer(st, np.cos(phi)).ravel(),
            np.outer(st, np.sin(phi)).ravel(),
            np.repeat(t, m),
        ],
        axis=1,
    )
    weights = np.repeat(w, m) * (2.0 * np.pi / m)
    return SphereRule(3, nodes, weights, "s2_product", level=level)


def mc_rule(n: int, N: int, seed: int) -> SphereRule:
    """N normalized standard Gaussian directions from numpy's default_rng(seed)."""
    if n < 2:
        raise InvalidArgument(f"dimension must be >= 2, got {n}")
    if N < 1000:
        raise InvalidArgument(f"Monte Carlo rule needs N >= 1000, got {N}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((N, n))
    nodes = g / np.linalg.norm(g, axis=1, keepdims=True)
    return SphereRule(n, nodes, np.full(N, sphere_area(n) / N), "monte_carlo", level=N, seed=seed)


def _tanh_sinh(level: int, length: float) -> tuple[np.ndarray, ...]:
    """
    Distances from the left and right end of [0, length], weights and abscissae.

    t = length / (1 + exp(-2y)), y = (pi/2) sinh(x), x on a grid of step 2^-level
    in [-5, 5]. Distances are formed directly so that they stay accurate near
    either end.
    """
    h = 2.0**-level
    half = int(round(constants.GRADED_HALF_WIDTH / h))
    x = h * np.arange(-half, half + 1)
    y = 0.5 * np.pi * np.sinh(x)
    d_left = length / (1.0 + np.exp(-2.0 * y))
    d_right = length / (1.0 + np.exp(2.0 * y))
    e = np.exp(-2.0 * np.abs(y))
    sech2 = 4.0 * e / (1.0 + e) ** 2
    w = h * length * 0.5 * np.pi * np.cosh(x) * sech2 / 2.0
    ok = (w > 0.0) & (d_left > 0.0) & (d_right > 0.0)
    return d_left[ok], d_right[ok], w[ok], x[ok]


def _perp(b: np.ndarray) -> np.ndarray:
    return np.array([-b[1], b[0]])


def graded_arc_rule(theta0: float, theta1: float, level: int) -> SphereRule:
    """tanh-sinh rule on the arc of angles [theta0, theta1], weights sum to theta1 - theta0."""
    length = theta1 - theta0
    if not length > 0.0:
        raise InvalidArgument(f"arc must have positive length, got [{theta0}, {theta1}]")
    b0 = np.array([np.cos(theta0), np.sin(theta0)])
    b1 = np.array([np.cos(theta1), np.sin(theta1)])
    return _graded_arc(b0, b1, length, level)


def _graded_arc(b0: np.ndarray, b1: np.ndarray, length: float, level: int) -> SphereRule:
    dl, dr, w, x = _tanh_sinh(level, length)
    left = x < 0.0
    nodes = np.empty((w.size, 2))
    nodes[left] = np.cos(dl[left])[:, None] * b0 + np.sin(dl[left])[:, None] * _perp(b0)
    nodes[~left] = np.cos(dr[~left])[:, None] * b1 - np.sin(dr[~left])[:, None] * _perp(b1)
    return SphereRule(2, nodes, w, "graded_circle", level=level)


def _sorted_breakpoints(breakpoints) -> tuple[np.ndarray, np.ndarray]:
    b = np.atleast_2d(np.asarray(breakpoints, dtype=float))
    b = b / np.linalg.norm(b, axis=1, keepdims=True)
    angles = np.mod(np.arctan2(b[:, 1], b[:, 0]), 2.0 * np.pi)
    order = np.argsort(angles)
    angles, b = angles[order], b[order]
    keep = np.concatenate([[True], np.diff(angles) > 1e-14])
    return b[keep], angles[keep]


def graded_circle_rule(breakpoints, level: int) -> SphereRule:
    """tanh-sinh rule on each arc between consecutive breakpoints (cyclically)."""
    b, angles = _sorted_breakpoints(breakpoints)
    k = b.shape[0]
    nodes, weights = [], []
    for i in range(k):
        j = (i + 1) % k
        length = angles[j] - angles[i] if j else angles[0] + 2.0 * np.pi - angles[i]
        rule = _graded_arc(b[i], b[j], length, level)
        nodes.append(rule.nodes)
        weights.append(rule.weights)
    return SphereRule(2, np.vstack(nodes), np.concatenate(weights), "graded_circle", level=level)


# =============================================================================
# FAMILIES
# =============================================================================


def circle_family(start: int = constants.CIRCLE_START, max_doublings: int = constants.MAX_DOUBLINGS) -> RuleFamily:
    return RuleFamily("circle", lambda k: circle_rule(start * 2**k), max_doublings=max_doublings)


def graded_family(
    breakpoints, start: int = constants.GRADED_START_LEVEL, max_doublings: int = constants.MAX_DOUBLINGS
) -> RuleFamily:
    b, _ = _sorted_breakpoints(breakpoints)
    return RuleFamily("graded", lambda k: graded_circle_rule(b, start + k), max_doublings=max_doublings, breakpoints=b)


def arc_family(theta0: float, theta1: float, breakpoints=None) -> RuleFamily:
    """Graded rule on [theta0, theta1], split at any breakpoints inside the arc."""
    cuts = [theta0, theta1]
    if breakpoints is not None and np.size(breakpoints):
        _, angles = _sorted_breakpoints(breakpoints)
        for a in angles:
            for shift in (-2.0 * np.pi, 0.0, 2.0 * np.pi):
                if theta0 + 1e-14 < a + shift < theta1 - 1e-14:
                    cuts.append(a + shift)
    cuts = np.sort(np.asarray(cuts))

    def build(k: int) -> SphereRule:
        rules = [graded_arc_rule(t0, t1, constants.GRADED_START_LEVEL + k) for t0, t1 in zip(cuts[:-1], cuts[1:])]
        return SphereRule(
            2,
            np.vstack([r.nodes for r in rules]),
            np.concatenate([r.weights for r in rules]),
            "graded_arc",
            level=constants.GRADED_START_LEVEL + k,
        )

    ends = np.stack([np.cos(cuts), np.sin(cuts)], axis=1)
    return RuleFamily("arc", build, breakpoints=ends)


def s2_family(start: int = constants.S2_START_LEVEL, max_level: int = 256) -> RuleFamily:
    doublings = int(np.log2(max_level // start))
    return RuleFamily("s2", lambda k: s2_rule(start * 2**k), max_doublings=doublings)


def mc_family(n: int, samples: int = constants.MC_SAMPLES, seed: int = constants.DEFAULT_SEED) -> RuleFamily:
    return RuleFamily(
        "monte_carlo", lambda k: mc_rule(n, samples, seed), max_doublings=0, deterministic=False
    )


def default_family(
    dim: int,
    breakpoints=None,
    seed: int = constants.DEFAULT_SEED,
    mc_samples: int = constants.MC_SAMPLES,
    max_doublings: int = constants.MAX_DOUBLINGS,
) -> RuleFamily:
    """
    n = 2: graded if there are breakpoints, else circle; n = 3: s2; n >= 4: Monte Carlo.

    max_doublings caps the s2 family below its own level limit; the Monte
    Carlo family is evaluated once whatever the cap.
    """
    if max_doublings < 0:
        raise InvalidArgument(f"max_doublings must be >= 0, got {max_doublings}")
    if dim == 2:
        if breakpoints is not None and np.size(breakpoints):
            return graded_family(breakpoints, max_doublings=max_doublings)
        return circle_family(max_doublings=max_doublings)
    if dim == 3:
        family = s2_family()
        return replace(family, max_doublings=min(family.max_doublings, max_doublings))
    return mc_family(dim, mc_samples, seed)


def family_for_bodies(
    bodies,
    seed: int = constants.DEFAULT_SEED,
    mc_samples: int = constants.MC_SAMPLES,
    max_doublings: int = constants.MAX_DOUBLINGS,
) -> RuleFamily:
    """Default family for integrands built from these bodies (union of their singular directions)."""
    dim = bodies[0].dim
    singular = [K.singular_directions for K in bodies if K.singular_directions.size]
    breakpoints = np.vstack(singular) if singular else None
    return default_family(dim, breakpoints, seed, mc_samples, max_doublings)


# =============================================================================
# INTEGRATION
# =============================================================================


def _rotate(b: np.ndarray, d: float) -> np.ndarray:
    return np.cos(d) * b + np.sin(d) * _perp(b)


def probe_endpoint_exponents(g, breakpoints) -> np.ndarray:
    """
    Local exponents beta of g ~ d^beta on both sides of each breakpoint.

    Uses distances PROBE_FAR and PROBE_NEAR along the circle. Sides where g is
    not positive and finite at both distances give beta = nan, except an
    infinite value at the near point, which gives -inf.
    """
    b = np.atleast_2d(breakpoints)
    if b.size == 0:
        return np.zeros(0)
    d1, d2 = constants.PROBE_FAR, constants.PROBE_NEAR
    points = []
    for bk in b:
        for sign in (1.0, -1.0):
            points.append(_rotate(bk, sign * d1))
            points.append(_rotate(bk, sign * d2))
    with np.errstate(all="ignore"):
        values = np.asarray(g(np.array(points)), dtype=float).reshape(-1, 2)
        g1, g2 = values[:, 0], values[:, 1]
        beta = np.log(g2 / g1) / np.log(d2 / d1)
    beta = np.where((g1 > 0) & (g2 > 0) & np.isfinite(g1), beta, np.nan)
    beta = np.where(np.isposinf(g2) & np.isfinite(g1), -np.inf, beta)
    return beta


def integrate(
    g: Callable[[np.ndarray], np.ndarray],
    family: RuleFamily,
    tol: float = constants.DEFAULT_TOL,
    atol: float = 1e-14,
    max_doublings: int | None = None,
) -> IntegralResult:
    """
    Integrate g over the sphere, doubling the rule until successive values
    differ by at most max(tol |value|, atol).
    """
    if family.breakpoints.size:
        beta = probe_endpoint_exponents(g, family.breakpoints)
        if np.any(beta <= constants.NONINTEGRABLE_EXPONENT):
            log.info(f"non-integrable endpoint (exponent {np.nanmin(beta):.4f}); +inf")
            return IntegralResult(np.inf, 0.0, "plus_infinity")

    limit = family.max_doublings if max_doublings is None else min(max_doublings, family.max_doublings)
    previous = None
    diff = np.inf
    rule = None
    for k in range(limit + 1):
        rule = family.rule(k)
        with np.errstate(all="ignore"):
            values = np.asarray(g(rule.nodes), dtype=float)
        if np.any(np.isnan(values)):
            log.warning(f"NaN integrand on {family.name} rule level {rule.level}")
            return IntegralResult(np.nan, np.inf, "failed", rule.size)
        if np.any(np.isposinf(values)):
            log.info(f"+inf integrand value on {family.name} rule")
            return IntegralResult(np.inf, 0.0, "plus_infinity", rule.size)
        if np.any(np.isneginf(values)):
            log.info(f"-inf integrand value on {family.name} rule")
            return IntegralResult(-np.inf, 0.0, "minus_infinity_logdomain", rule.size)

        terms = values * rule.weights
        value = pairwise_sum(terms)
        if not family.deterministic:
            err = float(np.std(values, ddof=1) * np.sum(rule.weights) / np.sqrt(rule.size))
            return IntegralResult(value, err, "finite", rule.size)
        if previous is not None:
            diff = abs(value - previous)
            log.debug(f"{family.name} level {rule.level}: {value!r} (change {diff:.3e})")
            if diff <= max(tol * abs(value), atol):
                return IntegralResult(value, diff, "finite", rule.size)
        previous = value

    log.warning(f"no convergence after {limit} doublings on {family.name} (change {diff:.3e})")
    return IntegralResult(previous, diff, "failed", rule.size if rule else 0)


def node_values(g, family: RuleFamily, doublings: int = 1) -> np.ndarray:
    """g on the nodes of the first (doublings + 1) rules of the family, concatenated."""
    out = []
    for k in range(min(doublings, family.max_doublings) + 1):
        with np.errstate(all="ignore"):
            out.append(np.asarray(g(family.rule(k).nodes), dtype=float))
    return np.concatenate(out)
