"""
Renyi Divergences of Cone Measures
==================================

D_alpha(P_K || Q_K) and D_alpha(Q_K || P_K) for alpha in [-inf, inf].

    finite alpha != 1   log(int p^a q^(1-a)) / (alpha - 1)
    alpha = 1 (kl)      int p log(p / q)
    +inf                log ess sup p / q       (node maxima)
    -inf                D_-inf(Q||P) = -D_inf(P||Q),  D_-inf(P||Q) = -D_inf(Q||P)

Polytopes are classified, not integrated (kappa = 0 a.e.):

    (Q||P)  +inf for every order
    (P||Q)  0 at alpha in {0, 1}, +inf for 0 < alpha < 1, -inf otherwise

Mixed divergences replace p, q by products of per-body factors on a single
sphere:

    P(u) = prod_i 1 / (n |K_i°| h_i^n)^(1/n)
    Q(u) = prod_i (h_i f_i / (n |K_i|))^(1/n)

RESIDUALS:
----------
Identity checks return IdentityCheck(lhs, rhs, residual, consistent, note).
When a side is infinite the residual is nan and consistent compares the
classifications instead.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.special import rel_entr

from . import bodies, constants
from .bodies import ConvexBody
from .cone_measures import DensityRoute, route_for
from .errors import InvalidArgument, UnsupportedSmoothness
from .log import get_logger
from .quadrature import RuleFamily, family_for_bodies, integrate, node_values, probe_endpoint_exponents

log = get_logger("divergence")

DIRECTIONS = ("PQ", "QP")

# =============================================================================
# TYPES
# =============================================================================


@dataclass(frozen=True)
class Order:
    """Order of a Renyi divergence: finite(alpha != 1), kl, plus_inf or minus_inf."""

    tag: str
    alpha: float | None = None

    def __post_init__(self) -> None:
        if self.tag not in ("finite", "kl", "plus_inf", "minus_inf"):
            raise InvalidArgument(f"unknown order tag {self.tag!r}")
        if self.tag == "finite" and (self.alpha is None or not np.isfinite(self.alpha) or self.alpha == 1.0):
            raise InvalidArgument(f"finite order needs a finite alpha != 1, got {self.alpha!r}")

    @classmethod
    def of(cls, alpha) -> Order:
        """Order from a number or from "kl", "inf", "-inf"."""
        if isinstance(alpha, Order):
            return alpha
        if isinstance(alpha, str) and alpha.strip().lower() == "kl":
            return cls("kl")
        try:
            a = float(alpha)
        except (TypeError, ValueError) as e:
            raise InvalidArgument(f"cannot read order {alpha!r}") from e
        if a == 1.0:
            return cls("kl")
        if a == np.inf:
            return cls("plus_inf")
        if a == -np.inf:
            return cls("minus_inf")
        if np.isnan(a):
            raise InvalidArgument("order is nan")
        return cls("finite", a)

    @property
    def value(self) -> float:
        return {"kl": 1.0, "plus_inf": np.inf, "minus_inf": -np.inf}.get(self.tag, self.alpha)

    def __str__(self) -> str:
        return self.tag if self.tag != "finite" else repr(self.alpha)


@dataclass(frozen=True)
class ExtendedValue:
    """A finite real or +-inf, with how it was obtained."""

    value: float
    reason: str = "computed"
    err_estimate: float = 0.0

    def __post_init__(self) -> None:
        if self.reason not in ("computed", "polytope_rule", "node_sup", "nonintegrable"):
            raise InvalidArgument(f"unknown reason {self.reason!r}")
        if np.isinf(self.value) and self.reason == "computed":
            raise InvalidArgument("an infinite value needs a classification reason")

    @property
    def is_finite(self) -> bool:
        return bool(np.isfinite(self.value))

    @property
    def classification(self) -> str:
        if self.value == np.inf:
            return "plus_infinity"
        if self.value == -np.inf:
            return "minus_infinity"
        return "finite"

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class IdentityCheck:
    lhs: float
    rhs: float
    residual: float
    consistent: bool
    note: str = ""


def identity_check(lhs: float, rhs: float, tol: float, relative: bool = False, note: str = "") -> IdentityCheck:
    """Compare two extended reals; infinite sides must agree exactly."""
    lhs, rhs = float(lhs), float(rhs)
    if not (np.isfinite(lhs) and np.isfinite(rhs)):
        same = lhs == rhs
        return IdentityCheck(lhs, rhs, np.nan, same, note or "classification comparison")
    residual = abs(lhs - rhs)
    if relative:
        residual /= max(abs(lhs), abs(rhs), 1e-300)
    return IdentityCheck(lhs, rhs, residual, residual <= tol, note)


def _check_direction(direction: str) -> str:
    d = direction.upper()
    if d not in DIRECTIONS:
        raise InvalidArgument(f"direction must be PQ or QP, got {direction!r}")
    return d


# =============================================================================
# POLYTOPES
# =============================================================================


def polytope_divergence(order: Order, direction: str) -> ExtendedValue:
    """The classification of D for a polytope (P_K vanishes a.e.)."""
    if direction == "QP":
        return ExtendedValue(np.inf, "polytope_rule")
    if order.tag == "kl":
        return ExtendedValue(0.0, "polytope_rule")
    if order.tag == "plus_inf":
        return ExtendedValue(-np.inf, "polytope_rule")
    if order.tag == "minus_inf":
        return ExtendedValue(-np.inf, "polytope_rule")
    a = order.alpha
    if a == 0.0:
        return ExtendedValue(0.0, "polytope_rule")
    if 0.0 < a < 1.0:
        return ExtendedValue(np.inf, "polytope_rule")
    return ExtendedValue(-np.inf, "polytope_rule")


# =============================================================================
# INTEGRALS
# =============================================================================


def _hellinger_integrand(route: DensityRoute, a: float) -> Callable[[np.ndarray], np.ndarray]:
    """p^a q^(1-a) times the route's measure jacobian; 0 where p = q = 0."""

    def g(x):
        p, q, jac = route.evaluate(x)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = np.exp(a * np.log(p) + (1.0 - a) * np.log(q)) * jac
        return np.where((p == 0.0) & (q == 0.0), 0.0, out)

    return g


def _log_hellinger(route: DensityRoute, a: float, tol: float) -> ExtendedValue:
    result = integrate(_hellinger_integrand(route, a), route.family, tol=tol)
    H = result.require("Hellinger integral")
    if result.classification == "plus_infinity":
        return ExtendedValue(np.inf, "nonintegrable")
    if H <= 0.0:
        return ExtendedValue(-np.inf, "nonintegrable")
    return ExtendedValue(float(np.log(H)), "computed", result.err_estimate / H)


def _from_log_hellinger(log_h: ExtendedValue, alpha: float) -> ExtendedValue:
    if not log_h.is_finite:
        return ExtendedValue(log_h.value / (alpha - 1.0), log_h.reason)
    return ExtendedValue(log_h.value / (alpha - 1.0), "computed", log_h.err_estimate / abs(alpha - 1.0))


def _kl(route: DensityRoute, direction: str, tol: float) -> ExtendedValue:
    def g(x):
        p, q, jac = route.evaluate(x)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            if direction == "PQ":
                return rel_entr(p, q) * jac
            return rel_entr(q, p) * jac

    result = integrate(g, route.family, tol=tol)
    value = result.require("Kullback-Leibler integral")
    if result.classification == "plus_infinity":
        return ExtendedValue(np.inf, "nonintegrable")
    return ExtendedValue(value, "computed", result.err_estimate)


def _sup_log_ratio(route: DensityRoute, direction: str) -> ExtendedValue:
    """log of the largest density ratio over the nodes of two rule levels."""

    def ratio(x):
        p, q, _ = route.evaluate(x)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return p / q if direction == "PQ" else q / p

    if route.family.breakpoints.size:
        beta = probe_endpoint_exponents(ratio, route.family.breakpoints)
        if np.any(beta <= -1e-3):
            return ExtendedValue(np.inf, "node_sup")
    values = node_values(ratio, route.family, doublings=constants.SUP_DOUBLINGS)
    values = values[~np.isnan(values)]
    top = float(np.max(values))
    if top == np.inf:
        return ExtendedValue(np.inf, "node_sup")
    if top <= 0.0:
        return ExtendedValue(-np.inf, "node_sup")
    return ExtendedValue(float(np.log(top)), "node_sup")


def _divergence_on_route(route: DensityRoute, order: Order, direction: str, tol: float) -> ExtendedValue:
    if order.tag == "kl":
        return _kl(route, direction, tol)
    if order.tag == "plus_inf":
        return _sup_log_ratio(route, direction)
    if order.tag == "minus_inf":
        flipped = _sup_log_ratio(route, "QP" if direction == "PQ" else "PQ")
        return ExtendedValue(-flipped.value, flipped.reason)
    a = order.alpha if direction == "PQ" else 1.0 - order.alpha
    return _from_log_hellinger(_log_hellinger(route, a, tol), order.alpha)


# =============================================================================
# PUBLIC API
# =============================================================================


def hellinger(
    K: ConvexBody,
    alpha: float,
    direction: str = "PQ",
    route: str = "sphere",
    family: RuleFamily | None = None,
    tol: float = constants.DEFAULT_TOL,
) -> ExtendedValue:
    """
    int p^alpha q^(1-alpha) d mu (PQ) or int q^alpha p^(1-alpha) d mu (QP).

    Parameters:
    -----------
    K : ConvexBody
        C2+ body
    alpha : float
        Any real order
    route : str
        "sphere" (outer normals) or "boundary" (radial angle, n = 2)
    """
    direction = _check_direction(direction)
    r = route_for(K, route, family)
    a = alpha if direction == "PQ" else 1.0 - alpha
    log_h = _log_hellinger(r, a, tol)
    return ExtendedValue(float(np.exp(log_h.value)), log_h.reason, log_h.err_estimate)


def renyi(
    K: ConvexBody,
    order,
    direction: str = "PQ",
    route: str = "sphere",
    family: RuleFamily | None = None,
    tol: float = constants.DEFAULT_TOL,
) -> ExtendedValue:
    """D_alpha(P_K || Q_K) (direction PQ) or D_alpha(Q_K || P_K) (QP)."""
    order = Order.of(order)
    direction = _check_direction(direction)
    if K.smoothness == "polytope":
        return polytope_divergence(order, direction)
    value = _divergence_on_route(route_for(K, route, family), order, direction, tol)
    log.debug(f"D_{order}({direction}) of {K.describe()} = {value.value!r} [{value.reason}]")
    return value


def bhattacharyya(K: ConvexBody, family: RuleFamily | None = None) -> float:
    """int sqrt(p q) d mu; D_1/2 = -2 log of it."""
    return float(hellinger(K, 0.5, "PQ", family=family).value)


def skew_residual(K: ConvexBody, alpha: float, family: RuleFamily | None = None) -> IdentityCheck:
    """D_alpha(Q||P) against alpha / (1 - alpha) D_{1-alpha}(P||Q) on one shared rule."""
    if alpha in (0.0, 1.0):
        raise InvalidArgument("skew identity needs alpha not in {0, 1}")
    family = family or family_for_bodies([K])
    lhs = renyi(K, alpha, "QP", family=family).value
    rhs = alpha / (1.0 - alpha) * renyi(K, 1.0 - alpha, "PQ", family=family).value
    return identity_check(lhs, rhs, 1e-10)


def polar_skew_residual(K: ConvexBody, alpha: float, direction: str = "QP") -> IdentityCheck:
    """
    (1 - alpha) D_alpha(.. K° ..) = alpha D_{1-alpha}(.. K ..).

    QP compares (Q_K° || P_K°) with (Q_K || P_K); PQ compares (P_K° || Q_K°)
    with (P_K || Q_K). Relative tolerance 1e-7.
    """
    direction = _check_direction(direction)
    if alpha in (0.0, 1.0):
        raise InvalidArgument("polar skew identity needs alpha not in {0, 1}")
    Kp = bodies.polar(K)
    lhs = (1.0 - alpha) * renyi(Kp, alpha, direction).value
    rhs = alpha * renyi(K, 1.0 - alpha, direction).value
    check = identity_check(lhs, rhs, 1e-7, relative=True)
    if check.consistent or not np.isfinite(check.residual):
        return check
    # both sides near zero: compare absolutely
    if max(abs(lhs), abs(rhs)) < 1e-9:
        return IdentityCheck(lhs, rhs, abs(lhs - rhs), True, "absolute, both sides ~ 0")
    return check


# =============================================================================
# MIXED BODIES
# =============================================================================


def _mixed_route(Ks: Sequence[ConvexBody], family: RuleFamily | None) -> DensityRoute:
    n = Ks[0].dim
    if len(Ks) != n:
        raise InvalidArgument(f"mixed divergences need n = {n} bodies, got {len(Ks)}")
    for K in Ks:
        if K.dim != n:
            raise InvalidArgument("all bodies must have the same dimension")
        if not K.is_smooth:
            raise UnsupportedSmoothness(f"mixed divergences need C2+ bodies, got {K.describe()}")
    vols = [bodies.volume(K) for K in Ks]
    polar_vols = [bodies.polar_volume(K) for K in Ks]

    def evaluate(u):
        log_p = np.zeros(u.shape[0])
        log_q = np.zeros(u.shape[0])
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            for K, v, pv in zip(Ks, vols, polar_vols):
                h = K.support(u)
                log_p -= (np.log(n * pv) + n * np.log(h)) / n
                log_q += (np.log(h) + np.log(K.curvature_fn(u)) - np.log(n * v)) / n
            p, q = np.exp(log_p), np.exp(log_q)
        return p, q, np.ones_like(p)

    return DensityRoute("mixed", family or family_for_bodies(list(Ks)), evaluate)


def mixed_renyi(
    Ks: Sequence[ConvexBody],
    order,
    direction: str = "PQ",
    family: RuleFamily | None = None,
    tol: float = constants.DEFAULT_TOL,
) -> ExtendedValue:
    """Renyi divergence of the product densities of n bodies on one sphere."""
    order = Order.of(order)
    direction = _check_direction(direction)
    return _divergence_on_route(_mixed_route(Ks, family), order, direction, tol)


def product_factorization_residual(
    Ks: Sequence[ConvexBody], alpha: float, direction: str = "PQ"
) -> IdentityCheck:
    """
    Mixed D_alpha against the mean of the per-body D_alpha.

    The two agree for identical bodies; for different bodies the residual is
    reported only.
    """
    if alpha < 0.0:
        raise InvalidArgument("product factorization is compared for alpha >= 0")
    mixed = mixed_renyi(Ks, alpha, direction).value
    per_body = [renyi(K, alpha, direction).value for K in Ks]
    mean = float(np.mean(per_body))
    check = identity_check(mixed, mean, 1e-8)
    return IdentityCheck(check.lhs, check.rhs, check.residual, check.consistent, "reported, not asserted")
