"""
L_p-Affine Surface Areas
========================

as_p(K) for p in [-inf, inf] \\ {-n}, mixed p-affine surface areas, the dual
mixed volume and the limit invariants Omega_K and A_K.

SPHERE FORM (C2+):
------------------
    as_p(K) = int f^(n/(n+p)) h^(-n(p-1)/(n+p)) d sigma

    p = 0        n |K|
    p = +-inf    n |K°|
    -n+          ess sup h^(n+1) f          (p -> -n from the right)
    -n-          ess sup 1 / (h^(n+1) f)    (p -> -n from the left)

Polytopes (kappa = 0 a.e.): 0 for p > 0, n |K| at p = 0, +inf for p < 0.

RENYI LINK:
-----------
    as_p = n |K|^(n/(n+p)) |K°|^(p/(n+p)) exp(-(n/(n+p)) D_{p/(n+p)}(P||Q))
         = n |K|^(n/(n+p)) |K°|^(p/(n+p)) exp(-(p/(n+p)) D_{n/(n+p)}(Q||P))

    Omega_K = (|K| / |K°| exp(-D_KL(P||Q)))^n
    A_K     =  |K°| / |K| exp(-D_KL(Q||P))
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import bodies, constants
from .bodies import ConvexBody
from .divergence import ExtendedValue, IdentityCheck, identity_check, mixed_renyi, renyi
from .errors import InvalidArgument, UnsupportedSmoothness
from .log import get_logger
from .quadrature import RuleFamily, family_for_bodies, integrate, node_values, probe_endpoint_exponents

log = get_logger("affine")

# =============================================================================
# PARAMETERS
# =============================================================================

_SPECIAL = {"inf": "plus_inf", "+inf": "plus_inf", "-inf": "minus_inf", "-n+": "at_minus_n_right", "-n-": "at_minus_n_left"}


@dataclass(frozen=True)
class PParameter:
    """p for as_p: finite(p != -n), plus_inf, minus_inf, at_minus_n_right or at_minus_n_left."""

    tag: str
    p: float | None = None
    dim: int | None = None

    def __post_init__(self) -> None:
        if self.tag not in ("finite", "plus_inf", "minus_inf", "at_minus_n_right", "at_minus_n_left"):
            raise InvalidArgument(f"unknown p tag {self.tag!r}")
        if self.tag == "finite":
            if self.p is None or not np.isfinite(self.p):
                raise InvalidArgument(f"finite p needs a finite value, got {self.p!r}")
            if self.dim is not None and self.p == -self.dim:
                raise InvalidArgument(f"p = -n = {self.p} is excluded; use -n+ or -n-")

    @classmethod
    def of(cls, value, dim: int | None = None) -> PParameter:
        if isinstance(value, PParameter):
            return cls(value.tag, value.p, dim if dim is not None else value.dim)
        if isinstance(value, str) and value.strip().lower() in _SPECIAL:
            return cls(_SPECIAL[value.strip().lower()], None, dim)
        try:
            p = float(value)
        except (TypeError, ValueError) as e:
            raise InvalidArgument(f"cannot read p = {value!r}") from e
        if np.isnan(p):
            raise InvalidArgument("p is nan")
        if p == np.inf:
            return cls("plus_inf", None, dim)
        if p == -np.inf:
            return cls("minus_inf", None, dim)
        return cls("finite", p, dim)

    @property
    def value(self) -> float:
        if self.tag == "finite":
            return float(self.p)
        if self.tag == "plus_inf":
            return np.inf
        if self.tag == "minus_inf":
            return -np.inf
        return -float(self.dim) if self.dim is not None else np.nan

    def __str__(self) -> str:
        names = {"plus_inf": "inf", "minus_inf": "-inf", "at_minus_n_right": "-n+", "at_minus_n_left": "-n-"}
        return names.get(self.tag, repr(self.p))


def alpha_to_p(alpha: float, direction: str, n: int) -> float:
    """p = n alpha / (1 - alpha) for PQ, p = n (1 - alpha) / alpha for QP."""
    if direction == "PQ":
        return np.inf if alpha == 1.0 else n * alpha / (1.0 - alpha)
    if direction == "QP":
        return np.inf if alpha == 0.0 else n * (1.0 - alpha) / alpha
    raise InvalidArgument(f"direction must be PQ or QP, got {direction!r}")


def p_to_alpha(p: float, direction: str, n: int) -> float:
    """alpha = p / (n + p) for PQ, alpha = n / (n + p) for QP."""
    if p == -n:
        raise InvalidArgument("p = -n has no order")
    if direction == "PQ":
        return 1.0 if np.isinf(p) else p / (n + p)
    if direction == "QP":
        return 0.0 if np.isinf(p) else n / (n + p)
    raise InvalidArgument(f"direction must be PQ or QP, got {direction!r}")


def random_linear_maps(n: int, count: int, seed: int = constants.DEFAULT_SEED) -> list[np.ndarray]:
    """Seeded invertible maps U diag(s) V with singular values in [e^-0.5, e^0.5] and random sign."""
    rng = np.random.default_rng(seed)
    maps = []
    for _ in range(count):
        U, _ = np.linalg.qr(rng.standard_normal((n, n)))
        V, _ = np.linalg.qr(rng.standard_normal((n, n)))
        s = np.exp(rng.uniform(-0.5, 0.5, n))
        maps.append(U @ np.diag(s) @ V)
    return maps


# =============================================================================
# as_p
# =============================================================================


def _polytope_as_p(K: ConvexBody, p: PParameter) -> ExtendedValue:
    n = K.dim
    if p.tag in ("plus_inf", "minus_inf"):
        return ExtendedValue(n * bodies.polar_volume(K), "polytope_rule")
    if p.tag == "at_minus_n_right":
        return ExtendedValue(np.inf, "polytope_rule")
    if p.tag == "at_minus_n_left":
        return ExtendedValue(0.0, "polytope_rule")
    if p.p > 0.0:
        return ExtendedValue(0.0, "polytope_rule")
    if p.p == 0.0:
        return ExtendedValue(n * bodies.volume(K), "polytope_rule")
    return ExtendedValue(np.inf, "polytope_rule")


def _sup_on_nodes(g, family: RuleFamily) -> ExtendedValue:
    if family.breakpoints.size:
        beta = probe_endpoint_exponents(g, family.breakpoints)
        if np.any(beta <= -1e-3):
            return ExtendedValue(np.inf, "node_sup")
    values = node_values(g, family, doublings=constants.SUP_DOUBLINGS)
    top = float(np.max(values[~np.isnan(values)]))
    return ExtendedValue(top, "node_sup")


def as_p(K: ConvexBody, p, family: RuleFamily | None = None, tol: float = constants.DEFAULT_TOL) -> ExtendedValue:
    """
    L_p-affine surface area.

    Parameters:
    -----------
    K : ConvexBody
        C2+ body or polytope
    p : float, str or PParameter
        Finite p != -n, "inf", "-inf", "-n+" or "-n-"
    """
    n = K.dim
    p = PParameter.of(p, n)
    if K.smoothness == "polytope":
        return _polytope_as_p(K, p)
    if p.tag in ("plus_inf", "minus_inf"):
        return ExtendedValue(n * bodies.polar_volume(K))
    if p.tag == "finite" and p.p == 0.0:
        return ExtendedValue(n * bodies.volume(K))

    family = family or family_for_bodies([K])
    if p.tag == "at_minus_n_right":
        return _sup_on_nodes(lambda u: K.support(u) ** (n + 1) * K.curvature_fn(u), family)
    if p.tag == "at_minus_n_left":
        return _sup_on_nodes(lambda u: 1.0 / (K.support(u) ** (n + 1) * K.curvature_fn(u)), family)

    a = n / (n + p.p)
    b = -n * (p.p - 1.0) / (n + p.p)

    def g(u):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return np.exp(a * np.log(K.curvature_fn(u)) + b * np.log(K.support(u)))

    result = integrate(g, family, tol=tol)
    value = result.require(f"as_{p}")
    if result.classification == "plus_infinity":
        return ExtendedValue(np.inf, "nonintegrable")
    log.debug(f"as_{p}({K.describe()}) = {value!r}")
    return ExtendedValue(value, "computed", result.err_estimate)


def _normalizer(K: ConvexBody, p: float) -> float:
    """n |K|^(n/(n+p)) |K°|^(p/(n+p))."""
    n = K.dim
    return n * bodies.volume(K) ** (n / (n + p)) * bodies.polar_volume(K) ** (p / (n + p))


def as_p_via_renyi(K: ConvexBody, p: float, route: str = "boundary") -> float:
    """as_p from D_{p/(n+p)}(P||Q), integrated on the boundary parametrization (n = 2)."""
    if K.dim != 2 and route == "boundary":
        raise InvalidArgument("the boundary route needs n = 2")
    if not K.is_smooth:
        raise UnsupportedSmoothness("as_p via Renyi needs a C2+ body")
    n = K.dim
    p = float(p)
    if p == -n:
        raise InvalidArgument("p = -n is excluded")
    D = renyi(K, p / (n + p), "PQ", route=route).value
    return float(_normalizer(K, p) * np.exp(-(n / (n + p)) * D))


def exponential_identity(K: ConvexBody, p: float, form: str = "QP") -> IdentityCheck:
    """
    as_p / (n |K|^(n/(n+p)) |K°|^(p/(n+p))) against the exponential of a divergence.

    form "PQ" uses exp(-(n/(n+p)) D_{p/(n+p)}(P||Q)), form "QP" uses
    exp(-(p/(n+p)) D_{n/(n+p)}(Q||P)). Relative tolerance 1e-7.
    """
    n = K.dim
    lhs = as_p(K, p).value / _normalizer(K, p)
    if form == "PQ":
        rhs = np.exp(-(n / (n + p)) * renyi(K, p / (n + p), "PQ").value)
    else:
        rhs = np.exp(-(p / (n + p)) * renyi(K, n / (n + p), "QP").value)
    return identity_check(lhs, rhs, 1e-7, relative=True)


# =============================================================================
# MIXED
# =============================================================================


def _check_mixed(Ks: Sequence[ConvexBody]) -> int:
    n = Ks[0].dim
    if len(Ks) != n:
        raise InvalidArgument(f"need n = {n} bodies, got {len(Ks)}")
    for K in Ks:
        if K.dim != n:
            raise InvalidArgument("all bodies must have the same dimension")
        if not K.is_smooth:
            raise UnsupportedSmoothness(f"mixed quantities need C2+ bodies, got {K.describe()}")
    return n


def mixed_as_p(
    Ks: Sequence[ConvexBody], p, tol: float = constants.DEFAULT_TOL, family: RuleFamily | None = None
) -> float:
    """int [prod_i h_i^(1-p) f_i]^(1/(n+p)) d sigma; p = inf gives int prod_i h_i^-1 d sigma."""
    n = _check_mixed(Ks)
    p = PParameter.of(p, n)
    family = family or family_for_bodies(list(Ks))
    if p.tag == "plus_inf":
        return n * dual_mixed_volume(Ks, tol, family)
    if p.tag != "finite":
        raise InvalidArgument(f"mixed as_p is defined for finite p and p = inf, got {p}")

    def g(u):
        total = np.zeros(u.shape[0])
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            for K in Ks:
                total += (1.0 - p.p) * np.log(K.support(u)) + np.log(K.curvature_fn(u))
            return np.exp(total / (n + p.p))

    return integrate(g, family, tol=tol).require(f"mixed as_{p}")


def dual_mixed_volume(
    Ks: Sequence[ConvexBody], tol: float = constants.DEFAULT_TOL, family: RuleFamily | None = None
) -> float:
    """(1/n) int prod_i h_i^-1 d sigma."""
    n = _check_mixed(Ks)

    def g(u):
        out = np.ones(u.shape[0])
        for K in Ks:
            out = out / K.support(u)
        return out

    return integrate(g, family or family_for_bodies(list(Ks)), tol=tol).require("dual mixed volume") / n


def mixed_identity(
    Ks: Sequence[ConvexBody], alpha: float, direction: str = "PQ", family: RuleFamily | None = None
) -> IdentityCheck:
    """mixed as_p at p = alpha_to_p(alpha) against the mixed divergence through the log identity."""
    n = _check_mixed(Ks)
    p = alpha_to_p(alpha, direction, n)
    vols = np.array([bodies.volume(K) for K in Ks])
    polar_vols = np.array([bodies.polar_volume(K) for K in Ks])
    if direction == "PQ":
        scale = n * np.prod(vols ** ((1.0 - alpha) / n) * polar_vols ** (alpha / n))
    else:
        scale = n * np.prod(vols ** (alpha / n) * polar_vols ** ((1.0 - alpha) / n))
    D = mixed_renyi(Ks, alpha, direction, family=family).value
    lhs = mixed_as_p(Ks, p, family=family)
    rhs = float(scale * np.exp((alpha - 1.0) * D))
    return identity_check(lhs, rhs, 1e-7, relative=True)


# =============================================================================
# OMEGA AND A_K
# =============================================================================


def _require_c2plus(K: ConvexBody, what: str) -> None:
    if not K.is_smooth:
        raise UnsupportedSmoothness(f"{what} needs a C2+ body, got {K.describe()}")


def omega(K: ConvexBody, family: RuleFamily | None = None) -> float:
    """Omega_K = (|K| / |K°| exp(-D_KL(P||Q)))^n."""
    _require_c2plus(K, "Omega_K")
    D = renyi(K, 1.0, "PQ", family=family).value
    return float((bodies.volume(K) / bodies.polar_volume(K) * np.exp(-D)) ** K.dim)


def a_k(K: ConvexBody, family: RuleFamily | None = None) -> float:
    """A_K = |K°| / |K| exp(-D_KL(Q||P))."""
    _require_c2plus(K, "A_K")
    D = renyi(K, 1.0, "QP", family=family).value
    return float(bodies.polar_volume(K) / bodies.volume(K) * np.exp(-D))


def omega_limit_diagnostic(
    K: ConvexBody, p_list: Sequence[float], family: RuleFamily | None = None
) -> list[float]:
    """|(as_p / (n |K°|))^((n+p)/n) - |K| / |K°| exp(-D_KL(P||Q))| for increasing p > 0."""
    _require_c2plus(K, "omega_limit_diagnostic")
    n = K.dim
    target = omega(K, family) ** (1.0 / n)
    n_polar = n * bodies.polar_volume(K)
    residuals = []
    for p in p_list:
        if p <= 0.0:
            raise InvalidArgument(f"omega limit needs p > 0, got {p}")
        ratio = as_p(K, p, family).value / n_polar
        residuals.append(abs(float(np.exp((n + p) / n * np.log(ratio))) - target))
    return residuals


def a_k_limit_diagnostic(
    K: ConvexBody, p_list: Sequence[float], family: RuleFamily | None = None
) -> list[float]:
    """|(as_p / (n |K|))^((n+p)/p) - A_K| for p decreasing to 0."""
    _require_c2plus(K, "a_k_limit_diagnostic")
    n = K.dim
    target = a_k(K, family)
    n_vol = n * bodies.volume(K)
    residuals = []
    for p in p_list:
        if p <= 0.0:
            raise InvalidArgument(f"A_K limit needs p > 0, got {p}")
        ratio = as_p(K, p, family).value / n_vol
        residuals.append(abs(float(np.exp((n + p) / p * np.log(ratio))) - target))
    return residuals


def omega_polar_residual(
    K: ConvexBody, family: RuleFamily | None = None, polar_family: RuleFamily | None = None
) -> IdentityCheck:
    """Omega_K^(1/n) against A_K°. polar_family integrates over K° (its own singular directions)."""
    _require_c2plus(K, "omega_polar_residual")
    lhs = omega(K, family) ** (1.0 / K.dim)
    return identity_check(lhs, a_k(bodies.polar(K), polar_family), 1e-7, relative=True)


def mixed_omega(Ks: Sequence[ConvexBody], family: RuleFamily | None = None) -> float:
    """(prod_i (|K_i| / |K_i°|)^(1/n) exp(-D_1(P x .. x P || Q x .. x Q)))^n."""
    n = _check_mixed(Ks)
    D = mixed_renyi(Ks, 1.0, "PQ", family=family).value
    ratio = np.prod([(bodies.volume(K) / bodies.polar_volume(K)) ** (1.0 / n) for K in Ks])
    return float((ratio * np.exp(-D)) ** n)


def mixed_omega_limit_diagnostic(Ks: Sequence[ConvexBody], p_list: Sequence[float]) -> list[float]:
    """|(as_p(K_1..K_n) / (n prod |K_i°|^(1/n)))^((n+p)/n) - mixed_omega^(1/n)| for increasing p."""
    n = _check_mixed(Ks)
    target = mixed_omega(Ks) ** (1.0 / n)
    denom = n * np.prod([bodies.polar_volume(K) ** (1.0 / n) for K in Ks])
    residuals = []
    for p in p_list:
        if p <= 0.0:
            raise InvalidArgument(f"mixed omega limit needs p > 0, got {p}")
        ratio = mixed_as_p(Ks, p) / denom
        residuals.append(abs(float(np.exp((n + p) / n * np.log(ratio))) - target))
    return residuals


# =============================================================================
# IDENTITIES
# =============================================================================


def duality_residual(K: ConvexBody, p: float) -> float:
    """|as_p(K) - as_{n^2/p}(K°)| / as_p(K) for p > 0."""
    _require_c2plus(K, "duality_residual")
    if not p > 0.0:
        raise InvalidArgument(f"duality needs p > 0, got {p}")
    n = K.dim
    lhs = as_p(K, p).value
    rhs = as_p(bodies.polar(K), n * n / p).value
    return abs(lhs - rhs) / abs(lhs)


def affine_invariance_residual(K: ConvexBody, T, p) -> float:
    """Relative residual of as_p(T K) = |det T|^((n-p)/(n+p)) as_p(K)."""
    n = K.dim
    p = PParameter.of(p, n)
    if p.tag != "finite":
        raise InvalidArgument("affine invariance is checked for finite p")
    T = np.asarray(T, dtype=float)
    det = abs(float(np.linalg.det(T)))
    lhs = as_p(bodies.linear_image(T, K), p).value
    rhs = det ** ((n - p.p) / (n + p.p)) * as_p(K, p).value
    if lhs == rhs:
        return 0.0
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def renyi_invariance_residual(K: ConvexBody, T, alpha, direction: str = "PQ") -> float:
    """|D_alpha(T K) - D_alpha(K)|."""
    a = renyi(bodies.linear_image(np.asarray(T, dtype=float), K), alpha, direction).value
    b = renyi(K, alpha, direction).value
    if a == b:
        return 0.0
    return abs(a - b)


@dataclass(frozen=True)
class ConvexityCheck:
    lhs: float
    rhs: float
    holds: bool

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs


def convexity_inequality_check(K: ConvexBody, L: ConvexBody, p, lam: float) -> ConvexityCheck:
    """
    Mixture inequality for the cone-measure densities of K and L, 0 <= p <= inf.

        int [lam f_K h_K / |K| + (1-lam) f_L h_L / |L|]^(n/(n+p))
            [lam / (h_K^n |K°|) + (1-lam) / (h_L^n |L°|)]^(p/(n+p)) d sigma
        >= (as_p(K) / N_K)^lam (as_p(L) / N_L)^(1-lam),  N = |.|^(n/(n+p)) |.°|^(p/(n+p))
    """
    _require_c2plus(K, "convexity check")
    _require_c2plus(L, "convexity check")
    if K.dim != L.dim:
        raise InvalidArgument("bodies must have the same dimension")
    if not 0.0 <= lam <= 1.0:
        raise InvalidArgument(f"lambda must be in [0, 1], got {lam}")
    n = K.dim
    p = PParameter.of(p, n)
    if p.tag not in ("finite", "plus_inf") or (p.tag == "finite" and p.p < 0.0):
        raise InvalidArgument(f"convexity check needs 0 <= p <= inf, got {p}")
    if p.tag == "plus_inf":
        a, b = 0.0, 1.0
    else:
        a, b = n / (n + p.p), p.p / (n + p.p)

    vK, vL = bodies.volume(K), bodies.volume(L)
    pK, pL = bodies.polar_volume(K), bodies.polar_volume(L)

    def g(u):
        hK, hL = K.support(u), L.support(u)
        first = lam * K.curvature_fn(u) * hK / vK + (1.0 - lam) * L.curvature_fn(u) * hL / vL
        second = lam / (hK**n * pK) + (1.0 - lam) / (hL**n * pL)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return np.exp(a * np.log(first) + b * np.log(second))

    lhs = integrate(g, family_for_bodies([K, L])).require("convexity integral")

    def normalized(M, vol, polar_vol):
        return as_p(M, p).value / (vol**a * polar_vol**b)

    rhs = float(normalized(K, vK, pK) ** lam * normalized(L, vL, pL) ** (1.0 - lam))
    return ConvexityCheck(float(lhs), rhs, bool(lhs >= rhs - 1e-10))
