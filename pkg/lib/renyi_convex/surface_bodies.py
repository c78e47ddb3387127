"""
Surface Bodies (n = 2)
======================

K_{f,s} is the intersection of all halfplanes whose complement cuts off a
boundary piece of weighted measure at most s; the illumination body K^{f,s}
collects the points whose illuminated boundary piece has weighted measure
at most s. Both tend to K as s -> 0 and

    c_2 lim (|K| - |K_{f,s}|) / s^2 = c_2 lim (|K^{f,s}| - |K|) / s^2
                                    = int kappa / f^2 d mu = int w(theta)^-2 d theta

with c_2 = 8. Weights are functions of the outer normal angle theta, so
w(theta) = f(N_K^{-1}(e(theta))).

CAPS (C2+ bodies):
------------------
The cap cut off in direction theta0 is the normal-angle interval [a, b]
with

    int_a^b w f_K d theta = s                 (weighted measure)
    int_a^b f_K sin(theta0 - theta) d theta = 0  (chord perpendicular to e(theta0))

solved by a vectorized 2-D Newton iteration on Gauss-Legendre integrals.
The cap depth is delta(theta0) = int_theta0^b f_K sin(theta - theta0).

For small s the surface body has support function h - delta, so

    |K| - |K_{f,s}| = int f_K delta - 1/2 int (delta^2 - delta'^2)

which avoids subtracting two nearly equal areas. The illumination body is
bounded by the apex curve X(a) of the tangent lines at a and b(a), and its
area is 1/2 of the integral of X x X'.

WEIGHTS:
--------
    constant_weight(c)          w = c
    weight_f_p(K, p)            as_p appears in the limit
    weight_f_kl(K, variant)     D_KL(Q||P) or D_KL(P||Q) plus 2n log(R/r)
    weight_mixed(bodies, p)     the mixed as_p appears in the limit

A weight is accepted on a C2+ body only if it is positive at every sample
of weighted_boundary(K, w) (2^14 normal angles); NaN counts as
non-positive. minimal_function_check samples the weight the same way.

CONTAINMENT:
------------
containment_check evaluates gauges at polygon vertices: ||.||_K over the
vertices of K_{f,s} (at most 1) and of K^{f,s} (at least 1), and the gauge
of the polygon K_{f,s1} at the vertices of K_{f,s2} for s1 < s2.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_legendre

from . import bodies, constants
from .bodies import ConvexBody, angles_to_directions
from .divergence import IdentityCheck, identity_check, mixed_renyi, renyi
from .errors import DegenerateBody, InvalidArgument, InvalidWeight, NonConvergence, UnsupportedSmoothness
from .extrapolation import PowerLawFit, power_law_limit
from .log import get_logger
from .polygon import halfplane_intersection, polygon_gauge, shoelace_area
from .quadrature import circle_family, family_for_bodies, integrate

log = get_logger("surface")

# =============================================================================
# TYPES
# =============================================================================


@dataclass(frozen=True, eq=False)
class BoundaryWeight:
    """
    A positive boundary weight as a function of the outer normal angle.

    Attributes:
    -----------
    name : str
        const, fp, fqp, fpq, fpq-printed, mixed
    fn : callable
        theta (1-D array) -> weight values
    params : dict
        Construction parameters for records
    degenerate : bool
        True when the weight does not exist (K a ball for the KL weights)
    """

    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    params: dict = field(default_factory=dict)
    degenerate: bool = False

    def __call__(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return np.asarray(self.fn(theta.ravel()), dtype=float).reshape(theta.shape)

    @property
    def is_constant(self) -> bool:
        return self.name == "const"

    def describe(self) -> str:
        shown = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({shown})" if shown else self.name


@dataclass(frozen=True, eq=False)
class WeightedBoundary:
    """
    Boundary samples at equispaced normal angles with arc-length weights.

    cumulative[-1] is the total weighted measure int w d mu.
    """

    body: ConvexBody
    theta: np.ndarray
    points: np.ndarray
    arc_weights: np.ndarray
    f_values: np.ndarray
    cumulative: np.ndarray

    @property
    def total(self) -> float:
        return float(self.cumulative[-1])


@dataclass(frozen=True)
class SurfaceBodyResult:
    s_grid: np.ndarray
    volumes: np.ndarray
    quotients: np.ndarray
    limit: float  # c_2 times the extrapolated quotient
    c_n: float
    rhs: float  # int w^-2 d theta
    fit: PowerLawFit
    variant: str = "surface"
    weight: str = "const"

    @property
    def relative_error(self) -> float:
        return abs(self.limit - self.rhs) / abs(self.rhs)


@dataclass(frozen=True)
class MinimalFunctionCheck:
    min_mf: float
    bound: float
    conclusive: bool
    note: str = ""


@dataclass(frozen=True)
class ContainmentCheck:
    inner: float  # max ||x||_K over the vertices of every K_{f,s}
    outer: float  # min ||x||_K over the vertices of every K^{f,s}
    nested: float  # max gauge of K_{f,s2} vertices in K_{f,s1}, s1 < s2
    holds: bool


# =============================================================================
# HELPERS
# =============================================================================


def _require_planar(K: ConvexBody) -> None:
    if K.dim != 2:
        raise InvalidArgument("surface bodies are implemented for n = 2")


def _require_c2plus(K: ConvexBody, what: str) -> None:
    _require_planar(K)
    if not K.is_smooth:
        raise UnsupportedSmoothness(f"{what} needs a C2+ body, got {K.describe()}")


def _theta_eval(fn, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        return np.asarray(fn(angles_to_directions(theta.ravel())), dtype=float).reshape(theta.shape)


def _curvature(K: ConvexBody, theta) -> np.ndarray:
    return _theta_eval(K.curvature_fn, theta)


def _support(K: ConvexBody, theta) -> np.ndarray:
    return _theta_eval(K.support, theta)


def _check_weight(K: ConvexBody, weight: BoundaryWeight) -> None:
    if weight.degenerate:
        raise InvalidWeight(f"weight {weight.describe()} is degenerate on {K.describe()}")
    if not K.is_smooth:
        if not weight.is_constant:
            raise InvalidWeight("polytope surface bodies take a constant weight only")
        if not weight(np.zeros(1))[0] > 0.0:
            raise InvalidWeight("weight must be positive")
        return
    samples = weighted_boundary(K, weight)
    # NaN counts as non-positive
    bad = ~(samples.f_values > 0.0)
    if np.any(bad):
        where = samples.theta[np.argmax(bad)]
        raise InvalidWeight(
            f"weight {weight.describe()} is not positive on a set of positive measure (theta = {where:.6g})"
        )


def weighted_boundary(K: ConvexBody, weight: BoundaryWeight, samples: int = constants.BOUNDARY_SAMPLES) -> WeightedBoundary:
    """Boundary samples of a C2+ planar body at normal angles (j + 1/2) 2 pi / M."""
    _require_c2plus(K, "weighted_boundary")
    if samples < 2**10:
        raise InvalidArgument(f"weighted boundary needs at least 2^10 samples, got {samples}")
    theta = 2.0 * np.pi * (np.arange(samples) + 0.5) / samples
    u = angles_to_directions(theta)
    arc = _curvature(K, theta) * (2.0 * np.pi / samples)
    with np.errstate(all="ignore"):
        w = weight(theta)
        cumulative = np.cumsum(w * arc)
    return WeightedBoundary(K, theta, K.support_gradient(u), arc, w, cumulative)


def total_measure(K: ConvexBody, weight: BoundaryWeight) -> float:
    """int w d mu over the boundary."""
    _require_planar(K)
    if not K.is_smooth:
        return float(weight(np.zeros(1))[0] * bodies.perimeter(K))
    return integrate(lambda u: weight(bodies.directions_to_angles(u)) * K.curvature_fn(u), family_for_bodies([K])).require(
        "weighted boundary measure"
    )


# =============================================================================
# WEIGHTS
# =============================================================================


def constant_weight(c: float = 1.0) -> BoundaryWeight:
    if not c > 0.0:
        raise InvalidWeight(f"constant weight must be positive, got {c}")
    return BoundaryWeight("const", lambda t: np.full(np.shape(t), float(c)), {"c": float(c)})


def weight_f_p(K: ConvexBody, p) -> BoundaryWeight:
    """w = h^((p-1)/(2+p)) f^(-1/(2+p)); p = inf gives w = h."""
    _require_c2plus(K, "weight_f_p")
    p = float(p)
    if p == -2.0:
        raise InvalidArgument("p = -n is excluded")
    if p == np.inf:
        return BoundaryWeight("fp", lambda t: _support(K, t), {"p": "inf"})
    a, b = (p - 1.0) / (2.0 + p), -1.0 / (2.0 + p)

    def fn(t):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return np.exp(a * np.log(_support(K, t)) + b * np.log(_curvature(K, t)))

    return BoundaryWeight("fp", fn, {"p": p})


def weight_f_kl(K: ConvexBody, variant: str = "QP") -> BoundaryWeight:
    """
    Weights whose surface-body limit is a Kullback-Leibler divergence plus 4 log(R/r).

    Parameters:
    -----------
    variant : str
        "QP"            w = (2|K| / h)^(1/2) f^(-1/2) log(R^4 |K°| h^3 f / (r^4 |K|))^(-1/2)
        "PQ_corrected"  w = (2|K°| h^2)^(1/2) log(R^4 |K| / (r^4 |K°| h^3 f))^(-1/2)
        "PQ_as_printed" the same with h in place of h^2
    """
    _require_c2plus(K, "weight_f_kl")
    if variant not in ("QP", "PQ_corrected", "PQ_as_printed"):
        raise InvalidArgument(f"unknown KL weight variant {variant!r}")
    radii = bodies.rolling_radii(K)
    ratio = radii.R_outer / radii.r_inner
    name = {"QP": "fqp", "PQ_corrected": "fpq", "PQ_as_printed": "fpq-printed"}[variant]
    params = {"variant": variant, "r": radii.r_inner, "R": radii.R_outer}
    if ratio - 1.0 < 1e-12:
        log.info(f"{K.describe()} is a ball (r = R); the KL weight is degenerate")
        return BoundaryWeight(name, lambda t: np.full(np.shape(t), np.inf), params, degenerate=True)

    vol, polar_vol = bodies.volume(K), bodies.polar_volume(K)
    log_r4 = 4.0 * np.log(ratio)

    def log_q_over_p(t):
        return np.log(polar_vol / vol) + 3.0 * np.log(_support(K, t)) + np.log(_curvature(K, t))

    def fn(t):
        h = _support(K, t)
        with np.errstate(divide="ignore", invalid="ignore"):
            if variant == "QP":
                L = log_r4 + log_q_over_p(t)
                return np.sqrt(2.0 * vol / (h * _curvature(K, t)) / L)
            L = log_r4 - log_q_over_p(t)
            power = 2.0 if variant == "PQ_corrected" else 1.0
            return np.sqrt(2.0 * polar_vol * h**power / L)

    return BoundaryWeight(name, fn, params)


def weight_mixed(Ks: Sequence[ConvexBody], p) -> BoundaryWeight:
    """w = [prod_i h_i^(1-p) f_i]^(-1/(2(2+p))), a function of the normal only."""
    if len(Ks) != 2:
        raise InvalidArgument(f"the mixed weight needs n = 2 bodies, got {len(Ks)}")
    for K in Ks:
        _require_c2plus(K, "weight_mixed")
    p = float(p)
    if p == -2.0:
        raise InvalidArgument("p = -n is excluded")
    exponent = -1.0 / (2.0 * (2.0 + p))

    def fn(t):
        total = np.zeros(np.shape(t))
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            for K in Ks:
                total += (1.0 - p) * np.log(_support(K, t)) + np.log(_curvature(K, t))
            return np.exp(exponent * total)

    return BoundaryWeight("mixed", fn, {"p": p, "bodies": [K.describe() for K in Ks]})


def weight_from_spec(spec: str, K: ConvexBody, mixed_bodies: Sequence[ConvexBody] | None = None) -> BoundaryWeight:
    """const, const:<c>, fp:<p>, fqp, fpq, fpq-printed, mixed:<p>."""
    name, _, arg = spec.partition(":")
    if name == "const":
        return constant_weight(float(arg) if arg else 1.0)
    if name == "fp":
        return weight_f_p(K, float(arg) if arg else 1.0)
    if name == "fqp":
        return weight_f_kl(K, "QP")
    if name == "fpq":
        return weight_f_kl(K, "PQ_corrected")
    if name == "fpq-printed":
        return weight_f_kl(K, "PQ_as_printed")
    if name == "mixed":
        if not mixed_bodies:
            raise InvalidArgument("the mixed weight needs --with bodies")
        return weight_mixed(mixed_bodies, float(arg) if arg else 1.0)
    raise InvalidArgument(f"unknown weight {spec!r} (const, fp:<p>, fqp, fpq, fpq-printed, mixed:<p>)")


# =============================================================================
# CAPS (C2+)
# =============================================================================

_XI, _WQ = roots_legendre(constants.CAP_GAUSS_NODES)


def _gauss(fn, lo, hi) -> np.ndarray:
    """int_lo^hi fn(t) dt per row, fn evaluated on an (m, nodes) grid."""
    mid, rad = 0.5 * (lo + hi), 0.5 * (hi - lo)
    t = mid[:, None] + rad[:, None] * _XI[None, :]
    return rad * (fn(t) @ _WQ)


def solve_caps(K: ConvexBody, weight: BoundaryWeight, s: float, theta0) -> tuple[np.ndarray, np.ndarray]:
    """Normal-angle intervals [a, b] of the caps of weighted measure s cut off in directions theta0."""
    theta0 = np.asarray(theta0, dtype=float)
    f0, w0 = _curvature(K, theta0), weight(theta0)
    half = s / (2.0 * w0 * f0)
    a, b = theta0 - half, theta0 + half

    def wf(t):
        return weight(t) * _curvature(K, t)

    for _ in range(constants.CAP_NEWTON_STEPS):
        if np.any(b - a >= np.pi):
            raise DegenerateBody(f"s = {s} cuts off half of the boundary; the surface body is empty")
        E1 = _gauss(wf, a, b) - s
        E2 = _gauss(lambda t: _curvature(K, t) * np.sin(theta0[:, None] - t), a, b)
        fa, fb = _curvature(K, a), _curvature(K, b)
        J11, J12 = -weight(a) * fa, weight(b) * fb
        J21, J22 = -fa * np.sin(theta0 - a), fb * np.sin(theta0 - b)
        det = J11 * J22 - J12 * J21
        da = (E1 * J22 - J12 * E2) / det
        db = (J11 * E2 - J21 * E1) / det
        a_new, b_new = a - da, b - db
        a_new = np.where(a_new < theta0, a_new, 0.5 * (a + theta0))
        b_new = np.where(b_new > theta0, b_new, 0.5 * (b + theta0))
        step = np.max(np.abs(a_new - a) + np.abs(b_new - b))
        a, b = a_new, b_new
        if step <= 1e-13:
            return a, b
    raise NonConvergence(f"cap equations did not converge for s = {s}")


def cap_depths(K: ConvexBody, weight: BoundaryWeight, s: float, theta0) -> np.ndarray:
    """delta(theta0) = h(theta0) - offset of the cutting line."""
    theta0 = np.asarray(theta0, dtype=float)
    if s == 0.0:
        return np.zeros_like(theta0)
    _, b = solve_caps(K, weight, s, theta0)
    return _gauss(lambda t: _curvature(K, t) * np.sin(t - theta0[:, None]), theta0, b)


def _spectral_derivative(values: np.ndarray) -> np.ndarray:
    m = values.size
    k = np.fft.rfftfreq(m, 1.0 / m)
    c = np.fft.rfft(values) * 1j * k
    if m % 2 == 0:
        c[-1] = 0.0
    return np.fft.irfft(c, m)


def _doubling(compute, start: int, stop: int, tol: float, what: str) -> float:
    m = start
    previous = compute(m)
    while m < stop:
        m *= 2
        value = compute(m)
        change = abs(value - previous)
        log.debug(f"{what} on {m} directions: {value!r} (change {change:.3e})")
        if change <= tol * abs(value):
            return value
        previous = value
    log.warning(f"{what} not stable to {tol:g} at {m} directions")
    return previous


def surface_deficit(K: ConvexBody, weight: BoundaryWeight, s: float) -> float:
    """|K| - |K_{f,s}| from the cap depths."""
    _require_c2plus(K, "surface_deficit")

    def compute(m):
        theta = 2.0 * np.pi * np.arange(m) / m
        delta = cap_depths(K, weight, s, theta)
        d_delta = _spectral_derivative(delta)
        f = _curvature(K, theta)
        step = 2.0 * np.pi / m
        return float(step * np.sum(f * delta) - 0.5 * step * np.sum(delta**2 - d_delta**2))

    return _doubling(compute, constants.QUOTIENT_DIRECTIONS, constants.QUOTIENT_MAX_DIRECTIONS, constants.QUOTIENT_TOL, "deficit")


def _cap_ends(K: ConvexBody, weight: BoundaryWeight, s: float, a: np.ndarray) -> np.ndarray:
    """b(a) with int_a^b w f = s."""

    def wf(t):
        return weight(t) * _curvature(K, t)

    b = a + s / wf(a)
    for _ in range(constants.CAP_NEWTON_STEPS):
        if np.any(b - a >= np.pi):
            raise DegenerateBody(f"s = {s} illuminates half of the boundary")
        step = (_gauss(wf, a, b) - s) / wf(b)
        b = np.maximum(b - step, a + 0.5 * (b - a) * (step > 0))
        if np.max(np.abs(step)) <= 1e-13:
            return b
    raise NonConvergence(f"illumination caps did not converge for s = {s}")


def _apex_curve(K: ConvexBody, weight: BoundaryWeight, s: float, m: int) -> np.ndarray:
    a = 2.0 * np.pi * np.arange(m) / m
    b = _cap_ends(K, weight, s, a)
    ha, hb = _support(K, a), _support(K, b)
    den = np.sin(b - a)
    x = (ha * np.sin(b) - hb * np.sin(a)) / den
    y = (hb * np.cos(a) - ha * np.cos(b)) / den
    return np.stack([x, y], axis=1)


def illumination_excess(K: ConvexBody, weight: BoundaryWeight, s: float) -> float:
    """|K^{f,s}| - |K| from the apex curve."""
    _require_c2plus(K, "illumination_excess")
    vol = bodies.volume(K)

    def compute(m):
        X = _apex_curve(K, weight, s, m)
        dx, dy = _spectral_derivative(X[:, 0]), _spectral_derivative(X[:, 1])
        area = 0.5 * (2.0 * np.pi / m) * float(np.sum(X[:, 0] * dy - X[:, 1] * dx))
        return area - vol

    return _doubling(compute, constants.QUOTIENT_DIRECTIONS, constants.QUOTIENT_MAX_DIRECTIONS, constants.QUOTIENT_TOL, "excess")


# =============================================================================
# BODIES
# =============================================================================


def _polytope_offsets(K: ConvexBody, s: float, c: float, theta: np.ndarray) -> np.ndarray:
    """Cut offsets t(theta) with c * length(boundary above the line <x, e> = t) = s (bisection)."""
    v = K.vertices
    w = np.roll(v, -1, axis=0)
    lengths = np.linalg.norm(w - v, axis=1)
    e = angles_to_directions(theta)
    hv, hw = e @ v.T, e @ w.T  # (D, m)
    lo, hi = hv.min(axis=1), hv.max(axis=1)

    def cut_length(t):
        dv, dw = hv - t[:, None], hw - t[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            frac = np.where(
                (dv > 0) & (dw > 0),
                1.0,
                np.where((dv > 0) | (dw > 0), np.maximum(dv, dw) / np.abs(dv - dw), 0.0),
            )
        return c * np.sum(frac * lengths, axis=1)

    for _ in range(80):
        mid = 0.5 * (lo + hi)
        too_much = cut_length(mid) > s
        lo = np.where(too_much, mid, lo)
        hi = np.where(too_much, hi, mid)
    return hi


def _bound(K: ConvexBody) -> float:
    u = angles_to_directions(2.0 * np.pi * np.arange(64) / 64)
    return 2.0 * float(np.max(K.support(u)))


def _check_s(K: ConvexBody, weight: BoundaryWeight, s: float) -> None:
    if s < 0.0:
        raise InvalidArgument(f"s must be nonnegative, got {s}")
    total = total_measure(K, weight)
    if s >= 0.5 * total:
        raise DegenerateBody(f"s = {s} is at least half the weighted boundary measure {total:.6g}")


def surface_body(K: ConvexBody, weight: BoundaryWeight, s: float) -> np.ndarray:
    """
    K_{f,s} as a counterclockwise polygon.

    Halfplanes are taken on 64 equispaced directions, doubled until the area
    changes by less than 1e-6 relative (at most 8192 directions).
    """
    _require_planar(K)
    _check_weight(K, weight)
    _check_s(K, weight, s)
    polytope = not K.is_smooth
    if s == 0.0:
        return K.vertices.copy() if polytope else bodies.boundary_polygon(K, constants.BOUNDARY_SAMPLES)

    if polytope:
        normals, offsets = bodies.polytope_facets(K)
        c = float(weight(np.zeros(1))[0])

    def build(m):
        theta = 2.0 * np.pi * np.arange(m) / m
        e = angles_to_directions(theta)
        if polytope:
            cut = _polytope_offsets(K, s, c, theta)
            return halfplane_intersection(np.vstack([normals, e]), np.concatenate([offsets, cut]), _bound(K))
        cut = K.support(e) - cap_depths(K, weight, s, theta)
        return halfplane_intersection(e, cut, _bound(K))

    m = constants.SURFACE_DIRECTIONS
    polygon = build(m)
    area = shoelace_area(polygon)
    while m < constants.SURFACE_MAX_DIRECTIONS:
        m *= 2
        refined = build(m)
        new_area = shoelace_area(refined)
        change = abs(new_area - area)
        polygon, area = refined, new_area
        if change <= constants.SURFACE_AREA_TOL * new_area:
            break
    if polygon.shape[0] < 3:
        raise DegenerateBody(f"surface body is empty at s = {s}")
    log.debug(f"K_(f,s) at s = {s}: area {area!r} on {m} directions")
    return polygon


def illumination_surface_body(K: ConvexBody, weight: BoundaryWeight, s: float) -> np.ndarray:
    """K^{f,s} as a star-shaped polygon: the apex curve of the illuminated caps."""
    _require_c2plus(K, "illumination_surface_body")
    _check_weight(K, weight)
    _check_s(K, weight, s)
    if s == 0.0:
        return bodies.boundary_polygon(K, constants.BOUNDARY_SAMPLES)
    return _apex_curve(K, weight, s, constants.QUOTIENT_DIRECTIONS)


def containment_check(K: ConvexBody, weight: BoundaryWeight, s_values) -> ContainmentCheck:
    """
    K_{f,s} ⊆ K ⊆ K^{f,s}, and K_{f,s2} ⊆ K_{f,s1} for s1 < s2, from gauges at
    polygon vertices. Polytopes have no illumination body; outer is NaN there.
    """
    _require_planar(K)
    s_values = np.sort(np.asarray(s_values, dtype=float).ravel())
    if s_values.size == 0 or s_values[0] <= 0.0:
        raise InvalidArgument("containment needs positive s values")
    inner = [surface_body(K, weight, s) for s in s_values]
    inner_gauge = max(float(np.max(K.gauge(polygon))) for polygon in inner)
    nested = max((float(np.max(polygon_gauge(a, b))) for a, b in zip(inner, inner[1:])), default=0.0)
    outer_gauge = np.nan
    if K.is_smooth:
        outer_gauge = min(float(np.min(K.gauge(illumination_surface_body(K, weight, s)))) for s in s_values)
    slack = constants.CONTAINMENT_TOL
    holds = inner_gauge <= 1.0 + slack and nested <= 1.0 + slack
    if K.is_smooth:
        holds = holds and outer_gauge >= 1.0 - slack
    log.debug(f"containment on {K.describe()}: inner {inner_gauge!r}, outer {outer_gauge!r}, nested {nested!r}")
    return ContainmentCheck(inner_gauge, float(outer_gauge), nested, bool(holds))


# =============================================================================
# LIMIT
# =============================================================================


def default_s_grid(start: float = 0.1, stop: float = 1e-3, ratio: float = 0.5) -> np.ndarray:
    """start, start * ratio, ... down to the last value >= stop."""
    if not (0.0 < ratio <= 0.5 and 0.0 < stop < start):
        raise InvalidArgument("s grid needs 0 < stop < start and 0 < ratio <= 1/2")
    count = int(np.floor(np.log(stop / start) / np.log(ratio))) + 1
    return start * ratio ** np.arange(count)


def weight_rhs(K: ConvexBody, weight: BoundaryWeight) -> float:
    """int kappa / f^2 d mu = int w(theta)^-2 d theta."""
    family = family_for_bodies([K]) if K.singular_directions.size else circle_family()
    return integrate(lambda u: weight(bodies.directions_to_angles(u)) ** -2.0, family).require("limit integral")


def limit_quotient(
    K: ConvexBody, weight: BoundaryWeight, s_grid=None, variant: str = "surface"
) -> SurfaceBodyResult:
    """
    Quotients (|K| - |K_{f,s}|) / s^2 (or (|K^{f,s}| - |K|) / s^2) on a geometric grid
    and c_2 times their extrapolated limit.
    """
    _require_planar(K)
    if not K.is_smooth:
        raise UnsupportedSmoothness("limit extrapolation needs a C2+ body (the limit degenerates on polytopes)")
    if variant not in ("surface", "illumination"):
        raise InvalidArgument(f"variant must be surface or illumination, got {variant!r}")
    _check_weight(K, weight)
    s_grid = default_s_grid() if s_grid is None else np.asarray(s_grid, dtype=float)
    if s_grid.size < 3:
        raise InvalidArgument("the s grid needs at least three values")
    _check_s(K, weight, float(np.max(s_grid)))

    vol = bodies.volume(K)
    if variant == "surface":
        changes = np.array([surface_deficit(K, weight, s) for s in s_grid])
        volumes = vol - changes
    else:
        changes = np.array([illumination_excess(K, weight, s) for s in s_grid])
        volumes = vol + changes
    quotients = changes / s_grid**2
    if not np.all(np.isfinite(quotients)):
        raise NonConvergence("non-finite surface-body quotient")
    fit = power_law_limit(s_grid, quotients)
    rhs = weight_rhs(K, weight)
    limit = constants.C2 * fit.limit
    log.info(f"{variant} limit for {weight.describe()} on {K.describe()}: {limit!r} vs {rhs!r}")
    return SurfaceBodyResult(s_grid, volumes, quotients, limit, constants.C2, rhs, fit, variant, weight.describe())


def minimal_function_check(K: ConvexBody, weight: BoundaryWeight, sample_count: int = 4096) -> MinimalFunctionCheck:
    """
    Lower bound for the minimal function M_f and the integrability bound
    int d mu / (M_f^2 r(x)) <= perimeter / (min w^2 r_inner).
    """
    _require_c2plus(K, "minimal_function_check")
    w = weighted_boundary(K, weight, sample_count).f_values
    min_w = float(np.min(w)) if np.all(np.isfinite(w)) else float(np.nanmin(w))
    if not min_w > 0.0:
        return MinimalFunctionCheck(min_w, np.inf, False, "weight is not bounded below by a positive constant")
    r_inner = bodies.rolling_radii(K).r_inner
    bound = bodies.perimeter(K) / (min_w**2 * r_inner)
    return MinimalFunctionCheck(min_w, float(bound), bool(np.isfinite(bound)))


# =============================================================================
# COROLLARIES
# =============================================================================


def asp_surface_relation(K: ConvexBody, p: float, s_grid=None) -> IdentityCheck:
    """c_2 L / (n |K|^(n/(n+p)) |K°|^(p/(n+p))) against exp(-(p/(n+p)) D_{n/(n+p)}(Q||P)), 2%."""
    n = K.dim
    result = limit_quotient(K, weight_f_p(K, p), s_grid)
    norm = n * bodies.volume(K) ** (n / (n + p)) * bodies.polar_volume(K) ** (p / (n + p))
    rhs = float(np.exp(-(p / (n + p)) * renyi(K, n / (n + p), "QP").value))
    return identity_check(result.limit / norm, rhs, 0.02, relative=True)


def omega_surface_relation(K: ConvexBody, variant: str = "QP", s_grid=None) -> IdentityCheck:
    """
    c_2 L - 2n log(R/r) against log(|K°| / |K| A_K^-1) (QP) or log(|K| / |K°| Omega_K^(-1/n)) (PQ).

    Both right-hand sides equal the direct D_KL. The tolerance is 2% of c_2 L.
    """
    from .affine_surface import a_k, omega

    n = K.dim
    direction = "QP" if variant == "QP" else "PQ"
    if direction == "QP":
        rhs = float(np.log(bodies.polar_volume(K) / bodies.volume(K) / a_k(K)))
    else:
        rhs = float(np.log(bodies.volume(K) / bodies.polar_volume(K) * omega(K) ** (-1.0 / n)))
    weight = weight_f_kl(K, variant)
    if weight.degenerate:
        return IdentityCheck(0.0, rhs, abs(rhs), abs(rhs) < 1e-8, "ball: both sides vanish")
    result = limit_quotient(K, weight, s_grid)
    ratio = weight.params["R"] / weight.params["r"]
    lhs = result.limit - 2.0 * n * np.log(ratio)
    residual = abs(lhs - rhs)
    return IdentityCheck(lhs, rhs, residual, residual <= 0.02 * abs(result.limit), f"c2 L = {result.limit:.6g}")


def mixed_surface_relation(carrier: ConvexBody, Ks: Sequence[ConvexBody], p: float, s_grid=None) -> IdentityCheck:
    """Normalized mixed surface-body limit against exp(-(n/(n+p)) D_{p/(n+p)}(P x P || Q x Q)), 2%."""
    n = carrier.dim
    result = limit_quotient(carrier, weight_mixed(Ks, p), s_grid)
    norm = n * np.prod([(bodies.volume(K) * bodies.polar_volume(K) ** (p / n)) ** (1.0 / (n + p)) for K in Ks])
    rhs = float(np.exp(-(n / (n + p)) * mixed_renyi(Ks, p / (n + p), "PQ").value))
    return identity_check(result.limit / norm, rhs, 0.02, relative=True)
