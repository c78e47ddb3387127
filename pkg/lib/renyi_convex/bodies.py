"""
Convex Bodies
=============

Convex bodies are immutable capability records built around the support
function. Every evaluator is vectorized: it takes an (m, n) array of points
and returns an (m,) array (or (m, n) for gradients). Support and gauge are
positively 1-homogeneous on all of R^n; curvature_fn expects unit vectors.

KINDS:
------
    ball            h(u) = rho |u|
    ellipsoid       K = A B^n,          h(u) = |A^T u|
    lr_ball         unit ball of l_r,   h(u) = ||u||_s,  1/r + 1/s = 1
    polytope        convex hull of vertices (recentered to the centroid)
    polar           K°, support = gauge of K
    linear_image    T K,                h(u) = h_K(T^T u)
    smooth2d        planar C2+ body given by a periodic support function

Derived bodies (polar, linear_image) compose the evaluators of the body
they wrap; nothing is materialized except for polytopes.

SMOOTHNESS:
-----------
"c2plus" bodies expose support_gradient (= N_K^{-1}) and curvature_fn
(f_K = 1/kappa). "polytope" bodies expose support and gauge only; the
operations that need curvature raise UnsupportedSmoothness.

USAGE:
------
    disk = ball(1.0, 2)
    ell = linear_image(np.diag([2.0, 1.0]), disk)
    volume(ell)                 # 2 pi
    curvature_function(ell, Direction.from_angle(0.0))   # 0.5
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import optimize
from scipy.spatial import ConvexHull, QhullError
from scipy.special import gammaln

from . import constants
from .errors import InvalidArgument, InvalidBody, NonConvergence, UnsupportedSmoothness
from .extrapolation import richardson_extrapolate
from .log import get_logger
from .polygon import shoelace_area

log = get_logger("bodies")

Evaluator = Callable[[np.ndarray], np.ndarray]

# =============================================================================
# DOMAIN TYPES
# =============================================================================


@dataclass(frozen=True)
class Direction:
    """A unit vector. Construction fails if |u| differs from 1 by more than 1e-12."""

    coordinates: tuple[float, ...]

    def __post_init__(self) -> None:
        norm = float(np.linalg.norm(self.coordinates))
        if abs(norm - 1.0) > 1e-12:
            raise InvalidArgument(f"direction must be a unit vector, |u| = {norm!r}")

    @classmethod
    def from_vector(cls, x) -> Direction:
        x = np.asarray(x, dtype=float)
        return cls(tuple(float(c) for c in x / np.linalg.norm(x)))

    @classmethod
    def from_angle(cls, theta: float) -> Direction:
        return cls((float(np.cos(theta)), float(np.sin(theta))))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coordinates, dtype=float)


@dataclass(frozen=True)
class RollingRadii:
    r_inner: float
    R_outer: float

    def __post_init__(self) -> None:
        if not 0.0 < self.r_inner <= self.R_outer * (1.0 + 1e-12):
            raise InvalidArgument(f"rolling radii out of order: {self.r_inner}, {self.R_outer}")


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """
    Capability record of a convex body with the origin in its interior.

    Attributes:
    -----------
    dim : int
        Ambient dimension n >= 2
    kind : str
        One of the KINDS listed in the module docstring
    smoothness : str
        "c2plus" or "polytope"
    support, gauge : Evaluator
        (m, n) -> (m,), positively 1-homogeneous
    support_gradient, gauge_gradient : Evaluator or None
        (m, n) -> (m, n); support_gradient(u) is the boundary point with normal u
    curvature_fn : Evaluator or None
        unit (m, n) -> (m,) curvature function f_K; may be 0 or inf at
        singular_directions
    volume_closed_form, polar_volume_closed_form : float or None
        |K| and |K°| when known exactly
    singular_directions : np.ndarray
        (k, 2) unit normals where f_K is 0 or inf (n = 2 only)
    vertices : np.ndarray or None
        Polytope vertices in counterclockwise order for n = 2
    inner : ConvexBody or None
        The wrapped body for polar / linear_image
    params : dict
        Constructor parameters, for descriptors and logging
    """

    dim: int
    kind: str
    smoothness: str
    support: Evaluator
    gauge: Evaluator
    support_gradient: Evaluator | None = None
    gauge_gradient: Evaluator | None = None
    curvature_fn: Evaluator | None = None
    volume_closed_form: float | None = None
    polar_volume_closed_form: float | None = None
    singular_directions: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    vertices: np.ndarray | None = None
    inner: ConvexBody | None = None
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def is_smooth(self) -> bool:
        return self.smoothness == "c2plus"

    def describe(self) -> str:
        if self.inner is not None:
            return f"{self.kind}({self.inner.describe()})"
        shown = {k: v for k, v in self.params.items() if k not in ("vertices", "callable")}
        return f"{self.kind}{shown}" if shown else self.kind


# =============================================================================
# HELPERS
# =============================================================================


def unit_ball_volume(n: int) -> float:
    return float(np.exp(0.5 * n * np.log(np.pi) - gammaln(0.5 * n + 1.0)))


def angles_to_directions(theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def directions_to_angles(u) -> np.ndarray:
    u = np.atleast_2d(u)
    return np.mod(np.arctan2(u[:, 1], u[:, 0]), 2.0 * np.pi)


def _rows(x) -> np.ndarray:
    return np.atleast_2d(np.asarray(x, dtype=float))


def _normalize_rows(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def _require_smooth(K: ConvexBody, what: str) -> None:
    if not K.is_smooth:
        raise UnsupportedSmoothness(f"{what} needs a C2+ body, got {K.describe()}")


# =============================================================================
# CONSTRUCTORS
# =============================================================================


def ball(radius: float = 1.0, dim: int = 2) -> ConvexBody:
    rho = float(radius)
    if not rho > 0.0:
        raise InvalidBody(f"ball radius must be positive, got {radius!r}")
    if dim < 2:
        raise InvalidBody(f"dimension must be >= 2, got {dim}")

    def support(x):
        return rho * np.linalg.norm(_rows(x), axis=1)

    def gauge(x):
        return np.linalg.norm(_rows(x), axis=1) / rho

    def support_gradient(x):
        return rho * _normalize_rows(_rows(x))

    def gauge_gradient(x):
        return _normalize_rows(_rows(x)) / rho

    def curvature(u):
        return np.full(_rows(u).shape[0], rho ** (dim - 1))

    omega = unit_ball_volume(dim)
    return ConvexBody(
        dim=dim,
        kind="ball",
        smoothness="c2plus",
        support=support,
        gauge=gauge,
        support_gradient=support_gradient,
        gauge_gradient=gauge_gradient,
        curvature_fn=curvature,
        volume_closed_form=omega * rho**dim,
        polar_volume_closed_form=omega / rho**dim,
        params={"radius": rho, "dim": dim},
    )


def ellipsoid(matrix) -> ConvexBody:
    """The image A B^n of the Euclidean unit ball."""
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 2:
        raise InvalidBody(f"ellipsoid matrix must be square n x n with n >= 2, got {A.shape}")
    det = float(np.linalg.det(A))
    if abs(det) < 1e-300 or np.linalg.cond(A) > 1e12:
        raise InvalidBody("ellipsoid matrix is singular")
    n = A.shape[0]
    A_inv = np.linalg.inv(A)
    AAt = A @ A.T
    inv_AAt = A_inv.T @ A_inv

    def support(x):
        return np.linalg.norm(_rows(x) @ A, axis=1)

    def gauge(x):
        return np.linalg.norm(_rows(x) @ A_inv.T, axis=1)

    def support_gradient(x):
        x = _rows(x)
        return (x @ AAt) / support(x)[:, None]

    def gauge_gradient(x):
        x = _rows(x)
        return (x @ inv_AAt) / gauge(x)[:, None]

    def curvature(u):
        return det**2 / support(u) ** (n + 1)

    omega = unit_ball_volume(n)
    return ConvexBody(
        dim=n,
        kind="ellipsoid",
        smoothness="c2plus",
        support=support,
        gauge=gauge,
        support_gradient=support_gradient,
        gauge_gradient=gauge_gradient,
        curvature_fn=curvature,
        volume_closed_form=omega * abs(det),
        polar_volume_closed_form=omega / abs(det),
        params={"matrix": A.tolist()},
    )


def lr_volume_closed_form(n: int, r: float) -> float:
    return float(np.exp(n * np.log(2.0) + n * gammaln(1.0 + 1.0 / r) - gammaln(1.0 + n / r)))


def lr_ball(r: float, dim: int = 2) -> ConvexBody:
    """Unit ball of l_r^n for 1 < r < inf. r = 1 and r = inf are polytopes."""
    r = float(r)
    if not 1.0 < r < np.inf:
        raise InvalidBody(f"lr_ball needs 1 < r < inf, got r = {r!r} (use a polytope for r = 1, inf)")
    if dim < 2:
        raise InvalidBody(f"dimension must be >= 2, got {dim}")
    s = r / (r - 1.0)
    n = dim

    def support(x):
        return np.linalg.norm(_rows(x), ord=s, axis=1)

    def gauge(x):
        return np.linalg.norm(_rows(x), ord=r, axis=1)

    def support_gradient(x):
        x = _rows(x)
        h = support(x)
        return np.sign(x) * np.abs(x) ** (s - 1.0) / h[:, None] ** (s - 1.0)

    def gauge_gradient(x):
        x = _rows(x)
        g = gauge(x)
        return np.sign(x) * np.abs(x) ** (r - 1.0) / g[:, None] ** (r - 1.0)

    def curvature(u):
        # kappa = (r-1)^(n-1) h^(n+1) prod_j (|u_j|/h)^((r-2)/(r-1)), f = 1/kappa
        u = _rows(u)
        h = support(u)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            log_kappa = (n - 1) * np.log(r - 1.0) + (n + 1) * np.log(h)
            if r != 2.0:
                ratio = np.abs(u) / h[:, None]
                log_kappa = log_kappa + (r - 2.0) / (r - 1.0) * np.sum(np.log(ratio), axis=1)
            return np.exp(-log_kappa)

    singular = np.zeros((0, 2))
    if n == 2 and r != 2.0:
        singular = angles_to_directions(np.arange(4) * np.pi / 2.0)
        singular = np.round(singular)

    return ConvexBody(
        dim=n,
        kind="lr_ball",
        smoothness="c2plus",
        support=support,
        gauge=gauge,
        support_gradient=support_gradient,
        gauge_gradient=gauge_gradient,
        curvature_fn=curvature,
        volume_closed_form=lr_volume_closed_form(n, r),
        polar_volume_closed_form=lr_volume_closed_form(n, s),
        singular_directions=singular,
        params={"r": r, "dim": n},
    )


def _hull_centroid(points: np.ndarray, hull: ConvexHull) -> np.ndarray:
    # fan of simplices from an interior point, weighted by their volumes
    apex = points[hull.vertices].mean(axis=0)
    n = points.shape[1]
    total = 0.0
    moment = np.zeros(n)
    for simplex in hull.simplices:
        corners = np.vstack([points[simplex], apex])
        vol = abs(np.linalg.det(corners[:-1] - apex))
        total += vol
        moment += vol * corners.mean(axis=0)
    return moment / total


def _polytope_from_points(points: np.ndarray, recenter: bool, kind: str, params: dict) -> ConvexBody:
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] < 2 or points.shape[0] <= points.shape[1]:
        raise InvalidBody(f"polytope needs at least n + 1 points in R^n, got shape {points.shape}")
    try:
        hull = ConvexHull(points)
    except QhullError as e:
        raise InvalidBody(f"polytope vertices are degenerate: {str(e).splitlines()[0]}") from e

    if recenter:
        centroid = _hull_centroid(points, hull)
        points = points - centroid
        hull = ConvexHull(points)

    n = points.shape[1]
    vertices = points[hull.vertices]  # counterclockwise for n = 2
    normals = hull.equations[:, :-1]
    offsets = -hull.equations[:, -1]
    if np.min(offsets) <= 1e-12 * np.max(np.abs(vertices)):
        raise InvalidBody("origin is not interior to the polytope")

    def support(x):
        return np.max(_rows(x) @ vertices.T, axis=1)

    def gauge(x):
        return np.maximum(np.max(_rows(x) @ (normals / offsets[:, None]).T, axis=1), 0.0)

    volume = shoelace_area(vertices) if n == 2 else float(hull.volume)
    polar_points = normals / offsets[:, None]
    polar_hull = ConvexHull(polar_points)
    polar_vol = (
        shoelace_area(polar_points[polar_hull.vertices]) if n == 2 else float(polar_hull.volume)
    )

    return ConvexBody(
        dim=n,
        kind=kind,
        smoothness="polytope",
        support=support,
        gauge=gauge,
        volume_closed_form=volume,
        polar_volume_closed_form=polar_vol,
        vertices=vertices,
        params={**params, "vertices": vertices.tolist()},
    )


def polytope(vertices) -> ConvexBody:
    """Convex hull of the given points, translated so that its centroid is the origin."""
    return _polytope_from_points(np.asarray(vertices, dtype=float), True, "polytope", {})


def polytope_facets(K: ConvexBody) -> tuple[np.ndarray, np.ndarray]:
    """Unit outer facet normals a_i and offsets d_i (K = {x : a_i.x <= d_i})."""
    if K.vertices is None:
        raise UnsupportedSmoothness(f"{K.describe()} is not a polytope")
    hull = ConvexHull(K.vertices)
    return hull.equations[:, :-1], -hull.equations[:, -1]


def _smooth_series_from_samples(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    N = values.size
    c = np.fft.rfft(values) / N
    a = 2.0 * c.real
    b = -2.0 * c.imag
    a[0] = c[0].real
    b[0] = 0.0
    if N % 2 == 0:
        a[-1] = c[-1].real
        b[-1] = 0.0
    return a, b


def smooth2d(support=None, *, cos=None, sin=None) -> ConvexBody:
    """
    Planar C2+ body from its support function h(theta).

    Parameters:
    -----------
    support : callable, optional
        theta (array) -> h(theta), 2 pi periodic
    cos, sin : list of float, optional
        Fourier coefficients: h = cos[0] + sum_k cos[k] cos(k t) + sin[k] sin(k t)

    A callable is resampled on 2^k points with k increased until the trailing
    Fourier coefficients fall below 1e-14 of the largest.
    """
    if support is None:
        if cos is None:
            raise InvalidBody("smooth2d needs a support callable or Fourier coefficients")
        a = np.asarray(cos, dtype=float)
        b = np.zeros_like(a) if sin is None else np.asarray(sin, dtype=float)
        size = max(a.size, b.size)
        a = np.pad(a, (0, size - a.size))
        b = np.pad(b, (0, size - b.size))
        params = {"cos": a.tolist(), "sin": b.tolist()}
    else:
        for k in range(5, 15):
            N = 2**k
            samples = np.asarray(support(2.0 * np.pi * np.arange(N) / N), dtype=float)
            a, b = _smooth_series_from_samples(samples)
            mag = np.hypot(a, b)
            if np.max(mag[-max(2, mag.size // 4) :]) < 1e-14 * np.max(mag):
                break
        else:
            raise InvalidBody("support function is not resolved by 2^14 Fourier modes")
        params = {"callable": True}

    mag = np.hypot(a, b)
    keep = np.nonzero(mag > 1e-16 * np.max(mag))[0]
    size = int(keep[-1]) + 1 if keep.size else 1
    a, b = a[:size], b[:size]
    k = np.arange(size, dtype=float)

    def series(theta, order):
        theta = np.asarray(theta, dtype=float)
        kt = np.multiply.outer(theta, k)
        c, s = np.cos(kt), np.sin(kt)
        if order == 0:
            return c @ a + s @ b
        if order == 1:
            return (-s * k) @ a + (c * k) @ b
        return (-c * k**2) @ a + (-s * k**2) @ b

    def h_theta(theta):
        return series(theta, 0)

    def f_theta(theta):
        return series(theta, 0) + series(theta, 2)

    grid = 2.0 * np.pi * np.arange(4096) / 4096
    if np.min(h_theta(grid)) <= 0.0:
        raise InvalidBody("smooth2d support function must be positive (origin interior)")
    if np.min(f_theta(grid)) <= 0.0:
        raise InvalidBody("smooth2d curvature function h + h'' must be positive (C2+)")

    dense = 2.0 * np.pi * np.arange(512) / 512
    dense_e = angles_to_directions(dense)
    dense_h = h_theta(dense)

    def support_fn(x):
        x = _rows(x)
        return np.linalg.norm(x, axis=1) * h_theta(directions_to_angles(x))

    def support_gradient(x):
        theta = directions_to_angles(_rows(x))
        e = angles_to_directions(theta)
        e_perp = np.stack([-e[:, 1], e[:, 0]], axis=1)
        return series(theta, 0)[:, None] * e + series(theta, 1)[:, None] * e_perp

    def _normal_angle(x):
        # theta maximizing <x, e(theta)> / h(theta); root of cross(x, boundary point)
        start = dense[np.argmax((x @ dense_e.T) / dense_h, axis=1)]

        def psi(theta):
            p = support_gradient(angles_to_directions(theta))
            return x[:, 0] * p[:, 1] - x[:, 1] * p[:, 0]

        def dpsi(theta):
            return f_theta(theta) * np.sum(x * angles_to_directions(theta), axis=1)

        return optimize.newton(psi, start, fprime=dpsi, tol=1e-13, maxiter=50)

    def gauge(x):
        x = _rows(x)
        out = np.zeros(x.shape[0])
        nz = np.linalg.norm(x, axis=1) > 0.0
        if np.any(nz):
            theta = np.atleast_1d(_normal_angle(x[nz]))
            out[nz] = np.sum(x[nz] * angles_to_directions(theta), axis=1) / h_theta(theta)
        return out

    def gauge_gradient(x):
        x = _rows(x)
        theta = np.atleast_1d(_normal_angle(x))
        return angles_to_directions(theta) / h_theta(theta)[:, None]

    def curvature(u):
        return f_theta(directions_to_angles(_rows(u)))

    # |K| = 1/2 int (h^2 - h'^2) dtheta, exact on the series
    area = np.pi * a[0] ** 2 + 0.5 * np.pi * np.sum((1.0 - k[1:] ** 2) * (a[1:] ** 2 + b[1:] ** 2))

    return ConvexBody(
        dim=2,
        kind="smooth2d",
        smoothness="c2plus",
        support=support_fn,
        gauge=gauge,
        support_gradient=support_gradient,
        gauge_gradient=gauge_gradient,
        curvature_fn=curvature,
        volume_closed_form=float(area),
        params=params,
    )


# =============================================================================
# DERIVED BODIES
# =============================================================================


def polar(K: ConvexBody) -> ConvexBody:
    """K° = {y : <x, y> <= 1 for x in K}. Support of K° is the gauge of K."""
    if K.smoothness == "polytope":
        a, d = polytope_facets(K)
        body = _polytope_from_points(a / d[:, None], False, "polar", {})
        return ConvexBody(**{**body.__dict__, "inner": K, "params": {}})

    n = K.dim
    gK, hK = K.gauge, K.support
    grad_g = K.gauge_gradient

    def curvature(v):
        # f_{K°}(v) = 1 / [(g_K(v) h_K(u))^(n+1) f_K(u)],  u = normalized grad g_K(v)
        v = _rows(v)
        u = _normalize_rows(grad_g(v))
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return 1.0 / ((gK(v) * hK(u)) ** (n + 1) * K.curvature_fn(u))

    singular = K.singular_directions
    if singular.size:
        singular = _normalize_rows(K.support_gradient(singular))

    return ConvexBody(
        dim=n,
        kind="polar",
        smoothness="c2plus",
        support=gK,
        gauge=hK,
        support_gradient=grad_g,
        gauge_gradient=K.support_gradient,
        curvature_fn=curvature,
        volume_closed_form=K.polar_volume_closed_form,
        polar_volume_closed_form=K.volume_closed_form,
        singular_directions=singular,
        inner=K,
    )


def linear_image(T, K: ConvexBody) -> ConvexBody:
    """T K for an invertible n x n matrix T."""
    T = np.asarray(T, dtype=float)
    if T.shape != (K.dim, K.dim):
        raise InvalidArgument(f"linear map must be {K.dim} x {K.dim}, got {T.shape}")
    det = float(np.linalg.det(T))
    if det == 0.0 or not np.isfinite(det) or np.linalg.cond(T) > 1e12:
        raise InvalidArgument("linear map is singular")
    T_inv = np.linalg.inv(T)
    params = {"matrix": T.tolist()}

    if K.smoothness == "polytope":
        body = _polytope_from_points(K.vertices @ T.T, False, "linear_image", params)
        return ConvexBody(**{**body.__dict__, "inner": K})

    n = K.dim

    def support(x):
        return K.support(_rows(x) @ T)

    def gauge(x):
        return K.gauge(_rows(x) @ T_inv.T)

    def support_gradient(x):
        return K.support_gradient(_rows(x) @ T) @ T.T

    def gauge_gradient(x):
        return K.gauge_gradient(_rows(x) @ T_inv.T) @ T_inv

    def curvature(u):
        w = _rows(u) @ T
        norm = np.linalg.norm(w, axis=1)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return det**2 * K.curvature_fn(w / norm[:, None]) / norm ** (n + 1)

    singular = K.singular_directions
    if singular.size:
        singular = _normalize_rows(singular @ T_inv)

    return ConvexBody(
        dim=n,
        kind="linear_image",
        smoothness="c2plus",
        support=support,
        gauge=gauge,
        support_gradient=support_gradient,
        gauge_gradient=gauge_gradient,
        curvature_fn=curvature,
        volume_closed_form=None
        if K.volume_closed_form is None
        else abs(det) * K.volume_closed_form,
        polar_volume_closed_form=None
        if K.polar_volume_closed_form is None
        else K.polar_volume_closed_form / abs(det),
        singular_directions=singular,
        inner=K,
        params=params,
    )


# =============================================================================
# OPERATIONS
# =============================================================================


def _scalar_or_rows(K: ConvexBody, u, evaluator: Evaluator):
    x = np.asarray(u.array if isinstance(u, Direction) else u, dtype=float)
    out = evaluator(_rows(x))
    return out[0] if x.ndim == 1 else out


def support(K: ConvexBody, u):
    return _scalar_or_rows(K, u, K.support)


def gauge(K: ConvexBody, x):
    return _scalar_or_rows(K, x, K.gauge)


def boundary_point(K: ConvexBody, u):
    """x in the boundary of K with outer normal u (= grad h_K(u))."""
    _require_smooth(K, "boundary_point")
    return _scalar_or_rows(K, u, K.support_gradient)


def curvature_function(K: ConvexBody, u):
    """f_K(u), the reciprocal Gauss curvature at the boundary point with normal u."""
    _require_smooth(K, "curvature_function")
    return _scalar_or_rows(K, u, K.curvature_fn)


def volume(K: ConvexBody) -> float:
    """|K|. Closed forms where known, otherwise (1/n) int h f dsigma."""
    if K.volume_closed_form is not None:
        return float(K.volume_closed_form)
    if K.kind == "polar":
        return polar_volume(K.inner)
    from .quadrature import family_for_bodies, integrate

    _require_smooth(K, "volume by quadrature")
    result = integrate(
        lambda u: K.support(u) * K.curvature_fn(u), family_for_bodies([K])
    ).require("volume")
    return result / K.dim


def polar_volume(K: ConvexBody) -> float:
    """|K°| = (1/n) int h_K^{-n} dsigma."""
    if K.polar_volume_closed_form is not None:
        return float(K.polar_volume_closed_form)
    if K.kind == "polar":
        return volume(K.inner)
    from .quadrature import family_for_bodies, integrate

    result = integrate(lambda u: K.support(u) ** (-K.dim), family_for_bodies([K])).require(
        "polar volume"
    )
    return result / K.dim


def curvature_fd(K: ConvexBody, theta) -> np.ndarray:
    """
    f = h + h'' from Richardson-extrapolated central differences of h(theta).

    Independent of the analytic curvature closures. The base step stays an
    eighth of the distance to the nearest singular direction.
    """
    if K.dim != 2:
        raise InvalidArgument("curvature_fd is planar only")
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    step = np.full(theta.shape, 0.05)
    if K.singular_directions.size:
        sing = directions_to_angles(K.singular_directions)
        gap = np.abs(np.angle(np.exp(1j * (theta[:, None] - sing[None, :]))))
        step = np.minimum(step, gap.min(axis=1) / 8.0)

    def h(t):
        return K.support(angles_to_directions(t))

    h0 = h(theta)
    levels = []
    for j in range(4):
        d = step / 2**j
        levels.append((h(theta + d) - 2.0 * h0 + h(theta - d)) / d**2)
    return h0 + richardson_extrapolate(levels, p=2)


def _refined_extremes(f, m: int) -> tuple[float, float]:
    grid = 2.0 * np.pi * np.arange(m) / m
    values = f(grid)
    if not np.all(np.isfinite(values)) or np.min(values) <= 0.0:
        raise UnsupportedSmoothness("curvature 0 or inf somewhere; rolling radii do not exist")
    step = grid[1]
    extremes = []
    for sign, idx in ((1.0, np.argmin(values)), (-1.0, np.argmax(values))):
        res = optimize.minimize_scalar(
            lambda t, sign=sign: sign * f(t)[0],
            bounds=(grid[idx] - step, grid[idx] + step),
            method="bounded",
            options={"xatol": 1e-10},
        )
        if sign > 0:
            extremes.append(min(res.fun, values[idx]))
        else:
            extremes.append(max(-res.fun, values[idx]))
    return float(extremes[0]), float(extremes[1])


def rolling_radii(K: ConvexBody) -> RollingRadii:
    """
    (min f, max f) over the circle.

    The grid extremes are polished with a bounded scalar search; the grid is
    doubled until both radii change by at most ROLLING_TOL (relative).
    """
    _require_smooth(K, "rolling_radii")
    if K.dim != 2:
        raise InvalidArgument("rolling_radii is implemented for n = 2")

    def f(t):
        return K.curvature_fn(angles_to_directions(np.atleast_1d(t)))

    m = constants.ROLLING_GRID
    try:
        r, R = _refined_extremes(f, m)
    except UnsupportedSmoothness as e:
        raise UnsupportedSmoothness(f"{K.describe()}: {e}") from e
    for _ in range(constants.ROLLING_MAX_DOUBLINGS):
        m *= 2
        r_new, R_new = _refined_extremes(f, m)
        stable = abs(r_new - r) <= constants.ROLLING_TOL * r and abs(R_new - R) <= constants.ROLLING_TOL * R
        r, R = min(r, r_new), max(R, R_new)
        if stable:
            return RollingRadii(r_inner=r, R_outer=R)
    raise NonConvergence(f"rolling radii of {K.describe()} not stable after {m} grid points")


def perimeter(K: ConvexBody) -> float:
    """Length of the boundary (n = 2)."""
    if K.dim != 2:
        raise InvalidArgument("perimeter is planar only")
    if K.smoothness == "polytope":
        v = K.vertices
        return float(np.sum(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)))
    from .quadrature import family_for_bodies, integrate

    return integrate(K.curvature_fn, family_for_bodies([K])).require("perimeter")


def boundary_points_at(K: ConvexBody, phi) -> np.ndarray:
    """Boundary points e(phi) / ||e(phi)||_K at radial angles phi (n = 2)."""
    e = angles_to_directions(np.atleast_1d(np.asarray(phi, dtype=float)))
    return e / K.gauge(e)[:, None]


def boundary_polygon(K: ConvexBody, count: int) -> np.ndarray:
    """Boundary points at equispaced radial angles."""
    return boundary_points_at(K, 2.0 * np.pi * np.arange(count) / count)
