"""
Cone Measures
=============

The probability measures P_K and Q_K on the boundary of a C2+ body and
their relation to the cone measures of K and K°.

DENSITIES:
----------
On the boundary (w.r.t. surface measure mu_K):

    p_K(x) = kappa(x) / (n |K°| <x, N(x)>^n)
    q_K(x) = <x, N(x)> / (n |K|)

Pulled back to the sphere through the Gauss map (d mu_K = f_K d sigma):

    p(u) = 1 / (n |K°| h(u)^n)
    q(u) = h(u) f(u) / (n |K|)

ROUTES:
-------
    sphere      nodes are outer normals u, weight d sigma
    boundary    n = 2 only; nodes are radial directions e, the boundary
                point is x = e / ||e||_K and d mu = |x|^2 d phi / <x, N>

Both routes give the same integrals through unrelated discretizations.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from . import bodies, constants
from .bodies import ConvexBody
from .errors import InvalidArgument, UnsupportedSmoothness
from .extrapolation import richardson_extrapolate
from .log import get_logger
from .quadrature import RuleFamily, arc_family, circle_family, family_for_bodies, graded_family, integrate

log = get_logger("cone")

# (m, n) nodes -> (p, q, jacobian), each (m,)
DensityEvaluator = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclass(frozen=True, eq=False)
class DensityPair:
    body: ConvexBody
    p_sphere: Callable[[np.ndarray], np.ndarray]
    q_sphere: Callable[[np.ndarray], np.ndarray]
    vol: float
    polar_vol: float


@dataclass(frozen=True, eq=False)
class DensityRoute:
    """Nodes, densities and measure jacobian for one parametrization of the boundary."""

    name: str
    family: RuleFamily
    evaluate: DensityEvaluator


def density_pair(K: ConvexBody) -> DensityPair:
    if not K.is_smooth:
        raise UnsupportedSmoothness(
            f"{K.describe()}: P_K vanishes a.e. on a polytope; divergences follow the polytope rules"
        )
    n = K.dim
    vol, polar_vol = bodies.volume(K), bodies.polar_volume(K)

    def p_sphere(u):
        return 1.0 / (n * polar_vol * K.support(u) ** n)

    def q_sphere(u):
        return K.support(u) * K.curvature_fn(u) / (n * vol)

    return DensityPair(K, p_sphere, q_sphere, vol, polar_vol)


def sphere_route(K: ConvexBody, family: RuleFamily | None = None) -> DensityRoute:
    pair = density_pair(K)

    def evaluate(u):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            p, q = pair.p_sphere(u), pair.q_sphere(u)
        return p, q, np.ones_like(p)

    return DensityRoute("sphere", family or family_for_bodies([K]), evaluate)


def boundary_breakpoints(K: ConvexBody) -> np.ndarray:
    """Radial directions of the boundary points whose normals are singular."""
    if not K.singular_directions.size:
        return np.zeros((0, 2))
    x = K.support_gradient(K.singular_directions)
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def boundary_route(K: ConvexBody) -> DensityRoute:
    """Radial-angle parametrization of the boundary (n = 2)."""
    if K.dim != 2:
        raise InvalidArgument("the boundary route is planar only")
    pair = density_pair(K)
    n = K.dim

    def evaluate(e):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            grad = K.gauge_gradient(e)
            x = e / K.gauge(e)[:, None]
            normal = grad / np.linalg.norm(grad, axis=1, keepdims=True)
            h = np.sum(x * normal, axis=1)
            kappa = 1.0 / K.curvature_fn(normal)
            p = kappa / (n * pair.polar_vol * h**n)
            q = h / (n * pair.vol)
            jac = np.sum(x * x, axis=1) / h
        return p, q, jac

    breaks = boundary_breakpoints(K)
    family = graded_family(breaks) if breaks.size else circle_family()
    return DensityRoute("boundary", family, evaluate)


def route_for(K: ConvexBody, route: str = "sphere", family: RuleFamily | None = None) -> DensityRoute:
    if route == "sphere":
        return sphere_route(K, family)
    if route == "boundary":
        return boundary_route(K)
    raise InvalidArgument(f"unknown route {route!r} (sphere, boundary)")


# =============================================================================
# CONE MEASURE (n = 2)
# =============================================================================


def _fan_area(K: ConvexBody, phi0: float, phi1: float, samples: int = constants.FAN_SAMPLES) -> float:
    """Area of the cone over the boundary between radial angles phi0 < phi1 (triangle fan)."""

    def fan(m):
        phi = np.linspace(phi0, phi1, m + 1)
        x = bodies.boundary_points_at(K, phi)
        return 0.5 * float(np.sum(x[:-1, 0] * x[1:, 1] - x[:-1, 1] * x[1:, 0]))

    return float(richardson_extrapolate([fan(samples), fan(2 * samples)], p=2))


def _normal_to_radial(K: ConvexBody, theta: float) -> float:
    x = K.support_gradient(bodies.angles_to_directions(np.array([theta])))
    return float(np.arctan2(x[0, 1], x[0, 0]))


def _edge_normals(v: np.ndarray) -> np.ndarray:
    edges = np.roll(v, -1, axis=0) - v
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
    return normals / np.linalg.norm(normals, axis=1, keepdims=True)


def _triangle_fan(v: np.ndarray) -> np.ndarray:
    """Areas of the triangles (0, v_i, v_i+1)."""
    w = np.roll(v, -1, axis=0)
    return 0.5 * (v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0])


def _polytope_arc(K: ConvexBody, theta0: float, theta1: float) -> float:
    """Cone measure of the edges whose normal angle lies in [theta0, theta1]."""
    v = K.vertices
    rel = np.mod(bodies.directions_to_angles(_edge_normals(v)) - theta0, 2.0 * np.pi)
    inside = rel <= (theta1 - theta0) + 1e-12
    return float(np.sum(_triangle_fan(v)[inside])) / bodies.volume(K)


def cone_measure_arc(K: ConvexBody, theta0: float, theta1: float) -> float:
    """
    cm_K of the boundary arc whose outer normals have angles in [theta0, theta1].

    The cone {t a : a in arc, 0 <= t <= 1} is measured by a triangle fan over
    densely sampled boundary points, Richardson-extrapolated in the sample count.
    """
    if K.dim != 2:
        raise InvalidArgument("cone_measure_arc is planar only")
    if not theta1 > theta0:
        raise InvalidArgument(f"arc needs theta0 < theta1, got [{theta0}, {theta1}]")
    if K.smoothness == "polytope":
        return _polytope_arc(K, theta0, theta1)
    if theta1 - theta0 >= 2.0 * np.pi:
        return 1.0
    phi0 = _normal_to_radial(K, theta0)
    phi1 = phi0 + np.mod(_normal_to_radial(K, theta1) - phi0, 2.0 * np.pi)
    return _fan_area(K, phi0, phi1) / bodies.volume(K)


def check_Q_is_cone_measure(K: ConvexBody, partitions: int = 16) -> float:
    """max over arcs |Q_K(arc) - cm_K(arc)| for a partition of the normal circle."""
    if K.dim != 2:
        raise InvalidArgument("cone measure checks are planar only")
    if K.smoothness == "polytope":
        # Q side from <x, N> on each edge, cm side from the triangle fan
        v = K.vertices
        vol = bodies.volume(K)
        lengths = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
        offsets = np.sum(v * _edge_normals(v), axis=1)
        q_mass = offsets * lengths / (K.dim * vol)
        cm = _triangle_fan(v) / vol
        residual = float(np.max(np.abs(q_mass - cm)))
        log.debug(f"Q = cm on {len(v)} edges: residual {residual:.3e}")
        return residual

    pair = density_pair(K)
    edges = 2.0 * np.pi * np.arange(partitions + 1) / partitions
    residuals = []
    for t0, t1 in zip(edges[:-1], edges[1:]):
        q_arc = integrate(pair.q_sphere, arc_family(t0, t1, K.singular_directions)).require("Q_K(arc)")
        residuals.append(abs(q_arc - cone_measure_arc(K, t0, t1)))
    residual = float(max(residuals))
    log.debug(f"Q = cm on {partitions} arcs: residual {residual:.3e}")
    return residual


def check_P_pushforward(K: ConvexBody, partitions: int = 16) -> float:
    """
    max over arcs |P_K(arc) - cm_K°(sector)|.

    The sector is the set of radial directions of K° equal to the normals of
    the arc; the cone measure of K° is measured with the polar body's own
    boundary fan.
    """
    if K.dim != 2:
        raise InvalidArgument("cone measure checks are planar only")
    if not K.is_smooth:
        raise UnsupportedSmoothness("the P_K push-forward needs a C2+ body")
    pair = density_pair(K)
    Kp = bodies.polar(K)
    polar_vol = pair.polar_vol
    edges = 2.0 * np.pi * np.arange(partitions + 1) / partitions
    residuals = []
    for t0, t1 in zip(edges[:-1], edges[1:]):
        p_arc = integrate(pair.p_sphere, arc_family(t0, t1, K.singular_directions)).require("P_K(arc)")
        cm = _fan_area(Kp, t0, t1) / polar_vol
        residuals.append(abs(p_arc - cm))
    residual = float(max(residuals))
    log.debug(f"P = push-forward of cm_K° on {partitions} arcs: residual {residual:.3e}")
    return residual
