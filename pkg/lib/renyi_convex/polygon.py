"""
Planar polygon helpers: shoelace area, halfplane clipping and the gauge of a
convex polygon (used by the surface-body containment check).

Polygons are (m, 2) float arrays of vertices in counterclockwise order.
Clipping follows Sutherland-Hodgman, one halfplane at a time, with the
per-edge work vectorized over the vertex array.
"""

import numpy as np


def shoelace_area(polygon) -> float:
    p = np.asarray(polygon, dtype=float)
    if p.shape[0] < 3:
        return 0.0
    q = np.roll(p, -1, axis=0)
    return 0.5 * abs(float(np.sum(p[:, 0] * q[:, 1] - q[:, 0] * p[:, 1])))


def clip_halfplane(polygon: np.ndarray, normal, offset: float) -> np.ndarray:
    """
    Keep the part of the polygon with <x, normal> <= offset.

    Parameters:
    -----------
    polygon : np.ndarray
        (m, 2) vertices, counterclockwise
    normal : array-like
        Outer normal of the halfplane (any length)
    offset : float
        Right-hand side of the constraint
    """
    if polygon.shape[0] == 0:
        return polygon
    d = polygon @ np.asarray(normal, dtype=float) - offset
    inside = d <= 0.0
    if np.all(inside):
        return polygon
    if not np.any(inside):
        return polygon[:0]

    nxt = np.roll(polygon, -1, axis=0)
    d_next = np.roll(d, -1)
    crossing = inside != (d_next <= 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = d / (d - d_next)
    cut = polygon + t[:, None] * (nxt - polygon)

    # per edge i: keep vertex i if inside, then the crossing point if any
    candidates = np.stack([polygon, cut], axis=1)
    keep = np.stack([inside, crossing], axis=1)
    return candidates[keep]


def halfplane_intersection(normals: np.ndarray, offsets: np.ndarray, bound: float) -> np.ndarray:
    """Intersection of {<x, a_i> <= d_i} inside the square [-bound, bound]^2."""
    polygon = bound * np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])
    for a, d in zip(normals, offsets):
        polygon = clip_halfplane(polygon, a, d)
        if polygon.shape[0] == 0:
            break
    return polygon


def polygon_gauge(polygon: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Gauge of a convex polygon containing the origin, evaluated at points."""
    p = np.asarray(polygon, dtype=float)
    q = np.roll(p, -1, axis=0)
    edge = q - p
    normals = np.stack([edge[:, 1], -edge[:, 0]], axis=1)
    offsets = np.sum(normals * p, axis=1)
    # repeated vertices give zero-length edges
    keep = offsets > 0.0
    return np.max(np.atleast_2d(points) @ (normals[keep] / offsets[keep, None]).T, axis=1)
