import numpy as np
import pytest

from renyi_convex import bodies, constants
from renyi_convex.bodies import Direction
from renyi_convex.errors import InvalidArgument, InvalidBody, NonConvergence, UnsupportedSmoothness

# =============================================================================
# CONSTRUCTION
# =============================================================================


@pytest.mark.parametrize(
    "build",
    [
        lambda: bodies.ball(-1.0, 2),
        lambda: bodies.ball(1.0, 1),
        lambda: bodies.lr_ball(1.0, 2),
        lambda: bodies.lr_ball(np.inf, 2),
        lambda: bodies.ellipsoid([[1.0, 0.0], [0.0, 0.0]]),
        lambda: bodies.ellipsoid([[1.0, 2.0, 3.0]]),
        lambda: bodies.polytope([[0, 0], [1, 0], [2, 0]]),
        lambda: bodies.smooth2d(cos=[1.0, 0.0, 0.0, 0.5]),
        lambda: bodies.smooth2d(cos=[1.0, 2.0]),
    ],
)
def test_invalid_bodies_are_rejected(build):
    with pytest.raises(InvalidBody):
        build()


def test_direction_must_be_unit():
    with pytest.raises(InvalidArgument):
        Direction((1.0, 1.0))
    assert Direction.from_vector([3.0, 4.0]).array == pytest.approx([0.6, 0.8])


def test_polytope_is_recentered():
    K = bodies.polytope([[0, 0], [2, 0], [2, 2], [0, 2]])
    assert np.mean(K.vertices, axis=0) == pytest.approx([0.0, 0.0], abs=1e-12)
    assert bodies.volume(K) == pytest.approx(4.0)


def test_singular_linear_map_is_rejected(disk):
    with pytest.raises(InvalidArgument):
        bodies.linear_image([[1.0, 1.0], [1.0, 1.0]], disk)


# =============================================================================
# EVALUATORS
# =============================================================================


def test_support_and_gauge_of_the_ellipse(ellipse):
    assert bodies.support(ellipse, [1.0, 0.0]) == pytest.approx(2.0)
    assert bodies.support(ellipse, [0.0, 1.0]) == pytest.approx(1.0)
    assert bodies.gauge(ellipse, [2.0, 0.0]) == pytest.approx(1.0)
    assert bodies.gauge(ellipse, [0.0, 0.5]) == pytest.approx(0.5)


def test_support_is_homogeneous(lr3):
    x = np.array([[0.3, -0.7], [1.2, 0.4]])
    assert lr3.support(2.5 * x) == pytest.approx(2.5 * lr3.support(x))
    assert lr3.gauge(2.5 * x) == pytest.approx(2.5 * lr3.gauge(x))


def test_boundary_point_lies_on_the_boundary(ellipse, lr3, trefoil):
    u = bodies.angles_to_directions(np.linspace(0.1, 6.0, 17))
    for K in (ellipse, lr3, trefoil):
        x = K.support_gradient(u)
        assert K.gauge(x) == pytest.approx(np.ones(len(u)), abs=1e-10)
        assert np.sum(x * u, axis=1) == pytest.approx(K.support(u), abs=1e-12)


def test_boundary_point_wrapper(ellipse, square):
    u = Direction.from_angle(0.0)
    assert bodies.boundary_point(ellipse, u) == pytest.approx([2.0, 0.0])
    assert bodies.boundary_point(ellipse, np.array([[0.0, 1.0]])) == pytest.approx([[0.0, 1.0]])
    with pytest.raises(UnsupportedSmoothness):
        bodies.boundary_point(square, u)


def test_gauge_gradient_is_the_scaled_normal(ellipse, lr3, trefoil):
    # at the boundary point with normal u, grad ||.||_K = u / h_K(u)
    u = bodies.angles_to_directions(np.linspace(0.1, 6.0, 17))
    for K in (ellipse, lr3, trefoil):
        x = K.support_gradient(u)
        expected = u / K.support(u)[:, None]
        assert K.gauge_gradient(x) == pytest.approx(expected, abs=1e-8)
        assert K.gauge_gradient(3.0 * x) == pytest.approx(expected, abs=1e-8)


def test_polar_swaps_support_and_gauge(lr3):
    P = bodies.polar(lr3)
    x = np.array([[0.5, 0.2], [-1.0, 0.3]])
    assert P.support(x) == pytest.approx(lr3.gauge(x))
    assert P.gauge(x) == pytest.approx(lr3.support(x))


def test_curvature_function_of_the_ellipse(ellipse):
    # radius of curvature of x^2/4 + y^2 = 1: 1/2 at (2, 0), 4 at (0, 1)
    assert bodies.curvature_function(ellipse, Direction.from_angle(0.0)) == pytest.approx(0.5)
    assert bodies.curvature_function(ellipse, Direction.from_angle(np.pi / 2)) == pytest.approx(4.0)


def test_curvature_fd_matches_the_closed_forms(ellipse, trefoil):
    theta = np.linspace(0.0, 2.0 * np.pi, 13, endpoint=False)
    u = bodies.angles_to_directions(theta)
    for K in (ellipse, trefoil):
        assert bodies.curvature_fd(K, theta) == pytest.approx(K.curvature_fn(u), rel=1e-6)


def test_polytope_has_no_curvature(square):
    with pytest.raises(UnsupportedSmoothness):
        bodies.curvature_function(square, [1.0, 0.0])
    with pytest.raises(UnsupportedSmoothness):
        bodies.rolling_radii(square)


# =============================================================================
# VOLUMES
# =============================================================================


def test_closed_form_volumes(disk, ellipse, square, ball3):
    assert bodies.volume(disk) == pytest.approx(np.pi)
    assert bodies.polar_volume(disk) == pytest.approx(np.pi)
    assert bodies.volume(ellipse) == pytest.approx(2.0 * np.pi)
    assert bodies.polar_volume(ellipse) == pytest.approx(np.pi / 2.0)
    assert bodies.volume(square) == pytest.approx(4.0)
    assert bodies.polar_volume(square) == pytest.approx(2.0)
    assert bodies.volume(ball3) == pytest.approx(4.0 * np.pi / 3.0)


def test_lr_ball_volume_and_quadrature_agree(lr3):
    closed = bodies.lr_volume_closed_form(2, 3.0)
    assert bodies.volume(lr3) == pytest.approx(closed)
    # the polar is the l_{3/2} ball
    assert bodies.polar_volume(lr3) == pytest.approx(bodies.lr_volume_closed_form(2, 1.5), rel=1e-10)


def test_smooth2d_area_from_the_series(trefoil):
    assert bodies.volume(trefoil) == pytest.approx(0.96 * np.pi, rel=1e-12)


def test_linear_image_scales_the_volume(lr3):
    T = np.array([[1.5, 0.3], [-0.2, 0.8]])
    image = bodies.linear_image(T, lr3)
    det = abs(np.linalg.det(T))
    assert bodies.volume(image) == pytest.approx(det * bodies.volume(lr3))
    assert bodies.polar_volume(image) == pytest.approx(bodies.polar_volume(lr3) / det, rel=1e-10)


def test_unit_ball_volume():
    assert bodies.unit_ball_volume(2) == pytest.approx(np.pi)
    assert bodies.unit_ball_volume(3) == pytest.approx(4.0 * np.pi / 3.0)


# =============================================================================
# PLANAR HELPERS
# =============================================================================


def test_rolling_radii_of_the_ellipse(ellipse, disk):
    radii = bodies.rolling_radii(ellipse)
    assert radii.r_inner == pytest.approx(0.5, rel=1e-8)
    assert radii.R_outer == pytest.approx(4.0, rel=1e-8)
    disk_radii = bodies.rolling_radii(disk)
    assert disk_radii.r_inner == disk_radii.R_outer == pytest.approx(1.0)


def test_rolling_radii_off_the_grid(trefoil):
    # f = 1 - 0.8 cos(3 t); the maximum at pi / 3 is not a grid angle
    radii = bodies.rolling_radii(trefoil)
    assert radii.r_inner == pytest.approx(0.2, rel=1e-8)
    assert radii.R_outer == pytest.approx(1.8, rel=1e-8)


def test_rolling_radii_need_a_stable_refinement(trefoil, monkeypatch):
    monkeypatch.setattr(constants, "ROLLING_MAX_DOUBLINGS", 0)
    with pytest.raises(NonConvergence):
        bodies.rolling_radii(trefoil)


def test_rolling_radii_do_not_exist_for_lr_balls(lr3):
    with pytest.raises(UnsupportedSmoothness):
        bodies.rolling_radii(lr3)


def test_perimeter(disk, square):
    assert bodies.perimeter(disk) == pytest.approx(2.0 * np.pi)
    assert bodies.perimeter(square) == pytest.approx(8.0)


def test_boundary_polygon_of_the_disk(disk):
    polygon = bodies.boundary_polygon(disk, 64)
    assert np.linalg.norm(polygon, axis=1) == pytest.approx(np.ones(64))


def test_polytope_facets(square):
    normals, offsets = bodies.polytope_facets(square)
    assert offsets == pytest.approx(np.ones(4))
    assert np.linalg.norm(normals, axis=1) == pytest.approx(np.ones(4))
