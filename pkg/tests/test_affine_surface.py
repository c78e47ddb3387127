import numpy as np
import pytest

from renyi_convex import affine_surface, bodies
from renyi_convex.affine_surface import PParameter, alpha_to_p, as_p, p_to_alpha
from renyi_convex.errors import InvalidArgument, UnsupportedSmoothness

# =============================================================================
# PARAMETERS
# =============================================================================


def test_p_parameter_tags():
    assert PParameter.of("-n+", 2).tag == "at_minus_n_right"
    assert PParameter.of("-n-", 3).value == -3.0
    assert PParameter.of("inf").tag == "plus_inf"
    assert PParameter.of(-np.inf).tag == "minus_inf"
    assert str(PParameter.of(2.5)) == "2.5"


def test_p_equal_to_minus_n_is_excluded():
    with pytest.raises(InvalidArgument):
        PParameter.of(-2.0, 2)
    with pytest.raises(InvalidArgument):
        PParameter.of("two")


def test_order_and_p_conversions():
    assert alpha_to_p(0.5, "PQ", 2) == pytest.approx(2.0)
    assert alpha_to_p(0.5, "QP", 2) == pytest.approx(2.0)
    assert alpha_to_p(1.0, "PQ", 2) == np.inf
    assert p_to_alpha(2.0, "PQ", 2) == pytest.approx(0.5)
    assert p_to_alpha(1.0, "QP", 2) == pytest.approx(2.0 / 3.0)
    with pytest.raises(InvalidArgument):
        p_to_alpha(-2.0, "PQ", 2)


def test_random_linear_maps_are_seeded_and_well_conditioned():
    a = affine_surface.random_linear_maps(2, 5, seed=11)
    b = affine_surface.random_linear_maps(2, 5, seed=11)
    for T, U in zip(a, b):
        assert np.array_equal(T, U)
        s = np.linalg.svd(T, compute_uv=False)
        assert np.all(s >= np.exp(-0.5) - 1e-12)
        assert np.all(s <= np.exp(0.5) + 1e-12)


# =============================================================================
# as_p
# =============================================================================


@pytest.mark.parametrize("p", [-5.0, -1.0, 0.0, 0.5, 1.0, 2.0, 10.0, np.inf, -np.inf])
def test_as_p_of_the_disk(disk, p):
    assert as_p(disk, p).value == pytest.approx(2.0 * np.pi, rel=1e-9)


@pytest.mark.parametrize("p", [-1.0, 0.0, 1.0, 2.0, 4.0])
def test_as_p_of_an_ellipse_follows_the_determinant(ellipse, p):
    expected = 2.0 * np.pi * 2.0 ** ((2.0 - p) / (2.0 + p))
    assert as_p(ellipse, p).value == pytest.approx(expected, rel=1e-9)


def test_as_p_at_minus_n(ellipse):
    # h^3 f = det^2 = 4 on the whole circle
    assert as_p(ellipse, "-n+").value == pytest.approx(4.0)
    assert as_p(ellipse, "-n-").value == pytest.approx(0.25)


@pytest.mark.parametrize(
    "p, expected",
    [(1.0, 0.0), (0.0, 8.0), (-1.0, np.inf), (np.inf, 4.0), ("-n+", np.inf), ("-n-", 0.0)],
)
def test_as_p_of_the_square(square, p, expected):
    assert as_p(square, p).value == pytest.approx(expected)


def test_as_p_via_renyi(lr3):
    for p in (0.5, 1.0, 2.0):
        assert affine_surface.as_p_via_renyi(lr3, p) == pytest.approx(as_p(lr3, p).value, rel=1e-7)


@pytest.mark.parametrize("form", ["PQ", "QP"])
def test_exponential_identity(lr3, form):
    assert affine_surface.exponential_identity(lr3, 1.0, form).consistent


def test_duality(lr3):
    assert affine_surface.duality_residual(lr3, 2.0) < 1e-6
    with pytest.raises(InvalidArgument):
        affine_surface.duality_residual(lr3, -1.0)


def test_affine_invariance(lr3):
    T = np.array([[1.3, 0.4], [-0.2, 0.9]])
    assert affine_surface.affine_invariance_residual(lr3, T, 1.0) < 1e-6
    assert affine_surface.renyi_invariance_residual(lr3, T, 0.5) < 1e-7


# =============================================================================
# MIXED
# =============================================================================


def test_mixed_quantities_of_identical_bodies(ellipse):
    for p in (0.5, 1.0, 2.0):
        assert affine_surface.mixed_as_p([ellipse, ellipse], p) == pytest.approx(as_p(ellipse, p).value, rel=1e-10)
    assert affine_surface.dual_mixed_volume([ellipse, ellipse]) == pytest.approx(np.pi / 2.0, rel=1e-10)
    assert affine_surface.mixed_omega([ellipse, ellipse]) == pytest.approx(affine_surface.omega(ellipse), rel=1e-9)


def test_mixed_identity(lr3, ellipse):
    assert affine_surface.mixed_identity([lr3, ellipse], 0.5).consistent


def test_mixed_omega_limit(ellipse, lr3):
    # on an ellipse the p-limit is already exact at p = 1
    assert affine_surface.mixed_omega_limit_diagnostic([ellipse, ellipse], [1.0]) == pytest.approx([0.0], abs=1e-8)
    residuals = affine_surface.mixed_omega_limit_diagnostic([lr3, lr3], [1.0, 4.0, 16.0, 64.0])
    assert all(b < a for a, b in zip(residuals, residuals[1:]))
    with pytest.raises(InvalidArgument):
        affine_surface.mixed_omega_limit_diagnostic([lr3, lr3], [0.0])


def test_mixed_as_p_needs_n_bodies(ellipse):
    with pytest.raises(InvalidArgument):
        affine_surface.mixed_as_p([ellipse], 1.0)


# =============================================================================
# OMEGA AND A_K
# =============================================================================


def test_omega_and_a_k_of_ellipses(disk, ellipse):
    assert affine_surface.omega(disk) == pytest.approx(1.0)
    assert affine_surface.a_k(disk) == pytest.approx(1.0)
    # |K| / |K°| = 4 for diag(2, 1)
    assert affine_surface.omega(ellipse) == pytest.approx(16.0)
    assert affine_surface.a_k(ellipse) == pytest.approx(0.25)


def test_omega_needs_a_smooth_body(square):
    with pytest.raises(UnsupportedSmoothness):
        affine_surface.omega(square)


def test_omega_is_the_polar_a_k(lr3):
    assert affine_surface.omega_polar_residual(lr3).consistent


def test_omega_limit_residuals_decrease(lr3):
    residuals = affine_surface.omega_limit_diagnostic(lr3, [1.0, 4.0, 16.0, 64.0])
    assert all(b < a for a, b in zip(residuals, residuals[1:]))


def test_a_k_limit_residuals_decrease(lr3):
    residuals = affine_surface.a_k_limit_diagnostic(lr3, [1.0, 0.25, 0.0625])
    assert all(b < a for a, b in zip(residuals, residuals[1:]))


# =============================================================================
# CONVEXITY
# =============================================================================


def test_convexity_inequality(ellipse, lr3):
    same = affine_surface.convexity_inequality_check(ellipse, ellipse, 1.0, 0.3)
    assert same.holds
    assert same.margin == pytest.approx(0.0, abs=1e-9)
    for p in (0.0, 1.0, np.inf):
        assert affine_surface.convexity_inequality_check(ellipse, lr3, p, 0.5).holds


def test_convexity_inequality_arguments(ellipse):
    with pytest.raises(InvalidArgument):
        affine_surface.convexity_inequality_check(ellipse, ellipse, 1.0, 1.5)
    with pytest.raises(InvalidArgument):
        affine_surface.convexity_inequality_check(ellipse, ellipse, -1.0, 0.5)
    with pytest.raises(InvalidArgument):
        affine_surface.convexity_inequality_check(ellipse, bodies.ball(1.0, 3), 1.0, 0.5)
