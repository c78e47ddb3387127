import numpy as np
import pytest

from renyi_convex import bodies, constants, divergence, oracles
from renyi_convex.divergence import ExtendedValue, Order, identity_check
from renyi_convex.errors import InvalidArgument, UnsupportedSmoothness

# =============================================================================
# TYPES
# =============================================================================


@pytest.mark.parametrize(
    "raw, tag",
    [("kl", "kl"), (1.0, "kl"), ("inf", "plus_inf"), (-np.inf, "minus_inf"), (0.5, "finite"), ("2", "finite")],
)
def test_order_parsing(raw, tag):
    assert Order.of(raw).tag == tag


def test_bad_orders():
    with pytest.raises(InvalidArgument):
        Order.of("half")
    with pytest.raises(InvalidArgument):
        Order.of(float("nan"))
    with pytest.raises(InvalidArgument):
        Order("finite", 1.0)


def test_infinite_values_need_a_reason():
    with pytest.raises(InvalidArgument):
        ExtendedValue(np.inf)
    assert ExtendedValue(-np.inf, "polytope_rule").classification == "minus_infinity"


def test_identity_check_on_extended_reals():
    assert identity_check(np.inf, np.inf, 1e-9).consistent
    assert not identity_check(np.inf, -np.inf, 1e-9).consistent
    assert not identity_check(np.inf, 3.0, 1e-9).consistent
    assert identity_check(1.0, 1.0 + 1e-12, 1e-10, relative=True).consistent


def test_unknown_direction(ellipse):
    with pytest.raises(InvalidArgument):
        divergence.renyi(ellipse, 0.5, "PP")


# =============================================================================
# AFFINE IMAGES OF BALLS
# =============================================================================


@pytest.mark.parametrize("alpha", [-1.0, 0.0, 0.5, 1.0, 3.0, np.inf, -np.inf])
@pytest.mark.parametrize("direction", ["PQ", "QP"])
def test_ellipses_have_zero_divergence(disk, ellipse, alpha, direction):
    for K in (disk, ellipse):
        assert abs(divergence.renyi(K, alpha, direction).value) < 1e-10


def test_hellinger_and_bhattacharyya_of_an_ellipse(ellipse):
    assert divergence.hellinger(ellipse, 0.3).value == pytest.approx(1.0, abs=1e-12)
    assert divergence.bhattacharyya(ellipse) == pytest.approx(1.0, abs=1e-12)


# =============================================================================
# l_3 BALL
# =============================================================================


@pytest.mark.parametrize(
    "alpha, direction", [(-0.5, "PQ"), (0.5, "PQ"), (2.0, "PQ"), (0.25, "QP"), (1.5, "QP"), (-0.5, "QP")]
)
def test_lr_ball_against_the_closed_form(lr3, alpha, direction):
    expected = oracles.lr_renyi_closed_form(2, 3.0, alpha, direction).value
    got = divergence.renyi(lr3, alpha, direction).value
    assert got == pytest.approx(expected, rel=1e-6)


def test_lr_ball_divergent_regimes(lr3):
    assert divergence.renyi(lr3, 3.0, "QP").value == np.inf
    assert divergence.renyi(lr3, -2.0, "PQ").value == -np.inf


def test_node_sup_over_more_rule_levels(trefoil, monkeypatch):
    # p / q peaks where h = 1.1 and f = 0.2 (theta = 0, a node of every level)
    expected = np.log(bodies.volume(trefoil) / bodies.polar_volume(trefoil) / (1.1**3 * 0.2))
    coarse = divergence.renyi(trefoil, np.inf, "PQ")
    monkeypatch.setattr(constants, "SUP_DOUBLINGS", 3)
    fine = divergence.renyi(trefoil, np.inf, "PQ")
    assert coarse.reason == fine.reason == "node_sup"
    assert coarse.value == pytest.approx(expected, rel=1e-9)
    assert fine.value >= coarse.value


def test_sphere_and_boundary_routes_agree(lr3, trefoil):
    for K in (lr3, trefoil):
        for alpha in (0.5, 1.0):
            sphere = divergence.renyi(K, alpha, "PQ", route="sphere").value
            boundary = divergence.renyi(K, alpha, "PQ", route="boundary").value
            assert boundary == pytest.approx(sphere, rel=1e-7)


def test_kl_is_nonnegative(lr3, trefoil):
    for K in (lr3, trefoil):
        assert divergence.renyi(K, "kl", "PQ").value > 0.0
        assert divergence.renyi(K, "kl", "QP").value > 0.0


@pytest.mark.parametrize("alpha", [-1.0, 0.25, 0.6, 2.0])
def test_skew_identity(lr3, alpha):
    assert divergence.skew_residual(lr3, alpha).consistent


def test_polar_skew_identity(lr3):
    check = divergence.polar_skew_residual(lr3, 0.3)
    assert check.consistent


# =============================================================================
# POLYTOPES
# =============================================================================


@pytest.mark.parametrize(
    "alpha, direction, expected",
    [
        (0.5, "PQ", np.inf),
        (0.0, "PQ", 0.0),
        (1.0, "PQ", 0.0),
        (2.0, "PQ", -np.inf),
        (-1.0, "PQ", -np.inf),
        (np.inf, "PQ", -np.inf),
        (0.5, "QP", np.inf),
        (1.0, "QP", np.inf),
    ],
)
def test_polytope_rules(square, alpha, direction, expected):
    value = divergence.renyi(square, alpha, direction)
    assert value.value == expected
    assert value.reason == "polytope_rule"


# =============================================================================
# MIXED
# =============================================================================


def test_mixed_divergence_of_identical_bodies(ellipse, lr3):
    assert abs(divergence.mixed_renyi([ellipse, ellipse], 0.5).value) < 1e-10
    check = divergence.product_factorization_residual([lr3, lr3], 0.5)
    assert check.consistent


def test_mixed_divergence_needs_n_smooth_bodies(ellipse, square):
    with pytest.raises(InvalidArgument):
        divergence.mixed_renyi([ellipse], 0.5)
    with pytest.raises(UnsupportedSmoothness):
        divergence.mixed_renyi([ellipse, square], 0.5)
