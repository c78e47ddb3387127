import numpy as np
import pytest
from scipy.special import gamma

from renyi_convex import bodies, quadrature
from renyi_convex.errors import InvalidArgument, NonConvergence

AXES = np.array([[1.0, 0.0], [-1.0, 0.0]])


def test_sphere_area():
    assert quadrature.sphere_area(2) == pytest.approx(2.0 * np.pi)
    assert quadrature.sphere_area(3) == pytest.approx(4.0 * np.pi)


def test_pairwise_sum_pads_odd_levels():
    assert quadrature.pairwise_sum([1.0, 2.0, 3.0]) == 6.0
    assert quadrature.pairwise_sum([]) == 0.0


@pytest.mark.parametrize(
    "rule",
    [
        quadrature.circle_rule(64),
        quadrature.graded_circle_rule(AXES, 3),
        quadrature.graded_arc_rule(0.0, 2.0 * np.pi, 4),
    ],
)
def test_circle_rule_weights_sum_to_the_length(rule):
    assert np.sum(rule.weights) == pytest.approx(2.0 * np.pi)
    assert np.linalg.norm(rule.nodes, axis=1) == pytest.approx(np.ones(rule.size))


def test_s2_rule_weights_and_moments():
    rule = quadrature.s2_rule(8)
    assert np.sum(rule.weights) == pytest.approx(4.0 * np.pi)
    assert np.sum(rule.weights * rule.nodes[:, 2] ** 2) == pytest.approx(4.0 * np.pi / 3.0)


def test_mc_rule_is_seeded():
    a = quadrature.mc_rule(4, 2000, seed=7)
    b = quadrature.mc_rule(4, 2000, seed=7)
    assert np.array_equal(a.nodes, b.nodes)
    assert np.sum(a.weights) == pytest.approx(quadrature.sphere_area(4))


@pytest.mark.parametrize(
    "build",
    [
        lambda: quadrature.circle_rule(7),
        lambda: quadrature.s2_rule(0),
        lambda: quadrature.mc_rule(3, 10, seed=1),
        lambda: quadrature.graded_arc_rule(1.0, 1.0, 3),
    ],
)
def test_bad_rule_parameters(build):
    with pytest.raises(InvalidArgument):
        build()


def test_integrate_a_trigonometric_polynomial():
    result = quadrature.integrate(lambda u: 1.0 + u[:, 0] ** 2, quadrature.circle_family())
    assert result.classification == "finite"
    assert result.value == pytest.approx(3.0 * np.pi)


def test_integrate_an_integrable_endpoint_singularity():
    # int_0^{2 pi} |sin t|^{-1/2} dt = 2 sqrt(pi) Gamma(1/4) / Gamma(3/4)
    expected = 2.0 * np.sqrt(np.pi) * gamma(0.25) / gamma(0.75)
    result = quadrature.integrate(lambda u: np.abs(u[:, 1]) ** -0.5, quadrature.graded_family(AXES))
    assert result.classification == "finite"
    assert result.value == pytest.approx(expected, rel=1e-8)


def test_integrate_detects_a_nonintegrable_endpoint():
    result = quadrature.integrate(lambda u: 1.0 / np.abs(u[:, 1]), quadrature.graded_family(AXES))
    assert result.classification == "plus_infinity"
    assert result.value == np.inf


def test_probe_endpoint_exponents():
    beta = quadrature.probe_endpoint_exponents(lambda u: np.abs(u[:, 1]) ** -0.5, AXES)
    assert beta == pytest.approx(np.full(4, -0.5), abs=1e-6)


def test_nan_integrand_fails():
    result = quadrature.integrate(lambda u: np.full(u.shape[0], np.nan), quadrature.circle_family())
    assert result.classification == "failed"
    with pytest.raises(NonConvergence):
        result.require("nan integrand")


def test_mc_family_reports_a_standard_error():
    result = quadrature.integrate(lambda u: u[:, 0] ** 2, quadrature.mc_family(4, 20_000, seed=3))
    # int x_1^2 over S^3 = |S^3| / 4
    expected = quadrature.sphere_area(4) / 4.0
    assert result.err_estimate > 0.0
    assert abs(result.value - expected) < 5.0 * result.err_estimate


def test_default_family_by_dimension():
    assert quadrature.default_family(2).name == "circle"
    assert quadrature.default_family(2, AXES).name == "graded"
    assert quadrature.default_family(3).name == "s2"
    assert quadrature.default_family(5).name == "monte_carlo"


def test_family_for_bodies_takes_the_run_settings(lr3, ball3):
    graded = quadrature.family_for_bodies([lr3], max_doublings=3)
    assert graded.name == "graded"
    assert graded.max_doublings == 3
    assert quadrature.family_for_bodies([ball3], max_doublings=2).max_doublings == 2
    # the s2 family keeps its own level limit under a larger cap
    capped = quadrature.family_for_bodies([ball3], max_doublings=40)
    assert capped.max_doublings == quadrature.s2_family().max_doublings
    ball4 = bodies.ball(1.0, 4)
    a = quadrature.family_for_bodies([ball4], seed=1, mc_samples=2000).rule(0)
    b = quadrature.family_for_bodies([ball4], seed=2, mc_samples=2000).rule(0)
    assert a.size == 2000
    assert not np.array_equal(a.nodes, b.nodes)
    with pytest.raises(InvalidArgument):
        quadrature.family_for_bodies([lr3], max_doublings=-1)


def test_max_doublings_limits_the_refinement(lr3):
    # one rule cannot show convergence
    family = quadrature.family_for_bodies([lr3], max_doublings=0)
    result = quadrature.integrate(lr3.curvature_fn, family)
    assert result.classification == "failed"
    default = quadrature.family_for_bodies([lr3])
    assert quadrature.integrate(lr3.curvature_fn, default).classification == "finite"


def test_arc_family_integrates_a_quarter_circle():
    family = quadrature.arc_family(0.0, np.pi / 2.0)
    assert quadrature.integrate(lambda u: u[:, 0], family).value == pytest.approx(1.0)
