import numpy as np
import pytest

from renyi_convex import cone_measures
from renyi_convex.errors import InvalidArgument, UnsupportedSmoothness
from renyi_convex.quadrature import integrate


def _masses(route):
    def p_mass(x):
        p, _, jac = route.evaluate(x)
        return p * jac

    def q_mass(x):
        _, q, jac = route.evaluate(x)
        return q * jac

    return integrate(p_mass, route.family).value, integrate(q_mass, route.family).value


@pytest.mark.parametrize("route", ["sphere", "boundary"])
def test_densities_are_probability_densities(ellipse, lr3, route):
    for K in (ellipse, lr3):
        p_total, q_total = _masses(cone_measures.route_for(K, route))
        assert p_total == pytest.approx(1.0, rel=1e-8)
        assert q_total == pytest.approx(1.0, rel=1e-8)


def test_densities_of_the_disk_are_uniform(disk):
    pair = cone_measures.density_pair(disk)
    u = np.array([[1.0, 0.0], [0.6, 0.8]])
    assert pair.p_sphere(u) == pytest.approx(np.full(2, 1.0 / (2.0 * np.pi)))
    assert pair.q_sphere(u) == pytest.approx(np.full(2, 1.0 / (2.0 * np.pi)))


def test_polytope_has_no_density_pair(square):
    with pytest.raises(UnsupportedSmoothness):
        cone_measures.density_pair(square)


def test_unknown_route(ellipse):
    with pytest.raises(InvalidArgument):
        cone_measures.route_for(ellipse, "radial")


def test_cone_measure_arcs(disk, square):
    assert cone_measures.cone_measure_arc(disk, 0.0, np.pi / 2.0) == pytest.approx(0.25, rel=1e-9)
    assert cone_measures.cone_measure_arc(disk, 0.0, 2.0 * np.pi) == 1.0
    assert cone_measures.cone_measure_arc(square, -0.1, 0.1) == pytest.approx(0.25)
    with pytest.raises(InvalidArgument):
        cone_measures.cone_measure_arc(disk, 1.0, 0.5)


def test_q_is_the_cone_measure(ellipse, square):
    assert cone_measures.check_Q_is_cone_measure(ellipse, 16) < 1e-6
    assert cone_measures.check_Q_is_cone_measure(square) < 1e-12


def test_p_is_the_pushforward_of_the_polar_cone_measure(ellipse):
    assert cone_measures.check_P_pushforward(ellipse, 16) < 1e-5
