import numpy as np
import pytest

from renyi_convex import oracles
from renyi_convex.errors import InvalidArgument, UnsupportedSmoothness


@pytest.mark.parametrize("alpha", [-3.0, 0.25, 0.5, 2.0, 7.0])
@pytest.mark.parametrize("direction", ["PQ", "QP"])
def test_euclidean_ball_has_zero_divergence(alpha, direction):
    result = oracles.lr_renyi_closed_form(3, 2.0, alpha, direction)
    assert result.regime == "finite"
    assert result.value == pytest.approx(0.0, abs=1e-12)


def test_thresholds():
    above = oracles.lr_thresholds(3.0)
    assert above["QP_plus_inf"] == pytest.approx(2.0)
    assert above["PQ_minus_inf"] == pytest.approx(-1.0)
    assert np.isnan(above["PQ_plus_inf"])
    below = oracles.lr_thresholds(1.5)
    assert below["PQ_plus_inf"] == pytest.approx(2.0)
    assert below["QP_minus_inf"] == pytest.approx(-1.0)


def test_divergent_regimes():
    assert oracles.lr_renyi_closed_form(2, 3.0, 2.0, "QP").value == np.inf
    assert oracles.lr_renyi_closed_form(2, 3.0, -1.5, "PQ").value == -np.inf
    assert oracles.lr_renyi_closed_form(2, 1.5, 3.0, "PQ").regime == "plus_inf"


def test_divergence_grows_towards_the_threshold():
    values = [oracles.lr_renyi_closed_form(2, 3.0, a, "QP").value for a in (1.9, 1.99, 1.999)]
    assert values[0] < values[1] < values[2]


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.7])
def test_closed_form_skew_symmetry(alpha):
    qp = oracles.lr_renyi_closed_form(4, 3.0, alpha, "QP").value
    pq = oracles.lr_renyi_closed_form(4, 3.0, 1.0 - alpha, "PQ").value
    assert qp == pytest.approx(alpha / (1.0 - alpha) * pq, rel=1e-12)


def test_high_dimensions_stay_finite():
    assert np.isfinite(oracles.lr_renyi_closed_form(50, 4.0, 0.5, "PQ").value)


def test_oracle_arguments():
    with pytest.raises(InvalidArgument) as excinfo:
        oracles.lr_renyi_closed_form(2, 3.0, 1.0)
    assert not isinstance(excinfo.value, UnsupportedSmoothness)
    assert excinfo.value.exit_code == 2
    with pytest.raises(InvalidArgument):
        oracles.lr_renyi_closed_form(2, 1.0, 0.5)
    with pytest.raises(InvalidArgument):
        oracles.lr_renyi_closed_form(2, 3.0, 0.5, "PP")


def test_lr_volume():
    assert oracles.lr_volume(2, 2.0) == pytest.approx(np.pi)
    assert oracles.lr_volume(3, 2.0) == pytest.approx(4.0 * np.pi / 3.0)


def test_monte_carlo_volume_is_within_its_standard_error():
    est, stderr = oracles.mc_lr_volume(2, 3.0, samples=200_000, seed=5)
    assert stderr > 0.0
    assert abs(est - oracles.lr_volume(2, 3.0)) < 5.0 * stderr


def test_disk_laws():
    law = oracles.disk_surface_body_law(1.0, 0.2)
    assert law["radius"] == pytest.approx(np.cos(0.1))
    assert law["area_deficit"] == pytest.approx(np.pi * np.sin(0.1) ** 2)
    light = oracles.disk_illumination_body_law(2.0, 0.2)
    assert light["radius"] == pytest.approx(2.0 / np.cos(0.05))
    assert light["area_excess"] == pytest.approx(4.0 * np.pi * np.tan(0.05) ** 2)
    with pytest.raises(InvalidArgument):
        oracles.disk_surface_body_law(1.0, 4.0)
