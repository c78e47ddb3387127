import numpy as np
import pytest

from renyi_convex.extrapolation import power_law_limit, richardson_extrapolate


def test_richardson_removes_even_error_terms():
    h = np.array([1.0, 0.5, 0.25, 0.125])
    values = 3.0 + 0.7 * h**2 - 0.2 * h**4 + 0.05 * h**6
    assert richardson_extrapolate(list(values), p=2) == pytest.approx(3.0, abs=1e-12)


def test_richardson_on_arrays():
    h = np.array([0.2, 0.1, 0.05])
    base = [np.array([1.0, 2.0]) + hk**2 for hk in h]
    assert richardson_extrapolate(base, p=2) == pytest.approx([1.0, 2.0])


def test_richardson_needs_two_values():
    with pytest.raises(ValueError):
        richardson_extrapolate([1.0], p=2)


def test_power_law_limit_recovers_the_exponent():
    s = 0.1 * 0.5 ** np.arange(7)
    q = 1.0 + 2.0 * s**1.5
    fit = power_law_limit(s, q)
    assert fit.limit == pytest.approx(1.0, abs=1e-6)
    assert fit.exponent == pytest.approx(1.5, abs=1e-3)
    assert fit.monotone


def test_power_law_limit_flags_non_monotone_data():
    s = 0.1 * 0.5 ** np.arange(5)
    q = np.array([1.0, 1.2, 0.9, 1.1, 1.0])
    assert not power_law_limit(s, q).monotone
