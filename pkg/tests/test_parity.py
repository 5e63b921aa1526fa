import math

import numpy as np
import pytest

from lgbound import GaussianState, parity_kernel, parity_lg2, parity_min


def test_boundary_values():
    assert parity_lg2(0.0, 1.0) == 0.0
    assert abs(parity_lg2(10.0, 1.0)) < 1e-6
    assert abs(parity_kernel(50.0)) < 1e-12


def test_scale_invariance():
    rng = np.random.default_rng(2)
    for _ in range(20):
        q = rng.uniform(0.0, 4.0)
        sigma = rng.uniform(0.1, 5.0)
        assert parity_lg2(q, sigma) == pytest.approx(
            parity_kernel(q / sigma), abs=1e-12)


def test_minimum_location_and_value():
    argmin, value = parity_min()
    assert argmin == pytest.approx(math.sqrt(2.0 / math.pi), abs=1e-6)
    assert value == pytest.approx(-0.3024, abs=1e-3)


def test_minimum_is_stationary():
    argmin, _ = parity_min()
    h = 1e-4
    derivative = (parity_kernel(argmin + h) - parity_kernel(argmin - h)) / (2 * h)
    assert abs(derivative) < 1e-5


def test_minimum_vs_dense_grid():
    xs = np.linspace(0.0, 5.0, 100001)
    vals = parity_kernel(xs)
    argmin, value = parity_min()
    assert value == pytest.approx(vals.min(), abs=1e-5)
    assert argmin == pytest.approx(xs[vals.argmin()], abs=1e-4)


def test_gaussian_state_validation():
    GaussianState(0.5, 1.0)
    with pytest.raises(ValueError):
        GaussianState(0.5, 0.0)
    with pytest.raises(ValueError):
        parity_lg2(1.0, -2.0)
