"""test unit for core/optimizer.py"""

import runtime_path  # isort:skip

import numpy as np
import pytest

from core.optimizer import *

TOR = 1e-10


def sqrt_residual(params):
    x, y = params[0]["x"], params[1]["y"]
    return np.array([x * x - 2.0, y - 3.0])


def sqrt_jacobian(params):
    x = params[0]["x"]
    return np.array([[2.0 * x, 0.0], [0.0, 1.0]])


def rosen_residual(params):
    x, y = params[0]["xy"]
    return np.array([10.0 * (y - x * x), 1.0 - x])


def rosen_jacobian(params):
    x, _ = params[0]["xy"]
    return np.array([[-20.0 * x, 10.0], [-1.0, 0.0]])


def test_flatten_and_restore():
    params = [{"a": np.zeros((2, 2))}, {"b": np.ones(3), "c": 0.0}]
    flat = flatten(params)
    assert flat.shape == (8,)
    blocks = restore(np.arange(8.0), params)
    assert blocks[0]["a"].shape == (2, 2)
    assert np.array_equal(blocks[1]["b"], [4.0, 5.0, 6.0])
    assert float(blocks[1]["c"]) == 7.0


def test_gauss_newton():
    sol = GaussNewton(tol=TOR).minimize(
        sqrt_residual, sqrt_jacobian, [{"x": 1.0}, {"y": 0.0}])
    assert sol.converged
    assert abs(float(sol.params[0]["x"]) - np.sqrt(2.0)) < 1e-9
    assert abs(float(sol.params[1]["y"]) - 3.0) < 1e-9
    assert sol.iterations < 10


def test_damped_gauss_newton():
    sol = DampedGaussNewton(tol=TOR, max_iter=200).minimize(
        rosen_residual, rosen_jacobian, [{"xy": np.array([-1.2, 1.0])}])
    assert sol.converged
    assert np.allclose(sol.params[0]["xy"], [1.0, 1.0], atol=1e-9)
    assert np.max(np.abs(sol.residual)) <= TOR


def test_no_root():
    def residual(params):
        return np.array([params[0]["x"] ** 2 + 1.0])

    def jacobian(params):
        return np.array([[2.0 * params[0]["x"]]])

    sol = DampedGaussNewton(max_iter=20).minimize(residual, jacobian,
                                                  [{"x": 1.0}])
    assert not sol.converged


def test_linesearch_parameter():
    with pytest.raises(ValueError):
        DampedGaussNewton(c_1=1.5)
