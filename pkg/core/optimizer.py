"""Gauss-Newton solvers for small nonlinear least-squares systems."""

import logging
from collections import namedtuple

import numpy as np

LOGGER = logging.getLogger(__name__)

Solution = namedtuple("Solution", ["params", "residual", "iterations",
                                   "converged"])


def flatten(params):
    return np.concatenate(
        [np.ravel(v) for block in params for v in block.values()])


def restore(flat, params):
    """Cut a flat vector into blocks shaped like `params`."""
    p = 0  # linear block pointer
    blocks = list()
    for param in params:
        block = dict()
        for k, v in param.items():
            size = int(np.prod(np.shape(v)))
            block[k] = flat[p:p + size].reshape(np.shape(v))
            p += size
        blocks.append(block)
    return blocks


def add(params, steps):
    return [{k: block[k] + step[k] for k in block}
            for block, step in zip(params, steps)]


class BaseOptimizer(object):
    """Drive residual(params) to zero, params being a list of dicts of
    arrays; jacobian(params) has one column per flattened parameter."""

    def __init__(self, tol=1e-10, max_iter=50):
        self.tol = tol
        self.max_iter = max_iter

    def compute_step(self, jac, resid, params):
        flatten_step = self._compute_step(np.asarray(jac), np.asarray(resid))
        return restore(flatten_step, params)

    def _compute_step(self, jac, resid):
        raise NotImplementedError

    def _accept(self, residual_fn, params, steps, resid, jac):
        return add(params, steps)

    def minimize(self, residual_fn, jacobian_fn, params):
        params = [{k: np.asarray(v, dtype=float) for k, v in block.items()}
                  for block in params]
        resid = residual_fn(params)
        for it in range(self.max_iter):
            if np.max(np.abs(resid)) <= self.tol:
                return Solution(params, resid, it, True)
            jac = jacobian_fn(params)
            steps = self.compute_step(jac, resid, params)
            moved = self._accept(residual_fn, params, steps, resid, jac)
            if moved is None:
                LOGGER.debug("line search stalled after %d iterations", it)
                return Solution(params, resid, it, False)
            params = moved
            resid = residual_fn(params)
        converged = bool(np.max(np.abs(resid)) <= self.tol)
        return Solution(params, resid, self.max_iter, converged)


class GaussNewton(BaseOptimizer):

    def _compute_step(self, jac, resid):
        return -np.linalg.lstsq(jac, resid, rcond=None)[0]


class DampedGaussNewton(GaussNewton):
    """Gauss-Newton with a backtracking Armijo line search on
    f = |r|^2."""

    def __init__(self, tol=1e-10, max_iter=50, c_1=1e-4, gamma_dec=0.5,
                 alpha_min=1e-10):
        super().__init__(tol, max_iter)
        if not 0.0 < c_1 < 1.0:
            raise ValueError("unsuitable linesearch parameter c_1")
        self._c_1 = c_1
        self._gamma_dec = gamma_dec
        self._alpha_min = alpha_min

    def _accept(self, residual_fn, params, steps, resid, jac):
        f_k = float(np.sum(resid ** 2))
        direction = flatten(steps)
        slope = float(2.0 * (jac.T @ resid) @ direction)
        alpha = 1.0  # always try the full step first
        while alpha > self._alpha_min:
            trial = add(params, [{k: alpha * v for k, v in s.items()}
                                 for s in steps])
            f_trial = float(np.sum(residual_fn(trial) ** 2))
            if f_trial <= f_k + self._c_1 * alpha * slope:
                return trial
            alpha *= self._gamma_dec
        return None
