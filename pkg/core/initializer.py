"""Random samplers for group elements and representation tuples."""

import numpy as np
import scipy.stats as stats

from core.char_variety import RepTuple
from core.su2 import SU2Element
from core.su2 import commutator
from core.su2 import pure


def _directions(dist, dim, shape):
    shape = tuple(shape)
    draws = dist.rvs(size=int(np.prod(shape, dtype=int)))
    return np.reshape(draws, shape + (dim,))


class Initializer(object):

    def __call__(self, shape):
        return SU2Element(self.init(shape))

    def init(self, shape):
        raise NotImplementedError


class HaarInit(Initializer):
    """Haar measure on SU(2), i.e. the uniform measure on S^3."""

    def __init__(self):
        self._dist = stats.uniform_direction(4)
        self._dim = 4

    def init(self, shape):
        return _directions(self._dist, self._dim, shape)


class TracelessInit(Initializer):
    """Uniform traceless elements, i.e. uniform unit vectors in su(2)."""

    def __init__(self):
        self._dist = stats.uniform_direction(3)
        self._dim = 3

    def __call__(self, shape):
        return pure(self.init(shape))

    def init(self, shape):
        return _directions(self._dist, self._dim, shape)


class RepTupleInit(object):
    """Random points of R(T^2, 2).

    A and B are Haar distributed; the axis of a is drawn in the plane
    orthogonal to the vector part of [A, B], which is exactly the
    condition for b = ([A, B] a)^-1 to be traceless.
    """

    def __init__(self):
        self._haar = HaarInit()
        self._normal = stats.norm()

    def __call__(self, shape):
        shape = tuple(shape)
        A = self._haar(shape)
        B = self._haar(shape)
        c = commutator(A, B)
        u = c.vec
        norm = np.linalg.norm(u, axis=-1, keepdims=True)
        u_hat = u / np.where(norm > 0.0, norm, 1.0)
        v = self._normal.rvs(size=shape + (3,))
        v = v - np.sum(v * u_hat, axis=-1, keepdims=True) * u_hat
        a = pure(v / np.linalg.norm(v, axis=-1, keepdims=True))
        b = (c * a).inv
        return RepTuple(A, B, a, b)


class AbelianTupleInit(object):
    """Tuples with a = b = 1 and A, B on a common random axis; these are
    representations of the unpunctured torus."""

    def __init__(self):
        self._axis = stats.uniform_direction(3)
        self._angle = stats.uniform(loc=0.0, scale=2.0 * np.pi)

    def __call__(self, shape):
        shape = tuple(shape)
        axis = _directions(self._axis, 3, shape)
        alpha = np.asarray(self._angle.rvs(size=shape))
        beta = np.asarray(self._angle.rvs(size=shape))
        A = SU2Element(np.concatenate(
            [np.cos(alpha)[..., None], np.sin(alpha)[..., None] * axis], -1))
        B = SU2Element(np.concatenate(
            [np.cos(beta)[..., None], np.sin(beta)[..., None] * axis], -1))
        one = SU2Element(np.broadcast_to([1.0, 0.0, 0.0, 0.0],
                                         shape + (4,)).copy())
        return RepTuple(A, B, one, one)


class DiskCoordInit(object):
    """Nonabelian disk points: chi away from {0, pi}, psi away from
    +-pi/2."""

    def __init__(self, margin=0.1):
        self._chi = stats.uniform(loc=margin, scale=np.pi - 2.0 * margin)
        self._psi = stats.uniform(loc=-np.pi / 2.0 + margin,
                                  scale=np.pi - 2.0 * margin)

    def __call__(self, shape):
        shape = tuple(shape)
        return (np.asarray(self._chi.rvs(size=shape)),
                np.asarray(self._psi.rvs(size=shape)))


class SphereCoordInit(object):
    """Sphere points kept `margin` away from the poles, the equator and
    the meridians theta = 0, pi.

    With seams=True only the poles are avoided: phi and theta are drawn
    over their whole ranges, and a quarter of the draws each are put on
    the equator and on the meridians.
    """

    def __init__(self, margin=0.2, seams=False):
        quarter = np.pi / 2.0
        self._seams = seams
        if seams:
            self._phi = stats.uniform(loc=margin, scale=np.pi - 2.0 * margin)
            self._theta = stats.uniform(loc=0.0, scale=2.0 * np.pi)
            self._snap = stats.randint(0, 4)
        else:
            self._phi = stats.uniform(loc=margin,
                                      scale=quarter - 2.0 * margin)
            self._theta = stats.uniform(loc=margin,
                                        scale=np.pi - 2.0 * margin)
        self._coin = stats.bernoulli(0.5)

    def __call__(self, shape):
        shape = tuple(shape)
        phi = np.asarray(self._phi.rvs(size=shape))
        theta = np.asarray(self._theta.rvs(size=shape))
        if self._seams:
            snap = np.asarray(self._snap.rvs(size=shape))
            meridian = np.pi * self._coin.rvs(size=shape)
            phi = np.where(snap == 2, np.pi / 2.0, phi)
            theta = np.where(snap == 3, meridian, theta)
            return phi, theta
        phi = np.where(self._coin.rvs(size=shape) == 1, np.pi - phi, phi)
        theta = theta + np.pi * self._coin.rvs(size=shape)
        return phi, theta
