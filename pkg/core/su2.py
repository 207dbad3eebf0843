"""SU2Element wraps a numpy ndarray of unit quaternions.

An element with coefficients (c0, cx, cy, cz) stands for the matrix
c0 + cx iσx + cy iσy + cz iσz. The leading axes of the array are batch
axes, so a whole grid of representations can be pushed through a word in
one pass.
"""

import numpy as np

import core.ops as ops

TRACELESS_TOL = 1e-10


def as_element(obj):
    if not isinstance(obj, SU2Element):
        obj = SU2Element(obj)
    return obj


class SU2Element(object):

    def __init__(self, values, normalize=False):
        values = np.asarray(values, dtype=float)
        if values.shape[-1:] != (4,):
            raise ValueError("SU2Element needs a trailing axis of size 4, "
                             "got shape %s" % (values.shape,))
        if normalize:
            values = ops.normalize_(values)
        self._values = values

    @property
    def values(self):
        return self._values

    @property
    def shape(self):
        return self._values.shape[:-1]

    @property
    def c0(self):
        return self._values[..., 0]

    @property
    def vec(self):
        return self._values[..., 1:]

    @property
    def inv(self):
        return SU2Element(ops.inv_(self._values))

    @property
    def trace(self):
        return ops.trace_(self._values)

    def __repr__(self):
        if self._values.ndim == 1:
            return "SU2Element(%s)" % np.array2string(
                self._values, precision=6)
        return "SU2Element(shape=%s)" % (self.shape,)

    def __mul__(self, other):
        return SU2Element(ops.mul_(self._values, as_element(other).values))

    def __rmul__(self, other):
        return SU2Element(ops.mul_(as_element(other).values, self._values))

    def __neg__(self):
        return SU2Element(ops.neg_(self._values))

    def __pow__(self, n):
        n = int(n)
        base = self if n >= 0 else self.inv
        out = SU2Element(np.broadcast_to(ops.join(1.0, np.zeros(3)),
                                         self._values.shape).copy())
        for _ in range(abs(n)):
            out = out * base
        return out

    def __getitem__(self, key):
        if not isinstance(key, tuple):
            key = (key,)
        return SU2Element(self._values[key + (Ellipsis, slice(None))])

    def __len__(self):
        if not self.shape:
            raise TypeError("len() of unbatched SU2Element")
        return self.shape[0]

    def distance(self, other):
        """Max-abs coefficient distance, batched."""
        diff = self._values - as_element(other).values
        return np.max(np.abs(diff), axis=-1)

    def is_traceless(self, tol=TRACELESS_TOL):
        return np.abs(self.c0) <= tol


ONE = SU2Element([1.0, 0.0, 0.0, 0.0])
I_X = SU2Element([0.0, 1.0, 0.0, 0.0])
I_Y = SU2Element([0.0, 0.0, 1.0, 0.0])
I_Z = SU2Element([0.0, 0.0, 0.0, 1.0])
AXES = {"x": 0, "y": 1, "z": 2}


def unit(v):
    """Normalize a (..., 3) array into unit vectors."""
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def pure(v):
    """The traceless element i v.σ for a unit vector v."""
    return SU2Element(ops.join(0.0, v))


def mul(g, h):
    return as_element(g) * as_element(h)


def inverse(g):
    return as_element(g).inv


def exp(v, angle):
    return SU2Element(ops.exp_(v, angle))


def log(g):
    return ops.log_(as_element(g).values)


def commutator(g, h):
    return SU2Element(ops.commutator_(as_element(g).values,
                                      as_element(h).values))


def conjugate(g, x):
    return SU2Element(ops.conjugate_(as_element(g).values,
                                     as_element(x).values))


def adjoint(g, v):
    return ops.adjoint_(as_element(g).values, v)


def adjoint_matrix(g):
    return ops.adjoint_matrix_(as_element(g).values)


def bracket(u, v):
    return ops.bracket_(u, v)


def trace(g):
    return as_element(g).trace


def trace_pair(g, axis):
    """Real part of -i tr(g σ_axis), i.e. 2 c_axis.

    tr((c0 + i c.σ) σ_k) = 2 i c_k; the factor i is dropped so that the
    perturbation constraints become real equations.
    """
    if isinstance(axis, str):
        axis = AXES[axis]
    return ops.trace_pair_(as_element(g).values, axis)


def to_matrix(g):
    return ops.to_matrix_(as_element(g).values)


def from_matrix(m):
    return SU2Element(ops.from_matrix_(m))


def rotation_to(n, target, fallback=None):
    return SU2Element(ops.rotation_to_(n, target, fallback))


def stack(elements):
    return SU2Element(np.stack([as_element(e).values for e in elements]))
