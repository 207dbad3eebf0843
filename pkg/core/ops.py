"""Quaternion kernels behind SU2Element.

Arrays of shape (..., 4) hold SU(2) elements as coefficients in the basis
{1, iσx, iσy, iσz}; arrays of shape (..., 3) hold su(2) vectors in the
basis {iσx, iσy, iσz}. Every kernel broadcasts over leading axes.
"""

import numpy as np

NORM_TOL = 1e-12


def split(q):
    return q[..., 0], q[..., 1:]


def join(c0, vec):
    c0 = np.asarray(c0, dtype=float)
    vec = np.asarray(vec, dtype=float)
    c0, _ = np.broadcast_arrays(c0, vec[..., 0])
    return np.concatenate([c0[..., None], vec], axis=-1)


def normalize_(q):
    norm = np.linalg.norm(q, axis=-1, keepdims=True)
    return q / norm


def mul_(g, h):
    # (g0, g) (h0, h) = (g0 h0 - g.h, g0 h + h0 g - g x h) for e_k = iσ_k
    g0, gv = split(g)
    h0, hv = split(h)
    c0 = g0 * h0 - np.sum(gv * hv, axis=-1)
    vec = g0[..., None] * hv + h0[..., None] * gv - np.cross(gv, hv)
    return normalize_(join(c0, vec))


def inv_(g):
    g0, gv = split(g)
    return join(g0, -gv)


def neg_(g):
    return -np.asarray(g, dtype=float)


def exp_(axis, angle):
    axis = np.asarray(axis, dtype=float)
    angle = np.asarray(angle, dtype=float)
    return join(np.cos(angle), np.sin(angle)[..., None] * axis)


def log_(g):
    """Return (axis, angle) with angle in [0, pi]; the axis is x when the
    vector part vanishes."""
    g0, gv = split(g)
    angle = np.arccos(np.clip(g0, -1.0, 1.0))
    norm = np.linalg.norm(gv, axis=-1)
    safe = np.where(norm > NORM_TOL, norm, 1.0)
    axis = gv / safe[..., None]
    fallback = np.zeros_like(gv)
    fallback[..., 0] = 1.0
    axis = np.where((norm > NORM_TOL)[..., None], axis, fallback)
    return axis, angle


def commutator_(g, h):
    return mul_(mul_(g, h), mul_(inv_(g), inv_(h)))


def conjugate_(g, x):
    return mul_(mul_(g, x), inv_(g))


def adjoint_(g, v):
    # Ad_g v = (g0^2 - |g|^2) v + 2 (g.v) g - 2 g0 (g x v)
    g0, gv = split(g)
    v = np.asarray(v, dtype=float)
    gg = np.sum(gv * gv, axis=-1)
    gdotv = np.sum(gv * v, axis=-1)
    return ((g0 ** 2 - gg)[..., None] * v + 2.0 * gdotv[..., None] * gv -
            2.0 * g0[..., None] * np.cross(gv, v))


def adjoint_matrix_(g):
    g0, gv = split(np.asarray(g, dtype=float))
    gg = np.sum(gv * gv, axis=-1)
    eye = np.eye(3) * (g0 ** 2 - gg)[..., None, None]
    outer = 2.0 * gv[..., :, None] * gv[..., None, :]
    return eye + outer - 2.0 * g0[..., None, None] * skew_(gv)


def skew_(v):
    """Matrix of v x (.)."""
    v = np.asarray(v, dtype=float)
    zero = np.zeros_like(v[..., 0])
    rows = [np.stack([zero, -v[..., 2], v[..., 1]], axis=-1),
            np.stack([v[..., 2], zero, -v[..., 0]], axis=-1),
            np.stack([-v[..., 1], v[..., 0], zero], axis=-1)]
    return np.stack(rows, axis=-2)


def bracket_(u, v):
    # [e_x, e_y] = -2 e_z
    return -2.0 * np.cross(u, v)


def trace_(g):
    return 2.0 * np.asarray(g)[..., 0]


def trace_pair_(g, i):
    return 2.0 * np.asarray(g)[..., 1 + i]


def to_matrix_(g):
    c0, cx, cy, cz = np.moveaxis(np.asarray(g, dtype=float), -1, 0)
    top = np.stack([c0 + 1j * cz, cy + 1j * cx], axis=-1)
    bottom = np.stack([-cy + 1j * cx, c0 - 1j * cz], axis=-1)
    return np.stack([top, bottom], axis=-2)


def from_matrix_(m):
    m = np.asarray(m)
    return np.stack([m[..., 0, 0].real, m[..., 0, 1].imag,
                     m[..., 0, 1].real, m[..., 0, 0].imag], axis=-1)


def rotation_to_(n, target, fallback=None):
    """An element g with Ad_g n = target for unit vectors n, target.

    Ad of exp(u, t) is the right-handed rotation by -2t about u. When n and
    target are antipodal the half turn is taken about `fallback`, which
    must be orthogonal to n.
    """
    n = np.asarray(n, dtype=float)
    target = np.asarray(target, dtype=float)
    cross = np.cross(n, target)
    sin = np.linalg.norm(cross)
    cos = float(np.dot(n, target))
    if sin < NORM_TOL:
        if cos > 0.0:
            return np.array([1.0, 0.0, 0.0, 0.0])
        if fallback is None:
            fallback = orthogonal_(n)
        return exp_(fallback, -np.pi / 2.0)
    angle = np.arctan2(sin, cos)
    return exp_(cross / sin, -angle / 2.0)


def orthogonal_(n):
    n = np.asarray(n, dtype=float)
    ref = np.array([1.0, 0.0, 0.0])
    if abs(n[0]) > 0.9:
        ref = np.array([0.0, 1.0, 0.0])
    v = np.cross(n, ref)
    return v / np.linalg.norm(v)
