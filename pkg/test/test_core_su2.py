"""test unit for core/su2.py"""

import runtime_path  # isort:skip

import numpy as np
import pytest
from scipy.linalg import expm

from core.initializer import HaarInit
from core.initializer import TracelessInit
from core.su2 import *

TOR = 1e-10
N_SAMPLES = 50

SIGMA = [np.array([[0, 1], [1, 0]], dtype=complex),
         np.array([[0, -1j], [1j, 0]], dtype=complex),
         np.array([[1, 0], [0, -1]], dtype=complex)]


def lie_matrix(v):
    """i v.sigma as a 2x2 complex matrix."""
    return sum(1j * v[k] * SIGMA[k] for k in range(3))


@pytest.fixture
def elements():
    np.random.seed(0)
    return HaarInit()((N_SAMPLES,)), HaarInit()((N_SAMPLES,))


def test_product_matches_matrices(elements):
    g, h = elements
    lhs = to_matrix(g * h)
    rhs = to_matrix(g) @ to_matrix(h)
    assert np.allclose(lhs, rhs, atol=TOR)


def test_basis_products():
    # i sigma_x i sigma_y = -i sigma_z
    assert (I_X * I_Y).distance(-I_Z) < TOR
    assert (I_X * I_X).distance(-ONE) < TOR
    assert (I_Z * I_X).distance(-I_Y) < TOR


def test_inverse_and_power(elements):
    g, _ = elements
    assert np.all((g * inverse(g)).distance(ONE) < TOR)
    assert np.all((g ** 3).distance(g * g * g) < TOR)
    assert np.all((g ** -1).distance(g.inv) < TOR)


def test_trace_matches_matrix(elements):
    g, _ = elements
    tr = np.trace(to_matrix(g), axis1=-2, axis2=-1)
    assert np.allclose(trace(g), tr.real, atol=TOR)
    assert np.allclose(tr.imag, 0.0, atol=TOR)


def test_trace_pair_matches_matrix(elements):
    g, _ = elements
    for name, k in AXES.items():
        tr = np.trace(to_matrix(g) @ SIGMA[k], axis1=-2, axis2=-1)
        assert np.allclose(trace_pair(g, name), (-1j * tr).real, atol=TOR)
        assert np.allclose(trace_pair(g, k), trace_pair(g, name))


def test_matrix_round_trip(elements):
    g, _ = elements
    assert np.all(from_matrix(to_matrix(g)).distance(g) < TOR)
    m = to_matrix(g)
    eye = m @ np.conj(np.swapaxes(m, -1, -2))
    assert np.allclose(eye, np.eye(2), atol=TOR)


def test_exp_matches_expm():
    v = unit([1.0, -2.0, 0.5])
    for t in (0.0, 0.3, 1.7, np.pi):
        assert np.allclose(to_matrix(exp(v, t)), expm(t * lie_matrix(v)),
                           atol=TOR)
    assert exp(v, 0.0).distance(ONE) < TOR


def test_log_inverts_exp():
    v = unit([0.2, 0.4, -1.0])
    for t in (0.1, 1.0, 3.0):
        axis, angle = log(exp(v, t))
        assert np.allclose(axis, v, atol=1e-8)
        assert abs(angle - t) < 1e-8
    axis, angle = log(ONE)
    assert angle == 0.0
    assert np.allclose(axis, [1.0, 0.0, 0.0])


def test_adjoint_matches_conjugation(elements):
    g, _ = elements
    v = np.random.normal(size=(N_SAMPLES, 3))
    w = adjoint(g, v)
    m = to_matrix(g)
    for k in range(N_SAMPLES):
        lhs = m[k] @ lie_matrix(v[k]) @ np.conj(m[k].T)
        assert np.allclose(lhs, lie_matrix(w[k]), atol=TOR)
    mats = adjoint_matrix(g)
    assert np.allclose(np.einsum("nij,nj->ni", mats, v), w, atol=TOR)


def test_adjoint_of_exp_is_rotation():
    t = 0.4
    w = adjoint(exp([0.0, 0.0, 1.0], t), [1.0, 0.0, 0.0])
    assert np.allclose(w, [np.cos(2 * t), -np.sin(2 * t), 0.0], atol=TOR)


def test_bracket_matches_commutator():
    np.random.seed(1)
    u = TracelessInit().init((10,))
    v = TracelessInit().init((10,))
    w = bracket(u, v)
    for k in range(10):
        a, b = lie_matrix(u[k]), lie_matrix(v[k])
        assert np.allclose(a @ b - b @ a, lie_matrix(w[k]), atol=TOR)


def test_commutator_and_conjugate(elements):
    g, h = elements
    c = commutator(g, h)
    assert np.all(c.distance(g * h * g.inv * h.inv) < TOR)
    assert np.all(conjugate(g, h).distance(g * h * g.inv) < TOR)
    assert np.all(commutator(g, g).distance(ONE) < TOR)


def test_rotation_to():
    n = unit([1.0, 1.0, 0.0])
    target = np.array([0.0, 0.0, 1.0])
    g = rotation_to(n, target)
    assert np.allclose(adjoint(g, n), target, atol=TOR)
    g = rotation_to(target, -target)
    assert np.allclose(adjoint(g, target), -target, atol=TOR)


def test_pure_is_traceless():
    np.random.seed(2)
    x = TracelessInit()((20,))
    assert np.all(x.is_traceless())
    assert np.all((x * x).distance(-ONE) < TOR)


def test_batching_and_stack(elements):
    g, _ = elements
    assert g.shape == (N_SAMPLES,)
    assert len(g) == N_SAMPLES
    assert g[3].shape == ()
    s = stack([g[0], g[1]])
    assert s.shape == (2,)
    assert np.all(s.distance(g[:2]) < TOR)


def test_bad_shape():
    with pytest.raises(ValueError):
        SU2Element([1.0, 0.0, 0.0])
