"""Points of the traceless character variety R(T^2, 2).

A point is the conjugacy class of a tuple (A, B, a, b) of SU(2) elements
with a, b traceless and [A, B] a b = 1. The variety splits into the closed
piece P3 (mu = 1, A and B commute) and the open piece P4 (mu < 1); each
piece has a chart, and points are compared through a fixed list of
conjugation-invariant trace functions.
"""

from collections import namedtuple
from enum import Enum

import numpy as np

import core.ops as ops
from core.errors import NormalizationFailure
from core.errors import NotInP3
from core.errors import NotInP4
from core.errors import OnDiagonal
from core.errors import RelationViolation
from core.su2 import SU2Element
from core.su2 import commutator
from core.su2 import exp
from core.su2 import pure
from core.su2 import rotation_to
from core.su2 import unit

TOL_CHART = 1e-8
RELATION_TOL = 1e-9
ANGLE_TOL = 1e-9
NORMAL_FORM_TOL = 1e-8

# words whose traces make up a TraceProfile, in column order
TRACE_WORDS = ("A", "B", "Aa", "Ba", "Ab", "Bb", "AB", "ABa")

Z_AXIS = np.array([0.0, 0.0, 1.0])


class Chart(Enum):
    P3 = "P3"
    P4 = "P4"


class RepTuple(namedtuple("RepTuple", ["A", "B", "a", "b", "h", "w"],
                          defaults=(None, None))):
    """Images of the generators A, B, a, b (and h, w for points that come
    from the perturbed solid torus). Fields may be batched SU2Elements."""

    __slots__ = ()

    @property
    def shape(self):
        return np.broadcast_shapes(*(g.shape for g in self.core()))

    def core(self):
        return (self.A, self.B, self.a, self.b)

    def drop_extra(self):
        return RepTuple(self.A, self.B, self.a, self.b)

    def conjugate(self, g):
        g = g if isinstance(g, SU2Element) else SU2Element(g)
        gi = g.inv
        fields = [None if x is None else g * x * gi for x in self]
        return RepTuple(*fields)

    def select(self, key):
        """Index the batch axes of every field."""
        return RepTuple(*[None if x is None else x[key] for x in self])

    def relation(self):
        return commutator(self.A, self.B) * self.a * self.b

    def relation_residual(self):
        rel = self.relation().values
        one = np.array([1.0, 0.0, 0.0, 0.0])
        return np.max(np.abs(rel - one), axis=-1)

    def traceless_residual(self):
        return np.maximum(np.abs(self.a.c0), np.abs(self.b.c0))


class ChartPoint(namedtuple("ChartPoint", ["chart", "alpha", "beta", "gamma",
                                           "a_hat", "b_hat"],
                            defaults=(None, None, None, None, None))):
    """A chart point. P3 points carry (alpha, beta, gamma); P4 points carry
    the axes a_hat, b_hat of a and b in the normal form of (A, B)."""

    __slots__ = ()

    def p2(self):
        return self.a_hat, -self.b_hat

    def as_array(self):
        if self.chart is Chart.P3:
            return np.array([self.alpha, self.beta, self.gamma])
        return np.concatenate([self.a_hat, self.b_hat])


def validate(rho, tol=RELATION_TOL):
    residual = float(np.max(rho.relation_residual()))
    if residual > tol:
        raise RelationViolation("[A,B]ab = 1", residual, rho)
    traceless = float(np.max(rho.traceless_residual()))
    if traceless > tol:
        raise RelationViolation("tr a = tr b = 0", traceless, rho)
    return rho


def mu(rho):
    """Half the trace of [A, B]; batched."""
    return commutator(rho.A, rho.B).c0


def classify(rho, tol=TOL_CHART):
    return Chart.P3 if abs(float(mu(rho)) - 1.0) < tol else Chart.P4


def trace_profile(rho):
    """Traces of TRACE_WORDS, stacked on a trailing axis of size 8."""
    A, B, a, b = rho.core()
    AB = A * B
    columns = [A.trace, B.trace, (A * a).trace, (B * a).trace,
               (A * b).trace, (B * b).trace, AB.trace, (AB * a).trace]
    columns = np.broadcast_arrays(*columns)
    return np.stack(columns, axis=-1)


def distance(r1, r2):
    p1 = r1 if isinstance(r1, np.ndarray) else trace_profile(r1)
    p2 = r2 if isinstance(r2, np.ndarray) else trace_profile(r2)
    return np.max(np.abs(p1 - p2), axis=-1)


def chart_distance(pt1, pt2):
    """Max-abs gap between the coordinates of two points of one chart;
    P3 angles are compared modulo 2 pi."""
    if pt1.chart is not pt2.chart:
        raise ValueError("points lie in different charts")
    gap = np.abs(pt1.as_array() - pt2.as_array())
    if pt1.chart is Chart.P3:
        gap = np.mod(gap, 2.0 * np.pi)
        gap = np.minimum(gap, 2.0 * np.pi - gap)
    return float(np.max(gap))


def normalize_p3(alpha, beta, gamma):
    """Reduce P3 coordinates to alpha in [0, 2pi), beta in [0, pi]."""
    two_pi = 2.0 * np.pi
    alpha = float(np.mod(alpha, two_pi))
    beta = float(np.mod(beta, two_pi))
    gamma = float(gamma)
    if beta > np.pi + ANGLE_TOL:
        alpha = np.mod(two_pi - alpha, two_pi)
        beta, gamma = two_pi - beta, -gamma
    if abs(beta) < ANGLE_TOL or abs(beta - two_pi) < ANGLE_TOL:
        beta = 0.0
    elif abs(beta - np.pi) < ANGLE_TOL:
        beta = np.pi
    if two_pi - alpha < ANGLE_TOL:
        alpha = 0.0
    if beta in (0.0, np.pi) and alpha > np.pi + ANGLE_TOL:
        alpha, gamma = two_pi - alpha, -gamma
    if abs(np.sin(alpha)) < ANGLE_TOL and abs(np.sin(beta)) < ANGLE_TOL:
        gamma = 0.0
    return float(alpha), float(beta), float(gamma)


def p3_rep(alpha, beta, gamma):
    """The P3 normal form; broadcasts over array arguments."""
    alpha, beta, gamma = np.broadcast_arrays(
        np.asarray(alpha, dtype=float), np.asarray(beta, dtype=float),
        np.asarray(gamma, dtype=float))
    A = exp(Z_AXIS, alpha)
    B = exp(Z_AXIS, beta)
    axis = np.stack([np.cos(gamma), np.zeros_like(gamma), np.sin(gamma)],
                    axis=-1)
    a = pure(axis)
    return RepTuple(A, B, a, a.inv)


def _rotate_about_z_onto_xz(v):
    """Element fixing z that moves v into the half plane y = 0, x >= 0."""
    planar = np.hypot(v[0], v[1])
    if planar < ops.NORM_TOL:
        return SU2Element([1.0, 0.0, 0.0, 0.0])
    # Ad of exp(z, t) rotates by -2t about z
    return exp(Z_AXIS, np.arctan2(v[1], v[0]) / 2.0)


def to_chart_p3(rho, tol=TOL_CHART):
    if abs(float(mu(rho)) - 1.0) >= tol:
        raise NotInP3("mu = %.12f" % float(mu(rho)))
    A, B = rho.A, rho.B
    axis = A.vec if np.linalg.norm(A.vec) >= np.linalg.norm(B.vec) else B.vec
    if np.linalg.norm(axis) > ops.NORM_TOL:
        g1 = rotation_to(unit(axis), Z_AXIS)
        rho = rho.conjugate(g1)
    rho = rho.conjugate(_rotate_about_z_onto_xz(rho.a.vec))

    alpha = np.arctan2(rho.A.values[3], rho.A.values[0])
    beta = np.arctan2(rho.B.values[3], rho.B.values[0])
    av = rho.a.vec
    gamma = np.arctan2(av[2], np.hypot(av[0], av[1]))

    # b is only close to a^-1 up to the size of the commutator
    ref = p3_rep(alpha, beta, gamma)
    slack = NORMAL_FORM_TOL + 4.0 * np.sqrt(max(0.0, 1.0 - float(mu(rho))))
    residual = max(float(np.max(np.abs(x.values - y.values)))
                   for x, y in zip(rho.core()[:3], ref.core()[:3]))
    if residual > slack:
        raise NormalizationFailure(
            "P3 normal form missed by %.3e" % residual)
    alpha, beta, gamma = normalize_p3(alpha, beta, gamma)
    return ChartPoint(Chart.P3, alpha=alpha, beta=beta, gamma=gamma)


def to_chart_p4(rho, tol=TOL_CHART):
    if abs(float(mu(rho)) - 1.0) < tol:
        raise NotInP4("mu = %.12f" % float(mu(rho)))
    rho = rho.conjugate(rotation_to(unit(rho.B.vec), Z_AXIS))
    rho = rho.conjugate(_rotate_about_z_onto_xz(rho.A.vec))

    Bv, Av = rho.B.vec, rho.A.vec
    residual = max(abs(Bv[0]), abs(Bv[1]), abs(Av[1]))
    if residual > NORMAL_FORM_TOL or Bv[2] <= 0.0 or Av[0] <= 0.0:
        raise NormalizationFailure(
            "P4 normal form missed by %.3e" % residual)
    return ChartPoint(Chart.P4, a_hat=unit(rho.a.vec), b_hat=unit(rho.b.vec))


def from_chart_p4(pt):
    a_hat = unit(pt.a_hat)
    b_hat = unit(pt.b_hat)
    t = -float(np.dot(a_hat, b_hat))
    if t > 1.0 - TOL_CHART:
        raise OnDiagonal("a_hat = -b_hat lies on the diagonal")
    a, b = pure(a_hat), pure(b_hat)
    if t < -1.0 + TOL_CHART:
        # b_hat is snapped onto a_hat
        A = SU2Element([0.0, 1.0, 0.0, 0.0])
        B = SU2Element([0.0, 0.0, 0.0, 1.0])
        return validate(RepTuple(A, B, a, a))

    v_hat = unit(np.cross(a_hat, b_hat))
    cot_beta = -v_hat[2] * np.sqrt((1.0 + t) / (1.0 - t))
    beta = np.arctan2(1.0, cot_beta)
    alpha = np.arctan2(v_hat[0], v_hat[1]) - beta
    # |vec A|^2 split along z and x; both free of cancellation
    r = np.sqrt(0.5 * (1.0 + t) * (v_hat[0] ** 2 + v_hat[1] ** 2))
    s = np.sqrt(0.5 * ((1.0 - t) + (1.0 + t) * v_hat[2] ** 2))
    quat = np.array([r * np.cos(alpha), s, 0.0, r * np.sin(alpha)])
    A = SU2Element(quat / np.linalg.norm(quat))
    B = SU2Element([np.cos(beta), 0.0, 0.0, np.sin(beta)])
    return validate(RepTuple(A, B, a, b))


def to_chart(rho, tol=TOL_CHART):
    if classify(rho, tol) is Chart.P3:
        return to_chart_p3(rho, tol)
    return to_chart_p4(rho, tol)


def from_chart(pt):
    if pt.chart is Chart.P3:
        return p3_rep(pt.alpha, pt.beta, pt.gamma)
    return from_chart_p4(pt)


def y_coordinate(pt):
    """Image of a P3 point in the solid pillowcase Y."""
    if pt.chart is not Chart.P3:
        raise NotInP3("Y coordinate needs a P3 point")
    height = np.sin(pt.alpha) ** 2 + np.sin(pt.beta) ** 2
    return pt.alpha, pt.beta, 2.0 * pt.gamma / np.pi * height
