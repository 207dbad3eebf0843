"""The disk Lagrangian L_d and the perturbed sphere Lagrangian L_s.

L_d(chi, psi) is the image of the character variety of the solid torus
containing an unknotted arc. L_s(phi, theta) is the image of the
holonomy-perturbed variety of the same solid torus with an extra
earring; (phi, theta) are spherical polar coordinates on it.
"""

from collections import namedtuple
from enum import Enum

import numpy as np

import core.ops as ops
from core.char_variety import ANGLE_TOL
from core.char_variety import Chart
from core.char_variety import ChartPoint
from core.char_variety import RepTuple
from core.char_variety import TRACE_WORDS
from core.char_variety import Z_AXIS
from core.char_variety import normalize_p3
from core.char_variety import trace_profile
from core.char_variety import validate
from core.errors import PerturbationTooLarge
from core.initializer import SphereCoordInit
from core.su2 import SU2Element
from core.su2 import exp
from core.su2 import pure

MAX_EPSILON = 0.5
POLE_TOL = 1e-12
MONOTONICITY_GRID = 10 ** 4

DOUBLE_POINT = ChartPoint(Chart.P3, alpha=np.pi / 2.0, beta=0.0, gamma=0.0)


class Shape(Enum):
    SINE = "sine"
    ALGEBRAIC_ARCSINE = "arcsine"


DiskCoord = namedtuple("DiskCoord", ["chi", "psi"])
SphereCoord = namedtuple("SphereCoord", ["phi", "theta"])


class PerturbationConfig(namedtuple("PerturbationConfig",
                                    ["epsilon", "shape"],
                                    defaults=(0.1, Shape.SINE))):
    """Perturbation nu = epsilon f(phi).

    SINE uses nu = epsilon sin(phi). ALGEBRAIC_ARCSINE uses
    nu = arcsin(epsilon sin(phi)), which makes sin(nu) polynomial in the
    holonomy and is the shape the cohomology computations need.
    Negative epsilon is accepted so that families can be differenced
    around zero.
    """

    __slots__ = ()

    def check(self):
        if abs(self.epsilon) >= MAX_EPSILON:
            raise PerturbationTooLarge(
                "epsilon = %g, must stay below %g" % (
                    self.epsilon, MAX_EPSILON))
        return self

    def nu(self, phi):
        phi = np.asarray(phi, dtype=float)
        if self.shape is Shape.SINE:
            return self.epsilon * np.sin(phi)
        return np.arcsin(self.epsilon * np.sin(phi))

    def nu_prime(self, phi):
        phi = np.asarray(phi, dtype=float)
        if self.shape is Shape.SINE:
            return self.epsilon * np.cos(phi)
        return self.epsilon * np.cos(phi) / np.sqrt(
            1.0 - (self.epsilon * np.sin(phi)) ** 2)


# --- disk Lagrangian -------------------------------------------------------

def disk_rep(chi, psi):
    """A = exp(chi iσz), B = 1, a = iσx cos psi + iσz sin psi, b = a^-1."""
    chi, psi = np.broadcast_arrays(np.asarray(chi, dtype=float),
                                   np.asarray(psi, dtype=float))
    A = exp(Z_AXIS, chi)
    B = SU2Element(ops.join(np.ones_like(chi), np.zeros(chi.shape + (3,))))
    a = pure(np.stack([np.cos(psi), np.zeros_like(psi), np.sin(psi)],
                      axis=-1))
    rho = RepTuple(A, B, a, a.inv)
    if __debug__:
        validate(rho)
    return rho


def canonical_disk(chi, psi):
    """Reduce through (chi, psi) ~ (-chi, -psi) ~ (chi, pi - psi)."""
    two_pi = 2.0 * np.pi
    chi = float(np.mod(chi, two_pi))
    psi = float(psi)
    if chi > np.pi:
        chi, psi = two_pi - chi, -psi
    psi = float(np.mod(psi + np.pi, two_pi) - np.pi)
    if psi > np.pi / 2.0:
        psi = np.pi - psi
    elif psi < -np.pi / 2.0:
        psi = -np.pi - psi
    if abs(np.sin(chi)) < ANGLE_TOL:
        psi = 0.0
    return DiskCoord(chi, psi)


def disk_xy(chi, psi):
    """Coordinates of L_d in the closed unit disk."""
    return np.cos(chi), np.sin(chi) * np.sin(psi)


def disk_from_xy(x, y):
    x = float(np.clip(x, -1.0, 1.0))
    rad = np.sqrt(max(0.0, 1.0 - x * x))
    if rad < ANGLE_TOL:
        return DiskCoord(float(np.arccos(x)), 0.0)
    return DiskCoord(float(np.arccos(x)),
                     float(np.arcsin(np.clip(y / rad, -1.0, 1.0))))


def disk_rep_xy(x, y):
    """The disk normal form a = iσz, A = x + i sqrt(1-x^2-y^2) σx + i y σz."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float),
                               np.asarray(y, dtype=float))
    rest = np.sqrt(np.clip(1.0 - x * x - y * y, 0.0, None))
    A = SU2Element(np.stack([x, rest, np.zeros_like(x), y], axis=-1))
    B = SU2Element(ops.join(np.ones_like(x), np.zeros(x.shape + (3,))))
    a = pure(np.broadcast_to(Z_AXIS, x.shape + (3,)))
    return RepTuple(A, B, a, a.inv)


# --- the unperturbed earring variety, a 3-sphere ---------------------------

def natural_rep(z1, z2):
    """Unperturbed variety point, A = [[z1, -conj z2], [z2, conj z1]].

    a = iσz, b = a^-1, B = 1, h = iσx, w = -1.
    """
    z1 = complex(z1)
    z2 = complex(z2)
    norm = np.sqrt(abs(z1) ** 2 + abs(z2) ** 2)
    z1, z2 = z1 / norm, z2 / norm
    A = SU2Element([z1.real, z2.imag, -z2.real, z1.imag])
    a = SU2Element([0.0, 0.0, 0.0, 1.0])
    h = SU2Element([0.0, 1.0, 0.0, 0.0])
    one = SU2Element([1.0, 0.0, 0.0, 0.0])
    return RepTuple(A, one, a, a.inv, h, -one)


def natural_pullback(z1, z2):
    """Disk point under the forgetful map: x + iy = z1."""
    z1 = complex(z1) / np.sqrt(abs(complex(z1)) ** 2 + abs(complex(z2)) ** 2)
    return disk_from_xy(z1.real, z1.imag)


def natural_fiber(z1, z2, taus):
    """The points z2 -> exp(i tau) z2 over one disk point."""
    return [natural_rep(z1, complex(z2) * np.exp(1j * tau)) for tau in taus]


def disk_rep_lift(chi, psi, tau=0.0):
    """Lift a disk point into the unperturbed earring variety."""
    x, y = disk_xy(chi, psi)
    z1 = complex(x, y)
    z2 = np.sqrt(max(0.0, 1.0 - abs(z1) ** 2)) * np.exp(1j * tau)
    return natural_rep(z1, z2)


def natural_relation_residual(rho):
    """max |h w a B - a B h| for an earring tuple."""
    lhs = rho.h * rho.w * rho.a * rho.B
    rhs = rho.a * rho.B * rho.h
    return np.max(np.abs(lhs.values - rhs.values), axis=-1)


# --- sphere Lagrangian -----------------------------------------------------

def _denominator(nu, theta):
    return np.cos(nu) ** 2 + np.sin(nu) ** 2 * np.sin(theta) ** 2


def sphere_rep(phi, theta, p=PerturbationConfig()):
    """Tuple (A, B, a, b, h, w) over L_s(phi, theta); broadcasts.

    lambda = h^-1 A = exp(phi r) and mu = B = exp(nu r) share the axis
    r = (cos theta, sin theta, 0).
    """
    phi, theta = np.broadcast_arrays(np.asarray(phi, dtype=float),
                                     np.asarray(theta, dtype=float))
    nu = p.nu(phi)
    root = np.sqrt(_denominator(nu, theta))
    zero = np.zeros_like(phi)
    r_hat = np.stack([np.cos(theta), np.sin(theta), zero], axis=-1)
    h = SU2Element(np.stack([zero, np.cos(nu) / root, zero,
                             -np.sin(nu) * np.sin(theta) / root], axis=-1))
    lam = exp(r_hat, phi)
    B = exp(r_hat, nu)
    A = h * lam
    a = pure(np.broadcast_to(Z_AXIS, phi.shape + (3,)))
    b = -(h * a.inv * h.inv)
    w = SU2Element(ops.join(-np.ones_like(phi), np.zeros(phi.shape + (3,))))
    rho = RepTuple(A, B, a, b, h, w)
    if __debug__:
        validate(rho)
    return rho


def _closed_forms(phi, theta, p):
    """Numerators N, exponents k and dN/d(phi, nu, theta) of the trace
    functions, each of the form N D^-k."""
    nu = p.nu(phi)
    cn, sn = np.cos(nu), np.sin(nu)
    ct, st = np.cos(theta), np.sin(theta)
    cp, sp = np.cos(phi), np.sin(phi)
    s2n, c2n, s2t, c2t = np.sin(2 * nu), np.cos(2 * nu), \
        np.sin(2 * theta), np.cos(2 * theta)
    spn, cpn = np.sin(phi + nu), np.cos(phi + nu)
    smn, cmn = np.sin(phi - nu), np.cos(phi - nu)
    sp2, cp2 = np.sin(phi + 2 * nu), np.cos(phi + 2 * nu)
    zero = np.zeros_like(phi + theta)

    forms = {
        "A": (-2 * cn * ct * sp, 0.5,
              (-2 * cn * ct * cp, 2 * sn * ct * sp, 2 * cn * st * sp)),
        "B": (2 * cn + zero, 0.0, (zero, -2 * sn + zero, zero)),
        "Aa": (2 * spn * st, 0.5, (2 * cpn * st, 2 * cpn * st, 2 * spn * ct)),
        "Ba": (zero, 0.0, (zero, zero, zero)),
        "Ab": (-2 * smn * st, 0.5,
               (-2 * cmn * st, 2 * cmn * st, -2 * smn * ct)),
        "Bb": (sn * s2n * s2t, 1.0,
               (zero, cn * s2n * s2t + 2 * sn * c2n * s2t,
                2 * sn * s2n * c2t)),
        "AB": (-2 * cn * ct * spn, 0.5,
               (-2 * cn * ct * cpn,
                2 * sn * ct * spn - 2 * cn * ct * cpn,
                2 * cn * st * spn)),
        "ABa": (2 * sp2 * st, 0.5, (2 * cp2 * st, 4 * cp2 * st, 2 * sp2 * ct)),
        "mu": (cn ** 2 - sn ** 2 * st ** 2, 1.0,
               (zero, -s2n * (1 + st ** 2), -sn ** 2 * s2t)),
    }
    denom = cn ** 2 + sn ** 2 * st ** 2
    d_denom = (-s2n * ct ** 2, sn ** 2 * s2t)
    return forms, denom, d_denom


def _evaluate(phi, theta, p, names):
    phi, theta = np.broadcast_arrays(np.asarray(phi, dtype=float),
                                     np.asarray(theta, dtype=float))
    forms, denom, (dd_nu, dd_theta) = _closed_forms(phi, theta, p)
    nu_prime = p.nu_prime(phi)
    values, d_phi, d_theta = [], [], []
    for name in names:
        num, k, (dn_phi, dn_nu, dn_theta) = forms[name]
        scale = denom ** -k
        values.append(num * scale)
        # d(N D^-k) = D^-k (dN - k N dD / D)
        d_nu = scale * (dn_nu - k * num * dd_nu / denom)
        d_phi.append(scale * dn_phi + nu_prime * d_nu)
        d_theta.append(scale * (dn_theta - k * num * dd_theta / denom))
    return (np.stack(values, axis=-1), np.stack(d_phi, axis=-1),
            np.stack(d_theta, axis=-1))


def sphere_traces(phi, theta, p=PerturbationConfig()):
    """Closed-form TraceProfile of L_s(phi, theta)."""
    return _evaluate(phi, theta, p, TRACE_WORDS)[0]


def sphere_mu(phi, theta, p=PerturbationConfig()):
    return _evaluate(phi, theta, p, ("mu",))[0][..., 0]


def sphere_chart_jacobian(phi, theta, p, fn):
    """(d/dphi, d/dtheta) of one trace function ("A", ..., "ABa" or "mu")."""
    _, d_phi, d_theta = _evaluate(phi, theta, p, (fn,))
    return d_phi[..., 0], d_theta[..., 0]


def sphere_profile_jacobian(phi, theta, p=PerturbationConfig()):
    """Jacobian of the TraceProfile, shape (..., 8, 2)."""
    _, d_phi, d_theta = _evaluate(phi, theta, p, TRACE_WORDS)
    return np.stack([d_phi, d_theta], axis=-1)


def sphere_chart(phi, theta, p=PerturbationConfig()):
    phi, theta = float(phi), float(np.mod(theta, 2.0 * np.pi))
    if abs(np.sin(phi)) < POLE_TOL:
        return DOUBLE_POINT
    nu = float(p.nu(phi))
    if abs(np.sin(theta)) < ANGLE_TOL:
        offset = np.pi / 2.0 if np.cos(theta) > 0.0 else -np.pi / 2.0
        alpha, beta, gamma = normalize_p3(phi + offset, nu, 0.0)
        return ChartPoint(Chart.P3, alpha=alpha, beta=beta, gamma=gamma)

    denom = float(_denominator(nu, theta))
    c2t, s2t = np.cos(theta) ** 2, np.sin(theta) ** 2
    cn2 = np.cos(nu) ** 2
    a_hat = np.array([-np.sin(phi + nu), -np.cos(phi + nu), 0.0])
    b_hat = np.array([
        (cn2 * c2t * np.sin(phi + nu) + s2t * np.sin(phi - nu)) / denom,
        (cn2 * c2t * np.cos(phi + nu) + s2t * np.cos(phi - nu)) / denom,
        -0.5 * np.sin(2 * nu) * np.sin(2 * theta) / denom])
    if theta > np.pi:
        a_hat[:2] = -a_hat[:2]
        b_hat[:2] = -b_hat[:2]
    return ChartPoint(Chart.P4, a_hat=a_hat, b_hat=b_hat)


def canonical_sphere(phi, theta):
    two_pi = 2.0 * np.pi
    phi = float(np.mod(phi, two_pi))
    theta = float(theta)
    if phi > np.pi:
        phi, theta = two_pi - phi, theta + np.pi
    theta = float(np.mod(theta, two_pi))
    if two_pi - theta < ANGLE_TOL:
        theta = 0.0
    if abs(np.sin(phi)) < POLE_TOL:
        theta = 0.0
    return SphereCoord(phi, theta)


def sphere_cartesian(phi, theta):
    return (np.sin(phi) * np.cos(theta), np.sin(phi) * np.sin(theta),
            np.cos(phi))


def recover_theta(profile):
    """theta = Arg(-tr AB + (i/2) tr B tr Aa) on L_s away from the poles."""
    profile = np.asarray(profile)
    tr_b, tr_aa, tr_ab = profile[..., 1], profile[..., 2], profile[..., 6]
    return np.mod(np.arctan2(0.5 * tr_b * tr_aa, -tr_ab), 2.0 * np.pi)


def monotonicity_check(p):
    """True when F = sin(phi + nu) / sin(phi - nu) is strictly monotone on
    an open grid over (0, pi)."""
    phi = np.linspace(0.0, np.pi, MONOTONICITY_GRID + 2)[1:-1]
    nu = p.nu(phi)
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.sin(phi + nu) / np.sin(phi - nu)
    if not np.all(np.isfinite(f)):
        return False
    steps = np.diff(f)
    return bool(np.all(steps > 0.0) or np.all(steps < 0.0))


def sphere_rep_family(phi, theta, p, eps):
    """sphere_rep with the perturbation strength replaced by a signed eps."""
    return sphere_rep(phi, theta, p._replace(epsilon=float(eps)))


# --- consistency suites ----------------------------------------------------

def trace_consistency(samples=10 ** 4, epsilons=(0.05, 0.1, 0.2)):
    """max |closed form - matrix trace| over random sphere points, per eps."""
    phi, theta = SphereCoordInit(margin=0.01, seams=True)((samples,))
    report = {}
    for eps in epsilons:
        p = PerturbationConfig(eps)
        closed = sphere_traces(phi, theta, p)
        built = trace_profile(sphere_rep(phi, theta, p))
        report[eps] = float(np.max(np.abs(closed - built)))
    return report


def jacobian_consistency(samples=10 ** 3, p=PerturbationConfig(),
                         step=1e-6):
    """Relative gap between sphere_profile_jacobian and central
    differences, away from the poles."""
    phi, theta = SphereCoordInit(margin=0.05, seams=True)((samples,))
    analytic = sphere_profile_jacobian(phi, theta, p)
    d_phi = (sphere_traces(phi + step, theta, p) -
             sphere_traces(phi - step, theta, p)) / (2.0 * step)
    d_theta = (sphere_traces(phi, theta + step, p) -
               sphere_traces(phi, theta - step, p)) / (2.0 * step)
    numeric = np.stack([d_phi, d_theta], axis=-1)
    scale = max(1.0, float(np.max(np.abs(numeric))))
    return float(np.max(np.abs(analytic - numeric))) / scale


def double_point_check(p=PerturbationConfig(), thetas=None):
    """Both poles of L_s map to the double point for every theta."""
    thetas = np.linspace(0.0, 2.0 * np.pi, 7) if thetas is None else thetas
    charts = [sphere_chart(phi, t, p) for phi in (0.0, np.pi)
              for t in thetas]
    return all(c == DOUBLE_POINT for c in charts)
