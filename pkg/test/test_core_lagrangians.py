"""test unit for core/lagrangians.py"""

import runtime_path  # isort:skip

import numpy as np
import pytest

from core.char_variety import Chart
from core.char_variety import distance
from core.char_variety import mu
from core.char_variety import to_chart
from core.char_variety import trace_profile
from core.char_variety import validate
from core.errors import PerturbationTooLarge
from core.initializer import SphereCoordInit
from core.lagrangians import *
from core.su2 import log

TOR = 1e-10
EPSILONS = (0.05, 0.1, 0.2)


@pytest.fixture
def p():
    return PerturbationConfig(0.1)


def test_disk_rep_is_valid():
    chi, psi = np.meshgrid(np.linspace(0.0, np.pi, 9),
                           np.linspace(-np.pi / 2.0, np.pi / 2.0, 9))
    rho = validate(disk_rep(chi, psi))
    assert rho.shape == (9, 9)
    assert np.max(np.abs(mu(rho) - 1.0)) < TOR


def test_disk_symmetries():
    base = disk_rep(0.7, 0.3)
    assert distance(disk_rep(-0.7, -0.3), base) < TOR
    assert distance(disk_rep(0.7, np.pi - 0.3), base) < TOR
    assert np.allclose(canonical_disk(-0.7, -0.3), (0.7, 0.3))
    assert np.allclose(canonical_disk(0.7, np.pi - 0.3), (0.7, 0.3))
    assert canonical_disk(0.0, 0.4) == DiskCoord(0.0, 0.0)


def test_disk_xy_coordinates():
    x, y = disk_xy(0.7, 0.3)
    assert np.allclose(disk_from_xy(x, y), (0.7, 0.3))
    assert distance(disk_rep_xy(x, y), disk_rep(0.7, 0.3)) < TOR
    assert disk_from_xy(1.0, 0.0) == DiskCoord(0.0, 0.0)


def test_natural_family():
    rho = natural_rep(0.3 + 0.4j, 0.5 - 0.2j)
    validate(rho)
    assert natural_relation_residual(rho) < TOR
    fiber = natural_fiber(0.3 + 0.4j, 0.5 - 0.2j, np.linspace(0, 1, 4))
    assert len(fiber) == 4
    assert all(natural_relation_residual(r) < TOR for r in fiber)


def test_disk_lift_projects_back():
    lift = disk_rep_lift(0.7, 0.3, tau=1.1)
    assert distance(lift.drop_extra(), disk_rep(0.7, 0.3)) < TOR
    x, y = disk_xy(0.7, 0.3)
    z2 = np.sqrt(1.0 - x * x - y * y)
    assert np.allclose(natural_pullback(complex(x, y), z2), (0.7, 0.3))


def test_sphere_rep_relations(p):
    np.random.seed(0)
    phi = np.random.uniform(0.05, np.pi - 0.05, size=100)
    theta = np.random.uniform(0.0, 2.0 * np.pi, size=100)
    rho = validate(sphere_rep(phi, theta, p))
    assert np.max(natural_relation_residual(rho)) < TOR
    b = -(rho.h * rho.a.inv * rho.h.inv)
    assert np.max(rho.b.distance(b)) < TOR


def test_perturbation_axis(p):
    rho = sphere_rep(1.0, 2.0, p)
    lam_axis, lam_angle = log(rho.h.inv * rho.A)
    mu_axis, mu_angle = log(rho.B)
    assert np.allclose(lam_axis, mu_axis, atol=1e-8)
    assert abs(mu_angle - float(p.nu(lam_angle))) < TOR


@pytest.mark.parametrize("eps", EPSILONS)
def test_closed_forms_match_matrices(eps):
    np.random.seed(1)
    gap = trace_consistency(samples=500, epsilons=(eps,))
    assert gap[eps] < TOR


def test_closed_form_mu(p):
    rho = sphere_rep(1.0, np.pi / 2.0, p)
    assert abs(float(sphere_mu(1.0, np.pi / 2.0, p)) - float(mu(rho))) < TOR
    assert abs(float(mu(rho)) - np.cos(2.0 * float(p.nu(1.0)))) < TOR


def test_jacobian_matches_finite_differences(p):
    np.random.seed(2)
    assert jacobian_consistency(samples=200, p=p) < 1e-6
    assert sphere_profile_jacobian(1.0, 2.0, p).shape == (8, 2)
    d_phi, d_theta = sphere_chart_jacobian(1.0, 2.0, p, "mu")
    assert np.shape(d_phi) == ()


def test_double_point(p):
    assert double_point_check(p)
    assert sphere_chart(0.0, 1.3, p) == DOUBLE_POINT
    assert sphere_chart(np.pi, 4.0, p) == DOUBLE_POINT


def test_sphere_chart_on_p3_meridian(p):
    pt = sphere_chart(1.0, 0.0, p)
    assert pt.chart is Chart.P3
    expected = to_chart(sphere_rep(1.0, 0.0, p))
    assert np.allclose(pt.as_array(), expected.as_array(), atol=1e-8)
    assert np.allclose(pt.as_array(),
                       [1.0 + np.pi / 2.0, float(p.nu(1.0)), 0.0])


def test_sphere_chart_in_p4(p):
    pt = sphere_chart(1.0, np.pi / 2.0, p)
    assert pt.chart is Chart.P4
    expected = to_chart(sphere_rep(1.0, np.pi / 2.0, p))
    assert np.allclose(pt.a_hat, expected.a_hat, atol=1e-8)
    assert np.allclose(pt.b_hat, expected.b_hat, atol=1e-8)


def test_canonical_sphere(p):
    s = canonical_sphere(2.0 * np.pi - 1.0, 0.5 + np.pi)
    assert np.allclose(s, (1.0, 0.5))
    assert np.allclose(sphere_traces(2.0 * np.pi - 1.0, 0.5 + np.pi, p),
                       sphere_traces(1.0, 0.5, p), atol=TOR)
    assert canonical_sphere(0.0, 2.0) == SphereCoord(0.0, 0.0)


def test_recover_theta(p):
    for theta in (0.4, 2.0, 4.5):
        prof = sphere_traces(1.0, theta, p)
        assert abs(recover_theta(prof) - theta) < 1e-8


def test_sphere_cartesian():
    x, y, z = sphere_cartesian(np.pi / 2.0, 0.0)
    assert np.allclose((x, y, z), (1.0, 0.0, 0.0))


def test_perturbation_shapes():
    sine = PerturbationConfig(0.2)
    arcsine = PerturbationConfig(0.2, Shape.ALGEBRAIC_ARCSINE)
    assert abs(float(sine.nu(np.pi / 2.0)) - 0.2) < TOR
    assert abs(float(arcsine.nu(np.pi / 2.0)) - np.arcsin(0.2)) < TOR
    h = 1e-6
    d = (arcsine.nu(0.7 + h) - arcsine.nu(0.7 - h)) / (2 * h)
    assert abs(float(arcsine.nu_prime(0.7)) - float(d)) < 1e-8


def test_monotonicity_check():
    assert monotonicity_check(PerturbationConfig(0.1))
    assert not monotonicity_check(PerturbationConfig(0.0))
    with pytest.raises(PerturbationTooLarge):
        PerturbationConfig(0.6).check()


def test_sphere_rep_family(p):
    a = sphere_rep_family(1.0, 2.0, p, -0.05)
    b = sphere_rep(1.0, 2.0, PerturbationConfig(-0.05))
    assert distance(a, b) < TOR


def test_closed_forms_on_seams(p):
    phi = np.concatenate([np.full(16, np.pi / 2.0),
                          np.linspace(0.05, np.pi - 0.05, 16),
                          np.linspace(0.05, np.pi - 0.05, 16)])
    theta = np.concatenate([np.linspace(0.0, 2.0 * np.pi, 16),
                            np.zeros(16), np.full(16, np.pi)])
    built = trace_profile(sphere_rep(phi, theta, p))
    assert np.max(np.abs(sphere_traces(phi, theta, p) - built)) < TOR
    h = 1e-6
    numeric = (sphere_traces(phi, theta + h, p) -
               sphere_traces(phi, theta - h, p)) / (2.0 * h)
    analytic = sphere_profile_jacobian(phi, theta, p)[..., 1]
    assert np.max(np.abs(analytic - numeric)) < 1e-6


def test_sphere_lagrangian_is_injective(p):
    np.random.seed(5)
    first = SphereCoordInit()((1000,))
    second = SphereCoordInit()((1000,))
    gaps = distance(sphere_traces(*first, p), sphere_traces(*second, p))
    assert np.min(gaps) > 0.0
    assert distance(sphere_traces(np.pi / 2.0, np.pi / 2.0, p),
                    sphere_traces(np.pi / 2.0, 1.5 * np.pi, p)) > 0.1
