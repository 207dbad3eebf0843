"""Intersections of the sphere Lagrangian L_s with L_2 = L_d . f.

Words outside the known families are sampled on 2D grids on both
Lagrangians and compared through their trace profiles; grid cells of
L_2 whose nearest L_s sample is a minimum of the profile distance along
some grid axis seed a damped Gauss-Newton solve in (chi, psi, phi,
theta). Words that spell one of FAMILIES are only sampled along the
curves their trace constraints leave open, at a finer resolution.
Converged points are deduplicated, checked against the double point of
L_s and given a transversality verdict.
"""

import itertools
import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from enum import Enum

import numpy as np
from scipy.spatial import cKDTree

from core.char_variety import Chart
from core.char_variety import chart_distance
from core.char_variety import distance
from core.char_variety import from_chart
from core.char_variety import to_chart
from core.char_variety import trace_profile
from core.errors import NoConvergence
from core.errors import PerturbationTooLarge
from core.evaluator import ResidualEvaluator
from core.evaluator import TransversalityEvaluator
from core.lagrangians import DOUBLE_POINT
from core.lagrangians import DiskCoord
from core.lagrangians import PerturbationConfig
from core.lagrangians import canonical_disk
from core.lagrangians import canonical_sphere
from core.lagrangians import disk_rep
from core.lagrangians import monotonicity_check
from core.lagrangians import sphere_chart
from core.lagrangians import sphere_profile_jacobian
from core.lagrangians import sphere_traces
from core.mcg import McgGen
from core.mcg import McgWord
from core.mcg import act
from core.mcg import as_word
from core.mcg import parse_word
from core.optimizer import DampedGaussNewton
from utils.data_iterator import GridIterator
from utils.data_iterator import worker_count
from utils.timer import Timer

LOGGER = logging.getLogger(__name__)

DEFAULT_GRID = 128
MIN_GRID = 64
NEWTON_TOL = 1e-10
MATCH_TOL = 1e-9
FD_STEP = 1e-6
POLE_MARGIN = 1e-3
DOUBLE_POINT_RADIUS = 1e-3
WITNESS_TOL = 1e-6
SEED_DECIMALS = 10
LOCUS_REFINEMENT = 32

SEEDINGS = ("auto", "grid")


class Verdict(Enum):
    YES = "Yes"
    NO = "No"
    INDETERMINATE = "Indeterminate"


class Flag(Enum):
    DOUBLE_POINT_HIT = "DoublePointHit"
    NON_TRANSVERSE_POINT = "NonTransversePoint"


FAMILIES = ("unknot-lens", "simple-lens", "trefoil")


def family_word(name, p=1):
    """unknot-lens -> Ta^p, simple-lens -> a1^-1 Ta^p, trefoil ->
    s b1 a1^-1."""
    if name not in FAMILIES:
        raise ValueError("unknown family %r" % name)
    p = int(p)
    if p < 0:
        raise ValueError("p must be >= 0")
    if name == "trefoil":
        return parse_word("s b1 a1^-1")
    twist = "Ta^%d" % p if p > 0 else ""
    if name == "simple-lens":
        return parse_word(("a1^-1 " + twist).strip())
    return parse_word(twist)


FamilyMatch = namedtuple("FamilyMatch", ["name", "p"])


def _merged(word):
    """Adjacent powers of one generator combined, zero powers dropped."""
    gens = []
    for g in as_word(word):
        if gens and gens[-1].name == g.name:
            g = McgGen(g.name, gens.pop().exponent + g.exponent)
        if g.exponent != 0:
            gens.append(g)
    return McgWord(gens)


def match_family(word):
    """The FamilyMatch spelled by `word`, or None."""
    word = _merged(word)
    if word == _merged(family_word("trefoil")):
        return FamilyMatch("trefoil", 1)
    gens = list(word)
    name = "unknot-lens"
    if gens and gens[0] == McgGen("a1", -1):
        name, gens = "simple-lens", gens[1:]
    if len(gens) > 1 or any(g.name != "Ta" or g.exponent < 0 for g in gens):
        return None
    return FamilyMatch(name, gens[0].exponent if gens else 0)


def expected_count(family, p=1):
    """Number of intersection points of a family, or None when L_2 runs
    through the double point."""
    if family not in FAMILIES:
        raise ValueError("unknown family %r" % family)
    if family == "trefoil":
        return 3
    if family == "unknot-lens" and p % 4 == 0:
        return None
    return int(p)


class IntersectionProblem(namedtuple(
        "IntersectionProblem",
        ["word", "perturbation", "grid", "newton_tol", "match_tol",
         "max_iter", "threads", "family", "seeding"],
        defaults=(PerturbationConfig(), DEFAULT_GRID, NEWTON_TOL, MATCH_TOL,
                  50, None, None, "auto"))):
    """A word f together with the numerical settings of the search.

    With seeding "auto" a word that spells one of FAMILIES is searched
    along that family's constraint curves; "grid" always scans the full
    disk. `family`, when given, must agree with the word.
    """

    __slots__ = ()

    @property
    def mcg_word(self):
        return as_word(self.word)

    @property
    def recognized(self):
        return match_family(self.word)

    @property
    def family_name(self):
        if self.family is not None:
            return self.family
        match = self.recognized
        return None if match is None else match.name

    def check(self):
        if self.grid < MIN_GRID:
            raise ValueError("grid must be >= %d, got %d" % (
                MIN_GRID, self.grid))
        if not self.match_tol > self.newton_tol:
            raise ValueError("match tolerance must exceed Newton tolerance")
        if self.seeding not in SEEDINGS:
            raise ValueError("unknown seeding %r" % self.seeding)
        if self.family is not None:
            match = self.recognized
            if match is None or match.name != self.family:
                raise ValueError("word %s does not spell family %s" % (
                    self.mcg_word, self.family))
        self.perturbation.check()
        if not monotonicity_check(self.perturbation):
            raise PerturbationTooLarge(
                "epsilon = %g is not small: sin(phi + nu) / sin(phi - nu) "
                "is not monotone" % self.perturbation.epsilon)
        return self


IntersectionPoint = namedtuple(
    "IntersectionPoint",
    ["disk", "sphere", "chart", "residual", "transverse",
     "near_double_point", "witness"],
    defaults=(None,))

DoublePointCheck = namedtuple("DoublePointCheck", ["hit", "disk", "residual"])

Candidate = namedtuple("Candidate", ["psi", "chart", "distance"])

Witness = namedtuple("Witness", ["derivatives", "expected", "matches"])


class IntersectionReport(namedtuple(
        "IntersectionReport",
        ["points", "flags", "provenance", "dropped_seeds", "double_point"])):

    __slots__ = ()

    @property
    def count(self):
        return len(self.points)


# --- profiles and Jacobians ------------------------------------------------

def disk_profile(chi, psi, word):
    """Trace profile of L_d(chi, psi) . word; broadcasts."""
    return trace_profile(act(disk_rep(chi, psi), word))


def disk_jacobian(chi, psi, word, step=FD_STEP):
    """Central differences of disk_profile, shape (8, 2)."""
    chi = float(chi)
    psi = float(psi)
    chis = np.array([chi + step, chi - step, chi, chi])
    psis = np.array([psi, psi, psi + step, psi - step])
    prof = disk_profile(chis, psis, word)
    return np.stack([(prof[0] - prof[1]) / (2.0 * step),
                     (prof[2] - prof[3]) / (2.0 * step)], axis=-1)


def objective(d, s, prob):
    """Max-abs profile distance between L_d(d) . f and L_s(s)."""
    d = DiskCoord(*d)
    lhs = disk_profile(d.chi, d.psi, prob.mcg_word)
    rhs = sphere_traces(s[0], s[1], prob.perturbation)
    return float(distance(lhs, rhs))


def _residual(params, word, p):
    disk, sphere = params
    return (disk_profile(disk["chi"], disk["psi"], word) -
            sphere_traces(sphere["phi"], sphere["theta"], p))


def _jacobian(params, word, p):
    disk, sphere = params
    return np.concatenate(
        [disk_jacobian(disk["chi"], disk["psi"], word),
         -sphere_profile_jacobian(sphere["phi"], sphere["theta"], p)],
        axis=-1)


def tangent_matrix(pt, prob):
    """[d/dphi, d/dtheta] of L_s next to [d/dchi, d/dpsi] of L_2."""
    s = sphere_profile_jacobian(pt.sphere.phi, pt.sphere.theta,
                                prob.perturbation)
    d = disk_jacobian(pt.disk.chi, pt.disk.psi, prob.mcg_word)
    return np.concatenate([s, d], axis=-1)


# --- grids -----------------------------------------------------------------

def disk_axes(n):
    return (np.linspace(0.0, np.pi, n),
            np.linspace(-np.pi / 2.0, np.pi / 2.0, n))


def sphere_axes(n):
    return np.linspace(0.0, np.pi, n), 2.0 * np.pi * np.arange(n) / n


def _max_step(profiles, wrap=False):
    """Largest profile distance between grid neighbours."""
    steps = [np.max(np.abs(np.diff(profiles, axis=0)))]
    steps.append(np.max(np.abs(np.diff(profiles, axis=1))))
    if wrap:
        steps.append(np.max(np.abs(profiles[:, 0] - profiles[:, -1])))
    return float(max(steps))


def _neighbour(padded, offset, shape):
    return padded[tuple(slice(1 + o, 1 + o + n)
                        for o, n in zip(offset, shape))]


def local_minima(d, tau):
    """Cells below tau that are no larger than any neighbour, diagonal
    neighbours included."""
    padded = np.pad(d, 1, mode="constant", constant_values=np.inf)
    mask = d < tau
    for offset in itertools.product((-1, 0, 1), repeat=d.ndim):
        if any(offset):
            mask &= d <= _neighbour(padded, offset, d.shape)
    return np.argwhere(mask)


def axis_minima(d, tau):
    """Cells below tau that are no larger than their two neighbours along
    at least one axis. In 1D these are the local minima."""
    padded = np.pad(d, 1, mode="constant", constant_values=np.inf)
    mask = np.zeros(d.shape, dtype=bool)
    for axis in range(d.ndim):
        ahead = tuple(int(k == axis) for k in range(d.ndim))
        behind = tuple(-o for o in ahead)
        mask |= ((d <= _neighbour(padded, ahead, d.shape)) &
                 (d <= _neighbour(padded, behind, d.shape)))
    return np.argwhere(mask & (d < tau))


SphereGrid = namedtuple("SphereGrid", ["phi", "theta", "profiles", "tree",
                                       "max_step"])
DiskScan = namedtuple("DiskScan", ["chi", "psi", "profiles", "dist", "index",
                                   "max_step"])


def sphere_grid(n, p):
    phi_axis, theta_axis = sphere_axes(n)
    phi, theta = np.meshgrid(phi_axis, theta_axis, indexing="ij")
    profiles = sphere_traces(phi, theta, p)
    tree = cKDTree(profiles.reshape(-1, 8))
    return SphereGrid(phi.ravel(), theta.ravel(), profiles, tree,
                      _max_step(profiles, wrap=True))


def _scan_block(block, word, tree):
    profiles = disk_profile(block.u, block.v, word)
    dist, index = tree.query(profiles.reshape(-1, 8), p=np.inf)
    shape = block.u.shape
    return profiles, dist.reshape(shape), index.reshape(shape)


def scan_disk(prob, grid, pool):
    """Profiles of L_2 on the disk grid and their nearest L_s samples."""
    chi_axis, psi_axis = disk_axes(prob.grid)
    blocks = list(GridIterator()(chi_axis, psi_axis))
    word = prob.mcg_word
    parts = list(pool.map(lambda b: _scan_block(b, word, grid.tree),
                          blocks))
    profiles = np.concatenate([part[0] for part in parts], axis=0)
    dist = np.concatenate([part[1] for part in parts], axis=0)
    index = np.concatenate([part[2] for part in parts], axis=0)
    chi, psi = np.meshgrid(chi_axis, psi_axis, indexing="ij")
    return DiskScan(chi, psi, profiles, dist, index, _max_step(profiles))


def _collect_seeds(cells, scan, grid):
    """Seeds (chi, psi, phi, theta) for the given cells; cells with an
    identical profile and nearest sample are collapsed."""
    seeds, seen = [], set()
    for cell in map(tuple, cells):
        k = int(scan.index[cell])
        key = (tuple(np.round(scan.profiles[cell], SEED_DECIMALS)), k)
        if key in seen:
            continue
        seen.add(key)
        seeds.append((scan.chi[cell], scan.psi[cell], grid.phi[k],
                      grid.theta[k]))
    return seeds


def find_seeds(scan, grid):
    """Minima of the nearest-sample distance along either grid axis,
    below the combined grid step."""
    tau = scan.max_step + grid.max_step
    seeds = _collect_seeds(axis_minima(scan.dist, tau), scan, grid)
    LOGGER.info("%d seeds below tau = %.3e", len(seeds), tau)
    return seeds


# --- family loci -----------------------------------------------------------

Locus = namedtuple("Locus", ["disk", "sphere"])


def family_locus(family, p, n):
    """Curves, each a pair of length-n arrays, on the disk (chi, psi) and
    on the sphere (phi, theta) that hold every intersection point of the
    family."""
    half = np.linspace(0.0, np.pi, n)
    across = np.linspace(-np.pi / 2.0, np.pi / 2.0, n)
    turn = 2.0 * np.pi * np.arange(n) / n
    if family == "trefoil":
        # tr Ba = -2 cos chi on L_2 and 0 on L_s; tr A = 0 on L_2
        disk = [(np.full(n, np.pi / 2.0), across)]
        sphere = [(half, np.full(n, t)) for t in (0.5 * np.pi, 1.5 * np.pi)]
    elif family == "unknot-lens":
        # L_2 is the P3 sheet gamma = psi; L_s meets P3 along gamma = 0
        disk = [(half, np.zeros(n))]
        sphere = [(half, np.full(n, t)) for t in (0.0, np.pi)]
    elif family == "simple-lens":
        # tr Ba = -2 cos p chi on L_2; tr Aa / tr Ab = -1 forces phi = pi/2
        disk = [(np.full(n, (k + 0.5) * np.pi / p), across)
                for k in range(p)]
        sphere = [(np.full(n, np.pi / 2.0), turn)]
    else:
        raise ValueError("unknown family %r" % family)
    return Locus(disk, sphere)


def _curve_step(profiles):
    """Largest profile distance between neighbours on a closed curve."""
    closed = np.concatenate([profiles, profiles[:1]], axis=0)
    return float(np.max(np.abs(np.diff(closed, axis=0))))


def locus_seeds(prob, locus, pool):
    """Seeds from 1D scans of the disk curves against the sphere curves."""
    p = prob.perturbation
    phi = np.concatenate([c[0] for c in locus.sphere])
    theta = np.concatenate([c[1] for c in locus.sphere])
    sphere_profiles = [sphere_traces(c[0], c[1], p) for c in locus.sphere]
    profiles = np.concatenate(sphere_profiles)
    tree = cKDTree(profiles)
    grid = SphereGrid(phi, theta, profiles, tree,
                      max(map(_curve_step, sphere_profiles)))
    word = prob.mcg_word

    def scan_curve(curve):
        chi, psi = curve
        profiles = disk_profile(chi, psi, word)
        dist, index = tree.query(profiles, p=np.inf)
        step = float(np.max(np.abs(np.diff(profiles, axis=0))))
        return DiskScan(chi, psi, profiles, dist, index, step)

    seeds = []
    for scan in pool.map(scan_curve, locus.disk):
        tau = scan.max_step + grid.max_step
        found = _collect_seeds(axis_minima(scan.dist, tau), scan, grid)
        LOGGER.debug("%d seeds on a locus curve below tau = %.3e",
                     len(found), tau)
        seeds.extend(found)
    LOGGER.info("%d seeds on %d locus curves", len(seeds), len(locus.disk))
    return seeds


# --- refinement ------------------------------------------------------------

def refine(seed, prob):
    """Gauss-Newton from a seed (chi, psi, phi, theta); returns the
    canonical (DiskCoord, SphereCoord, residual)."""
    word, p = prob.mcg_word, prob.perturbation
    chi, psi, phi, theta = seed
    params = [{"chi": chi, "psi": psi}, {"phi": phi, "theta": theta}]
    solver = DampedGaussNewton(tol=prob.newton_tol, max_iter=prob.max_iter)
    sol = solver.minimize(lambda x: _residual(x, word, p),
                          lambda x: _jacobian(x, word, p), params)
    if not sol.converged:
        raise NoConvergence("seed %s stalled at residual %.3e" % (
            np.round(seed, 4), float(np.max(np.abs(sol.residual)))))
    disk, sphere = sol.params
    d = canonical_disk(disk["chi"], disk["psi"])
    s = canonical_sphere(sphere["phi"], sphere["theta"])
    residual = objective(d, s, prob)
    if residual >= prob.match_tol:
        raise NoConvergence("canonical point off by %.3e" % residual)
    return d, s, residual


def _try_refine(seed, prob):
    try:
        return refine(seed, prob)
    except NoConvergence as e:
        LOGGER.debug("dropping seed: %s", e)
        return None


def double_point_profile():
    return trace_profile(from_chart(DOUBLE_POINT))


def is_near_double_point(s, p=PerturbationConfig()):
    """True when L_s(s) lies within DOUBLE_POINT_RADIUS of the double
    point in chart coordinates. The poles are its only preimages, and
    near them the chart coordinates move at unit rate in phi."""
    if min(s.phi, np.pi - s.phi) < DOUBLE_POINT_RADIUS:
        return True
    chart = sphere_chart(s.phi, s.theta, p)
    return chart.chart is Chart.P3 and \
        chart_distance(chart, DOUBLE_POINT) < DOUBLE_POINT_RADIUS


def transversality(pt, prob):
    """Verdict from the singular values of the (8, 4) tangent matrix."""
    phi = pt.sphere.phi
    if pt.near_double_point or min(phi, np.pi - phi) < POLE_MARGIN:
        return Verdict.INDETERMINATE
    res = TransversalityEvaluator.evaluate(tangent_matrix(pt, prob), 4)
    LOGGER.debug("transversality at %s: ratio %.3e", pt.disk, res["ratio"])
    return Verdict(res["verdict"])


def double_point_check(prob, scan=None):
    """Fit L_2 directly against the double point of L_s."""
    word = prob.mcg_word
    target = double_point_profile()
    if scan is None:
        chi_axis, psi_axis = disk_axes(prob.grid)
        chi, psi = np.meshgrid(chi_axis, psi_axis, indexing="ij")
        profiles = disk_profile(chi, psi, word)
        step = _max_step(profiles)
    else:
        chi, psi, profiles, step = scan.chi, scan.psi, scan.profiles, \
            scan.max_step
    dist = np.max(np.abs(profiles - target), axis=-1)
    solver = DampedGaussNewton(tol=prob.newton_tol, max_iter=prob.max_iter)
    best = DoublePointCheck(False, None, float(np.min(dist)))
    for i, j in local_minima(dist, step):
        params = [{"chi": chi[i, j], "psi": psi[i, j]}]
        sol = solver.minimize(
            lambda x: disk_profile(x[0]["chi"], x[0]["psi"], word) - target,
            lambda x: disk_jacobian(x[0]["chi"], x[0]["psi"], word),
            params)
        residual = float(np.max(np.abs(sol.residual)))
        if residual < best.residual:
            disk = canonical_disk(sol.params[0]["chi"], sol.params[0]["psi"])
            best = DoublePointCheck(residual < prob.match_tol, disk, residual)
        if best.hit:
            break
    LOGGER.info("double point check: %s (residual %.3e)",
                "hit" if best.hit else "clear", best.residual)
    return best


# --- family oracles --------------------------------------------------------

# rows of the trace profile: A, B, Aa, Ba, Ab, Bb, AB, ABa
_EXPECTED_PATTERNS = {
    "trefoil": ((0, 1, 0, 0), (0, 0, 1, 0)),
    "unknot-lens": ((0, 1, 0, 1), (0, 0, 0, 1)),
    "simple-lens": ((1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
}


def family_witness(pt, family, prob):
    """Derivatives of the family's distinguishing trace functions in
    (phi, theta | chi, psi) and whether they follow the expected
    zero / nonzero pattern."""
    if family not in _EXPECTED_PATTERNS:
        return None
    jac = tangent_matrix(pt, prob)
    if family == "trefoil":
        rows = [jac[0], jac[3]]
    elif family == "unknot-lens":
        rows = [jac[2], jac[3]]
    else:
        prof = sphere_traces(pt.sphere.phi, pt.sphere.theta,
                             prob.perturbation)
        tr_aa, tr_ab = prof[2], prof[4]
        # h1 = -tr Aa / tr Ab
        h1 = -(jac[2] * tr_ab - tr_aa * jac[4]) / tr_ab ** 2
        rows = [h1, jac[3], jac[1]]
    derivatives = np.array(rows)
    expected = np.array(_EXPECTED_PATTERNS[family], dtype=bool)
    matches = bool(np.array_equal(np.abs(derivatives) > WITNESS_TOL,
                                  expected))
    return Witness(derivatives, expected, matches)


def simple_knot_predicted_sites(p, eps):
    """((n + 1/2) pi / p, (-1)^(n+1) (pi/2 - eps)) with phi = pi/2."""
    if p < 0:
        raise ValueError("p must be >= 0")
    sites = []
    for n in range(p):
        chi = (n + 0.5) * np.pi / p
        psi = (-1) ** (n + 1) * (np.pi / 2.0 - eps)
        sites.append((DiskCoord(chi, psi), np.pi / 2.0))
    return sites


def sphere_distance(profile, p, grid=None):
    """Distance from a profile to L_s: nearest grid sample, then a least
    squares polish in (phi, theta)."""
    grid = sphere_grid(DEFAULT_GRID, p) if grid is None else grid
    dist, k = grid.tree.query(profile, p=np.inf)
    params = [{"phi": grid.phi[k], "theta": grid.theta[k]}]
    solver = DampedGaussNewton(tol=NEWTON_TOL, max_iter=50)
    sol = solver.minimize(
        lambda x: sphere_traces(x[0]["phi"], x[0]["theta"], p) - profile,
        lambda x: sphere_profile_jacobian(x[0]["phi"], x[0]["theta"], p),
        params)
    return min(float(dist), float(np.max(np.abs(sol.residual))))


def trefoil_p3_candidates(eps=0.1, grid=None):
    """The P3 points of L_d . f at chi = pi/2 and cos 3 psi = 0 for the
    trefoil word, with their distance from L_s."""
    p = PerturbationConfig(eps)
    grid = sphere_grid(DEFAULT_GRID, p) if grid is None else grid
    word = family_word("trefoil")
    out = []
    for psi in (np.pi / 6.0, -np.pi / 6.0, np.pi / 2.0, -np.pi / 2.0):
        rho = act(disk_rep(np.pi / 2.0, psi), word)
        out.append(Candidate(psi, to_chart(rho),
                             sphere_distance(trace_profile(rho), p, grid)))
    return out


# --- driver ----------------------------------------------------------------

def _assemble(d, s, residual, prob):
    pt = IntersectionPoint(
        disk=d, sphere=s,
        chart=sphere_chart(s.phi, s.theta, prob.perturbation),
        residual=residual, transverse=None,
        near_double_point=is_near_double_point(s, prob.perturbation))
    pt = pt._replace(transverse=transversality(pt, prob))
    family = prob.family_name
    if family is not None:
        pt = pt._replace(witness=family_witness(pt, family, prob))
    return pt


def solve(prob):
    """All points of L_s and L_d . f found at the grid resolution."""
    prob.check()
    word = prob.mcg_word
    timer = Timer("solve %s" % word)
    with timer, ThreadPoolExecutor(
            max_workers=worker_count(prob.threads)) as pool:
        match = prob.recognized if prob.seeding == "auto" else None
        if match is None:
            grid = sphere_grid(prob.grid, prob.perturbation)
            scan = scan_disk(prob, grid, pool)
            seeds = find_seeds(scan, grid)
        else:
            scan = None
            locus = family_locus(match.name, match.p,
                                 prob.grid * LOCUS_REFINEMENT)
            seeds = locus_seeds(prob, locus, pool)
        outcomes = list(pool.map(lambda s: _try_refine(s, prob), seeds))

    points, profiles = [], []
    dropped = sum(1 for o in outcomes if o is None)
    for d, s, residual in (o for o in outcomes if o is not None):
        profile = sphere_traces(s.phi, s.theta, prob.perturbation)
        if any(distance(profile, q) < prob.match_tol for q in profiles):
            continue
        profiles.append(profile)
        points.append(_assemble(d, s, residual, prob))
    points.sort(key=lambda pt: (pt.disk.chi, pt.disk.psi))
    if dropped:
        LOGGER.warning("%d of %d seeds did not converge", dropped,
                       len(seeds))

    check = double_point_check(prob, scan)
    flags = set()
    if check.hit or any(pt.near_double_point for pt in points):
        flags.add(Flag.DOUBLE_POINT_HIT)
    if any(pt.transverse is not Verdict.YES for pt in points):
        flags.add(Flag.NON_TRANSVERSE_POINT)

    if points:
        fit = ResidualEvaluator.evaluate(
            np.array([disk_profile(pt.disk.chi, pt.disk.psi, word)
                      for pt in points]),
            np.array([sphere_traces(pt.sphere.phi, pt.sphere.theta,
                                    prob.perturbation) for pt in points]))
        LOGGER.info("%d points, max residual %.3e", len(points),
                    fit["max_abs"])
    provenance = {
        "word": str(word),
        "epsilon": float(prob.perturbation.epsilon),
        "shape": prob.perturbation.shape.value,
        "grid": int(prob.grid),
        "seeding": "grid" if match is None else "family",
        "family": None if match is None else match.name,
        "seeds": len(seeds),
        "newton_tol": float(prob.newton_tol),
        "match_tol": float(prob.match_tol),
    }
    return IntersectionReport(points, flags, provenance, dropped, check)
