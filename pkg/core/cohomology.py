"""Constrained group cohomology H^1_c(G; Ad rho).

A presentation lists generators, relation words and scalar constraint
functions. Deforming every generator as rho_t(s) = exp(t eta_s) rho(s)
and differentiating the relations and constraints at t = 0 gives a
linear map c on su(2)^n; its kernel is the cocycle space Z^1_c and the
conjugation directions u - Ad_rho(s) u span the coboundaries B^1_c.

Presentations can be written in a small line-based text format:

    gens a A B h
    rel - h a B h^-1 B^-1 a^-1
    con tr(a)
    con eps*trx(h^-1 A) + -1*trx(B)

`gens` declares generator names, `rel [-] WORD` asks for (-1 if signed)
rho(WORD) = 1, and `con TERM + TERM ...` asks for a sum of terms to
vanish. A term is `[COEF*][eps[^K]*]tr[AXIS](WORD)[^P]`; `tr` is the
trace and `trx`, `try`, `trz` are the real trace pairings with the Pauli
matrices. Lines starting with `#` are comments.
"""

import logging
import re
from collections import Counter
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

import core.ops as ops
from core.char_variety import RepTuple
from core.errors import InvalidBasepoint
from core.errors import ParseError
from core.initializer import DiskCoordInit
from core.initializer import SphereCoordInit
from core.lagrangians import PerturbationConfig
from core.lagrangians import Shape
from core.lagrangians import disk_rep
from core.lagrangians import sphere_rep_family
from core.su2 import AXES
from core.su2 import ONE
from core.su2 import SU2Element
from core.su2 import adjoint_matrix
from core.su2 import exp
from core.su2 import trace_pair
from utils.data_iterator import worker_count

LOGGER = logging.getLogger(__name__)

BASEPOINT_TOL = 1e-8
RANK_TOL = 1e-7
RANK_FLOOR = 1e-12
TAYLOR_STEP = 1e-3
FD_STEP = 1e-5

Letter = namedtuple("Letter", ["gen", "exponent"])
Relation = namedtuple("Relation", ["word", "sign", "text"])
Term = namedtuple("Term", ["word", "axis", "power", "coef", "eps_order"])
Constraint = namedtuple("Constraint", ["terms", "text"])

_LETTER_RE = re.compile(r"^([A-Za-z]\w*)(?:\^([+-]?\d+))?$")
_TERM_RE = re.compile(
    r"^\s*(?:(?P<coef>[+-]?\d+(?:\.\d*)?)\s*\*\s*)?"
    r"(?:(?P<eps>eps)(?:\^(?P<order>\d+))?\s*\*\s*)?"
    r"tr(?P<axis>[xyz])?\s*\((?P<word>[^()]*)\)"
    r"(?:\^(?P<power>\d+))?\s*$")


def trace_constraint(word, power=1, coef=1.0, eps_order=0):
    """coef eps^eps_order (tr rho(word))^power = 0."""
    return Constraint((Term(word, None, power, coef, eps_order),),
                      "tr(%s)" % word_text(word))


def trace_pair_constraint(word, axis, coef=1.0, eps_order=0):
    """coef eps^eps_order tr_axis(rho(word)) = 0."""
    return Constraint((Term(word, axis, 1, coef, eps_order),),
                      "tr%s(%s)" % (axis, word_text(word)))


def perturbation_constraint(lam, mu, axis):
    """eps tr_axis(rho(lam)) - tr_axis(rho(mu)) = 0."""
    terms = (Term(lam, axis, 1, 1.0, 1), Term(mu, axis, 1, -1.0, 0))
    return Constraint(terms, "eps*tr%s(%s) + -1*tr%s(%s)" % (
        axis, word_text(lam), axis, word_text(mu)))


def word_text(word):
    return " ".join(l.gen if l.exponent == 1 else "%s^%d" % l for l in word)


def parse_relator(text, generators=None, offset=0):
    """Parse `x y^-1 z^2` into a tuple of Letters."""
    letters = []
    for match in re.finditer(r"\S+", text):
        token = _LETTER_RE.match(match.group(0))
        if token is None or (generators is not None and
                             token.group(1) not in generators):
            raise ParseError("unknown letter %r" % match.group(0),
                             offset + match.start())
        exponent = 1 if token.group(2) is None else int(token.group(2))
        if exponent != 0:
            letters.append(Letter(token.group(1), exponent))
    return tuple(letters)


def _parse_term(text, generators, offset):
    match = _TERM_RE.match(text)
    if match is None:
        raise ParseError("malformed constraint term %r" % text.strip(),
                         offset)
    word = parse_relator(match.group("word"), generators,
                         offset + match.start("word"))
    coef = 1.0 if match.group("coef") is None else float(match.group("coef"))
    order = 0
    if match.group("eps") is not None:
        order = 1 if match.group("order") is None else int(
            match.group("order"))
    power = 1 if match.group("power") is None else int(match.group("power"))
    return Term(word, match.group("axis"), power, coef, order)


def parse_presentation(text):
    generators = None
    relations, constraints = [], []
    position = 0
    for line in text.splitlines(True):
        start = position
        position += len(line)
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        head, _, rest = body.partition(" ")
        base = start + line.index(body) + len(head) + 1
        if head == "gens":
            generators = tuple(rest.split())
            continue
        if generators is None:
            raise ParseError("`gens` must come first", start)
        if head == "rel":
            sign = 1.0
            stripped = rest.lstrip()
            if stripped.startswith("-"):
                sign = -1.0
                base += len(rest) - len(stripped) + 1
                rest = stripped[1:]
            relations.append(Relation(parse_relator(rest, generators, base),
                                      sign, rest.strip()))
        elif head == "con":
            terms, cursor = [], base
            for chunk in rest.split("+"):
                terms.append(_parse_term(chunk, generators, cursor))
                cursor += len(chunk) + 1
            constraints.append(Constraint(tuple(terms), rest.strip()))
        else:
            raise ParseError("unknown directive %r" % head, start)
    if generators is None:
        raise ParseError("no `gens` line", 0)
    return ConstrainedPresentation(generators, relations, constraints)


class ConstrainedPresentation(object):

    def __init__(self, generators, relations=(), constraints=()):
        self.generators = tuple(generators)
        self.relations = tuple(
            r if isinstance(r, Relation) else Relation(tuple(r), 1.0, "")
            for r in relations)
        self.constraints = tuple(constraints)
        self._index = {g: k for k, g in enumerate(self.generators)}
        if len(self._index) != len(self.generators):
            raise ValueError("repeated generator in %s" % (self.generators,))
        words = [r.word for r in self.relations]
        words += [t.word for c in self.constraints for t in c.terms]
        for word in words:
            for letter in word:
                if letter.gen not in self._index:
                    raise ValueError("undeclared generator %r" % letter.gen)

    @property
    def n(self):
        return len(self.generators)

    @property
    def m(self):
        return len(self.relations)

    @property
    def q(self):
        return len(self.constraints)

    def index(self, gen):
        return self._index[gen]

    def relation_values(self, rho):
        values = []
        for r in self.relations:
            value = evaluate_word(r.word, rho)
            values.append(value if r.sign > 0 else -value)
        return values

    def constraint_values(self, rho, eps=0.0):
        values = np.zeros(self.q)
        for k, con in enumerate(self.constraints):
            for term in con.terms:
                f = _term_function(evaluate_word(term.word, rho), term.axis)
                values[k] += (term.coef * eps ** term.eps_order *
                              f ** term.power)
        return values


class LinearizedMap(object):
    """The matrix of c : su(2)^n -> su(2)^m + R^q; `c1` holds the first
    order term when the map comes from an eps expansion."""

    def __init__(self, matrix, c1=None):
        self.matrix = np.asarray(matrix, dtype=float)
        self.c1 = None if c1 is None else np.asarray(c1, dtype=float)
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("linearized map has non-finite entries")

    @property
    def c0(self):
        return self.matrix

    @property
    def shape(self):
        return self.matrix.shape

    def rank(self):
        return matrix_rank(self.matrix)

    def nullity(self):
        return self.matrix.shape[1] - self.rank()

    def kernel(self):
        return kernel_basis(self.matrix)


def matrix_rank(m, rel_tol=RANK_TOL):
    """Count singular values above rel_tol * sigma_max."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    cutoff = max(rel_tol * s[0], RANK_FLOOR)
    return int(np.sum(s > cutoff))


def kernel_basis(m, rel_tol=RANK_TOL):
    """Orthonormal kernel basis as columns."""
    m = np.asarray(m, dtype=float)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(cols)
    _, _, vt = np.linalg.svd(m)
    return vt[matrix_rank(m, rel_tol):].T.reshape(cols, -1)


def assignment(rho):
    """Generator assignment from a RepTuple or a mapping."""
    if isinstance(rho, RepTuple):
        return {k: v for k, v in rho._asdict().items() if v is not None}
    return {k: v if isinstance(v, SU2Element) else SU2Element(v)
            for k, v in dict(rho).items()}


def evaluate_word(word, rho):
    out = ONE
    for letter in word:
        g = rho[letter.gen]
        g = g if letter.exponent > 0 else g.inv
        for _ in range(abs(letter.exponent)):
            out = out * g
    return out


def _term_function(g, axis):
    return g.trace if axis is None else trace_pair(g, axis)


def word_differential(pres, word, rho):
    """3 x 3n matrix D with d/dt rho_t(word) rho(word)^-1 = D eta."""
    out = np.zeros((3, 3 * pres.n))
    prefix = ONE
    for letter in word:
        k = 3 * pres.index(letter.gen)
        g = rho[letter.gen]
        for _ in range(abs(letter.exponent)):
            if letter.exponent > 0:
                out[:, k:k + 3] += adjoint_matrix(prefix)
                prefix = prefix * g
            else:
                prefix = prefix * g.inv
                out[:, k:k + 3] -= adjoint_matrix(prefix)
    return out


def _term_row(pres, term, rho, eps):
    g = evaluate_word(term.word, rho)
    d = word_differential(pres, term.word, rho)
    if term.axis is None:
        row = -2.0 * g.vec @ d
        f = g.trace
    else:
        i = AXES[term.axis]
        row = 2.0 * (float(g.c0) * np.eye(3) + ops.skew_(g.vec))[i] @ d
        f = trace_pair(g, i)
    scale = term.coef * eps ** term.eps_order * term.power
    return scale * f ** (term.power - 1) * row


def check_basepoint(pres, rho, eps=0.0, tol=BASEPOINT_TOL):
    missing = [g for g in pres.generators if g not in rho]
    if missing:
        raise InvalidBasepoint("no image for generators %s" % missing)
    for rel, value in zip(pres.relations, pres.relation_values(rho)):
        residual = float(np.max(np.abs(value.values - ONE.values)))
        if residual > tol:
            raise InvalidBasepoint("relation %s off by %.3e" % (
                rel.text or word_text(rel.word), residual))
    values = pres.constraint_values(rho, eps)
    for con, value in zip(pres.constraints, values):
        if abs(value) > tol:
            raise InvalidBasepoint("constraint %s off by %.3e" % (
                con.text, abs(value)))


def linearize(pres, rho, eps=0.0):
    """The map c at rho: relation blocks on top, constraint rows below."""
    rho = assignment(rho)
    check_basepoint(pres, rho, eps)
    rows = [word_differential(pres, r.word, rho) for r in pres.relations]
    for con in pres.constraints:
        row = np.zeros(3 * pres.n)
        for term in con.terms:
            row += _term_row(pres, term, rho, eps)
        rows.append(row[None, :])
    if not rows:
        return LinearizedMap(np.zeros((0, 3 * pres.n)))
    return LinearizedMap(np.concatenate(rows, axis=0))


def numeric_linearization(pres, rho, eps=0.0, step=FD_STEP):
    """Central differences of the relations and constraints."""
    rho = assignment(rho)
    columns = []
    for gen in pres.generators:
        for axis in np.eye(3):
            values = []
            for t in (step, -step):
                moved = dict(rho)
                moved[gen] = exp(axis, t) * rho[gen]
                rel = [v.vec for v in pres.relation_values(moved)]
                values.append(np.concatenate(
                    rel + [pres.constraint_values(moved, eps)]))
            columns.append((values[0] - values[1]) / (2.0 * step))
    return np.stack(columns, axis=-1)


def coboundaries(rho, generators=None):
    """Columns spanning u -> (u - Ad_rho(s) u)_s, shape (3n, 3)."""
    rho = assignment(rho)
    generators = tuple(rho) if generators is None else generators
    if not generators:
        return np.zeros((0, 3))
    blocks = [np.eye(3) - adjoint_matrix(rho[g]) for g in generators]
    return np.concatenate(blocks, axis=0)


def b1_dim(rho, generators=None):
    return matrix_rank(coboundaries(rho, generators))


def stabilizer_dim(rho, generators=None):
    """dim H^0: the Lie algebra of the stabilizer of rho."""
    return 3 - b1_dim(rho, generators)


def z1_dim(pres, rho, eps=0.0):
    return linearize(pres, rho, eps).nullity()


def h1_dim(pres, rho, eps=0.0):
    rho = assignment(rho)
    return z1_dim(pres, rho, eps) - b1_dim(rho, pres.generators)


def _as_family(family):
    if callable(family):
        return family
    rho = assignment(family)
    return lambda eps: rho


def linear_taylor(pres, family, step=TAYLOR_STEP):
    """c0 and c1 of c_eps = c0 + eps c1 + ..., with c1 from a five point
    stencil in eps. `family` maps eps to a basepoint, or is a single
    eps-independent basepoint."""
    family = _as_family(family)
    c = {}
    for k in (-2, -1, 0, 1, 2):
        eps = k * step
        c[k] = linearize(pres, family(eps), eps).matrix
    c1 = (8.0 * (c[1] - c[-1]) - (c[2] - c[-2])) / (12.0 * step)
    return LinearizedMap(c[0], c1)


def epsilon_bound(pres, family, step=TAYLOR_STEP):
    """dim(ker c0 & ker c1) + dim(c1(ker c0) & im c0).

    Both pieces together are the dimension of {w in ker c0 : c1 w in
    im c0}, which equals 3n - rank[c1 K | c0] for a kernel basis K.
    """
    split = linear_taylor(pres, family, step)
    kernel = split.kernel()
    if kernel.shape[1] == 0:
        return 0
    stacked = np.concatenate([split.c1 @ kernel, split.c0], axis=1)
    return 3 * pres.n - matrix_rank(stacked)


def taylor_chain(pres, family, eps, step=TAYLOR_STEP):
    """(dim Z^1 at eps, epsilon_bound, dim Z^1 at 0); the chain is
    non-decreasing."""
    family = _as_family(family)
    return (z1_dim(pres, family(eps), eps),
            epsilon_bound(pres, family, step),
            z1_dim(pres, family(0.0), 0.0))


# --- built-in presentations ------------------------------------------------

CYCLIC_EXAMPLES = {
    "linear": "gens t\ncon eps*tr(t)\n",
    "square": "gens t\ncon eps*tr(t)^2\n",
    "mixed": "gens t\ncon eps*tr(t)^2 + eps^2*tr(t)\n",
}

SOLID_TORUS = """\
# earring-free solid torus, a traceless meridian arc
gens A a
con tr(a)
"""

TORUS_TWO_PUNCT = """\
gens a A B
con tr(a)
con tr(A B A^-1 B^-1 a)
"""

PERTURBED_SOLID_TORUS = """\
# lambda_P = h^-1 A, mu_P = B
gens a A B h
rel - h a B h^-1 B^-1 a^-1
con tr(a)
con tr(h a^-1 h^-1)
con tr(h)
con eps*trx(h^-1 A) + -1*trx(B)
con eps*try(h^-1 A) + -1*try(B)
con eps*trz(h^-1 A) + -1*trz(B)
"""


def cyclic_example(kind):
    """G = Z with constraint eps tr, eps tr^2 or eps tr^2 + eps^2 tr."""
    return parse_presentation(CYCLIC_EXAMPLES[kind])


def cyclic_basepoint():
    return {"t": SU2Element([0.0, 0.0, 0.0, 1.0])}


def solid_torus_presentation():
    return parse_presentation(SOLID_TORUS)


def torus_two_punct_presentation():
    return parse_presentation(TORUS_TWO_PUNCT)


def perturbed_solid_torus_presentation():
    return parse_presentation(PERTURBED_SOLID_TORUS)


def sphere_family(phi, theta, generators=None):
    """eps -> tuple over L_s(phi, theta) for the algebraic perturbation
    shape, restricted to `generators`."""
    p = PerturbationConfig(0.0, Shape.ALGEBRAIC_ARCSINE)

    def family(eps):
        rho = assignment(sphere_rep_family(phi, theta, p, eps))
        if generators is None:
            return rho
        return {g: rho[g] for g in generators}
    return family


def _sweep_point(args):
    chi, psi, phi, theta, epsilon = args
    solid = solid_torus_presentation()
    torus = torus_two_punct_presentation()
    perturbed = perturbed_solid_torus_presentation()
    disk = assignment(disk_rep(chi, psi))
    disk = {g: disk[g] for g in solid.generators}
    torus_family = sphere_family(phi, theta, torus.generators)
    perturbed_family = sphere_family(phi, theta, perturbed.generators)
    return {
        "solid_torus_h1": h1_dim(solid, disk),
        "perturbed_h1": h1_dim(perturbed, perturbed_family(epsilon),
                               epsilon),
        "torus_h1": h1_dim(torus, torus_family(epsilon), epsilon),
        "perturbed_bound": epsilon_bound(perturbed, perturbed_family),
        "torus_bound": epsilon_bound(torus, torus_family),
    }


def regularity_sweep(samples=200, epsilon=0.1, workers=None):
    """Histograms {dimension: count} of H^1 and of the eps bound over
    random nonabelian disk points and random points of L_s."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    chi, psi = DiskCoordInit()((samples,))
    phi, theta = SphereCoordInit()((samples,))
    jobs = [(chi[k], psi[k], phi[k], theta[k], epsilon)
            for k in range(samples)]
    with ThreadPoolExecutor(max_workers=worker_count(workers)) as pool:
        results = list(pool.map(_sweep_point, jobs))
    report = {}
    for key in results[0]:
        report[key] = dict(Counter(r[key] for r in results))
        LOGGER.info("regularity %s: %s", key, report[key])
    return report
