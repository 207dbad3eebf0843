"""Mapping class group MCG_2(T^2) and braid group B_2(T^2) acting on
R(T^2, 2).

A word is read left to right and acts on the right: the first letter is
applied first, and applying a letter substitutes new values for
(A, B, a, b) in terms of the old ones.
"""

import logging
import re
from collections import namedtuple

import numpy as np

from core.char_variety import RepTuple
from core.char_variety import distance
from core.errors import ParseError
from core.errors import RelationViolation
from core.initializer import AbelianTupleInit
from core.initializer import RepTupleInit

LOGGER = logging.getLogger(__name__)

RELATION_TOL = 1e-9

McgGen = namedtuple("McgGen", ["name", "exponent"])


def _ta(A, B, a, b):
    return A, B * A, a, b


def _ta_inv(A, B, a, b):
    return A, B * A.inv, a, b


def _tb(A, B, a, b):
    return A * B, B, a, b


def _tb_inv(A, B, a, b):
    return A * B.inv, B, a, b


def _t_big_a(A, B, a, b):
    return A, a * A * B, a, A * a * b * a.inv * A.inv


def _t_big_a_inv(A, B, a, b):
    return A, A.inv * a.inv * B, a, a.inv * A.inv * b * A * a


def _t_big_b(A, B, a, b):
    return a.inv * B * A, B, a, a.inv * B * b * B.inv * a


def _t_big_b_inv(A, B, a, b):
    return B.inv * a * A, B, a, B.inv * a * b * a.inv * B


def _omega(A, B, a, b):
    return (A.inv, B.inv, B.inv * A.inv * b * A * B,
            A.inv * B.inv * a * B * A)


def _alpha1(A, B, a, b):
    return (A, a.inv * B, A * a * A.inv,
            A * a.inv * A.inv * b * A * a * A.inv)


def _alpha1_inv(A, B, a, b):
    return A, A.inv * a * A * B, A.inv * a * A, a * b * a.inv


def _beta1(A, B, a, b):
    return a * A, B, B * a * B.inv, a * b * a.inv


def _beta1_inv(A, B, a, b):
    return (B.inv * a.inv * B * A, B, B.inv * a * B,
            B.inv * a.inv * B * b * B.inv * a * B)


def _alpha2(A, B, a, b):
    return A, a * b.inv * a.inv * B, a, A * a * b * a.inv * A.inv


def _alpha2_inv(A, B, a, b):
    return A, A.inv * b * A * B, a, a.inv * A.inv * b * A * a


def _beta2(A, B, a, b):
    return b * A, B, a, a.inv * B * b * B.inv * a


def _beta2_inv(A, B, a, b):
    return (B.inv * a * b.inv * a.inv * B * A, B, a,
            B.inv * a * b * a.inv * B)


def _sigma(A, B, a, b):
    return A, B, b, b.inv * a * b


def _sigma_inv(A, B, a, b):
    return A, B, a * b * a.inv, a


# letter -> (forward, inverse) substitutions
SUBSTITUTIONS = {
    "Ta": (_ta, _ta_inv),
    "Tb": (_tb, _tb_inv),
    "TA": (_t_big_a, _t_big_a_inv),
    "TB": (_t_big_b, _t_big_b_inv),
    "w": (_omega, _omega),
    "a1": (_alpha1, _alpha1_inv),
    "b1": (_beta1, _beta1_inv),
    "a2": (_alpha2, _alpha2_inv),
    "b2": (_beta2, _beta2_inv),
    "sg": (_sigma, _sigma_inv),
}

# s = Ta Tb^-1 Ta
COMPOSITES = {
    "s": (McgGen("Ta", 1), McgGen("Tb", -1), McgGen("Ta", 1)),
}

ALPHABET = tuple(SUBSTITUTIONS) + tuple(COMPOSITES)

TOKEN_RE = re.compile(r"^(Ta|Tb|TA|TB|w|s|a1|b1|a2|b2|sg)(?:\^([+-]?\d+))?$")


class McgWord(object):

    def __init__(self, gens=()):
        self._gens = tuple(McgGen(g.name, int(g.exponent)) for g in gens)

    @property
    def gens(self):
        return self._gens

    def __iter__(self):
        return iter(self._gens)

    def __len__(self):
        return len(self._gens)

    def __mul__(self, other):
        return McgWord(self._gens + other.gens)

    def __pow__(self, n):
        word = self if n >= 0 else self.inverse()
        return McgWord(word.gens * abs(int(n)))

    def __eq__(self, other):
        return isinstance(other, McgWord) and self._gens == other.gens

    def __hash__(self):
        return hash(self._gens)

    def __str__(self):
        tokens = []
        for g in self._gens:
            tokens.append(g.name if g.exponent == 1 else
                          "%s^%d" % (g.name, g.exponent))
        return " ".join(tokens)

    def __repr__(self):
        return "McgWord(%r)" % str(self)

    def inverse(self):
        return McgWord(McgGen(g.name, -g.exponent)
                       for g in reversed(self._gens))

    def expand(self):
        """Letters with composites spelled out and exponents unrolled."""
        letters = []
        for g in self._gens:
            base = COMPOSITES.get(g.name, (McgGen(g.name, 1),))
            if g.exponent < 0:
                base = McgWord(base).inverse().gens
            for _ in range(abs(g.exponent)):
                for letter in base:
                    letters.append(letter)
        return letters


def parse_word(text):
    gens = []
    for match in re.finditer(r"\S+", text):
        token = TOKEN_RE.match(match.group(0))
        if token is None:
            raise ParseError("unknown token %r" % match.group(0),
                             match.start())
        exponent = 1 if token.group(2) is None else int(token.group(2))
        gens.append(McgGen(token.group(1), exponent))
    return McgWord(gens)


def as_word(word):
    return word if isinstance(word, McgWord) else parse_word(word)


def act(rho, word):
    """rho . word; batched fields are acted on elementwise."""
    fields = (rho.A, rho.B, rho.a, rho.b)
    for letter in as_word(word).expand():
        forward, backward = SUBSTITUTIONS[letter.name]
        step = forward if letter.exponent > 0 else backward
        for _ in range(abs(letter.exponent)):
            fields = step(*fields)
    return RepTuple(*fields)


# --- relations -------------------------------------------------------------

RELATIONS = {
    "pmcg-1": ("Ta Tb^-1 Ta", "Tb^-1 Ta Tb^-1"),
    "pmcg-2": ("TA Tb^-1 TA", "Tb^-1 TA Tb^-1"),
    "pmcg-3": ("Ta TA", "TA Ta"),
    "pmcg-4": ("Tb^-1 Ta TA Tb^-1 Ta TA Tb^-1 Ta TA Tb^-1 Ta TA", ""),
    "pmcg-5": ("TB", "Ta TA^-1 Tb TA Ta^-1"),
    "omega-order": ("w w", ""),
}

BRAID_RELATIONS = {
    "alpha2": ("a2", "sg^-1 a1 sg^-1"),
    "beta2": ("b2", "sg b1 sg"),
    "alpha-commute": ("a1 a2", "a2 a1"),
    "beta-commute": ("b1 b2", "b2 b1"),
    "alpha1-beta1": ("b1^-1 a1^-1 b1 a1", "sg^2"),
    "alpha2-beta1": ("b1^-1 a2 b1 a2^-1", "sg^2"),
}

# push map delta, checked as actions
BIRMAN_IDENTITIES = {
    "delta-alpha1": ("a1", "Ta TA^-1"),
    "delta-alpha2": ("a2", "TA Ta^-1"),
    "delta-beta1": ("b1", "Tb TB^-1"),
    "delta-beta2": ("b2", "TB Tb^-1"),
    "delta-sigma": ("sg", "s s w"),
    "delta-sigma-squared": ("sg^2", "s s w s s w"),
    "homeo-loops-commute": ("a1 a2 b1 b2", "b1 b2 a1 a2"),
    "homeo-loop-alpha": ("a1 a2", ""),
    "homeo-loop-beta": ("b1 b2", ""),
}

# forgetful map g on the unpunctured torus
FORGET_IDENTITIES = {
    "g-TA": ("TA", "Ta"),
    "g-TB": ("TB", "Tb"),
    "g-omega": ("w", "s s"),
}


def relation_residual(rho, lhs, rhs):
    return float(np.max(distance(act(rho, lhs), act(rho, rhs))))


def _check_table(table, batch, tol, raise_on_failure):
    report = {}
    for name, (lhs, rhs) in table.items():
        residual = relation_residual(batch, lhs, rhs)
        report[name] = residual
        LOGGER.info("relation %s: max residual %.3e", name, residual)
        if residual >= tol and raise_on_failure:
            raise RelationViolation(name, residual)
    return report


def _sample(samples, sampler):
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if sampler is None:
        sampler = RepTupleInit()
    return sampler((samples,))


def verify_relations(samples=100, sampler=None, tol=RELATION_TOL,
                     raise_on_failure=True):
    """Max residual per relation of MCG_2(T^2) and B_2(T^2)."""
    batch = _sample(samples, sampler)
    report = _check_table(RELATIONS, batch, tol, raise_on_failure)
    report.update(_check_table(BRAID_RELATIONS, batch, tol,
                               raise_on_failure))
    return report


def birman_checks(samples=100, sampler=None, tol=RELATION_TOL,
                  raise_on_failure=True):
    batch = _sample(samples, sampler)
    report = _check_table(BIRMAN_IDENTITIES, batch, tol, raise_on_failure)
    report.update(forget_check(samples, tol=tol,
                               raise_on_failure=raise_on_failure))
    return report


def forget_check(samples=100, tol=RELATION_TOL, raise_on_failure=True):
    """On tuples with a = b = 1 and A, B commuting the forgetful images
    act the same way."""
    batch = _sample(samples, AbelianTupleInit())
    return _check_table(FORGET_IDENTITIES, batch, tol, raise_on_failure)


# --- SL(2, Z) image ---------------------------------------------------------

SL2Z_IMAGES = {
    "Ta": np.array([[1, 1], [0, 1]]),
    "Tb": np.array([[1, 0], [1, 1]]),
    "TA": np.array([[1, 1], [0, 1]]),
    "TB": np.array([[1, 0], [1, 1]]),
    "w": -np.eye(2, dtype=int),
}


def _sl2z_inverse(m):
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def sl2z_matrix(word):
    """Image in SL(2, Z); (alpha, beta) rows transform by right
    multiplication. Braid letters map to the identity."""
    out = np.eye(2, dtype=int)
    for letter in as_word(word).expand():
        m = SL2Z_IMAGES.get(letter.name, np.eye(2, dtype=int))
        if letter.exponent < 0:
            m = _sl2z_inverse(m)
        for _ in range(abs(letter.exponent)):
            out = out @ m
    return out


def verify_sl2z():
    eye = np.eye(2, dtype=int)
    s = sl2z_matrix("s")
    st = sl2z_matrix("s Tb")
    checks = {
        "s": bool(np.array_equal(s, np.array([[0, 1], [-1, 0]]))),
        "s^4": bool(np.array_equal(sl2z_matrix("s^4"), eye)),
        "(st)^3": bool(np.array_equal(st @ st @ st, s @ s)),
        "pmcg-4": bool(np.array_equal(
            sl2z_matrix(RELATIONS["pmcg-4"][0]), eye)),
        "omega": bool(np.array_equal(sl2z_matrix("w"),
                                     sl2z_matrix("s s"))),
    }
    for name, ok in checks.items():
        LOGGER.info("sl2z %s: %s", name, "ok" if ok else "FAILED")
    return checks
