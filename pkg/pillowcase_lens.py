"""pillowcase-lens: count intersections of L_s with L_d . f, run the
verification suites and draw the pillowcase pictures.

Exit codes: 0 clean, 1 parse or configuration error, 2 the count raised
DoublePointHit or NonTransversePoint or disagrees with its family, 3 a
verification suite failed.
"""

import argparse
import logging
import sys
from collections import namedtuple

from core.char_variety import RELATION_TOL
from core.cohomology import cyclic_basepoint
from core.cohomology import cyclic_example
from core.cohomology import epsilon_bound
from core.cohomology import regularity_sweep
from core.cohomology import z1_dim
from core.errors import ConfigError
from core.errors import ParseError
from core.errors import PerturbationTooLarge
from core.errors import RelationViolation
from core.intersect import DEFAULT_GRID
from core.intersect import FAMILIES
from core.intersect import MIN_GRID
from core.intersect import IntersectionProblem
from core.intersect import expected_count
from core.intersect import family_word
from core.intersect import match_family
from core.intersect import simple_knot_predicted_sites
from core.intersect import solve
from core.lagrangians import MAX_EPSILON
from core.lagrangians import PerturbationConfig
from core.lagrangians import double_point_check
from core.lagrangians import jacobian_consistency
from core.lagrangians import trace_consistency
from core.mcg import birman_checks
from core.mcg import parse_word
from core.mcg import verify_relations
from core.mcg import verify_sl2z
from utils.data_iterator import worker_count
from utils.report import CURVE_COLUMNS
from utils.report import FORMATS
from utils.report import curve_rows
from utils.report import is_degenerate
from utils.report import lagrangian_curves
from utils.report import output_path
from utils.report import plot_lagrangians
from utils.report import plot_report
from utils.report import report_dict
from utils.report import write_csv
from utils.report import write_json
from utils.report import write_points_csv
from utils.seeder import random_seed
from utils.timer import Timer

LOGGER = logging.getLogger("pillowcase_lens")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FLAGGED = 2
EXIT_VERIFY = 3

SUITES = ("mcg", "traces", "cohomology", "all")

TRACE_TOL = 1e-10
JACOBIAN_TOL = 1e-6
SITE_TOL = 1e-6

CYCLIC_EXPECTED = {"linear": (2, 2), "square": (3, 3), "mixed": (2, 3)}
CYCLIC_EPSILON = 0.1
EXPECTED_DIMS = {"solid_torus_h1": 2, "torus_h1": 4, "perturbed_h1": 2,
                 "perturbed_bound": 5, "torus_bound": 7}


class RunConfig(namedtuple(
        "RunConfig",
        ["command", "word", "family", "p", "epsilon", "grid", "seed", "out",
         "formats", "reproducible", "threads", "suite", "samples"],
        defaults=(None, None, 1, 0.1, DEFAULT_GRID, 0, ".", FORMATS, False,
                  None, "all", None))):

    __slots__ = ()

    def validate(self):
        if self.command not in ("count", "verify", "plot"):
            raise ConfigError("unknown command %r" % self.command)
        if not 0.0 < self.epsilon < MAX_EPSILON:
            raise ConfigError("epsilon must lie in (0, %g), got %g" % (
                MAX_EPSILON, self.epsilon))
        if self.p < 0:
            raise ConfigError("p must be >= 0, got %d" % self.p)
        if self.grid < MIN_GRID:
            raise ConfigError("grid must be >= %d, got %d" % (
                MIN_GRID, self.grid))
        if not 0 <= self.seed < 2 ** 32:
            raise ConfigError("seed out of range: %d" % self.seed)
        unknown = set(self.formats) - set(FORMATS)
        if unknown:
            raise ConfigError("unknown formats: %s" % ", ".join(
                sorted(unknown)))
        if self.word is not None and self.family is not None:
            raise ConfigError("--word and --family are exclusive")
        if self.family is not None and self.family not in FAMILIES:
            raise ConfigError("unknown family %r" % self.family)
        if self.command == "count" and self.word is None and \
                self.family is None:
            raise ConfigError("count needs --word or --family")
        if self.suite not in SUITES:
            raise ConfigError("unknown suite %r" % self.suite)
        if self.samples is not None and self.samples < 1:
            raise ConfigError("samples must be >= 1")
        worker_count(self.threads)
        return self

    @property
    def perturbation(self):
        return PerturbationConfig(self.epsilon)

    def mcg_word(self):
        if self.family is not None:
            return family_word(self.family, self.p)
        return parse_word(self.word)


# --- count -----------------------------------------------------------------

def _check_sites(report, p, epsilon):
    """Match simple-lens points against the predicted sites."""
    sites = simple_knot_predicted_sites(p, epsilon)
    if len(sites) != report.count:
        LOGGER.warning("expected %d sites, found %d points", len(sites),
                       report.count)
        return False
    ok = True
    for (disk, phi), pt in zip(sorted(sites), report.points):
        gap = max(abs(disk.chi - pt.disk.chi), abs(disk.psi - pt.disk.psi),
                  abs(phi - pt.sphere.phi))
        ok = ok and gap < SITE_TOL
        LOGGER.info("site chi = %.6f: gap %.3e", disk.chi, gap)
    return ok


def _check_family(report, config):
    """Compare the count, and for simple-lens the sites, with what the
    family of the word predicts; True when nothing disagrees."""
    match = match_family(config.mcg_word())
    if match is None:
        return True
    ok = True
    expected = expected_count(match.name, match.p)
    if expected is not None and expected != report.count:
        print("expected: %d (%s, p = %d)" % (expected, match.name, match.p))
        ok = False
    if match.name == "simple-lens":
        sites = _check_sites(report, match.p, config.epsilon)
        print("sites: %s" % ("match" if sites else "MISMATCH"))
        ok = ok and sites
    return ok


def _intersect(config):
    prob = IntersectionProblem(config.mcg_word(), config.perturbation,
                               config.grid, threads=config.threads,
                               family=config.family)
    return solve(prob)


def cmd_count(config):
    report = _intersect(config)
    if "json" in config.formats:
        write_json(output_path(config.out, "count", "json"),
                   report_dict(report, config.seed))
    if "csv" in config.formats:
        write_points_csv(output_path(config.out, "count", "csv"), report)
    if "svg" in config.formats:
        plot_report(output_path(config.out, "count", "svg"), report,
                    config.perturbation, config.reproducible)

    print("count: %d" % report.count)
    for pt in report.points:
        print("  chi=%.6f psi=%.6f phi=%.6f theta=%.6f %s %s" % (
            pt.disk.chi, pt.disk.psi, pt.sphere.phi, pt.sphere.theta,
            pt.chart.chart.value, pt.transverse.value))
    consistent = _check_family(report, config)
    for flag in sorted(f.value for f in report.flags):
        print("flag: %s" % flag)
    return EXIT_FLAGGED if report.flags or not consistent else EXIT_OK


# --- verify ----------------------------------------------------------------

def _verify_mcg(config):
    samples = config.samples or 100
    report = verify_relations(samples, raise_on_failure=False)
    report.update(birman_checks(samples, raise_on_failure=False))
    failures = []
    for name, residual in report.items():
        print("%s: %.3e" % (name, residual))
        if not residual < RELATION_TOL:
            failures.append(name)
    for name, ok in verify_sl2z().items():
        print("sl2z %s: %s" % (name, "ok" if ok else "FAILED"))
        if not ok:
            failures.append("sl2z " + name)
    return failures


def _verify_traces(config):
    failures = []
    for eps, gap in trace_consistency(config.samples or 10 ** 4).items():
        print("closed form vs matrix traces, eps=%g: %.3e" % (eps, gap))
        if not gap < TRACE_TOL:
            failures.append("traces eps=%g" % eps)
    gap = jacobian_consistency(config.samples or 10 ** 3,
                               config.perturbation)
    print("jacobian vs finite differences: %.3e" % gap)
    if not gap < JACOBIAN_TOL:
        failures.append("jacobian")
    ok = double_point_check(config.perturbation)
    print("double point at both poles: %s" % ("ok" if ok else "FAILED"))
    if not ok:
        failures.append("double point")
    return failures


def _dims(histogram):
    if len(histogram) == 1:
        return str(next(iter(histogram)))
    return str(dict(sorted(histogram.items())))


def _verify_cohomology(config):
    failures = []
    for kind, expected in CYCLIC_EXPECTED.items():
        pres = cyclic_example(kind)
        got = (z1_dim(pres, cyclic_basepoint(), CYCLIC_EPSILON),
               epsilon_bound(pres, cyclic_basepoint()))
        print("cyclic %s: Z1 %d, bound %d" % ((kind,) + got))
        if got != expected:
            failures.append("cyclic " + kind)
    sweep = regularity_sweep(config.samples or 200, config.epsilon,
                             config.threads)
    print("H1 dims: %s, %s; bounds: %s, %s" % (
        _dims(sweep["solid_torus_h1"]), _dims(sweep["torus_h1"]),
        _dims(sweep["perturbed_bound"]), _dims(sweep["torus_bound"])))
    for key, expected in EXPECTED_DIMS.items():
        if set(sweep[key]) != {expected}:
            failures.append(key)
    return failures


VERIFIERS = {"mcg": _verify_mcg, "traces": _verify_traces,
             "cohomology": _verify_cohomology}


def cmd_verify(config):
    suites = list(VERIFIERS) if config.suite == "all" else [config.suite]
    failures = []
    for suite in suites:
        with Timer("verify " + suite):
            failures.extend(_verify_suite(suite, config))
    if failures:
        print("FAILED: %s" % ", ".join(failures))
        return EXIT_VERIFY
    print("all checks passed")
    return EXIT_OK


def _verify_suite(suite, config):
    try:
        return VERIFIERS[suite](config)
    except RelationViolation as e:
        return ["%s (%s)" % (suite, e)]


# --- plot ------------------------------------------------------------------

def cmd_plot(config):
    p = config.perturbation
    curves = None
    if "svg" in config.formats:
        curves = plot_lagrangians(output_path(config.out, "lagrangians",
                                              "svg"), p, config.reproducible)
    if "csv" in config.formats:
        curves = curves or lagrangian_curves(p)
        write_csv(output_path(config.out, "lagrangians", "csv"),
                  curve_rows(curves), CURVE_COLUMNS)
    if curves is not None and is_degenerate(curves):
        print("degenerate: L_s arcs lie on beta = 0")
    if config.word is not None or config.family is not None:
        report = _intersect(config)
        if "svg" in config.formats:
            plot_report(output_path(config.out, "intersections", "svg"),
                        report, p, config.reproducible)
    return EXIT_OK


COMMANDS = {"count": cmd_count, "verify": cmd_verify, "plot": cmd_plot}


# --- entry point -----------------------------------------------------------

class ArgumentParser(argparse.ArgumentParser):
    """Usage errors raise ConfigError instead of exiting with status 2."""

    def error(self, message):
        raise ConfigError(message)


def _formats(text):
    return tuple(f.strip() for f in text.split(",") if f.strip())


def build_parser():
    common = ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--word", type=str, default=None,
                        help="mapping class word, e.g. 's b1 a1^-1'")
    source.add_argument("--family", type=str, default=None,
                        choices=FAMILIES)
    common.add_argument("--p", type=int, default=1)
    common.add_argument("--epsilon", type=float, default=0.1)
    common.add_argument("--grid", type=int, default=DEFAULT_GRID)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=str, default=".")
    common.add_argument("--format", type=_formats, default=FORMATS,
                        dest="formats", help="comma separated: csv,svg,json")
    common.add_argument("--reproducible", action="store_true")
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("-q", "--quiet", action="store_true")

    parser = ArgumentParser(prog="pillowcase-lens")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("count", parents=[common])
    verify = commands.add_parser("verify", parents=[common])
    verify.add_argument("suite", nargs="?", default="all", choices=SUITES)
    commands.add_parser("plot", parents=[common])
    return parser


def _setup_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def config_from_args(args):
    return RunConfig(command=args.command, word=args.word,
                     family=args.family, p=args.p, epsilon=args.epsilon,
                     grid=args.grid, seed=args.seed, out=args.out,
                     formats=args.formats, reproducible=args.reproducible,
                     threads=args.threads,
                     suite=getattr(args, "suite", "all"),
                     samples=args.samples)


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    _setup_logging(args)
    try:
        config = config_from_args(args).validate()
        random_seed(config.seed)
        with Timer(config.command):
            return COMMANDS[config.command](config)
    except (ParseError, ConfigError, PerturbationTooLarge) as e:
        LOGGER.error("%s: %s", type(e).__name__, e)
        print("error: %s" % e, file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
