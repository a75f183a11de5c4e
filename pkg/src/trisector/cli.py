"""Command-line front end.

Exit codes: 0 all checks pass, 1 a certification check failed, 2 a budget
ran out on a required check, 3 invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import pipeline
from .family import ParameterPoint, boundary_split, node_points
from .groebner import DEFAULT_MAX_PAIR_REDUCTIONS, BudgetExceeded
from .infinity import DEFAULT_SERIES_ORDER, classify_branches, infinity_points, tangent_form
from .polyring import format_rational, rational

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3
STATUS_EXIT = {pipeline.PASS: EXIT_OK, pipeline.FAIL: EXIT_FAIL, pipeline.BUDGET: EXIT_BUDGET}

ENV_SEED = "TRISECTOR_SEED"
ENV_GB_BUDGET = "TRISECTOR_GB_BUDGET"
ENV_SERIES_ORDER = "TRISECTOR_SERIES_ORDER"
ENV_PARAMETRIC_BUDGET = "TRISECTOR_PARAMETRIC_BUDGET"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("%s\n%s" % (self.format_usage().rstrip(), message))


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    series_order: int = DEFAULT_SERIES_ORDER
    gb_budget: int = DEFAULT_MAX_PAIR_REDUCTIONS
    parametric_budget: int = pipeline.DEFAULT_PARAMETRIC_BUDGET
    extra_samples: int = pipeline.DEFAULT_EXTRA_SAMPLES
    out: str | None = None
    benchmarks: bool = False
    parametric: bool = False

    def __post_init__(self):
        if self.gb_budget <= 0 or self.parametric_budget <= 0:
            raise UsageError("budgets must be positive")
        if self.series_order < 8:
            raise UsageError("series order must be at least 8")
        if self.extra_samples < 0:
            raise UsageError("extra sample count must be non-negative")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError("environment variable %s must be an integer, got %r" % (name, raw))


def parse_rational(text: str):
    try:
        return rational(text.strip())
    except (ValueError, ZeroDivisionError, TypeError):
        raise UsageError("not a rational number: %r" % text)


def parse_witness(text: str) -> ParameterPoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("a witness is three comma-separated rationals k,R,t")
    k, R, t = (parse_rational(p) for p in parts)
    try:
        return ParameterPoint(k, R, t)
    except ValueError as exc:
        raise UsageError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (env %s)" % ENV_SEED)
    common.add_argument("--gb-budget", type=int, default=None, help="max pair reductions (env %s)" % ENV_GB_BUDGET)
    common.add_argument("--series-order", type=int, default=None, help="W-series order (env %s)" % ENV_SERIES_ORDER)

    parser = _Parser(prog="trisector", description="Exact transition-set certification for the line-line-circle trisector.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sub.add_parser("walls", parents=[common], help="derive the candidate walls")

    p = sub.add_parser("certify", parents=[common], help="certify the chamber of a witness")
    p.add_argument("--witness", required=True, help="k,R,t as rationals, e.g. 1/2,1,1")
    p.add_argument("--extra-samples", type=int, default=pipeline.DEFAULT_EXTRA_SAMPLES)

    p = sub.add_parser("infinity", parents=[common], help="analyse the point at infinity")
    p.add_argument("--witness", required=True, help="k,R,t as rationals")

    p = sub.add_parser("boundary", parents=[common], help="factor the curve on a wall")
    p.add_argument("--k", required=True, help="wall value, 0 or 1")
    p.add_argument("--R", required=True)
    p.add_argument("--t", required=True)

    p = sub.add_parser("bench", parents=[common], help="three-line control benchmarks")
    p.add_argument("--which", choices=("generic", "degenerate", "all"), default="all")

    p = sub.add_parser("report", parents=[common], help="full certification report")
    p.add_argument("--all", action="store_true", help="include the three-line benchmarks")
    p.add_argument("--parametric", action="store_true", help="attempt the parametric elimination")
    p.add_argument("--parametric-budget", type=int, default=None, help="env %s" % ENV_PARAMETRIC_BUDGET)
    p.add_argument("--extra-samples", type=int, default=pipeline.DEFAULT_EXTRA_SAMPLES)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--compare", help="compare with a saved JSON report; a mismatch counts as a failure")
    return parser


def _config(args) -> RunConfig:
    seed = args.seed if args.seed is not None else _env_int(ENV_SEED, 0)
    budget = args.gb_budget if args.gb_budget is not None else _env_int(ENV_GB_BUDGET, DEFAULT_MAX_PAIR_REDUCTIONS)
    order = args.series_order if args.series_order is not None else _env_int(ENV_SERIES_ORDER, DEFAULT_SERIES_ORDER)
    pbudget = getattr(args, "parametric_budget", None)
    if pbudget is None:
        pbudget = _env_int(ENV_PARAMETRIC_BUDGET, pipeline.DEFAULT_PARAMETRIC_BUDGET)
    return RunConfig(
        seed=seed,
        series_order=order,
        gb_budget=budget,
        parametric_budget=pbudget,
        extra_samples=getattr(args, "extra_samples", pipeline.DEFAULT_EXTRA_SAMPLES),
        out=getattr(args, "out", None),
        benchmarks=getattr(args, "all", False),
        parametric=getattr(args, "parametric", False),
    )


def _print_checks(title: str, checks: dict) -> None:
    print(title)
    for name in sorted(checks):
        c = checks[name]
        line = "  %-24s %s" % (name, c["status"])
        if "observed" in c and not isinstance(c["observed"], (dict, list)):
            line += "  (%s)" % c["observed"]
        print(line)


def cmd_walls(cfg: RunConfig, args) -> int:
    deriv = pipeline.candidate_walls()
    print("direction discriminant: %s" % deriv.direction_discriminant)
    print("closed form agrees:     %s" % deriv.closed_form_agrees)
    print("walls: %s" % ", ".join("k=%s" % format_rational(w) for w in deriv.walls))
    ok = deriv.closed_form_agrees and list(deriv.walls) == [0, 1]
    return EXIT_OK if ok else EXIT_FAIL


def _chamber_for(p: ParameterPoint) -> pipeline.Chamber:
    for ch in pipeline.enumerate_chambers():
        lo, hi = ch.k_interval
        inside = (lo is None or p.k > lo) and (hi is None or p.k < hi)
        if inside and ch.t_sign * p.t > 0:
            return pipeline.Chamber(ch.name, ch.k_interval, ch.t_sign, ch.mirror, p)
    raise UsageError("witness %s lies on a wall" % p)


def cmd_certify(cfg: RunConfig, args) -> int:
    p = parse_witness(args.witness)
    ch = _chamber_for(p)
    rep = pipeline.certify_chamber(ch, cfg.gb_budget, cfg.seed, cfg.series_order, cfg.extra_samples)
    print("chamber %s, witness %s" % (ch.name, p))
    cls = rep["checks"]["classification"]
    print("branch kind: %s" % cls.get("observed"))
    _print_checks("checks:", rep["checks"])
    print("extra samples: %s" % ", ".join(s["status"] for s in rep["samples"]))
    print("status: %s" % rep["status"])
    return STATUS_EXIT[rep["status"]]


def cmd_infinity(cfg: RunConfig, args) -> int:
    p = parse_witness(args.witness)
    if not p.admissible:
        raise UsageError("k must differ from 0 and 1 for the analysis at infinity")
    tf = tangent_form(p, cfg.series_order)
    b = classify_branches(p, cfg.series_order)
    inf = infinity_points(p, cfg.gb_budget)
    print("witness %s" % p)
    print("tangent form E = %s" % tf.form)
    print("discriminant = %s" % format_rational(tf.discriminant))
    print("branch kind: %s" % b.kind)
    if b.lambdas is not None:
        print("lambda = %s" % format_rational(b.lambdas[0]))
    if b.min_g is not None:
        print("min g = %s" % format_rational(b.min_g))
    print("point at infinity: %s" % ("[0:0:1:0]" if inf.unique_point else "not unique"))
    print("scheme degree: %s" % inf.scheme_degree)
    ok = inf.unique_point and inf.scheme_degree == 8 and inf.x4_in_ideal
    return EXIT_OK if ok else EXIT_FAIL


def cmd_boundary(cfg: RunConfig, args) -> int:
    k = parse_rational(args.k)
    if k not in (0, 1):
        raise UsageError("--k must be 0 or 1")
    R, t = parse_rational(args.R), parse_rational(args.t)
    try:
        split = boundary_split(k, R, t)
    except ValueError as exc:
        raise UsageError(str(exc))
    nodes = node_points(split)
    print("k=%s: P_a = %s" % (format_rational(k), split.P_a))
    print("      P_b = %s" % split.P_b)
    print("product identity: %s" % ("exact" if split.identity_holds else "FAILED"))
    for n in nodes:
        print("node (%s): residuals %s, |det| = %s" % (
            ", ".join(format_rational(x) for x in n.point),
            [format_rational(r) for r in n.residuals],
            format_rational(abs(n.gradient_determinant)),
        ))
    return EXIT_OK


def cmd_bench(cfg: RunConfig, args) -> int:
    section = pipeline.benchmarks_section(cfg.seed, cfg.gb_budget)
    wanted = {"generic": ["three_line_generic"], "degenerate": ["three_line_degenerate"]}.get(
        args.which, ["three_line_generic", "three_line_degenerate"]
    )
    for name in wanted:
        c = section[name]
        print("%s: %s" % (name, c["status"]))
        for key, val in sorted((c.get("observed") or {}).items()):
            print("  %s = %s" % (key, val))
    return STATUS_EXIT[pipeline.combine_statuses([section[n] for n in wanted])]


def cmd_report(cfg: RunConfig, args) -> int:
    golden = None
    if args.compare:
        try:
            with open(args.compare) as fh:
                golden = pipeline.CertificationReport.from_json(fh.read())
        except (OSError, ValueError, TypeError) as exc:
            raise UsageError("cannot read report %s: %s" % (args.compare, exc))
    report = pipeline.assemble_transition_report(
        seed=cfg.seed,
        gb_budget=cfg.gb_budget,
        series_order=cfg.series_order,
        benchmarks=cfg.benchmarks,
        parametric=cfg.parametric,
        parametric_budget=cfg.parametric_budget,
        extra_samples=cfg.extra_samples,
    )
    text = report.to_json()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    print("Sigma = {%s}" % ", ".join("k=%s" % format_rational(pipeline.decode(v)) for v in report.walls["values"]))
    for ch in report.chambers:
        print("chamber %-12s %s" % (ch["name"], ch["status"]))
    for b in report.boundaries:
        print("boundary k=%-4s %s" % (format_rational(pipeline.decode(b["k"])), b["status"]))
    if report.benchmarks:
        for name in ("three_line_generic", "three_line_degenerate"):
            print("benchmark %-22s %s" % (name, report.benchmarks[name]["status"]))
    if "parametric" in report.walls:
        print("parametric elimination: %s" % report.walls["parametric"]["status"])
    print("status: %s" % report.status)
    code = report.exit_code
    if golden is not None:
        same = golden.to_json() == text
        print("matches %s: %s" % (args.compare, same))
        if not same and code == EXIT_OK:
            code = EXIT_FAIL
    return code


COMMANDS = {
    "walls": cmd_walls,
    "certify": cmd_certify,
    "infinity": cmd_infinity,
    "boundary": cmd_boundary,
    "bench": cmd_bench,
    "report": cmd_report,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())
