"""Command-line front end: ``python -m distrel <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .census import (
    BACKENDS,
    SUBSET_ENUM_MAX_M,
    census,
    evaluate_reliability,
    evaluate_unreliability,
)
from .classes import ENUM_MAX_N, class_size, enumerate_class
from .errors import CapacityError, ConstructionInfeasible, DistrelError, PreconditionError
from .graph import construct_A, construct_G_counterexample, construct_H
from .polycmp import compare_on_unit_interval
from .search import (
    NEAR0,
    NEAR1,
    audit_near0_structure,
    class_censuses,
    filter_lexicographic,
    umrttg_decide,
    verify_crossing_witness,
    verify_N4_formula,
)
from .suites import DEFAULT_SEED, SUITES, run_suite
from .transforms import normalize_to_Tstar, st_swap, twin_terminals
from .ttgio import format_ttg, parse_graph

EXIT_OK, EXIT_VIOLATION, EXIT_CAPACITY, EXIT_USAGE = 0, 1, 2, 64

_RATIONAL = re.compile(r"^\s*\d+\s*(/\s*\d+\s*)?$")


class UsageError(Exception):
    pass


def parse_rho(text: str) -> Fraction:
    """Exact rational in [0, 1] written as ``p/q`` or an integer."""
    if not _RATIONAL.match(text):
        hint = ""
        if re.match(r"^\s*\d*\.\d+\s*$", text):
            approx = Fraction(text)
            hint = f"; write it as an exact fraction such as {approx.numerator}/{approx.denominator}"
        raise UsageError(f"rho must be an exact rational 'p/q', got {text!r}{hint}")
    try:
        value = Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise UsageError(f"rho {text!r} has a zero denominator") from None
    if not 0 <= value <= 1:
        raise UsageError(f"rho must lie in [0, 1], got {value}")
    return value


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class RunConfig:
    subcommand: str
    input: str | None = None
    output: str | None = None
    d: int | None = None
    n: int | None = None
    m: int | None = None
    rhos: list[Fraction] = field(default_factory=list)
    backend: str = "auto"
    workers: int = 1
    max_m: int = SUBSET_ENUM_MAX_M
    max_n: int = ENUM_MAX_N
    report_format: str = "text"
    seed: int = DEFAULT_SEED
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.workers < 1 or self.max_m < 1 or self.max_n < 1:
            raise UsageError("--workers and caps must be positive")
        if self.d is not None and self.d < 1:
            raise UsageError("--d must be positive")


# -- helpers -----------------------------------------------------------------------

def _read_graph(path: str | None):
    if path is None:
        raise UsageError("this subcommand needs --input (a TTG or JSON file, or '-' for stdin)")
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_graph(text)


def _need(cfg: RunConfig, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(cfg, name) is None]
    if missing:
        raise UsageError(f"{cfg.subcommand} needs {', '.join(missing)}")


def _census_table(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = list(rows)
    m = rows[0][1].m if rows else 0
    writer.writerow(["code"] + [f"N_{i}" for i in range(1, m + 1)])
    for code, C in rows:
        writer.writerow([str(code)] + [str(c) for c in C.counts])
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands -----------------------------------------------------------------------

def cmd_construct(cfg: RunConfig) -> tuple[int, str]:
    family = cfg.extra["family"]
    _need(cfg, "n")
    if family == "A":
        if cfg.extra.get("r") is None:
            raise UsageError("construct --family A needs --r")
        G = construct_A(cfg.n, cfg.extra["r"])
    elif family == "H":
        _need(cfg, "m")
        G = construct_H(cfg.n, cfg.m)
    else:
        _need(cfg, "m")
        G = construct_G_counterexample(cfg.n, cfg.m, cfg.extra.get("n_prime"))
    return EXIT_OK, format_ttg(G)


def cmd_census(cfg: RunConfig) -> tuple[int, str]:
    _need(cfg, "d")
    G = _read_graph(cfg.input)
    C = census(G, cfg.d, cfg.backend, max_m=cfg.max_m, workers=cfg.workers)
    if cfg.report_format == "json":
        return EXIT_OK, _dump(C.to_json())
    if cfg.report_format == "csv":
        return EXIT_OK, "i,N_i\n" + "".join(f"{i},{c}\n" for i, c in enumerate(C.counts, 1))
    return EXIT_OK, "".join(f"N_{i} = {c}\n" for i, c in enumerate(C.counts, 1))


def cmd_eval(cfg: RunConfig) -> tuple[int, str]:
    _need(cfg, "d")
    if not cfg.rhos:
        raise UsageError("eval needs at least one --rho")
    G = _read_graph(cfg.input)
    C = census(G, cfg.d, cfg.backend, max_m=cfg.max_m, workers=cfg.workers)
    rows = [(rho, evaluate_reliability(C, rho), evaluate_unreliability(C, rho)) for rho in cfg.rhos]
    if cfg.report_format == "json":
        return EXIT_OK, _dump([{"rho": frac(r), "R": frac(a), "U": frac(b)} for r, a, b in rows])
    if cfg.report_format == "csv":
        return EXIT_OK, "rho,R,U\n" + "".join(f"{frac(r)},{frac(a)},{frac(b)}\n" for r, a, b in rows)
    return EXIT_OK, "".join(f"rho = {frac(r)}: R = {frac(a)}, U = {frac(b)}\n" for r, a, b in rows)


def cmd_compare(cfg: RunConfig) -> tuple[int, str]:
    _need(cfg, "d")
    G = _read_graph(cfg.input)
    H = _read_graph(cfg.extra.get("other"))
    kw = dict(max_m=cfg.max_m, workers=cfg.workers)
    verdict = compare_on_unit_interval(census(G, cfg.d, cfg.backend, **kw),
                                       census(H, cfg.d, cfg.backend, **kw))
    out = verdict.to_json()
    if cfg.report_format == "json":
        return EXIT_OK, _dump(out)
    return EXIT_OK, "".join(f"{k}: {v}\n" for k, v in out.items())


def cmd_enumerate(cfg: RunConfig) -> tuple[int, str]:
    _need(cfg, "n", "m")
    if cfg.extra.get("count_only"):
        return EXIT_OK, f"{class_size(cfg.n, cfg.m, cfg.max_n)}\n"
    return EXIT_OK, "\n".join(format_ttg(G) for G in enumerate_class(cfg.n, cfg.m, cfg.max_n))


def cmd_transform(cfg: RunConfig) -> tuple[int, str]:
    G = _read_graph(cfg.input)
    op = cfg.extra["op"]
    if op == "st-swap":
        if cfg.extra.get("edge") is None:
            raise UsageError("transform --op st-swap needs --edge")
        H, cert = st_swap(G, cfg.extra["edge"])
    elif op == "twin":
        H, cert = twin_terminals(G)
    else:
        H, cert = normalize_to_Tstar(G)
    code = EXIT_OK if cert.verified or cert.noop else EXIT_VIOLATION
    if cfg.report_format == "json":
        return code, _dump({"graph": format_ttg(H), "certificate": cert.to_json()})
    return code, format_ttg(H)


def cmd_lmrttg(cfg: RunConfig) -> tuple[int, str]:
    _need(cfg, "n", "m", "d")
    members = class_censuses(cfg.n, cfg.m, cfg.d, workers=cfg.workers, max_n=cfg.max_n)
    survivors = filter_lexicographic(members, cfg.extra["direction"])
    if cfg.report_format == "csv":
        return EXIT_OK, _census_table(survivors)
    if cfg.report_format == "json":
        return EXIT_OK, _dump({"n": cfg.n, "m": cfg.m, "d": cfg.d,
                               "direction": cfg.extra["direction"],
                               "survivors": [str(c) for c, _ in survivors]})
    return EXIT_OK, "\n".join(format_ttg(c.graph()) for c, _ in survivors)


def cmd_umrttg(cfg: RunConfig) -> tuple[int, str]:
    _need(cfg, "n", "m", "d")
    report = umrttg_decide(cfg.n, cfg.m, cfg.d, workers=cfg.workers, max_n=cfg.max_n)
    if cfg.report_format == "csv":
        return EXIT_OK, _census_table(class_censuses(cfg.n, cfg.m, cfg.d, max_n=cfg.max_n))
    if cfg.report_format == "json":
        return EXIT_OK, _dump(report.to_json())
    lines = [f"class T_({cfg.n},{cfg.m}) at d={cfg.d}: {report.class_size} members",
             f"near-1 optima: {' '.join(report.lmrttg_near_1)}",
             f"near-0 optima: {' '.join(report.lmrttg_near_0)}",
             f"UMRTTG: {report.status}"]
    if report.winners:
        lines.append(f"winners: {' '.join(report.winners)}")
    if report.witness:
        lines.append(f"witness: {json.dumps(report.witness)}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _audit_output(cfg: RunConfig, report) -> tuple[int, str]:
    code = EXIT_OK if report.passed else EXIT_VIOLATION
    if cfg.report_format == "json":
        return code, _dump(report.to_json())
    lines = [f"{report.name}: {'PASS' if report.passed else 'FAIL'} ({report.checked} graphs checked)"]
    lines += report.violations
    return code, "\n".join(lines) + "\n"


def cmd_audit_near0(cfg: RunConfig) -> tuple[int, str]:
    _need(cfg, "n", "m", "d")
    return _audit_output(cfg, audit_near0_structure(cfg.n, cfg.m, cfg.d, workers=cfg.workers,
                                                    max_n=cfg.max_n))


def cmd_verify_n4(cfg: RunConfig) -> tuple[int, str]:
    _need(cfg, "n", "m")
    return _audit_output(cfg, verify_N4_formula(cfg.n, cfg.m, workers=cfg.workers, max_n=cfg.max_n))


def cmd_verify_crossing(cfg: RunConfig) -> tuple[int, str]:
    _need(cfg, "n", "m", "d")
    rho = cfg.rhos[0] if cfg.rhos else Fraction(1, 2)
    report = verify_crossing_witness(cfg.n, cfg.m, cfg.d, rho,
                                     n_prime=cfg.extra.get("n_prime"), workers=cfg.workers)
    code = EXIT_OK if report.holds else EXIT_VIOLATION
    if cfg.report_format == "json":
        return code, _dump(report.to_json())
    return code, "".join(f"{k}: {v}\n" for k, v in report.to_json().items())


def cmd_verify_suite(cfg: RunConfig) -> tuple[int, str]:
    result = run_suite(cfg.extra["suite"], cfg.seed, cfg.workers)
    code = EXIT_OK if result.passed else EXIT_VIOLATION
    if cfg.report_format == "json":
        return code, _dump(result.to_json())
    return code, "\n".join([result.summary()] + result.failures + result.notes) + "\n"


COMMANDS = {
    "construct": cmd_construct,
    "census": cmd_census,
    "eval": cmd_eval,
    "compare": cmd_compare,
    "enumerate": cmd_enumerate,
    "transform": cmd_transform,
    "lmrttg": cmd_lmrttg,
    "umrttg": cmd_umrttg,
    "audit-near0": cmd_audit_near0,
    "verify-n4": cmd_verify_n4,
    "verify-crossing": cmd_verify_crossing,
    "verify-suite": cmd_verify_suite,
}


# -- argument parsing ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", "-i")
    common.add_argument("--output", "-o")
    common.add_argument("--d", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--rho", action="append", default=[],
                        help="exact rational p/q; repeatable")
    common.add_argument("--backend", choices=BACKENDS, default="auto")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--max-m", type=int, default=SUBSET_ENUM_MAX_M,
                        help="largest m for subset enumeration")
    common.add_argument("--max-n", type=int, default=ENUM_MAX_N,
                        help="largest n for class enumeration")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = _Parser(prog="distrel", description="Exact diameter-constrained two-terminal reliability.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    p = sub.add_parser("construct", parents=[common], help="emit A, H or G family graphs")
    p.add_argument("--family", choices=("A", "H", "G"), required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--n-prime", type=int)
    sub.add_parser("census", parents=[common], help="pathset census of a graph")
    sub.add_parser("eval", parents=[common], help="exact R and U at given rho")
    p = sub.add_parser("compare", parents=[common], help="sign of R_G - R_H on [0, 1]")
    p.add_argument("--other", required=True, help="second graph file")
    p = sub.add_parser("enumerate", parents=[common], help="isomorph-free listing of T_(n,m)")
    p.add_argument("--count-only", action="store_true")
    p = sub.add_parser("transform", parents=[common], help="certified improving transforms")
    p.add_argument("--op", choices=("st-swap", "twin", "normalize"), default="normalize")
    p.add_argument("--edge", type=int, help="edge index removed by st-swap")
    p = sub.add_parser("lmrttg", parents=[common], help="lexicographic filtration survivors")
    p.add_argument("--direction", choices=(NEAR1, NEAR0), default=NEAR1)
    sub.add_parser("umrttg", parents=[common], help="decide UMRTTG existence in a class")
    sub.add_parser("audit-near0", parents=[common], help="near-0 structural audit")
    sub.add_parser("verify-n4", parents=[common], help="closed form for N_4 on universal terminals")
    p = sub.add_parser("verify-crossing", parents=[common], help="d >= 4 crossing witness")
    p.add_argument("--n-prime", type=int)
    p = sub.add_parser("verify-suite", parents=[common], help="run a named acceptance suite")
    p.add_argument("suite", choices=sorted(SUITES))
    return parser


_CONFIG_KEYS = {"input", "output", "d", "n", "m", "backend", "workers", "max_m", "max_n", "seed"}


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    rhos = [parse_rho(r) for r in args.pop("rho")]
    sub = args.pop("subcommand")
    fmt = args.pop("format")
    base = {k: args.pop(k) for k in list(args) if k in _CONFIG_KEYS}
    return RunConfig(sub, rhos=rhos, report_format=fmt, extra=args, **base)


def run(cfg: RunConfig) -> tuple[int, str]:
    return COMMANDS[cfg.subcommand](cfg)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        code, text = run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, ConstructionInfeasible) as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (PreconditionError, ValueError, DistrelError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code
