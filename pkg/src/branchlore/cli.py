"""Command-line front end: ``analyze``, ``simulate``, ``sweep`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .analysis import analyze, build_predictor_product
from .automata import build_comparison_transducer, build_guard_transducer, build_prefix_automaton, to_dot
from .borders import Variant
from .markov import chain_to_dot
from .predictor import parse_state
from .simulator import BRANCHES, monte_carlo
from .text_model import (
    Alphabet,
    ModelError,
    Pattern,
    SymbolDistribution,
    make_distribution,
    uniform_distribution,
)
from . import verify as verify_mod

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def fmt(x: float) -> str:
    return format(x, ".12g")


def num(x):
    """Round to 12 significant digits for serialization."""
    if x is None:
        return None
    return float(fmt(x))


def parse_probs(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ModelError(f"cannot parse probabilities {text!r}") from None


def parse_grid(text: str) -> list[float]:
    try:
        start, stop, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise ModelError(f"grid must look like start:stop:step, got {text!r}") from None
    if step <= 0:
        raise ModelError("grid step must be positive")
    points = []
    k = 0
    while True:
        p = round(start + k * step, 12)
        if p > stop + 1e-12:
            break
        points.append(p)
        k += 1
    if not points:
        raise ModelError(f"grid {text!r} is empty")
    for p in points:
        if not 0.0 < p < 1.0:
            raise ModelError(f"grid point {p} lies outside (0, 1)")
    return points


def _model(args) -> tuple[Pattern, SymbolDistribution]:
    alphabet = Alphabet(args.alphabet)
    pattern = Pattern(args.pattern, alphabet)
    if args.uniform:
        dist = uniform_distribution(alphabet)
    else:
        dist = make_distribution(alphabet, parse_probs(args.probs))
    return pattern, dist


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pattern", required=True)
    p.add_argument("--alphabet", required=True, help="symbols as one string, e.g. ab")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--probs", help="comma-separated symbol probabilities")
    src.add_argument("--uniform", action="store_true")
    p.add_argument("--variant", choices=[v.value for v in Variant], required=True)


def _emit_dot(directory: Path, pattern: Pattern, dist: SymbolDistribution, variant: Variant) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    cmp = build_comparison_transducer(pattern, variant)
    files = {
        "prefix_automaton.dot": to_dot(build_prefix_automaton(pattern)),
        f"comparison_{variant.value}.dot": to_dot(cmp),
        f"guard_{variant.value}.dot": to_dot(build_guard_transducer(cmp)),
        f"product_{variant.value}.dot": chain_to_dot(
            build_predictor_product(pattern, dist, variant), f"product_{variant.value}"
        ),
    }
    for name, text in files.items():
        (directory / name).write_text(text)


def cmd_analyze(args) -> int:
    pattern, dist = _model(args)
    variant = Variant.parse(args.variant)
    report = analyze(pattern, dist, variant)
    out = report.to_dict()
    out["probs"] = [num(p) for p in out["probs"]]
    out["rates"] = {k: num(v) for k, v in out["rates"].items()}
    out["expected_comparisons"] = num(out["expected_comparisons"])
    print(json.dumps(out, indent=2))
    if args.emit_dot:
        _emit_dot(Path(args.emit_dot), pattern, dist, variant)
    return EXIT_OK


def _parse_init_states(items, bits: int) -> dict:
    states = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or name not in BRANCHES:
            raise ModelError(f"--init-state expects BRANCH=STATE with BRANCH in {', '.join(BRANCHES)}")
        try:
            states[name] = parse_state(value, bits)
        except ValueError as exc:
            raise ModelError(str(exc)) from None
    return states


def cmd_simulate(args) -> int:
    pattern, dist = _model(args)
    variant = Variant.parse(args.variant)
    if args.text_len < 1:
        raise ModelError("--text-len must be at least 1")
    if args.trials < 1:
        raise ModelError("--trials must be at least 1")
    init = _parse_init_states(args.init_state, args.bits)
    emp = monte_carlo(pattern, dist, variant, args.text_len, args.trials, args.seed, init, args.bits)
    analytic = analyze(pattern, dist, variant).rates() if args.bits == 2 else {}
    analytic["mainloop"] = 0.0
    branches = {}
    for b in BRANCHES:
        a = analytic.get(b)
        entry = {
            "analytic": num(a),
            "empirical_mean": num(emp.mean[b]),
            "stderr": num(emp.stderr[b]),
            "abs_diff": num(abs(emp.mean[b] - a)) if a is not None else None,
        }
        if b == "mainloop":
            entry["max_count"] = max(emp.counts(b))
            entry["counts"] = emp.counts(b)
        branches[b] = entry
    out = {
        "pattern": pattern.symbols,
        "alphabet": str(dist.alphabet),
        "probs": [num(p) for p in dist.probs],
        "variant": variant.value,
        "text_len": args.text_len,
        "trials": args.trials,
        "seed": args.seed,
        "seeds": list(emp.seeds),
        "bits": args.bits,
        "initial_states": {b: init[b].value if b in init else 0 for b in BRANCHES},
        "branches": branches,
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_sweep(args) -> int:
    alphabet = Alphabet(args.alphabet)
    pattern = Pattern(args.pattern, alphabet)
    rows: list[tuple[str, SymbolDistribution]] = []
    if args.grid:
        if len(alphabet) != 2:
            raise ModelError("--grid needs a two-letter alphabet; use --probs otherwise")
        for p in parse_grid(args.grid):
            rows.append((fmt(p), make_distribution(alphabet, [p, 1.0 - p])))
    for text in args.probs or ():
        dist = make_distribution(alphabet, parse_probs(text))
        label = fmt(dist.probs[0]) if len(alphabet) == 2 else ";".join(fmt(p) for p in dist.probs)
        rows.append((label, dist))
    if not rows:
        raise ModelError("sweep needs --grid or --probs")
    variants = [Variant.parse(v) for v in args.variant]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["p", "variant", "counter", "guard", "comparison", "total"])
    for label, dist in rows:
        for v in variants:
            r = analyze(pattern, dist, v).rates()
            writer.writerow([label, v.value] + [fmt(r[c]) for c in ("counter", "guard", "comparison", "total")])
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_mod.run_all(args.max_pattern_len, args.trials, args.random_cases)
    for r in results:
        print(r.line())
        for note in r.notes:
            print(f"    note: {note}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="branchlore",
        description="Branch misprediction rates of the MP and KMP string matchers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="asymptotic per-symbol rates as JSON")
    _add_model_args(p)
    p.add_argument("--emit-dot", metavar="DIR", help="also write Graphviz files into DIR")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="Monte Carlo estimates next to the analytic rates")
    _add_model_args(p)
    p.add_argument("--text-len", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bits", type=int, choices=(1, 2), default=2)
    p.add_argument(
        "--init-state",
        action="append",
        metavar="BRANCH=STATE",
        help="initial counter of a branch: snt, wnt, wt, st or a raw value (repeatable)",
    )
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="rates over a grid of distributions as CSV")
    p.add_argument("--pattern", required=True)
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--grid", help="start:stop:step over the first symbol's probability")
    p.add_argument("--probs", action="append", help="explicit probability vector (repeatable)")
    p.add_argument("--variant", nargs="+", choices=[v.value for v in Variant], default=["mp", "kmp"])
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the cross-validation suites")
    p.add_argument("--max-pattern-len", type=int, default=4)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--random-cases", type=int, default=1000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
