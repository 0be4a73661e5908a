"""Command-line interface: match, eval, gen, bench, sweep.

Exit codes: 0 success, 1 usage error, 2 input-format error, 3 internal
contract violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .aggregate import STRATEGIES, StrategyConfig
from .alignment import extract_alignment, read_alignment, write_alignment
from .benchgen import gen_suite, load_suite, write_suite
from .errors import ContractViolationError, InputFormatError, UnknownEntityError
from .evaluate import evaluate, evaluate_suite, sweep_csv, weight_sweep
from .lexical import LexicalParams
from .ontology import read_ontology
from .pipeline import (
    PipelineConfig,
    aggregate_matrices,
    compute_matcher_matrices,
    run_pipeline,
)
from .structural import GmoParams

USAGE_ERROR = 1
INPUT_ERROR = 2
CONTRACT_ERROR = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; this surface uses 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="ontomatch",
                     description="Match, evaluate, and benchmark ontologies.")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("match", parents=[], help="align two ontologies")
    m.add_argument("onto1")
    m.add_argument("onto2")
    m.add_argument("--strategy", required=True, choices=STRATEGIES)
    m.add_argument("--threshold", type=float, default=0.5)
    m.add_argument("--seed-threshold", type=float, default=None)
    m.add_argument("--experimental-w", type=float, default=0.5)
    m.add_argument("--non-class-w", type=float, default=0.5)
    m.add_argument("--sigmoid-slope", type=float, default=12.0)
    m.add_argument("--sigmoid-center", type=float, default=0.5)
    m.add_argument("--gmo-iters", type=int, default=100)
    m.add_argument("--gmo-eps", type=float, default=1e-6)
    m.add_argument("--out", required=True)

    e = sub.add_parser("eval", help="score a found alignment against a reference")
    e.add_argument("found")
    e.add_argument("reference")
    e.add_argument("--alpha", type=float, default=1.0)

    g = sub.add_parser("gen", help="generate a benchmark suite")
    g.add_argument("source")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)

    b = sub.add_parser("bench", help="run strategies over a generated suite")
    b.add_argument("suite_dir")
    b.add_argument("--strategies", required=True)
    b.add_argument("--threshold", type=float, default=0.5)
    b.add_argument("--out", required=True)

    s = sub.add_parser("sweep", help="homogeneous-weight sweep")
    s.add_argument("onto1")
    s.add_argument("onto2")
    s.add_argument("reference")
    s.add_argument("--weights", default="0.0:1.0:0.1")
    s.add_argument("--threshold", type=float, default=0.5)
    s.add_argument("--out", required=True)

    return parser


def _pipeline_config(args, strategy: str) -> PipelineConfig:
    return PipelineConfig(
        strategy=StrategyConfig(
            strategy=strategy,
            experimental_w=args.experimental_w,
            non_class_w=args.non_class_w,
            sigmoid_slope=args.sigmoid_slope,
            sigmoid_center=args.sigmoid_center,
        ),
        threshold=args.threshold,
        seed_threshold=args.seed_threshold,
        lexical=LexicalParams(),
        gmo=GmoParams(max_iterations=args.gmo_iters, epsilon=args.gmo_eps),
    )


def _parse_weights(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("--weights expects start:stop:step")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError("--weights expects start <= stop and step > 0")
    n = int((stop - start) / step + 1e-9) + 1
    return [round(start + i * step, 10) for i in range(n)]


def _parse_strategies(text: str, parser) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        parser.error("--strategies must list at least one strategy")
    for name in names:
        if name not in STRATEGIES:
            parser.error(f"unknown strategy: {name!r}")
    return names


def _cmd_match(args) -> int:
    ont1 = read_ontology(args.onto1)
    ont2 = read_ontology(args.onto2)
    cfg = _pipeline_config(args, args.strategy)
    found, _ = run_pipeline(ont1, ont2, cfg)
    write_alignment(found, args.out)
    return 0


def _cmd_eval(args) -> int:
    found = read_alignment(args.found)
    reference = read_alignment(args.reference)
    rep = evaluate(found, reference, args.alpha)
    print(f"{rep.precision:.4f} {rep.recall:.4f} {rep.fmeasure:.4f}")
    return 0


def _cmd_gen(args) -> int:
    source = read_ontology(args.source)
    suite = gen_suite(source, args.seed)
    write_suite(suite, args.out)
    return 0


def _cmd_bench(args, strategies: list[str]) -> int:
    suite_name, source, tests = load_suite(args.suite_dir)
    results = []
    for test_id, _group, target, reference in tests:
        base = PipelineConfig(threshold=args.threshold)
        matrices = compute_matcher_matrices(source, target, base)
        for name in strategies:
            cfg = PipelineConfig(strategy=StrategyConfig(strategy=name),
                                 threshold=args.threshold)
            combined = aggregate_matrices(matrices, source, target, cfg)
            found = extract_alignment(combined, args.threshold)
            results.append((test_id, name, found, reference))
    Path(args.out).write_text(
        evaluate_suite(results, alpha=1.0, suite_name=suite_name), encoding="utf-8")
    return 0


def _cmd_sweep(args) -> int:
    ont1 = read_ontology(args.onto1)
    ont2 = read_ontology(args.onto2)
    reference = read_alignment(args.reference)
    weights = _parse_weights(args.weights)
    points = weight_sweep(ont1, ont2, reference, weights, args.threshold)
    Path(args.out).write_text(sweep_csv(points), encoding="utf-8")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and not 0 <= args.seed < 2 ** 64:
        parser.error("--seed must be a 64-bit unsigned integer")
    try:
        if args.command == "match":
            return _cmd_match(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "bench":
            return _cmd_bench(args, _parse_strategies(args.strategies, parser))
        return _cmd_sweep(args)
    except InputFormatError as e:
        print(f"ontomatch: input error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except OSError as e:
        print(f"ontomatch: i/o error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except ContractViolationError as e:
        print(f"ontomatch: internal error: {e}", file=sys.stderr)
        return CONTRACT_ERROR
    except (ValueError, UnknownEntityError) as e:
        print(f"ontomatch: error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
