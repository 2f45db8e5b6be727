"""Command-line entry point.

Exit codes: 0 success, 1 mathematical failure (non-central measure,
absolutes differ), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jsonio
from .absolute import (
    Options,
    centrality_equations,
    compare_quotient,
    describe_absolute,
    violated_equations,
)
from .harness import DEFAULT_DEPTH, simulate, verify_central
from .latgeo import DistributionPoint
from .presentation import PresentationError, load_presentation
from .wordcalc import ResourceLimitError, central_pairs_exact, complete


class UsageError(Exception):
    pass


def parse_mu(text: str, size: int) -> DistributionPoint:
    try:
        weights = [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --mu {text!r}: {exc}") from exc
    if len(weights) != size:
        raise UsageError(f"--mu has {len(weights)} entries, the presentation has {size} generators")
    try:
        return DistributionPoint.exact(weights)
    except ValueError as exc:
        raise UsageError(f"--mu is not a probability distribution: {exc}") from exc


def _cmd_describe(args) -> int:
    p = load_presentation(args.file)
    d = describe_absolute(p, Options(fallback_depth=args.depth))
    text = jsonio.dumps(d)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"absolute dimension {d.dimension}, {d.topology_claim}, "
              f"{len(d.equations)} equation(s), {len(d.strata)} strata -> {args.json}")
    else:
        print(text)
    return 0


def _cmd_equations(args) -> int:
    p = load_presentation(args.file)
    cp = central_pairs_exact(p)
    for e in centrality_equations(cp):
        print(e.format(p.symbols))
    if not cp.pairs:
        print("(no equations: every distribution is precentral)")
    return 0


def _cmd_check(args) -> int:
    p = load_presentation(args.file)
    mu = parse_mu(args.mu, p.size)
    bad = violated_equations(centrality_equations(central_pairs_exact(p)), mu)
    if bad:
        for e in bad:
            print(f"violated: {e.format(p.symbols)}")
        return 1
    print("precentral")
    return 0


def _cmd_verify(args) -> int:
    p = load_presentation(args.file)
    mu = parse_mu(args.mu, p.size)
    report = verify_central(complete(p), mu, args.depth)
    print(f"{report.status} (depth {report.depth})")
    for w in report.witnesses[:5]:
        print("  " + w.describe(p.symbols))
    return 0 if report.passed else 1


def _cmd_simulate(args) -> int:
    p = load_presentation(args.file)
    mu = parse_mu(args.mu, p.size)
    alt = parse_mu(args.alt, p.size) if args.alt else None
    stats = simulate(complete(p), mu, args.steps, args.trials, args.seed, alt)
    print(json.dumps(stats.to_dict(), indent=2))
    return 0


def _cmd_compare(args) -> int:
    same = compare_quotient(load_presentation(args.a), load_presentation(args.b))
    print("same absolute" if same else "absolutes differ")
    return 0 if same else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sgabs", description="Absolute of a commutative semigroup")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("describe", help="full descriptor as JSON")
    d.add_argument("file")
    d.add_argument("--json", help="write the descriptor to this path")
    d.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                   help="enumeration depth if exact elimination hits its limits")
    d.set_defaults(func=_cmd_describe)

    e = sub.add_parser("equations", help="print the centrality equations")
    e.add_argument("file")
    e.set_defaults(func=_cmd_equations)

    c = sub.add_parser("check-measure", help="exact precentrality test")
    c.add_argument("file")
    c.add_argument("--mu", required=True, help="comma-separated rationals, e.g. 1/2,1/4,1/4")
    c.set_defaults(func=_cmd_check)

    v = sub.add_parser("verify", help="path-space centrality check")
    v.add_argument("file")
    v.add_argument("--mu", required=True)
    v.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("simulate", help="seeded random walks")
    s.add_argument("file")
    s.add_argument("--mu", required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--alt", help="second step distribution; reports the likelihood-ratio trend")
    s.set_defaults(func=_cmd_simulate)

    q = sub.add_parser("compare", help="compare the absolutes of two presentations")
    q.add_argument("a")
    q.add_argument("b")
    q.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, PresentationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
