"""Command-line dealer and combiner.

Exit codes: 0 success or accepted, 2 usage or input error, 3 verification
rejected.  ``GRAPHSHARE_OUT`` sets the default output directory for ``split``.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .analysis import MAX_CENSUS_VERTICES, census
from .codec import BitPayload, digits_to_integer, encode_graph
from .errors import GraphShareError
from .formats import parse_gsf, parse_gsh, read_text, render_gsf, render_gsh, write_atomic
from .graph import PREDICATE_KINDS, ColoredGraph, Coloring, Predicate, is_proper_coloring, partition_of
from .protocol import (
    Kgh,
    Shamir,
    reconstruct_and_verify,
    share_colored_graph,
    share_coloring,
    share_number_as_graph,
    share_structure,
    shift_attack,
)
from .schemes import PRODUCTION_PRIME, RandomSource, kgh_reconstruct

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REJECTED = 3


class UsageError(Exception):
    pass


def _load_graph(path: str) -> ColoredGraph:
    try:
        text = read_text(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse_gsf(text)
    except GraphShareError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_share(path: Path):
    try:
        text = read_text(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse_gsh(text)
    except GraphShareError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_encode(args) -> int:
    cg = _load_graph(args.graph)
    d = encode_graph(cg)
    print(d)
    print(digits_to_integer(d))
    return EXIT_OK


def cmd_split(args) -> int:
    if args.seed is None:
        rng = RandomSource.from_entropy()
    else:
        rng = RandomSource.from_seed(args.seed)
    if args.scheme == "shamir":
        if args.t is None:
            raise UsageError("--t is required for shamir")
        if not 1 <= args.t <= args.n:
            raise UsageError(f"need 1 <= t <= n, got t={args.t}, n={args.n}")
        scheme = Shamir(args.t, args.n, args.prime)
    else:
        if args.t is not None and args.t != args.n:
            raise UsageError("kgh is n-of-n; --t must equal --n or be omitted")
        scheme = Kgh(args.n)
    predicate = Predicate(args.predicate)

    if args.bits is not None:
        if args.graph is not None:
            raise UsageError("give either a graph file or --bits, not both")
        try:
            payload = BitPayload.from_string(args.bits)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        dealing = share_number_as_graph(payload, scheme, rng, predicate)
    else:
        if args.graph is None:
            raise UsageError("a graph file or --bits is required")
        cg = _load_graph(args.graph)
        if args.kind == "coloring":
            dealing = share_coloring(cg.coloring, scheme, rng, predicate)
        elif args.kind == "structure":
            dealing = share_structure(cg.graph, scheme, predicate, rng)
        else:
            dealing = share_colored_graph(cg, scheme, predicate, rng)

    out_dir = Path(args.out_dir or os.environ.get("GRAPHSHARE_OUT") or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    for share in dealing.shares:
        path = out_dir / f"share_{share.index}.gsh"
        write_atomic(path, render_gsh(share))
        print(path)
    return EXIT_OK


def _render_secret(secret) -> str:
    if isinstance(secret, ColoredGraph):
        return render_gsf(secret)
    if isinstance(secret, Coloring):
        return " ".join(str(c) for c in secret.colors) + "\n"
    return str(secret) + "\n"


def cmd_reconstruct(args) -> int:
    shares = [_load_share(Path(p)) for p in args.shares]
    reference = _load_graph(args.reference).graph if args.reference else None
    secret, report = reconstruct_and_verify(shares, reference)
    print(report)
    if not report.reconstructed:
        return EXIT_INPUT
    if not report.accepted:
        return EXIT_REJECTED
    if args.out:
        write_atomic(args.out, _render_secret(secret))
    else:
        sys.stdout.write(_render_secret(secret))
    return EXIT_OK


def cmd_census(args) -> int:
    if not 1 <= args.vertices <= MAX_CENSUS_VERTICES:
        raise UsageError(f"--vertices must be in 1..{MAX_CENSUS_VERTICES} for exhaustive census")
    result = census(args.vertices, Predicate(args.predicate))
    print(f"vertices: {result.n}")
    print(f"predicate: {result.predicate}")
    print(f"total: {result.total}")
    print(f"valid: {result.valid}")
    print(f"fraction: {result.valid}/{result.total}")
    print(f"reduced: {result.fraction}")
    return EXIT_OK


def _fmt_partition(colors) -> str:
    return " ".join("{" + ",".join(f"v{v}" for v in sorted(cls)) + "}" for cls in partition_of(colors))


def cmd_attack_demo(args) -> int:
    paths = sorted(Path(args.shares).glob("*.gsh"))
    if not paths:
        raise UsageError(f"no .gsh files in {args.shares}")
    shares = [_load_share(p) for p in paths]
    if any(s.scheme != "kgh" or s.descriptor.kind != "coloring" for s in shares):
        raise UsageError("attack demo needs a kgh coloring dealing")
    try:
        before = kgh_reconstruct(shares)
        victim = next(s for s in shares if s.index == args.participant)
    except StopIteration:
        raise UsageError(f"no share for participant {args.participant}") from None
    except GraphShareError as exc:
        raise UsageError(str(exc)) from None
    attacked = [shift_attack(s, args.constant) if s is victim else s for s in shares]
    after = kgh_reconstruct(attacked)

    print(f"constant: {args.constant}")
    print("before: " + " ".join(map(str, before)))
    print("after: " + " ".join(map(str, after)))
    print("partition before: " + _fmt_partition(before))
    print("partition after: " + _fmt_partition(after))
    print(f"partition preserved: {'yes' if partition_of(before) == partition_of(after) else 'no'}")
    print(f"assignment changed: {'yes' if before != after else 'no'}")
    if args.graph:
        g = _load_graph(args.graph).graph
        k = shares[0].descriptor.k
        if g.n != len(before):
            raise UsageError("reference graph size differs from the coloring")
        for label, colors in (("before", before), ("after", after)):
            proper = is_proper_coloring(ColoredGraph(g, Coloring(k, colors)))
            print(f"proper {label}: {'yes' if proper else 'no'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphshare", description="Secret sharing for graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="print the digit string and integer of a GSF graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("split", help="deal a graph (or bit string) into share files")
    p.add_argument("graph", nargs="?")
    p.add_argument("--bits", help="share this bit string carried as a graph instead of a graph file")
    p.add_argument("--kind", choices=("colored_graph", "structure", "coloring"), default="colored_graph")
    p.add_argument("--scheme", choices=("shamir", "kgh"), required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prime", type=int, default=PRODUCTION_PRIME, choices=(PRODUCTION_PRIME, 5, 7, 11))
    p.add_argument("--predicate", choices=PREDICATE_KINDS, default="any")
    p.add_argument("--seed", type=int, help="deterministic dealing (tests only)")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("reconstruct", help="pool share files and verify the secret")
    p.add_argument("shares", nargs="+")
    p.add_argument("--out")
    p.add_argument("--reference", help="known structure for checking a shared coloring")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("census", help="count graphs satisfying a restriction")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--predicate", choices=PREDICATE_KINDS, default="any")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("attack-demo", help="shift one coloring share and compare reconstructions")
    p.add_argument("--shares", required=True, help="directory of kgh coloring share files")
    p.add_argument("--constant", type=int, required=True)
    p.add_argument("--participant", type=int, default=1)
    p.add_argument("--graph", help="structure to check properness against")
    p.set_defaults(func=cmd_attack_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphShareError, ValueError) as exc:
        print(f"graphshare: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
