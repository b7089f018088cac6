"""Command line surface.

Subcommands: rank, remainder, synthesize, verify, witness,
diff build|extract, classify, based verify, oracle check, export-dot.
Machine-readable output is one `key=value` pair per line, in a fixed
order.  Exit codes: 0 the property holds, 1 a counterexample or a
failed certification, 2 unusable input.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import formats
from .based_guessing import verify_based
from .diff_hierarchy import (
    ChainNotIncreasingError,
    Side,
    chain_to_guesser,
    classify,
    d_theta,
    guesser_to_chain,
)
from .guesser import (
    NotGuessableError,
    check_bound,
    divergence_witness,
    mind_change_rank,
    synthesize,
)
from .oracle import cross_validate, exhaustive_tables, sample_tables
from .ordinal import to_text as ordinal_text
from .remainder import remainder_chain
from .space import AlphabetMismatchError, canonical_up_words, equivalent

DEFAULT_BUDGET = 100


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_automaton(path: str):
    automaton, notes = formats.parse_automaton(_read(path))
    for message in notes.messages:
        print(f"note: {path}: {message}", file=sys.stderr)
    return automaton


def _load_guesser(path: str):
    guesser, ranked, notes = formats.parse_guesser(_read(path))
    for message in notes.messages:
        print(f"note: {path}: {message}", file=sys.stderr)
    return guesser, ranked


def _rank_text(rank) -> str:
    return "NOT_GUESSABLE" if rank is None else ordinal_text(rank)


def cmd_rank(args: argparse.Namespace) -> int:
    automaton = _load_automaton(args.automaton)
    trace = remainder_chain(automaton)
    rank = mind_change_rank(automaton)
    print(f"guessable={'true' if trace.guessable else 'false'}")
    print(f"rank={_rank_text(rank)}")
    print(f"alpha_S={ordinal_text(trace.alpha_s)}")
    if args.trace:
        for i, stage in enumerate(trace.chain):
            body = ",".join(str(q) for q in sorted(stage))
            print(f"Q[{i}] = {{{body}}}")
    return 0


def cmd_remainder(args: argparse.Namespace) -> int:
    automaton = _load_automaton(args.automaton)
    trace = remainder_chain(automaton)
    if args.trace:
        for i, stage in enumerate(trace.chain):
            body = ",".join(str(q) for q in sorted(stage))
            print(f"Q[{i}] = {{{body}}}")
    print(f"alpha(S) = {ordinal_text(trace.alpha_s)}")
    print(f"S_infty_empty = {'true' if trace.guessable else 'false'}")
    if args.gaps:
        gaps = ",".join(str(a) for a in trace.gap_stages())
        print(f"gap_stages = {{{gaps}}}")
    return 0


def cmd_synthesize(args: argparse.Namespace) -> int:
    automaton = _load_automaton(args.automaton)
    try:
        ranked = synthesize(automaton)
    except NotGuessableError:
        print("guessable=false")
        print("rank=NOT_GUESSABLE")
        return 1
    text = formats.render_guesser(ranked.guesser, ranked)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"guesser={args.output}")
    else:
        sys.stdout.write(text)
    print(f"rank={ordinal_text(ranked.codomain)}")
    print(f"bound_ok={'true' if check_bound(ranked) else 'false'}")
    return 0


def _verify(args: argparse.Namespace) -> int:
    guesser, _ = _load_guesser(args.guesser)
    automaton = _load_automaton(args.set)
    witness = divergence_witness(guesser, automaton)
    if witness is not None:
        print(f"witness={witness}")
        return 1
    print("witness=NONE")
    budget = getattr(args, "budget", 0)
    if budget:
        # redundant spot check of the certificate on concrete words
        from .guesser import verify_on_up

        words = canonical_up_words(automaton.alphabet, budget)
        for word in words:
            if not verify_on_up(guesser, automaton, word):
                print(f"witness={word}")
                return 1
        print(f"words={len(words)}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    return _verify(args)


def cmd_witness(args: argparse.Namespace) -> int:
    return _verify(args)


def _write_chain(chain, out_dir: str, stem: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    names = []
    for i, member in enumerate(chain.sets):
        name = f"{stem}_set{i}.aut"
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as handle:
            handle.write(formats.render_automaton(member.to_parity()))
        names.append(name)
    chain_path = os.path.join(out_dir, f"{stem}.chain")
    with open(chain_path, "w", encoding="utf-8") as handle:
        handle.write(formats.render_chain(names))
    return chain_path


def cmd_diff_build(args: argparse.Namespace) -> int:
    chain, notes = formats.parse_chain(
        _read(args.chain), os.path.dirname(os.path.abspath(args.chain))
    )
    for message in notes.messages:
        print(f"note: {message}", file=sys.stderr)
    level_set = d_theta(chain)
    print(f"theta={chain.theta_int}")
    code = 0
    if args.emit in ("set", "both"):
        if args.output:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(formats.render_automaton(level_set))
            print(f"set={args.output}")
        else:
            sys.stdout.write(formats.render_automaton(level_set))
    if args.emit in ("guesser", "both"):
        ranked = chain_to_guesser(chain)
        bound_ok = check_bound(ranked)
        witness = divergence_witness(ranked.guesser, level_set)
        if args.guesser_output:
            with open(args.guesser_output, "w", encoding="utf-8") as handle:
                handle.write(formats.render_guesser(ranked.guesser, ranked))
            print(f"guesser={args.guesser_output}")
        print(f"bound_ok={'true' if bound_ok else 'false'}")
        print(f"witness={'NONE' if witness is None else witness}")
        if not bound_ok or witness is not None:
            code = 1
    return code


def cmd_diff_extract(args: argparse.Namespace) -> int:
    automaton = _load_automaton(args.set)
    outcome = classify(automaton)
    print(f"rank={_rank_text(outcome.rank)}")
    print(f"side={outcome.side.value}")
    if outcome.chain is None:
        print("chain=NONE")
        return 1
    if args.out_dir:
        chain_path = _write_chain(outcome.chain, args.out_dir, "extracted")
        print(f"chain={chain_path}")
    else:
        print(f"chain=theta {outcome.chain.theta_int}")
    from .space import complement as _complement

    target = (
        automaton if outcome.side in (Side.SELF, Side.BOTH) else _complement(automaton)
    )
    round_trip = equivalent(d_theta(outcome.chain), target)
    print(f"round_trip={'true' if round_trip else 'false'}")
    return 0 if round_trip else 1


def cmd_classify(args: argparse.Namespace) -> int:
    automaton = _load_automaton(args.set)
    outcome = classify(automaton)
    print(f"rank={_rank_text(outcome.rank)}")
    print(f"side={outcome.side.value}")
    if outcome.chain is None:
        print("chain=NONE")
    elif args.out_dir:
        chain_path = _write_chain(outcome.chain, args.out_dir, "witness")
        print(f"chain={chain_path}")
    else:
        print(f"chain=theta {outcome.chain.theta_int}")
    return 0


def cmd_based_verify(args: argparse.Namespace) -> int:
    family, notes = formats.parse_family(
        _read(args.family), os.path.dirname(os.path.abspath(args.family))
    )
    for message in notes.messages:
        print(f"note: {message}", file=sys.stderr)
    guesser, _ = _load_guesser(args.guesser)
    automaton = _load_automaton(args.set)
    words = canonical_up_words(automaton.alphabet, args.budget)
    for word in words:
        if not verify_based(guesser, family, automaton, word):
            print(f"ok=false")
            print(f"witness={word}")
            return 1
    print("ok=true")
    print(f"words={len(words)}")
    return 0


def cmd_oracle_check(args: argparse.Namespace) -> int:
    if args.exhaustive or args.samples == 0:
        tables = exhaustive_tables(args.k, args.d)
    else:
        tables = sample_tables(args.k, args.d, args.samples, seed=args.seed)
    report = cross_validate(tables, word_length=args.words)
    for line in report.summary_lines():
        print(line)
    return 0 if report.ok else 1


def cmd_export_dot(args: argparse.Namespace) -> int:
    text = _read(args.file)
    kind = args.kind
    if kind == "auto":
        kind = "guesser" if any(
            row.strip().startswith("output") for row in text.splitlines()
        ) else "automaton"
    if kind == "guesser":
        guesser, _, notes = formats.parse_guesser(text)
        for message in notes.messages:
            print(f"note: {message}", file=sys.stderr)
        sys.stdout.write(formats.guesser_to_dot(guesser))
    else:
        automaton, notes = formats.parse_automaton(text)
        for message in notes.messages:
            print(f"note: {message}", file=sys.stderr)
        sys.stdout.write(formats.to_dot(automaton))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="guessable",
        description="guessers, mind-change ranks and difference hierarchies "
        "for automaton-represented sets of infinite sequences",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="mind-change rank of a set")
    p.add_argument("automaton")
    p.add_argument("--trace", action="store_true", help="print the stage sets")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("remainder", help="remainder chain of a set")
    p.add_argument("automaton")
    p.add_argument("--trace", action="store_true", help="print the stage sets")
    p.add_argument(
        "--gaps",
        action="store_true",
        help="report stages whose word set is nonempty but carries no point",
    )
    p.set_defaults(func=cmd_remainder)

    p = sub.add_parser("synthesize", help="build the canonical ranked guesser")
    p.add_argument("automaton")
    p.add_argument("-o", "--output", help="write the guesser file here")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="certify a guesser against a set")
    p.add_argument("guesser")
    p.add_argument("set")
    p.add_argument(
        "--budget",
        type=int,
        default=0,
        help="also spot-check this many canonical UP words",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="search for a diverging point")
    p.add_argument("guesser")
    p.add_argument("set")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("diff", help="difference hierarchy conversions")
    diff_sub = p.add_subparsers(dest="diff_command", required=True)
    b = diff_sub.add_parser("build", help="chain file to level set / guesser")
    b.add_argument("chain")
    b.add_argument("--emit", choices=["set", "guesser", "both"], default="set")
    b.add_argument("-o", "--output", help="write the level-set automaton here")
    b.add_argument("--guesser-output", help="write the converted guesser here")
    b.set_defaults(func=cmd_diff_build)
    e = diff_sub.add_parser("extract", help="set to witnessing chain")
    e.add_argument("set")
    e.add_argument("--out-dir", help="directory for the chain files")
    e.set_defaults(func=cmd_diff_extract)

    p = sub.add_parser("classify", help="rank and hierarchy side of a set")
    p.add_argument("set")
    p.add_argument("--out-dir", help="directory for the witnessing chain")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("based", help="oracle-family guessing")
    based_sub = p.add_subparsers(dest="based_command", required=True)
    v = based_sub.add_parser("verify", help="check a bit guesser over a family")
    v.add_argument("family")
    v.add_argument("guesser")
    v.add_argument("set")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.set_defaults(func=cmd_based_verify)

    p = sub.add_parser("oracle", help="brute-force cross validation")
    oracle_sub = p.add_subparsers(dest="oracle_command", required=True)
    c = oracle_sub.add_parser("check", help="compare pipeline against brute force")
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--d", type=int, default=3)
    c.add_argument("--samples", type=int, default=0, help="0 = exhaustive")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--exhaustive", action="store_true")
    c.add_argument(
        "--words", type=int, default=4, help="compare words up to this length"
    )
    c.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("export-dot", help="GraphViz rendering of a machine")
    p.add_argument("file")
    p.add_argument("--kind", choices=["auto", "automaton", "guesser"], default="auto")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        formats.FormatError,
        AlphabetMismatchError,
        ChainNotIncreasingError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
