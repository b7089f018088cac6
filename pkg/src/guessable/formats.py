"""Text formats: automata, guessers, chains, families, DOT export.

Automaton files are line oriented with `#` comments:

    alphabet 2
    states 3
    start 0
    priority 0 1
    trans 0 0 0
    trans 0 1 1
    ...

Partial transition tables are completed with an explicit rejecting
sink, and the parser reports that it did so.  An optional
`acceptance min-even` line declares min-parity input, which is
converted to the global max-even convention at parse time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from .ordinal import OrdinalCNF, from_text as ordinal_from_text, to_text as ordinal_to_text
from .space import OpenSet, ParitySet, open_from_parity
from .guesser import MooreGuesser, RankedGuesser
from .diff_hierarchy import OpenChain
from .based_guessing import OracleFamily, cylinders_family, explicit_family


class FormatError(ValueError):
    """Raised on malformed input files."""


@dataclass
class ParseNotes:
    """Side reports from parsing, e.g. table completion."""

    messages: list[str] = field(default_factory=list)

    def add(self, message: str) -> None:
        self.messages.append(message)


def _lines(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def _parse_machine(text: str, notes: ParseNotes, want_outputs: bool):
    # -> (alphabet, n_states, start, table, priorities, outputs, bounds, codomain)
    alphabet = None
    n_states = None
    start = 0
    acceptance = "max-even"
    priorities: dict[int, int] = {}
    outputs: dict[int, int] = {}
    bounds: dict[int, OrdinalCNF] = {}
    codomain: Optional[OrdinalCNF] = None
    trans: list[tuple[int, int, int]] = []
    for row in _lines(text):
        key, args = row[0], row[1:]
        try:
            if key == "alphabet":
                alphabet = int(args[0])
            elif key == "states":
                n_states = int(args[0])
            elif key == "start":
                start = int(args[0])
            elif key == "acceptance":
                acceptance = args[0]
            elif key == "priority":
                priorities[int(args[0])] = int(args[1])
            elif key == "output":
                outputs[int(args[0])] = int(args[1])
            elif key == "bound":
                bounds[int(args[0])] = ordinal_from_text(" ".join(args[1:]))
            elif key == "codomain":
                codomain = ordinal_from_text(" ".join(args))
            elif key == "trans":
                trans.append((int(args[0]), int(args[1]), int(args[2])))
            else:
                raise FormatError(f"unknown directive {key!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"bad line {' '.join(row)!r}: {exc}") from exc
    if alphabet is None or n_states is None:
        raise FormatError("missing alphabet or states directive")
    if acceptance not in ("max-even", "min-even"):
        raise FormatError(f"unknown acceptance convention {acceptance!r}")
    table: list[list[Optional[int]]] = [
        [None] * alphabet for _ in range(n_states)
    ]
    for q, a, nq in trans:
        if not (0 <= q < n_states and 0 <= a < alphabet and 0 <= nq < n_states):
            raise FormatError(f"transition {q} {a} {nq} out of range")
        if table[q][a] is not None:
            raise FormatError(f"duplicate transition for state {q} symbol {a}")
        table[q][a] = nq
    if want_outputs:
        for q in range(n_states):
            if q not in outputs:
                raise FormatError(f"missing output for state {q}")
            if outputs[q] not in (0, 1):
                raise FormatError(f"output of state {q} must be a bit")
    else:
        for q in range(n_states):
            if q not in priorities:
                raise FormatError(f"missing priority for state {q}")
    if acceptance == "min-even" and not want_outputs:
        top = max(priorities.values(), default=0)
        bound = top if top % 2 == 0 else top + 1
        priorities = {q: bound - p for q, p in priorities.items()}
        notes.add(f"converted min-even priorities (p -> {bound}-p)")
    return alphabet, n_states, start, table, priorities, outputs, bounds, codomain


def _complete(
    alphabet: int,
    n_states: int,
    table: list[list[Optional[int]]],
    notes: ParseNotes,
    sink_priority: Optional[dict[int, int]] = None,
    sink_output: Optional[dict[int, int]] = None,
) -> int:
    missing = sum(1 for row in table for cell in row if cell is None)
    if missing == 0:
        return n_states
    sink = n_states
    n_states += 1
    for row in table:
        for a in range(alphabet):
            if row[a] is None:
                row[a] = sink
    table.append([sink] * alphabet)
    if sink_priority is not None:
        sink_priority[sink] = 1
    if sink_output is not None:
        sink_output[sink] = 0
    notes.add(
        f"completed {missing} missing transitions with a rejecting sink"
    )
    return n_states


def parse_automaton(text: str) -> tuple[ParitySet, ParseNotes]:
    notes = ParseNotes()
    alphabet, n, start, table, priorities, _, _, _ = _parse_machine(
        text, notes, want_outputs=False
    )
    n = _complete(alphabet, n, table, notes, sink_priority=priorities)
    return (
        ParitySet(
            alphabet=alphabet,
            start=start,
            delta=tuple(tuple(row) for row in table),
            priority=tuple(priorities[q] for q in range(n)),
        ),
        notes,
    )


def render_automaton(s: ParitySet) -> str:
    out = [f"alphabet {s.alphabet}", f"states {s.n_states}", f"start {s.start}"]
    for q in range(s.n_states):
        out.append(f"priority {q} {s.priority[q]}")
    for q in range(s.n_states):
        for a in range(s.alphabet):
            out.append(f"trans {q} {a} {s.delta[q][a]}")
    return "\n".join(out) + "\n"


def parse_guesser(text: str) -> tuple[MooreGuesser, Optional[RankedGuesser], ParseNotes]:
    """A guesser file; returns the ranked form too when bound lines and
    a codomain are present."""
    notes = ParseNotes()
    alphabet, n, start, table, _, outputs, bounds, codomain = _parse_machine(
        text, notes, want_outputs=True
    )
    n = _complete(alphabet, n, table, notes, sink_output=outputs)
    guesser = MooreGuesser(
        alphabet=alphabet,
        start=start,
        delta=tuple(tuple(row) for row in table),
        output=tuple(outputs[q] for q in range(n)),
    )
    ranked = None
    if bounds or codomain is not None:
        if codomain is None:
            raise FormatError("bound lines need a codomain line")
        from .ordinal import ZERO

        bound = tuple(bounds.get(q, ZERO) for q in range(n))
        ranked = RankedGuesser(guesser=guesser, bound=bound, codomain=codomain)
    return guesser, ranked, notes


def render_guesser(
    g: MooreGuesser, ranked: Optional[RankedGuesser] = None
) -> str:
    out = [f"alphabet {g.alphabet}", f"states {g.n_states}", f"start {g.start}"]
    for q in range(g.n_states):
        out.append(f"output {q} {g.output[q]}")
    if ranked is not None:
        for q in range(g.n_states):
            out.append(f"bound {q} {ordinal_to_text(ranked.bound[q])}")
        out.append(f"codomain {ordinal_to_text(ranked.codomain)}")
    for q in range(g.n_states):
        for a in range(g.alphabet):
            out.append(f"trans {q} {a} {g.delta[q][a]}")
    return "\n".join(out) + "\n"


def parse_chain(text: str, base_dir: str) -> tuple[OpenChain, ParseNotes]:
    """Chain file: a `theta n` header then one `set <index> <path>` line
    per member, paths relative to the chain file."""
    notes = ParseNotes()
    theta = None
    members: dict[int, OpenSet] = {}
    for row in _lines(text):
        key, args = row[0], row[1:]
        if key == "theta":
            theta = int(args[0])
        elif key == "set":
            idx = int(args[0])
            path = os.path.join(base_dir, " ".join(args[1:]))
            with open(path, "r", encoding="utf-8") as handle:
                automaton, sub_notes = parse_automaton(handle.read())
            notes.messages.extend(
                f"{path}: {m}" for m in sub_notes.messages
            )
            try:
                members[idx] = open_from_parity(automaton)
            except ValueError as exc:
                raise FormatError(f"{path}: not an open set automaton: {exc}")
        else:
            raise FormatError(f"unknown directive {key!r} in chain file")
    if theta is None:
        raise FormatError("missing theta header")
    if sorted(members) != list(range(theta)):
        raise FormatError("chain must define sets 0..theta-1")
    return OpenChain(tuple(members[i] for i in range(theta))), notes


def render_chain(paths: list[str]) -> str:
    out = [f"theta {len(paths)}"]
    for i, path in enumerate(paths):
        out.append(f"set {i} {path}")
    return "\n".join(out) + "\n"


def parse_family(text: str, base_dir: str) -> tuple[OracleFamily, ParseNotes]:
    """Family file: `family explicit` with `prefix <path>` / `cycle
    <path>` member lines, or `family cylinders <k>`."""
    notes = ParseNotes()
    kind = None
    k = None
    prefix: list[ParitySet] = []
    cycle: list[ParitySet] = []
    for row in _lines(text):
        key, args = row[0], row[1:]
        if key == "family":
            kind = args[0]
            if kind == "cylinders":
                k = int(args[1])
        elif key in ("prefix", "cycle"):
            path = os.path.join(base_dir, " ".join(args))
            with open(path, "r", encoding="utf-8") as handle:
                automaton, sub_notes = parse_automaton(handle.read())
            notes.messages.extend(f"{path}: {m}" for m in sub_notes.messages)
            (prefix if key == "prefix" else cycle).append(automaton)
        else:
            raise FormatError(f"unknown directive {key!r} in family file")
    if kind == "cylinders":
        assert k is not None
        return cylinders_family(k), notes
    if kind == "explicit":
        if not cycle:
            raise FormatError("explicit family needs at least one cycle member")
        return explicit_family(tuple(prefix), tuple(cycle)), notes
    raise FormatError("missing or unknown family directive")


def to_dot(s: ParitySet, name: str = "aut") -> str:
    """GraphViz rendering with priorities as labels."""
    out = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
    for q in range(s.n_states):
        out.append(f'  q{q} [shape=circle, label="q{q}\\np={s.priority[q]}"];')
    out.append(f"  init -> q{s.start};")
    for q in range(s.n_states):
        by_target: dict[int, list[int]] = {}
        for a in range(s.alphabet):
            by_target.setdefault(s.delta[q][a], []).append(a)
        for nq in sorted(by_target):
            label = ",".join(str(a) for a in by_target[nq])
            out.append(f'  q{q} -> q{nq} [label="{label}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def guesser_to_dot(g: MooreGuesser, name: str = "guesser") -> str:
    out = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
    for q in range(g.n_states):
        out.append(f'  q{q} [shape=circle, label="q{q}\\nout={g.output[q]}"];')
    out.append(f"  init -> q{g.start};")
    for q in range(g.n_states):
        by_target: dict[int, list[int]] = {}
        for a in range(g.alphabet):
            by_target.setdefault(g.delta[q][a], []).append(a)
        for nq in sorted(by_target):
            label = ",".join(str(a) for a in by_target[nq])
            out.append(f'  q{q} -> q{nq} [label="{label}"];')
    out.append("}")
    return "\n".join(out) + "\n"
