"""Depth-truncated brute force over explicit clopen tables.

This module recomputes stage sets, word ranks and the canonical
guesser directly from their definitions on the tree of words of
length <= d, and exists to cross-check the automaton pipeline.  The
convention that makes the literal recursion terminate: below depth d
every subtree is membership-constant, so an infinite extension stays
inside a stage set exactly when all of its prefixes up to depth d do.
That restricts the oracle to clopen sets by design; the automaton
route is the only way to non-clopen sets, and its validation burden
is carried by the cross checks below.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from .space import ClopenTable, Word, compile_clopen, words_up_to


class BudgetExceededError(ValueError):
    """Raised when an exhaustive sweep would enumerate too many tables."""


@dataclass(frozen=True)
class TruncatedTree:
    """Stage ranks of every node of the depth-d word tree, computed by
    running the stage step until the node set stops shrinking."""

    table: ClopenTable
    ranks: dict[Word, int]
    least_empty_stage: int

    def rank_of(self, word: Word) -> int:
        """Rank of an arbitrary word; beyond depth d the subtree is
        homogeneous, so the word leaves the chain at stage 1."""
        if len(word) <= self.table.depth:
            return self.ranks[word]
        return 1


def _extension_classes(
    table: ClopenTable, node: Word, stage: set[Word]
) -> set[int]:
    """Membership classes of infinite extensions of `node` that stay in
    the current stage: classes of depth-d descendants whose whole
    prefix path lies in the stage."""
    k, d = table.alphabet, table.depth
    classes: set[int] = set()
    if node not in stage:
        return classes
    frontier = [node]
    for _ in range(d - len(node)):
        nxt = []
        for w in frontier:
            for a in range(k):
                child = w + (a,)
                if child in stage:
                    nxt.append(child)
        frontier = nxt
    for leaf in frontier:
        classes.add(table.lookup(leaf))
        if len(classes) == 2:
            break
    return classes


def truncated_remainder(table: ClopenTable) -> TruncatedTree:
    """Stagewise word-level chain, literally: a node survives into the
    next stage iff extensions of both classes remain available through
    the current stage."""
    nodes = list(words_up_to(table.alphabet, table.depth))
    stage: set[Word] = set(nodes)
    ranks: dict[Word, int] = {}
    least_empty = None
    index = 0
    while True:
        index += 1
        survivors = {
            w for w in stage if len(_extension_classes(table, w, stage)) == 2
        }
        for w in stage - survivors:
            ranks[w] = index
        if not survivors and least_empty is None:
            least_empty = index
        if survivors == stage:
            break
        stage = survivors
    if least_empty is None:
        raise AssertionError("clopen stage chain failed to empty")
    return TruncatedTree(table=table, ranks=ranks, least_empty_stage=least_empty)


def truncated_guesser(table: ClopenTable) -> dict[Word, int]:
    """The canonical guesser on words of length <= d+1, by the literal
    case split: with extensions available inside the previous stage,
    output their common class; with none, inherit the parent's output
    (0 at the root)."""
    tree = truncated_remainder(table)
    out: dict[Word, int] = {}
    for word in words_up_to(table.alphabet, table.depth + 1):
        out[word] = _guess_at(table, tree, word, out)
    return out


def guesser_value(table: ClopenTable, tree: TruncatedTree, word: Word) -> int:
    """Guesser output at a single word of any length."""
    out: dict[Word, int] = {}
    for i in range(len(word) + 1):
        prefix = word[:i]
        out[prefix] = _guess_at(table, tree, prefix, out)
    return out[word]


def _guess_at(
    table: ClopenTable,
    tree: TruncatedTree,
    word: Word,
    memo: dict[Word, int],
) -> int:
    if len(word) > table.depth:
        # homogeneous below depth d: the one available class wins
        return table.lookup(word)
    rank = tree.rank_of(word)
    stage_prev = {
        w
        for w in words_up_to(table.alphabet, table.depth)
        if tree.rank_of(w) > rank - 1
    }
    classes = _extension_classes(table, word, stage_prev)
    if len(classes) == 2:
        raise AssertionError("rank mismatch: both classes at a ranked node")
    if classes:
        return classes.pop()
    if word:
        return memo[word[:-1]]
    return 0


def exhaustive_tables(alphabet: int, depth: int) -> Iterator[ClopenTable]:
    """Every depth-d table once; budget-limited to 2^(k^d) <= 2^16."""
    cells = alphabet**depth
    if cells > 16:
        raise BudgetExceededError(
            f"{alphabet}^{depth} = {cells} cells exceeds the enumeration budget"
        )
    for values in itertools.product((0, 1), repeat=cells):
        yield ClopenTable(alphabet=alphabet, depth=depth, values=values)


def sample_tables(
    alphabet: int, depth: int, count: int, seed: int = 0
) -> list[ClopenTable]:
    """Seeded random depth-d tables (with replacement)."""
    rng = random.Random(seed)
    cells = alphabet**depth
    out = []
    for _ in range(count):
        values = tuple(rng.randint(0, 1) for _ in range(cells))
        out.append(ClopenTable(alphabet=alphabet, depth=depth, values=values))
    return out


@dataclass
class CrossValidationReport:
    """Outcome of checking the automaton pipeline against this module."""

    tables_checked: int = 0
    rank_mismatches: list[tuple[ClopenTable, Word]] = field(default_factory=list)
    guess_mismatches: list[tuple[ClopenTable, Word]] = field(default_factory=list)
    rank_infinite: list[ClopenTable] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.rank_mismatches or self.guess_mismatches or self.rank_infinite
        )

    def summary_lines(self) -> list[str]:
        return [
            f"tables_checked={self.tables_checked}",
            f"rank_agreement={'pass' if not self.rank_mismatches else 'FAIL'}",
            f"guesser_agreement={'pass' if not self.guess_mismatches else 'FAIL'}",
            f"finite_rank={'pass' if not self.rank_infinite else 'FAIL'}",
        ]


def cross_validate(
    tables: "Iterator[ClopenTable] | list[ClopenTable]",
    word_length: int = 4,
) -> CrossValidationReport:
    """For each table, compare word ranks and guesser outputs between
    the literal recursion here and the automaton pipeline."""
    from .guesser import evaluate, synthesize
    from .remainder import remainder_chain, word_rank
    from .ordinal import INFINITY

    report = CrossValidationReport()
    for table in tables:
        report.tables_checked += 1
        automaton = compile_clopen(table)
        trace = remainder_chain(automaton)
        tree = truncated_remainder(table)
        if not trace.guessable:
            report.rank_infinite.append(table)
            continue
        ranked = synthesize(automaton)
        for word in words_up_to(table.alphabet, word_length):
            want = tree.rank_of(word)
            got = word_rank(trace, word)
            if got is INFINITY or got.to_int() != want:
                report.rank_mismatches.append((table, word))
            if evaluate(ranked.guesser, word) != guesser_value(table, tree, word):
                report.guess_mismatches.append((table, word))
    return report
