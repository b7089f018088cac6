"""Finite-state guessers: machines that read a word and commit to a
membership opinion after every symbol.

A guesser guesses a set when, along every sequence, its opinion
converges to the sequence's membership bit.  The canonical guesser is
synthesized from the remainder chain; its mind-change budget is the
per-state rank minus one, which yields a ranked guesser whose bound
function never increases and drops strictly at every change of
opinion.  Verification is exact on ultimately periodic words, and a
product search either certifies a guesser against a set or returns an
ultimately periodic counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cycles import (
    can_reach_parity_cycle,
    forward_closure,
    is_nontrivial,
    shortest_word_path,
    strongly_connected_components,
)
from .ordinal import OrdinalCNF, pred
from .space import AlphabetMismatchError, ParitySet, UPWord, Word, membership_up
from .remainder import remainder_chain


class NotGuessableError(ValueError):
    """Raised when synthesis is asked for a set with nonempty fixpoint."""


@dataclass(frozen=True)
class MooreGuesser:
    """Deterministic machine with an output bit per state.

    The opinion on a word is the output of the state it reaches; the
    opinion at the empty word is the start state's output.
    """

    alphabet: int
    start: int
    delta: tuple[tuple[int, ...], ...]
    output: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.delta)
        if self.alphabet < 2:
            raise ValueError("alphabet size must be >= 2")
        if len(self.output) != n:
            raise ValueError("output map must cover every state")
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")
        for q, row in enumerate(self.delta):
            if len(row) != self.alphabet:
                raise ValueError(f"state {q} is missing transitions")
            for nxt in row:
                if not 0 <= nxt < n:
                    raise ValueError(f"transition target {nxt} out of range")
        if any(b not in (0, 1) for b in self.output):
            raise ValueError("outputs must be bits")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def state_after(self, word: Word) -> int:
        q = self.start
        for a in word:
            q = self.delta[q][a]
        return q

    def run_states(self, word: Word) -> list[int]:
        q = self.start
        states = [q]
        for a in word:
            q = self.delta[q][a]
            states.append(q)
        return states

    def reachable_states(self) -> set[int]:
        succ = {q: tuple(self.delta[q]) for q in range(self.n_states)}
        return forward_closure([self.start], set(range(self.n_states)), succ)


@dataclass(frozen=True)
class RankedGuesser:
    """A guesser with an ordinal mind-change bound factored through its
    states: the bound never increases along reachable transitions and
    drops strictly whenever the output flips.  All bound values stay
    below the codomain bound."""

    guesser: MooreGuesser
    bound: tuple[OrdinalCNF, ...]
    codomain: OrdinalCNF

    def __post_init__(self) -> None:
        if len(self.bound) != self.guesser.n_states:
            raise ValueError("bound map must cover every state")

    def root_bound(self) -> OrdinalCNF:
        return self.bound[self.guesser.start]

    def with_codomain(self, codomain: OrdinalCNF) -> "RankedGuesser":
        return RankedGuesser(self.guesser, self.bound, codomain)


def evaluate(g: MooreGuesser, word: Word) -> int:
    for a in word:
        if not 0 <= a < g.alphabet:
            raise AlphabetMismatchError(f"symbol {a} outside alphabet {g.alphabet}")
    return g.output[g.state_after(word)]


def limit_on_up(g: MooreGuesser, w: UPWord) -> Optional[int]:
    """Eventual opinion along an ultimately periodic word: the constant
    output on the guesser's period cycle, or None when the outputs on
    the cycle disagree (the opinion diverges)."""
    if w.max_symbol >= g.alphabet:
        raise AlphabetMismatchError(
            f"word uses symbol {w.max_symbol} outside alphabet {g.alphabet}"
        )
    q = g.state_after(w.prefix)
    seen = {q: 0}
    blocks = [q]
    while True:
        for a in w.period:
            q = g.delta[q][a]
        if q in seen:
            first = seen[q]
            break
        seen[q] = len(blocks)
        blocks.append(q)
    outputs = set()
    for block_start in blocks[first:]:
        p = block_start
        outputs.add(g.output[p])
        for a in w.period:
            p = g.delta[p][a]
            outputs.add(g.output[p])
    if len(outputs) == 1:
        return outputs.pop()
    return None


def verify_on_up(g: MooreGuesser, s: ParitySet, w: UPWord) -> bool:
    """True iff the opinion converges on w and lands on the right side."""
    if g.alphabet != s.alphabet:
        raise AlphabetMismatchError(
            f"alphabet mismatch: {g.alphabet} vs {s.alphabet}"
        )
    limit = limit_on_up(g, w)
    return limit is not None and limit == membership_up(s, w)


def mind_changes(g: MooreGuesser, word: Word) -> int:
    states = g.run_states(word)
    return sum(
        1
        for i in range(len(states) - 1)
        if g.output[states[i]] != g.output[states[i + 1]]
    )


def check_bound(rg: RankedGuesser) -> bool:
    """Finite check of the two bound conditions over every reachable
    transition, plus the codomain cap."""
    g = rg.guesser
    reach = g.reachable_states()
    for q in reach:
        if not rg.bound[q] < rg.codomain:
            return False
        for a in range(g.alphabet):
            nxt = g.delta[q][a]
            if rg.bound[nxt] > rg.bound[q]:
                return False
            if g.output[nxt] != g.output[q] and not rg.bound[nxt] < rg.bound[q]:
                return False
    return True


def mind_change_rank(s: ParitySet) -> Optional[OrdinalCNF]:
    """Least stage at which the word chain empties; None when the set is
    not guessable.  This equals the least alpha such that the set is
    guessable with fewer than alpha mind changes."""
    trace = remainder_chain(s)
    if not trace.guessable:
        return None
    rank = trace.state_rank[s.start]
    assert isinstance(rank, OrdinalCNF)
    return rank


def synthesize(s: ParitySet) -> RankedGuesser:
    """Build the canonical guesser from the remainder chain.

    Per automaton state q with rank r, infinite continuations inside
    stage r-1 are all accepting, all rejecting, or absent.  The first
    two cases fix the output; the absent case inherits the previous
    output, realised by pairing states with the last output bit (the
    root with no continuations outputs 0).  The bound of a state is
    its rank minus one; the codomain is the stabilization index.
    """
    trace = remainder_chain(s)
    if not trace.guessable:
        raise NotGuessableError("fixpoint is nonempty; no guesser exists")
    succ = s.successors()
    prio = lambda q: s.priority[q]

    survivors_cache: dict[int, tuple[set, set]] = {}

    def continuations(stage_index: int) -> tuple[set, set]:
        if stage_index not in survivors_cache:
            stage = set(trace.stage(stage_index))
            survivors_cache[stage_index] = (
                can_reach_parity_cycle(stage, succ, prio, want=0),
                can_reach_parity_cycle(stage, succ, prio, want=1),
            )
        return survivors_cache[stage_index]

    decision: dict[int, Optional[int]] = {}
    for q in trace.state_rank:
        r = trace.state_rank[q]
        assert isinstance(r, OrdinalCNF)
        acc_set, rej_set = continuations(pred(r).to_int())
        acc, rej = q in acc_set, q in rej_set
        if acc and rej:
            raise AssertionError("state past its rank keeps both continuations")
        decision[q] = 1 if acc else 0 if rej else None

    def out_for(q: int, prev: int) -> int:
        d = decision[q]
        return prev if d is None else d

    root_out = out_for(s.start, 0)
    start_key = (s.start, root_out)
    index = {start_key: 0}
    order = [start_key]
    rows: list[list[int]] = []
    i = 0
    while i < len(order):
        q, b = order[i]
        row = []
        for a in range(s.alphabet):
            nq = s.delta[q][a]
            key = (nq, out_for(nq, b))
            if key not in index:
                index[key] = len(order)
                order.append(key)
            row.append(index[key])
        rows.append(row)
        i += 1

    outputs = tuple(b for _, b in order)
    bounds = []
    for q, _ in order:
        r = trace.state_rank[q]
        assert isinstance(r, OrdinalCNF)
        bounds.append(pred(r))
    guesser = MooreGuesser(
        alphabet=s.alphabet,
        start=0,
        delta=tuple(tuple(r) for r in rows),
        output=outputs,
    )
    return RankedGuesser(
        guesser=guesser, bound=tuple(bounds), codomain=trace.alpha_s
    )


def divergence_witness(g: MooreGuesser, s: ParitySet) -> Optional[UPWord]:
    """Search the product of guesser and set for an ultimately periodic
    counterexample: a reachable cycle on which the opinion oscillates,
    or stays constant on the wrong side of membership.

    Returns None exactly when no reachable product cycle falsifies,
    which certifies the guesser on every ultimately periodic word.
    The search is deterministic; candidates are generated shortest
    first and the least (by spelled length, then symbols) is returned.
    """
    if g.alphabet != s.alphabet:
        raise AlphabetMismatchError(
            f"alphabet mismatch: {g.alphabet} vs {s.alphabet}"
        )
    k = g.alphabet
    start = (g.start, s.start)

    def step(node: tuple[int, int], a: int) -> tuple[int, int]:
        return (g.delta[node[0]][a], s.delta[node[1]][a])

    # breadth-first access paths, symbol order: shortest then lex-least
    access: dict[tuple[int, int], tuple[int, ...]] = {start: ()}
    frontier = [start]
    while frontier:
        nxt_frontier = []
        for node in frontier:
            for a in range(k):
                nxt = step(node, a)
                if nxt not in access:
                    access[nxt] = access[node] + (a,)
                    nxt_frontier.append(nxt)
        frontier = nxt_frontier

    nodes = set(access)
    succ = {node: tuple(step(node, a) for a in range(k)) for node in nodes}
    out = lambda node: g.output[node[0]]
    prio = lambda node: s.priority[node[1]]

    candidates: list[tuple[Word, Word]] = []

    def add_cycle_candidate(anchor: tuple[int, int], allowed: set) -> None:
        found = shortest_word_path(
            anchor, {anchor}, allowed, step, k, min_len=1
        )
        if found is not None:
            candidates.append((access[anchor], found[0]))

    # (a) cycles with oscillating opinion
    for comp in strongly_connected_components(nodes, succ):
        comp_set = set(comp)
        adj = {n: [m for m in succ[n] if m in comp_set] for n in comp}
        if not is_nontrivial(comp, adj):
            continue
        outs = {out(n) for n in comp}
        if len(outs) < 2:
            continue
        anchor = min(comp, key=lambda n: (len(access[n]), access[n]))
        other = {n for n in comp_set if out(n) != out(anchor)}
        leg1 = shortest_word_path(anchor, other, comp_set, step, k, min_len=1)
        assert leg1 is not None
        word1, mid = leg1
        leg2 = shortest_word_path(mid, {anchor}, comp_set, step, k, min_len=1)
        assert leg2 is not None
        candidates.append((access[anchor], word1 + leg2[0]))

    # (b) constant-opinion cycles on the wrong side of membership
    for b in (0, 1):
        wrong_parity = 0 if b == 0 else 1  # membership 1-b on the cycle
        sub_b = {n for n in nodes if out(n) == b}
        for p in sorted({prio(n) for n in sub_b}):
            if p % 2 != wrong_parity:
                continue
            sub = {n for n in sub_b if prio(n) <= p}
            for comp in strongly_connected_components(sub, succ):
                comp_set = set(comp)
                adj = {n: [m for m in succ[n] if m in comp_set] for n in comp}
                if not is_nontrivial(comp, adj):
                    continue
                tops = [n for n in comp if prio(n) == p]
                if not tops:
                    continue
                anchor = min(tops, key=lambda n: (len(access[n]), access[n]))
                add_cycle_candidate(anchor, comp_set)

    if not candidates:
        return None
    u, v = min(candidates, key=lambda c: (len(c[0]) + len(c[1]), len(c[0]), c[0], c[1]))
    witness = UPWord(u, v)
    assert not verify_on_up(g, s, witness)
    return witness


def constant_guesser(alphabet: int, bit: int) -> MooreGuesser:
    return MooreGuesser(
        alphabet=alphabet, start=0, delta=((0,) * alphabet,), output=(bit,)
    )


def flip_outputs(g: MooreGuesser) -> MooreGuesser:
    """The complementary guesser 1-G."""
    return MooreGuesser(
        alphabet=g.alphabet,
        start=g.start,
        delta=g.delta,
        output=tuple(1 - b for b in g.output),
    )
