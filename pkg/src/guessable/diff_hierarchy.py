"""Difference hierarchy sets and their exchange with ranked guessers.

A level-theta set is built from an increasing chain of theta open
sets: a point belongs iff it enters some chain member and the least
index it enters has parity opposite to theta.  Chains convert to
ranked guessers (watch the least index whose member the current
cylinder is forced into) and ranked guessers convert back to chains
(sublevel sets of the bound function), giving a two-sided, machine
checked bridge between mind-change budgets and hierarchy levels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .cycles import backward_closure, cycle_nodes
from .ordinal import OrdinalCNF, congruent, from_int, parity, pred, succ
from .space import (
    OpenSet,
    ParitySet,
    UPWord,
    complement,
    equivalent,
    make_open,
    open_subset,
)
from .guesser import (
    MooreGuesser,
    RankedGuesser,
    check_bound,
    flip_outputs,
    mind_change_rank,
    synthesize,
)


class ChainNotIncreasingError(ValueError):
    """Raised when the member sets of a chain fail to increase."""


class BoundViolationError(ValueError):
    """Raised when a ranked guesser fails its bound conditions."""


class RootNotZeroError(ValueError):
    """Raised when chain extraction needs the complement flip first."""


class Side(enum.Enum):
    SELF = "SELF"
    COMPLEMENT = "COMPLEMENT"
    BOTH = "BOTH"
    NEITHER = "NEITHER"


@dataclass(frozen=True)
class OpenChain:
    """An increasing sequence A_0 <= A_1 <= ... of open sets; the length
    is the (finite) hierarchy level theta >= 1."""

    sets: tuple[OpenSet, ...]

    def __post_init__(self) -> None:
        if not self.sets:
            raise ChainNotIncreasingError("a chain needs at least one member")
        k = self.sets[0].alphabet
        for member in self.sets:
            if member.alphabet != k:
                raise ChainNotIncreasingError("chain members must share an alphabet")
        for a, b in zip(self.sets, self.sets[1:]):
            if not open_subset(a, b):
                raise ChainNotIncreasingError("chain members must increase")

    @property
    def theta(self) -> OrdinalCNF:
        return from_int(len(self.sets))

    @property
    def theta_int(self) -> int:
        return len(self.sets)

    @property
    def alphabet(self) -> int:
        return self.sets[0].alphabet


def d_theta(chain: OpenChain) -> ParitySet:
    """The level-theta set of the chain, as a parity automaton.

    The product tracks one state per member; since members are
    absorbing-reachability sets, the least entered index can only
    decrease along a run, so state priorities (even exactly when the
    current least index has parity opposite to theta) evaluate the
    membership rule exactly.
    """
    theta = chain.theta_int
    k = chain.alphabet
    members = [m.automaton for m in chain.sets]
    targets = [m.target for m in chain.sets]

    def least_index(profile: tuple[int, ...]) -> Optional[int]:
        for eta, q in enumerate(profile):
            if q in targets[eta]:
                return eta
        return None

    start = tuple(m.start for m in members)
    index = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    prio: list[int] = []
    i = 0
    while i < len(order):
        profile = order[i]
        eta = least_index(profile)
        good = eta is not None and parity(from_int(eta)) != theta % 2
        prio.append(2 if good else 1)
        row = []
        for a in range(k):
            nxt = tuple(m.delta[q][a] for m, q in zip(members, profile))
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(row)
        i += 1
    return ParitySet(
        alphabet=k,
        start=0,
        delta=tuple(tuple(r) for r in rows),
        priority=tuple(prio),
    )


def _forced_states(member: OpenSet) -> set[int]:
    """States from which every infinite run enters the member's target:
    no cycle is reachable in the non-target subgraph."""
    aut = member.automaton
    non_target = {q for q in range(aut.n_states) if q not in member.target}
    succ = aut.successors()
    live = cycle_nodes(non_target, succ)
    doomed = backward_closure(live, non_target, succ)
    return set(range(aut.n_states)) - doomed


def chain_to_guesser(chain: OpenChain) -> RankedGuesser:
    """Watch the least member the current cylinder is forced into.

    While no member is forced, output 0 with bound theta; once the
    least forced index is eta, output by the parity comparison of eta
    against theta and bound eta.  Forcedness only grows along a run,
    so the bound never increases and drops exactly at output changes;
    the codomain is theta+1.
    """
    theta = chain.theta_int
    k = chain.alphabet
    members = [m.automaton for m in chain.sets]
    forced = [_forced_states(m) for m in chain.sets]

    def eta_of(profile: tuple[int, ...]) -> Optional[int]:
        for eta in range(theta):
            if profile[eta] in forced[eta]:
                return eta
        return None

    start = tuple(m.start for m in members)
    index = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    i = 0
    while i < len(order):
        profile = order[i]
        row = []
        for a in range(k):
            nxt = tuple(m.delta[q][a] for m, q in zip(members, profile))
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(row)
        i += 1

    outputs = []
    bounds = []
    for profile in order:
        eta = eta_of(profile)
        if eta is None:
            outputs.append(0)
            bounds.append(from_int(theta))
        else:
            outputs.append(0 if eta % 2 == theta % 2 else 1)
            bounds.append(from_int(eta))
    guesser = MooreGuesser(
        alphabet=k,
        start=0,
        delta=tuple(tuple(r) for r in rows),
        output=tuple(outputs),
    )
    return RankedGuesser(
        guesser=guesser, bound=tuple(bounds), codomain=from_int(theta + 1)
    )


def normalize_h(rg: RankedGuesser) -> RankedGuesser:
    """Rebuild the bound so that it is constant between mind changes and
    flips parity at every mind change, keeping the root bound, the
    outputs, and the bound conditions.

    The machine is refined with the current normalized value: at a
    mind change the new value is the old bound there, or its
    successor, whichever has parity opposite to the value held so far.
    """
    if not check_bound(rg):
        raise BoundViolationError("input fails its bound conditions")
    g = rg.guesser
    start_key = (g.start, rg.bound[g.start])
    index = {start_key: 0}
    order = [start_key]
    rows: list[list[int]] = []
    i = 0
    while i < len(order):
        p, held = order[i]
        row = []
        for a in range(g.alphabet):
            np = g.delta[p][a]
            if g.output[np] == g.output[p]:
                value = held
            else:
                raw = rg.bound[np]
                value = raw if parity(raw) != parity(held) else succ(raw)
            key = (np, value)
            if key not in index:
                index[key] = len(order)
                order.append(key)
            row.append(index[key])
        rows.append(row)
        i += 1
    guesser = MooreGuesser(
        alphabet=g.alphabet,
        start=0,
        delta=tuple(tuple(r) for r in rows),
        output=tuple(g.output[p] for p, _ in order),
    )
    out = RankedGuesser(
        guesser=guesser,
        bound=tuple(value for _, value in order),
        codomain=rg.codomain,
    )
    if not check_bound(out):
        raise AssertionError("normalisation broke the bound conditions")
    return out


def bound_limit_on_up(rg: RankedGuesser, w: UPWord) -> OrdinalCNF:
    """Eventual bound value along an ultimately periodic word.  The
    bound never increases, so it is constant on the period cycle."""
    g = rg.guesser
    q = g.state_after(w.prefix)
    seen = {q}
    while True:
        for a in w.period:
            q = g.delta[q][a]
        if q in seen:
            break
        seen.add(q)
    values = set()
    p = q
    values.add(rg.bound[p])
    for a in w.period:
        p = g.delta[p][a]
        values.add(rg.bound[p])
    if len(values) != 1:
        raise AssertionError("bound oscillates on a cycle")
    return values.pop()


def make_anticongruent(rg: RankedGuesser) -> RankedGuesser:
    """Adjust the root bound (if needed) and normalize, so that the
    eventual bound parity relates to the eventual output the same way
    everywhere: opposite when the root output is congruent to the
    codomain, equal otherwise."""
    if not check_bound(rg):
        raise BoundViolationError("input fails its bound conditions")
    g = rg.guesser
    g0 = g.output[g.start]
    h0 = rg.bound[g.start]
    want_anti = congruent(g0, rg.codomain)
    aligned = (parity(h0) != g0 % 2) if want_anti else (parity(h0) == g0 % 2)
    if not aligned:
        # both misalignments put the root bound congruent to the
        # codomain, so bumping it by one stays below the codomain
        bumped = succ(h0)
        if not bumped < rg.codomain:
            raise AssertionError("root bump escaped the codomain")
        n = g.n_states
        delta = g.delta + (g.delta[g.start],)
        output = g.output + (g0,)
        bound = rg.bound + (bumped,)
        rg = RankedGuesser(
            guesser=MooreGuesser(
                alphabet=g.alphabet, start=n, delta=delta, output=output
            ),
            bound=bound,
            codomain=rg.codomain,
        )
        if not check_bound(rg):
            raise BoundViolationError("root adjustment broke the bound")
    return normalize_h(rg)


def guesser_to_chain(rg: RankedGuesser) -> OpenChain:
    """Extract an increasing open chain whose level set is the set the
    guesser guesses, from the sublevel sets of the anticongruent bound.

    Requires a root output of 0 (flip to the complement otherwise) and
    a successor codomain alpha+1.  When alpha is 0 the codomain is
    widened to 2 so the chain has a member; the guesser still
    witnesses the wider budget.
    """
    if rg.guesser.output[rg.guesser.start] != 0:
        raise RootNotZeroError(
            "root output is 1: extract a chain for the complement instead"
        )
    if not check_bound(rg):
        raise BoundViolationError("input fails its bound conditions")
    if not rg.codomain.is_successor:
        raise ValueError("codomain must be a successor ordinal")
    alpha = pred(rg.codomain)
    if alpha.is_zero:
        alpha = from_int(1)
        rg = rg.with_codomain(from_int(2))
    adjusted = make_anticongruent(rg)
    g = adjusted.guesser
    reach = sorted(g.reachable_states())
    renumber = {q: i for i, q in enumerate(reach)}
    alpha_n = alpha.to_int()
    members = []
    for eta in range(alpha_n):
        target = [renumber[q] for q in reach if adjusted.bound[q] <= from_int(eta)]
        delta = tuple(
            tuple(renumber[g.delta[q][a]] for a in range(g.alphabet))
            for q in reach
        )
        members.append(
            make_open(g.alphabet, renumber[g.start], delta, target)
        )
    return OpenChain(tuple(members))


@dataclass(frozen=True)
class Classification:
    """Where a set sits: its mind-change rank, which of the set or its
    complement carries a hierarchy witness, and the witnessing chain."""

    rank: Optional[OrdinalCNF]
    side: Side
    chain: Optional[OpenChain]


def classify(s: ParitySet) -> Classification:
    """Rank the set and produce a witnessing chain for it or for its
    complement, following the root-output dichotomy of the canonical
    guesser.  Reports BOTH when the opposite side is also certified by
    an explicit root-repaired construction; this preference is a
    policy of this artifact, not of the theory."""
    rank = mind_change_rank(s)
    if rank is None:
        return Classification(rank=None, side=Side.NEITHER, chain=None)
    canonical = synthesize(s)
    alpha = max(rank.to_int() - 1, 1)
    wide = canonical.with_codomain(from_int(alpha + 1))
    root = canonical.guesser.output[canonical.guesser.start]
    if root == 0:
        primary_side = Side.SELF
        chain = guesser_to_chain(wide)
        secondary_guesser = flip_outputs(wide.guesser)
        secondary_target = complement(s)
    else:
        primary_side = Side.COMPLEMENT
        chain = guesser_to_chain(
            RankedGuesser(flip_outputs(wide.guesser), wide.bound, wide.codomain)
        )
        secondary_guesser = wide.guesser
        secondary_target = s
    secondary = _attempt_root_zero_chain(
        RankedGuesser(secondary_guesser, wide.bound, wide.codomain),
        secondary_target,
    )
    if secondary is not None:
        if primary_side is Side.COMPLEMENT:
            chain = secondary
        return Classification(rank=rank, side=Side.BOTH, chain=chain)
    return Classification(rank=rank, side=primary_side, chain=chain)


def _attempt_root_zero_chain(
    rg: RankedGuesser, target: ParitySet
) -> Optional[OpenChain]:
    """Try to force a root output of 0 by splitting the start state and
    raising its bound within the codomain; certify the extracted chain
    by equivalence with the target, or give up."""
    g = rg.guesser
    if g.output[g.start] != 0:
        n = g.n_states
        candidate = rg.bound[g.start]
        repaired = None
        while candidate < rg.codomain:
            trial = RankedGuesser(
                guesser=MooreGuesser(
                    alphabet=g.alphabet,
                    start=n,
                    delta=g.delta + (g.delta[g.start],),
                    output=g.output + (0,),
                ),
                bound=rg.bound + (candidate,),
                codomain=rg.codomain,
            )
            if check_bound(trial):
                repaired = trial
                break
            candidate = succ(candidate)
        if repaired is None:
            return None
        rg = repaired
    try:
        chain = guesser_to_chain(rg)
    except (RootNotZeroError, BoundViolationError):
        return None
    if equivalent(d_theta(chain), target):
        return chain
    return None
