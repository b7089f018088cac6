"""The shrinking remainder chain of a set, computed on automaton states.

Stage 0 keeps every reachable state.  A state survives into stage
beta+1 iff, moving only through stage-beta states, it still has both
an accepting continuation and a rejecting one.  The chain strictly
shrinks until it reaches its fixpoint; the set is guessable exactly
when the fixpoint is empty.

The word-level meaning is recovered through a correspondence this
module commits to and the oracle module cross-checks: a finite word
belongs to the stage-beta set iff every state along its run (start
state included) survives stage beta.  From that, the rank of a word
is the least stage at which some run state has fallen out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .cycles import can_reach_parity_cycle, cycle_nodes, forward_closure
from .ordinal import INFINITY, OrdinalCNF, Rank, from_int
from .space import ParitySet, Word


@dataclass(frozen=True)
class RemainderTrace:
    """The chain Q_0 > Q_1 > ... > Q_N (fixpoint), with per-state ranks.

    `alpha_s` is the stabilization index: the least stage equal to its
    successor.  `state_rank` maps each reachable state to the least
    stage it does not survive, or INFINITY for fixpoint states; every
    finite rank is a successor.
    """

    subject: ParitySet
    chain: tuple[frozenset[int], ...]
    alpha_s: OrdinalCNF
    state_rank: Mapping[int, Rank]

    @property
    def fixpoint(self) -> frozenset[int]:
        return self.chain[-1]

    @property
    def guessable(self) -> bool:
        return not self.fixpoint

    def stage(self, alpha: "OrdinalCNF | int") -> frozenset[int]:
        """The stage-alpha state set; indices beyond the fixpoint clamp."""
        if isinstance(alpha, OrdinalCNF):
            if not alpha.is_finite:
                return self.fixpoint
            alpha = alpha.to_int()
        return self.chain[min(alpha, len(self.chain) - 1)]

    def gap_stages(self) -> list[int]:
        """Stages alpha where the word-level set is nonempty but carries
        no infinite sequence.  The theory leaves open whether this can
        happen; it does, so instances are surfaced rather than assumed
        away."""
        out = []
        for alpha in range(len(self.chain)):
            if not s_alpha_empty(self, from_int(alpha)) and rm_alpha_empty(
                self, from_int(alpha)
            ):
                out.append(alpha)
        return out


def remainder_chain(s: ParitySet) -> RemainderTrace:
    """Iterate the both-continuations step to its fixpoint.

    Unreachable states are pruned first; emptiness of the fixpoint is
    a statement about words, and words only see reachable states.
    """
    reach = s.reachable_states()
    succ = s.successors()
    prio = lambda q: s.priority[q]

    chain = [frozenset(reach)]
    current = frozenset(reach)
    while True:
        acc = can_reach_parity_cycle(set(current), succ, prio, want=0)
        rej = can_reach_parity_cycle(set(current), succ, prio, want=1)
        nxt = frozenset(acc & rej)
        if nxt == current:
            break
        chain.append(nxt)
        current = nxt

    fixpoint = chain[-1]
    ranks: dict[int, Rank] = {}
    for q in reach:
        if q in fixpoint:
            ranks[q] = INFINITY
        else:
            for i, stage in enumerate(chain):
                if q not in stage:
                    ranks[q] = from_int(i)
                    break
    return RemainderTrace(
        subject=s,
        chain=tuple(chain),
        alpha_s=from_int(len(chain) - 1),
        state_rank=ranks,
    )


def word_rank(trace: RemainderTrace, word: Word) -> Rank:
    """Least stage at which the word falls out of the chain; INFINITY if
    every run state sits in the fixpoint.  Equals the minimum of the
    state ranks along the run."""
    best: Rank = INFINITY
    for q in trace.subject.run_states(word):
        r = trace.state_rank[q]
        if r < best:
            best = r
    return best


def in_s_alpha(trace: RemainderTrace, word: Word, alpha: OrdinalCNF) -> bool:
    """Membership of a word in the stage-alpha set: rank strictly above
    alpha, i.e. every run state survives stage alpha."""
    return word_rank(trace, word) > alpha


def s_alpha_empty(trace: RemainderTrace, alpha: OrdinalCNF) -> bool:
    """The stage-alpha word set is empty iff the empty word already fell
    out (the stage sets are closed under prefixes)."""
    return not in_s_alpha(trace, (), alpha)


def rm_alpha_empty(trace: RemainderTrace, alpha: OrdinalCNF) -> bool:
    """True iff no infinite run from the start stays inside stage alpha
    forever, i.e. the stage carries no point.

    This is not the same as the stage word set being empty: the word
    set can be nonempty while every branch of it dies out (see
    RemainderTrace.gap_stages).  When it holds, the next word stage is
    empty.
    """
    allowed = set(trace.stage(alpha))
    if trace.subject.start not in allowed:
        return True
    succ = trace.subject.successors()
    reach = forward_closure([trace.subject.start], allowed, succ)
    return not (cycle_nodes(reach, succ) & reach)


def is_guessable(s: ParitySet) -> bool:
    """True iff the remainder chain is eventually annihilated."""
    return remainder_chain(s).guessable
