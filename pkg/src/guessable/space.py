"""Finite representations of subsets of Sigma^omega.

The base space is Sigma^omega for a finite alphabet Sigma = {0..k-1},
k >= 2.  Sets are represented by deterministic complete parity
automata with one global acceptance convention: a sequence belongs to
the set iff the maximum priority visited infinitely often along its
run is even.  Membership is evaluated exactly on ultimately periodic
words; arbitrary sequences are never sampled as if exact.

The restriction to finite alphabets is deliberate.  The underlying
theory lives in the infinite-branching sequence space; every statement
used here is alphabet agnostic, and finite branching is what makes all
of the operations below decidable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

from .cycles import forward_closure, parity_cycle_nodes

Word = tuple[int, ...]


class AlphabetMismatchError(ValueError):
    """Raised when operands live over different alphabets."""


def parse_word(text: str) -> Word:
    """Digits to a word, e.g. "010" -> (0, 1, 0). "e" is the empty word."""
    text = text.strip()
    if text in ("", "e", "eps"):
        return ()
    if not text.isdigit():
        raise ValueError(f"bad word literal {text!r}")
    return tuple(int(ch) for ch in text)


def format_word(word: Word) -> str:
    return "".join(str(s) for s in word) if word else "e"


def words_up_to(alphabet: int, length: int) -> Iterator[Word]:
    """All words of length <= `length`, shortest first, lexicographic."""
    for n in range(length + 1):
        yield from itertools.product(range(alphabet), repeat=n)


@dataclass(frozen=True)
class UPWord:
    """Ultimately periodic word u * v^omega, kept in canonical form.

    Canonical means the period is primitive (not a proper power) and
    the prefix is minimal (no common tail is left to rotate into the
    period).  Two literals denoting the same point are equal after
    construction.
    """

    prefix: Word
    period: Word

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(s < 0 for s in self.prefix + self.period):
            raise ValueError("symbols must be non-negative")
        u, v = _canonical_up(self.prefix, self.period)
        object.__setattr__(self, "prefix", u)
        object.__setattr__(self, "period", v)

    def head(self, n: int) -> Word:
        """The first n symbols."""
        out = list(self.prefix[:n])
        i = 0
        while len(out) < n:
            out.append(self.period[i % len(self.period)])
            i += 1
        return tuple(out)

    def symbol(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    @property
    def max_symbol(self) -> int:
        return max(self.prefix + self.period)

    @classmethod
    def from_literal(cls, text: str) -> "UPWord":
        """Parse `u(v)`, e.g. `001(10)`; u may be empty: `(10)`."""
        text = text.strip()
        if not text.endswith(")") or "(" not in text:
            raise ValueError(f"bad UP word literal {text!r}")
        upart, vpart = text[:-1].split("(", 1)
        if "(" in vpart or ")" in upart:
            raise ValueError(f"bad UP word literal {text!r}")
        u = tuple(int(ch) for ch in upart) if upart else ()
        if not vpart.isdigit():
            raise ValueError(f"bad UP word literal {text!r}")
        v = tuple(int(ch) for ch in vpart)
        return cls(u, v)

    def __str__(self) -> str:
        u = "".join(str(s) for s in self.prefix)
        v = "".join(str(s) for s in self.period)
        return f"{u}({v})"


def _canonical_up(u: Word, v: Word) -> tuple[Word, Word]:
    # primitive root of the period
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v == v[: d] * (n // d):
            v = v[:d]
            break
    # absorb a shared tail: u.x (y.x)^w == u (x.y)^w
    u, v = list(u), list(v)
    while u and u[-1] == v[-1]:
        last = v.pop()
        v.insert(0, last)
        u.pop()
    return tuple(u), tuple(v)


def canonical_up_words(alphabet: int, count: int) -> list[UPWord]:
    """The first `count` distinct UP words over the alphabet, ordered by
    total spelled length, then prefix length, then symbols."""
    out: list[UPWord] = []
    seen: set[UPWord] = set()
    total = 1
    while len(out) < count:
        for plen in range(1, total + 1):
            ulen = total - plen
            for u in itertools.product(range(alphabet), repeat=ulen):
                for v in itertools.product(range(alphabet), repeat=plen):
                    w = UPWord(u, v)
                    if w not in seen:
                        seen.add(w)
                        out.append(w)
                        if len(out) == count:
                            return out
        total += 1
    return out


# -- parity automata ------------------------------------------------


@dataclass(frozen=True)
class ParitySet:
    """Deterministic complete parity automaton over {0..alphabet-1}.

    States are 0..n-1; delta[q][a] is the successor of q on symbol a.
    A sequence is in the set iff the maximum priority seen infinitely
    often along its run is even.
    """

    alphabet: int
    start: int
    delta: tuple[tuple[int, ...], ...]
    priority: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.delta)
        if self.alphabet < 2:
            raise ValueError("alphabet size must be >= 2")
        if n == 0:
            raise ValueError("automaton needs at least one state")
        if len(self.priority) != n:
            raise ValueError("priority map must cover every state")
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")
        for q, row in enumerate(self.delta):
            if len(row) != self.alphabet:
                raise ValueError(f"state {q} is missing transitions")
            for nxt in row:
                if not 0 <= nxt < n:
                    raise ValueError(f"transition target {nxt} out of range")
        if any(p < 0 for p in self.priority):
            raise ValueError("priorities must be non-negative")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def step(self, q: int, a: int) -> int:
        return self.delta[q][a]

    def state_after(self, word: Word) -> int:
        q = self.start
        for a in word:
            q = self.delta[q][a]
        return q

    def run_states(self, word: Word) -> list[int]:
        """States visited reading `word`, start state included."""
        q = self.start
        states = [q]
        for a in word:
            q = self.delta[q][a]
            states.append(q)
        return states

    def successors(self) -> dict[int, tuple[int, ...]]:
        return {q: tuple(self.delta[q]) for q in range(self.n_states)}

    def reachable_states(self) -> set[int]:
        return forward_closure(
            [self.start], set(range(self.n_states)), self.successors()
        )


def _check_alphabets(*sets: "ParitySet") -> int:
    k = sets[0].alphabet
    for s in sets[1:]:
        if s.alphabet != k:
            raise AlphabetMismatchError(
                f"alphabet mismatch: {s.alphabet} vs {k}"
            )
    return k


def complement(s: ParitySet) -> ParitySet:
    """Same structure, every priority bumped by one: membership flips."""
    return ParitySet(
        alphabet=s.alphabet,
        start=s.start,
        delta=s.delta,
        priority=tuple(p + 1 for p in s.priority),
    )


def membership_up(s: ParitySet, w: UPWord) -> int:
    """Exact membership of an ultimately periodic word.

    Runs the prefix, then iterates period blocks until the block-start
    state repeats; the states inside the repeating block window are
    exactly those visited infinitely often.
    """
    if w.max_symbol >= s.alphabet:
        raise AlphabetMismatchError(
            f"word uses symbol {w.max_symbol} outside alphabet {s.alphabet}"
        )
    q = s.state_after(w.prefix)
    seen = {q: 0}
    states = [q]
    while True:
        for a in w.period:
            q = s.delta[q][a]
        if q in seen:
            first = seen[q]
            break
        seen[q] = len(states)
        states.append(q)
    best = 0
    for block_start in states[first:]:
        p = block_start
        best = max(best, s.priority[p])
        for a in w.period:
            p = s.delta[p][a]
            best = max(best, s.priority[p])
    return 1 if best % 2 == 0 else 0


def is_empty(s: ParitySet) -> bool:
    """True iff no point is in the set: no reachable cycle has an even
    maximum priority."""
    reach = s.reachable_states()
    succ = s.successors()
    good = parity_cycle_nodes(reach, succ, lambda q: s.priority[q], want=0)
    return not good


def equivalent(s: ParitySet, t: ParitySet) -> bool:
    """True iff both sets contain exactly the same points, via emptiness
    of both difference products."""
    _check_alphabets(s, t)
    return is_empty(product_boolean(s, t, "diff")) and is_empty(
        product_boolean(t, s, "diff")
    )


# -- boolean products -----------------------------------------------
#
# Complement is free (bump priorities).  Intersection is the real
# construction: the conjunction of two max-even parity conditions is a
# Streett condition (one pair per odd priority per side), and a
# deterministic Streett condition turns back into a parity condition
# with an index appearance record.  The record keeps pair indices
# ordered by how recently they were granted; a request strictly in
# front of every grant is a suspicious event and emits an odd
# priority, a grant at the frontmost touched position emits an even
# one.  Union, difference and xor reduce to intersection and
# complement.  Pointwise correctness on all UP words is exercised
# exhaustively in the test suite.

BooleanOp = Literal["and", "or", "xor", "diff"]


def product_boolean(s: ParitySet, t: ParitySet, op: BooleanOp) -> ParitySet:
    _check_alphabets(s, t)
    if op == "and":
        return _intersection(s, t)
    if op == "or":
        return complement(_intersection(complement(s), complement(t)))
    if op == "diff":
        return _intersection(s, complement(t))
    if op == "xor":
        return product_boolean(
            product_boolean(s, t, "diff"), product_boolean(t, s, "diff"), "or"
        )
    raise ValueError(f"unknown boolean op {op!r}")


def _intersection(s: ParitySet, t: ParitySet) -> ParitySet:
    k = s.alphabet
    pairs: list[tuple[int, int]] = []
    for o in sorted({p for p in s.priority if p % 2 == 1}):
        pairs.append((0, o))
    for o in sorted({p for p in t.priority if p % 2 == 1}):
        pairs.append((1, o))
    npairs = len(pairs)

    def events(sq: int, tq: int) -> tuple[set[int], set[int]]:
        prios = (s.priority[sq], t.priority[tq])
        grants = {j for j, (side, o) in enumerate(pairs) if prios[side] > o}
        requests = {j for j, (side, o) in enumerate(pairs) if prios[side] == o}
        return grants, requests

    def emit(record: tuple[int, ...], grants: set[int], requests: set[int]) -> int:
        pos = {j: i + 1 for i, j in enumerate(record)}
        g = min((pos[j] for j in grants), default=None)
        r = min((pos[j] for j in requests), default=None)
        if g is None and r is None:
            return 0
        if g is not None and (r is None or g <= r):
            return 2 * (npairs + 1 - g)
        return 2 * (npairs + 1 - r) - 1

    def advance(record: tuple[int, ...], grants: set[int]) -> tuple[int, ...]:
        stay = tuple(j for j in record if j not in grants)
        moved = tuple(j for j in record if j in grants)
        return stay + moved

    start = (s.start, t.start, tuple(range(npairs)))
    index = {start: 0}
    order = [start]
    delta_rows: list[list[int]] = []
    prio: list[int] = []
    i = 0
    while i < len(order):
        sq, tq, record = order[i]
        grants, requests = events(sq, tq)
        prio.append(emit(record, grants, requests))
        rec_next = advance(record, grants)
        row = []
        for a in range(k):
            nxt = (s.delta[sq][a], t.delta[tq][a], rec_next)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta_rows.append(row)
        i += 1
    return ParitySet(
        alphabet=k,
        start=0,
        delta=tuple(tuple(r) for r in delta_rows),
        priority=tuple(prio),
    )


# -- clopen tables --------------------------------------------------


@dataclass(frozen=True)
class ClopenTable:
    """A set whose membership depends only on the first `depth` symbols.

    `values` is indexed by the base-k encoding of the depth-d prefix.
    """

    alphabet: int
    depth: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.alphabet < 2:
            raise ValueError("alphabet size must be >= 2")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if len(self.values) != self.alphabet**self.depth:
            raise ValueError("table must have one entry per depth-d word")
        if any(v not in (0, 1) for v in self.values):
            raise ValueError("table entries must be 0 or 1")

    def encode(self, word: Word) -> int:
        if len(word) < self.depth:
            raise ValueError("word shorter than table depth")
        code = 0
        for a in word[: self.depth]:
            if not 0 <= a < self.alphabet:
                raise ValueError(f"symbol {a} outside alphabet")
            code = code * self.alphabet + a
        return code

    def lookup(self, word: Word) -> int:
        """Membership class of every extension of a length >= d word."""
        return self.values[self.encode(word)]

    def lookup_up(self, w: UPWord) -> int:
        return self.lookup(w.head(self.depth))


def cylinder(s: Word, alphabet: int = 2) -> ClopenTable:
    """The basic open set of all sequences extending s, as a table of
    depth len(s)."""
    for a in s:
        if not 0 <= a < alphabet:
            raise ValueError(f"symbol {a} outside alphabet {alphabet}")
    size = alphabet ** len(s)
    values = [0] * size
    if s:
        code = 0
        for a in s:
            code = code * alphabet + a
        values[code] = 1
    else:
        values = [1] * size
    return ClopenTable(alphabet=alphabet, depth=len(s), values=tuple(values))


def compile_clopen(t: ClopenTable) -> ParitySet:
    """Prefix tree of depth d feeding two absorbing sinks.

    State count is at most 1 + k + ... + k^(d-1) internal nodes plus
    the accepting and rejecting sinks.
    """
    k = t.alphabet
    if t.depth == 0:
        accept = t.values[0] == 1
        return ParitySet(
            alphabet=k,
            start=0,
            delta=((0,) * k,),
            priority=(2 if accept else 1,),
        )
    internal: list[Word] = []
    for n in range(t.depth):
        internal.extend(itertools.product(range(k), repeat=n))
    index = {w: i for i, w in enumerate(internal)}
    acc = len(internal)
    rej = acc + 1
    rows: list[tuple[int, ...]] = []
    for w in internal:
        row = []
        for a in range(k):
            child = w + (a,)
            if len(child) < t.depth:
                row.append(index[child])
            else:
                row.append(acc if t.lookup(child) == 1 else rej)
        rows.append(tuple(row))
    rows.append((acc,) * k)
    rows.append((rej,) * k)
    priority = tuple([1] * len(internal) + [2, 1])
    return ParitySet(alphabet=k, start=0, delta=tuple(rows), priority=priority)


# -- open sets ------------------------------------------------------


@dataclass(frozen=True)
class OpenSet:
    """Reachability-acceptance set: a point belongs iff its run ever
    enters the target class, which is absorbing.

    Represented as a parity automaton with derived priorities (2 on
    target states, 1 elsewhere), so every generic operation applies.
    """

    automaton: ParitySet
    target: frozenset[int]

    def __post_init__(self) -> None:
        aut = self.automaton
        for q in self.target:
            if not 0 <= q < aut.n_states:
                raise ValueError("target state out of range")
            for a in range(aut.alphabet):
                if aut.delta[q][a] not in self.target:
                    raise ValueError("target class must be absorbing")
        for q in range(aut.n_states):
            want = 2 if q in self.target else 1
            if aut.priority[q] != want:
                raise ValueError("priorities must be derived from the target")

    @property
    def alphabet(self) -> int:
        return self.automaton.alphabet

    def to_parity(self) -> ParitySet:
        return self.automaton


def make_open(
    alphabet: int,
    start: int,
    delta: tuple[tuple[int, ...], ...],
    target: Iterable[int],
) -> OpenSet:
    tset = frozenset(target)
    priority = tuple(2 if q in tset else 1 for q in range(len(delta)))
    aut = ParitySet(alphabet=alphabet, start=start, delta=delta, priority=priority)
    return OpenSet(automaton=aut, target=tset)


def open_from_parity(s: ParitySet) -> OpenSet:
    """Reinterpret a parity automaton with absorbing even-priority class
    as an open set."""
    target = frozenset(q for q in range(s.n_states) if s.priority[q] % 2 == 0)
    priority = tuple(2 if q in target else 1 for q in range(s.n_states))
    aut = ParitySet(
        alphabet=s.alphabet, start=s.start, delta=s.delta, priority=priority
    )
    return OpenSet(automaton=aut, target=target)


def open_union(a: OpenSet, b: OpenSet) -> OpenSet:
    """Union of open sets, open again: product reaching either target."""
    _check_alphabets(a.automaton, b.automaton)
    k = a.alphabet
    na, nb = a.automaton.n_states, b.automaton.n_states
    delta = []
    target = []
    for qa in range(na):
        for qb in range(nb):
            delta.append(
                tuple(
                    a.automaton.delta[qa][x] * nb + b.automaton.delta[qb][x]
                    for x in range(k)
                )
            )
            if qa in a.target or qb in b.target:
                target.append(qa * nb + qb)
    start = a.automaton.start * nb + b.automaton.start
    return make_open(k, start, tuple(delta), target)


def open_subset(a: OpenSet, b: OpenSet) -> bool:
    """True iff every point of a lies in b."""
    return is_empty(product_boolean(a.to_parity(), b.to_parity(), "diff"))


def up_in_open(a: OpenSet, w: UPWord) -> int:
    return membership_up(a.to_parity(), w)
