"""Guessing through an oracle family: the guesser reads membership
bits of the input point in a fixed countable family of sets instead of
reading symbols.

Only families whose bit streams are decidable are supported: explicit
eventually periodic families (a finite prefix of sets followed by a
repeating cycle of sets) and the structured family of all one-symbol
cylinders.  On an ultimately periodic point every supported family
produces an eventually periodic bit stream, so limits are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .space import (
    AlphabetMismatchError,
    ParitySet,
    UPWord,
    membership_up,
)
from .guesser import MooreGuesser, limit_on_up

BitGuesser = MooreGuesser


class NotEventuallyPeriodicError(ValueError):
    """Raised when a stream-limit question needs an explicit family."""


@dataclass(frozen=True)
class OracleFamily:
    """A countable family of sets, finitely presented.

    kind "explicit": member i is prefix[i] for i < len(prefix) and then
    cycles through `cycle`.  kind "cylinders": member i*k+j is the set
    of points whose symbol at position i equals j; bits are read off
    the point directly.
    """

    kind: str
    alphabet: int
    prefix: tuple[ParitySet, ...] = ()
    cycle: tuple[ParitySet, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("explicit", "cylinders"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "explicit":
            if not self.cycle:
                raise ValueError("explicit family needs a nonempty cycle")
            for member in self.prefix + self.cycle:
                if member.alphabet != self.alphabet:
                    raise AlphabetMismatchError(
                        "family members must share the family alphabet"
                    )
        else:
            if self.prefix or self.cycle:
                raise ValueError("cylinder family takes no explicit members")

    def member(self, i: int) -> ParitySet:
        if self.kind != "explicit":
            raise ValueError("only explicit families carry member automata")
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]


def explicit_family(
    prefix: tuple[ParitySet, ...], cycle: tuple[ParitySet, ...]
) -> OracleFamily:
    members = prefix + cycle
    if not members:
        raise ValueError("family needs at least one member")
    return OracleFamily(
        kind="explicit",
        alphabet=members[0].alphabet,
        prefix=prefix,
        cycle=cycle,
    )


def cylinders_family(alphabet: int) -> OracleFamily:
    if alphabet < 2:
        raise ValueError("alphabet size must be >= 2")
    return OracleFamily(kind="cylinders", alphabet=alphabet)


def family_bit(family: OracleFamily, w: UPWord, i: int) -> int:
    if family.kind == "explicit":
        return membership_up(family.member(i), w)
    k = family.alphabet
    return 1 if w.symbol(i // k) == i % k else 0


def family_stream(family: OracleFamily, w: UPWord, n: int) -> list[int]:
    """The first n bits of the family's membership stream at w."""
    if w.max_symbol >= family.alphabet:
        raise AlphabetMismatchError(
            f"word uses symbol {w.max_symbol} outside alphabet {family.alphabet}"
        )
    return [family_bit(family, w, i) for i in range(n)]


def stream_periodicity(family: OracleFamily, w: UPWord) -> tuple[int, int]:
    """(preperiod, period) of the full infinite stream at w.

    Explicit families repeat with the member cycle once past the
    member prefix; the cylinder family repeats with one bit block per
    period symbol once past the word prefix.  The reported period is
    correct, not necessarily minimal.
    """
    if w.max_symbol >= family.alphabet:
        raise AlphabetMismatchError(
            f"word uses symbol {w.max_symbol} outside alphabet {family.alphabet}"
        )
    if family.kind == "explicit":
        return len(family.prefix), len(family.cycle)
    k = family.alphabet
    return k * len(w.prefix), k * len(w.period)


def stream_up_word(family: OracleFamily, w: UPWord) -> UPWord:
    """The stream itself, as an ultimately periodic bit word."""
    pre, per = stream_periodicity(family, w)
    bits = family_stream(family, w, pre + per)
    return UPWord(tuple(bits[:pre]), tuple(bits[pre:]))


def last_bit_guesser() -> BitGuesser:
    """Two-state guesser whose opinion is the last bit read; 0 before
    any bit arrives (a recorded convention for the empty tuple)."""
    return MooreGuesser(
        alphabet=2, start=0, delta=((0, 1), (0, 1)), output=(0, 1)
    )


def verify_based(
    guesser: BitGuesser, family: OracleFamily, s: ParitySet, w: UPWord
) -> bool:
    """Exact check that the guesser, fed the family's bit stream at w,
    converges to the membership bit of w in s."""
    if guesser.alphabet != 2:
        raise AlphabetMismatchError("bit guessers read bits")
    if s.alphabet != family.alphabet:
        raise AlphabetMismatchError(
            f"alphabet mismatch: {s.alphabet} vs {family.alphabet}"
        )
    stream = stream_up_word(family, w)
    limit = limit_on_up(guesser, stream)
    return limit is not None and limit == membership_up(s, w)


def limsup_liminf_check(
    family: OracleFamily, s: ParitySet, w: UPWord
) -> bool:
    """True iff at this point the membership bit equals both the liminf
    and the limsup of the family's membership bits."""
    if family.kind != "explicit":
        raise NotEventuallyPeriodicError(
            "limit comparison needs an explicit (eventually periodic) family"
        )
    if s.alphabet != family.alphabet:
        raise AlphabetMismatchError(
            f"alphabet mismatch: {s.alphabet} vs {family.alphabet}"
        )
    pre, per = stream_periodicity(family, w)
    bits = family_stream(family, w, pre + per)
    tail = bits[pre:]
    chi = membership_up(s, w)
    return min(tail) == chi and max(tail) == chi


def cylinder_simulation(guesser: MooreGuesser, alphabet: int) -> BitGuesser:
    """Lift a symbol-reading guesser to a bit guesser over the cylinder
    family: decode each block of k bits back into the symbol it
    indicates (the position of the 1), then step the inner machine.

    Streams that are not valid encodings of a point decode the default
    symbol 0; they never arise from real points.
    """
    k = alphabet
    start = (guesser.start, 0, None)
    index: dict[tuple[int, int, Optional[int]], int] = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    i = 0
    while i < len(order):
        p, pos, decoded = order[i]
        row = []
        for bit in (0, 1):
            dec = decoded
            if bit == 1 and dec is None:
                dec = pos
            if pos + 1 == k:
                symbol = dec if dec is not None else 0
                key = (guesser.delta[p][symbol], 0, None)
            else:
                key = (p, pos + 1, dec)
            if key not in index:
                index[key] = len(order)
                order.append(key)
            row.append(index[key])
        rows.append(row)
        i += 1
    return MooreGuesser(
        alphabet=2,
        start=0,
        delta=tuple(tuple(r) for r in rows),
        output=tuple(guesser.output[p] for p, _, _ in order),
    )
