"""Ordinal arithmetic in Cantor normal form.

An ordinal below epsilon_0 is a finite sum ``w^e1*c1 + ... + w^en*cn``
where the exponents ``e1 > e2 > ... > en`` are themselves ordinals and
the coefficients are positive integers.  The empty sum is 0.  Finite
ordinals are the sums with a single ``w^0`` term.

Ranks produced by finite-state sets are always finite, but the whole
interface is ordinal typed so the transfinite statements it mirrors
read the same way at any scale.  The one extra value is ``INFINITY``,
a sentinel that compares greater than every ordinal and stands for
"never leaves the chain".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class OrdinalCNF:
    """Cantor normal form: tuple of (exponent, coefficient) pairs.

    Exponents strictly decrease, coefficients are >= 1.  ``()`` is 0.
    """

    terms: tuple[tuple["OrdinalCNF", int], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for exp, coef in self.terms:
            if not isinstance(exp, OrdinalCNF):
                raise TypeError("exponent must be an OrdinalCNF")
            if not isinstance(coef, int) or coef < 1:
                raise ValueError("coefficients must be positive integers")
            if prev is not None and compare(exp, prev) >= 0:
                raise ValueError("exponents must strictly decrease")
            prev = exp

    # -- ordering ---------------------------------------------------

    def __lt__(self, other: object) -> bool:
        if isinstance(other, OrdinalCNF):
            return compare(self, other) < 0
        if other is INFINITY:
            return True
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if isinstance(other, OrdinalCNF):
            return compare(self, other) <= 0
        if other is INFINITY:
            return True
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if isinstance(other, OrdinalCNF):
            return compare(self, other) > 0
        if other is INFINITY:
            return False
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if isinstance(other, OrdinalCNF):
            return compare(self, other) >= 0
        if other is INFINITY:
            return False
        return NotImplemented

    def __add__(self, other: "OrdinalCNF | int") -> "OrdinalCNF":
        if isinstance(other, int):
            other = from_int(other)
        return add(self, other)

    # -- structure --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return all(exp.is_zero for exp, _ in self.terms)

    @property
    def finite_part(self) -> int:
        """The n in a = lambda + n with lambda limit or 0."""
        if self.terms and self.terms[-1][0].is_zero:
            return self.terms[-1][1]
        return 0

    @property
    def is_successor(self) -> bool:
        return self.finite_part >= 1

    def to_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is not a finite ordinal")
        return self.finite_part

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"OrdinalCNF({to_text(self)!r})"


class _Infinity:
    """Sentinel above every ordinal; used for ranks that never fall."""

    _instance = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other: object) -> bool:
        if isinstance(other, (OrdinalCNF, _Infinity)):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if isinstance(other, _Infinity):
            return True
        if isinstance(other, OrdinalCNF):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if isinstance(other, OrdinalCNF):
            return True
        if isinstance(other, _Infinity):
            return False
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if isinstance(other, (OrdinalCNF, _Infinity)):
            return True
        return NotImplemented

    def __str__(self) -> str:
        return "INFTY"

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()

Rank = Union[OrdinalCNF, _Infinity]

ZERO = OrdinalCNF()
ONE = OrdinalCNF(((ZERO, 1),))
OMEGA = OrdinalCNF(((ONE, 1),))


def from_int(n: int) -> OrdinalCNF:
    if n < 0:
        raise ValueError("ordinals are non-negative")
    if n == 0:
        return ZERO
    return OrdinalCNF(((ZERO, n),))


def omega_power(exp: "OrdinalCNF | int", coef: int = 1) -> OrdinalCNF:
    if isinstance(exp, int):
        exp = from_int(exp)
    if coef < 1:
        raise ValueError("coefficient must be >= 1")
    return OrdinalCNF(((exp, coef),))


def compare(a: OrdinalCNF, b: OrdinalCNF) -> int:
    """Total order on CNF: -1, 0 or 1. Lexicographic on term lists."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def add(a: OrdinalCNF, b: OrdinalCNF) -> OrdinalCNF:
    """Ordinal addition (non-commutative): low terms of a are absorbed."""
    if b.is_zero:
        return a
    lead_exp, lead_coef = b.terms[0]
    kept = [t for t in a.terms if compare(t[0], lead_exp) > 0]
    if len(kept) < len(a.terms) and compare(a.terms[len(kept)][0], lead_exp) == 0:
        merged = (lead_exp, a.terms[len(kept)][1] + lead_coef)
        return OrdinalCNF(tuple(kept) + (merged,) + b.terms[1:])
    return OrdinalCNF(tuple(kept) + b.terms)


def succ(a: OrdinalCNF) -> OrdinalCNF:
    return add(a, ONE)


def pred(a: OrdinalCNF) -> OrdinalCNF:
    """Predecessor of a successor ordinal."""
    if not a.is_successor:
        raise ValueError(f"{a} is not a successor ordinal")
    head = a.terms[:-1]
    exp, coef = a.terms[-1]
    if coef > 1:
        return OrdinalCNF(head + ((exp, coef - 1),))
    return OrdinalCNF(head)


def parity(a: OrdinalCNF) -> int:
    """0 for even, 1 for odd: the parity of n in a = lambda + n."""
    return a.finite_part % 2


def congruent(a: "OrdinalCNF | int", b: "OrdinalCNF | int") -> bool:
    """True iff a and b have the same parity."""
    pa = parity(a) if isinstance(a, OrdinalCNF) else a % 2
    pb = parity(b) if isinstance(b, OrdinalCNF) else b % 2
    return pa == pb


# -- text form ------------------------------------------------------
#
# Grammar: terms joined by "+"; a term is a decimal integer, or
# "w", "w*c", "w^e", "w^e*c" with e a decimal integer, "w", or a
# parenthesised ordinal expression.


def to_text(a: OrdinalCNF) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for exp, coef in a.terms:
        if exp.is_zero:
            parts.append(str(coef))
            continue
        if exp == ONE:
            base = "w"
        elif exp.is_finite or exp == OMEGA:
            base = f"w^{to_text(exp)}"
        else:
            base = f"w^({to_text(exp)})"
        parts.append(base if coef == 1 else f"{base}*{coef}")
    return " + ".join(parts)


def from_text(text: str) -> OrdinalCNF:
    tokens = _tokenize(text)
    value, pos = _parse_expr(tokens, 0)
    if pos != len(tokens):
        raise ValueError(f"trailing input in ordinal literal: {text!r}")
    return value


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+^*()w":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ValueError(f"bad character {ch!r} in ordinal literal")
    if not tokens:
        raise ValueError("empty ordinal literal")
    return tokens


def _parse_expr(tokens: list[str], pos: int) -> tuple[OrdinalCNF, int]:
    total, pos = _parse_term(tokens, pos)
    while pos < len(tokens) and tokens[pos] == "+":
        term, pos = _parse_term(tokens, pos + 1)
        total = add(total, term)
    return total, pos


def _parse_term(tokens: list[str], pos: int) -> tuple[OrdinalCNF, int]:
    if pos >= len(tokens):
        raise ValueError("unexpected end of ordinal literal")
    tok = tokens[pos]
    if tok.isdigit():
        return from_int(int(tok)), pos + 1
    if tok != "w":
        raise ValueError(f"unexpected token {tok!r} in ordinal literal")
    pos += 1
    exp = ONE
    if pos < len(tokens) and tokens[pos] == "^":
        pos += 1
        if pos >= len(tokens):
            raise ValueError("missing exponent in ordinal literal")
        if tokens[pos] == "(":
            exp, pos = _parse_expr(tokens, pos + 1)
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError("unbalanced parenthesis in ordinal literal")
            pos += 1
        elif tokens[pos].isdigit():
            exp = from_int(int(tokens[pos]))
            pos += 1
        elif tokens[pos] == "w":
            exp = OMEGA
            pos += 1
        else:
            raise ValueError(f"bad exponent token {tokens[pos]!r}")
    coef = 1
    if pos < len(tokens) and tokens[pos] == "*":
        pos += 1
        if pos >= len(tokens) or not tokens[pos].isdigit():
            raise ValueError("missing coefficient in ordinal literal")
        coef = int(tokens[pos])
        pos += 1
    if exp.is_zero:
        return from_int(coef), pos
    return omega_power(exp, coef), pos

