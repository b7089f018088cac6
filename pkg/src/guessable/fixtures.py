"""Canonical sets over the binary alphabet, shared by tests and docs.

F_EMPTY    nothing
F_FULL     everything
F_CYL1     sequences starting with 1
F_ONE      sequences containing at least one 1
F_NO11     sequences containing a 1 but never the factor 11
F_INF1     sequences with infinitely many 1s
"""

from __future__ import annotations

from .space import OpenSet, ParitySet, make_open

F_EMPTY = ParitySet(alphabet=2, start=0, delta=((0, 0),), priority=(1,))

F_FULL = ParitySet(alphabet=2, start=0, delta=((0, 0),), priority=(2,))

# start 0; 1 = accepting sink, 2 = rejecting sink
F_CYL1 = ParitySet(
    alphabet=2,
    start=0,
    delta=((2, 1), (1, 1), (2, 2)),
    priority=(1, 2, 1),
)

# 0 = no 1 seen yet, 1 = absorbing "saw a 1"
F_ONE = ParitySet(
    alphabet=2,
    start=0,
    delta=((0, 1), (1, 1)),
    priority=(1, 2),
)

# 0 = only 0s so far, 1 = last symbol was 1, 2 = saw a 1 and last was 0,
# 3 = dead (factor 11 occurred)
F_NO11 = ParitySet(
    alphabet=2,
    start=0,
    delta=((0, 1), (2, 3), (2, 1), (3, 3)),
    priority=(1, 2, 2, 1),
)

# 0 = last symbol was 0, 1 = last symbol was 1 (even priority)
F_INF1 = ParitySet(
    alphabet=2,
    start=0,
    delta=((0, 1), (0, 1)),
    priority=(1, 2),
)

FIXTURES: dict[str, ParitySet] = {
    "F_EMPTY": F_EMPTY,
    "F_FULL": F_FULL,
    "F_CYL1": F_CYL1,
    "F_ONE": F_ONE,
    "F_NO11": F_NO11,
    "F_INF1": F_INF1,
}

# Open (reachability) variants used by the difference hierarchy tests.

OPEN_ONE: OpenSet = make_open(
    alphabet=2, start=0, delta=((0, 1), (1, 1)), target=[1]
)

# 0 = no 1 yet, 1 = last was 1, 2 = absorbing "saw 11"
OPEN_FACTOR_11: OpenSet = make_open(
    alphabet=2, start=0, delta=((0, 1), (0, 2), (2, 2)), target=[2]
)

OPEN_EMPTY: OpenSet = make_open(alphabet=2, start=0, delta=((0, 0),), target=[])

OPEN_FULL: OpenSet = make_open(alphabet=2, start=0, delta=((0, 0),), target=[0])
