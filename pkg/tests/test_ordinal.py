import random

import pytest

from guessable.ordinal import (
    INFINITY,
    OMEGA,
    ONE,
    ZERO,
    OrdinalCNF,
    add,
    compare,
    congruent,
    from_int,
    from_text,
    omega_power,
    parity,
    pred,
    succ,
    to_text,
)


def rand_ordinal(rng, depth=2):
    if depth == 0 or rng.random() < 0.5:
        return from_int(rng.randint(0, 6))
    n_terms = rng.randint(1, 3)
    value = ZERO
    for _ in range(n_terms):
        exp = rand_ordinal(rng, depth - 1)
        term = omega_power(exp, rng.randint(1, 4))
        value = add(value, term) if compare(term, value) <= 0 else add(term, value)
    return value


SAMPLE = None


def sample():
    global SAMPLE
    if SAMPLE is None:
        rng = random.Random(1)
        SAMPLE = [rand_ordinal(rng) for _ in range(60)] + [
            ZERO,
            ONE,
            OMEGA,
            add(OMEGA, from_int(3)),
            omega_power(2, 2),
        ]
    return SAMPLE


def test_compare_examples():
    assert compare(ZERO, ZERO) == 0
    assert compare(from_int(3), OMEGA) < 0
    w2 = OrdinalCNF(((ONE, 2),))
    assert compare(add(w2, ONE), w2) > 0


def test_succ_examples():
    assert succ(ZERO) == ONE
    assert succ(OMEGA) == add(OMEGA, ONE)
    assert succ(add(OMEGA, from_int(2))) == add(OMEGA, from_int(3))


def test_add_examples():
    assert add(ONE, OMEGA) == OMEGA
    assert add(OMEGA, ONE) == from_text("w + 1")
    assert add(add(OMEGA, ONE), from_int(2)) == from_text("w + 3")


def test_parity_examples():
    assert parity(ZERO) == 0
    assert parity(OMEGA) == 0
    assert parity(add(OMEGA, from_int(3))) == 1


def test_congruent_examples():
    assert congruent(from_int(2), from_int(4))
    assert not congruent(OMEGA, ONE)
    assert congruent(add(OMEGA, ONE), from_int(3))


def test_trichotomy():
    values = sample()
    for a in values:
        for b in values:
            signs = [compare(a, b) < 0, compare(a, b) == 0, compare(a, b) > 0]
            assert signs.count(True) == 1
            assert compare(a, b) == -compare(b, a)


def test_succ_strictly_above_with_nothing_between():
    for a in sample():
        s = succ(a)
        assert compare(s, a) > 0
        # no finite bump below: a < b < a+1 is impossible for b in sample
        for b in sample():
            assert not (compare(a, b) < 0 and compare(b, s) < 0)


def test_add_associative():
    rng = random.Random(2)
    values = sample()
    for _ in range(200):
        a, b, c = rng.choice(values), rng.choice(values), rng.choice(values)
        assert add(add(a, b), c) == add(a, add(b, c))


def test_parity_alternates_under_succ():
    for a in sample():
        assert parity(succ(a)) != parity(a)


def test_congruent_is_two_class_equivalence():
    values = sample()
    evens = [a for a in values if parity(a) == 0]
    odds = [a for a in values if parity(a) == 1]
    assert evens and odds
    for a in evens:
        for b in evens:
            assert congruent(a, b)
    for a in odds:
        for b in odds:
            assert congruent(a, b)
    for a in evens:
        for b in odds:
            assert not congruent(a, b)


def test_pred_inverts_succ():
    for a in sample():
        assert pred(succ(a)) == a
    with pytest.raises(ValueError):
        pred(OMEGA)
    with pytest.raises(ValueError):
        pred(ZERO)


def test_text_round_trip():
    for a in sample():
        assert from_text(to_text(a)) == a


def test_text_grammar():
    assert to_text(ZERO) == "0"
    assert to_text(from_int(5)) == "5"
    assert to_text(OMEGA) == "w"
    assert to_text(add(OMEGA, from_int(3))) == "w + 3"
    assert to_text(OrdinalCNF(((ONE, 2),))) == "w*2"
    assert to_text(omega_power(2)) == "w^2"
    assert from_text("w^(w + 1)*2 + w*3 + 4") == add(
        add(omega_power(add(OMEGA, ONE), 2), OrdinalCNF(((ONE, 3),))), from_int(4)
    )
    with pytest.raises(ValueError):
        from_text("w^")
    with pytest.raises(ValueError):
        from_text("3 + q")


def test_infinity_ordering():
    for a in sample():
        assert a < INFINITY
        assert INFINITY > a
        assert not (INFINITY < a)
        assert INFINITY >= a


def test_invalid_cnf_rejected():
    with pytest.raises(ValueError):
        OrdinalCNF(((ZERO, 0),))
    with pytest.raises(ValueError):
        OrdinalCNF(((ZERO, 1), (ONE, 1)))  # exponents must decrease
