import random

import pytest

from guessable.fixtures import FIXTURES
from guessable.randgen import random_parity_set
from guessable.remainder import remainder_chain
from guessable.space import canonical_up_words


@pytest.fixture(scope="session")
def up_words_100():
    return canonical_up_words(2, 100)


@pytest.fixture(scope="session")
def up_words_200():
    return canonical_up_words(2, 200)


@pytest.fixture(scope="session")
def fixture_sets():
    return dict(FIXTURES)


@pytest.fixture(scope="session")
def small_corpus():
    """Fixtures plus 30 seeded random automata, split by guessability."""
    rng = random.Random(7)
    sets = list(FIXTURES.values())
    sets += [random_parity_set(rng, max_states=5) for _ in range(30)]
    guessable = [s for s in sets if remainder_chain(s).guessable]
    hopeless = [s for s in sets if not remainder_chain(s).guessable]
    return {"all": sets, "guessable": guessable, "not_guessable": hopeless}
