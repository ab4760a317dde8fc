import random

import pytest

# pass/fail lines recorded by the acceptance tests, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

from casson.diagram import from_braid_word
from casson.moves import random_braid_word, random_realizable


@pytest.fixture(scope="session")
def diagram_corpus():
    """500 deterministic random realizable diagrams, at most 40 chords."""
    corpus = []
    for seed in range(500):
        g = random_realizable(seed, 8 + seed % 14, 4 + seed % 5)
        if g.n > 40:
            g = random_realizable(seed, 8, 3)
        assert g.n <= 40
        corpus.append(g)
    return corpus


@pytest.fixture(scope="session")
def small_words():
    """Deterministic single-component braid words of varied size."""
    words = []
    for seed in range(80):
        rng = random.Random(1000 + seed)
        words.append(random_braid_word(rng, 5 + seed % 8))
    return words


@pytest.fixture
def trefoil():
    return from_braid_word([1, 1, 1])


@pytest.fixture
def figure_eight():
    return from_braid_word([1, -2, 1, -2])
