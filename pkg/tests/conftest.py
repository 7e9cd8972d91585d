import logging
import random
from typing import List

import pytest

from twistknot.gauss import TwistedGaussCode
from twistknot.search import random_code

K1 = "* U1+ O2+ O1+ O3+ * U3+ U2+"
K2 = "* U1+ O2+ O1+ O3+ * O4+ U5+ O6+ O5+ U3+ U2+ U6+ U4+"
FIG17 = "O1+ O2+ U1+ U2+ O3+ O4+ U3+ U4+ *"


def seeded_corpus(size: int, max_chords: int = 8, max_bars: int = 4, seed: int = 0) -> List[TwistedGaussCode]:
    rng = random.Random(seed)
    return [random_code(rng.randint(0, max_chords), rng.randint(0, max_bars), rng.randrange(2**32)) for _ in range(size)]


@pytest.fixture(scope="session")
def corpus() -> List[TwistedGaussCode]:
    return seeded_corpus(1000)


@pytest.fixture(scope="session")
def small_corpus() -> List[TwistedGaussCode]:
    return seeded_corpus(40, max_chords=3, max_bars=2, seed=1)


@pytest.fixture(autouse=True)
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
