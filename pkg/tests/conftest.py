import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

BACKENDS = ["numba", "numpy"]


@pytest.fixture
def rng():
    return np.random.default_rng(20181115)


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def corpus():
    from fracdehaze.corpus import load_corpus

    return load_corpus()


def random_rgb_u8(rng, h, w):
    return rng.integers(0, 256, size=(h, w, 3)).astype(np.float64)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        for line in mod.RESULTS[n]:
            terminalreporter.write_line(line)
