import pathlib
import sys

import numpy as np
import pytest

sys.path.append(str(pathlib.Path(__file__).parent.parent))

from src.matroid.chirotope import Chirotope  # noqa: E402
from src.matroid.operations import direct_sum  # noqa: E402
from src.matroid.oriented_matroid import cocircuits_from_chirotope  # noqa: E402
from src.matroid.realizable import cyclic, w3 as w3_om  # noqa: E402


@pytest.fixture(scope="session")
def w3():
    """Three points (1,1), (1,2), (1,3) on an affine line."""
    return w3_om()


@pytest.fixture(scope="session")
def c36():
    return cyclic(3, 6)


@pytest.fixture(scope="session")
def c48():
    return cyclic(4, 8)


@pytest.fixture(scope="session")
def mutant48():
    """Uniform rank 4 on 8 elements, a few flips from a random realizable configuration.

    Non-Euclidean: program (0, 2) and seven others have directed cycles.
    """
    signs = "-+--++--+++--+-+++---++-+--+++++--+-++---++-++--+-+-+----+-+++-++++++-"
    return cocircuits_from_chirotope(Chirotope.from_string(4, 8, signs))


@pytest.fixture(scope="session")
def w3_sum(w3):
    return direct_sum(w3, w3)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def chi_file(tmp_path):
    def write(name: str, header: str, signs: str) -> pathlib.Path:
        path = tmp_path / name
        path.write_text(f"{header}\n{signs}\n")
        return path

    return write
