import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from caretf.acceptor import build_acceptor  # noqa: E402
from caretf.multipliers import build_multipliers  # noqa: E402


@pytest.fixture(scope="session")
def acc():
    return build_acceptor()


@pytest.fixture(scope="session")
def mult():
    return build_multipliers()
