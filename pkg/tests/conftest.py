import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shiftconv import character, default_params


@pytest.fixture(scope="session")
def chi7():
    return character(7, 2)


@pytest.fixture(scope="session")
def params():
    return default_params()


@pytest.fixture(scope="session")
def params_real():
    # real parts engaged, for exponent- and growth-sensitive checks
    return default_params(u=complex(0.2, 0.0), v=complex(0.1, 0.0), epsilon=0.15)
