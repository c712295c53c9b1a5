import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from plasmode import ModelParams, validate


@pytest.fixture
def vp_base():
    """The workhorse parameter point used across the suite."""
    return validate(ModelParams(omega=1.0, omega1=0.1, omega2=0.05))


@pytest.fixture
def vp_weak():
    """Weak-coupling point where thermal crossings sit near theta ~ 0.1."""
    return validate(ModelParams(omega=1.0, omega1=0.01, omega2=0.05))


@pytest.fixture
def vp_free():
    """Free field: omega1 = omega2 = 0."""
    return validate(ModelParams(omega=1.0, omega1=0j, omega2=0j))
