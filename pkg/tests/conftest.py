import random

import pytest

from cubic_orbits.core.context import get_context


@pytest.fixture
def ctx():
    """Shared geometry context for a field order"""
    return get_context


@pytest.fixture
def rng():
    return random.Random(20261017)
