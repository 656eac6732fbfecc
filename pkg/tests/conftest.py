import random

import pytest

from cubefree.groups import GroupContext


@pytest.fixture
def ctx3():
    return GroupContext(3)


@pytest.fixture
def ctx4():
    return GroupContext(4)


@pytest.fixture
def ctx5():
    return GroupContext(5)


@pytest.fixture
def rng():
    return random.Random(987654321)
