import random
import sys

import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, max_examples=60)
settings.load_profile("ci")

# generated games nest a few hundred levels in the worst case
sys.setrecursionlimit(100_000)


@pytest.fixture
def rng():
    return random.Random(0xD61)


# keep pytest from trying to collect the Test game node as a test class
from dgl.syntax import Test as _TestNode

_TestNode.__test__ = False
