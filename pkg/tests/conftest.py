import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from matro import io  # noqa: E402

SMALL = ("u24", "k4", "k4e", "cube6", "cube8")
MEDIUM = SMALL + ("r10", "mk5dual")
ALL = MEDIUM + ("cube16",)

_cache = {}


def corpus(name):
    if name not in _cache:
        _cache[name] = io.load(name)[1]
    return _cache[name]


@pytest.fixture(params=SMALL)
def small(request):
    return corpus(request.param)


@pytest.fixture(params=MEDIUM)
def medium(request):
    return corpus(request.param)
