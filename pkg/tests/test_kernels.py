import json
import os
import subprocess
import sys

import numpy as np
import pytest

from conftest import MEDIUM, corpus
from matro import _kernels as K
from matro.bergman import _permutations

needs_numba = pytest.mark.skipif(K.numba is None, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("name", MEDIUM)
def test_numpy_and_numba_kernels_agree(name):
    M = corpus(name)
    b = M.array
    rng = np.random.default_rng(7)
    full = (1 << M.n) - 1
    for m in rng.integers(0, 1 << M.n, size=200, dtype=np.uint64):
        assert K.rank_np(b, int(m)) == K.rank_nb(b, m)
        assert K.closure_np(b, int(m), full) == K.closure_nb(b, m, np.uint64(full))
    w = rng.integers(-4, 5, size=M.n).astype(np.int64)
    assert np.array_equal(K.costs_np(b, w), K.costs_nb(b, w))
    perms = _permutations(M.r)
    assert np.array_equal(K.local_partitions_np(b, M.n, M.r, perms), K.local_partitions_nb(b, M.n, M.r, perms))
    assert K.exchange_violation_np(b, M.n) is None
    assert K.exchange_violation_nb(b, M.n) is None


@needs_numba
def test_exchange_witness_agrees():
    rng = np.random.default_rng(3)
    for _ in range(50):
        bases = np.unique(rng.integers(1, 1 << 6, size=6, dtype=np.uint64))
        bases = bases[np.bitwise_count(bases) == 3]
        if bases.size < 2:
            continue
        assert K.exchange_violation_np(bases, 6) == K.exchange_violation_nb(bases, 6)


SCRIPT = """
import json
from matro import _kernels, io, bergman as bg, lattice as lt
out = {"numba": _kernels.USE_NUMBA}
for name in ("k4e", "cube6", "r10"):
    M = io.load(name)[1]
    out[name] = [bg.bergman_facets(M), bg.nested_f_vector(M), lt.flats(M).profile(), bg.equality_criterion(M)[0]]
print(json.dumps(out))
"""


def _run(flag):
    env = dict(os.environ, MATRO_DISABLE_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def test_fallback_path_gives_identical_results():
    fast, slow = _run("0"), _run("1")
    assert slow.pop("numba") is False
    assert fast.pop("numba") is (K.numba is not None)
    assert fast == slow
