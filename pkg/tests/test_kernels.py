import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gcrbch import _kernels, bch, gf2m

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")


@pytest.fixture(scope="module")
def cols16():
    return bch.build_columns(gf2m.make_field(4)).vectors()


@needs_numba
@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 255), min_size=1, max_size=3), st.integers(0, 6))
def test_first_cover_paths_agree(targets, t):
    cols = bch.build_columns(gf2m.make_field(4)).vectors()
    tg = np.array(targets, dtype=np.int64)
    w_np, c_np = _kernels.first_cover_numpy(cols, tg, t, 8)
    for prune in (True, False):
        w_nb, c_nb = _kernels.first_cover_numba(cols, tg, t, 8, prune=prune)
        assert c_nb == c_np
        assert (w_np is None and w_nb is None) or w_np.tolist() == w_nb.tolist()


@needs_numba
def test_basis_no_cover_counts(cols16):
    tg = np.array([1 << (4 + i) for i in range(4)], dtype=np.int64)
    assert _kernels.first_cover_numpy(cols16, tg, 7, 8)[0] is None
    assert _kernels.first_cover_numba(cols16, tg, 7, 8)[1] == _kernels.first_cover_numpy(cols16, tg, 7, 8)[1] == 6435


@needs_numba
def test_min_cover_batch_paths_agree(cols16):
    rng = np.random.default_rng(0)
    tuples = rng.integers(0, 256, size=(200, 2))
    assert np.array_equal(_kernels.min_cover_batch_numba(cols16, tuples, 8, 15),
                          _kernels.min_cover_batch_numpy(cols16, tuples, 8, 15))


def test_trivial_cases(cols16):
    assert _kernels.first_cover_numpy(cols16, np.array([0]), 0, 8)[0].tolist() == []
    assert _kernels.first_cover_numpy(cols16, np.array([3]), 0, 8)[0] is None
    assert _kernels.first_cover_numpy(cols16, np.array([3]), 16, 8) == (None, 0)
    assert _kernels.min_cover_numpy(cols16, np.array([0]), 8, 3)[0] == 0


def test_env_flag_selects_numpy():
    env = dict(os.environ, GCRBCH_DISABLE_NUMBA="1")
    code = ("from gcrbch import _kernels, bch, cover, gf2m;"
            "print(_kernels.BACKEND, cover.gcr_exact(bch.build_columns(gf2m.make_field(3)), 2))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "5"]
