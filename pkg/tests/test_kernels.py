"""The compiled and numpy backends must agree exactly."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imsfeat import kernels

pytestmark = pytest.mark.skipif(
    kernels.available_backends() != ["compiled", "python"],
    reason="compiled extension not built",
)


def both():
    return kernels.load_backend("compiled"), kernels.load_backend("python")


weights_st = st.lists(st.integers(1, 500), min_size=1, max_size=25).map(
    lambda ws: np.array(sorted(ws, reverse=True), dtype=np.int64)
)


@settings(max_examples=100, deadline=None)
@given(weights_st, st.integers(1, 2000))
def test_ims_counts_identical(w, c):
    w = np.minimum(w, c)
    C, P = both()
    assert np.array_equal(C.ims_weight_counts(w, c), P.ims_weight_counts(w, c))


@settings(max_examples=100, deadline=None)
@given(weights_st)
def test_kmeans_layers_identical(w):
    C, P = both()
    prev_c = prev_p = np.r_[0.0, np.full(len(w), np.inf)]
    for g in range(1, len(w) + 1):
        cur_c, arg_c = C.kmeans_step(prev_c, w, g)
        cur_p, arg_p = P.kmeans_step(prev_p, w, g)
        assert np.array_equal(cur_c, cur_p)
        assert np.array_equal(arg_c, arg_p)
        prev_c, prev_p = cur_c, cur_p


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 10**6), st.integers(1, 300)), min_size=1, max_size=20),
    st.integers(1, 1500),
)
def test_zero_one_identical(items, c):
    C, P = both()
    v = np.array([a for a, _ in items], dtype=np.int64)
    w = np.array([b for _, b in items], dtype=np.int64)
    assert C.zero_one_max(v, w, c) == P.zero_one_max(v, w, c)


def test_backend_selection_env(monkeypatch):
    import importlib

    monkeypatch.setenv("IMSFEAT_PURE_PYTHON", "1")
    try:
        mod = importlib.reload(kernels)
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("IMSFEAT_PURE_PYTHON")
        mod = importlib.reload(kernels)
    assert mod.BACKEND == "compiled"
