"""Backend equivalence: the compiled kernels and the numpy fallback must
produce identical outputs on identical inputs (exact integers)."""

import numpy as np
import pytest

from fflab import _kernels
from fflab._kernels import numpy_impl

try:
    from fflab._kernels import _ckernels
except ImportError:  # extension not built; the fallback is the only backend
    _ckernels = None

BACKENDS = [numpy_impl] + ([_ckernels] if _ckernels else [])


def _random_lines(rng, q):
    # a legitimate line table: each "direction" is a permutation of the grid
    ndir = q + 1
    out = np.empty((ndir, q, q), dtype=np.int32)
    for d in range(ndir):
        out[d] = rng.permutation(q * q).reshape(q, q)
    return out


def test_backend_reporting():
    assert _kernels.BACKEND in ("compiled", "numpy")


@pytest.mark.parametrize("impl", BACKENDS)
def test_line_value_stats_small_oracle(impl):
    # two polynomials on a 2x2 grid with a handmade 1-direction table
    values = np.array([[1, 1, 2, 3], [1, 1, 1, 1]], dtype=np.uint8)
    lines = np.array([[[0, 1], [2, 3]]], dtype=np.int32)
    counts, degen = _kernels.line_value_stats(values, lines, impl=impl)
    assert counts.tolist() == [1, 1]  # first: line (1,1); second: both lines constant 1
    assert degen.tolist() == [False, True]


def test_line_value_stats_backends_agree():
    if _ckernels is None:
        pytest.skip("compiled backend unavailable")
    rng = np.random.default_rng(0)
    for q in (5, 7):
        lines = _random_lines(rng, q)
        values = rng.integers(0, q, size=(200, q * q)).astype(np.uint8)
        c1, d1 = _kernels.line_value_stats(values, lines, impl=numpy_impl)
        c2, d2 = _kernels.line_value_stats(values, lines, impl=_ckernels)
        assert np.array_equal(c1, c2)
        assert np.array_equal(d1, d2)


@pytest.mark.parametrize("impl", BACKENDS)
def test_incidence_count_against_loop(impl):
    rng = np.random.default_rng(1)
    n = 24
    combine = rng.integers(0, n, size=(n, n)).astype(np.int32)
    pmask = (rng.random(n) < 0.4).astype(np.uint8)
    x = rng.integers(0, n, size=9)
    y = rng.integers(0, n, size=13)
    expected = sum(int(pmask[combine[a, b]]) for a in x for b in y)
    assert _kernels.incidence_count(x, y, combine, pmask, impl=impl) == expected


def test_incidence_count_backends_agree():
    if _ckernels is None:
        pytest.skip("compiled backend unavailable")
    rng = np.random.default_rng(2)
    n = 169
    combine = rng.integers(0, n, size=(n, n)).astype(np.int32)
    pmask = (rng.random(n) < 0.3).astype(np.uint8)
    for _ in range(20):
        x = rng.integers(0, n, size=rng.integers(0, 80))
        y = rng.integers(0, n, size=rng.integers(0, 80))
        a = _kernels.incidence_count(x, y, combine, pmask, impl=numpy_impl)
        b = _kernels.incidence_count(x, y, combine, pmask, impl=_ckernels)
        assert a == b


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("op", [0, 1, 2])
def test_pairwise_zp_against_loop(impl, op):
    rng = np.random.default_rng(3)
    p = 101
    a = rng.integers(0, p, size=15)
    b = rng.integers(0, p, size=11)
    got = _kernels.pairwise_zp(a, b, p, op, impl=impl)
    fn = [lambda u, v: u + v, lambda u, v: u - v, lambda u, v: u * v][op]
    expected = sorted({fn(int(u), int(v)) % p for u in a for v in b})
    assert got.tolist() == expected


def test_pairwise_zp_backends_agree():
    if _ckernels is None:
        pytest.skip("compiled backend unavailable")
    rng = np.random.default_rng(4)
    for p in (101, 1009, 104729):
        a = rng.integers(0, p, size=200)
        b = rng.integers(0, p, size=150)
        for op in (0, 1, 2):
            x = _kernels.pairwise_zp(a, b, p, op, impl=numpy_impl)
            y = _kernels.pairwise_zp(a, b, p, op, impl=_ckernels)
            assert np.array_equal(x, y)


def test_pairwise_zp_empty():
    out = _kernels.pairwise_zp(np.array([], dtype=np.int64), np.array([1]), 7, 0)
    assert out.size == 0
