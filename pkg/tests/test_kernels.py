"""The compiled kernels must agree with the pure-Python ones item for item."""

import numpy as np
import pytest

from blockpar import _backend, _pykernels
from blockpar.partitions import enum_partitions

pytestmark = pytest.mark.skipif(
    "cython" not in _backend.available_backends(), reason="compiled extension not built"
)


@pytest.fixture(scope="module")
def ck():
    return _backend.get_kernels("cython")


@pytest.mark.parametrize("variant", ["bp", "bp0", "bpstar"])
@pytest.mark.parametrize("n", range(1, 8))
def test_layout_sequences_identical(ck, n, variant):
    for p in enum_partitions(n):
        py = list(_pykernels.LayoutEnumerator(p.parts, variant))
        c = list(ck.LayoutEnumerator(p.parts, variant))
        assert c == py, p


@pytest.mark.parametrize("variant", ["bp", "bp0", "bpstar"])
def test_count_and_fill(ck, variant):
    parts = (1, 2, 2, 3)
    ref = list(_pykernels.LayoutEnumerator(parts, variant))
    assert ck.LayoutEnumerator(parts, variant).count() == len(ref)
    e = ck.LayoutEnumerator(parts, variant)
    out = np.zeros((7, 8), dtype=np.int32)
    got = []
    while True:
        k = e.fill(out)
        got.extend(tuple(r) for r in out[:k].tolist())
        if k < len(out):
            break
    assert got == ref


def test_count_after_partial_iteration(ck):
    e = ck.LayoutEnumerator((1, 3), "bp")
    next(e)
    next(e)
    assert e.count() == len(list(_pykernels.LayoutEnumerator((1, 3), "bp"))) - 2
    with pytest.raises(StopIteration):
        next(e)


def test_fill_rejects_wrong_width(ck):
    with pytest.raises(ValueError):
        ck.LayoutEnumerator((1, 2), "bp").fill(np.zeros((2, 4), dtype=np.int32))


def test_unknown_variant(ck):
    with pytest.raises(ValueError):
        ck.LayoutEnumerator((1,), "nope")
    with pytest.raises(ValueError):
        _pykernels.LayoutEnumerator((1,), "nope")


@pytest.mark.parametrize("seed", range(20))
def test_successors_and_cycles_identical(ck, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    alphabets = rng.integers(1, 4, n).tolist()
    N = int(np.prod(alphabets))
    tables = np.stack([rng.integers(0, a, N) for a in alphabets])
    blocks = [tuple(sorted(rng.choice(n, int(rng.integers(1, n + 1)), replace=False).tolist()))
              for _ in range(int(rng.integers(1, 4)))]
    s_py = _pykernels.successors(tables, alphabets, blocks)
    s_c = ck.successors(tables, alphabets, blocks)
    assert s_py.tolist() == s_c.tolist()
    id_py, cyc_py = _pykernels.functional_cycles(s_py)
    id_c, cyc_c = ck.functional_cycles(s_c)
    assert id_py.tolist() == id_c.tolist()
    assert cyc_py == cyc_c


def test_star_coefficients():
    # largest size first: a[j] = gcd(lcm of larger sizes, j)
    shape = _pykernels.matrix_shape([2, 3, 4, 6])
    assert _pykernels.star_coefficients(shape) == {6: 1, 4: 2, 3: 3, 2: 2}
