import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fermatsyz.linalg import MatrixModP, kernel_basis


def reference_rank(rows, p):
    """Independent rank oracle: incremental row reduction with Python ints."""
    basis = []  # list of (pivot_col, row)
    for row in rows:
        row = [x % p for x in row]
        for pc, b in basis:
            f = row[pc]
            if f:
                row = [(x - f * y) % p for x, y in zip(row, b)]
        pivot = next((i for i, x in enumerate(row) if x), None)
        if pivot is not None:
            inv = pow(row[pivot], -1, p)
            row = [x * inv % p for x in row]
            basis.append((pivot, row))
            basis.sort()
    return len(basis)


def test_zero_matrix_kernel_is_standard_basis():
    m = MatrixModP(np.zeros((4, 3), dtype=np.int64), 7)
    k = m.kernel_basis()
    assert np.array_equal(k, np.eye(3, dtype=np.int64))


def test_identity_kernel_empty():
    m = MatrixModP.identity(5, 7)
    assert m.kernel_basis().shape == (0, 5)
    assert m.rank() == 5


def test_rref_is_canonical_single_row():
    m = MatrixModP([[2, 2]], 5)
    r, rank, pivots = m.rref()
    assert rank == 1 and pivots == [0]
    assert r.array.tolist() == [[1, 1]]
    k = m.kernel_basis()
    # kernel of (x + y = 0): canonical reduced-echelon generator (1, -1)
    assert k.tolist() == [[1, 4]]


@settings(max_examples=50, deadline=None)
@given(
    st.sampled_from([2, 3, 5, 7, 97]),
    st.integers(min_value=1, max_value=12),
    st.integers(min_value=1, max_value=10),
    st.integers(min_value=0, max_value=2**32),
)
def test_kernel_exactness_and_dimension(p, rows, cols, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(rows, cols), dtype=np.int64)
    m = MatrixModP(a, p)
    k = m.kernel_basis()
    # Mv = 0 exactly for every kernel vector
    if k.shape[0]:
        prod = (a @ k.T) % p
        assert not prod.any()
    # rank-nullity against the independent oracle
    rank = reference_rank(a.tolist(), p)
    assert m.rank() == rank
    assert k.shape[0] == cols - rank


def test_random_20x12_example():
    rng = np.random.default_rng(42)
    a = rng.integers(0, 7, size=(20, 12), dtype=np.int64)
    m = MatrixModP(a, 7)
    vs = kernel_basis(m)
    assert len(vs) == 12 - reference_rank(a.tolist(), 7)
    for v in vs:
        assert not ((a @ v) % 7).any()


def test_matmul_chunked_no_overflow():
    p = 2147483647  # largest allowed prime
    a = MatrixModP([[p - 1, p - 1], [1, 2]], p)
    b = MatrixModP([[p - 1], [p - 2]], p)
    c = a.matmul(b)
    expected = [[((p - 1) * (p - 1) + (p - 1) * (p - 2)) % p], [(p - 1 + 2 * (p - 2)) % p]]
    assert c.array.tolist() == expected


def test_backends_agree():
    pytest.importorskip("fermatsyz._kernels._modp")
    from fermatsyz._kernels import _modp, modp_py

    rng = np.random.default_rng(7)
    for p in (2, 5, 101):
        for shape in ((6, 9), (9, 6), (1, 1), (8, 8)):
            a = rng.integers(0, p, size=shape, dtype=np.int64)
            a1 = np.ascontiguousarray(a.copy())
            a2 = np.ascontiguousarray(a.copy())
            r1 = _modp.rref_mod_p(a1, p)
            r2 = modp_py.rref_mod_p(a2, p)
            assert r1 == (r2[0], list(r2[1])) or (r1[0], list(r1[1])) == r2
            assert np.array_equal(a1, a2)
