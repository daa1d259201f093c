import math

import numpy as np
from hypothesis import given, settings, strategies as st

from fermatsyz.field import PrimeField
from fermatsyz.poly import GradedPoly
from fermatsyz.ring import FermatRing

F5 = PrimeField(5)


def brute_force_basis_count(d, n):
    return sum(
        1
        for i in range(n + 1)
        for j in range(n - i + 1)
        if d == 0 or i < d
    )


def test_hilbert_examples():
    ring = FermatRing(5, 11)
    assert ring.hilbert(5) == 21 == math.comb(7, 2)
    assert ring.hilbert(12) == 88 == 91 - 3
    assert ring.hilbert(0) == 1
    assert ring.hilbert(-3) == 0
    assert FermatRing(7, 4).hilbert(0) == 1


def test_hilbert_counts_basis():
    for d in (1, 2, 5, 11):
        ring = FermatRing(5, d)
        for n in range(3 * d + 1):
            assert ring.hilbert(n) == len(ring.basis(n)) == brute_force_basis_count(d, n)


def test_hilbert_polynomial_ring_limit():
    ring = FermatRing(5, 13)
    for n in range(13):
        assert ring.hilbert(n) == math.comb(n + 2, 2)


def test_plane_ring_sentinel():
    plane = FermatRing(5, 0)
    assert plane.is_plane and plane.smooth
    for n in range(8):
        assert plane.hilbert(n) == math.comb(n + 2, 2) == len(plane.basis(n))
    f = GradedPoly.monomial(F5, 2, (7, 1, 0))
    assert plane.normal_form(f) == f


def test_smoothness_flag():
    assert FermatRing(5, 11).smooth
    assert not FermatRing(5, 10).smooth
    assert FermatRing(2, 5).smooth


def test_basis_order_deterministic():
    ring = FermatRing(3, 4)
    basis = ring.basis(2)
    assert [tuple(m) for m in basis] == sorted(tuple(m) for m in basis)


def test_multiplication_by_one_is_identity():
    ring = FermatRing(5, 11)
    one = GradedPoly.monomial(F5, 1, (0, 0, 0))
    for n in (0, 3, 12):
        m = ring.multiplication_matrix(one, n)
        assert np.array_equal(m.array, np.eye(ring.hilbert(n), dtype=np.int64))


def test_multiplication_matrix_x_power():
    # X^11 * 1 = -Y^11 - Z^11: one column with two entries equal to 4
    ring = FermatRing(5, 11)
    g = GradedPoly.monomial(F5, 1, (11, 0, 0))
    m = ring.multiplication_matrix(g, 0)
    assert m.cols == 1 and m.rows == ring.hilbert(11)
    col = m.array[:, 0]
    idx = ring.basis_index(11)
    assert col[idx[(0, 11, 0)]] == 4
    assert col[idx[(0, 0, 11)]] == 4
    assert col.sum() == 8


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=0, max_value=2**32),
)
def test_multiplication_matrix_functorial(p, d, n, deg1, deg2, seed):
    """M_{g1 g2} equals M_{g1} after M_{g2} (composition of multiplication)."""
    field = PrimeField(p)
    ring = FermatRing(p, d)
    rng = np.random.default_rng(seed)

    def random_poly(deg):
        terms = {}
        for mono in [(i, j, deg - i - j) for i in range(deg + 1) for j in range(deg - i + 1)]:
            c = int(rng.integers(0, p))
            if c:
                terms[mono] = c
        return GradedPoly(field, deg, terms)

    g1, g2 = random_poly(deg1), random_poly(deg2)
    lhs = ring.multiplication_matrix(ring.normal_form(g1 * g2), n)
    m2 = ring.multiplication_matrix(ring.normal_form(g2), n)
    m1 = ring.multiplication_matrix(ring.normal_form(g1), n + deg2)
    assert lhs == m1.matmul(m2)


def test_coords_round_trip():
    ring = FermatRing(5, 4)
    f = ring.normal_form(GradedPoly.monomial(F5, 3, (6, 1, 0)))
    v = ring.coords(f)
    assert ring.from_coords(v, f.degree) == f
