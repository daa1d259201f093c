import pytest
from hypothesis import given, settings, strategies as st

from fermatsyz.errors import ExponentOverflowError
from fermatsyz.field import PrimeField
from fermatsyz.poly import (
    EXP_LIMIT,
    FermatRelation,
    GradedPoly,
    frobenius_power,
    make_monomial,
    multiply,
    normal_form,
    parse_poly,
)

F5 = PrimeField(5)
F2 = PrimeField(2)
F3 = PrimeField(3)


def poly(field, *terms):
    out = GradedPoly.zero(field, terms[0][1][0] + terms[0][1][1] + terms[0][1][2])
    for c, exps in terms:
        out = out + GradedPoly.monomial(field, c, exps)
    return out


def test_multiply_difference_of_squares():
    x_plus_y = poly(F5, (1, (1, 0, 0)), (1, (0, 1, 0)))
    x_minus_y = poly(F5, (1, (1, 0, 0)), (4, (0, 1, 0)))
    prod = multiply(x_plus_y, x_minus_y)
    assert prod == poly(F5, (1, (2, 0, 0)), (4, (0, 2, 0)))


def test_multiply_cone_identity_term():
    # X^k * X^aq contributes X^dp with k = dp - aq
    p, d, a, e = 5, 11, 2, 2
    q = p**e
    k = d * p - a * q
    prod = multiply(
        GradedPoly.monomial(F5, 1, (k, 0, 0)), GradedPoly.monomial(F5, 1, (a * q, 0, 0))
    )
    assert prod == GradedPoly.monomial(F5, 1, (d * p, 0, 0))


def test_multiply_char2():
    f = poly(F2, (1, (2, 0, 0)), (1, (0, 2, 0)))
    assert f * f == poly(F2, (1, (4, 0, 0)), (1, (0, 4, 0)))


def test_multiply_drops_cancelling_terms():
    f = poly(F5, (1, (1, 0, 0)), (4, (0, 1, 0)))  # X - Y
    g = poly(F5, (1, (1, 0, 0)), (1, (0, 1, 0)))  # X + Y
    assert (f * g).coefficient((1, 1, 0)) == 0


def test_frobenius_freshman_dream():
    f = poly(F5, (1, (1, 0, 0)), (1, (0, 1, 0)))
    assert frobenius_power(f, 1) == poly(F5, (1, (5, 0, 0)), (1, (0, 5, 0)))


def test_frobenius_fermat_quintic_power():
    f = poly(F5, (1, (11, 0, 0)), (1, (0, 11, 0)), (1, (0, 0, 11)))
    assert frobenius_power(f, 1) == poly(
        F5, (1, (55, 0, 0)), (1, (0, 55, 0)), (1, (0, 0, 55))
    )


def test_frobenius_agrees_with_repeated_multiply():
    f = poly(F3, (1, (1, 0, 0)), (2, (0, 1, 0)), (1, (0, 0, 1)))
    assert frobenius_power(f, 1) == f * f * f


def test_frobenius_overflow():
    f = GradedPoly.monomial(F5, 1, (2**40, 0, 0))
    with pytest.raises(ExponentOverflowError):
        frobenius_power(f, 12)


def test_monomial_overflow_checked():
    with pytest.raises(ExponentOverflowError):
        make_monomial(EXP_LIMIT, 1, 0)


def test_normal_form_relation_itself():
    rel = FermatRelation(11, F5)
    nf = normal_form(GradedPoly.monomial(F5, 1, (11, 0, 0)), rel)
    assert nf == poly(F5, (4, (0, 11, 0)), (4, (0, 0, 11)))  # -Y^11 - Z^11


def test_normal_form_frobenius_power_vanishes():
    rel = FermatRelation(11, F5)
    f = frobenius_power(rel.poly(), 1)
    assert normal_form(f, rel).is_zero()


def test_normal_form_single_step():
    rel = FermatRelation(11, F5)
    nf = normal_form(GradedPoly.monomial(F5, 1, (12, 1, 0)), rel)
    assert nf == poly(F5, (4, (1, 12, 0)), (4, (1, 1, 11)))


def random_homogeneous(field, degree, seed_terms):
    terms = {}
    for c, i, j in seed_terms:
        i = i % (degree + 1)
        j = j % (degree + 1 - i)
        mono = (i, j, degree - i - j)
        terms[mono] = (terms.get(mono, 0) + c) % field.p
    return GradedPoly(field, degree, {m: c for m, c in terms.items() if c})


coeff = st.integers(min_value=0, max_value=10**6)
exp = st.integers(min_value=0, max_value=10**6)
term_list = st.lists(st.tuples(coeff, exp, exp), min_size=1, max_size=8)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([2, 3, 5, 7]),
    st.integers(min_value=1, max_value=9),
    st.integers(min_value=0, max_value=40),
    term_list,
)
def test_normal_form_idempotent(p, d, degree, seed_terms):
    field = PrimeField(p)
    rel = FermatRelation(d, field)
    f = random_homogeneous(field, degree, seed_terms)
    nf = normal_form(f, rel)
    assert normal_form(nf, rel) == nf
    assert all(m.i < d for m in nf.terms)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([2, 3, 5, 7]),
    st.integers(min_value=1, max_value=7),
    st.integers(min_value=0, max_value=15),
    term_list,
)
def test_normal_form_kills_multiples_of_relation(p, d, degree, seed_terms):
    field = PrimeField(p)
    rel = FermatRelation(d, field)
    g = random_homogeneous(field, degree, seed_terms)
    assert normal_form(g * rel.poly(), rel).is_zero()


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([3, 5]),
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=0, max_value=10),
    st.integers(min_value=0, max_value=10),
    term_list,
    term_list,
)
def test_normal_form_compatible_with_product(p, d, deg_f, deg_g, terms_f, terms_g):
    field = PrimeField(p)
    rel = FermatRelation(d, field)
    f = random_homogeneous(field, deg_f, terms_f)
    g = random_homogeneous(field, deg_g, terms_g)
    lhs = normal_form(f * g, rel)
    rhs = normal_form(normal_form(f, rel) * normal_form(g, rel), rel)
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=6),
    term_list,
)
def test_frobenius_tower(p, e1, e2, degree, seed_terms):
    field = PrimeField(p)
    f = random_homogeneous(field, degree, seed_terms)
    assert frobenius_power(f, e1 + e2) == frobenius_power(frobenius_power(f, e1), e2)


def test_serialization_round_trip():
    f = poly(F5, (3, (2, 0, 1)), (1, (0, 3, 0)), (4, (1, 1, 1)))
    text = f.to_string()
    assert text == "1*X^0*Y^3*Z^0 + 4*X^1*Y^1*Z^1 + 3*X^2*Y^0*Z^1"
    assert parse_poly(text, F5) == f
    assert parse_poly("0", F5, degree=7).is_zero()


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("1*X^2*Y^0*Z^0 + junk", F5)
    with pytest.raises(ValueError):
        parse_poly("1*X^1*Y^0*Z^0 + 1*X^2*Y^0*Z^0", F5)  # inhomogeneous
