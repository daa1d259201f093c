from fractions import Fraction

import pytest

from fermatsyz.errors import InapplicableError, NotPrimeError
from fermatsyz.field import PrimeField
from fermatsyz.poly import GradedPoly
from fermatsyz.ring import FermatRing
from fermatsyz.tightclosure import (
    cech_class_curve,
    cech_class_p1,
    formula_star,
    ideal_membership,
    tc_counterexample,
    tc_parameters,
)

F5 = PrimeField(5)


def test_formula_star():
    fs = formula_star(2)
    assert fs.generators == ("X^2", "Y^2", "Z^2")
    assert fs.threshold == Fraction(3)
    assert formula_star(1).threshold == Fraction(3, 2)
    # (XYZ)^b sits exactly at the critical degree for a = 2b
    b = 3
    assert Fraction(3 * b) == formula_star(2 * b).threshold


def test_ideal_membership_generator_multiple():
    ring = FermatRing(5, 11)
    f = GradedPoly.monomial(F5, 1, (3, 0, 0))  # X^2 * X
    assert ideal_membership(f, 2, ring)


def test_ideal_membership_xyz_not_in_squares():
    ring = FermatRing(5, 11)
    f = GradedPoly.monomial(F5, 1, (1, 1, 1))
    assert not ideal_membership(f, 2, ring)


def test_ideal_membership_zero():
    ring = FermatRing(5, 11)
    assert ideal_membership(GradedPoly.zero(F5, 3), 2, ring)


def test_ideal_membership_uses_relation():
    # X^11 = -(Y^11 + Z^11) lies in (Y^4, Z^4) only through the relation
    ring = FermatRing(5, 11)
    f = GradedPoly.monomial(F5, 1, (11, 0, 0))
    assert ideal_membership(f, 4, ring)


def test_ideal_membership_brute_force_low_degrees():
    """Span check agrees with brute-force enumeration of the ideal piece."""
    import numpy as np

    from fermatsyz.linalg import MatrixModP

    p, d, a = 3, 4, 2
    ring = FermatRing(p, d)
    field = ring.field
    for n in range(2 * d + 1):
        gens = []
        for var in range(3):
            if n - a < 0:
                continue
            exps = [0, 0, 0]
            exps[var] = a
            gen = GradedPoly.monomial(field, 1, tuple(exps))
            for mono in ring.basis(n - a):
                prod = ring.normal_form(GradedPoly(field, n - a, {mono: 1}) * gen)
                gens.append(ring.coords(prod))
        for trial_mono in ring.basis(n):
            f = GradedPoly(field, n, {trial_mono: 1})
            expected = (
                in_span(gens, ring.coords(f), p) if gens else f.is_zero()
            )
            assert ideal_membership(f, a, ring) == expected


def in_span(rows, vector, p):
    import numpy as np

    from fermatsyz.linalg import MatrixModP

    m = MatrixModP(np.asarray(rows), p)
    aug = MatrixModP(np.vstack([rows, vector]), p)
    return m.rank() == aug.rank()


def test_tc_parameters_derivations():
    params = tc_parameters(5, 1, 2)
    assert (params.a, params.q, params.d, params.k, params.u, params.m) == (
        2,
        25,
        11,
        5,
        3,
        75,
    )
    assert params.r == params.s == params.t == 25
    flags = params.precondition_flags()
    assert flags == {
        "ud_ge_bq_plus_p": True,
        "u_minus_1_d_lt_bq": True,
        "p_not_dividing_u": True,
    }


def test_tc_parameters_validation():
    with pytest.raises(NotPrimeError):
        tc_parameters(4, 1, 2)
    with pytest.raises(InapplicableError):
        tc_parameters(5, 0, 2)
    with pytest.raises(InapplicableError):
        tc_parameters(5, 1, 0)


def test_cech_class_curve_bookkeeping():
    params = tc_parameters(5, 1, 2)
    cls = cech_class_curve(params)
    assert cls.numerator == (25, 25, 25)
    assert cls.image_numerator == (25, 25, 30)
    # reduced form -Z^30 / (X^25 Y^25), living in H^1(C, O_C(k - bq))
    assert cls.reduced_numerator == (0, 0, 30)
    assert cls.reduced_denominator == (25, 25)
    assert cls.image_twist == params.k - params.bq == -20


def test_cech_class_p1_paper_instance():
    params = tc_parameters(5, 1, 2)
    cls = cech_class_p1(params)
    assert cls.degree == 3 * 11 - 50 == -17
    # second summand u * X^((u-1)d - bq) Y^(d - bq) = 3 * X^-3 Y^-14 survives
    assert cls.coefficients[(-3, -14)] == 3
    assert cls.coefficients[(-14, -3)] == 3
    assert len(cls.coefficients) == 2
    assert cls.global_sign == 1  # u = 3: (-1)^(u+1)
    assert not cls.is_zero()


def test_cech_class_p1_extreme_terms_vanish():
    params = tc_parameters(5, 1, 2)
    cls = cech_class_p1(params)
    # X^(ud - bq) Y^-bq has X-exponent 8 >= 0: discarded
    assert all(i <= -1 and j <= -1 for (i, j) in cls.coefficients)
    assert all(i + j == cls.degree for (i, j) in cls.coefficients)


def test_cech_class_p1_p7():
    params = tc_parameters(7, 1, 2)
    assert (params.d, params.q, params.u) == (15, 49, 4)
    assert (params.u - 1) * params.d == 45 < 49
    cls = cech_class_p1(params)
    assert cls.coefficients[(-4, -34)] == 4  # second summand, 4 != 0 mod 7
    assert cls.global_sign == -1  # u = 4 is even
    assert not cls.is_zero()


def test_tc_counterexample_certified():
    report = tc_counterexample(5, 1, 2)
    assert report.verdict == "certified"
    assert report.failing_preconditions == []
    data = report.to_json_dict()
    assert data["verdict"] == "certified"
    assert {"x_exp": -3, "y_exp": -14, "coeff": 3} in data["surviving_terms"]
    assert data["preconditions"] == {
        "ud_ge_bq_plus_p": True,
        "u_minus_1_d_lt_bq": True,
        "p_not_dividing_u": True,
    }

    assert tc_counterexample(7, 1, 2).verdict == "certified"


def test_tc_counterexample_inconclusive_p2():
    # u = 1: the would-be second summand is an extreme term; ud >= bq + p fails
    report = tc_counterexample(2, 1, 2)
    assert report.verdict == "inconclusive"
    assert "ud_ge_bq_plus_p" in report.failing_preconditions


def test_tc_counterexample_inconclusive_e1():
    report = tc_counterexample(5, 1, 1)
    assert report.verdict == "inconclusive"
    assert "u_minus_1_d_lt_bq" in report.failing_preconditions


def test_tc_smoothness_rejection_at_e1():
    # d = 2b + 1 can be a multiple of p only at e = 1
    from fermatsyz.errors import SmoothnessError

    with pytest.raises(SmoothnessError):
        tc_counterexample(3, 1, 1)
    with pytest.raises(SmoothnessError):
        tc_counterexample(5, 2, 1)


def test_tc_never_certifies_with_failing_flags():
    # scan a parameter spread: verdict certified implies all flags true
    from fermatsyz.errors import SmoothnessError

    for p in (2, 3, 5, 7, 11, 13):
        for b in (1, 2):
            for e in (1, 2, 3):
                try:
                    report = tc_counterexample(p, b, e)
                except SmoothnessError:
                    assert e == 1 and (2 * b + 1) % p == 0
                    continue
                if report.verdict == "certified":
                    assert all(report.preconditions.values())
                    assert not report.p1_class.is_zero()
                else:
                    assert report.failing_preconditions


def test_tc_second_summand_coefficient_is_u():
    # whenever both exponents of the second summand are negative its
    # coefficient is exactly u mod p
    for p, b, e in ((5, 1, 2), (7, 1, 2), (11, 1, 2), (5, 2, 2), (13, 3, 2)):
        params = tc_parameters(p, b, e)
        cls = cech_class_p1(params)
        i = (params.u - 1) * params.d - params.bq
        j = params.d - params.bq
        if i <= -1 and j <= -1:
            assert cls.coefficients.get((i, j), 0) == params.u % p
