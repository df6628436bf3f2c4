from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glcensus.census import b_coefficient, gl_order
from glcensus.exactalg import IntPolynomial, PoleError, make_rf, rf_from_fraction, rf_from_poly
from glcensus.qseries import (
    FORM_EXP,
    FORM_PRODUCT,
    FORM_SUM,
    RATFUNC,
    PowerSeries,
    RingMismatchError,
    UCoeff,
    USeriesRing,
    build_f1,
    build_f2,
    build_fbar,
    ps_exp,
    ps_from_dict,
    ps_mul,
    ps_one,
    rf_to_useries,
)

P = IntPolynomial.from_coeffs


def rf(num, den=(1,)):
    return make_rf(P(num), P(den))


def const_series(order, values):
    return ps_from_dict(order, {k: rf_from_fraction(Fraction(v)) for k, v in values.items()})


def test_ps_mul_basic():
    one_plus_t = const_series(2, {0: 1, 1: 1})
    one_minus_t = const_series(2, {0: 1, 1: -1})
    assert ps_mul(one_plus_t, one_minus_t).coeffs == const_series(2, {0: 1, 2: -1}).coeffs


def test_ps_mul_identity():
    a = const_series(3, {0: 2, 1: 3, 3: -1})
    assert ps_mul(a, ps_one(3)).coeffs == a.coeffs


def test_ps_mul_mismatch():
    with pytest.raises(RingMismatchError):
        ps_mul(ps_one(2), ps_one(3))
    with pytest.raises(RingMismatchError):
        ps_mul(ps_one(2), ps_one(2, USeriesRing(5)))


def test_ps_exp_zero_and_t():
    assert ps_exp(const_series(3, {})).coeffs == ps_one(3).coeffs
    e = ps_exp(const_series(3, {1: 1}))
    assert [c for c in e.coeffs] == [
        rf([1]),
        rf([1]),
        rf_from_fraction(Fraction(1, 2)),
        rf_from_fraction(Fraction(1, 6)),
    ]


def test_ps_exp_of_log_geometric():
    # -log(1-t) = sum t^k/k; its exponential is the geometric series
    order = 4
    log_series = ps_from_dict(order, {k: rf_from_fraction(Fraction(1, k)) for k in range(1, order + 1)})
    assert ps_exp(log_series).coeffs == tuple(rf([1]) for _ in range(order + 1))


def test_ps_exp_requires_zero_constant():
    with pytest.raises(ValueError):
        ps_exp(ps_one(3))


def test_f1_coefficients():
    f1 = build_f1(4, FORM_SUM)
    assert f1[0] == rf([1])
    assert f1[1] == rf([1], [-1, 1])  # 1/(q-1)


def test_f1_exp_equals_sum():
    assert build_f1(12, FORM_EXP).coeffs == build_f1(12, FORM_SUM).coeffs


def test_f1_product_matches_exp_in_u_ring():
    exp_form = build_f1(10, FORM_EXP)
    prod_form = build_f1(10, FORM_PRODUCT, u_order=40)
    for n in range(11):
        assert rf_to_useries(exp_form[n], 40) == prod_form[n], f"t^{n}"


def test_f1_product_requires_u_ring():
    assert isinstance(build_f1(4, FORM_PRODUCT).ring, USeriesRing)


def test_f2_low_coefficients():
    f2 = build_f2(6, FORM_EXP)
    assert f2[0] == rf([1])
    assert f2[1] == rf([0])
    # single contribution d=1, m=2: 1/((1-1/q)^2 q^3) = 1/(q(q-1)^2)
    assert f2[2] == rf([1], [0, 1, -2, 1])


def test_f2_product_matches_exp_in_u_ring():
    exp_form = build_f2(10, FORM_EXP)
    prod_form = build_f2(10, FORM_PRODUCT, u_order=40)
    for n in range(11):
        assert rf_to_useries(exp_form[n], 40) == prod_form[n], f"t^{n}"


def test_f2_has_no_sum_form():
    with pytest.raises(ValueError):
        build_f2(4, FORM_SUM)


def test_fbar_t1_matches_class_sum():
    # product coefficient at t^1 equals the single weight-1 label value
    assert build_fbar(3)[1] == b_coefficient(1) == rf([1], [-1, 1])


def test_fbar_against_published_polynomials():
    fbar = build_fbar(3)
    assert fbar[0] == rf([1])
    assert fbar[2] * rf_from_poly(gl_order(2)) == rf([1, 1, 1])
    assert fbar[3] * rf_from_poly(gl_order(3)) == rf([-1, -1, 1, 3, 3, 1, 1])


def test_fbar_matches_label_sums_to_12():
    fbar = build_fbar(12)
    for n in range(13):
        assert fbar[n] == b_coefficient(n), f"t^{n}"


def test_fbar_times_group_order_is_monic_polynomial():
    fbar = build_fbar(12)
    for n in range(1, 13):
        product = fbar[n] * rf_from_poly(gl_order(n))
        assert product.is_polynomial, f"n={n}"
        poly = product.as_polynomial()
        assert poly.degree == n * n - n and poly.leading == 1


def test_rf_to_useries_geometric():
    u = rf_to_useries(rf([1], [-1, 1]), 6)  # 1/(q-1) = u + u^2 + ...
    assert u.coeffs == (Fraction(0),) + (Fraction(1),) * 6
    # 1/((1-1/q) q) = 1/(q-1) again
    assert rf_to_useries(rf([1], [-1, 1]), 6) == u


def test_rf_to_useries_pole():
    with pytest.raises(PoleError):
        rf_to_useries(rf([1, 1, 1]), 10)


def test_ucoeff_order_mismatch():
    with pytest.raises(RingMismatchError):
        UCoeff.zero(3) + UCoeff.zero(4)


small_rfs = st.builds(
    lambda a, b, c: make_rf(P([a, b]), P([c, 1])),
    st.integers(-3, 3),
    st.integers(-3, 3),
    st.integers(1, 3),
)


@settings(max_examples=25, deadline=None)
@given(st.lists(small_rfs, min_size=1, max_size=3), st.lists(small_rfs, min_size=1, max_size=3))
def test_exp_is_additive(acoeffs, bcoeffs):
    order = 4
    a = ps_from_dict(order, dict(enumerate(acoeffs, start=1)))
    b = ps_from_dict(order, dict(enumerate(bcoeffs, start=1)))
    assert ps_exp(a + b).coeffs == ps_mul(ps_exp(a), ps_exp(b)).coeffs
