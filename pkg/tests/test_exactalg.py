from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glcensus.exactalg import (
    ONE_POLY,
    PoleError,
    IntPolynomial,
    RationalFunction,
    make_rf,
    phi_d,
    poly_from_json,
    poly_gcd,
    poly_to_json,
    rf_arith,
    rf_eval,
    rf_from_fraction,
    rf_from_json,
    rf_to_json,
)

P = IntPolynomial.from_coeffs


def rf(num, den=(1,)):
    return make_rf(P(num), P(den))


def test_add_common_denominator_identity():
    # 1/(q-1) + 1/(q+1) = 2q/(q^2-1)
    lhs = rf_arith(rf([1], [-1, 1]), rf([1], [1, 1]), "add")
    assert lhs == rf([0, 2], [-1, 0, 1])


def test_mul_factorisation_identity():
    # (q^2+q+1)(q-1) = q^3-1
    assert rf_arith(rf([1, 1, 1]), rf([-1, 1]), "mul") == rf([-1, 0, 0, 1])


def test_div_exact_cancellation():
    assert rf_arith(rf([-1, 0, 0, 1]), rf([-1, 1]), "div") == rf([1, 1, 1])


def test_div_by_zero_rf():
    with pytest.raises(ZeroDivisionError):
        rf_arith(rf([1]), rf([0]), "div")


def test_eval_quadratic_at_3_and_5():
    f = rf([1, 1, 1])
    assert rf_eval(f, 3) == 13
    assert rf_eval(f, 5) == 31


def test_eval_at_pole():
    f = rf([1], [-1, 1])
    with pytest.raises(PoleError):
        rf_eval(f, 1)


def test_phi_d_small():
    assert phi_d(0) == rf([1])
    assert phi_d(1) == rf([-1, 1], [0, 1])
    # (q-1)(q^2-1)/q^3
    expected = rf_arith(rf([-1, 1], [0, 1]), rf([-1, 0, 1], [0, 0, 1]), "mul")
    assert phi_d(2) == expected


def test_phi_recurrence():
    for d in range(1, 8):
        step = rf([1]) - rf([1], [0] * d + [1])
        assert phi_d(d) == phi_d(d - 1) * step


def test_gl_order_two_routes():
    # q^(n(n-1)/2) * prod(q^i - 1) == q^(n^2) * phi_n(1/q) as rational functions
    for n in range(7):
        lhs = rf([1], [1]).num  # placeholder; build product directly
        prod = rf([1])
        for i in range(1, n + 1):
            prod = prod * rf([-1] + [0] * (i - 1) + [1])
        lhs = rf([0] * (n * (n - 1) // 2) + [1]) * prod
        rhs = rf([0] * (n * n) + [1]) * phi_d(n)
        assert lhs == rhs


def test_json_roundtrip():
    f = rf([0, 2], [-1, 0, 1])
    data = rf_to_json(f)
    assert data == {"num": ["0", "2"], "den": ["-1", "0", "1"]}
    assert rf_from_json(data) == f
    p = P([3, 0, -5])
    assert poly_from_json(poly_to_json(p)) == p


def test_poly_gcd_basic():
    a = P([-1, 0, 0, 1])  # q^3-1
    b = P([-1, 1])  # q-1
    assert poly_gcd(a, b) == b
    c = P([1, 1, 1])  # q^2+q+1, coprime to q-1
    assert poly_gcd(c * a, b * a) == a
    assert poly_gcd(P([2, 2]), P([4])) == ONE_POLY


small_ints = st.integers(min_value=-9, max_value=9)
polys = st.lists(small_ints, min_size=0, max_size=6).map(P)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


@settings(max_examples=60, deadline=None)
@given(polys, nonzero_polys, polys, nonzero_polys)
def test_canonical_form_unique(a, b, c, d):
    # (a/b) + (c/d) built in one shot equals the same value assembled the
    # long way round; canonical form makes this structural equality.
    x = make_rf(a, b)
    y = make_rf(c, d)
    direct = make_rf(a * d + c * b, b * d)
    assert x + y == direct
    assert (x + y) - y == x


@settings(max_examples=60, deadline=None)
@given(
    polys,
    nonzero_polys,
    polys,
    nonzero_polys,
    st.fractions(min_value=-4, max_value=4, max_denominator=5),
)
def test_eval_commutes_with_arith(a, b, c, d, q0):
    x = make_rf(a, b)
    y = make_rf(c, d)
    for op, fn in [("add", lambda u, v: u + v), ("sub", lambda u, v: u - v), ("mul", lambda u, v: u * v)]:
        combined = rf_arith(x, y, op)
        try:
            lhs = rf_eval(combined, q0)
            vx = rf_eval(x, q0)
            vy = rf_eval(y, q0)
        except PoleError:
            continue
        assert lhs == fn(vx, vy)


@settings(max_examples=40, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_poly_gcd_divides_and_is_maximal(a, b, g):
    h = poly_gcd(a * g, b * g)
    assert g.primitive().divides(h)
    assert h.divides(a * g) and h.divides(b * g)


def test_rf_from_fraction():
    assert rf_from_fraction(Fraction(3, 4)) == rf([3], [4])
    assert rf_eval(rf_from_fraction(Fraction(-2, 7)), 10) == Fraction(-2, 7)
