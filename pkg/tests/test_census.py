import math
from fractions import Fraction

import pytest

from glcensus.census import (
    ConsistencyError,
    MuFunction,
    UnsupportedRegimeError,
    a_polynomial,
    b_coefficient,
    census_row,
    enumerate_phi,
    gl_order,
    normalizer_order,
    omega_closed,
    phi_count,
    stabilized_prefix,
)
from glcensus.exactalg import IntPolynomial, make_rf, rf_from_fraction

P = IntPolynomial.from_coeffs


def rf(num, den=(1,)):
    return make_rf(P(num), P(den))


# Independent oracle for |Phi_n|: the Euler product with divisor-count
# exponents, prod_k (1 - t^k)^(-tau(k)), expanded with plain integers.
def euler_transform_counts(n: int) -> list[int]:
    series = [1] + [0] * n
    for k in range(1, n + 1):
        tau = sum(1 for d in range(1, k + 1) if k % d == 0)
        factor = [0] * (n + 1)
        for j in range(0, n // k + 1):
            factor[j * k] = math.comb(j + tau - 1, j)
        out = [0] * (n + 1)
        for i, ca in enumerate(series):
            if ca:
                for j in range(n + 1 - i):
                    out[i + j] += ca * factor[j]
        series = out
    return series


def test_phi_1_single_class():
    (mu,) = enumerate_phi(1)
    assert mu == MuFunction((((1, 1), 1),))


def test_phi_2_three_classes_in_canonical_order():
    mus = enumerate_phi(2)
    assert [m.items for m in mus] == [
        ((((1, 1), 2)),),
        ((((1, 2), 1)),),
        ((((2, 1), 1)),),
    ]


def test_phi_counts_against_euler_transform():
    oracle = euler_transform_counts(12)
    assert [phi_count(n) for n in range(13)] == oracle
    assert phi_count(4) == 11


def test_phi_weights_and_uniqueness():
    for n in range(9):
        mus = enumerate_phi(n)
        assert len(set(mus)) == len(mus)
        for mu in mus:
            assert mu.weight == n


def test_normalizer_order_single_blocks():
    assert normalizer_order(MuFunction((((1, 1), 1),))) == rf([-1, 1])  # q - 1
    # (1 - 1/q)^2 q^3 = q(q-1)^2
    assert normalizer_order(MuFunction((((1, 2), 1),))) == rf([0, 1, -2, 1])
    # two split-torus blocks: (q-1)^2 * 2!
    assert normalizer_order(MuFunction((((1, 1), 2),))) == rf([2, -4, 2])


def test_b2_three_term_sum():
    expected = (
        rf([1], [2, -4, 2])  # 1 / (2 (q-1)^2)
        + rf([1], [0, 1, -2, 1])  # 1 / ((1-q^-1)^2 q^3)
        + rf([1], [-2, 0, 2])  # 1 / (2 (1-q^-2) q^2)
    )
    assert b_coefficient(2) == expected
    # and it reduces against the group order to q^2+q+1
    assert b_coefficient(2) * rf(gl_order(2).coeffs) == rf([1, 1, 1])


def test_b_trivial_values():
    assert b_coefficient(0) == rf([1])
    assert b_coefficient(1) == rf([1], [-1, 1])


def test_b_matches_naive_label_sum():
    # the grouped summation must equal the plain sum over labels
    for n in range(7):
        naive = rf([0])
        for mu in enumerate_phi(n):
            naive = naive + rf([1]) / normalizer_order(mu)
        assert b_coefficient(n) == naive


def test_gl_order():
    assert gl_order(0) == P([1])
    assert gl_order(1) == P([-1, 1])
    assert gl_order(2) == P([0, 1, -1, -1, 1])  # q^4-q^3-q^2+q
    assert gl_order(3).eval_int(3) == 26 * 24 * 18 == 11232
    assert gl_order(2).eval_int(2) == 6
    assert gl_order(4).eval_int(2) == 20160


# Census polynomials for n = 1..6, frozen from the published table.
TABLE1 = {
    1: [1],
    2: [1, 1, 1],
    3: [-1, -1, 1, 3, 3, 1, 1],
    4: [0, 1, 1, -1, -2, -3, 2, 5, 9, 7, 4, 1, 1],
    5: [0, 0, 0, -1, -1, 1, 2, 1, -2, -6, -7, -4, 6, 15, 22, 22, 18, 9, 4, 1, 1],
    6: [0, 0, 0, 0, 0, 0, 1, 1, -1, -1, 0, 5, 6, 6, 1, -7, -16, -19, -8, 5,
        33, 53, 68, 65, 60, 40, 23, 10, 4, 1, 1],
}


def test_a_polynomial_table1():
    for n, coeffs in TABLE1.items():
        assert a_polynomial(n) == P(coeffs), f"n={n}"


def test_a_polynomial_shape():
    for n in range(1, 11):
        poly = a_polynomial(n)
        assert poly.degree == n * n - n
        assert poly.leading == 1


def test_omega_closed_values():
    assert omega_closed(2, 3) == 13
    assert omega_closed(2, 4) == 21
    assert omega_closed(2, 5) == 31
    assert omega_closed(3, 4) == 6091  # Table-1 n=3 polynomial at q=4
    assert omega_closed(3, 3) == 1301 - 11232 // 48 == 1067
    assert omega_closed(4, 4) == a_polynomial(4).eval_int(4) - (
        gl_order(4).eval_int(4) // (3**4 * math.factorial(4))
    )


def test_omega_closed_rejected_regimes():
    for n, q in [(3, 2), (2, 2), (4, 3), (5, 2)]:
        with pytest.raises(UnsupportedRegimeError):
            omega_closed(n, q)
    with pytest.raises(ValueError):
        omega_closed(2, 6)  # not a prime power


def test_monotonicity_qn_bn():
    for q in (2, 3, 4, 5):
        values = [b_coefficient(n).eval(q) * Fraction(q) ** n for n in range(14)]
        for n in range(13):
            assert values[n] < values[n + 1], (q, n)


def test_stabilized_prefix():
    assert stabilized_prefix(2) == [1]
    assert stabilized_prefix(6) == [1, 1, 4]
    assert stabilized_prefix(8) == [1, 1, 4, 10]
    for n in range(2, 11):
        poly = a_polynomial(n)
        top = list(reversed(poly.coeffs))[: n // 2]
        assert top == stabilized_prefix(n), f"n={n}"


def test_census_row():
    row = census_row(3)
    assert row.class_count == 5
    assert row.a_poly == a_polynomial(3)
    assert row.b_n == b_coefficient(3)
