import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from edcert.cyclo import CycNum, cyclotomic_poly, root_of_unity, sqrt_rational, totient


def close(x: CycNum, z: complex) -> bool:
    return abs(x.to_complex() - z) < 1e-9


def test_root_of_unity_small_cases():
    assert root_of_unity(1, 0) == 1
    assert root_of_unity(2, 1) == -1
    assert root_of_unity(4, 2) == -1


def test_field_op_examples():
    z3 = root_of_unity(3)
    assert z3 + z3**2 == -1
    assert root_of_unity(4) * root_of_unity(4) == -1
    z5 = root_of_unity(5)
    assert z5.inverse() == root_of_unity(5, 4)


def test_cyclotomic_polys_against_known_coefficients():
    # Phi_12 = x^4 - x^2 + 1, Phi_15 has a coefficient -1 at x^1 and x^7 among others
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_poly(15) == (1, -1, 0, 1, -1, 1, 0, -1, 1)
    for n in range(1, 40):
        assert len(cyclotomic_poly(n)) - 1 == totient(n)


def test_zeta_has_exact_order():
    for E in range(1, 25):
        z = root_of_unity(E)
        assert z**E == 1
        assert all(z**d != 1 for d in range(1, E))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_sum_of_pth_roots_vanishes(p):
    assert sum((root_of_unity(p, i) for i in range(p)), CycNum.zero(p)).is_zero()


def test_multiplicativity_exhaustive():
    for E in range(1, 25):
        for j in range(E):
            for k in range(E):
                assert root_of_unity(E, j) * root_of_unity(E, k) == root_of_unity(E, j + k)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        CycNum.zero(5).inverse()


def test_mixed_order_arithmetic_promotes_to_lcm():
    x = root_of_unity(4) + root_of_unity(6)
    assert x.order == 12
    assert close(x, 1j + cmath.exp(2j * cmath.pi / 6))


def test_hash_consistent_across_orders():
    a = root_of_unity(3)
    b = root_of_unity(6, 2)
    c = root_of_unity(12, 4)
    assert a == b == c
    assert hash(a) == hash(b) == hash(c)
    assert len({a, b, c, CycNum.rational(-1), root_of_unity(2)}) == 2


@pytest.mark.parametrize("q", [2, 3, -1, -3, 5, Fraction(1, 4), Fraction(-7, 9), 12, 0])
def test_sqrt_rational_squares_back(q):
    r = sqrt_rational(q)
    assert r * r == q


@st.composite
def cyc(draw, order=None):
    E = order or draw(st.sampled_from([1, 3, 4, 5, 8, 12]))
    coeffs = draw(st.lists(st.fractions(max_denominator=5, min_value=-4, max_value=4),
                           min_size=0, max_size=totient(E)))
    return CycNum(E, coeffs)


@settings(max_examples=60, deadline=None)
@given(cyc(), cyc(), cyc())
def test_field_axioms_against_complex_oracle(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert close(a * b, a.to_complex() * b.to_complex())
    if not a.is_zero():
        assert a * a.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(cyc(), st.sampled_from([2, 3, 4]))
def test_embedding_round_trip(a, k):
    up = a.embed(a.order * k)
    assert up == a
    assert up.key(a.order * k) == a.key(a.order * k)
