import random

import pytest
from hypothesis import given, settings, strategies as st

from edcert.tschirn import (
    UPoly,
    general_trinomial,
    make_field,
    parse_substitution,
    random_instance,
    resultant_minpoly,
    scaled_coefficients,
    tschirnhaus_minpoly,
    transform,
    trdeg,
    trdeg_report,
    variable,
    verify_scaling_identity,
)


def test_general_trinomial_examples():
    assert str(general_trinomial(3, 2)) == "a_2*x + a_3 + x**3"
    assert str(general_trinomial(2, 1)) == "a_1*x + a_2 + x**2"
    f = general_trinomial(5, 3)
    assert f.degree == 5 and f.coeff(4) == 0 and f.coeff(3) == 0
    assert [str(f.coeff(k)) for k in (2, 1, 0)] == ["a_3", "a_4", "a_5"]
    with pytest.raises(ValueError):
        general_trinomial(3, 3)


def test_shift_minpoly():
    K = make_field(["a_1", "a_2", "c"])
    a1, a2, c = K.gens
    f = UPoly(K, (1, a1, a2))
    h = tschirnhaus_minpoly(f, UPoly(K, (1, c)))
    assert h.coeffs == (K.one, a1 - 2 * c, a2 - a1 * c + c**2)


def test_identity_substitution_returns_f():
    rng = random.Random(5)
    for _ in range(20):
        f, _ = random_instance(rng, max_degree=6)
        if f.degree > 1:
            assert tschirnhaus_minpoly(f, UPoly(f.K, (1, 0))).coeffs == f.coeffs


def test_scaling_example_n3():
    f = general_trinomial(3, 2)
    K = f.K
    a2, a3 = variable(K, "a_2"), variable(K, "a_3")
    h = tschirnhaus_minpoly(f, UPoly(K, (a2 / a3, 0)))
    r = a2**3 / a3**2
    assert h.coeffs == (K.one, K.zero, r, r)


def test_invalid_inputs():
    f = general_trinomial(3, 2)
    with pytest.raises(ValueError):
        tschirnhaus_minpoly(UPoly(f.K, (2, 0, 0, 1)), UPoly(f.K, (1, 0)))
    with pytest.raises(ValueError):
        tschirnhaus_minpoly(f, UPoly(f.K, (1, 0, 0, 0)))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_char_poly_matches_resultant(seed):
    f, g = random_instance(random.Random(seed), max_degree=4)
    assert tschirnhaus_minpoly(f, g).coeffs == resultant_minpoly(f, g).coeffs


@pytest.mark.parametrize("n,m", [(3, 2), (4, 2), (5, 4)])
def test_scaling_identity_examples(n, m):
    assert verify_scaling_identity(n, m)
    b = scaled_coefficients(n, m)
    K = general_trinomial(n, m).K
    target = variable(K, f"a_{n - 1}") ** n / variable(K, f"a_{n}") ** (n - 1)
    assert b[-1] == b[-2] == target
    assert all(c == 0 for c in b[: m - 1])


def test_scaling_identity_rejects_out_of_range():
    with pytest.raises(ValueError):
        verify_scaling_identity(6, 2)


def test_trdeg_examples():
    f = general_trinomial(3, 2)
    a2, a3 = f.K.gens
    assert trdeg([a2**3 / a3**2, a2**3 / a3**2]) == 1
    assert trdeg(list(general_trinomial(6, 3).K.gens)) == 4
    K = general_trinomial(4, 2).K
    assert trdeg([K(3), K(-1)]) == 0


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 7))
def test_trdeg_invariant_under_products_and_sums(seed, n):
    m = (n + 1) // 2
    b = scaled_coefficients(n, m)
    base = trdeg(b, seed)
    rng = random.Random(seed)
    extra = [rng.choice(b) * rng.choice(b) + rng.choice(b) for _ in range(3)]
    assert trdeg(b + extra, seed) == base == n - m


def test_trdeg_report_points_agree():
    rep = trdeg_report(scaled_coefficients(6, 4), seed=11)
    assert rep.agree and rep.value == 2 and len(rep.points) == 3


def test_parse_substitution():
    f = general_trinomial(4, 2)
    g = parse_substitution("a_3/a_4*x + 1", f)
    assert g.degree == 1
    for bad in ("x**4", "y*x", "1/x", "x +* 2", "(("):
        with pytest.raises(ValueError):
            parse_substitution(bad, f)


def test_transform_default_and_custom():
    out = transform(4, 2)
    assert out["trdeg"] == 2 and len(out["coefficients"]) == 4
    assert out["coefficients"][0] == "0"
    out = transform(3, 2, "x")
    assert out["coefficients"] == ["0", "a_2", "a_3"] and out["trdeg"] == 2
