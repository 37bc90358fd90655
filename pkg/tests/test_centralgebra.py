import random
from fractions import Fraction

import pytest

from edcert.abgroup import AbGroup, factorizations_upto
from edcert.centralgebra import (
    G2_AUTOMORPHISMS,
    OCTONION_BASIS,
    build_octonions,
    certify_diagonal_distinct,
    certify_g2_subgroup,
    certify_self_centralizing,
    conj_char_table,
    conjugation_character,
    extend_signs,
    standard_generators,
    verify_conjugation_formula,
)
from edcert.cyclo import root_of_unity
from edcert.monomat import dense_product, pd_matrix

SMALL = [A for A in factorizations_upto(16) if A.order > 1]


def dense_conjugate(A, x, y):
    """X Y X^-1 computed with dense matrices only."""
    X, Y = pd_matrix(A, *x), pd_matrix(A, *y)
    return dense_product(dense_product(X.to_dense(), Y.to_dense()), X.inverse().to_dense())


def test_identity_line_is_trivial():
    A = AbGroup((2, 2))
    vals = conjugation_character(A, standard_generators(A), (A.identity(), A.identity()))
    assert all(v == 1 for v in vals)


def test_z2_line_matches_dense_conjugation():
    A = AbGroup((2,))
    line = ((1,), (1,))
    for gen in [((1,), (0,)), ((0,), (1,)), ((1,), (1,))]:
        (value,) = conjugation_character(A, [gen], line)
        Y = pd_matrix(A, *line).to_dense()
        assert dense_conjugate(A, gen, line) == [[value * y for y in row] for row in Y]
        assert value in (1, -1)


def test_z3_formula_value():
    A = AbGroup((3,))
    (value,) = conjugation_character(A, [((1,), (0,))], ((0,), (1,)))
    assert value == root_of_unity(3, -1)


@pytest.mark.parametrize("A", [AbGroup((2, 2)), AbGroup((3,)), AbGroup((4,)), AbGroup((2, 3))], ids=str)
def test_formula_against_dense_oracle(A):
    elems = list(A.elements())
    gens = [(a, c) for a in elems for c in elems]
    for b in elems:
        for mu in elems:
            vals = conjugation_character(A, gens, (b, mu), cross_check=False)
            Y = pd_matrix(A, b, mu).to_dense()
            for g, v in zip(gens, vals):
                assert dense_conjugate(A, g, (b, mu)) == [[v * y for y in row] for row in Y]


@pytest.mark.parametrize("A", SMALL, ids=str)
def test_exhaustive_formula_all_small_groups(A):
    assert verify_conjugation_formula(A)


@pytest.mark.parametrize(
    "A,lines",
    [(AbGroup((2, 2, 2)), 64), (AbGroup((2,)), 4), (AbGroup((3,)), 9), (AbGroup((5,)), 25),
     (AbGroup((7,)), 49), (AbGroup((3, 3)), 81)],
    ids=str,
)
def test_self_centralizing_examples(A, lines):
    res = certify_self_centralizing(A)
    assert res.ok and res.details["lines"] == lines


def test_table_injective_as_map():
    A = AbGroup((2, 2))
    table = conj_char_table(A)
    keys = [table.row_key(line) for line in table.rows]
    assert len(set(keys)) == len(keys) == 16


def test_diagonal_distinct_examples():
    coords = [tuple(int(i == j) for j in range(5)) for i in range(5)]
    assert certify_diagonal_distinct(coords)
    assert not certify_diagonal_distinct([(1, 0), (0, 1), (1, 0)])
    assert certify_diagonal_distinct([(1,)])


def test_octonion_alpha_signs_and_characters():
    alg = build_octonions()
    assert extend_signs(alg, G2_AUTOMORPHISMS["alpha"]) == (1, -1, 1, -1, 1, -1, 1, -1)
    res = certify_g2_subgroup(alg)
    assert res.ok and res.details["rank"] == 3
    chars = set(res.details["characters"].values())
    assert chars == {(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)}


def test_octonions_alternative_and_unital():
    alg = build_octonions()
    assert alg.is_alternative_on_basis()
    one = alg.basis("1")
    for name in OCTONION_BASIS:
        x = alg.basis(name)
        assert alg.mul(one, x) == x == alg.mul(x, one)


def test_octonion_norm_is_multiplicative():
    alg = build_octonions()
    rng = random.Random(2)

    def norm(v):
        return sum(c * c for c in v)

    for _ in range(30):
        x = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(8)]
        y = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(8)]
        assert norm(alg.mul(x, y)) == norm(x) * norm(y)
