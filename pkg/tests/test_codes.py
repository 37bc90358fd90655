import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from edcert.codes import (
    BinaryCode,
    doubly_even_by_basis,
    doubly_even_exhaustive,
    family_code,
    gf2_rank,
    has_distinct_columns,
    is_doubly_even,
    parseval_feasible,
    phi_embed,
    random_code,
    search_code,
    spin_bound,
    validate_basis_criterion,
)
from edcert.errors import UnsupportedError


def weights_by_hand(code: BinaryCode) -> list[int]:
    """Plain-Python codeword weights over all 2^d combinations."""
    out = []
    for mask in range(1 << code.dimension):
        w = 0
        for k, row in enumerate(code.basis):
            if mask >> k & 1:
                w ^= row
        out.append(bin(w).count("1"))
    return out


def column_subset_codes(n: int, d: int) -> int:
    """Count n-subsets of GF(2)^d spanning it whose code is doubly even.

    A d-dimensional code with distinct columns is the same thing as n distinct
    points of GF(2)^d; the codeword of a functional u has weight #{c : u.c = 1}.
    """
    count = 0
    for S in combinations(range(1 << d), n):
        if gf2_rank(S) != d:
            continue
        if all(sum(bin(u & c).count("1") % 2 for c in S) % 4 == 0 for u in range(1, 1 << d)):
            count += 1
    return count


def test_doubly_even_examples():
    assert is_doubly_even(BinaryCode.from_strings(["11111111"]))
    assert is_doubly_even(BinaryCode.from_strings(["11110000", "00111100"]))
    assert not is_doubly_even(BinaryCode.from_strings(["1100000000"]))


def test_distinct_columns_examples():
    assert has_distinct_columns(family_code(8))
    assert not has_distinct_columns(BinaryCode.from_strings(["1111"]))
    assert not has_distinct_columns(BinaryCode.from_strings(["1011"]))


@pytest.mark.parametrize("n,d", [(7, 3), (8, 4), (9, 4), (15, 7), (16, 8), (17, 8)])
def test_family_code_dimensions(n, d):
    code = family_code(n)
    assert code.dimension == d == n // 2
    assert is_doubly_even(code) and has_distinct_columns(code)
    assert all(w % 4 == 0 for w in weights_by_hand(code))


def test_family_code_rejects_other_lengths():
    for n in (3, 6, 10, 12, 20):
        with pytest.raises(UnsupportedError):
            family_code(n)


def test_spin_bounds_match_known_values():
    assert spin_bound(family_code(8)).bound == 5
    assert spin_bound(family_code(7)).bound == 4
    assert spin_bound(family_code(16)).bound == 9


def test_phi_embed_examples():
    assert all(x == 1 for x in phi_embed(0, 8).diag)
    M = phi_embed(0b1111, 8)
    assert [int(x.coeffs[0]) for x in M.diag] == [-1, -1, -1, -1, 1, 1, 1, 1]
    assert M.det() == 1
    with pytest.raises(ValueError):
        phi_embed(0b111, 8)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_phi_is_homomorphism(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 16)
    c, c2 = rng.getrandbits(n), rng.getrandbits(n)
    c ^= bin(c).count("1") % 2  # flip bit 0 to make the weight even
    c2 ^= bin(c2).count("1") % 2
    assert phi_embed(c ^ c2, n) == phi_embed(c, n) @ phi_embed(c2, n)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_exhaustive_doubly_even_matches_hand_enumeration(seed):
    rng = random.Random(seed)
    length = rng.randint(2, 24)
    code = random_code(rng, length, rng.randint(1, min(10, length)), doubly_even_bias=bool(seed % 2))
    assert doubly_even_exhaustive(code) == all(w % 4 == 0 for w in weights_by_hand(code))
    assert doubly_even_by_basis(code) == doubly_even_exhaustive(code)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_distinct_columns_basis_independent(seed):
    rng = random.Random(seed)
    length = rng.randint(3, 20)
    code = random_code(rng, length, rng.randint(1, min(6, length)))
    rows = list(code.basis)
    for _ in range(10):
        i, j = rng.sample(range(len(rows)), 2) if len(rows) > 1 else (0, 0)
        if i != j:
            rows[i] ^= rows[j]
    assert has_distinct_columns(BinaryCode(length, tuple(rows))) == has_distinct_columns(code)


def test_basis_criterion_validation_runs():
    assert validate_basis_criterion(samples=300, seed=7) > 0


def test_code_file_round_trip(tmp_path):
    code = family_code(9)
    path = tmp_path / "c.txt"
    path.write_text(code.dumps())
    again = BinaryCode.from_strings(path.read_text().splitlines())
    assert again == code and again.dumps() == code.dumps()


def test_search_small_lengths():
    assert search_code(8, budget=0.5).dimension >= 4
    # length 4: only <J_4> is doubly even, and its columns coincide
    assert search_code(4).code is None
    assert column_subset_codes(4, 1) == column_subset_codes(4, 2) == 0


def test_search_n12_finds_nothing_and_oracle_agrees():
    res = search_code(12, budget=0.5)
    assert res.code is None
    assert not any(parseval_feasible(12, d) for d in range(1, 7))
    # independent check of the only dimension not excluded by counting points
    assert column_subset_codes(12, 4) == 0


def test_search_n10_finds_nothing_and_oracle_agrees():
    # d <= 3 has too few points; d = 5 would be self-dual doubly even (needs 8 | n)
    assert column_subset_codes(10, 4) == 0
    assert search_code(10, budget=0.3).code is None


def test_search_results_pass_verifiers():
    for n in (14, 18):
        res = search_code(n, budget=0.5, seed=1)
        assert res.code is not None
        assert is_doubly_even(res.code) and has_distinct_columns(res.code)
