"""End-to-end acceptance checks, one test per criterion, each under its time limit."""

import math
import random
import time

from edcert.abgroup import AbGroup, factorizations_upto
from edcert.centralgebra import certify_self_centralizing, verify_conjugation_formula
from edcert.certs import bounds_table, default_specs
from edcert.codes import (
    doubly_even_by_basis,
    doubly_even_exhaustive,
    family_code,
    has_distinct_columns,
    is_doubly_even,
    random_code,
)
from edcert.errors import ConsistencyError
from edcert.monomat import perm_matrix, verify_commutation, verify_det_lemma
from edcert.symx import RESIDUAL_TOL, find_symmetric_witness, on_variety, power_sums, xnn_lines
from edcert.tschirn import (
    random_instance,
    resultant_minpoly,
    scaled_coefficients,
    trdeg_report,
    tschirnhaus_minpoly,
    verify_scaling_identity,
)


def stated_rank(family, params):
    n, r = params.get("n"), params.get("r")
    return {
        "O_n": lambda: n, "SO_n": lambda: n - 1, "PO_n": lambda: n - 1,
        "PGL": lambda: 2 * r, "SL_mod_mu": lambda: 2 * r + 1, "Spin": lambda: n // 2 + 1,
        "G2": lambda: 3, "SL8_core_2E7": lambda: 7,
    }[family]()


def test_criterion_1_bound_table(criterion):
    t0 = time.perf_counter()
    table = bounds_table(default_specs())
    computed = [c for c in table.certificates if c.group_family != "cited_only"]
    wrong = [c.group for c in computed if not c.machine_verified or c.rank != stated_rank(c.group_family, c.params)]
    expected_rows = 30 + 6 + 4 + 9 + 2  # O/SO/PO, PGL, SL_mod_mu with i < r, Spin, G2 and 2E7
    ok = table.ok and not wrong and len(computed) == expected_rows
    detail = f"{len(computed)} verified rows, mismatches {wrong or 'none'}"
    assert criterion(1, ok, detail, time.perf_counter() - t0, 60)


def test_criterion_2_determinants(criterion):
    t0 = time.perf_counter()
    groups = [A for A in factorizations_upto(16) if A.order > 1]
    errors = []
    for A in groups:
        try:
            verify_det_lemma(A)
        except ConsistencyError as exc:
            errors.append(str(exc))
    Z4 = AbGroup((4,))
    z4_minus = perm_matrix(Z4, Z4.normalize((1,))).det() == -1
    ok = not errors and z4_minus and not verify_det_lemma(Z4).all_unimodular
    detail = f"{len(groups)} factorizations, Z/4 has det P_a = -1: {z4_minus}"
    assert criterion(2, ok, detail, time.perf_counter() - t0, 5)


def test_criterion_3_commutation(criterion):
    t0 = time.perf_counter()
    groups = [A for A in factorizations_upto(16) if A.order > 1]
    bad = [str(A) for A in groups if not (verify_commutation(A) and verify_conjugation_formula(A))]
    detail = f"{len(groups)} factorizations, failures {bad or 'none'}"
    assert criterion(3, not bad, detail, time.perf_counter() - t0, 10)


def test_criterion_4_self_centralizing(criterion):
    t0 = time.perf_counter()
    groups = [AbGroup((2,) * r) for r in (1, 2, 3)] + [AbGroup((3,) * r) for r in (1, 2)]
    groups += [AbGroup((5,)), AbGroup((7,))]
    results = [certify_self_centralizing(A) for A in groups]
    rows_ok = all(res.details["lines"] == A.order ** 2 for A, res in zip(groups, results))
    ok = all(results) and rows_ok
    detail = f"{sum(map(bool, results))}/{len(groups)} tables with all |A|^2 rows distinct"
    assert criterion(4, ok, detail, time.perf_counter() - t0, 10)


def test_criterion_5_code_families(criterion):
    t0 = time.perf_counter()
    lengths = [n for n in range(7, 66) if n % 8 in (0, 1, 7)]
    bad = []
    for n in lengths:
        code = family_code(n)
        if not (code.dimension == n // 2 and is_doubly_even(code) and has_distinct_columns(code)):
            bad.append(n)
    detail = f"{len(lengths)} lengths up to 65, failures {bad or 'none'}"
    assert criterion(5, not bad, detail, time.perf_counter() - t0, 30)


def test_criterion_6_witnesses(criterion):
    t0 = time.perf_counter()
    bad = []
    pairs = [(n, m) for n in range(4, 11) for m in range(math.ceil(n / 2), n)]
    for n, m in pairs:
        w = find_symmetric_witness(n, m, seed=0)
        if w is None or w.jacobian_rank != m - 1:
            bad.append((n, m))
            continue
        z = w.numeric_coords()
        residual = max(abs(p) for p in power_sums(list(z), m - 1))
        if abs(z).max() == 0 or residual > RESIDUAL_TOL:
            bad.append((n, m))
        if m == 2 and not (w.exact and on_variety(w.coords, m)):
            bad.append((n, m))
    lines_ok = all(len(xnn_lines(n)) == math.factorial(n - 1) for n in range(1, 7))
    detail = f"{len(pairs) - len(bad)}/{len(pairs)} witnesses, X_nn line counts ok: {lines_ok}"
    assert criterion(6, not bad and lines_ok, detail, time.perf_counter() - t0, 60)


def test_criterion_7_tschirnhaus(criterion):
    t0 = time.perf_counter()
    bad = []
    pairs = [(n, m) for n in range(2, 10) for m in range(math.ceil(n / 2), n)]
    for n, m in pairs:
        rep = trdeg_report(scaled_coefficients(n, m), seed=n * 100 + m)
        if not (verify_scaling_identity(n, m) and rep.agree and rep.value == n - m):
            bad.append((n, m))
    detail = f"{len(pairs) - len(bad)}/{len(pairs)} pairs with exact identity and trdeg n-m"
    assert criterion(7, not bad, detail, time.perf_counter() - t0, 120)


def test_criterion_8_oracles(criterion):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    poly_bad = 0
    for _ in range(100):
        f, g = random_instance(rng, max_degree=5)
        if tschirnhaus_minpoly(f, g).coeffs != resultant_minpoly(f, g).coeffs:
            poly_bad += 1
    rng = random.Random(8)
    code_bad = positives = 0
    for s in range(10_000):
        length = rng.randint(4, 40)
        dim = rng.randint(1, min(12, length))
        code = random_code(rng, length, dim, doubly_even_bias=bool(s % 2))
        exact = doubly_even_exhaustive(code)
        positives += exact
        code_bad += exact != doubly_even_by_basis(code)
    detail = (f"minpoly disagreements {poly_bad}/100, basis criterion disagreements "
              f"{code_bad}/10000 ({positives} doubly even)")
    assert criterion(8, poly_bad == 0 and code_bad == 0, detail, time.perf_counter() - t0, 60)
