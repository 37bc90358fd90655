"""Finite-centralizer criteria.

Three mechanisms are provided:

* the conjugation-character table of H_n acting on the n^2 lines spanned by
  the matrices P_b D_mu, whose rows are pairwise distinct exactly when H_n
  is self-centralizing in PGL_n;
* distinctness of the characters of a diagonal subgroup (Schur's lemma);
* an explicit octonion algebra with three commuting sign automorphisms
  that decompose it into eight distinct characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Sequence

import numpy as np

from .abgroup import AbGroup, Character, GroupElement
from .cyclo import CycNum
from .errors import ConsistencyError
from .monomat import ExponentForm, batch_inverse, batch_mul, build_H, pd_matrix

Generator = tuple[GroupElement, Character]
Line = tuple[GroupElement, Character]


@dataclass
class CertResult:
    ok: bool
    collision: tuple | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def standard_generators(A: AbGroup) -> list[Generator]:
    """(e_i, 1) and (0, e_i^*) for each cyclic factor: generators of A x A*."""
    r = len(A.factors)
    zero = A.identity()
    unit = [tuple(int(k == i) for k in range(r)) for i in range(r)]
    return [(u, zero) for u in unit] + [(zero, u) for u in unit]


def conjugation_character(
    A: AbGroup, gens: Sequence[Generator], line: Line, cross_check: bool = True
) -> tuple[CycNum, ...]:
    """Scalars by which each generator (a, chi) conjugates P_b D_mu.

    The value is chi(b) mu(a)^-1.  With ``cross_check`` the scalar is also
    read off from the explicit product X Y X^-1.
    """
    b, mu = line
    Y = pd_matrix(A, b, mu) if cross_check else None
    values = []
    for a, chi in gens:
        value = A.eval_char(chi, b) * A.eval_char(mu, a).inverse()
        if cross_check:
            X = pd_matrix(A, a, chi)
            Z = X @ Y @ X.inverse()
            direct = Z.diag[0] / Y.diag[0]
            if Z != Y.scale(direct) or direct != value:
                raise ConsistencyError(
                    f"conjugation of line {line} by {(a, chi)}: formula {value}, direct {Z}"
                )
        values.append(value)
    return tuple(values)


@dataclass
class ConjCharTable:
    group: AbGroup
    gens: list[Generator]
    rows: dict[Line, tuple[CycNum, ...]]

    def row_key(self, line: Line) -> tuple:
        E = self.group.exponent
        return tuple(v.key(E) for v in self.rows[line])

    def first_collision(self) -> tuple[Line, Line] | None:
        seen: dict[tuple, Line] = {}
        for line in self.rows:
            k = self.row_key(line)
            if k in seen:
                return seen[k], line
            seen[k] = line
        return None


def conj_char_table(
    A: AbGroup, gens: Sequence[Generator] | None = None, cross_check: bool = True
) -> ConjCharTable:
    gens = list(gens) if gens is not None else standard_generators(A)
    rows = {
        (b, mu): conjugation_character(A, gens, (b, mu), cross_check)
        for b in A.elements()
        for mu in A.characters()
    }
    return ConjCharTable(A, gens, rows)


def certify_self_centralizing(A: AbGroup, e: int | None = None) -> CertResult:
    """Rows of the conjugation-character table are pairwise distinct.

    Distinct rows mean Mat_n splits into |A|^2 lines with distinct characters
    of H_n, so anything centralizing H_n in PGL_n is a multiple of some
    P_b D_mu, i.e. lies in H_n.
    """
    if e is not None:
        build_H(A, e)
    table = conj_char_table(A)
    collision = table.first_collision()
    return CertResult(
        collision is None,
        collision,
        {"lines": len(table.rows), "generators": len(table.gens)},
    )


def verify_conjugation_formula(A: AbGroup) -> CertResult:
    """Exhaustive check of both commutation identities in exponent form.

    For every (a, chi, b, mu): D_chi P_a = chi(a) P_a D_chi, and
    X Y X^-1 = chi(b) mu(a)^-1 Y with X = P_a D_chi, Y = P_b D_mu, where the
    left side is computed by explicit monomial products.
    """
    F = ExponentForm.build(A)
    n, E = A.order, F.E
    N = n * n
    perms = F.perms.reshape(N, n)
    exps = F.exps.reshape(N, n)
    ia, ic = np.divmod(np.arange(N), n)

    # D_chi P_a versus chi(a) P_a D_chi
    ident = np.broadcast_to(np.arange(n), (N, n))
    lhs_p, lhs_e = batch_mul(ident, F.pairing[ic], F.add[ia], np.zeros((N, n), np.int64), E)
    scal = F.pairing[ic, ia][:, None]
    if not (np.array_equal(lhs_p, perms) and np.array_equal(lhs_e, (exps + scal) % E)):
        bad = int(np.argmax(((lhs_e - exps - scal) % E != 0).any(1) | (lhs_p != perms).any(1)))
        return CertResult(False, (("a", ia[bad]), ("chi", ic[bad])))

    inv_p, inv_e = batch_inverse(perms, exps, E)
    for i in range(N):
        zp, ze = batch_mul(perms[i], exps[i], perms, exps, E)
        zp, ze = batch_mul(zp, ze, inv_p[i], inv_e[i], E)
        # formula: chi(b) * mu(a)^-1 with (a, chi) = i and (b, mu) = J
        predicted = (F.pairing[ic[i], ia] - F.pairing[ic, ia[i]]) % E
        ok_perm = (zp == perms).all(1)
        ok_diag = ((ze - exps - predicted[:, None]) % E == 0).all(1)
        if not (ok_perm.all() and ok_diag.all()):
            j = int(np.argmin(ok_perm & ok_diag))
            return CertResult(False, (divmod(i, n), divmod(j, n)))
    return CertResult(True, None, {"quadruples": N * N})


def certify_diagonal_distinct(chars: Sequence[Hashable]) -> bool:
    """True iff the n characters of a diagonal representation are distinct.

    Distinct characters force the centralizer in O_n/SO_n to be diagonal,
    hence finite; a repeated character puts a copy of SO_2 in it.
    """
    return len(set(chars)) == len(chars)


def first_equal_pair(chars: Sequence[Hashable]) -> tuple[int, int] | None:
    for i, j in combinations(range(len(chars)), 2):
        if chars[i] == chars[j]:
            return i, j
    return None


# -- octonions ---------------------------------------------------------

OCTONION_BASIS = ("1", "i", "j", "k", "l", "il", "jl", "kl")
GENERATOR_INDEX = {"i": 1, "j": 2, "l": 4}


def _cd_conj(x: list[Fraction]) -> list[Fraction]:
    if len(x) == 1:
        return list(x)
    h = len(x) // 2
    return _cd_conj(x[:h]) + [-v for v in x[h:]]


def _cd_mul(x: list[Fraction], y: list[Fraction]) -> list[Fraction]:
    """(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)), recursively."""
    if len(x) == 1:
        return [x[0] * y[0]]
    h = len(x) // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    left = [p - q for p, q in zip(_cd_mul(a, c), _cd_mul(_cd_conj(d), b))]
    right = [p + q for p, q in zip(_cd_mul(d, a), _cd_mul(b, _cd_conj(c)))]
    return left + right


@dataclass(frozen=True)
class OctonionAlgebra:
    """Structure constants: e_a e_b = sum_h table[a][b][h] e_h."""

    table: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def mul(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * 8
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                for h, c in enumerate(self.table[a][b]):
                    if c:
                        out[h] += xa * yb * c
        return out

    def basis(self, name: str) -> list[Fraction]:
        v = [Fraction(0)] * 8
        v[OCTONION_BASIS.index(name)] = Fraction(1)
        return v

    def is_alternative_on_basis(self) -> bool:
        for a in range(8):
            x = [Fraction(int(i == a)) for i in range(8)]
            for b in range(8):
                y = [Fraction(int(i == b)) for i in range(8)]
                xx = self.mul(x, x)
                if self.mul(xx, y) != self.mul(x, self.mul(x, y)):
                    return False
                if self.mul(self.mul(y, x), x) != self.mul(y, xx):
                    return False
        return True

    def preserves(self, signs: Sequence[int]) -> bool:
        """Whether the diagonal sign map e_h -> signs[h] e_h is an automorphism."""
        for a in range(8):
            for b in range(8):
                for h, c in enumerate(self.table[a][b]):
                    if c and signs[a] * signs[b] != signs[h]:
                        return False
        return True


def build_octonions() -> OctonionAlgebra:
    """Three Cayley-Dickson doublings of Q with parameter -1 at each stage.

    The basis index is a bitmask over the generators i (1), j (2), l (4), so
    the basis reads 1, i, j, ij = k, l, il, jl, kl.
    """
    unit = [[Fraction(int(i == a)) for i in range(8)] for a in range(8)]
    table = tuple(tuple(tuple(_cd_mul(unit[a], unit[b])) for b in range(8)) for a in range(8))
    alg = OctonionAlgebra(table)
    if alg.mul(alg.basis("i"), alg.basis("j")) != alg.basis("k"):
        raise ConsistencyError("ij != k in the doubling table")
    for name in ("il", "jl", "kl"):
        if alg.mul(alg.basis(name[0]), alg.basis("l")) != alg.basis(name):
            raise ConsistencyError(f"{name[0]}*l != {name}")
    return alg


def extend_signs(alg: OctonionAlgebra, gen_signs: dict[str, int]) -> tuple[int, ...]:
    """Extend a sign map on i, j, l to the basis through multiplicativity.

    Each basis element is a monomial in the generators (up to sign), so an
    automorphism multiplying each generator by +-1 multiplies that basis
    element by the product of the corresponding signs.
    """
    signs = []
    for h in range(8):
        word = [g for g in ("i", "j", "l") if h & GENERATOR_INDEX[g]]
        value = alg.basis("1")
        s = 1
        for g in word:
            value = alg.mul(value, alg.basis(g))
            s *= gen_signs[g]
        if sum(1 for v in value if v) != 1 or not value[h]:
            raise ConsistencyError(f"monomial {word} is not +-e_{h}")
        signs.append(s)
    return tuple(signs)


G2_AUTOMORPHISMS = {
    "alpha": {"i": -1, "j": 1, "l": 1},
    "beta": {"i": 1, "j": -1, "l": 1},
    "gamma": {"i": 1, "j": 1, "l": -1},
}


def certify_g2_subgroup(alg: OctonionAlgebra | None = None) -> CertResult:
    """Verify <alpha, beta, gamma> ~ (Z/2)^3 acts on O by 8 distinct characters."""
    alg = alg or build_octonions()
    signs = {name: extend_signs(alg, gs) for name, gs in G2_AUTOMORPHISMS.items()}
    checks: dict[str, bool] = {}
    checks["alternative on basis"] = alg.is_alternative_on_basis()
    checks["automorphisms"] = all(alg.preserves(s) for s in signs.values())
    if not checks["automorphisms"]:
        raise ConsistencyError("sign map fails to preserve the octonion table")
    def apply(sv, v):
        return [x * sgn for x, sgn in zip(v, sv)]

    basis = [alg.basis(name) for name in OCTONION_BASIS]
    checks["order 2"] = all(
        any(apply(s, v) != v for v in basis) and all(apply(s, apply(s, v)) == v for v in basis)
        for s in signs.values()
    )
    checks["commute"] = all(
        apply(signs[p], apply(signs[q], v)) == apply(signs[q], apply(signs[p], v))
        for p, q in combinations(signs, 2)
        for v in basis
    )
    elements = {
        tuple(
            (signs["alpha"][h] if ea else 1) * (signs["beta"][h] if eb else 1)
            * (signs["gamma"][h] if ec else 1)
            for h in range(8)
        )
        for ea in (0, 1) for eb in (0, 1) for ec in (0, 1)
    }
    checks["group order 8"] = len(elements) == 8
    chars = [tuple(signs[name][h] for name in ("alpha", "beta", "gamma")) for h in range(8)]
    checks["8 distinct characters"] = certify_diagonal_distinct(chars)
    return CertResult(
        all(checks.values()),
        first_equal_pair(chars),
        {"signs": signs, "characters": dict(zip(OCTONION_BASIS, chars)), "checks": checks, "rank": 3},
    )
