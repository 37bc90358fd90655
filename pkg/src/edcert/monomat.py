"""Monomial matrices over cyclotomic fields and the groups H_e they generate.

A monomial matrix ``M`` is stored as ``(perm, diag)`` with the single nonzero
entry of column ``j`` equal to ``diag[j]`` in row ``perm[j]``, so
``M e_j = diag[j] e_{perm[j]}``.  Products and inverses stay in that form.
The basis of the group algebra k[A] is the lexicographic element order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .abgroup import AbGroup, Character, GroupElement
from .cyclo import CycNum, lcm, root_of_unity
from .errors import ConsistencyError, InvalidConstruction


def perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class MonomialMatrix:
    perm: tuple[int, ...]
    diag: tuple[CycNum, ...]

    def __post_init__(self):
        if len(self.perm) != len(self.diag):
            raise ValueError("perm and diag lengths differ")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")
        if any(d.is_zero() for d in self.diag):
            raise ValueError("monomial matrix entries must be nonzero")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "MonomialMatrix":
        return cls(tuple(range(n)), (root_of_unity(1, 0),) * n)

    @classmethod
    def scalar(cls, n: int, c: CycNum) -> "MonomialMatrix":
        return cls(tuple(range(n)), (c,) * n)

    @classmethod
    def diagonal(cls, entries: Iterable[CycNum]) -> "MonomialMatrix":
        entries = tuple(entries)
        return cls(tuple(range(len(entries))), entries)

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        pm, dm = self.perm, self.diag
        perm = tuple(pm[k] for k in other.perm)
        diag = tuple(dm[k] * d for k, d in zip(other.perm, other.diag))
        return MonomialMatrix(perm, diag)

    def inverse(self) -> "MonomialMatrix":
        perm = [0] * self.n
        diag: list[CycNum] = [None] * self.n  # type: ignore[list-item]
        for j, (i, d) in enumerate(zip(self.perm, self.diag)):
            perm[i] = j
            diag[i] = d.inverse()
        return MonomialMatrix(tuple(perm), tuple(diag))

    def scale(self, c: CycNum) -> "MonomialMatrix":
        return MonomialMatrix(self.perm, tuple(c * d for d in self.diag))

    def sign(self) -> int:
        return perm_sign(self.perm)

    def det(self) -> CycNum:
        result = root_of_unity(1, 0)
        for d in self.diag:
            result = result * d
        return result * self.sign()

    def entry(self, row: int, col: int) -> CycNum:
        if self.perm[col] == row:
            return self.diag[col]
        return CycNum.zero()

    def to_dense(self) -> list[list[CycNum]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def field_order(self) -> int:
        order = 1
        for d in self.diag:
            order = lcm(order, d.order)
        return order

    def key(self, order: int) -> tuple:
        return (self.perm, tuple(d.key(order) for d in self.diag))

    def __eq__(self, other):
        if not isinstance(other, MonomialMatrix):
            return NotImplemented
        return self.perm == other.perm and all(x == y for x, y in zip(self.diag, other.diag))

    def __hash__(self):
        return hash((self.perm, self.diag))


def dense_product(a: list[list[CycNum]], b: list[list[CycNum]]) -> list[list[CycNum]]:
    """Schoolbook product of dense square matrices, used as a test oracle."""
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = CycNum.zero()
            for k in range(n):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


@dataclass(frozen=True, eq=False)
class ProjectiveCoset:
    """Class of ``rep`` modulo the scalar subgroup <zeta_e I>."""

    rep: MonomialMatrix
    e: int

    def twists(self) -> Iterable[MonomialMatrix]:
        for k in range(self.e):
            yield self.rep.scale(root_of_unity(self.e, k))

    def key(self, order: int | None = None) -> tuple:
        """Canonical hashable form, coefficients taken in Q(zeta_order).

        The twist is fixed by minimising the first column's entry; distinct
        twists give distinct first entries, so the choice is unique.
        """
        if order is None:
            order = lcm(self.e, self.rep.field_order())
        first = self.rep.diag[0]
        k = min(range(self.e), key=lambda j: (first * root_of_unity(self.e, j)).key(order))
        return self.rep.scale(root_of_unity(self.e, k)).key(order)

    def __eq__(self, other):
        if not isinstance(other, ProjectiveCoset):
            return NotImplemented
        if self.e != other.e or self.rep.perm != other.rep.perm:
            return False
        return any(m == other.rep for m in self.twists())

    def __hash__(self):
        return hash((self.e, self.rep.perm))

    def __mul__(self, other: "ProjectiveCoset") -> "ProjectiveCoset":
        if self.e != other.e:
            raise ValueError("cosets modulo different scalar groups")
        return ProjectiveCoset(self.rep @ other.rep, self.e)


# -- the regular and dual representations ------------------------------

def perm_matrix(A: AbGroup, a: GroupElement) -> MonomialMatrix:
    """P_a: basis vector b goes to a + b."""
    a = A.normalize(a)
    perm = tuple(A.index_of(A.add(a, b)) for b in A.elements())
    return MonomialMatrix(perm, (root_of_unity(A.exponent, 0),) * A.order)


def diag_matrix(A: AbGroup, chi: Character) -> MonomialMatrix:
    """D_chi: basis vector b is scaled by chi(b)."""
    chi = A.normalize(chi)
    return MonomialMatrix.diagonal(A.eval_char(chi, b) for b in A.elements())


def pd_matrix(A: AbGroup, a: GroupElement, chi: Character) -> MonomialMatrix:
    return perm_matrix(A, a) @ diag_matrix(A, chi)


# -- determinant lemma -------------------------------------------------

@dataclass
class DetLemmaReport:
    group: AbGroup
    hypothesis: bool
    perm_dets: dict[GroupElement, CycNum] = field(default_factory=dict)
    diag_dets: dict[Character, CycNum] = field(default_factory=dict)

    @property
    def all_unimodular(self) -> bool:
        return all(d == 1 for d in self.perm_dets.values()) and all(
            d == 1 for d in self.diag_dets.values()
        )


def predicted_perm_det(A: AbGroup, a: GroupElement) -> int:
    """Sign of translation by a: n/m disjoint m-cycles, m = ord(a)."""
    m = A.element_order(a)
    return -1 if (m - 1) * (A.order // m) % 2 else 1


def predicted_diag_det(A: AbGroup, chi: Character) -> CycNum:
    """(zeta_m)^(m(m-1)/2 * n/m) with m the order of chi."""
    m = A.char_order(chi)
    return root_of_unity(m, (m * (m - 1) // 2) * (A.order // m))


def verify_det_lemma(A: AbGroup) -> DetLemmaReport:
    """Exact determinants of every P_a and D_chi against their closed forms."""
    report = DetLemmaReport(A, A.det_lemma_hypothesis())
    for a in A.elements():
        P = perm_matrix(A, a)
        det = P.det()
        if det != predicted_perm_det(A, a):
            raise ConsistencyError(f"det P_{a} = {det} disagrees with cycle-type sign")
        report.perm_dets[a] = det
    for chi in A.characters():
        det = diag_matrix(A, chi).det()
        if det != predicted_diag_det(A, chi):
            raise ConsistencyError(f"det D_{chi} = {det} disagrees with closed form")
        report.diag_dets[chi] = det
    if report.hypothesis and not report.all_unimodular:
        raise ConsistencyError(f"{A}: hypothesis holds but some determinant is not 1")
    return report


# -- commutation -------------------------------------------------------

@dataclass
class CommutationResult:
    ok: bool
    violation: tuple[GroupElement, Character] | None = None

    def __bool__(self):
        return self.ok


def verify_commutation(A: AbGroup) -> CommutationResult:
    """D_chi P_a == chi(a) P_a D_chi for every a, chi."""
    P = {a: perm_matrix(A, a) for a in A.elements()}
    D = {c: diag_matrix(A, c) for c in A.characters()}
    for a, Pa in P.items():
        for c, Dc in D.items():
            if Dc @ Pa != (Pa @ Dc).scale(A.eval_char(c, a)):
                return CommutationResult(False, (a, c))
    return CommutationResult(True)


# -- exponent form -----------------------------------------------------

@dataclass(frozen=True)
class ExponentForm:
    """All P_a D_chi at once as integer arrays, entries zeta_E^k stored as k.

    ``perms[a, c]`` and ``exps[a, c]`` (indices in enumeration order) describe
    P_a D_chi; every entry of these matrices is an E-th root of unity, so the
    integer exponents mod E represent them exactly.
    """

    group: AbGroup
    E: int
    add: np.ndarray  # add[i, j] = index of a_i + a_j
    pairing: np.ndarray  # pairing[c, i] = k with chi_c(a_i) = zeta_E^k
    perms: np.ndarray  # shape (n, n, n)
    exps: np.ndarray  # shape (n, n, n)

    @classmethod
    def build(cls, A: AbGroup) -> "ExponentForm":
        elems = list(A.elements())
        n, E = len(elems), A.exponent
        add = np.array([[A.index_of(A.add(a, b)) for b in elems] for a in elems], dtype=np.int64)
        pairing = np.array(
            [[A.pairing_exponent(c, a) for a in elems] for c in elems], dtype=np.int64
        )
        perms = np.broadcast_to(add[:, None, :], (n, n, n)).copy()
        exps = np.broadcast_to(pairing[None, :, :], (n, n, n)).copy()
        return cls(A, E, add, pairing, perms, exps)

    def to_matrix(self, ia: int, ic: int) -> MonomialMatrix:
        return MonomialMatrix(
            tuple(int(v) for v in self.perms[ia, ic]),
            tuple(root_of_unity(self.E, int(k)) for k in self.exps[ia, ic]),
        )


def batch_mul(pa, ea, pb, eb, E):
    """Products of stacked monomial matrices in exponent form (broadcasting)."""
    pa, ea, pb, eb = np.broadcast_arrays(pa, ea, pb, eb)
    perm = np.take_along_axis(pa, pb, -1)
    return perm, (np.take_along_axis(ea, pb, -1) + eb) % E


def batch_inverse(p, e, E):
    inv_p = np.empty_like(p)
    inv_e = np.empty_like(e)
    np.put_along_axis(inv_p, p, np.broadcast_to(np.arange(p.shape[-1]), p.shape), -1)
    np.put_along_axis(inv_e, p, (-e) % E, -1)
    return inv_p, inv_e


# -- the subgroups H_e -------------------------------------------------

@dataclass
class SubgroupPresentation:
    """A finite abelian subgroup of SL_n / <zeta_e I> with verified structure."""

    group: AbGroup
    e: int
    n: int
    generators: dict[tuple[GroupElement, Character], ProjectiveCoset]
    factors: tuple[int, ...]
    order: int
    rank: int
    checks: dict[str, bool] = field(default_factory=dict)
    center: ProjectiveCoset | None = None


def _require_sl(A: AbGroup, mats: Iterable[tuple[str, MonomialMatrix]]) -> None:
    for name, M in mats:
        if M.det() != 1:
            raise InvalidConstruction(f"{name} has determinant {M.det()}, not in SL_{A.order}")


def build_H(A: AbGroup, e: int) -> SubgroupPresentation:
    """Image of A x A* under (a, chi) -> P_a D_chi mod <zeta_e I>.

    Verifies the map is an injective homomorphism by exhaustive coset
    comparison.  With ``e == |A|`` the target is PGL_n and no determinant
    condition is imposed.
    """
    n = A.order
    if e < 1 or e % A.exponent:
        raise InvalidConstruction(f"e = {e} is not divisible by the exponent {A.exponent}")
    if n % e:
        raise InvalidConstruction(f"e = {e} does not divide n = {n}")
    elems = list(A.elements())
    P = {a: perm_matrix(A, a) for a in elems}
    D = {c: diag_matrix(A, c) for c in elems}
    checks: dict[str, bool] = {}
    if e < n:
        if not A.det_lemma_hypothesis():
            raise InvalidConstruction(f"{A} has a nontrivial cyclic 2-Sylow subgroup")
        _require_sl(A, [(f"P_{a}", M) for a, M in P.items()])
        _require_sl(A, [(f"D_{c}", M) for c, M in D.items()])
        checks["generators in SL_n"] = True
    gens = {(a, c): ProjectiveCoset(P[a] @ D[c], e) for a in elems for c in elems}
    order = lcm(e, A.exponent)
    keys = {pair: cos.key(order) for pair, cos in gens.items()}
    if len(set(keys.values())) != len(gens):
        raise ConsistencyError(f"phi_e is not injective for {A}, e={e}")
    checks["injective"] = True
    for (a, c), x in gens.items():
        for (b, mu), y in gens.items():
            target = keys[(A.add(a, b), A.char_mul(c, mu))]
            if (x * y).key(order) != target:
                raise ConsistencyError(f"phi_e not multiplicative at {(a, c)}, {(b, mu)}")
    checks["homomorphism"] = True
    H = A.product(A)
    return SubgroupPresentation(A, e, n, gens, H.factors, len(gens), H.rank(), checks)


def build_H_with_center(p: int, r: int, i: int) -> SubgroupPresentation:
    """H = H_e x K inside SL_{p^r}/<zeta_{p^i} I>, K the image of <zeta_{p^r} I>."""
    if not 1 <= i <= r:
        raise InvalidConstruction(f"need 1 <= i <= r, got i={i}, r={r}")
    A = AbGroup((p,) * r)
    n, e = p**r, p**i
    He = build_H(A, e)
    center = ProjectiveCoset(MonomialMatrix.scalar(n, root_of_unity(n, 1)), e)
    if center.rep.det() != 1:
        raise ConsistencyError("zeta_n I is not in SL_n")
    # powers of the centre generator modulo <zeta_e I>
    powers = [ProjectiveCoset(MonomialMatrix.scalar(n, root_of_unity(n, k)), e) for k in range(n)]
    center_keys = []
    for cos in powers:
        k = cos.key(n)
        if k in center_keys:
            break
        center_keys.append(k)
    k_order = len(center_keys)
    if k_order != p ** (r - i):
        raise ConsistencyError(f"centre has order {k_order}, expected {p ** (r - i)}")
    he_keys = {cos.key(n) for cos in He.generators.values()}
    if len(he_keys & set(center_keys)) != 1:
        raise ConsistencyError("H_e meets the centre nontrivially")
    # all products h*k are distinct: |H| = |H_e| |K|
    prod_keys = {
        (h * ProjectiveCoset(powers[k].rep, e)).key(n)
        for h in He.generators.values()
        for k in range(k_order)
    }
    if len(prod_keys) != He.order * k_order:
        raise ConsistencyError("H_e x K is not a direct product")
    factors = He.factors + ((p ** (r - i),) if r > i else ())
    checks = dict(He.checks)
    checks["centre cyclic of order p^(r-i)"] = True
    checks["direct product H_e x K"] = True
    return SubgroupPresentation(
        A, e, n, He.generators, factors, len(prod_keys), AbGroup(factors).rank(), checks, center
    )
