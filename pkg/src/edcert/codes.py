"""Binary linear codes: doubly even checks, distinct columns, Spin_n witnesses.

Vectors of length n are Python ints with bit j holding coordinate j; the
text format writes coordinate 0 first.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .cyclo import CycNum
from .errors import ConsistencyError, UnsupportedError
from .monomat import MonomialMatrix

EXHAUSTIVE_MAX_DIM = 20
_criterion_validated = False


def weight(v: int) -> int:
    return v.bit_count()


def ones(k: int, shift: int = 0) -> int:
    return ((1 << k) - 1) << shift


def gf2_rank(rows: Iterable[int]) -> int:
    return len(_echelon(rows))


def _echelon(rows: Iterable[int]) -> dict[int, int]:
    """Pivot bit -> reduced row."""
    pivots: dict[int, int] = {}
    for v in rows:
        for bit, row in pivots.items():
            if v >> bit & 1:
                v ^= row
        if v:
            bit = v.bit_length() - 1
            for b, row in list(pivots.items()):
                if row >> bit & 1:
                    pivots[b] = row ^ v
            pivots[bit] = v
    return pivots


def in_span(v: int, pivots: dict[int, int]) -> bool:
    for bit, row in pivots.items():
        if v >> bit & 1:
            v ^= row
    return v == 0


@dataclass(frozen=True)
class BinaryCode:
    length: int
    basis: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.basis)
        if any(r < 0 or r >> self.length for r in rows):
            raise ValueError("row longer than the code length")
        if gf2_rank(rows) != len(rows):
            raise ValueError("generator rows are linearly dependent over GF(2)")
        object.__setattr__(self, "basis", rows)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "BinaryCode":
        rows = [ln.strip() for ln in lines if ln.strip()]
        if not rows:
            raise ValueError("empty generator matrix")
        n = len(rows[0])
        if any(len(r) != n or set(r) - {"0", "1"} for r in rows):
            raise ValueError("rows must be 0/1 strings of equal length")
        return cls(n, tuple(int(r[::-1], 2) for r in rows))

    @classmethod
    def spanned_by(cls, length: int, vectors: Iterable[int]) -> "BinaryCode":
        """Code spanned by possibly dependent vectors (keeps an independent subset)."""
        kept: list[int] = []
        pivots: dict[int, int] = {}
        for v in vectors:
            if not in_span(v, pivots):
                kept.append(v)
                pivots = _echelon(kept)
        return cls(length, tuple(kept))

    def row_string(self, v: int) -> str:
        return "".join(str(v >> j & 1) for j in range(self.length))

    def to_strings(self) -> list[str]:
        return [self.row_string(r) for r in self.basis]

    def dumps(self) -> str:
        return "".join(s + "\n" for s in self.to_strings())

    def codewords(self) -> Iterator[int]:
        """All 2^d codewords in Gray-code order."""
        word = 0
        yield word
        for k in range(1, 1 << self.dimension):
            word ^= self.basis[(k & -k).bit_length() - 1]
            yield word

    def column(self, j: int) -> int:
        return sum((r >> j & 1) << i for i, r in enumerate(self.basis))

    def contains(self, v: int) -> bool:
        return in_span(v, _echelon(self.basis))


def _weights_mod4_numpy(code: BinaryCode) -> np.ndarray:
    words = np.zeros(1, dtype=np.uint64)
    for r in code.basis:
        words = np.concatenate([words, words ^ np.uint64(r)])
    return np.bitwise_count(words) % 4


def doubly_even_exhaustive(code: BinaryCode) -> bool:
    if code.length <= 64:
        return not _weights_mod4_numpy(code).any()
    return all(weight(w) % 4 == 0 for w in code.codewords())


def doubly_even_by_basis(code: BinaryCode) -> bool:
    """Rows of weight 0 mod 4 with pairwise even overlaps.

    Sufficient because wt(x+y) = wt(x) + wt(y) - 2|x & y|; necessary because
    a doubly even code is self-orthogonal.
    """
    rows = code.basis
    if any(weight(r) % 4 for r in rows):
        return False
    return all(weight(rows[i] & rows[j]) % 2 == 0 for i in range(len(rows)) for j in range(i))


def random_code(rng: random.Random, length: int, dim: int, doubly_even_bias: bool = False) -> BinaryCode:
    """Random code of the given dimension; optionally biased toward doubly even."""
    rows: list[int] = []
    pivots: dict[int, int] = {}
    while len(rows) < dim:
        if doubly_even_bias and rows and rng.random() < 0.7:
            v = _random_orthogonal_doubly_even(rng, length, rows)
            if v is None:
                v = rng.getrandbits(length)
        else:
            v = rng.getrandbits(length)
        if v and not in_span(v, pivots):
            rows.append(v)
            pivots = _echelon(rows)
    return BinaryCode(length, tuple(rows))


def validate_basis_criterion(samples: int = 500, seed: int = 0, max_dim: int = 12) -> int:
    """Compare the basis criterion with enumeration on random small codes.

    Returns the number of doubly even codes in the sample; raises on any
    disagreement.
    """
    rng = random.Random(seed)
    positives = 0
    for s in range(samples):
        length = rng.randint(4, 48)
        dim = rng.randint(1, min(max_dim, length // 2 if s % 2 else length))
        code = random_code(rng, length, dim, doubly_even_bias=bool(s % 2))
        exact = doubly_even_exhaustive(code)
        if exact != doubly_even_by_basis(code):
            raise ConsistencyError(f"basis criterion disagrees on {code.to_strings()}")
        positives += exact
    return positives


def is_doubly_even(code: BinaryCode) -> bool:
    """Every codeword has weight divisible by 4."""
    global _criterion_validated
    if code.dimension <= EXHAUSTIVE_MAX_DIM:
        return doubly_even_exhaustive(code)
    if not _criterion_validated:
        validate_basis_criterion()
        _criterion_validated = True
    return doubly_even_by_basis(code)


def has_distinct_columns(code: BinaryCode) -> bool:
    """Coordinate functionals restricted to the code are pairwise distinct."""
    cols = [code.column(j) for j in range(code.length)]
    return len(set(cols)) == len(cols)


def _even_weight_basis(k: int, shift: int) -> list[int]:
    """e_i + e_{i+1}, i < k-1, placed at coordinates shift .. shift+k-1."""
    return [(0b11 << i) << shift for i in range(k - 1)]


def family_code(n: int) -> BinaryCode:
    """Doubly even code of dimension [n/2] with distinct columns, n = 0, +-1 mod 8."""
    if n < 7 or n % 8 not in (0, 1, 7):
        raise UnsupportedError(f"no family code for n = {n}; need n >= 7 and n = 0, +-1 mod 8")
    if n % 8 == 0:
        h = n // 2
        rows = [a | a << h for a in _even_weight_basis(h, 0)]
        rows.append(ones(h, h))
    elif n % 8 == 1:
        h = (n - 1) // 2
        rows = [a | a << h for a in _even_weight_basis(h, 1)]
        rows.append(ones(h, h + 1))
    else:
        m = (n + 1) // 8
        h = 4 * m - 1
        rows = [a | a << h for a in _even_weight_basis(h, 0)]
        rows.append(ones(4 * m, h))
    return BinaryCode(n, tuple(rows))


def phi_embed(c: int, length: int) -> MonomialMatrix:
    """Diagonal matrix with entries (-1)^{c_j}; defined on even-weight words."""
    if weight(c) % 2:
        raise ValueError("phi is defined on even-weight words only")
    minus, plus = CycNum.rational(-1), CycNum.rational(1)
    return MonomialMatrix.diagonal(minus if c >> j & 1 else plus for j in range(length))


@dataclass
class SpinBound:
    n: int
    dimension: int
    rank: int
    bound: int
    verified: dict[str, bool]
    cited: list[str]


def spin_bound(code: BinaryCode) -> SpinBound:
    """Rank d + 1 witness in Spin_n from a doubly even distinct-column code."""
    checks = {
        "doubly even": is_doubly_even(code),
        "distinct columns": has_distinct_columns(code),
    }
    if not all(checks.values()):
        failed = [k for k, v in checks.items() if not v]
        raise ValueError(f"code fails {failed}; no Spin certificate")
    d = code.dimension
    return SpinBound(
        code.length, d, d + 1, d + 1, checks,
        ["preimage of phi(L) in Spin_n is elementary abelian of rank d+1"],
    )


# -- search ------------------------------------------------------------

@dataclass
class SearchResult:
    n: int
    code: BinaryCode | None
    timed_out: bool
    restarts: int
    details: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return self.code.dimension if self.code else 0


def _random_orthogonal_doubly_even(rng: random.Random, n: int, rows: Sequence[int], tries: int = 64):
    """Random doubly even vector orthogonal to ``rows`` and outside their span."""
    perp = _orthogonal_complement(n, rows)
    pivots = _echelon(rows)
    for _ in range(tries):
        v = 0
        for b in perp:
            if rng.getrandbits(1):
                v ^= b
        if v and weight(v) % 4 == 0 and not in_span(v, pivots):
            return v
    return None


def _orthogonal_complement(n: int, rows: Sequence[int]) -> list[int]:
    """Basis of {v : |v & r| even for every r in rows}."""
    pivots = _echelon(rows)
    pivot_bits = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_bits:
            continue
        v = 1 << free
        for bit, row in pivots.items():
            if row >> free & 1:
                v |= 1 << bit
        basis.append(v)
    return basis


def _column_classes(rows: Sequence[int], n: int) -> int:
    return len({sum((r >> j & 1) << i for i, r in enumerate(rows)) for j in range(n)})


def _greedy(rng: random.Random, n: int, seed_rows: Sequence[int], candidates: int = 24) -> list[int]:
    rows = list(seed_rows)
    while True:
        options = []
        for _ in range(candidates):
            v = _random_orthogonal_doubly_even(rng, n, rows, tries=8)
            if v is not None:
                options.append(v)
        if not options:
            return rows
        rows.append(max(options, key=lambda v: (_column_classes(rows + [v], n), rng.random())))


def _exhaustive_small(n: int) -> BinaryCode | None:
    """Best doubly even distinct-column code by brute force (tiny n only)."""
    vectors = [v for v in range(1, 1 << n) if weight(v) % 4 == 0]
    best: BinaryCode | None = None

    def extend(rows: list[int], start: int) -> None:
        nonlocal best
        if rows:
            code = BinaryCode(n, tuple(rows))
            if has_distinct_columns(code) and (best is None or code.dimension > best.dimension):
                best = code
        pivots = _echelon(rows)
        for idx in range(start, len(vectors)):
            v = vectors[idx]
            if in_span(v, pivots) or any(weight(v & r) % 2 for r in rows):
                continue
            extend(rows + [v], idx + 1)

    extend([], 0)
    return best


def parseval_feasible(n: int, d: int) -> bool:
    """Necessary condition for a doubly even [n, d] code with distinct columns.

    The n columns are distinct points spanning GF(2)^d.  Their Walsh
    transform W(x) = sum_j (-1)^(x.c_j) is congruent to n mod 8 for every x
    (each hyperplane complement holds 0 mod 4 points), and sum_x W(x)^2 =
    2^d n by Parseval.
    """
    if d < 1 or 2**d < n:
        return False
    r = n % 8
    smallest = min(r, 8 - r)
    return (2**d - 1) * smallest**2 <= 2**d * n - n * n


def search_code(n: int, budget: float = 5.0, seed: int = 0) -> SearchResult:
    """Look for a large doubly even code of length n with distinct columns.

    Tiny lengths are solved by brute force.  Otherwise randomized greedy
    growth inside the orthogonal complement, with restarts, runs until the
    time budget is spent; a family code seeds the search when one exists.
    """
    if not 1 <= n <= 64:
        raise UnsupportedError("search supports 1 <= n <= 64")
    if n <= 6:
        code = _exhaustive_small(n)
        return SearchResult(n, code, False, 0, {"method": "exhaustive"})
    if not any(parseval_feasible(n, d) for d in range(1, n // 2 + 1)):
        return SearchResult(n, None, False, 0, {"method": "parseval bound"})
    rng = random.Random(seed)
    best: BinaryCode | None = None
    if n >= 7 and n % 8 in (0, 1, 7):
        best = family_code(n)
    deadline = time.monotonic() + budget
    restarts = 0
    cap = n // 2
    while time.monotonic() < deadline and (best is None or best.dimension < cap):
        restarts += 1
        rows = _greedy(rng, n, [])
        # backtrack: drop a random tail and regrow a few times
        for _ in range(4):
            code = BinaryCode(n, tuple(rows))
            if has_distinct_columns(code) and (best is None or code.dimension > best.dimension):
                best = code
            if time.monotonic() >= deadline or len(rows) < 2:
                break
            keep = rng.randrange(len(rows))
            rows = _greedy(rng, n, rows[:keep])
    timed_out = time.monotonic() >= deadline
    if best is not None and not (is_doubly_even(best) and has_distinct_columns(best)):
        raise ConsistencyError("search produced a code failing its own verifiers")
    return SearchResult(n, best, timed_out, restarts, {"method": "greedy"})
