"""Finite abelian groups given as products of cyclic groups.

Elements and characters are plain residue tuples against the stored factor
list; a character ``c`` evaluates on ``a`` as ``zeta_e^(sum c_i a_i e/n_i)``
with ``e`` the exponent of the group.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Iterator

from .cyclo import CycNum, lcm, root_of_unity
from .errors import ResourceError

GroupElement = tuple[int, ...]
Character = tuple[int, ...]

DEFAULT_CAP = 2**20

_SPEC_TOKEN = re.compile(r"^z(\d+)(?:\^(\d+))?$")


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class AbGroup:
    """Z/n_1 x ... x Z/n_r, kept in the factor order given."""

    factors: tuple[int, ...]

    def __post_init__(self):
        facs = tuple(int(n) for n in self.factors)
        if any(n < 2 for n in facs):
            raise ValueError(f"cyclic factors must be >= 2, got {facs}")
        object.__setattr__(self, "factors", facs)

    @classmethod
    def parse(cls, spec: str) -> "AbGroup":
        """Parse strings such as ``"Z2^3"``, ``"Z4"`` or ``"Z2^6xZ4"``."""
        text = spec.strip().lower().replace(" ", "")
        if text in ("", "1", "z1"):
            return cls(())
        factors: list[int] = []
        for token in text.split("x"):
            m = _SPEC_TOKEN.match(token)
            if not m:
                raise ValueError(f"bad group specification {spec!r}")
            n, reps = int(m.group(1)), int(m.group(2) or 1)
            if n < 2:
                raise ValueError(f"bad cyclic order in {spec!r}")
            factors.extend([n] * reps)
        return cls(tuple(factors))

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for n, grp in itertools.groupby(self.factors):
            k = len(list(grp))
            parts.append(f"Z{n}" + (f"^{k}" if k > 1 else ""))
        return "x".join(parts)

    @cached_property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.factors, 1)

    @cached_property
    def exponent(self) -> int:
        return reduce(lcm, self.factors, 1)

    def rank(self) -> int:
        """Minimal number of generators: max over p of #factors divisible by p."""
        primes = {p for n in self.factors for p in prime_factors(n)}
        return max((sum(1 for n in self.factors if n % p == 0) for p in primes), default=0)

    def p_rank(self, p: int) -> int:
        return sum(1 for n in self.factors if n % p == 0)

    def sylow2_cyclic_or_trivial(self) -> bool:
        """True iff the 2-Sylow subgroup is cyclic (possibly trivial)."""
        return self.p_rank(2) <= 1

    def det_lemma_hypothesis(self) -> bool:
        """2-Sylow subgroup non-cyclic or trivial (determinant lemma hypothesis)."""
        return self.p_rank(2) != 1

    def is_p_group(self, p: int) -> bool:
        return all(prime_factors(n) == [p] for n in self.factors)

    # -- elements -----------------------------------------------------
    def _check(self, x: tuple[int, ...]) -> None:
        if len(x) != len(self.factors):
            raise ValueError(f"tuple {x} does not match factors {self.factors}")

    def normalize(self, x) -> GroupElement:
        x = tuple(x)
        self._check(x)
        return tuple(v % n for v, n in zip(x, self.factors))

    def identity(self) -> GroupElement:
        return (0,) * len(self.factors)

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def neg(self, a: GroupElement) -> GroupElement:
        return tuple(-x % n for x, n in zip(a, self.factors))

    def element_order(self, a: GroupElement) -> int:
        self._check(a)
        return reduce(lcm, (n // gcd(x, n) for x, n in zip(a, self.factors)), 1)

    # characters use the same residue arithmetic
    char_mul = add
    char_inverse = neg
    char_order = element_order
    trivial_character = identity

    def elements(self, cap: int = DEFAULT_CAP) -> Iterator[GroupElement]:
        """All elements, lexicographic on residue tuples."""
        if self.order > cap:
            raise ResourceError(f"|A| = {self.order} exceeds enumeration cap {cap}")
        return itertools.product(*(range(n) for n in self.factors))

    characters = elements

    def index_of(self, a: GroupElement) -> int:
        """Position of ``a`` in the lexicographic enumeration."""
        idx = 0
        for x, n in zip(a, self.factors):
            idx = idx * n + x
        return idx

    def pairing_exponent(self, chi: Character, a: GroupElement) -> int:
        """k with chi(a) = zeta_e^k, e the exponent."""
        self._check(chi)
        self._check(a)
        e = self.exponent
        return sum(c * x * (e // n) for c, x, n in zip(chi, a, self.factors)) % e

    def eval_char(self, chi: Character, a: GroupElement) -> CycNum:
        return root_of_unity(self.exponent, self.pairing_exponent(chi, a))

    def product(self, other: "AbGroup") -> "AbGroup":
        return AbGroup(self.factors + other.factors)


def eval_char(A: AbGroup, chi: Character, a: GroupElement) -> CycNum:
    return A.eval_char(chi, a)


def rank(A: AbGroup) -> int:
    return A.rank()


def enumerate_elements(A: AbGroup, cap: int = DEFAULT_CAP) -> Iterator[GroupElement]:
    return A.elements(cap)


def factorizations_upto(max_order: int) -> list[AbGroup]:
    """Every factor list (non-decreasing, factors >= 2) with product <= max_order."""
    out: list[AbGroup] = [AbGroup(())]

    def extend(prefix: list[int], prod: int, smallest: int) -> None:
        for n in range(smallest, max_order // prod + 1):
            facs = prefix + [n]
            out.append(AbGroup(tuple(facs)))
            extend(facs, prod * n, n)

    extend([], 1, 2)
    return out
