"""Exact arithmetic in cyclotomic fields Q(zeta_E).

An element is stored as its residue modulo the E-th cyclotomic polynomial,
i.e. a vector of ``phi(E)`` rationals in the power basis 1, z, ..., z^(phi-1).
Elements of different orders are promoted to the lcm order before any
binary operation, so equality is always decided exactly.
"""

from __future__ import annotations

import cmath
import threading
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "CycNum",
    "cyclotomic_poly",
    "totient",
    "root_of_unity",
    "sqrt_rational",
    "lcm",
]

Rational = Union[int, Fraction]

_PHI_CACHE: dict[int, tuple[int, ...]] = {1: (-1, 1)}
_PHI_LOCK = threading.Lock()
_ROOT_CACHE: dict[tuple[int, int], "CycNum"] = {}


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _exact_divide(num: list[int], den: Sequence[int]) -> list[int]:
    """Divide integer polynomials (low degree first); den must be monic."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        quot[k - dd] = c
        if c:
            for i, d in enumerate(den):
                num[k - dd + i] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("non-exact polynomial division")
    return quot


def cyclotomic_poly(order: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_order, lowest degree first."""
    if order < 1:
        raise ValueError(f"cyclotomic order must be positive, got {order}")
    cached = _PHI_CACHE.get(order)
    if cached is not None:
        return cached
    num = [-1] + [0] * (order - 1) + [1]
    for d in _divisors(order)[:-1]:
        num = _exact_divide(num, cyclotomic_poly(d))
    poly = tuple(num)
    with _PHI_LOCK:
        _PHI_CACHE.setdefault(order, poly)
    return _PHI_CACHE[order]


def _reduce(coeffs: list[Fraction], order: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(order)
    deg = len(phi) - 1
    for k in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[k]
        if c:
            base = k - deg
            for i in range(deg):
                if phi[i]:
                    coeffs[base + i] -= c * phi[i]
    if len(coeffs) < deg:
        coeffs = coeffs + [Fraction(0)] * (deg - len(coeffs))
    return tuple(coeffs[:deg])


class CycNum:
    """Immutable exact element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs", "_exp")

    def __init__(self, order: int, coeffs: Iterable[Rational] = (), *, _exp: int | None = None):
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        vals = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        deg = totient(order)
        if len(vals) > deg:
            packed = _reduce(vals, order)
        else:
            packed = tuple(vals) + (Fraction(0),) * (deg - len(vals))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", packed)
        # exponent k when this element is known to equal zeta_order^k
        object.__setattr__(self, "_exp", _exp)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def rational(cls, q: Rational, order: int = 1) -> "CycNum":
        return cls(order, [q])

    @classmethod
    def zero(cls, order: int = 1) -> "CycNum":
        return cls(order, [])

    @classmethod
    def one(cls, order: int = 1) -> "CycNum":
        return root_of_unity(order, 0)

    # -- field embedding ----------------------------------------------
    def embed(self, order: int) -> "CycNum":
        """Same element viewed in Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        if self._exp is not None:
            return root_of_unity(order, self._exp * (order // self.order))
        step = order // self.order
        raw = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1 if self.coeffs else 1)
        for i, c in enumerate(self.coeffs):
            if c:
                raw[i * step] = c
        return CycNum(order, raw)

    def _common(self, other: "CycNum | Rational") -> tuple["CycNum", "CycNum"]:
        if not isinstance(other, CycNum):
            other = CycNum(self.order, [other])
        if other.order == self.order:
            return self, other
        L = lcm(self.order, other.order)
        return self.embed(L), other.embed(L)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return CycNum(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return CycNum(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.order, [x * other for x in self.coeffs])
        if not isinstance(other, CycNum):
            return NotImplemented
        if self._exp is not None and other._exp is not None:
            L = lcm(self.order, other.order)
            return root_of_unity(L, self._exp * (L // self.order) + other._exp * (L // other.order))
        a, b = self._common(other)
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycNum(a.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self._exp is not None:
            return root_of_unity(self.order, -self._exp)
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        inv = _poly_inverse_mod(list(self.coeffs), list(cyclotomic_poly(self.order)))
        return CycNum(self.order, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycNum(self.order, [x / other for x in self.coeffs])
        if not isinstance(other, CycNum):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> "CycNum":
        if self._exp is not None:
            return root_of_unity(self.order, self._exp * k)
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycNum):
            return NotImplemented
        if self.order == other.order:
            if self._exp is not None and other._exp is not None:
                return self._exp == other._exp
            return self.coeffs == other.coeffs
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # normalised trace Tr(x)/[K:Q] does not depend on the ambient field
        return hash(self.normalized_trace())

    def normalized_trace(self) -> Fraction:
        total = Fraction(0)
        for i, c in enumerate(self.coeffs):
            if c:
                d = self.order // gcd(i, self.order)
                total += c * _mobius(d) / totient(d)
        return total

    def key(self, order: int | None = None) -> tuple[Fraction, ...]:
        """Hashable coefficient tuple in Q(zeta_order) (default: own order)."""
        if order is None:
            return self.coeffs
        return self.embed(order).coeffs

    def unit_exponent(self) -> int | None:
        """k with self == zeta_order^k if known from construction, else None."""
        return self._exp

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum((float(c) * z**i for i, c in enumerate(self.coeffs) if c), 0j)

    def __repr__(self):
        if self._exp is not None:
            return f"zeta_{self.order}^{self._exp}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = f"z{self.order}" + (f"^{i}" if i > 1 else "")
                terms.append(mon if c == 1 else f"({c})*{mon}")
        return " + ".join(terms) if terms else "0"

    __str__ = __repr__


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        _trim(a)
    return q, a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list[Fraction], m: list[int]) -> list[Fraction]:
    """Inverse of a modulo the irreducible m by the extended Euclidean algorithm."""
    r0, r1 = [Fraction(x) for x in m], _trim([Fraction(x) for x in a])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def root_of_unity(order: int, k: int = 1) -> CycNum:
    """Normal form of zeta_order^(k mod order)."""
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    k %= order
    cached = _ROOT_CACHE.get((order, k))
    if cached is not None:
        return cached
    raw = [Fraction(0)] * (k + 1)
    raw[k] = Fraction(1)
    value = CycNum(order, raw, _exp=k)
    return _ROOT_CACHE.setdefault((order, k), value)


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = square**2 * free with free squarefree (n > 0)."""
    square, free, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            square *= p
        if n % p == 0:
            n //= p
            free *= p
        p += 1
    return square, free * n


def _legendre(a: int, p: int) -> int:
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def _sqrt_prime(p: int) -> CycNum:
    if p == 2:
        return root_of_unity(8, 1) + root_of_unity(8, 7)
    gauss = CycNum.zero(p)
    for a in range(1, p):
        gauss = gauss + root_of_unity(p, a) * _legendre(a, p)
    # gauss^2 = (-1)^((p-1)/2) p
    if p % 4 == 1:
        return gauss
    return gauss * root_of_unity(4, 3)


def sqrt_rational(q: Rational) -> CycNum:
    """An exact square root of the rational q inside some cyclotomic field."""
    q = Fraction(q)
    if q == 0:
        return CycNum.zero()
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    square, free = _squarefree_split(num * den)
    result = CycNum.rational(Fraction(square, den))
    p, m = 2, free
    while m > 1:
        if m % p == 0:
            result = result * _sqrt_prime(p)
            m //= p
        p += 1
    if sign < 0:
        result = result * root_of_unity(4, 1)
    if result * result != q:
        raise ArithmeticError(f"square root of {q} failed self-check")
    return result
