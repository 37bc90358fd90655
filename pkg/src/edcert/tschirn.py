"""Tschirnhaus transformations of the trinomial-type polynomial
x^n + a_m x^(n-m) + ... + a_n over the field Q(a_m, ..., a_n).

Polynomials in x (or t) are dense coefficient lists over a sympy rational
function field; sympy supplies canonical (gcd-reduced) fraction arithmetic,
while the characteristic-polynomial computation is done here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy
from sympy import QQ
from sympy.polys.fields import FracElement, FracField, field

from .errors import ConsistencyError, ResourceError
from .symx import exact_rank

EVAL_RANGE = 10**6
TRDEG_POINTS = 3
MAX_DRAWS = 100


def coefficient_names(n: int, m: int) -> list[str]:
    return [f"a_{j}" for j in range(m, n + 1)]


def make_field(names: Sequence[str]) -> FracField:
    if not names:
        raise ValueError("a coefficient field needs at least one variable")
    K, *_ = field(",".join(names), QQ)
    return K


@dataclass(frozen=True)
class UPoly:
    """Univariate polynomial over a rational function field, highest degree first."""

    K: FracField
    coeffs: tuple
    var: str = "x"

    def __post_init__(self):
        cs = [self.K(c) for c in self.coeffs]
        while len(cs) > 1 and cs[0] == 0:
            cs.pop(0)
        object.__setattr__(self, "coeffs", tuple(cs or [self.K.zero]))

    @property
    def degree(self) -> int:
        return -1 if len(self.coeffs) == 1 and self.coeffs[0] == 0 else len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[0] == 1

    def coeff(self, k: int):
        """Coefficient of var^k."""
        d = len(self.coeffs) - 1
        return self.coeffs[d - k] if 0 <= k <= d else self.K.zero

    def low_first(self) -> list:
        return list(reversed(self.coeffs))

    def as_expr(self) -> sympy.Expr:
        v = sympy.Symbol(self.var)
        d = len(self.coeffs) - 1
        return sum((c.as_expr() * v ** (d - i) for i, c in enumerate(self.coeffs)), sympy.Integer(0))

    def __str__(self):
        return str(sympy.expand(self.as_expr()))


def general_trinomial(n: int, m: int) -> UPoly:
    """x^n + a_m x^(n-m) + ... + a_n with fresh coefficient variables."""
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    K = make_field(coefficient_names(n, m))
    coeffs = [K.one] + [K.zero] * (m - 1) + list(K.gens)
    return UPoly(K, tuple(coeffs))


def variable(K: FracField, name: str) -> FracElement:
    for g, s in zip(K.gens, K.symbols):
        if str(s) == name:
            return g
    raise KeyError(name)


# -- characteristic polynomial -------------------------------------------

def multiplication_matrix(f: UPoly, g: UPoly) -> list[list]:
    """Matrix of h -> g h on K[x]/(f) in the basis 1, x, ..., x^(n-1)."""
    n = f.degree
    fl = f.low_first()
    cur = g.low_first() + [f.K.zero] * (n - len(g.coeffs) + 1)
    cur = cur[:n]
    cols = []
    for _ in range(n):
        cols.append(cur)
        # multiply by x and reduce by the monic f
        top = cur[-1]
        shifted = [f.K.zero] + cur[:-1]
        cur = [c - top * fl[k] for k, c in enumerate(shifted)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def berkowitz(A: list[list], one) -> list:
    """Coefficients of det(tI - A), highest degree first (division free)."""
    poly = [one]
    for r in range(len(A)):
        sub = [row[:r] for row in A[:r]]
        R = A[r][:r]
        v = [A[i][r] for i in range(r)]
        q = [one, -A[r][r]]
        for _ in range(r):
            q.append(-sum((x * y for x, y in zip(R, v)), one * 0))
            v = [sum((x * y for x, y in zip(row, v)), one * 0) for row in sub]
        poly = [
            sum((q[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(q)), one * 0)
            for i in range(r + 2)
        ]
    return poly


def tschirnhaus_minpoly(f: UPoly, g: UPoly) -> UPoly:
    """Characteristic polynomial in t of multiplication by g(x) modulo f(x)."""
    if f.K != g.K:
        raise ValueError("f and g must share a coefficient field")
    if not f.is_monic() or f.degree < 1:
        raise ValueError("f must be monic of positive degree")
    if g.degree >= f.degree:
        raise ValueError(f"deg g = {g.degree} must be below deg f = {f.degree}")
    M = multiplication_matrix(f, g)
    # clear denominators so Berkowitz runs over the polynomial ring:
    # if M = M'/D then the t^(n-k) coefficient is c'_k / D^k
    R = f.K.ring
    D = R.one
    for row in M:
        for e in row:
            D = D.lcm(e.denom)
    Mp = [[e.numer * (D.exquo(e.denom)) for e in row] for row in M]
    cp = berkowitz(Mp, R.one)
    Dk = f.K.one
    coeffs = []
    for c in cp:
        coeffs.append(f.K(c) / Dk)
        Dk = Dk * f.K(D)
    return UPoly(f.K, tuple(coeffs), var="t")


def resultant_minpoly(f: UPoly, g: UPoly) -> UPoly:
    """Oracle: Res_x(f(x), t - g(x)) via sympy, normalized to be monic in t."""
    x, t = sympy.Symbol(f.var), sympy.Symbol("t")
    res = sympy.resultant(f.as_expr(), t - g.as_expr(), x)
    P = sympy.Poly(sympy.together(res), t)
    coeffs = [f.K.from_expr(c) for c in P.all_coeffs()]
    lead = coeffs[0]
    return UPoly(f.K, tuple(c / lead for c in coeffs), var="t")


# -- the scaling substitution ------------------------------------------------

def scaling_substitution(n: int, m: int) -> tuple[UPoly, UPoly]:
    """(f, g) with f the general trinomial and g = (a_{n-1}/a_n) x."""
    f = general_trinomial(n, m)
    K = f.K
    c = variable(K, f"a_{n - 1}") / variable(K, f"a_{n}")
    return f, UPoly(K, (c, K.zero))


def scaled_coefficients(n: int, m: int) -> list:
    """[b_1, ..., b_n] with f_z(t) = t^n + b_1 t^(n-1) + ... + b_n."""
    f, g = scaling_substitution(n, m)
    return list(tschirnhaus_minpoly(f, g).coeffs[1:])


def verify_scaling_identity(n: int, m: int) -> bool:
    """Exact check that b_{n-1} = b_n = a_{n-1}^n / a_n^(n-1) and b_1..b_{m-1} = 0."""
    if not (2 * m >= n and 1 <= m <= n - 1):
        raise ValueError(f"need n/2 <= m <= n-1, got n={n}, m={m}")
    b = scaled_coefficients(n, m)
    f, _ = scaling_substitution(n, m)
    K = f.K
    target = variable(K, f"a_{n - 1}") ** n / variable(K, f"a_{n}") ** (n - 1)
    if any(b[j - 1] != 0 for j in range(1, m)):
        return False
    return b[n - 2] == target and b[n - 1] == target


# -- transcendence degree ------------------------------------------------------

def _to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator)) if hasattr(v, "denominator") else Fraction(v)


def evaluate(e: FracElement, point: Sequence[int]) -> Fraction:
    """Value of e at a point; ZeroDivisionError if the denominator vanishes there."""
    if not point:
        num, den = e.numer.LC if e.numer else 0, e.denom.LC
    else:
        num, den = e.numer(*point), e.denom(*point)
    den = _to_fraction(den)
    if den == 0:
        raise ZeroDivisionError("denominator vanishes at the evaluation point")
    return _to_fraction(num) / den


@dataclass
class TrdegReport:
    value: int
    ranks: list[int]
    points: list[list[int]]
    seed: int

    @property
    def agree(self) -> bool:
        return len(set(self.ranks)) == 1


def trdeg_report(funcs: Sequence[FracElement], seed: int = 0, points: int = TRDEG_POINTS) -> TrdegReport:
    """Generic rank of the Jacobian of funcs with respect to the field generators."""
    funcs = list(funcs)
    if not funcs:
        return TrdegReport(0, [0] * points, [], seed)
    K = funcs[0].field
    if any(fn.field != K for fn in funcs):
        raise ValueError("all functions must live in one field")
    gens = K.gens
    jac = [[fn.diff(g) for g in gens] for fn in funcs]
    rng = random.Random(seed)
    ranks, used = [], []
    draws = 0
    while len(ranks) < points:
        if draws >= MAX_DRAWS:
            raise ResourceError(f"no point avoiding denominators after {MAX_DRAWS} draws")
        draws += 1
        pt = [rng.randint(-EVAL_RANGE, EVAL_RANGE) for _ in gens]
        try:
            for fn in funcs:
                evaluate(fn, pt)
            rows = [[evaluate(d, pt) for d in row] for row in jac]
        except ZeroDivisionError:
            continue
        ranks.append(exact_rank(rows))
        used.append(pt)
    return TrdegReport(max(ranks), ranks, used, seed)


def trdeg(funcs: Sequence[FracElement], seed: int = 0) -> int:
    return trdeg_report(funcs, seed).value


# -- user substitutions ----------------------------------------------------------

def parse_substitution(text: str, f: UPoly) -> UPoly:
    """Parse an expression in x and the a_j into a polynomial in x over f's field."""
    x = sympy.Symbol(f.var)
    local = {str(s): sympy.Symbol(str(s)) for s in f.K.symbols}
    local[f.var] = x
    try:
        expr = sympy.parse_expr(text, local_dict=local)
    except Exception as exc:  # tokenizer and parser errors vary by input
        raise ValueError(f"cannot parse substitution {text!r}: {exc}") from None
    unknown = expr.free_symbols - set(local.values())
    if unknown:
        raise ValueError(f"unknown symbols in substitution: {sorted(map(str, unknown))}")
    num, den = sympy.fraction(sympy.together(expr))
    if x in den.free_symbols:
        raise ValueError("substitution must be polynomial in x")
    P = sympy.Poly(num, x)
    coeffs = [f.K.from_expr(c / den) for c in P.all_coeffs()]
    g = UPoly(f.K, tuple(coeffs))
    if g.degree >= f.degree:
        raise ValueError(f"substitution degree {g.degree} must be below {f.degree}")
    return g


def transform(n: int, m: int, sub: str | None = None, seed: int = 0) -> dict:
    """Coefficients of the transformed polynomial and their transcendence degree."""
    if sub is None:
        f, g = scaling_substitution(n, m)
    else:
        f = general_trinomial(n, m)
        g = parse_substitution(sub, f)
    h = tschirnhaus_minpoly(f, g)
    coeffs = list(h.coeffs[1:])
    rep = trdeg_report(coeffs, seed)
    if not rep.agree:
        raise ConsistencyError(f"Jacobian ranks disagree across points: {rep.ranks}")
    return {
        "n": n,
        "m": m,
        "f": str(f),
        "substitution": str(g),
        "coefficients": [str(c) for c in coeffs],
        "trdeg": rep.value,
        "seed": seed,
    }


def random_instance(rng: random.Random, max_degree: int = 5) -> tuple[UPoly, UPoly]:
    """A random monic f of degree <= max_degree and g of lower degree.

    Coefficients are small integers or affine forms in up to three
    parameters, with at most one rational-function coefficient overall.
    """
    n = rng.randint(1, max_degree)
    K = make_field(["a", "b", "c"][: rng.randint(1, 3)])
    gens = K.gens
    budget = [1]

    def coefficient():
        r = rng.random()
        if r < 0.4:
            return K(rng.randint(-5, 5))
        if r < 0.9 or not budget[0]:
            return rng.choice(gens) * rng.randint(1, 3) + rng.randint(-3, 3)
        budget[0] = 0
        return rng.choice(gens) / (rng.choice(gens) + rng.randint(1, 3))

    f = UPoly(K, (K.one,) + tuple(coefficient() for _ in range(n)))
    g = UPoly(K, tuple(coefficient() for _ in range(rng.randint(1, n))))
    return f, g
