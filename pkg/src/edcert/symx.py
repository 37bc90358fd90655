"""The variety X_{m,n} of n-tuples whose first m-1 power sums vanish."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .cyclo import CycNum, root_of_unity, sqrt_rational
from .errors import ConsistencyError

RANK_TOL = 1e-6
RESIDUAL_TOL = 1e-9
STEP_TOL = 1e-12
RETRIES = 50


def power_sums(x: Sequence[Any], upto: int) -> list[Any]:
    """[p_1(x), ..., p_upto(x)]."""
    out = []
    powers = list(x)
    for _ in range(upto):
        out.append(sum(powers[1:], powers[0]) if powers else 0)
        powers = [p * v for p, v in zip(powers, x)]
    return out


def elem_sym(x: Sequence[Any]) -> list[Any]:
    """[s_1(x), ..., s_n(x)] from the expansion of prod (1 + x_i T)."""
    coeffs: list[Any] = [1]
    for v in x:
        nxt = coeffs + [0]
        for k in range(len(coeffs), 0, -1):
            nxt[k] = nxt[k] + coeffs[k - 1] * v
        coeffs = nxt
    return coeffs[1:]


def sym_to_power(s: Sequence[Any]) -> list[Any]:
    """Newton: p_k = sum_{i<k} (-1)^(i-1) s_i p_{k-i} + (-1)^(k-1) k s_k."""
    p: list[Any] = []
    for k in range(1, len(s) + 1):
        acc = (-1) ** (k - 1) * k * s[k - 1]
        for i in range(1, k):
            acc = acc + (-1) ** (i - 1) * s[i - 1] * p[k - i - 1]
        p.append(acc)
    return p


def power_to_sym(p: Sequence[Any]) -> list[Any]:
    """Newton inverted: k s_k = sum_{i=1..k} (-1)^(i-1) s_{k-i} p_i, s_0 = 1."""
    s: list[Any] = [Fraction(1)]
    for k in range(1, len(p) + 1):
        acc = p[0] * s[k - 1]
        for i in range(2, k + 1):
            acc = acc + (-1) ** (i - 1) * s[k - i] * p[i - 1]
        s.append(acc * Fraction(1, k))
    return s[1:]


def newton_convert(values: Sequence[Any], to: str) -> list[Any]:
    if to == "power":
        return sym_to_power(values)
    if to == "sym":
        return power_to_sym(values)
    raise ValueError("to must be 'power' or 'sym'")


# -- Jacobian ------------------------------------------------------------

def jacobian_rows(x: Sequence[Any], m: int) -> list[list[Any]]:
    """(m-1) x n matrix with entries j * x_i^(j-1)."""
    rows = []
    powers = [1] * len(x)
    for j in range(1, m):
        rows.append([j * v for v in powers])
        powers = [p * v for p, v in zip(powers, x)]
    return rows


def _is_zero(v: Any) -> bool:
    return v.is_zero() if isinstance(v, CycNum) else v == 0


def exact_rank(rows: list[list[Any]]) -> int:
    """Gaussian elimination over an exact field (Fraction or CycNum entries)."""
    rows = [[Fraction(v) if isinstance(v, int) else v for v in r] for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if not _is_zero(rows[r][col])), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv = rows[rank][col]
        inv = piv.inverse() if isinstance(piv, CycNum) else 1 / piv
        for r in range(rank + 1, len(rows)):
            if not _is_zero(rows[r][col]):
                f = rows[r][col] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def numeric_rank(rows: np.ndarray, tol: float = RANK_TOL) -> int:
    if rows.size == 0:
        return 0
    sv = np.linalg.svd(rows, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int((sv > tol * sv[0]).sum())


def jacobian_rank(x: Sequence[Any], m: int) -> int:
    if m <= 1:
        return 0
    if all(isinstance(v, (int, Fraction, CycNum)) for v in x):
        return exact_rank(jacobian_rows(x, m))
    return numeric_rank(np.array(jacobian_rows(np.asarray(x, dtype=complex), m), dtype=complex))


def distinct_count(x: Sequence[Any]) -> int:
    values: list[Any] = []
    for v in x:
        if not any(v == w for w in values):
            values.append(v)
    return len(values)


def on_variety(x: Sequence[Any], m: int) -> bool:
    return all(_is_zero(p) for p in power_sums(x, m - 1))


# -- symmetric witnesses ---------------------------------------------------

def witness_shape(n: int, m: int) -> list[int]:
    """Multiplicity of each unknown alpha_1..alpha_m: n-m pairs then singles."""
    if not (2 * m >= n and 1 <= m <= n - 1):
        raise ValueError(f"need n/2 <= m <= n-1, got n={n}, m={m}")
    return [2] * (n - m) + [1] * (2 * m - n)


def expand_shape(alphas: Sequence[Any], shape: Sequence[int]) -> list[Any]:
    return [a for a, k in zip(alphas, shape) for _ in range(k)]


def stabilizer_generators(n: int, m: int) -> list[tuple[int, int]]:
    """Transpositions (1,2), (3,4), ... (0-based) fixing every witness."""
    return [(2 * i, 2 * i + 1) for i in range(n - m)]


@dataclass
class Witness:
    n: int
    m: int
    shape: list[int]
    coords: list[Any]
    exact: bool
    residual: float
    jacobian_rank: int
    seed: int | None
    attempts: int = 0
    details: dict = field(default_factory=dict)

    def numeric_coords(self) -> np.ndarray:
        return np.array(
            [v.to_complex() if isinstance(v, CycNum) else complex(v) for v in self.coords]
        )

    def to_record(self) -> dict:
        record: dict[str, Any] = {
            "n": self.n,
            "m": self.m,
            "shape": self.shape,
            "coords": [[float(z.real), float(z.imag)] for z in self.numeric_coords()],
            "residual": self.residual,
            "jacobian_rank": self.jacobian_rank,
            "seed": self.seed,
            "exact": self.exact,
        }
        if self.exact:
            if all(isinstance(v, CycNum) and v.is_rational() for v in self.coords):
                record["coords_exact"] = [str(v.coeffs[0]) for v in self.coords]
            else:
                record["coords_exact"] = [str(v) for v in self.coords]
        return record


def _residual(z: np.ndarray, m: int) -> float:
    if m <= 1:
        return 0.0
    return float(max(abs(p) for p in power_sums(list(z), m - 1)))


def _exact_alphas(n: int, m: int) -> list[CycNum] | None:
    """Closed-form nonzero solutions when m-1 <= 2 (linear or quadratic)."""
    w = [Fraction(k) for k in witness_shape(n, m)]
    one = CycNum.rational(1)
    if m == 2:
        # w1 + w2 b = 0 with alpha_1 = 1
        return [one, CycNum.rational(-w[0] / w[1])]
    if m == 3:
        # alpha_1 = 1, gamma = -(w1 + w2 b)/w3, then w1 + w2 b^2 + w3 gamma^2 = 0
        w1, w2, w3 = w
        qa = w2 + w2 * w2 / w3
        qb = 2 * w1 * w2 / w3
        qc = w1 + w1 * w1 / w3
        root = sqrt_rational(qb * qb - 4 * qa * qc)
        beta = (root - qb) / (2 * qa)
        gamma = (beta * w2 + w1) * Fraction(-1) / w3
        return [one, beta, gamma]
    return None


def _newton_solve(shape: Sequence[int], m: int, rng: np.random.Generator, max_iter: int = 400):
    """Damped Newton for p_1..p_{m-1} = 0 on the shape with alpha_1 fixed to 1."""
    w = np.array(shape, dtype=float)
    js = np.arange(1, m)

    def system(z):
        alphas = np.concatenate([[1.0 + 0j], z])
        F = (w[None, :] * alphas[None, :] ** js[:, None]).sum(1) / js
        J = w[None, 1:] * z[None, :] ** (js[:, None] - 1)
        return F, J

    z = np.exp(2j * np.pi * rng.random(m - 1)) * rng.uniform(0.5, 1.5, m - 1)
    with np.errstate(all="ignore"):
        F, J = system(z)
        for _ in range(max_iter):
            try:
                step = np.linalg.solve(J, -F)
            except np.linalg.LinAlgError:
                return None
            norm0, t = np.linalg.norm(F), 1.0
            if norm0 == 0:
                return np.concatenate([[1.0 + 0j], z])
            while t > 1e-6:
                trial = z + t * step
                F_new, J_new = system(trial)
                if np.all(np.isfinite(F_new)) and np.linalg.norm(F_new) < norm0:
                    break
                t /= 2
            else:
                return None
            z, F, J = trial, F_new, J_new
            if t * np.linalg.norm(step) < STEP_TOL * max(1.0, np.linalg.norm(z)):
                return np.concatenate([[1.0 + 0j], z])
    return None


def find_symmetric_witness(n: int, m: int, seed: int = 0, exact: bool = True) -> Witness | None:
    """Nonzero point of X_{m,n} of the paired shape, or None after all retries.

    Exact (cyclotomic) coordinates are produced when m <= 3; otherwise
    Newton's method runs from seeded random complex starts and the result is
    kept only if its recomputed residual and Jacobian rank pass.
    """
    shape = witness_shape(n, m)
    if exact:
        alphas = _exact_alphas(n, m)
        if alphas is not None:
            coords = expand_shape(alphas, shape)
            if not on_variety(coords, m):
                raise ConsistencyError(f"closed-form witness for ({n},{m}) is off the variety")
            rank = jacobian_rank(coords, m)
            return Witness(n, m, shape, coords, True, 0.0, rank, None)
    rng = np.random.default_rng(seed)
    for attempt in range(1, RETRIES + 1):
        alphas = _newton_solve(shape, m, rng)
        if alphas is None:
            continue
        z = np.array(expand_shape(alphas, shape))
        z = z / np.abs(z).max()
        residual = _residual(z, m)
        if residual > RESIDUAL_TOL:
            continue
        rank = jacobian_rank(list(z), m)
        if rank != m - 1:
            continue
        return Witness(n, m, shape, list(z), False, residual, rank, seed, attempt)
    return None


# -- X_{n,n} ---------------------------------------------------------------

def xnn_lines(n: int) -> list[tuple[CycNum, ...]]:
    """The (n-1)! projective points (1 : z_2 : ... : z_n) of distinct n-th roots."""
    if not 1 <= n <= 8:
        raise ValueError("xnn_lines supports 1 <= n <= 8")
    points = []
    for rest in itertools.permutations(range(1, n)):
        pt = (root_of_unity(n, 0),) + tuple(root_of_unity(n, k) for k in rest)
        if not on_variety(pt, n):
            raise ConsistencyError(f"{pt} is not on X_{n},{n}")
        points.append(pt)
    if len(points) != math.factorial(n - 1):
        raise ConsistencyError("wrong number of lines")
    return points
