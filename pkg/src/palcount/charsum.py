"""Counting irreducible polynomials class by class through characters of E^{l,t}.

Characters of ``E = Z_{r_1} x ... x Z_{r_f}`` are indexed by group elements:
``chi_{e'}(e) = prod_j w_{r_j}^(e_j e'_j)`` with ``w_r = exp(2 pi i / r)``.
Summing a character over the classes of degree-d monic polynomials gives the
coefficients of a polynomial ``P(z; e')`` of degree at most ``l + t - 1``.  The
power sums ``rho_n`` of its inverse roots feed the weighted counts
``F_q(n; e)``, and Moebius inversion over ``k | n`` with ``delta^k = e`` turns
those into the irreducible counts ``I_q(n; e)``.

The dominant term ``q^n`` is exact; only the character correction goes through
double-precision complex arithmetic, and every count is rounded with its
distance to the nearest integer checked against a tolerance.  Arrays indexed
"on the grid" are shaped ``G.orders`` and addressed by exponent vectors;
character transforms on the grid are plain multidimensional FFTs.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import divisors, mobius, squarefree_divisors
from .classgroup import ClassLabel, GroupStructure, degree_class_indices, exponent_of
from .errors import CountOverflowError, ExactRangeError, IntegralityError
from .ffpoly import FieldSpec

__all__ = [
    "CharPoly",
    "CountResult",
    "F_identity_via_product",
    "F_value",
    "F_values",
    "I_count",
    "I_count_all",
    "I_total",
    "I_trace",
    "c_coeff",
    "char_poly",
    "char_poly_table",
    "default_tolerance",
    "divisors",
    "mobius",
    "power_sum",
    "power_sums",
]

EXACT_LIMIT = 2**52
INT64_MAX = 2**63 - 1
_lock = threading.Lock()


def default_tolerance() -> float:
    raw = os.environ.get("PALCOUNT_TOLERANCE")
    return float(raw) if raw else 1e-6


@dataclass(frozen=True)
class CountResult:
    count: int
    residual: float = 0.0

    def __int__(self) -> int:
        return self.count


@dataclass(frozen=True)
class CharPoly:
    """Complex polynomial ascending from a constant term of exactly 1."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if len(c) == 0 or c[0] != 1:
            raise ValueError("a character polynomial has constant term 1")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(np.abs(self.coeffs) > 1e-12)
        return int(nz[-1])


def check_exact_range(q: int, n: int) -> None:
    if q**n > EXACT_LIMIT:
        raise ExactRangeError(f"q^n = {q}^{n} exceeds 2^52; the float-assisted path is not exact")


def round_checked(values, tol: float | None, what: str) -> tuple[np.ndarray, float]:
    """Round to integers, failing when any value is farther than ``tol`` from one."""
    tol = default_tolerance() if tol is None else tol
    values = np.asarray(values)
    rounded = np.rint(values.real)
    residual = float(np.max(np.abs(values - rounded), initial=0.0))
    if not residual < tol:
        raise IntegralityError(f"{what}: residual {residual:.3g} exceeds tolerance {tol:g}")
    if np.any(rounded < 0):
        raise IntegralityError(f"{what}: negative count")
    if np.any(rounded > INT64_MAX):
        raise CountOverflowError(f"{what}: count exceeds 64 bits")
    return rounded.astype(np.int64), residual


# -- character polynomials ----------------------------------------------------


def _grid_shape(G: GroupStructure) -> tuple[int, ...]:
    return G.orders or (1,)


def _to_grid(G: GroupStructure, by_index: np.ndarray) -> np.ndarray:
    return np.asarray(by_index)[G.grid.reshape(_grid_shape(G))]


def _from_grid(G: GroupStructure, grid: np.ndarray) -> np.ndarray:
    out = np.empty(G.order, dtype=grid.dtype)
    out[G.grid.ravel()] = grid.ravel()
    return out


def _character(G: GroupStructure, e: Sequence[int], others: np.ndarray) -> np.ndarray:
    """chi_e evaluated on the exponent rows ``others``."""
    phase = np.zeros(len(others))
    for j, r in enumerate(G.orders):
        phase = phase + (e[j] * others[:, j] % r) / r
    return np.exp(2j * np.pi * phase)


def c_coeff(G: GroupStructure, d: int, eps: ClassLabel) -> complex:
    """Sum of the character indexed by ``eps`` over the degree-d classes."""
    if not 1 <= d <= G.ell + G.t - 1:
        raise ValueError(f"c_coeff needs 1 <= d <= l+t-1 = {G.ell + G.t - 1}, got {d}")
    e = exponent_of(G, eps)
    members = G.exponents[degree_class_indices(G, d)]
    return complex(_character(G, e, members).sum())


def char_poly(G: GroupStructure, eps: ClassLabel) -> CharPoly:
    deg = G.ell + G.t - 1
    return CharPoly(np.array([1] + [c_coeff(G, d, eps) for d in range(1, deg + 1)]))


def char_poly_table(G: GroupStructure) -> np.ndarray:
    """Coefficients of every ``P(z; e')`` at once, shape ``orders + (l+t,)``.

    The coefficient of ``z^d`` is the inverse FFT of the indicator of the
    degree-d classes, scaled by ``|E|``.
    """
    key = "char_poly_table"
    table = G.memo.get(key)
    if table is None:
        shape = _grid_shape(G)
        deg = G.ell + G.t - 1
        table = np.zeros(shape + (max(deg, 0) + 1,), dtype=np.complex128)
        table[..., 0] = 1
        for d in range(1, deg + 1):
            ind = np.zeros(G.order)
            ind[degree_class_indices(G, d)] = 1
            table[..., d] = np.fft.ifftn(_to_grid(G, ind)) * G.order
        G.memo[key] = table
    return table


# -- power sums ---------------------------------------------------------------


def power_sums(coeffs: np.ndarray, nmax: int) -> np.ndarray:
    """Newton power sums of the inverse roots for a batch of polynomials.

    ``coeffs[..., k]`` is the coefficient of ``z^k`` (constant term 1).  Returns
    ``p`` with ``p[n]`` the n-th power sum (``p[0]`` is unused and zero), via
    ``p_k = -k c_k - sum_{j<k} c_j p_{k-j}``.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    deg = coeffs.shape[-1] - 1
    p = np.zeros((nmax + 1,) + coeffs.shape[:-1], dtype=np.complex128)
    for k in range(1, nmax + 1):
        acc = -k * coeffs[..., k] if k <= deg else np.zeros(coeffs.shape[:-1], dtype=np.complex128)
        for j in range(1, min(k - 1, deg) + 1):
            acc = acc - coeffs[..., j] * p[k - j]
        p[k] = acc
    return p


def power_sum(P: CharPoly, n: int) -> complex:
    """rho_n(P): sum of rho^(-n) over the nonzero roots rho of P."""
    if n < 1:
        raise ValueError("power_sum needs n >= 1")
    return complex(power_sums(P.coeffs, n)[n])


def _rho_grid(G: GroupStructure, n: int) -> np.ndarray:
    """rho_n(P(z; e')) for every e' on the grid (memoised per group)."""
    table = char_poly_table(G)
    rho = G.memo.get("rho")
    if rho is None or rho.shape[0] <= n:
        with _lock:
            rho = G.memo.get("rho")
            if rho is None or rho.shape[0] <= n:
                rho = power_sums(table, max(n, 2 * (rho.shape[0] if rho is not None else 16)))
                rho.setflags(write=False)
                G.memo["rho"] = rho
    return rho[n]


# -- weighted counts F_q(n; e) -------------------------------------------------


def _main_term(G: GroupStructure, n: int) -> int:
    return G.field.q**n - (G.t > 0)


def F_values(G: GroupStructure, n: int) -> np.ndarray:
    """F_q(n; e) for every e on the grid (complex; imaginary parts ~ 0)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    check_exact_range(G.field.q, n)
    cache = G.memo.setdefault("F", {})
    if n not in cache:
        rho = _rho_grid(G, n).copy()
        rho.flat[0] = 0  # the trivial character is the main term
        corr = np.fft.fftn(rho)
        vals = (_main_term(G, n) - corr) / G.order
        vals.setflags(write=False)
        cache[n] = vals
    return cache[n]


def F_value(G: GroupStructure, n: int, eps: ClassLabel, tol: float | None = None) -> float:
    """F_q(n; eps) by the explicit character sum over the nontrivial e'."""
    if n < 1:
        raise ValueError("n must be >= 1")
    check_exact_range(G.field.q, n)
    tol = default_tolerance() if tol is None else tol
    e = exponent_of(G, eps)
    others = G.exponents
    rho = _from_grid(G, _rho_grid(G, n))
    weights = np.conj(_character(G, e, others))
    nontrivial = np.arange(G.order) != G.grid.flat[0]
    corr = np.sum(weights[nontrivial] * rho[nontrivial])
    val = (_main_term(G, n) - corr) / G.order
    if abs(val.imag) >= tol:
        raise IntegralityError(f"F value has imaginary part {val.imag:.3g}")
    return float(val.real)


def F_identity_via_product(G: GroupStructure, n: int) -> float:
    """F_q(n; <1>) from the power sums of the product of all nontrivial P(z; e')."""
    check_exact_range(G.field.q, n)
    table = char_poly_table(G).reshape(-1, char_poly_table(G).shape[-1])
    prod = np.array([1.0 + 0j])
    for i in range(1, len(table)):
        prod = np.convolve(prod, table[i])
    rho = power_sums(prod, n)[n]
    return float(((_main_term(G, n) - rho) / G.order).real)


# -- irreducible counts I_q(n; e) -------------------------------------------------


def _kth_power_targets(G: GroupStructure, k: int) -> np.ndarray:
    """Flat grid position of delta^k for every delta on the grid."""
    shape = _grid_shape(G)
    if not G.orders:
        return np.zeros(1, dtype=np.int64)
    idx = np.indices(shape).reshape(len(shape), -1)
    mods = np.array(shape).reshape(-1, 1)
    return np.ravel_multi_index(tuple(k * idx % mods), shape)


def _I_grid(G: GroupStructure, n: int) -> np.ndarray:
    cache = G.memo.setdefault("I", {})
    if n not in cache:
        total = np.zeros(int(np.prod(_grid_shape(G))), dtype=np.complex128)
        for k, mu in squarefree_divisors(n):
            F = F_values(G, n // k).ravel()
            np.add.at(total, _kth_power_targets(G, k), mu * F)
        cache[n] = total / n
    return cache[n]


def I_count_all(G: GroupStructure, n: int, tol: float | None = None) -> tuple[np.ndarray, float]:
    """I_q(n; e) for every class, indexed by label index, plus the worst residual."""
    if n < 1:
        raise ValueError("n must be >= 1")
    counts, residual = round_checked(_I_grid(G, n), tol, f"I_{G.field.q}({n}; .)")
    return _from_grid(G, counts.reshape(_grid_shape(G))), residual


def _congruence_solutions(k: int, target: int, r: int) -> list[int]:
    """All x mod r with k*x = target (mod r)."""
    g = math.gcd(k, r)
    if target % g:
        return []
    step = r // g
    x0 = (target // g) * pow(k // g, -1, step) % step if step > 1 else 0
    return [x0 + i * step for i in range(g)]


def I_count(
    G: GroupStructure,
    n: int,
    eps: ClassLabel,
    tol: float | None = None,
    verify: bool = False,
) -> CountResult:
    """Number of irreducible monic degree-n polynomials in class ``eps``.

    The classes delta with delta^k = eps are solved one cyclic component at a
    time; with ``verify=True`` they are also found by scanning all of E and the
    two solution sets must agree.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    e = exponent_of(G, eps)
    shape = _grid_shape(G)
    total = 0j
    for k, mu in squarefree_divisors(n):
        per_axis = [_congruence_solutions(k, e[j], r) for j, r in enumerate(G.orders)]
        if any(not s for s in per_axis):
            sols = np.zeros(0, dtype=np.int64)
        elif G.orders:
            mesh = np.meshgrid(*per_axis, indexing="ij")
            sols = np.ravel_multi_index(tuple(m.ravel() for m in mesh), shape)
        else:
            sols = np.zeros(1, dtype=np.int64)
        if verify:
            targets = _kth_power_targets(G, k)
            flat_e = np.ravel_multi_index(tuple(e), shape) if G.orders else 0
            scanned = np.flatnonzero(targets == flat_e)
            if not np.array_equal(np.sort(sols), scanned):
                raise AssertionError(f"lattice solver disagrees with the scan for k = {k}")
        total += mu * F_values(G, n // k).ravel()[sols].sum()
    counts, residual = round_checked(np.array([total / n]), tol, f"I_{G.field.q}({n}; {eps})")
    return CountResult(int(counts[0]), residual)


def _exact_count(numer: int, denom: int, what: str) -> CountResult:
    value = Fraction(numer, denom)
    if value.denominator != 1 or value < 0:
        raise IntegralityError(f"{what} = {value} is not a non-negative integer")
    if value > INT64_MAX:
        raise CountOverflowError(f"{what} exceeds 64 bits")
    return CountResult(int(value), 0.0)


def I_total(field: FieldSpec, n: int) -> CountResult:
    """Number of monic irreducibles of degree n: (1/n) sum_{d|n} mu(d) q^(n/d)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    q = field.q
    return _exact_count(sum(mobius(d) * q ** (n // d) for d in divisors(n)), n, f"I_{q}({n})")


def I_trace(field: FieldSpec, n: int, c: int) -> CountResult:
    """Number of monic irreducibles of degree n whose x^(n-1) coefficient is ``c``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    field._check(c)
    q, p = field.q, field.p
    total = 0
    for j in divisors(n):
        if c:
            weight = int(j % p != 0)
        else:
            weight = 1 + (q - 1) * int(j % p == 0)
        total += weight * mobius(j) * q ** (n // j)
    return _exact_count(total, q * n, f"I_{q}({n}; {c})")
