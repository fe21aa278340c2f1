"""Self-reciprocal irreducible monic polynomials with prescribed leading coefficients.

A palindromic monic ``f`` of degree ``2n`` is ``x^n g(x + 1/x)`` for a monic
``g`` of degree ``n``.  When g is irreducible, f is either irreducible or
equal to ``h h* / h(0)`` for an irreducible non-palindromic ``h``.  Counting
the g by their leading coefficients and subtracting the h h* products (counted
through the classes of E^{l,l+1}) gives the count ``S_q(n; c)`` of
self-reciprocal irreducibles of degree ``2n`` whose top ``l`` coefficients
after the leading one are ``c``.

Everything here takes the half-degree ``n``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .arith import divisors, mobius, squarefree_divisors
from .charsum import (
    CountResult,
    I_count_all,
    I_total,
    I_trace,
    _exact_count,
    default_tolerance,
    power_sums,
    round_checked,
)
from .classgroup import ClassLabel, GroupStructure, decompose, default_group
from .ffpoly import FieldSpec, Poly, enumerate_monic, is_irreducible, leading_coeffs, parse_poly

THETA = math.acos(1 / (2 * math.sqrt(2)))
THETA1 = math.acos(1 / (2 * math.sqrt(3)))
THETA2 = math.acos(1 / math.sqrt(3))

F2 = FieldSpec(2)
F3 = FieldSpec(3)


def reference_basis_q3() -> GroupStructure:
    """E^{1,2} over F_3 with xi_1 = <x+1>, xi_2 = <x^3+x+2> (orders 3 and 6)."""
    return _fixed_group(3, 1, 2, ("11", "1012"))


def reference_basis_e20() -> GroupStructure:
    """E^{2,0} over F_2 generated by xi = <x+1> of order 4."""
    return _fixed_group(2, 2, 0, ("11",))


def reference_basis_q2() -> GroupStructure:
    """E^{2,3} over F_2 with xi_1 = <x+1>, xi_2 = <x^5+x+1> (both of order 4)."""
    return _fixed_group(2, 2, 3, ("11", "100011"))


@lru_cache(maxsize=None)
def _fixed_group(q: int, ell: int, t: int, gens: tuple[str, ...]) -> GroupStructure:
    field = FieldSpec(q)
    return decompose(field, ell, t, [parse_poly(g, field) for g in gens])


# -- coefficient maps -------------------------------------------------------------


def _binom_mod(field: FieldSpec, n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return field.from_int(math.comb(n, k))


def phi_map(field: FieldSpec, d: int, g: Sequence[int]) -> tuple[int, ...]:
    """Leading coefficients of ``x^d g(x + 1/x)`` from those of the degree-d ``g``."""
    ell = len(g)
    gs = [1] + list(g)

    def g_at(i: int) -> int:
        return gs[i] if i <= ell and i <= d else 0

    out = []
    for k in range(1, ell + 1):
        acc = 0
        for j in range(k // 2 + 1):
            acc = field.add(acc, field.mul(_binom_mod(field, d + 2 * j - k, j), g_at(k - 2 * j)))
        out.append(acc)
    return tuple(out)


def phi_inverse(field: FieldSpec, d: int, f: Sequence[int]) -> tuple[int, ...]:
    """Solve ``phi_map(d, g) = f`` for g, one coefficient at a time."""
    g = [1]
    for k in range(1, len(f) + 1):
        acc = f[k - 1]
        for j in range(1, k // 2 + 1):
            gi = g[k - 2 * j] if k - 2 * j <= d else 0
            acc = field.sub(acc, field.mul(_binom_mod(field, d + 2 * j - k, j), gi))
        g.append(acc if k <= d else 0)
    return tuple(g[1:])


def _check_b(field: FieldSpec, b: Sequence[int], ell: int) -> None:
    if len(b) != ell + 1:
        raise ValueError(f"b must have length l+1 = {ell + 1}")
    if b[0] == 0:
        raise ValueError("psi needs b_0 != 0")


def psi_map(field: FieldSpec, b: Sequence[int], a: Sequence[int]) -> tuple[int, ...]:
    """Leading coefficients of ``h h* / h(0)`` from the leading ``a`` and ending ``b`` of h."""
    ell = len(a)
    _check_b(field, b, ell)
    inv_b0 = field.inv(b[0])
    out = []
    for k in range(1, ell + 1):
        acc = field.add(a[k - 1], field.mul(inv_b0, b[k]))
        conv = 0
        for j in range(1, k):
            conv = field.add(conv, field.mul(a[j - 1], b[k - j]))
        out.append(field.add(acc, field.mul(inv_b0, conv)))
    return tuple(out)


def psi_inverse(field: FieldSpec, b: Sequence[int], c: Sequence[int]) -> tuple[int, ...]:
    ell = len(c)
    _check_b(field, b, ell)
    inv_b0 = field.inv(b[0])
    a: list[int] = []
    for k in range(1, ell + 1):
        conv = b[k]
        for j in range(1, k):
            conv = field.add(conv, field.mul(a[j - 1], b[k - j]))
        a.append(field.sub(c[k - 1], field.mul(inv_b0, conv)))
    return tuple(a)


# -- the general engine --------------------------------------------------------------


@dataclass(frozen=True)
class SrimQuery:
    field: FieldSpec
    n: int
    leading: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "leading", tuple(int(c) for c in self.leading))
        if self.n < 1:
            raise ValueError("half-degree n must be >= 1")
        for c in self.leading:
            self.field._check(c)

    @property
    def ell(self) -> int:
        return len(self.leading)


def palindrome_from_g(field: FieldSpec, g: Poly) -> Poly:
    """``x^n g(x + 1/x)`` for g of degree n."""
    n = g.degree
    x2p1 = Poly(field, (1, 0, 1))
    total = Poly(field, ())
    power = Poly(field, (1,))
    for i in range(n + 1):
        if g.coeff(i):
            term = Poly.monomial(field, n - i, g.coeff(i)) * power
            total = total + term
        power = power * x2p1
    return total


def srim_direct(field: FieldSpec, n: int, leading: Sequence[int]) -> int:
    """Count by enumerating g and testing ``x^n g(x + 1/x)`` for irreducibility."""
    leading = tuple(leading)
    ell = len(leading)
    if ell <= n:
        candidates = enumerate_monic(field, n, leading=phi_inverse(field, n, leading))
    else:
        candidates = enumerate_monic(field, n)
    count = 0
    for g in candidates:
        f = palindrome_from_g(field, g)
        if leading_coeffs(f, ell) == leading and is_irreducible(f):
            count += 1
    return count


def S_count(
    query: SrimQuery,
    *,
    tol: float | None = None,
    groups: Mapping[tuple[int, int], GroupStructure] | None = None,
) -> CountResult:
    """Exact S_q(n; c) through the g / h h* decomposition.

    ``groups`` may supply a specific basis for E^{l,0} or E^{l,l+1}; counts do
    not depend on it.  Instances with ``n = 1`` or ``2l > n`` are counted by
    direct enumeration.
    """
    tol = default_tolerance() if tol is None else tol
    memo: dict[tuple[int, tuple[int, ...]], tuple[int, float]] = {}
    count, residual = _S(query.field, query.n, query.leading, tol, groups or {}, memo)
    return CountResult(count, residual)


def _group(field, ell, t, groups) -> GroupStructure:
    return groups.get((ell, t)) or default_group(field, ell, t)


def _S(field, n, c, tol, groups, memo) -> tuple[int, float]:
    key = (n, c)
    if key in memo:
        return memo[key]
    ell = len(c)
    if ell == 0:
        memo[key] = (S_total(field, n).count, 0.0)
        return memo[key]
    if n == 1 or 2 * ell > n:
        memo[key] = (srim_direct(field, n, c), 0.0)
        return memo[key]
    q = field.q
    G0 = _group(field, ell, 0, groups)
    G1 = _group(field, ell, ell + 1, groups)
    I0, r0 = I_count_all(G0, n, tol)
    I1, r1 = I_count_all(G1, n, tol)
    residual = max(r0, r1)

    from_g = int(I0[G0.index_of(ClassLabel(phi_inverse(field, n, c), ()))])
    from_pairs = 0
    for b in itertools.product(range(1, q), *[range(q)] * ell):
        a = psi_inverse(field, b, c)
        from_pairs += int(I1[G1.index_of(ClassLabel(a, b))])
    squares = 0
    if n % 2 == 0:
        for a in itertools.product(range(q), repeat=ell):
            if psi_map(field, (1,) + a, a) == c:
                s, r = _S(field, n // 2, a, tol, groups, memo)
                squares += s
                residual = max(residual, r)
    twice = 2 * from_g - from_pairs + squares
    if twice % 2 or twice < 0:
        raise AssertionError(f"S_{q}({n}; {c}) came out as {twice}/2")
    memo[key] = (twice // 2, residual)
    return memo[key]


def S_total(field: FieldSpec, n: int) -> CountResult:
    """Number of self-reciprocal irreducible monic polynomials of degree 2n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    q = field.q
    if n & (n - 1) == 0:
        return _exact_count(q**n + (q % 2 == 0) - 1, 2 * n, f"S_{q}({n})")
    total = sum(mobius(j) * q ** (n // j) for j in divisors(n) if j % 2)
    return _exact_count(total, 2 * n, f"S_{q}({n})")


def S_total_recursive(field: FieldSpec, n: int) -> CountResult:
    """S_q(n) = S_q(n/2)/2 + I_q(n)/2 for even n, odd n reduced to I_q."""
    q = field.q
    if n == 1:
        return CountResult((q - 1) // 2 if q % 2 else q // 2)
    half = S_total_recursive(field, n // 2).count if n % 2 == 0 else 0
    return _exact_count(half + I_total(field, n).count, 2, f"S_{q}({n})")


# -- closed forms for q = 2 and q = 3 ------------------------------------------------


def S2_trace(n: int, a: int, tol: float | None = None) -> CountResult:
    """S_2(n; a) from the cosine closed form."""
    if n < 1 or a not in (0, 1):
        raise ValueError("S2_trace needs n >= 1 and a in {0, 1}")
    sign = 1 if a == 1 else -1
    total = 0.0
    for j in divisors(n):
        if j % 2 == 0 or mobius(j) == 0:
            continue
        m = n // j
        osc = (-1) ** m * 2 ** (m / 2 + 1) * math.cos(m * THETA)
        total += mobius(j) * (2**m + sign - sign * osc)
    (count,), res = round_checked(np.array([total / (4 * n)]), tol, f"S_2({n}; {a})")
    return CountResult(int(count), res)


def F3_class(n: int, t1: int, t2: int) -> float:
    """F_3(n; xi_1^t1 xi_2^t2) in the reference basis, conjugate pairs combined."""
    pi = math.pi
    r = 3 ** (n / 2)
    h = n * pi / 2
    val = (3**n - 1) / 18
    val -= (math.cos(2 * pi * (t1 + 2 * t2) / 3) + math.cos(2 * pi * t1 / 3)) / 9
    val -= r * math.cos((2 * t1 + t2) * pi / 3 + h) / 9
    val -= 2 * r * math.cos(2 * (t1 + t2) * pi / 3) * math.cos(n * THETA1) / 9
    val -= r * (-1) ** t2 * math.cos(2 * t1 * pi / 3 + h) / 9
    val -= r * math.cos((2 * n - 2 * t1 + t2) * pi / 3 + h) / 9
    val -= r * math.cos((-2 * n - 2 * t1 + t2) * pi / 3 + h) / 9
    if n % 2 == 0:
        val -= 2 * r * (-1) ** (n // 2) * math.cos(t2 * pi / 3) / 9
    val -= 2 * r * (-1) ** n * math.cos(2 * t2 * pi / 3) * math.cos(n * THETA2) / 9
    return val


def I3_class(n: int, e1: int, e2: int) -> float:
    """I_3(n; xi_1^e1 xi_2^e2) by splitting k | n into residue classes mod 6."""
    total = 0.0
    for k, mu in squarefree_divisors(n):
        m = n // k
        res = k % 6
        if res == 0:
            if e1 == 0 and e2 == 0:
                total += mu * (3**m - 1)
        elif res == 1:
            total += mu * F3_class(m, e1, e2)
        elif res == 5:
            total += mu * F3_class(m, -e1 % 3, -e2 % 6)
        elif res == 2:
            if e2 % 2 == 0:
                total += mu * sum(F3_class(m, -e1 % 3, e2 // 2 + s) for s in (0, 3))
        elif res == 4:
            if e2 % 2 == 0:
                # the exponent is -e2/2 here; +e2/2 leaves a non-integer total
                total += mu * sum(F3_class(m, e1, (-e2 // 2) % 3 + s) for s in (0, 3))
        elif res == 3:
            if e1 == 0 and e2 % 3 == 0:
                total += mu * sum(
                    F3_class(m, s1, e2 // 3 + 2 * s2) for s1 in range(3) for s2 in range(3)
                )
    return total / n


def _S3_zero(n: int, tol: float) -> tuple[int, float]:
    if n == 1:
        return srim_direct(F3, 1, (0,)), 0.0
    half, residual = (0, 0.0)
    if n % 2 == 0:
        half, residual = _S3_zero(n // 2, tol)
    named = [(0, 0), (0, 3), (2, 4), (1, 5), (1, 2), (2, 1)]
    values = np.array([I3_class(n, e1, e2) for e1, e2 in named])
    counts, res = round_checked(values, tol, f"I_3({n}; .)")
    twice = half + 2 * I_trace(F3, n, 0).count - int(counts.sum())
    if twice % 2:
        raise AssertionError(f"S_3({n}; 0) came out as {twice}/2")
    return twice // 2, max(residual, res)


def S3_trace(n: int, a: int, tol: float | None = None) -> CountResult:
    """S_3(n; a) from the closed-form F_3 / I_3 expressions; traces 1 and 2 agree."""
    if n < 1 or a not in (0, 1, 2):
        raise ValueError("S3_trace needs n >= 1 and a in {0, 1, 2}")
    tol = default_tolerance() if tol is None else tol
    zero, residual = _S3_zero(n, tol)
    if a == 0:
        return CountResult(zero, residual)
    rest = S_total(F3, n).count - zero
    if rest % 2:
        raise AssertionError(f"S_3({n}) - S_3({n}; 0) is odd")
    return CountResult(rest // 2, residual)


def I2_xi_power(n: int, t: int) -> float:
    """I_2(n; xi^t) in E^{2,0} with xi = <x+1>."""
    total = 0.0
    for k, mu in squarefree_divisors(n):
        m = n // k
        if k % 4 == 0:
            if t == 0:
                total += mu * 2**m
        elif k % 4 == 2:
            if t % 2 == 0:
                total += mu * 2 ** (m - 1)
        else:
            sgn = -1 if k % 4 == 1 else 1
            total += mu * (
                2 ** (m - 2)
                - (-1) ** m * 2 ** (m / 2 - 1) * math.cos((m + sgn * 2 * t) * math.pi / 4)
            )
    return total / n


_E23_FACTORS = {
    "a": [1, 1j, -(1 + 1j)],
    "b": [1, 1j, -(1 + 1j), 2 * (1 - 1j)],
    "c": [1, -1, 0, -2j, 4j],
    "d": [1, 1, 2, 2, 4],
    "e": [1, 1, 2],
}


@lru_cache(maxsize=None)
def _e23_power_sums(nmax: int) -> dict[str, np.ndarray]:
    return {k: power_sums(np.array(v, dtype=np.complex128), nmax) for k, v in _E23_FACTORS.items()}


def F2_class(n: int, s1: int, s2: int) -> float:
    """F_2(n; xi_1^s1 xi_2^s2) in E^{2,3}; n [z^n] ln P equals minus the n-th power sum."""
    ps = {k: v[n] for k, v in _e23_power_sums(max(n, 32)).items()}
    i = 1j
    val = (2**n - 1) / 16 - ((-1) ** (s1 + s2) + (-1) ** s1) / 16
    val -= ((i ** (-s1 - s2) + i ** (-s1)) * ps["a"]).real / 8
    val -= ((i ** (-s1 - 2 * s2) + i ** (-s1 - 3 * s2)) * ps["b"]).real / 8
    val -= ((-1) ** s1 * i ** (-s2) * ps["c"]).real / 8
    val -= math.cos(math.pi * s2 / 2) * ps["d"].real / 8
    val -= (-1) ** s2 * ps["e"].real / 16
    return val


def I2_pair(n: int, e1: int, e2: int) -> float:
    total = 0.0
    for k, mu in squarefree_divisors(n):
        m = n // k
        if k % 4 == 0:
            if e1 == e2 == 0:
                total += mu * (2**m - 1)
        elif k % 4 == 1:
            total += mu * F2_class(m, e1, e2)
        elif k % 4 == 3:
            total += mu * F2_class(m, -e1 % 4, -e2 % 4)
        elif e1 % 2 == 0 and e2 % 2 == 0:
            total += mu * sum(
                F2_class(m, e1 // 2 + s1, e2 // 2 + s2) for s1 in (0, 2) for s2 in (0, 2)
            )
    return total / n


# For each (a1, a2): the E^{2,0} exponent used for even / odd n, and the four
# E^{2,3} classes (xi_1, xi_2 exponents) whose counts are halved and subtracted.
_S2_TWO_TERMS = {
    (0, 0): (0, 2, [(0, 0), (2, 0), (3, 2), (1, 2)]),
    (0, 1): (2, 0, [(0, 2), (2, 2), (1, 0), (3, 0)]),
    (1, 0): (1, 3, [(1, 3), (3, 3), (0, 1), (2, 1)]),
    (1, 1): (3, 1, [(3, 1), (1, 1), (2, 3), (0, 3)]),
}


def S2_two(n: int, a1: int, a2: int, tol: float | None = None) -> CountResult:
    """S_2(n; a1, a2) from the closed forms for E^{2,0} and E^{2,3}."""
    if n < 1 or a1 not in (0, 1) or a2 not in (0, 1):
        raise ValueError("S2_two needs n >= 1 and bits a1, a2")
    tol = default_tolerance() if tol is None else tol
    if n == 1:
        return CountResult(srim_direct(F2, 1, (a1, a2)))
    even_t, odd_t, pairs = _S2_TWO_TERMS[(a1, a2)]
    values = np.array([I2_xi_power(n, even_t if n % 2 == 0 else odd_t)] + [I2_pair(n, *e) for e in pairs])
    counts, residual = round_checked(values, tol, f"S_2({n}; {a1}, {a2})")
    twice = 2 * int(counts[0]) - int(counts[1:].sum())
    if a1 == 0 and n % 2 == 0:
        half = S2_trace(n // 2, a2, tol)
        twice += half.count
        residual = max(residual, half.residual)
    if twice % 2:
        raise AssertionError(f"S_2({n}; {a1}, {a2}) came out as {twice}/2")
    return CountResult(twice // 2, residual)


# -- bounds ----------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    """Error bounds around ``q^(n-l) / 2n``.

    ``cohen_lower`` / ``cohen_upper`` hold two entries each: the interval for
    I_q(n; a) with l leading coefficients, then the interval for
    I_q(n; a, b) with l leading and l+1 ending coefficients.
    """

    q: int
    n: int
    ell: int
    lower: float
    upper: float
    positivity_ell: int
    cohen_lower: tuple[float, float]
    cohen_upper: tuple[float, float]

    def contains(self, value: float) -> bool:
        return self.lower < value < self.upper

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "ell": self.ell,
            "lower": self.lower,
            "upper": self.upper,
            "positivity_ell": self.positivity_ell,
            "cohen_lower": list(self.cohen_lower),
            "cohen_upper": list(self.cohen_upper),
        }


def positivity_ell(q: int, n: int) -> int:
    """Largest l with l <= n/4 - log_q(q n / 2) / 2."""
    return math.floor(n / 4 - math.log(q * n / 2, q) / 2)


def bounds(field: FieldSpec, n: int, ell: int) -> BoundsReport:
    if not 1 <= ell <= n / 2:
        raise ValueError(f"bounds need 1 <= l <= n/2, got l = {ell}, n = {n}")
    q = field.q
    centre = q ** (n - ell) / (2 * n)
    root = q ** (n / 2)
    lower = centre - ell / n * q ** (ell + 1) * root
    upper = centre + (ell + 1) / n * q ** (ell + 1) * root
    lead_mid = q ** (n - ell) / n
    both_mid = q ** (-2 * ell) * (q**n - 1) / (n * (q - 1))
    return BoundsReport(
        q=q,
        n=n,
        ell=ell,
        lower=lower,
        upper=upper,
        positivity_ell=positivity_ell(q, n),
        cohen_lower=(lead_mid - (ell + 1) / n * root, both_mid - (2 * ell + 2) / n * root),
        cohen_upper=(lead_mid + (ell - 1) / n * root, both_mid + 2 * ell / n * root),
    )
