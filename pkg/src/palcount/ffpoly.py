"""Finite fields F_q and dense polynomials over them.

A field element is encoded as an integer code in ``[0, q)``.  The base-p
digits of the code (least significant first) are its coordinates in the basis
``1, a, a^2, ...`` where ``a`` is a root of the field modulus; in a prime field
the code is simply the residue.  Integers embed through ``code = m % p``.

Polynomials store codes ascending from the constant term.  The zero
polynomial is the empty tuple and has degree -1.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .arith import is_prime, prime_factors, prime_power

MAX_ORDER = 2**16
_TABLE_LIMIT = 1024


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q with q = p**r.

    For ``r > 1`` the modulus is a monic irreducible polynomial of degree r over
    F_p, given ascending.  When omitted, the lexicographically first monic
    irreducible of degree r is used.
    """

    p: int
    r: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.r < 1:
            raise ValueError(f"extension degree must be >= 1, got {self.r}")
        if self.p**self.r > MAX_ORDER:
            raise ValueError(f"fields with q > {MAX_ORDER} are not supported")
        if self.r == 1:
            if self.modulus is not None:
                raise ValueError("a prime field takes no modulus")
            return
        if self.modulus is None:
            object.__setattr__(self, "modulus", _first_irreducible(self.p, self.r))
            return
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != self.r + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.r}")
        if any(not 0 <= c < self.p for c in mod):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not is_irreducible(Poly(FieldSpec(self.p), mod)):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def of_order(cls, q: int, modulus: Sequence[int] | None = None) -> "FieldSpec":
        p, r = prime_power(q)
        return cls(p, r, tuple(modulus) if modulus is not None else None)

    @property
    def q(self) -> int:
        return self.p**self.r

    def __str__(self) -> str:
        return f"F_{self.q}"

    # -- scalar arithmetic on codes --------------------------------------

    def element(self, value: int | Sequence[int]) -> "FieldElement":
        if isinstance(value, int):
            self._check(value)
            return FieldElement(self, value)
        return FieldElement(self, self.from_coords(value))

    def from_int(self, m: int) -> int:
        return m % self.p

    def coords(self, a: int) -> tuple[int, ...]:
        self._check(a)
        out = []
        for _ in range(self.r):
            a, d = divmod(a, self.p)
            out.append(d)
        return tuple(out)

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.r:
            raise ValueError(f"expected {self.r} coordinates, got {len(coords)}")
        code = 0
        for c in reversed(coords):
            code = code * self.p + int(c) % self.p
        return code

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element code of {self}")

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        return self._add_rows[a][b]

    def neg(self, a: int) -> int:
        if self.r == 1:
            return -a % self.p
        return self.from_coords([-c for c in self.coords(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        if self.q <= _TABLE_LIMIT:
            return self._mul_rows[a][b]
        return self._ext_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _ext_mul(self, a: int, b: int) -> int:
        p, mod = self.p, self.modulus
        x, y = self.coords(a), self.coords(b)
        prod = [0] * (2 * self.r - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        for k in range(len(prod) - 1, self.r - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(self.r + 1):
                    prod[k - self.r + i] -= c * mod[i]
        return self.from_coords(prod[: self.r])

    @cached_property
    def _add_table(self) -> np.ndarray:
        digits = np.array([self.coords(a) for a in range(self.q)], dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.r, dtype=np.int64)
        return summed @ weights

    @cached_property
    def _add_rows(self) -> list[list[int]]:
        return self._add_table.tolist()

    @cached_property
    def _mul_table(self) -> np.ndarray:
        table = np.zeros((self.q, self.q), dtype=np.int64)
        for a in range(1, self.q):
            for b in range(a, self.q):
                table[a, b] = table[b, a] = self._ext_mul(a, b)
        return table

    @cached_property
    def _mul_rows(self) -> list[list[int]]:
        return self._mul_table.tolist()

    # -- vectorised arithmetic on code arrays ----------------------------

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.r == 1:
            return (a + b) % self.p
        return self._add_table[a, b]

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.r == 1:
            return (a * b) % self.p
        if self.q > _TABLE_LIMIT:
            return np.vectorize(self._ext_mul, otypes=[np.int64])(a, b)
        return self._mul_table[a, b]


def _first_irreducible(p: int, r: int) -> tuple[int, ...]:
    base = FieldSpec(p)
    for f in enumerate_monic(base, r):
        if is_irreducible(f):
            return f.coeffs
    raise AssertionError("every degree has an irreducible polynomial")


@dataclass(frozen=True)
class FieldElement:
    """A value of F_q together with its field, for arithmetic by operators."""

    field: FieldSpec
    value: int

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field.coords(self.value)

    def _other(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field.from_int(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value


# -- list-level polynomial kernels (codes, ascending) ----------------------


def _add(F: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    if F.r == 1:
        return _trim([(x + y) % F.p for x, y in zip(a, b)])
    return _trim([F.add(x, y) for x, y in zip(a, b)])


def _sub(F: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    return _add(F, a, [F.neg(y) for y in b])


def _mul(F: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    if F.r == 1:
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim([c % F.p for c in out])
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def _divmod(F: FieldSpec, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    inv_lead = F.inv(b[-1])
    quot = [0] * (len(a) - db)
    prime = F.r == 1
    p = F.p
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        c = F.mul(c, inv_lead)
        quot[k - db] = c
        off = k - db
        if prime:
            for i, y in enumerate(b):
                a[off + i] = (a[off + i] - c * y) % p
        else:
            for i, y in enumerate(b):
                a[off + i] = F.sub(a[off + i], F.mul(c, y))
    return _trim(quot), _trim(a[:db])


def _mod(F: FieldSpec, a: list[int], m: list[int]) -> list[int]:
    return _divmod(F, a, m)[1]


def _gcd(F: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _mod(F, a, b)
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def _powmod(F: FieldSpec, base: list[int], e: int, m: list[int]) -> list[int]:
    result = [1]
    base = _mod(F, base, m)
    while e:
        if e & 1:
            result = _mod(F, _mul(F, result, base), m)
        e >>= 1
        if e:
            base = _mod(F, _mul(F, base, base), m)
    return result


@dataclass(frozen=True)
class Poly:
    """Polynomial over a FieldSpec with coefficient codes ascending from x^0."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = [int(v) for v in self.coeffs]
        for v in c:
            self.field._check(v)
        object.__setattr__(self, "coeffs", tuple(_trim(c)))

    @classmethod
    def monomial(cls, field: FieldSpec, k: int, coeff: int = 1) -> "Poly":
        return cls(field, (0,) * k + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def _same(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        return Poly(self.field, _add(self.field, list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other: "Poly") -> "Poly":
        self._same(other)
        return Poly(self.field, _sub(self.field, list(self.coeffs), list(other.coeffs)))

    def __neg__(self) -> "Poly":
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __pow__(self, e: int) -> "Poly":
        result = Poly(self.field, (1,))
        for _ in range(e):
            result = result * self
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._same(other)
        q, r = _divmod(self.field, list(self.coeffs), list(other.coeffs))
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.field.add(self.field.mul(acc, a), c)
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c == 1 and mono:
                terms.append(mono)
            elif mono:
                terms.append(f"{c}*{mono}")
            else:
                terms.append(str(c))
        return " + ".join(terms)


def poly_mul(f: Poly, g: Poly) -> Poly:
    f._same(g)
    return Poly(f.field, _mul(f.field, list(f.coeffs), list(g.coeffs)))


def poly_gcd(f: Poly, g: Poly) -> Poly:
    f._same(g)
    return Poly(f.field, _gcd(f.field, list(f.coeffs), list(g.coeffs)))


def _require_monic(f: Poly, what: str) -> None:
    if not f.is_monic():
        raise ValueError(f"{what} needs a monic polynomial, got {f}")


def reciprocal(f: Poly) -> Poly:
    """``x^deg(f) f(1/x)``: the reversed coefficient vector."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no reciprocal")
    return Poly(f.field, f.coeffs[::-1])


def is_self_reciprocal(f: Poly) -> bool:
    _require_monic(f, "is_self_reciprocal")
    return f.coeffs == f.coeffs[::-1]


def is_irreducible(f: Poly) -> bool:
    """Rabin's test.

    A monic f of degree d is irreducible iff x^(q^d) = x mod f and
    gcd(x^(q^(d/s)) - x, f) = 1 for every prime s dividing d.
    """
    _require_monic(f, "is_irreducible")
    d = f.degree
    if d < 1:
        raise ValueError("is_irreducible needs degree >= 1")
    if d == 1:
        return True
    F, m = f.field, list(f.coeffs)
    x = [0, 1]
    frob = [x]
    h = x
    for _ in range(d):
        h = _powmod(F, h, F.q, m)
        frob.append(h)
    if _sub(F, frob[d], x):
        return False
    for s in prime_factors(d):
        if len(_gcd(F, _sub(F, frob[d // s], x), m)) > 1:
            return False
    return True


def enumerate_monic(
    field: FieldSpec,
    d: int,
    leading: Sequence[int] | None = None,
    ending: Sequence[int] | None = None,
) -> Iterator[Poly]:
    """Monic degree-d polynomials with fixed top and bottom coefficient windows.

    ``leading[j-1]`` is the coefficient of ``x^(d-j)`` and ``ending[j]`` that of
    ``x^j``.  Free coefficients run lexicographically, highest power first.
    """
    leading = tuple(leading or ())
    ending = tuple(ending or ())
    if len(leading) > d or len(ending) > d:
        raise ValueError(f"constraint vector longer than the degree {d}")
    if len(leading) + len(ending) > d:
        raise ValueError(
            f"leading ({len(leading)}) and ending ({len(ending)}) windows overlap at degree {d}"
        )
    for v in leading + ending:
        field._check(v)
    top = list(reversed(leading)) + [1]
    bottom = list(ending)
    for combo in itertools.product(range(field.q), repeat=d - len(leading) - len(ending)):
        yield Poly(field, bottom + list(reversed(combo)) + top)


def leading_coeffs(f: Poly, ell: int) -> tuple[int, ...]:
    """``([x^(deg-1)]f, ..., [x^(deg-ell)]f)`` with out-of-range positions read as 0."""
    _require_monic(f, "leading_coeffs")
    d = f.degree
    return tuple(f.coeff(d - j) for j in range(1, ell + 1))


def ending_coeffs(f: Poly, t: int) -> tuple[int, ...]:
    _require_monic(f, "ending_coeffs")
    return tuple(f.coeff(j) for j in range(t))


def parse_poly(text: str, field: FieldSpec) -> Poly:
    """Parse a literal: a JSON array ascending from x^0, or a digit string
    written highest power first (prime fields with p <= 9 only)."""
    text = text.strip()
    if text.startswith("["):
        values = json.loads(text)
        if not all(isinstance(v, int) for v in values):
            raise ValueError(f"polynomial array must hold integers: {text}")
        return Poly(field, values)
    if field.r != 1 or field.p > 9:
        raise ValueError("digit-string literals need a prime field with p <= 9")
    if not text.isdigit():
        raise ValueError(f"bad polynomial literal {text!r}")
    digits = [int(ch) for ch in text]
    if any(v >= field.p for v in digits):
        raise ValueError(f"digit out of range for F_{field.p}: {text!r}")
    return Poly(field, digits[::-1])


def format_poly(f: Poly) -> str:
    if f.field.r == 1 and f.field.p <= 9 and not f.is_zero():
        return "".join(str(c) for c in reversed(f.coeffs))
    return json.dumps(list(f.coeffs))
