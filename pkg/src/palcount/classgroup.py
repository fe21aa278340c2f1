"""The group E^{l,t} of coefficient-window classes and its cyclic decomposition.

Two monic polynomials are equivalent when their top ``l`` coefficients below
the leading one and their bottom ``t`` coefficients agree.  The classes form an
abelian group under multiplication of representatives (for ``t > 0`` only
polynomials with nonzero constant term are classified).

Labels are stored as a *digit row* ``(a_1..a_l, b_0..b_{t-1})`` of field codes.
They are numbered in lexicographic order of that row, with the
constant-term digit ranging over the nonzero codes only.  The product of two
classes is computed directly from the windows: the top window multiplies as
a truncated series in ``1/x``, the bottom window as a truncated series in
``x``.  This is what multiplying canonical representatives of degree
``l + t`` would give, without building them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .arith import factorize
from .errors import SearchSpaceError
from .ffpoly import FieldSpec, Poly, ending_coeffs, leading_coeffs

MAX_GROUP_ORDER = 10**6


@dataclass(frozen=True)
class ClassLabel:
    leading: tuple[int, ...]
    ending: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "leading", tuple(int(v) for v in self.leading))
        object.__setattr__(self, "ending", tuple(int(v) for v in self.ending))
        if self.ending and self.ending[0] == 0:
            raise ValueError("a class with ending coefficients needs a nonzero constant term")

    @property
    def ell(self) -> int:
        return len(self.leading)

    @property
    def t(self) -> int:
        return len(self.ending)

    def to_json(self) -> dict:
        return {"leading": list(self.leading), "ending": list(self.ending)}

    @classmethod
    def from_json(cls, data: dict | str) -> "ClassLabel":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["leading"]), tuple(data["ending"]))


def group_order(q: int, ell: int, t: int) -> int:
    """|E^{l,t}| = (q - [t>0]) q^(l+t-1)."""
    if ell + t == 0:
        return 1
    return (q - (t > 0)) * q ** (ell + t - 1)


def identity_label(ell: int, t: int) -> ClassLabel:
    return ClassLabel((0,) * ell, (1,) + (0,) * (t - 1) if t else ())


def class_of(f: Poly, ell: int, t: int) -> ClassLabel:
    if t > 0 and f.coeff(0) == 0:
        raise ValueError(f"{f} has zero constant term; it has no class when t > 0")
    if f.degree < 1:
        raise ValueError("class_of needs a polynomial of degree >= 1")
    return ClassLabel(leading_coeffs(f, ell), ending_coeffs(f, t))


# -- vectorised window arithmetic ------------------------------------------


def _mul_rows(field: FieldSpec, ell: int, t: int, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of label digit rows, broadcasting over leading axes."""
    A, B = np.broadcast_arrays(A, B)
    out = np.empty(A.shape, dtype=np.int64)
    for k in range(ell):
        acc = field.vadd(A[..., k], B[..., k])
        for j in range(k):
            # a_{j+1} * b_{k-j}
            acc = field.vadd(acc, field.vmul(A[..., j], B[..., k - j - 1]))
        out[..., k] = acc
    for k in range(t):
        acc = field.vmul(A[..., ell], B[..., ell + k])
        for j in range(1, k + 1):
            acc = field.vadd(acc, field.vmul(A[..., ell + j], B[..., ell + k - j]))
        out[..., ell + k] = acc
    return out


def _pow_rows(field: FieldSpec, ell: int, t: int, A: np.ndarray, k: int) -> np.ndarray:
    ident = np.array(_identity_row(ell, t), dtype=np.int64)
    result = np.broadcast_to(ident, A.shape).copy()
    base = A.copy()
    while k:
        if k & 1:
            result = _mul_rows(field, ell, t, result, base)
        k >>= 1
        if k:
            base = _mul_rows(field, ell, t, base, base)
    return result


def _identity_row(ell: int, t: int) -> tuple[int, ...]:
    lab = identity_label(ell, t)
    return lab.leading + lab.ending


def _dims(q: int, ell: int, t: int) -> tuple[int, ...]:
    return (q,) * ell + ((q - 1,) + (q,) * (t - 1) if t else ())


def rows_to_index(q: int, ell: int, t: int, rows: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    if ell + t == 0:
        return np.zeros(rows.shape[:-1], dtype=np.int64)
    digits = rows.copy()
    if t:
        digits[..., ell] -= 1
    idx = np.zeros(rows.shape[:-1], dtype=np.int64)
    for base, col in zip(_dims(q, ell, t), np.moveaxis(digits, -1, 0)):
        idx = idx * base + col
    return idx


def index_to_rows(q: int, ell: int, t: int, idx: np.ndarray) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    dims = _dims(q, ell, t)
    out = np.empty(idx.shape + (len(dims),), dtype=np.int64)
    rest = idx.copy()
    for pos in range(len(dims) - 1, -1, -1):
        rest, out[..., pos] = np.divmod(rest, dims[pos])
    if t:
        out[..., ell] += 1
    return out


def window_rows(field: FieldSpec, coeffs: np.ndarray, ell: int, t: int) -> np.ndarray:
    """Label digit rows of monic polynomials given as an (N, d+1) ascending coefficient array."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    d = coeffs.shape[1] - 1
    cols = []
    for j in range(1, ell + 1):
        cols.append(coeffs[:, d - j] if d - j >= 0 else np.zeros(len(coeffs), dtype=np.int64))
    for j in range(t):
        cols.append(coeffs[:, j] if j <= d else np.zeros(len(coeffs), dtype=np.int64))
    if not cols:
        return np.zeros((len(coeffs), 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def _check_label(field: FieldSpec, ell: int, t: int, eps: ClassLabel) -> None:
    if eps.ell != ell or eps.t != t:
        raise ValueError(f"label has (l, t) = ({eps.ell}, {eps.t}), expected ({ell}, {t})")
    for v in eps.leading + eps.ending:
        field._check(v)


def _label_of_row(row: Sequence[int], ell: int) -> ClassLabel:
    row = [int(v) for v in row]
    return ClassLabel(tuple(row[:ell]), tuple(row[ell:]))


def class_mul(field: FieldSpec, eps: ClassLabel, other: ClassLabel) -> ClassLabel:
    if (eps.ell, eps.t) != (other.ell, other.t):
        raise ValueError("labels come from different groups")
    ell, t = eps.ell, eps.t
    _check_label(field, ell, t, eps)
    _check_label(field, ell, t, other)
    a = np.array(eps.leading + eps.ending, dtype=np.int64)
    b = np.array(other.leading + other.ending, dtype=np.int64)
    return _label_of_row(_mul_rows(field, ell, t, a, b), ell)


def class_pow(field: FieldSpec, eps: ClassLabel, k: int) -> ClassLabel:
    if k < 0:
        return class_pow(field, class_inv(field, eps), -k)
    _check_label(field, eps.ell, eps.t, eps)
    row = np.array(eps.leading + eps.ending, dtype=np.int64)
    return _label_of_row(_pow_rows(field, eps.ell, eps.t, row, k), eps.ell)


def class_inv(field: FieldSpec, eps: ClassLabel) -> ClassLabel:
    return class_pow(field, eps, group_order(field.q, eps.ell, eps.t) - 1)


# -- decomposition ------------------------------------------------------------


class GroupStructure:
    """E^{l,t} with a basis of cyclic generators and its exponent tables.

    ``exponents[i]`` is the exponent vector of the label with index ``i``;
    ``grid[e]`` is the label index of ``prod xi_j^e_j``.  Orders are listed
    ascending, each dividing the next when the basis comes from
    :func:`decompose` without override.
    """

    def __init__(self, field, ell, t, generators, orders, grid):
        self.field: FieldSpec = field
        self.ell: int = ell
        self.t: int = t
        self.generators: tuple[ClassLabel, ...] = tuple(generators)
        self.orders: tuple[int, ...] = tuple(int(r) for r in orders)
        self.order: int = group_order(field.q, ell, t)
        grid = np.asarray(grid, dtype=np.int64).reshape(self.orders)
        grid.setflags(write=False)
        self.grid = grid
        exps = np.empty((self.order, len(self.orders)), dtype=np.int64)
        exps[grid.ravel()] = np.stack(np.unravel_index(np.arange(self.order), self.orders), axis=1) \
            if self.orders else np.zeros((self.order, 0), dtype=np.int64)
        exps.setflags(write=False)
        self.exponents = exps
        # charsum keeps its per-group memo here
        self.memo: dict = {}

    def __repr__(self) -> str:
        return f"GroupStructure(q={self.field.q}, l={self.ell}, t={self.t}, orders={list(self.orders)})"

    @property
    def identity(self) -> ClassLabel:
        return identity_label(self.ell, self.t)

    def index_of(self, eps: ClassLabel) -> int:
        _check_label(self.field, self.ell, self.t, eps)
        return int(rows_to_index(self.field.q, self.ell, self.t, np.array(eps.leading + eps.ending)))

    def label_at(self, index: int) -> ClassLabel:
        if not 0 <= index < self.order:
            raise IndexError(index)
        return _label_of_row(index_to_rows(self.field.q, self.ell, self.t, np.array(index)), self.ell)

    def labels(self) -> list[ClassLabel]:
        return [self.label_at(i) for i in range(self.order)]

    def label_of_exponent(self, e: Sequence[int]) -> ClassLabel:
        e = tuple(int(x) % r for x, r in zip(e, self.orders))
        return self.label_at(int(self.grid[e]) if e else 0)

    def mul(self, a: ClassLabel, b: ClassLabel) -> ClassLabel:
        return class_mul(self.field, a, b)

    def to_json(self) -> dict:
        return {
            "q": self.field.q,
            "ell": self.ell,
            "t": self.t,
            "order": self.order,
            "orders": list(self.orders),
            "generators": [g.to_json() for g in self.generators],
        }


def all_rows(field: FieldSpec, ell: int, t: int) -> np.ndarray:
    n = group_order(field.q, ell, t)
    return index_to_rows(field.q, ell, t, np.arange(n))


def _orders_of(field, ell, t, rows, n) -> np.ndarray:
    """Element orders, computed prime by prime from ``n = |E|``."""
    ident = np.array(_identity_row(ell, t), dtype=np.int64)
    orders = np.ones(len(rows), dtype=np.int64)
    for p, a in factorize(n).items() if n > 1 else []:
        y = _pow_rows(field, ell, t, rows, n // p**a)
        for _ in range(a):
            not_one = ~np.all(y == ident, axis=-1)
            if not not_one.any():
                break
            orders[not_one] *= p
            y = _pow_rows(field, ell, t, y, p)
    return orders


def _primary_basis(field, ell, t, rows, orders, p, n):
    """Greedy basis of the p-primary part: repeatedly take the first element whose
    order is maximal modulo the subgroup built so far and meets it trivially."""
    q = field.q
    in_h = np.zeros(n, dtype=bool)
    in_h[rows_to_index(q, ell, t, np.array(_identity_row(ell, t)))] = True
    h_size = 1
    p_part = p ** factorize(n)[p]
    cand = np.flatnonzero(p_part % orders == 0)
    part_size = len(cand)
    basis = []
    while h_size < part_size:
        # quotient order of every candidate modulo H
        y = rows[cand]
        qord = np.ones(len(cand), dtype=np.int64)
        outside = ~in_h[rows_to_index(q, ell, t, y)]
        while outside.any():
            qord[outside] *= p
            y[outside] = _pow_rows(field, ell, t, y[outside], p)
            outside = ~in_h[rows_to_index(q, ell, t, y)]
        m = int(qord.max())
        ok = orders[cand] == m
        sub = _pow_rows(field, ell, t, rows[cand[ok]], m // p)
        ok_idx = cand[ok][~in_h[rows_to_index(q, ell, t, sub)]]
        g = int(ok_idx[0])
        h_idx = np.flatnonzero(in_h)
        h_rows = rows[h_idx]
        gp = rows[g].copy()
        for _ in range(1, m):
            in_h[rows_to_index(q, ell, t, _mul_rows(field, ell, t, h_rows, gp))] = True
            gp = _mul_rows(field, ell, t, gp, rows[g])
        h_size *= m
        if int(in_h.sum()) != h_size:
            raise AssertionError("greedy basis step failed to extend the subgroup directly")
        basis.append((m, g))
    return basis


def _exponent_grid(field, ell, t, gen_rows, orders) -> np.ndarray:
    grid_rows = np.array([_identity_row(ell, t)], dtype=np.int64)
    for g, r in zip(gen_rows, orders):
        powers = [np.array(_identity_row(ell, t), dtype=np.int64)]
        for _ in range(1, r):
            powers.append(_mul_rows(field, ell, t, powers[-1], g))
        P = np.stack(powers)
        grid_rows = _mul_rows(field, ell, t, grid_rows[:, None, :], P[None, :, :]).reshape(-1, ell + t)
    return rows_to_index(field.q, ell, t, grid_rows)


def decompose(
    field: FieldSpec,
    ell: int,
    t: int,
    generator_override: Sequence[Poly | ClassLabel] | None = None,
) -> GroupStructure:
    """Cyclic decomposition of E^{l,t} with a fully materialised exponent table.

    Without an override the basis is built deterministically: greedy bases of
    the primary components (scanning labels in lexicographic order) are merged
    into invariant factors, listed with ascending orders.  An override is
    accepted when its classes form an independent generating set.
    """
    if ell < 0 or t < 0:
        raise ValueError("window sizes must be non-negative")
    n = group_order(field.q, ell, t)
    if n > MAX_GROUP_ORDER:
        raise SearchSpaceError(f"|E^{{{ell},{t}}}| = {n} exceeds {MAX_GROUP_ORDER}")
    rows = all_rows(field, ell, t)
    orders = _orders_of(field, ell, t, rows, n)

    if generator_override is not None:
        labels = [
            g if isinstance(g, ClassLabel) else class_of(g, ell, t) for g in generator_override
        ]
        for lab in labels:
            _check_label(field, ell, t, lab)
        gen_rows = [np.array(lab.leading + lab.ending, dtype=np.int64) for lab in labels]
        gen_orders = [int(orders[rows_to_index(field.q, ell, t, g)]) for g in gen_rows]
        if math.prod(gen_orders) != n:
            raise ValueError(
                f"override orders {gen_orders} multiply to {math.prod(gen_orders)}, not |E| = {n}"
            )
        grid = _exponent_grid(field, ell, t, gen_rows, gen_orders)
        if len(np.unique(grid)) != n:
            raise ValueError("override classes are not independent generators of E")
        return GroupStructure(field, ell, t, labels, gen_orders, grid)

    factors_by_prime = []
    for p in sorted(factorize(n)) if n > 1 else []:
        basis = _primary_basis(field, ell, t, rows, orders, p, n)
        factors_by_prime.append(sorted(basis, key=lambda mg: (-mg[0], mg[1])))
    width = max((len(b) for b in factors_by_prime), default=0)
    gens, gen_orders = [], []
    for i in range(width):
        row = np.array(_identity_row(ell, t), dtype=np.int64)
        order = 1
        for basis in factors_by_prime:
            if i < len(basis):
                m, g = basis[i]
                row = _mul_rows(field, ell, t, row, rows[g])
                order *= m
        gens.append(row)
        gen_orders.append(order)
    gens.reverse()
    gen_orders.reverse()
    grid = _exponent_grid(field, ell, t, gens, gen_orders)
    if len(np.unique(grid)) != n:
        raise AssertionError("decomposition did not produce a basis")
    labels = [_label_of_row(g, ell) for g in gens]
    return GroupStructure(field, ell, t, labels, gen_orders, grid)


@lru_cache(maxsize=64)
def default_group(field: FieldSpec, ell: int, t: int) -> GroupStructure:
    """Memoised :func:`decompose` without override."""
    return decompose(field, ell, t)


def exponent_of(G: GroupStructure, eps: ClassLabel) -> tuple[int, ...]:
    return tuple(int(e) for e in G.exponents[G.index_of(eps)])


def degree_class_indices(G: GroupStructure, d: int) -> np.ndarray:
    """Sorted label indices of E^{l,t}(d)."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d >= G.ell + G.t:
        return np.arange(G.order)
    q = G.field.q
    free = index_to_free_coeffs(q, d, np.arange(q**d))
    coeffs = np.concatenate([free, np.ones((len(free), 1), dtype=np.int64)], axis=1)
    if G.t:
        coeffs = coeffs[coeffs[:, 0] != 0]
    idx = rows_to_index(q, G.ell, G.t, window_rows(G.field, coeffs, G.ell, G.t))
    return np.unique(idx)


def classes_of_degree(G: GroupStructure, d: int) -> frozenset[ClassLabel]:
    return frozenset(G.label_at(int(i)) for i in degree_class_indices(G, d))


def index_to_free_coeffs(q: int, d: int, idx: np.ndarray) -> np.ndarray:
    """Coefficients c_0..c_{d-1} of monic degree-d polynomials numbered by sum c_i q^i."""
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty(idx.shape + (d,), dtype=np.int64)
    rest = idx.copy()
    for i in range(d):
        rest, out[..., i] = np.divmod(rest, q)
    return out
