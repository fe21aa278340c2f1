"""Brute-force counters used as ground truth for the formula paths.

Small searches run the Rabin test on each candidate.  Larger ones go through
a sieve over all monic polynomials of one degree: every product of a monic
irreducible of degree k <= d/2 with an arbitrary monic cofactor is crossed
out, and what remains is irreducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .classgroup import (
    ClassLabel,
    GroupStructure,
    index_to_free_coeffs,
    rows_to_index,
    window_rows,
)
from .errors import SearchSpaceError
from .ffpoly import (
    FieldSpec,
    Poly,
    ending_coeffs,
    enumerate_monic,
    is_irreducible,
    is_self_reciprocal,
    leading_coeffs,
)

SEARCH_LIMIT = 10**8
WITNESS_CAP = 16
_CHUNK = 1 << 18


@dataclass
class OracleReport:
    count: int
    witnesses: list[Poly] = dc_field(default_factory=list)
    enumerated: int = 0

    def __post_init__(self) -> None:
        if self.count > self.enumerated:
            raise ValueError("count cannot exceed the number of candidates visited")


def _guard(size: int, what: str) -> None:
    if size > SEARCH_LIMIT:
        raise SearchSpaceError(f"{what}: {size} candidates exceeds the limit {SEARCH_LIMIT}")


# -- sieve -----------------------------------------------------------------------------


def _monic_rows(q: int, d: int, idx: np.ndarray) -> np.ndarray:
    free = index_to_free_coeffs(q, d, idx)
    return np.concatenate([free, np.ones((len(idx), 1), dtype=np.int64)], axis=1)


@lru_cache(maxsize=16)
def irreducible_sieve(field: FieldSpec, d: int) -> np.ndarray:
    """Boolean mask over monic degree-d polynomials (numbered by sum c_i q^i) marking irreducibles."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    q = field.q
    size = q**d
    _guard(size, f"sieve of degree {d} over F_{q}")
    irreducible = np.ones(size, dtype=bool)
    weights = q ** np.arange(d, dtype=np.int64)
    for k in range(1, d // 2 + 1):
        m = d - k
        factors = np.flatnonzero(irreducible_sieve(field, k))
        g_rows = _monic_rows(q, k, factors)
        n_cof = q**m
        for start in range(0, n_cof, _CHUNK):
            h = _monic_rows(q, m, np.arange(start, min(start + _CHUNK, n_cof), dtype=np.int64))
            for g in g_rows:
                prod = np.zeros((len(h), d + 1), dtype=np.int64)
                for i, gi in enumerate(g):
                    if gi:
                        term = field.vmul(np.full_like(h, gi), h)
                        prod[:, i : i + m + 1] = field.vadd(prod[:, i : i + m + 1], term)
                irreducible[prod[:, :d] @ weights] = False
    return irreducible


def irreducible_rows(field: FieldSpec, d: int) -> np.ndarray:
    """Ascending coefficient rows of every monic irreducible of degree d, in index order."""
    return _monic_rows(field.q, d, np.flatnonzero(irreducible_sieve(field, d)))


# -- public counters --------------------------------------------------------------------


def brute_S(
    field: FieldSpec, degree2n: int, leading: Sequence[int] = (), cap: int = WITNESS_CAP
) -> OracleReport:
    """Count self-reciprocal irreducible monic polynomials of degree ``degree2n`` with given leading window."""
    if degree2n < 2 or degree2n % 2:
        raise ValueError("degree2n must be even and >= 2")
    leading = tuple(leading)
    n = degree2n // 2
    q = field.q
    _guard(q**n, f"palindromes of degree {degree2n} over F_{q}")
    count = seen = 0
    witnesses: list[Poly] = []
    # c_1..c_n are free; c_{2n-j} mirrors c_j and c_0 = c_{2n} = 1
    for half in itertools.product(range(q), repeat=n):
        seen += 1
        low = (1,) + half
        f = Poly(field, low + tuple(reversed(low[:-1])))
        if leading_coeffs(f, len(leading)) != leading:
            continue
        if is_irreducible(f):
            count += 1
            if len(witnesses) < cap:
                witnesses.append(f)
    return OracleReport(count, witnesses, seen)


def brute_I(
    field: FieldSpec,
    d: int,
    leading: Sequence[int] = (),
    ending: Sequence[int] = (),
    cap: int = WITNESS_CAP,
    sieve: bool | None = None,
) -> OracleReport:
    """Count monic irreducibles of degree d with the given leading and ending windows.

    Windows that overlap are allowed and simply filter the candidates.  By
    default the sieve is used once q^d passes a few thousand candidates.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    leading, ending = tuple(leading), tuple(ending)
    q = field.q
    ell, t = len(leading), len(ending)
    if sieve is None:
        sieve = 4096 < q**d <= SEARCH_LIMIT
    if sieve:
        rows = irreducible_rows(field, d)
        win = window_rows(field, rows, ell, t)
        keep = np.all(win == np.array(leading + ending, dtype=np.int64), axis=1)
        hits = rows[keep]
        witnesses = [Poly(field, tuple(int(c) for c in r)) for r in hits[:cap]]
        return OracleReport(int(keep.sum()), witnesses, q**d)
    if ell + t <= d:
        _guard(q ** (d - ell - t), f"degree-{d} search over F_{q}")
        candidates = enumerate_monic(field, d, leading=leading or None, ending=ending or None)
    else:
        _guard(q**d, f"degree-{d} search over F_{q}")
        candidates = (
            f
            for f in enumerate_monic(field, d)
            if leading_coeffs(f, ell) == leading and ending_coeffs(f, t) == ending
        )
    count = seen = 0
    witnesses = []
    for f in candidates:
        seen += 1
        if is_irreducible(f):
            count += 1
            if len(witnesses) < cap:
                witnesses.append(f)
    return OracleReport(count, witnesses, seen)


def brute_class_counts(G: GroupStructure, d: int) -> np.ndarray:
    """Irreducible counts of degree d per class, indexed like ``G.labels()``."""
    rows = irreducible_rows(G.field, d)
    if G.t:
        rows = rows[rows[:, 0] != 0]
    idx = rows_to_index(G.field.q, G.ell, G.t, window_rows(G.field, rows, G.ell, G.t))
    return np.bincount(idx, minlength=G.order).astype(np.int64)


def brute_class_count(
    G: GroupStructure, d: int, eps: ClassLabel, cap: int = WITNESS_CAP
) -> OracleReport:
    G.index_of(eps)
    return brute_I(G.field, d, eps.leading, eps.ending, cap=cap)


def witnesses_valid(report: OracleReport, self_reciprocal: bool = False) -> bool:
    return all(
        is_irreducible(f) and (not self_reciprocal or is_self_reciprocal(f))
        for f in report.witnesses
    )
