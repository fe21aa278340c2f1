"""Verification suites shared by the CLI and the test-suite."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from .charsum import F_values, I_count_all, I_total, I_trace
from .classgroup import ClassLabel, default_group, group_order
from .ffpoly import FieldSpec
from .oracle import brute_class_counts, brute_S
from .sripm import (
    F2,
    F3,
    S2_trace,
    S2_two,
    S3_trace,
    S_count,
    S_total,
    SrimQuery,
    I2_xi_power,
    bounds,
    phi_inverse,
    psi_inverse,
    reference_basis_e20,
    reference_basis_q2,
    reference_basis_q3,
)
from .tables import KNOWN_ERRATA, TableSpec, compute_table, published_tables

SUITES = ("tables", "oracle", "closed-forms", "invariants")
ORACLE_LIMIT = 10**8


@dataclass
class Mismatch:
    q: int
    n: int
    ell: int
    t: int
    label: Any
    expected: Any
    got: Any
    what: str = ""

    def to_json(self) -> dict:
        return {
            "what": self.what,
            "q": self.q,
            "n": self.n,
            "ell": self.ell,
            "t": self.t,
            "label": self.label,
            "expected": self.expected,
            "got": self.got,
        }


@dataclass
class Report:
    suite: str
    checks: int = 0
    mismatches: list[Mismatch] = dc_field(default_factory=list)
    notes: list[str] = dc_field(default_factory=list)
    max_residual: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def check(self, ok: bool, mismatch: Mismatch) -> None:
        self.checks += 1
        if not ok:
            self.mismatches.append(mismatch)

    def residual(self, r: float) -> None:
        self.max_residual = max(self.max_residual, float(r))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": self.checks,
            "max_residual": self.max_residual,
            "mismatches": [m.to_json() for m in self.mismatches],
            "notes": self.notes,
        }


_TABLE_PARAMS = {1: (3, 1, 2), 2: (3, 1, 2), 3: (3, 1, 2), 4: (3, 1, 0), 5: (2, 2, 3), 6: (2, 2, 3), 7: (2, 2, 0)}


def _erratum_confirmed(table_id: int, n: int, col: int, got: int) -> bool:
    """Re-derive a disputed cell by brute force."""
    if table_id == 4:
        return brute_S(F3, 2 * n, (col,)).count == got
    G = reference_basis_q3() if table_id <= 3 else reference_basis_q2()
    e = TableSpec(table_id).exponents[col]
    return int(brute_class_counts(G, n)[G.grid[e]]) == got


def verify_tables(max_n: int = 20) -> Report:
    report = Report("tables")
    printed = published_tables()
    for tid in range(1, 8):
        spec = TableSpec(tid, max_n)
        q, ell, t = _TABLE_PARAMS[tid]
        for row in compute_table(spec):
            n, values = row[0], row[1:]
            for col, got in enumerate(values):
                expected = printed[tid][n][col]
                if expected == got:
                    report.checks += 1
                    continue
                if KNOWN_ERRATA.get((tid, n, col)) == expected and _erratum_confirmed(tid, n, col, got):
                    report.checks += 1
                    report.notes.append(
                        f"table {tid} n={n} {spec.columns[col]}: printed {expected}, got {got}"
                        " (known-erratum, oracle-confirmed)"
                    )
                    continue
                report.check(False, Mismatch(q, n, ell, t, spec.columns[col], expected, got, f"table {tid}"))
    return report


def verify_oracle(q: int = 2, max_2n: int = 12, max_n: int = 8, max_window: int = 4) -> Report:
    """S_count against palindrome scans and per-class counts against the sieve."""
    report = Report("oracle")
    field = FieldSpec.of_order(q)
    for degree in range(2, max_2n + 1, 2):
        n = degree // 2
        for ell in range(3):
            for c in itertools.product(range(q), repeat=ell):
                res = S_count(SrimQuery(field, n, c))
                report.residual(res.residual)
                want = brute_S(field, degree, c).count
                report.check(res.count == want, Mismatch(q, n, ell, 0, list(c), want, res.count, "S_count"))
    for ell, t in _windows(max_window):
        G = default_group(field, ell, t)
        for n in range(1, max_n + 1):
            if q**n > ORACLE_LIMIT:
                break
            counts, r = I_count_all(G, n)
            report.residual(r)
            brute = brute_class_counts(G, n)
            for i in np.flatnonzero(counts != brute):
                report.check(False, Mismatch(q, n, ell, t, G.label_at(int(i)).to_json(), int(brute[i]), int(counts[i]), "I_count"))
            report.checks += int(np.sum(counts == brute))
    return report


def _windows(max_window: int) -> list[tuple[int, int]]:
    return [(ell, t) for ell in range(max_window + 1) for t in range(max_window + 1 - ell) if ell + t >= 1]


def verify_closed_forms(q: int = 2, max_n: int = 20) -> Report:
    report = Report("closed-forms")
    field = FieldSpec.of_order(q)
    G10 = default_group(field, 1, 0)
    for n in range(1, max_n + 1):
        per_trace = [S_count(SrimQuery(field, n, (a,))) for a in range(q)]
        for res in per_trace:
            report.residual(res.residual)
        total = S_total(field, n).count
        report.check(sum(r.count for r in per_trace) == total, Mismatch(q, n, 1, 0, "sum", total, sum(r.count for r in per_trace), "S_total"))
        counts, r = I_count_all(G10, n)
        report.residual(r)
        for a in range(q):
            want = I_trace(field, n, a).count
            got = int(counts[G10.index_of(ClassLabel((a,), ()))])
            report.check(want == got, Mismatch(q, n, 1, 0, [a], want, got, "I_trace"))
        if q == 2:
            for a in (0, 1):
                cf = S2_trace(n, a)
                report.residual(cf.residual)
                report.check(cf.count == per_trace[a].count, Mismatch(2, n, 1, 0, [a], per_trace[a].count, cf.count, "S2_trace"))
            for a1, a2 in itertools.product((0, 1), repeat=2):
                cf = S2_two(n, a1, a2)
                engine = S_count(SrimQuery(F2, n, (a1, a2)))
                report.residual(max(cf.residual, engine.residual))
                report.check(cf.count == engine.count, Mismatch(2, n, 2, 0, [a1, a2], engine.count, cf.count, "S2_two"))
            G20 = reference_basis_e20()
            counts, r = I_count_all(G20, n)
            for tt in range(4):
                got = int(counts[G20.grid[(tt,)]])
                value = I2_xi_power(n, tt)
                want = round(value)
                report.residual(abs(value - want))
                report.check(got == want, Mismatch(2, n, 2, 0, f"xi^{tt}", want, got, "I2 on E^{2,0}"))
        if q == 3 and n <= 12:
            for a in range(3):
                cf = S3_trace(n, a)
                report.residual(cf.residual)
                report.check(cf.count == per_trace[a].count, Mismatch(3, n, 1, 0, [a], per_trace[a].count, cf.count, "S3_trace"))
    return report


def verify_invariants(q: int = 2, max_n: int = 10, max_window: int = 3) -> Report:
    """Partition identities, character-sum totals, the I-sandwich and the bound intervals."""
    report = Report("invariants")
    field = FieldSpec.of_order(q)
    for ell, t in _windows(max_window):
        G = default_group(field, ell, t)
        for n in range(1, max_n + 1):
            counts, r = I_count_all(G, n)
            report.residual(r)
            want = I_total(field, n).count - (1 if n == 1 and t > 0 else 0)
            report.check(int(counts.sum()) == want, Mismatch(q, n, ell, t, "sum I", want, int(counts.sum()), "partition"))
            fsum = float(F_values(G, n).sum().real)
            target = q**n - (t > 0)
            report.check(abs(fsum - target) < 1e-6, Mismatch(q, n, ell, t, "sum F", target, fsum, "F partition"))
    for n in range(2, max_n + 1):
        for ell in range(1, n // 2 + 1):
            if group_order(q, ell, ell + 1) > 4096:
                break
            B = bounds(field, n, ell)
            for c in itertools.product(range(q), repeat=ell):
                res = S_count(SrimQuery(field, n, c))
                report.residual(res.residual)
                report.check(B.contains(res.count), Mismatch(q, n, ell, 0, list(c), [B.lower, B.upper], res.count, "bounds"))
                top, bottom = sandwich(field, n, c)
                report.check(bottom <= res.count <= top, Mismatch(q, n, ell, 0, list(c), [bottom, top], res.count, "sandwich"))
    return report


def sandwich(field: FieldSpec, n: int, c: tuple[int, ...]) -> tuple[float, float]:
    """Upper and lower I-term bounds around S_q(n; c)."""
    ell = len(c)
    G0 = default_group(field, ell, 0)
    G1 = default_group(field, ell, ell + 1)
    I0, _ = I_count_all(G0, n)
    I1, _ = I_count_all(G1, n)
    top = int(I0[G0.index_of(ClassLabel(phi_inverse(field, n, c), ()))])
    pairs = 0
    for b in itertools.product(range(1, field.q), *[range(field.q)] * ell):
        pairs += int(I1[G1.index_of(ClassLabel(psi_inverse(field, b, c), b))])
    return top, top - pairs / 2


def run_suite(name: str, **scope) -> Report:
    runners = {
        "tables": verify_tables,
        "oracle": verify_oracle,
        "closed-forms": verify_closed_forms,
        "invariants": verify_invariants,
    }
    if name not in runners:
        raise ValueError(f"suite must be one of {SUITES}")
    return runners[name](**scope)
