"""Acceptance criteria, one test each.  Every test records a verdict line that
conftest prints in the terminal summary."""

import itertools
import time

import numpy as np

from palcount.charsum import I_count, I_count_all, I_total, I_trace, F_values
from palcount.classgroup import ClassLabel, decompose, default_group
from palcount.ffpoly import FieldSpec, parse_poly
from palcount.oracle import brute_class_counts, brute_S
from palcount.sripm import (
    I2_xi_power,
    S2_trace,
    S2_two,
    S3_trace,
    S_count,
    S_total,
    SrimQuery,
    bounds,
    positivity_ell,
    reference_basis_e20,
    reference_basis_q2,
    reference_basis_q3,
)
from palcount.tables import TableSpec, published_tables
from palcount.verify import sandwich

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)
TOL = 1e-6
RESIDUALS: list[float] = []


def note(r: float) -> None:
    RESIDUALS.append(float(r))


def S(field, n, c, **kw):
    res = S_count(SrimQuery(field, n, tuple(c)), **kw)
    note(res.residual)
    return res.count


def table_mismatches(table_id, rows):
    printed = published_tables()[table_id]
    cols = TableSpec(table_id).columns
    bad = []
    for row in rows:
        n = row[0]
        for col, got in enumerate(row[1:]):
            if printed[n][col] != got:
                bad.append(f"n={n} {cols[col]} printed {printed[n][col]} got {got}")
    return bad


def test_ac1_tables_1_to_3(record_criterion):
    start = time.perf_counter()
    G = decompose(F3, 1, 2, [parse_poly("11", F3), parse_poly("1012", F3)])
    rows = {tid: [] for tid in (1, 2, 3)}
    for n in range(1, 21):
        counts, r = I_count_all(G, n)
        note(r)
        for tid in (1, 2, 3):
            rows[tid].append((n,) + tuple(int(counts[G.grid[e]]) for e in TableSpec(tid).exponents))
    elapsed = time.perf_counter() - start
    bad = [f"T{tid} {m}" for tid in (1, 2, 3) for m in table_mismatches(tid, rows[tid])]
    cells = sum(len(r) - 1 for rs in rows.values() for r in rs)
    ok = not bad and cells == 360 and elapsed < 10
    record_criterion("AC1", ok, f"{cells - len(bad)}/{cells} cells match, {elapsed:.2f}s; " + "; ".join(bad))
    assert cells == 360
    assert elapsed < 10
    assert not bad, bad


def test_ac2_table_4(record_criterion):
    rows = [(n, S3_trace(n, 0).count, S3_trace(n, 1).count) for n in range(1, 21)]
    bad = [m for m in table_mismatches(4, rows) if not m.startswith("n=6 S3(n;1)")]
    oracle = brute_S(F3, 12, (1,))
    engine = S(F3, 6, (1,))
    closed = rows[5][2]
    ok = not bad and oracle.count == engine == closed and oracle.enumerated == 3**6
    record_criterion(
        "AC2", ok, f"n=6 S3(n;1): closed form {closed}, engine {engine}, oracle {oracle.count} (printed 208)"
    )
    assert not bad, bad
    assert oracle.enumerated == 3**6
    assert oracle.count == engine == closed


def test_ac3_tables_5_and_6(record_criterion):
    G = reference_basis_q2()
    bad = []
    for tid in (5, 6):
        rows = []
        for n in range(1, 21):
            counts, r = I_count_all(G, n)
            note(r)
            rows.append((n,) + tuple(int(counts[G.grid[e]]) for e in TableSpec(tid).exponents))
        bad += [f"T{tid} {m}" for m in table_mismatches(tid, rows)]
    record_criterion("AC3", not bad, "; ".join(bad) or "320/320 cells match")
    assert not bad, bad


def test_ac4_table_7(record_criterion):
    rows = []
    for n in range(1, 21):
        vals = []
        for a1, a2 in itertools.product((0, 1), repeat=2):
            res = S2_two(n, a1, a2)
            note(res.residual)
            vals.append(res.count)
        rows.append((n,) + tuple(vals))
    bad = table_mismatches(7, rows)
    anchors = S2_two(8, 0, 0).count == 3 and S2_two(20, 1, 1).count == 6544
    record_criterion("AC4", not bad and anchors, "; ".join(bad) or "80/80 cells match, anchors hold")
    assert anchors
    assert not bad, bad


def test_ac5_oracle_per_class(record_criterion):
    start = time.perf_counter()
    checked = 0
    bad = []
    for field in (F2, F3, F5):
        q = field.q
        for ell, t in [(l, t) for l in range(5) for t in range(5 - l) if l + t >= 1]:
            G = default_group(field, ell, t)
            for n in range(1, 11):
                if q**n > 10**8:
                    break
                brute = brute_class_counts(G, n)
                for i, eps in enumerate(G.labels()):
                    res = I_count(G, n, eps)
                    note(res.residual)
                    checked += 1
                    if res.count != brute[i]:
                        bad.append((q, ell, t, n, eps, int(brute[i]), res.count))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    record_criterion("AC5", ok, f"{checked} class counts, {len(bad)} mismatches, {elapsed:.1f}s")
    assert not bad, bad[:10]
    assert elapsed < 300


def test_ac6_oracle_srim(record_criterion):
    checked = 0
    bad = []
    for field, max_degree in ((F2, 16), (F3, 12)):
        for degree in range(2, max_degree + 1, 2):
            for ell in (0, 1, 2):
                for c in itertools.product(range(field.q), repeat=ell):
                    want = brute_S(field, degree, c).count
                    got = S(field, degree // 2, c)
                    checked += 1
                    if want != got:
                        bad.append((field.q, degree, c, want, got))
    record_criterion("AC6", not bad, f"{checked} instances, {len(bad)} mismatches")
    assert not bad, bad


def test_ac7_closed_forms(record_criterion):
    bad = []
    for field in (F2, F3):
        G10 = default_group(field, 1, 0)
        for n in range(1, 21):
            per_trace = [S(field, n, (a,)) for a in range(field.q)]
            if sum(per_trace) != S_total(field, n).count:
                bad.append(f"S_total q={field.q} n={n}")
            counts, r = I_count_all(G10, n)
            note(r)
            for c in range(field.q):
                if I_trace(field, n, c).count != counts[G10.index_of(ClassLabel((c,), ()))]:
                    bad.append(f"I_trace q={field.q} n={n} c={c}")
            if field.q == 2:
                for a in (0, 1):
                    res = S2_trace(n, a)
                    note(res.residual)
                    if res.count != per_trace[a]:
                        bad.append(f"S2_trace n={n} a={a}")
                for a1, a2 in itertools.product((0, 1), repeat=2):
                    res = S2_two(n, a1, a2)
                    note(res.residual)
                    if res.count != S(F2, n, (a1, a2)):
                        bad.append(f"S2_two n={n} ({a1},{a2})")
                G20 = reference_basis_e20()
                counts, r = I_count_all(G20, n)
                note(r)
                for tt in range(4):
                    value = I2_xi_power(n, tt)
                    note(abs(value - round(value)))
                    if round(value) != counts[G20.grid[(tt,)]]:
                        bad.append(f"I_2(n; xi^{tt}) n={n}")
            elif n <= 12:
                for a in range(3):
                    res = S3_trace(n, a)
                    note(res.residual)
                    if res.count != per_trace[a]:
                        bad.append(f"S3_trace n={n} a={a}")
    record_criterion("AC7", not bad, "; ".join(bad) or "all closed forms agree")
    assert not bad, bad


def test_ac8_partitions(record_criterion):
    bad = []
    checked = 0
    for q in (2, 3, 4):
        field = FieldSpec.of_order(q)
        for ell, t in [(l, t) for l in range(5) for t in range(5 - l) if l + t >= 1]:
            G = default_group(field, ell, t)
            for n in range(1, 13):
                counts, r = I_count_all(G, n)
                note(r)
                # the polynomial x has no class once an ending window is prescribed
                want = I_total(field, n).count - (1 if n == 1 and t > 0 else 0)
                fsum = complex(F_values(G, n).sum())
                checked += 1
                if int(counts.sum()) != want:
                    bad.append(f"sum I q={q} l={ell} t={t} n={n}")
                if abs(fsum - (q**n - (t > 0))) >= 1e-6:
                    bad.append(f"sum F q={q} l={ell} t={t} n={n}: {fsum}")
    record_criterion(
        "AC8", not bad, f"{checked} (q,l,t,n) points; n=1 with t>0 compares against I_total - 1"
    )
    assert not bad, bad


def test_ac9_bounds(record_criterion):
    bad = []
    checked = 0
    limits = {2: 6, 3: 3}
    for field in (F2, F3):
        q = field.q
        for n in range(2, 21):
            for ell in range(1, min(n // 2, limits[q]) + 1):
                B = bounds(field, n, ell)
                for c in itertools.product(range(q), repeat=ell):
                    s = S(field, n, c)
                    top, bottom = sandwich(field, n, c)
                    checked += 1
                    if not B.lower < s < B.upper:
                        bad.append(f"bounds q={q} n={n} c={c}: {s} not in ({B.lower}, {B.upper})")
                    if not bottom <= s <= top:
                        bad.append(f"sandwich q={q} n={n} c={c}")
    # positivity threshold: the quoted point is beyond the exact range, so check feasible ones
    assert positivity_ell(2, 100) == 21
    skipped = "q=2 n=100 l=21 skipped (2^100 > 2^52)"
    rng = np.random.default_rng(7)
    positive = []
    for field, n in ((F2, 40), (F3, 24)):
        ell = positivity_ell(field.q, n)
        c = tuple(int(v) for v in rng.integers(0, field.q, ell))
        s = S(field, n, c)
        positive.append(f"S_{field.q}({n}; {c}) = {s}")
        if s <= 0:
            bad.append(f"positivity q={field.q} n={n} l={ell}")
    record_criterion(
        "AC9", not bad, f"{checked} points inside; {'; '.join(positive)}; {skipped}"
    )
    assert not bad, bad


def test_ac10_basis_invariance(record_criterion):
    bad = []
    pairs = [
        (reference_basis_q3(), default_group(F3, 1, 2)),
        (reference_basis_q2(), default_group(F2, 2, 3)),
    ]
    relabelled = all(ref.generators != dflt.generators for ref, dflt in pairs)
    for ref, dflt in pairs:
        for n in range(1, 13):
            a, ra = I_count_all(ref, n)
            b, rb = I_count_all(dflt, n)
            note(max(ra, rb))
            if not np.array_equal(a, b):
                bad.append(f"I q={ref.field.q} n={n}")
    for n in range(1, 13):
        for a in range(3):
            if S(F3, n, (a,), groups={(1, 2): pairs[0][0]}) != S(F3, n, (a,)):
                bad.append(f"S_3 n={n} a={a}")
        for c in itertools.product((0, 1), repeat=2):
            if S(F2, n, c, groups={(2, 3): pairs[1][0], (2, 0): reference_basis_e20()}) != S(F2, n, c):
                bad.append(f"S_2 n={n} c={c}")
    ok = not bad and relabelled
    record_criterion("AC10", ok, "; ".join(bad) or "default and reference bases give identical counts")
    assert relabelled
    assert not bad, bad


def test_ac11_residuals(record_criterion):
    if not RESIDUALS:
        # running alone: sweep the table groups
        for G in (reference_basis_q3(), reference_basis_q2()):
            for n in range(1, 21):
                note(I_count_all(G, n)[1])
        for n in range(1, 21):
            note(S3_trace(n, 0).residual)
            note(S2_two(n, 1, 1).residual)
    worst = max(RESIDUALS)
    record_criterion("AC11", worst < TOL, f"max residual {worst:.3g} over {len(RESIDUALS)} values")
    assert worst < TOL
