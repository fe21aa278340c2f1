import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from palcount.charsum import I_total
from palcount.ffpoly import FieldSpec, enumerate_monic, is_self_reciprocal, leading_coeffs
from palcount.oracle import brute_S
from palcount.sripm import (
    THETA,
    THETA1,
    THETA2,
    S2_trace,
    S2_two,
    S3_trace,
    S_count,
    S_total,
    S_total_recursive,
    SrimQuery,
    bounds,
    phi_inverse,
    phi_map,
    palindrome_from_g,
    positivity_ell,
    psi_inverse,
    psi_map,
    srim_direct,
)
from palcount.verify import sandwich

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)


def S(field, n, *c):
    return S_count(SrimQuery(field, n, c)).count


# -- coefficient maps ---------------------------------------------------------------


def test_phi_examples():
    for a in range(5):
        assert phi_map(F5, 7, (a,)) == (a,)
        assert phi_inverse(F5, 7, (a,)) == (a,)
    for d in range(2, 8):
        for a1, a2 in itertools.product(range(2), repeat=2):
            assert phi_map(F2, d, (a1, a2)) == (a1, (a2 + d) % 2)
            if d % 2:
                assert phi_inverse(F2, d, (a1, a2)) == (a1, (a2 + 1) % 2)
    assert phi_map(F3, 4, (0,)) == (0,)


def test_phi_matches_substitution():
    # leading coefficients of x^d g(x + 1/x), expanded directly
    for d in (3, 5, 6):
        for g in enumerate_monic(F3, d):
            f = palindrome_from_g(F3, g)
            assert f.degree == 2 * d and is_self_reciprocal(f)
            assert leading_coeffs(f, 3) == phi_map(F3, d, leading_coeffs(g, 3))


def test_psi_examples():
    for b0 in range(1, 5):
        for b1, a in itertools.product(range(5), repeat=2):
            assert psi_map(F5, (b0, b1), (a,)) == (F5.add(a, F5.mul(F5.inv(b0), b1)),)
    for b1, b2, a1, a2 in itertools.product(range(2), repeat=4):
        assert psi_map(F2, (1, b1, b2), (a1, a2)) == ((a1 + b1) % 2, (a2 + b2 + b1 * a1) % 2)
    assert psi_map(F3, (1, 0, 0, 0), (2, 1, 0)) == (2, 1, 0)
    with pytest.raises(ValueError):
        psi_map(F3, (0, 1), (1,))


maps_input = st.sampled_from([F2, F3, F5]).flatmap(
    lambda F: st.tuples(
        st.just(F),
        st.integers(1, 12),
        st.integers(0, 5).flatmap(
            lambda ell: st.tuples(
                st.lists(st.integers(0, F.q - 1), min_size=ell, max_size=ell),
                st.integers(1, F.q - 1),
                st.lists(st.integers(0, F.q - 1), min_size=ell, max_size=ell),
            )
        ),
    )
)


@settings(max_examples=300, deadline=None)
@given(maps_input)
def test_map_round_trips(args):
    F, d, (v, b0, rest) = args
    v = tuple(v)
    b = (b0,) + tuple(rest)
    if len(v) <= d:
        assert phi_inverse(F, d, phi_map(F, d, v)) == v
        assert phi_map(F, d, phi_inverse(F, d, v)) == v
    assert psi_inverse(F, b, psi_map(F, b, v)) == v
    assert psi_map(F, b, psi_inverse(F, b, v)) == v


def test_phi_round_trip_q3_l4_d9():
    for g in itertools.product(range(3), repeat=4):
        assert phi_inverse(F3, 9, phi_map(F3, 9, g)) == g


# -- S counts -----------------------------------------------------------------------


def test_S_count_examples():
    assert S(F2, 3, 0, 0) == 1
    assert S(F3, 5, 0) == 10
    assert S(F2, 8, 1, 1) == 5
    assert S(F3, 4) == 10


def test_S_count_query_validation():
    with pytest.raises(ValueError):
        SrimQuery(F2, 0, ())
    with pytest.raises(ValueError):
        SrimQuery(F2, 3, (2,))


def test_S_total_examples():
    assert S_total(F3, 1).count == 1
    assert S_total(F2, 4).count == 2
    assert S_total(F3, 6).count == 60
    assert S_total(F2, 1).count == 1


@pytest.mark.parametrize("q", [2, 3])
def test_S_total_recursion(q):
    F = FieldSpec(q)
    for n in range(2, 41, 2):
        assert 2 * S_total(F, n).count == S_total(F, n // 2).count + I_total(F, n).count
        assert S_total_recursive(F, n).count == S_total(F, n).count


@pytest.mark.parametrize("q", [4, 5, 7, 9])
def test_S_total_other_fields(q):
    F = FieldSpec.of_order(q)
    for n in range(1, 9):
        assert S_total(F, n).count == S_total_recursive(F, n).count


def test_S_sums_to_total():
    for F, nmax in ((F2, 10), (F3, 8)):
        for n in range(1, nmax + 1):
            for ell in (1, 2):
                total = sum(S(F, n, *c) for c in itertools.product(range(F.q), repeat=ell))
                assert total == S_total(F, n).count


@pytest.mark.parametrize("q,nmax", [(4, 4), (5, 3)])
def test_S_count_other_fields_against_oracle(q, nmax):
    F = FieldSpec.of_order(q)
    for n in range(1, nmax + 1):
        for ell in range(3):
            for c in itertools.product(range(q), repeat=ell):
                assert S(F, n, *c) == brute_S(F, 2 * n, c).count


def test_direct_path_agrees_with_engine():
    for n in range(4, 9):
        for c in itertools.product(range(2), repeat=2):
            assert srim_direct(F2, n, c) == S(F2, n, *c)


def test_basis_choice_does_not_change_S():
    from palcount.sripm import reference_basis_e20, reference_basis_q2

    groups = {(2, 0): reference_basis_e20(), (2, 3): reference_basis_q2()}
    for n in range(4, 13):
        for c in itertools.product(range(2), repeat=2):
            with_ref = S_count(SrimQuery(F2, n, c), groups=groups).count
            assert with_ref == S(F2, n, *c)


# -- closed forms -------------------------------------------------------------------


def test_named_angles():
    assert math.cos(THETA) == pytest.approx(1 / (2 * math.sqrt(2)))
    assert math.cos(THETA1) == pytest.approx(1 / (2 * math.sqrt(3)))
    assert math.cos(THETA2) == pytest.approx(1 / math.sqrt(3))


def test_S2_trace_examples():
    assert S2_trace(1, 1).count == 1
    assert S2_trace(4, 1).count == 1
    assert S2_trace(4, 0).count == 1
    for n in range(1, 21):
        assert S2_trace(n, 1).count == S(F2, n, 1)
        assert S2_trace(n, 0).count == S_total(F2, n).count - S2_trace(n, 1).count


def test_S3_trace_examples():
    assert S3_trace(8, 0).count == 132
    assert S3_trace(8, 1).count == 139
    assert S3_trace(6, 1).count == 20
    assert S3_trace(6, 2).count == 20
    for n in range(1, 13):
        for a in range(3):
            assert S3_trace(n, a).count == S(F3, n, a)


def test_S2_two_examples():
    assert S2_two(8, 0, 0).count == 3
    assert S2_two(20, 0, 1).count == 6576
    assert S2_two(1, 1, 1).count == 1
    for n in range(1, 21):
        for a1, a2 in itertools.product(range(2), repeat=2):
            assert S2_two(n, a1, a2).count == S(F2, n, a1, a2)


def test_closed_form_argument_checks():
    with pytest.raises(ValueError):
        S2_trace(0, 1)
    with pytest.raises(ValueError):
        S3_trace(3, 3)
    with pytest.raises(ValueError):
        S2_two(3, 2, 0)


# -- bounds ---------------------------------------------------------------------------


def test_bounds_examples():
    B = bounds(F2, 20, 2)
    assert B.lower == pytest.approx(5734.4)
    assert B.upper == pytest.approx(7782.4)
    for c in itertools.product(range(2), repeat=2):
        assert B.contains(S(F2, 20, *c))
    assert bounds(F2, 100, 1).positivity_ell == 21
    assert positivity_ell(2, 100) == 21
    with pytest.raises(ValueError):
        bounds(F2, 20, 0)
    with pytest.raises(ValueError):
        bounds(F2, 20, 11)


def test_cohen_intervals():
    for F in (F2, F3):
        for n in range(2, 11):
            for ell in range(1, n // 2 + 1):
                B = bounds(F, n, ell)
                assert B.lower < B.upper
                assert B.cohen_lower[0] < B.cohen_upper[0]
                assert B.cohen_lower[1] < B.cohen_upper[1]


def test_sandwich_and_containment():
    for F, nmax, lmax in ((F2, 14, 3), (F3, 10, 2)):
        for n in range(2, nmax + 1):
            for ell in range(1, min(lmax, n // 2) + 1):
                B = bounds(F, n, ell)
                for c in itertools.product(range(F.q), repeat=ell):
                    s = S(F, n, *c)
                    top, bottom = sandwich(F, n, c)
                    assert bottom <= s <= top
                    assert B.lower < s < B.upper
