from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chmreal.constructions import S_TABLE, g6, h6_prefix, s6_with_count
from chmreal.equivalence import apply
from chmreal.matrix import EXACT, UnitMatrix, census, fourier, is_chm, kron
from chmreal.search import (
    InfeasibleSweep,
    NotACHMError,
    NotApplicable,
    PredicateId,
    applies,
    canonical_key,
    check_all,
    classify_three_rows,
    format_report,
    grid_sweep,
    predicate_audit,
    predicate_check,
    s6_membership_audit,
    sum3_oracle,
    sum4_oracle,
    write_witnesses,
    zero_sum_quadruples,
    zero_sum_triples,
)

from conftest import transforms


def _brute_zero_sums(q: int, k: int) -> set[tuple[int, ...]]:
    z = np.exp(2j * np.pi * np.arange(q) / q)
    out = set()
    for rest in itertools.product(range(q), repeat=k - 1):
        if abs(1 + z[list(rest)].sum()) < 1e-9:
            out.add((0,) + rest)
    return out


@pytest.mark.parametrize("q", [3, 6, 12, 30])
def test_triples_match_brute_force(q):
    assert {tuple(x) for x in zero_sum_triples(q).tolist()} == _brute_zero_sums(q, 3)
    assert sum3_oracle(q)


@pytest.mark.parametrize("q", [2, 4, 12, 24])
def test_quadruples_match_brute_force(q):
    assert {tuple(x) for x in zero_sum_quadruples(q).tolist()} == _brute_zero_sums(q, 4)
    assert sum4_oracle(q)


def test_oracles_reject_bad_grids():
    with pytest.raises(ValueError):
        sum3_oracle(4)
    with pytest.raises(ValueError):
        sum4_oracle(9)


def test_oracles_at_full_size():
    assert sum3_oracle(360)
    assert sum4_oracle(240)
    assert sum4_oracle(360)


# -- sweeps ------------------------------------------------------------------

def _brute_two_by_two(q: int) -> set[int]:
    z = np.exp(2j * np.pi * np.arange(q) / q)
    seen = set()
    for a, b, c, d in itertools.product(range(q), repeat=4):
        if abs(np.conj(z[a]) * z[b] + np.conj(z[c]) * z[d]) < 1e-9:
            seen.add(sum(abs(z[e].imag) < 1e-9 for e in (a, b, c, d)))
    return seen


@pytest.mark.parametrize("q", [4, 8])
def test_two_by_two_sweep_matches_loop(q):
    rep = grid_sweep(2, q)
    assert rep.observed_counts == _brute_two_by_two(q)
    assert rep.matrices_enumerated == q ** 4


def test_sweep_witnesses_have_their_counts(tmp_path):
    for n, q in [(2, 8), (3, 6), (4, 4)]:
        rep = grid_sweep(n, q)
        assert rep.observed_counts <= S_TABLE[n]
        for m, W in rep.witnesses.items():
            assert is_chm(W, EXACT) and census(W).real_count == m
        paths = write_witnesses(rep, tmp_path)
        text = format_report(rep, paths)
        assert text.count("count=") == len(rep.observed_counts)


def test_sweep_bounds():
    with pytest.raises(InfeasibleSweep):
        grid_sweep(2, 25)
    with pytest.raises(InfeasibleSweep):
        grid_sweep(4, 12)
    with pytest.raises(InfeasibleSweep):
        grid_sweep(5, 2)
    with pytest.raises(InfeasibleSweep):
        grid_sweep(3, 6, "full")


def test_three_by_three_sweep_small_grid():
    rep = grid_sweep(3, 6)
    assert rep.observed_counts == S_TABLE[3]


def test_four_by_four_sweep_threads_agree():
    a = grid_sweep(4, 4, threads=1)
    b = grid_sweep(4, 4, threads=2)
    assert a.observed_counts == b.observed_counts
    assert a.matrices_enumerated == b.matrices_enumerated
    assert a.witnesses == b.witnesses


# -- predicates --------------------------------------------------------------

def test_predicate_examples():
    assert predicate_check(g6(), PredicateId.NO_REAL_4X3) is None
    assert predicate_check(fourier(5), PredicateId.NO_REAL_QUOTIENT_ODD) is None
    assert predicate_check(fourier(6), PredicateId.NO_TWO_REAL_QUOTIENTS) is None
    assert predicate_check(fourier(6), "iv") is None


def test_predicate_applicability():
    with pytest.raises(NotApplicable):
        predicate_check(fourier(6), PredicateId.NO_REAL_QUOTIENT_ODD)
    with pytest.raises(NotApplicable):
        predicate_check(fourier(4), PredicateId.NO_TWO_REAL_QUOTIENTS)
    with pytest.raises(NotApplicable):
        predicate_check(fourier(5), PredicateId.NO_REAL_4X3)
    assert applies(10, PredicateId.NO_TWO_REAL_QUOTIENTS)
    assert not applies(8, PredicateId.NO_TWO_REAL_QUOTIENTS)


def test_predicates_need_a_chm():
    bad = UnitMatrix.from_rows([[fourier(6)[0, 0]] * 6] * 6)
    with pytest.raises(NotACHMError):
        predicate_check(bad, PredicateId.NO_REAL_4X3)


def _mat(rows):
    from chmreal.matrix import parse_matrix
    return parse_matrix(f"{len(rows)}\n" + "\n".join(" ".join(r) for r in rows) + "\n")


def test_predicates_catch_planted_patterns():
    # not CHMs; the checks still read the entry pattern when verification is off
    ones = ["1"] * 6
    M = _mat([ones, ["1"] * 5 + ["w"]] + [ones] * 4)
    assert check_all(M, verify=False)[PredicateId.NO_SINGLE_NONREAL_QUOTIENT] is not None
    assert check_all(M, verify=False)[PredicateId.NO_REAL_4X3] is not None
    M = _mat([["1"] * 6, ["w", "w2"] + ["1"] * 4] + [["i", "w", "i", "w", "i", "w"]] * 4)
    v = check_all(M, verify=False)[PredicateId.PAIRED_NONREAL_QUOTIENT]
    assert v is not None and v.lines == (0, 1)
    M = _mat([["1"] * 6, ["i", "1", "1", "1", "1", "1"], ["1", "i", "1", "1", "1", "1"],
              ["w", "1", "1", "1", "1", "1"]] + [["w"] * 6] * 2)
    assert check_all(M, verify=False)[PredicateId.SINGLE_NONREAL_SPREAD] is not None


def test_forbidden_pattern_detected():
    rows = [["1", "1", "1", "1", "w", "w"],
            ["1", "1", "1", "1", "w", "w"],
            ["1", "1", "1", "w", "1", "w"]] + [["w"] * 6] * 3
    v = check_all(_mat(rows), verify=False)[PredicateId.FORBIDDEN_PATTERNS]
    assert v is not None and v.axis == "rows"


def test_shared_position_detects_bad_pair():
    rows = [["w", "w", "1", "1", "1", "1"],
            ["i", "1", "w", "1", "1", "1"]] + [["w"] * 6] * 4
    v = check_all(_mat(rows), verify=False)[PredicateId.SHARED_NONREAL_POSITION]
    assert v is not None and v.lines == (0, 1)


BASES = [fourier(6), g6(), kron(fourier(2), fourier(3))] + [s6_with_count(m) for m in (0, 12, 19, 24, 25)]


@given(st.sampled_from(BASES), transforms(6, 24))
@settings(max_examples=150)
def test_predicates_hold_on_orbits(H, T):
    M = apply(T, H)
    assert all(v is None for v in check_all(M).values())


@given(st.sampled_from([fourier(3), fourier(5), fourier(7)]))
def test_odd_predicates_hold(H):
    assert all(v is None for v in check_all(H).values())


def test_predicates_accept_radians():
    from chmreal.constructions import theorem_i_matrix
    M = theorem_i_matrix(6, 2)
    assert all(v is None for v in check_all(M).values())


def test_predicate_audit_small_run_is_clean():
    ran, found = predicate_audit(400, seed=5)
    assert not found
    assert ran[PredicateId.NO_REAL_QUOTIENT_ODD] > 0
    assert ran[PredicateId.SHARED_NONREAL_POSITION] > 0


# -- three-row classification ------------------------------------------------

def test_three_rows_four_classes():
    reps = classify_three_rows(12)
    assert len(reps) == 4
    keys = {canonical_key(R.exponents(12)) for R in reps}
    assert keys == {canonical_key(h6_prefix(k).exponents(12)) for k in range(1, 5)}
    for R in reps:
        assert census(R).per_row_counts == (0, 2, 2)


def test_three_rows_without_row_negation_split_further():
    assert len(classify_three_rows(12, negate_rows=False)) == 10


def test_three_rows_need_twelfths():
    with pytest.raises(ValueError):
        classify_three_rows(8)


# -- audit -------------------------------------------------------------------

def test_audit_is_deterministic_across_workers():
    a = s6_membership_audit(25_000, seed=9, threads=1)
    b = s6_membership_audit(25_000, seed=9, threads=3)
    assert a.counts == b.counts
    assert a.passed and b.passed
    assert set(a.counts) <= S_TABLE[6]
