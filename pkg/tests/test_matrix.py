from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chmreal.constructions import g6, theorem_i_matrix
from chmreal.equivalence import apply, random_transform
from chmreal.matrix import (
    EXACT,
    NUMERIC,
    ExactModeUnavailable,
    MatrixParseError,
    UnitMatrix,
    census,
    conjugate,
    format_matrix,
    fourier,
    is_chm,
    kron,
    parse_matrix,
    real_count,
    transpose,
)
from chmreal.phasecore import E8, I, OMEGA, OMEGA2, ONE, phase_mul, r, t

from conftest import brute_real_count, gram_is_scaled_identity, turns, unit_matrices


def test_fourier_examples():
    assert fourier(2) == UnitMatrix.from_rows([[ONE, ONE], [ONE, t(1, 2)]])
    assert fourier(3).row(1) == (ONE, OMEGA, OMEGA2)
    assert fourier(3).row(2) == (ONE, OMEGA2, OMEGA)
    assert fourier(6)[1, 1] == t(1, 6)


def test_census_examples():
    c = census(g6())
    assert c.real_count == 30
    assert c.imaginary_array == (1,) * 6
    c = census(fourier(2))
    assert (c.real_count, c.imaginary_array) == (4, (0, 0))
    c = census(fourier(6))
    assert (c.real_count, c.imaginary_array) == (20, (0, 0, 4, 4, 4, 4))
    # independent count: jk = 0 or 3 (mod 6)
    assert sum((j * k) % 6 in (0, 3) for j in range(6) for k in range(6)) == 20


@pytest.mark.parametrize("mode", [EXACT, NUMERIC])
def test_is_chm_examples(mode):
    assert is_chm(fourier(6), mode)
    assert is_chm(g6(), mode)
    rows = [list(row) for row in g6().entries]
    rows[1][1] = E8
    assert not is_chm(UnitMatrix.from_rows(rows), mode)


def test_exact_mode_refuses_radians():
    with pytest.raises(ExactModeUnavailable):
        is_chm(theorem_i_matrix(4, 2), EXACT)
    assert is_chm(theorem_i_matrix(4, 2), NUMERIC)


def test_census_flags_radians_as_approximate():
    assert census(theorem_i_matrix(5, 2)).approximate
    assert not census(g6()).approximate


@given(st.integers(1, 9))
def test_fourier_is_chm(n):
    assert is_chm(fourier(n), EXACT)
    assert gram_is_scaled_identity(fourier(n))


@given(unit_matrices(4))
def test_census_matches_complex_count(M):
    c = census(M)
    assert c.real_count == brute_real_count(M)
    assert sum(c.per_row_counts) == sum(c.per_column_counts) == 16 - c.real_count
    assert list(c.imaginary_array) == sorted(c.per_row_counts)


def test_exact_and_numeric_agree_on_orbits_and_perturbations():
    rng = np.random.Generator(np.random.PCG64(2024))
    bases = [fourier(6), g6(), kron(fourier(2), fourier(3))]
    for s in range(10_000):
        M = apply(random_transform(6, rng, 24), bases[s % 3])
        assert is_chm(M, EXACT) and is_chm(M, NUMERIC)
    for s in range(10_000):
        M = apply(random_transform(6, rng, 24), bases[s % 3])
        rows = [list(row) for row in M.entries]
        j, k = rng.integers(0, 6, 2)
        rows[j][k] = phase_mul(rows[j][k], t(int(rng.integers(1, 24)), 24))
        N = UnitMatrix.from_rows(rows)
        assert is_chm(N, EXACT) == is_chm(N, NUMERIC) == gram_is_scaled_identity(N)


@given(unit_matrices(3, 12, cols=5))
def test_text_round_trip_rectangular(M):
    assert parse_matrix(format_matrix(M)) == M


@given(st.lists(st.lists(st.one_of(turns(24), st.floats(-7, 7, allow_nan=False).map(r)),
                         min_size=3, max_size=3), min_size=3, max_size=3))
def test_text_round_trip_mixed(rows):
    M = UnitMatrix.from_rows(rows)
    assert parse_matrix(format_matrix(M)) == M


def test_parse_reports_position():
    with pytest.raises(MatrixParseError) as exc:
        parse_matrix("2\n1 1\n1  bogus\n")
    assert (exc.value.line, exc.value.column) == (3, 4)
    with pytest.raises(MatrixParseError) as exc:
        parse_matrix("3\n1 1 1\n1 1 1\n")
    assert exc.value.line == 3
    with pytest.raises(MatrixParseError):
        parse_matrix("two\n1\n")
    with pytest.raises(MatrixParseError):
        parse_matrix("")


@given(unit_matrices(4))
def test_transpose_and_conjugate_are_involutions(M):
    assert transpose(transpose(M)) == M
    assert conjugate(conjugate(M)) == M
    assert real_count(transpose(M)) == real_count(M) == real_count(conjugate(M))


@given(st.integers(1, 4), st.integers(1, 4))
def test_kron_of_fouriers_is_chm(a, b):
    K = kron(fourier(a), fourier(b))
    assert K.shape == (a * b, a * b)
    assert is_chm(K, EXACT)


def test_imaginary_entry_is_not_real():
    M = UnitMatrix.from_rows([[I, I], [I, t(3, 4)]])
    assert is_chm(M, EXACT)
    assert census(M).real_count == 0
