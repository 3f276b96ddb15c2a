from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from chmreal.constructions import (
    S_TABLE,
    CountRecipe,
    NonPrimeOdd,
    NotAchievable,
    NotFound,
    chm_with_count,
    format_recipes,
    g6,
    h2_matrix,
    h3_matrix,
    h6_prefix,
    m4,
    m4_with_count,
    parse_recipe,
    recipe_search,
    recipe_table,
    regenerate_recipes,
    s6_with_count,
    theorem_i_matrix,
    theorem_ii_matrix,
)
from chmreal.equivalence import MonomialTransform, apply
from chmreal.matrix import (
    EXACT,
    NUMERIC,
    census,
    conjugate,
    is_chm,
    real_count,
    rows_pairwise_orthogonal,
    scale,
)
from chmreal.phasecore import E8, I, MINUS_I, OMEGA, OMEGA2, ONE, t

from conftest import brute_real_count, gram_is_scaled_identity


def test_g6_as_printed():
    G = g6()
    assert all(G[j, j] == I for j in range(6))
    assert is_chm(G, EXACT)
    assert census(G).real_count == 30 == brute_real_count(G)


@pytest.mark.parametrize("n,d,count", [(6, 0, 6), (6, 6, 0), (5, 2, 3)])
def test_theorem_i_examples(n, d, count):
    M = theorem_i_matrix(n, d)
    assert is_chm(M, NUMERIC)
    assert real_count(M) == count == brute_real_count(M)


@pytest.mark.parametrize("n,d,count", [(3, 0, 5), (5, 4, 5), (7, 0, 13)])
def test_theorem_ii_examples(n, d, count):
    M = theorem_ii_matrix(n, d)
    assert is_chm(M, EXACT)
    assert real_count(M) == count == brute_real_count(M)


@pytest.mark.parametrize("n", [9, 15, 4])
def test_theorem_ii_needs_odd_prime(n):
    with pytest.raises(NonPrimeOdd):
        theorem_ii_matrix(n, 0)


def test_two_by_two_witnesses():
    counts = [real_count(h2_matrix(k)) for k in (1, 2, 3, 4)]
    assert counts == [4, 2, 1, 0]
    for k in (1, 2, 3, 4):
        assert is_chm(h2_matrix(k), EXACT)
    assert h2_matrix(3).row(0) == (E8, t(3, 8))
    assert h2_matrix(4).row(1) == (I, MINUS_I)


@pytest.mark.parametrize("variant,params,scalar,count", [
    ("H31", (ONE, ONE), ONE, 5),
    ("H31", (ONE, OMEGA), ONE, 2),
    ("H31", (OMEGA, OMEGA2), ONE, 1),
    ("H31", (OMEGA, OMEGA), ONE, 0),
    ("H31", (OMEGA, OMEGA), OMEGA2, 6),
    ("H32", (ONE, I, I), ONE, 3),
    ("H32", (ONE, ONE, I), ONE, 4),
])
def test_three_by_three_examples(variant, params, scalar, count):
    from chmreal.matrix import times
    M = times(h3_matrix(variant, params), scalar)
    assert is_chm(M, EXACT)
    assert real_count(M) == count


def test_m4_examples():
    assert m4_with_count(16) == m4()
    d1 = (ONE, I, I, I)
    expected = scale(m4(), d1, tuple(x.conjugate() for x in d1))
    assert m4_with_count(10) == expected
    with pytest.raises(NotAchievable):
        m4_with_count(11)


def test_printed_seven_count_recipe_gives_five():
    # diag(i,1,1,1) M diag(1,i,i,e8): row 0 keeps two real entries, column 0 three more
    M = scale(m4(), (I, ONE, ONE, ONE), (ONE, I, I, E8))
    assert is_chm(M, EXACT)
    assert real_count(M) == 5 == brute_real_count(M)
    assert real_count(m4_with_count(7)) == 7


def test_s6_examples():
    assert s6_with_count(30) == g6()
    T = MonomialTransform.scaling((I,) + (ONE,) * 5, (ONE, I) + (ONE,) * 4)
    assert s6_with_count(24) == apply(T, g6())
    T19 = MonomialTransform.scaling((I, ONE, ONE, ONE, ONE, E8), (ONE, I, I, ONE, ONE, ONE))
    assert s6_with_count(19) == apply(T19, g6())
    with pytest.raises(NotAchievable) as exc:
        s6_with_count(23)
    assert str(exc.value).startswith("NotAchievable")


def test_h6_prefix_examples():
    assert h6_prefix(1).row(1) == (I, MINUS_I, ONE, ONE, t(1, 2), t(1, 2))
    assert conjugate(h6_prefix(3)) == h6_prefix(4)
    assert conjugate(h6_prefix(1)) == h6_prefix(2)
    for k in (1, 2, 3, 4):
        P = h6_prefix(k)
        assert P.shape == (3, 6)
        assert rows_pairwise_orthogonal(P)
        assert census(P).per_row_counts == (0, 2, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_every_tabulated_count_is_built(n):
    for m in range(n * n + 1):
        if m in S_TABLE[n]:
            M = chm_with_count(n, m)
            assert is_chm(M, EXACT) and gram_is_scaled_identity(M)
            assert real_count(M) == m == brute_real_count(M)
        else:
            with pytest.raises(NotAchievable):
                chm_with_count(n, m)


def test_other_orders_use_fourier_families():
    assert real_count(chm_with_count(5, 9)) == 9
    assert real_count(chm_with_count(7, 2)) == 2
    with pytest.raises(NotFound):
        chm_with_count(8, 40)
    with pytest.raises(NotAchievable):
        chm_with_count(5, 26)


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_theorem_i_counts(nd):
    n, d = nd
    M = theorem_i_matrix(n, d)
    assert is_chm(M, NUMERIC)
    assert real_count(M) == n - d


@given(st.sampled_from([3, 5, 7, 11]).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1))))
def test_theorem_ii_counts(nd):
    n, d = nd
    assert real_count(theorem_ii_matrix(n, d)) == 2 * n - d - 1


def test_recipe_search_examples():
    rec = recipe_search(g6(), 26, [I])
    assert rec.rows == {0: "i"} and not rec.cols
    rec = recipe_search(g6(), 19, [I, E8])
    assert rec.verify() and rec.size <= 4
    with pytest.raises(NotFound):
        recipe_search(g6(), 23, [I, E8])


def test_recipe_table_is_current():
    table = recipe_table()
    fresh = regenerate_recipes()
    assert [table[(r.n, r.m)] for r in fresh] == fresh
    assert set(table) == {(n, m) for n in (4, 6) for m in S_TABLE[n]}


def test_recipe_text_round_trip():
    for rec in recipe_table().values():
        assert parse_recipe(rec.format()) == rec
    text = format_recipes(recipe_table().values())
    assert text.count("\n") >= len(recipe_table())


def test_recipe_parse_rejects_unknown_fields():
    with pytest.raises(ValueError):
        parse_recipe("6 26 g6 rows_x=0")
    with pytest.raises(ValueError):
        parse_recipe("6 26")


def test_recipe_describe():
    assert CountRecipe(6, 26, "g6", {0: "i"}).describe() == "g6: row 0 x i"
