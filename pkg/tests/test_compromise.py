from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tradenet.compromise import compromise, compromise_oracle, compromise_select, ideal_vector, residual_matrix

from conftest import nonneg_rationals, rational_matrices, rationals

INCOMES_A = [(304, 0), (152, 156), (0, 200), (0, 312), (0, 200), (0, 200)]
INCOMES_B = [(292, 560), (0, 540), (0, 432), (0, 540), (0, 432), (0, 432)]


def test_ideal_vectors():
    assert ideal_vector(INCOMES_A) == (304, 312)
    assert ideal_vector(INCOMES_B) == (292, 560)
    assert ideal_vector([(3, 4)]) == (3, 4)


def test_empty_matrix():
    with pytest.raises(ValueError):
        ideal_vector([])


def test_residuals_example_a():
    assert residual_matrix(INCOMES_A, (304, 312)) == (
        (0, 312), (152, 156), (304, 112), (304, 0), (304, 112), (304, 112))


def test_residuals_example_b():
    res = residual_matrix(INCOMES_B, (292, 560))
    assert res == ((0, 0), (292, 20), (292, 128), (292, 20), (292, 128), (292, 128))


def test_residuals_dimension_mismatch():
    with pytest.raises(ValueError):
        residual_matrix(INCOMES_A, (1, 2, 3))


def test_residuals_all_ideal():
    assert residual_matrix([(5, 6), (5, 6)], (5, 6)) == ((0, 0), (0, 0))


def test_select_example_a():
    res = residual_matrix(INCOMES_A, ideal_vector(INCOMES_A))
    selected, value, row_max = compromise_select(res)
    assert (selected, value) == (1, 156)
    assert res[selected] == (152, 156)
    assert row_max == (312, 156, 304, 304, 304, 304)


def test_select_example_b():
    selected, value, _ = compromise_select(residual_matrix(INCOMES_B, ideal_vector(INCOMES_B)))
    assert (selected, value) == (0, 0)


def test_single_zero_row():
    assert compromise_select([(0, 0)])[:2] == (0, 0)


def test_oracle_examples():
    assert compromise_oracle(INCOMES_A) == (1, 156)
    assert compromise_oracle(INCOMES_B) == (0, 0)
    assert compromise_oracle([(7,)]) == (0, 0)


def test_tie_policies():
    incomes = [(1, 0), (0, 1)]  # both rows have max residual 1
    keys = [(5, 9), (2, 7)]
    assert compromise(incomes).selected == 0
    assert compromise(incomes, "lex", keys).selected == 1
    assert compromise_oracle(incomes, "lex", keys) == (1, 1)
    with pytest.raises(ValueError):
        compromise(incomes, "lex")


def test_result_invariants():
    r = compromise(INCOMES_A)
    assert all(v >= 0 for row in r.residuals for v in row)
    for j in range(len(r.ideal)):
        assert any(row[j] == 0 for row in r.residuals)
    assert r.value == r.row_max[r.selected] == min(r.row_max)



# prop_* properties are run by test_acceptance.py
@settings(max_examples=200)
@given(rational_matrices(), st.data())
def prop_translation_invariance(m, data):
    shifts = [data.draw(rationals) for _ in m[0]]
    shifted = [[v + c for v, c in zip(row, shifts)] for row in m]
    a, b = compromise(m), compromise(shifted)
    assert a.residuals == b.residuals
    assert (a.selected, a.value) == (b.selected, b.value)


@settings(max_examples=200)
@given(rational_matrices(), nonneg_rationals.filter(lambda x: x > 0))
def prop_positive_scaling(m, k):
    a = compromise(m)
    b = compromise([[k * v for v in row] for row in m])
    assert b.selected == a.selected
    assert b.value == k * a.value
    assert b.ideal == tuple(k * v for v in a.ideal)
    assert b.residuals == tuple(tuple(k * v for v in row) for row in a.residuals)


@settings(max_examples=200)
@given(rational_matrices(max_rows=8, max_cols=5))
def prop_pipeline_matches_oracle(m):
    r = compromise(m)
    assert compromise_oracle(m) == (r.selected, r.value)


@settings(max_examples=50)
@given(rational_matrices(max_rows=8, max_cols=5,
                         elements=st.integers(0, 3).map(Fraction)), st.data())
def test_pipeline_matches_oracle_with_lex_ties(m, data):
    keys = [tuple(data.draw(st.lists(st.integers(0, 9), min_size=2, max_size=2))) for _ in m]
    r = compromise(m, "lex", keys)
    assert compromise_oracle(m, "lex", keys) == (r.selected, r.value)


@settings(max_examples=50)
@given(rational_matrices(max_rows=6, max_cols=4), st.data())
def test_utopia_row_is_selected(m, data):
    ideal = ideal_vector(m)
    at = data.draw(st.integers(0, len(m)))
    rows = [list(r) for r in m]
    rows.insert(at, list(ideal))
    r = compromise(rows)
    assert r.value == 0
    assert r.row_max[r.selected] == 0
    assert r.selected == min(i for i, row in enumerate(rows) if list(row) == list(ideal))
