import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tcmbench.metrics import bert_score


def test_identical_matrices_are_perfect():
    rows = np.array([[0.3, 0.4], [1.0, -0.2], [0.5, 0.5]])
    result = bert_score(rows, rows)
    assert result.precision == pytest.approx(1.0, abs=1e-9)
    assert result.recall == pytest.approx(1.0, abs=1e-9)
    assert result.f1 == pytest.approx(1.0, abs=1e-9)


def test_greedy_matching_hand_value():
    cand = np.array([[1.0, 0.0], [0.0, 1.0]])
    ref = np.array([[1.0, 0.0], [0.7071, 0.7071]])
    result = bert_score(cand, ref)
    assert result.precision == pytest.approx(0.85355, abs=1e-4)
    assert result.recall == pytest.approx(0.85355, abs=1e-4)
    assert result.f1 == pytest.approx(0.85355, abs=1e-4)


def test_orthogonal_rows_score_zero():
    cand = np.array([[1.0, 0.0]])
    ref = np.array([[0.0, 1.0]])
    assert bert_score(cand, ref) == (0.0, 0.0, 0.0)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError, match="dimension mismatch"):
        bert_score(np.ones((1, 2)), np.ones((1, 3)))


def test_zero_norm_row_rejected():
    with pytest.raises(ValueError, match="zero-norm"):
        bert_score(np.array([[0.0, 0.0]]), np.ones((1, 2)))


def test_non_finite_rejected():
    with pytest.raises(ValueError, match="non-finite"):
        bert_score(np.array([[np.nan, 1.0]]), np.ones((1, 2)))


def test_empty_matrix_rejected():
    with pytest.raises(ValueError, match="non-empty"):
        bert_score(np.zeros((0, 2)), np.ones((1, 2)))


@st.composite
def matrices(draw):
    rows = draw(st.integers(min_value=1, max_value=4))
    values = draw(
        st.lists(
            st.lists(st.floats(min_value=-3, max_value=3), min_size=3, max_size=3),
            min_size=rows,
            max_size=rows,
        )
    )
    matrix = np.asarray(values)
    for i, norm in enumerate(np.linalg.norm(matrix, axis=1)):
        if norm < 1e-6:
            matrix[i] = [1.0, 0.0, 0.0]
    return matrix


@given(matrices(), matrices())
def test_swapping_sides_swaps_precision_and_recall(cand, ref):
    forward = bert_score(cand, ref)
    backward = bert_score(ref, cand)
    assert forward.precision == pytest.approx(backward.recall, abs=1e-12)
    assert forward.recall == pytest.approx(backward.precision, abs=1e-12)
    assert 0.0 <= forward.f1 <= 1.0
