import pytest
from hypothesis import given
from hypothesis import strategies as st

from tcmbench.metrics import ConfusionCounts, accuracy, prf_sets


class TestAccuracy:
    def test_half_right(self):
        assert accuracy([("A", "A"), ("B", "C")]) == 0.5

    def test_all_equal_is_one(self):
        assert accuracy([("x", "x")] * 5) == 1.0

    def test_seven_of_ten(self):
        pairs = [("a", "a")] * 7 + [("a", "b")] * 3
        assert accuracy(pairs) == pytest.approx(0.7)

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="no samples"):
            accuracy([])

    def test_matches_confusion_framing(self):
        counts = ConfusionCounts(tp=3, tn=4, fp=2, fn=1)
        assert counts.accuracy() == pytest.approx(0.7)

    def test_confusion_requires_samples(self):
        with pytest.raises(ValueError):
            ConfusionCounts(0, 0, 0, 0).accuracy()

    def test_confusion_rejects_negative(self):
        with pytest.raises(ValueError):
            ConfusionCounts(-1, 0, 0, 1)


class TestPrfSets:
    def test_hand_example(self):
        result = prf_sets({"人参", "黄芪", "甘草"}, {"人参", "甘草"})
        assert result.precision == pytest.approx(0.6667, abs=1e-4)
        assert result.recall == pytest.approx(1.0)
        assert result.f1 == pytest.approx(0.8)

    def test_identical_sets(self):
        assert prf_sets({"a", "b"}, {"a", "b"}) == (1.0, 1.0, 1.0)

    def test_empty_prediction_scores_zero(self):
        assert prf_sets(set(), {"a"}) == (0.0, 0.0, 0.0)

    def test_disjoint_sets(self):
        assert prf_sets({"a"}, {"b"}) == (0.0, 0.0, 0.0)

    @given(
        st.sets(st.sampled_from("abcdefgh")),
        st.sets(st.sampled_from("abcdefgh")),
    )
    def test_bounds_and_f1_consistency(self, predicted, gold):
        p, r, f1 = prf_sets(predicted, gold)
        assert 0.0 <= p <= 1.0 and 0.0 <= r <= 1.0 and 0.0 <= f1 <= 1.0
        if p + r > 0:
            assert f1 == pytest.approx(2 * p * r / (p + r), abs=1e-12)
        else:
            assert f1 == 0.0
