"""Exact-match accuracy and set-overlap precision/recall/F1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, NamedTuple, Sequence


@dataclass(frozen=True)
class ConfusionCounts:
    """Binary confusion cells; accuracy = (tp+tn) / (tp+tn+fp+fn)."""

    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self) -> None:
        if min(self.tp, self.tn, self.fp, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def accuracy(self) -> float:
        if self.total == 0:
            raise ValueError("no samples")
        return (self.tp + self.tn) / self.total


class PRF(NamedTuple):
    precision: float
    recall: float
    f1: float


def accuracy(pairs: Sequence[tuple[Hashable, Hashable]]) -> float:
    """Fraction of (predicted, gold) pairs that match exactly.

    For single-label multi-class data this is the consistent reduction of
    the confusion-matrix form of accuracy.
    """
    if not pairs:
        raise ValueError("no samples")
    return sum(1 for predicted, gold in pairs if predicted == gold) / len(pairs)


def prf_sets(predicted: set[str], gold: set[str]) -> PRF:
    """Set-overlap precision/recall/F1.

    Empty denominators score 0 rather than raising, so F1 is total over
    all inputs (an empty prediction against a non-empty gold set is
    simply a miss).
    """
    tp = len(predicted & gold)
    fp = len(predicted - gold)
    fn = len(gold - predicted)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return PRF(precision, recall, f1)
