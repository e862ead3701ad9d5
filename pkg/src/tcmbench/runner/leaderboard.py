"""Per-metric dense ranking of model scores with top-3 flags."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..errors import ValidationError


@dataclass
class LeaderboardRow:
    model_id: str
    values: dict[str, float | None] = field(default_factory=dict)
    ranks: dict[str, int] = field(default_factory=dict)
    top3: dict[str, bool] = field(default_factory=dict)


def leaderboard(
    scores: Mapping[str, Mapping[str, float | None]], metric_set: Sequence[str]
) -> list[LeaderboardRow]:
    """Rank every model on every metric, higher is better.

    Ties share the better rank (dense ranking); a model missing a metric
    keeps an explicit None and ranks after every scored model. Rows come
    back sorted by the first metric, best first, model id breaking ties.
    """
    if not scores:
        raise ValidationError("no scores to rank")
    if not metric_set:
        raise ValidationError("empty metric set")

    rows = {
        model: LeaderboardRow(
            model_id=model,
            values={metric: model_scores.get(metric) for metric in metric_set},
        )
        for model, model_scores in scores.items()
    }

    for metric in metric_set:
        present = sorted(
            {row.values[metric] for row in rows.values() if row.values[metric] is not None},
            reverse=True,
        )
        rank_of = {value: rank for rank, value in enumerate(present, start=1)}
        missing_rank = len(present) + 1
        for row in rows.values():
            value = row.values[metric]
            row.ranks[metric] = rank_of[value] if value is not None else missing_rank
            row.top3[metric] = row.ranks[metric] <= 3

    lead = metric_set[0]

    def sort_key(row: LeaderboardRow) -> tuple[int, str]:
        return (row.ranks[lead], row.model_id)

    return sorted(rows.values(), key=sort_key)
