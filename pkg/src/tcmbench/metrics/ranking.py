"""Recommendation-list metrics: MRR, precision/recall/hit-rate@K, nDCG.

A query is a (ranked items, gold set) pair. Items are assumed distinct;
parsers upstream deduplicate. All batch forms macro-average per query.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

Query = tuple[Sequence[str], set[str]]


class TopKScores(NamedTuple):
    precision: float
    recall: float
    hit_rate: float


def reciprocal_rank(items: Sequence[str], gold: set[str]) -> float:
    """1/rank of the first relevant item; 0.0 when nothing relevant appears."""
    for position, item in enumerate(items, start=1):
        if item in gold:
            return 1.0 / position
    return 0.0


def mrr(queries: Sequence[Query]) -> float:
    if not queries:
        raise ValueError("no samples")
    return sum(reciprocal_rank(items, gold) for items, gold in queries) / len(queries)


def topk_metrics(queries: Sequence[Query], k: int) -> TopKScores:
    """Macro-averaged precision@k, recall@k, and hit-rate@k."""
    if not queries:
        raise ValueError("no samples")
    if k < 1:
        raise ValueError("k must be >= 1")
    precision_sum = recall_sum = hit_sum = 0.0
    for items, gold in queries:
        if not gold:
            raise ValueError("empty relevance set")
        hits = sum(1 for item in items[:k] if item in gold)
        precision_sum += hits / k
        recall_sum += hits / len(gold)
        hit_sum += 1.0 if hits else 0.0
    n = len(queries)
    return TopKScores(precision_sum / n, recall_sum / n, hit_sum / n)


def ndcg(items: Sequence[str], gold: set[str]) -> float:
    """Binary-relevance nDCG over the full ranked list.

    The ideal ordering places min(|gold|, len(items)) relevant items at
    the top, so a list that omits gold items is penalized.
    """
    if not gold:
        raise ValueError("empty relevance set")
    dcg = sum(
        1.0 / math.log2(position + 1)
        for position, item in enumerate(items, start=1)
        if item in gold
    )
    ideal_hits = min(len(gold), len(items))
    ideal = sum(1.0 / math.log2(position + 1) for position in range(1, ideal_hits + 1))
    return dcg / ideal if ideal > 0 else 0.0


def ndcg_batch(queries: Sequence[Query]) -> float:
    if not queries:
        raise ValueError("no samples")
    return sum(ndcg(items, gold) for items, gold in queries) / len(queries)
