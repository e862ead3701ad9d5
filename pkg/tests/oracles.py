"""Independent brute-force oracles for the metric implementations.

Everything here is written from the metric definitions directly, favours
exhaustive enumeration over cleverness, and shares no code with the
package. Only usable for short inputs.
"""

from __future__ import annotations

import itertools
import math


def oracle_bleu(
    cand: list[str],
    ref: list[str],
    order: int,
    weights: list[float] | None = None,
    floor: float = 1e-9,
) -> float:
    if not cand:
        return 0.0
    weights = weights or [1.0 / order] * order
    total_log = 0.0
    for n, weight in zip(range(1, order + 1), weights):
        cand_grams = [tuple(cand[i : i + n]) for i in range(len(cand) - n + 1)]
        ref_grams = [tuple(ref[i : i + n]) for i in range(len(ref) - n + 1)]
        clipped = 0
        for gram in set(cand_grams):
            clipped += min(cand_grams.count(gram), ref_grams.count(gram))
        precision = clipped / len(cand_grams) if cand_grams else 0.0
        if precision == 0.0:
            precision = floor
        total_log += weight * math.log(precision)
    brevity = 1.0 if len(cand) >= len(ref) else math.exp(1.0 - len(ref) / len(cand))
    return brevity * math.exp(total_log)


def oracle_rouge_n(cand: list[str], ref: list[str], n: int) -> float:
    ref_grams = [tuple(ref[i : i + n]) for i in range(len(ref) - n + 1)]
    if not ref_grams:
        return 0.0
    cand_grams = [tuple(cand[i : i + n]) for i in range(len(cand) - n + 1)]
    matched = 0
    for gram in set(ref_grams):
        matched += min(ref_grams.count(gram), cand_grams.count(gram))
    return matched / len(ref_grams)


def oracle_lcs(a: list[str], b: list[str]) -> int:
    """Longest common subsequence by enumerating every subsequence of a."""
    best = 0
    for mask in range(1 << len(a)):
        sub = [a[i] for i in range(len(a)) if mask >> i & 1]
        if len(sub) > best and _is_subsequence(sub, b):
            best = len(sub)
    return best


def oracle_rouge_l(cand: list[str], ref: list[str], beta: float = 1.0) -> float:
    if not cand and not ref:
        return 0.0
    lcs = oracle_lcs(cand, ref)
    return (1 + beta**2) * lcs / (len(ref) + beta**2 * len(cand))


def oracle_meteor(
    cand: list[str], ref: list[str], alpha: float = 0.9, beta: float = 3.0, gamma: float = 0.5
) -> float:
    if not cand or not ref:
        return 0.0
    max_size = _max_match_size(cand, ref)
    if max_size == 0:
        return 0.0
    min_chunks = min(
        _chunks_of(mapping) for mapping in _all_matchings(cand, ref, max_size)
    )
    precision = max_size / len(cand)
    recall = max_size / len(ref)
    f_mean = precision * recall / (alpha * precision + (1 - alpha) * recall)
    penalty = gamma * (min_chunks / max_size) ** beta
    return (1 - penalty) * f_mean


def oracle_mrr(queries: list[tuple[list[str], set[str]]]) -> float:
    total = 0.0
    for items, gold in queries:
        for position, item in enumerate(items, start=1):
            if item in gold:
                total += 1.0 / position
                break
    return total / len(queries)


def oracle_topk(
    queries: list[tuple[list[str], set[str]]], k: int
) -> tuple[float, float, float]:
    precision = recall = hit = 0.0
    for items, gold in queries:
        hits = len([item for item in items[:k] if item in gold])
        precision += hits / k
        recall += hits / len(gold)
        hit += 1.0 if hits > 0 else 0.0
    n = len(queries)
    return precision / n, recall / n, hit / n


def oracle_ndcg(items: list[str], gold: set[str]) -> float:
    gains = [1 if item in gold else 0 for item in items]
    dcg = sum(g / math.log2(i + 2) for i, g in enumerate(gains))
    # Ideal: best DCG over every placement of min(|gold|, p) relevant slots.
    ideal_hits = min(len(gold), len(items))
    if ideal_hits == 0:
        return 0.0
    best = 0.0
    for slots in itertools.combinations(range(len(items)), ideal_hits):
        best = max(best, sum(1 / math.log2(i + 2) for i in slots))
    return dcg / best if best else 0.0


def _is_subsequence(sub: list[str], seq: list[str]) -> bool:
    it = iter(seq)
    return all(tok in it for tok in sub)


def _max_match_size(cand: list[str], ref: list[str]) -> int:
    size = 0
    ref_counts: dict[str, int] = {}
    for tok in ref:
        ref_counts[tok] = ref_counts.get(tok, 0) + 1
    cand_counts: dict[str, int] = {}
    for tok in cand:
        cand_counts[tok] = cand_counts.get(tok, 0) + 1
    for tok, count in cand_counts.items():
        size += min(count, ref_counts.get(tok, 0))
    return size


def _all_matchings(cand: list[str], ref: list[str], target_size: int):
    """Yield every injective position mapping of exactly target_size pairs."""

    def extend(i: int, used: set[int], pairs: tuple[tuple[int, int], ...]):
        if len(pairs) == target_size:
            yield pairs
            return
        if i >= len(cand):
            return
        # Upper bound: even matching every remaining token cannot reach target.
        if len(pairs) + (len(cand) - i) < target_size:
            return
        for j in range(len(ref)):
            if j not in used and ref[j] == cand[i]:
                yield from extend(i + 1, used | {j}, pairs + ((i, j),))
        yield from extend(i + 1, used, pairs)

    yield from extend(0, set(), ())


def _chunks_of(pairs: tuple[tuple[int, int], ...]) -> int:
    mapping = dict(pairs)
    return sum(1 for i, j in mapping.items() if mapping.get(i - 1) != j - 1)
