"""Single-reference text generation metrics over token sequences.

All scores land in [0, 1]. Degenerate inputs (an empty side where the
formula needs one) score 0.0 and are flagged on the returned value
instead of raising, so batch evaluation never aborts mid-scenario.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple

from .text import ngrams


class MetricScore(NamedTuple):
    """A unit-interval score plus a degenerate-input marker."""

    value: float
    degenerate: bool = False

    def __float__(self) -> float:  # lets callers treat the score as a number
        return self.value


@dataclass(frozen=True)
class BleuParams:
    """Order, per-order weights, and the zero-precision floor."""

    order: int = 4
    weights: tuple[float, ...] = ()
    smoothing_floor: float = 1e-9

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.smoothing_floor <= 0:
            raise ValueError("smoothing_floor must be positive")
        weights = self.weights or tuple(1.0 / self.order for _ in range(self.order))
        if len(weights) != self.order:
            raise ValueError("need one weight per n-gram order")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        object.__setattr__(self, "weights", weights)


@dataclass(frozen=True)
class MeteorParams:
    alpha: float = 0.9
    beta: float = 3.0
    gamma: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must be in [0, 1]")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must be in [0, 1]")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")


@dataclass(frozen=True)
class RougeLBeta:
    beta: float = 1.0

    def __post_init__(self) -> None:
        if self.beta <= 0:
            raise ValueError("beta must be positive")


def bleu(candidate: list[str], reference: list[str], params: BleuParams | None = None) -> MetricScore:
    """Geometric mean of clipped n-gram precisions times the brevity penalty.

    Zero precisions are floored at ``smoothing_floor`` before the log so a
    single missing order degrades the score smoothly instead of zeroing it.
    """
    params = params or BleuParams()
    if not candidate:
        return MetricScore(0.0, degenerate=True)

    log_sum = 0.0
    for n, weight in enumerate(params.weights, start=1):
        cand_grams = ngrams(candidate, n)
        total = sum(cand_grams.values())
        if total:
            ref_grams = ngrams(reference, n)
            matched = sum(min(count, ref_grams[gram]) for gram, count in cand_grams.items())
            precision = matched / total
        else:
            precision = 0.0
        if precision <= 0.0:
            precision = params.smoothing_floor
        log_sum += weight * math.log(precision)

    if len(candidate) >= len(reference):
        brevity = 1.0
    else:
        brevity = math.exp(1.0 - len(reference) / len(candidate))
    return MetricScore(brevity * math.exp(log_sum))


def rouge_n(candidate: list[str], reference: list[str], n: int) -> MetricScore:
    """Clipped n-gram matches over the reference n-gram count (recall form)."""
    ref_grams = ngrams(reference, n)
    total = sum(ref_grams.values())
    if total == 0:
        return MetricScore(0.0, degenerate=True)
    cand_grams = ngrams(candidate, n)
    matched = sum(min(count, cand_grams[gram]) for gram, count in ref_grams.items())
    return MetricScore(matched / total)


def rouge_l(candidate: list[str], reference: list[str], params: RougeLBeta | None = None) -> MetricScore:
    """LCS-based score: (1+b^2)*LCS / (len(reference) + b^2*len(candidate))."""
    params = params or RougeLBeta()
    if not candidate and not reference:
        return MetricScore(0.0, degenerate=True)
    beta_sq = params.beta * params.beta
    lcs = _lcs_length(candidate, reference)
    denom = len(reference) + beta_sq * len(candidate)
    return MetricScore((1.0 + beta_sq) * lcs / denom)


def meteor(candidate: list[str], reference: list[str], params: MeteorParams | None = None) -> MetricScore:
    """Unigram-alignment metric with a fragmentation penalty.

    The alignment maximizes exact-match unigram pairs, then minimizes the
    number of contiguous matched runs (chunks). With ch matched unigrams
    and m chunks: P = ch/|cand|, R = ch/|ref|,
    F = P*R / (alpha*P + (1-alpha)*R), penalty = gamma*(m/ch)^beta, and
    the score is (1 - penalty) * F.
    """
    params = params or MeteorParams()
    if not candidate or not reference:
        return MetricScore(0.0, degenerate=True)

    cand_counts = Counter(candidate)
    ref_counts = Counter(reference)
    need = {t: min(c, ref_counts[t]) for t, c in cand_counts.items() if ref_counts[t]}
    matches = sum(need.values())
    if matches == 0:
        return MetricScore(0.0)

    chunks = _min_chunks(candidate, reference, need)
    precision = matches / len(candidate)
    recall = matches / len(reference)
    f_mean = (precision * recall) / (params.alpha * precision + (1.0 - params.alpha) * recall)
    penalty = params.gamma * (chunks / matches) ** params.beta
    return MetricScore((1.0 - penalty) * f_mean)


def _lcs_length(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for tok in a:
        cur = [0]
        for j, other in enumerate(b, start=1):
            if tok == other:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


# Minimizing chunk count over all maximum alignments is a set-partition
# search, so the exact branch-and-bound below carries a node budget; past
# it we keep the best alignment found plus a deterministic greedy one.
# The search recurses once per candidate token, so it only runs at all on
# inputs short enough for the interpreter stack.
_SEARCH_BUDGET = 200_000
_SEARCH_MAX_TOKENS = 400


@dataclass
class _ChunkSearch:
    cand: list[str]
    ref: list[str]
    need: dict[str, int]
    budget: int = _SEARCH_BUDGET
    nodes: int = 0
    best: int = 0
    ref_pos: dict[str, list[int]] = field(default_factory=dict)

    def run(self) -> int:
        positions: dict[str, list[int]] = defaultdict(list)
        for j, tok in enumerate(self.ref):
            if tok in self.need:
                positions[tok].append(j)
        self.ref_pos = dict(positions)

        remaining = sum(self.need.values())
        self.best = self._greedy()
        if self.best > 1 and len(self.cand) <= _SEARCH_MAX_TOKENS:
            avail = Counter(t for t in self.cand if t in self.need)
            self._dfs(0, -2, 0, remaining, dict(self.need), avail, [False] * len(self.ref))
        return self.best

    def _dfs(
        self,
        i: int,
        prev_j: int,
        chunks: int,
        remaining: int,
        need: dict[str, int],
        avail: Counter[str],
        used: list[bool],
    ) -> None:
        if chunks >= self.best:
            return
        if remaining == 0:
            self.best = chunks
            return
        if i >= len(self.cand) or self.nodes > self.budget:
            return
        self.nodes += 1

        tok = self.cand[i]
        needed = need.get(tok, 0)
        if needed == 0:
            self._dfs(i + 1, -2, chunks, remaining, need, avail, used)
            return

        # Continuation of the open run costs nothing, so try it first.
        follow = prev_j + 1
        candidates = self.ref_pos[tok]
        ordered = [j for j in candidates if j == follow] + [j for j in candidates if j != follow]
        for j in ordered:
            if used[j]:
                continue
            used[j] = True
            need[tok] = needed - 1
            avail[tok] -= 1
            cost = chunks if j == follow else chunks + 1
            self._dfs(i + 1, j, cost, remaining - 1, need, avail, used)
            used[j] = False
            need[tok] = needed
            avail[tok] += 1

        if avail[tok] - 1 >= needed:  # enough later occurrences to skip this one
            avail[tok] -= 1
            self._dfs(i + 1, -2, chunks, remaining, need, avail, used)
            avail[tok] += 1

    def _greedy(self) -> int:
        """Eager left-to-right alignment preferring run continuation."""
        need = dict(self.need)
        used = [False] * len(self.ref)
        chunks = 0
        prev_j = -2
        for tok in self.cand:
            if need.get(tok, 0) == 0:
                prev_j = -2
                continue
            follow = prev_j + 1
            pick = -1
            if 0 <= follow < len(self.ref) and not used[follow] and self.ref[follow] == tok:
                pick = follow
            else:
                for j in self.ref_pos[tok]:
                    if not used[j]:
                        pick = j
                        break
            if pick < 0:
                prev_j = -2
                continue
            used[pick] = True
            need[tok] -= 1
            if pick != follow:
                chunks += 1
            prev_j = pick
        return chunks


def _min_chunks(cand: list[str], ref: list[str], need: dict[str, int]) -> int:
    return _ChunkSearch(cand, ref, need).run()
