"""Scoring a batch of model responses for one scenario kind."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np

from ..errors import ValidationError
from ..metrics import (
    BleuParams,
    bert_score,
    bleu,
    meteor,
    ndcg,
    prf_sets,
    reciprocal_rank,
    rouge_l,
    rouge_n,
    tokenize,
    topk_metrics,
)
from .kinds import (
    CHOICE_KINDS,
    ENTITY_KINDS,
    LABEL_KINDS,
    RANKING_KINDS,
    ScenarioExample,
    ScenarioKind,
    metric_suite_for,
    requires_embedder,
)
from .parsing import (
    ParsedAnswer,
    extract_label,
    extract_option_letter,
    normalize_item,
    normalize_label,
    parse_free_text,
    parse_item_list,
)

_BLEU1 = BleuParams(order=1)
_BLEU4 = BleuParams(order=4)


class TokenEmbedder(Protocol):
    """Provider of token-aligned embedding matrices for raw texts."""

    def embed(self, texts: Sequence[str]) -> list[tuple[list[str], np.ndarray]]: ...


@dataclass(frozen=True)
class ModelResponse:
    """Raw model text plus the structured answer parsed from it."""

    text: str
    parsed: ParsedAnswer | None = None


@dataclass
class ItemScore:
    id: str
    parsed: bool
    rule: str
    scores: dict[str, float] = field(default_factory=dict)


@dataclass
class MetricReport:
    """Per-scenario aggregate of the kind's full metric suite."""

    kind: ScenarioKind
    n_items: int
    metrics: dict[str, float]
    parse_failure_rate: float
    per_item: list[ItemScore] = field(default_factory=list)


def parse_response(kind: ScenarioKind, raw: str) -> ParsedAnswer:
    """Dispatch raw text to the parser matching the scenario kind."""
    if kind in CHOICE_KINDS:
        return extract_option_letter(raw)
    if kind in LABEL_KINDS:
        return extract_label(raw)
    if kind in ENTITY_KINDS:
        return parse_item_list(raw, ranked=False)
    if kind in RANKING_KINDS:
        return parse_item_list(raw, ranked=True)
    return parse_free_text(raw)


def evaluate_scenario(
    kind: ScenarioKind,
    items: Sequence[tuple[ScenarioExample, ModelResponse]],
    embedder: TokenEmbedder | None = None,
) -> MetricReport:
    """Parse and score one scenario batch with its full metric suite.

    Parse failures score 0 on their item instead of being dropped; the
    failure rate is reported alongside the metrics.
    """
    if not items:
        raise ValidationError("no items to evaluate")
    for example, _ in items:
        if example.kind is not kind:
            raise ValidationError(
                f"example {example.id} has kind {example.kind.value}, expected {kind.value}"
            )
    if requires_embedder(kind) and embedder is None:
        raise ValidationError(f"scenario {kind.value} needs an embedding provider for bertscore")

    scored: list[ItemScore] = []
    for example, response in items:
        parsed = response.parsed or parse_response(kind, response.text)
        row = ItemScore(id=example.id, parsed=not parsed.failed, rule=parsed.rule)
        row.scores = _score_item(kind, example, parsed, embedder)
        scored.append(row)

    suite = metric_suite_for(kind)
    aggregate = {name: sum(row.scores[name] for row in scored) / len(scored) for name in suite}
    failure_rate = sum(1 for row in scored if not row.parsed) / len(scored)
    return MetricReport(
        kind=kind,
        n_items=len(scored),
        metrics=aggregate,
        parse_failure_rate=failure_rate,
        per_item=scored,
    )


def _score_item(
    kind: ScenarioKind,
    example: ScenarioExample,
    parsed: ParsedAnswer,
    embedder: TokenEmbedder | None,
) -> dict[str, float]:
    suite = metric_suite_for(kind)
    if parsed.failed:
        return {name: 0.0 for name in suite}

    if kind in CHOICE_KINDS:
        return {"accuracy": 1.0 if parsed.letter == example.reference else 0.0}

    if kind in LABEL_KINDS:
        return {"accuracy": 1.0 if parsed.label == normalize_label(example.reference) else 0.0}

    if kind in ENTITY_KINDS:
        gold = {normalize_item(item) for item in example.gold_items}
        gold.discard("")
        result = prf_sets(set(parsed.items), gold)
        return {"precision": result.precision, "recall": result.recall, "f1": result.f1}

    if kind in RANKING_KINDS:
        gold = {normalize_item(item) for item in example.gold_items}
        gold.discard("")
        ranked = list(parsed.items)
        top3 = topk_metrics([(ranked, gold)], k=3)
        scores = {
            "mrr": reciprocal_rank(ranked, gold),
            "p@3": top3.precision,
            "r@3": top3.recall,
            "hr@3": top3.hit_rate,
            "ndcg": ndcg(ranked, gold),
        }
        if "accuracy" in suite:  # top-1 exact hit
            scores["accuracy"] = 1.0 if ranked and ranked[0] in gold else 0.0
        return scores

    return _score_generation(example, parsed, embedder)


def _score_generation(
    example: ScenarioExample, parsed: ParsedAnswer, embedder: TokenEmbedder | None
) -> dict[str, float]:
    candidate = tokenize(parsed.text)
    reference = tokenize(example.reference)
    return {
        "bleu-1": bleu(candidate, reference, _BLEU1).value,
        "bleu-4": bleu(candidate, reference, _BLEU4).value,
        "bertscore": _bertscore_f1(parsed.text, example.reference, embedder),
        "rouge-1": rouge_n(candidate, reference, 1).value,
        "rouge-2": rouge_n(candidate, reference, 2).value,
        "rouge-l": rouge_l(candidate, reference).value,
        "meteor": meteor(candidate, reference).value,
    }


def _bertscore_f1(candidate: str, reference: str, embedder: TokenEmbedder | None) -> float:
    assert embedder is not None  # enforced by evaluate_scenario
    (_, cand_rows), (_, ref_rows) = embedder.embed([candidate, reference])
    if cand_rows.shape[0] == 0 or ref_rows.shape[0] == 0:
        return 0.0
    return bert_score(cand_rows, ref_rows).f1
