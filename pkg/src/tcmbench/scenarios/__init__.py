"""The twelve scenario kinds, their answer parsers, and batch scoring."""

from .evaluate import (
    ItemScore,
    MetricReport,
    ModelResponse,
    TokenEmbedder,
    evaluate_scenario,
    parse_response,
)
from .kinds import (
    BENCHMARK_SET_SIZES,
    CHOICE_KINDS,
    ENTITY_KINDS,
    GENERATION_KINDS,
    LABEL_KINDS,
    METRIC_SUITES,
    OPTION_LETTERS,
    RANKING_KINDS,
    ScenarioExample,
    ScenarioKind,
    metric_suite_for,
    requires_embedder,
)
from .parsing import (
    AnswerVariant,
    ParsedAnswer,
    extract_label,
    extract_option_letter,
    normalize_item,
    normalize_label,
    parse_free_text,
    parse_item_list,
    strip_reasoning_markup,
    unify_width,
)

__all__ = [
    "ItemScore",
    "MetricReport",
    "ModelResponse",
    "TokenEmbedder",
    "evaluate_scenario",
    "parse_response",
    "BENCHMARK_SET_SIZES",
    "CHOICE_KINDS",
    "ENTITY_KINDS",
    "GENERATION_KINDS",
    "LABEL_KINDS",
    "METRIC_SUITES",
    "OPTION_LETTERS",
    "RANKING_KINDS",
    "ScenarioExample",
    "ScenarioKind",
    "metric_suite_for",
    "requires_embedder",
    "AnswerVariant",
    "ParsedAnswer",
    "extract_label",
    "extract_option_letter",
    "normalize_item",
    "normalize_label",
    "parse_free_text",
    "parse_item_list",
    "strip_reasoning_markup",
    "unify_width",
]
