"""The twelve task families and the metric suite bound to each."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..errors import ValidationError


class ScenarioKind(str, Enum):
    APQ = "APQ"  # answer prediction questions (single choice)
    TCMCD = "TCMCD"  # case diagnosis (syndrome label)
    TCMEE = "TCMEE"  # entity extraction
    HFR = "HFR"  # herb/formula recommendation
    APR = "APR"  # acupoint recommendation
    HCCA = "HCCA"  # chemical composition analysis
    GCPMI = "GCPMI"  # patent medicine instruction generation
    DHPE = "DHPE"  # pharmacological effect description
    TCMKQA = "TCMKQA"  # knowledge question answering
    TCMRC = "TCMRC"  # reading comprehension
    TLAW = "TLAW"  # topic-led abstract writing
    ADTG = "ADTG"  # abstract-driven topic generation

    @classmethod
    def parse(cls, value: str) -> "ScenarioKind":
        try:
            return cls(value.upper())
        except ValueError:
            raise ValidationError(f"unknown scenario kind: {value!r}") from None


CHOICE_KINDS = frozenset({ScenarioKind.APQ})
LABEL_KINDS = frozenset({ScenarioKind.TCMCD})
ENTITY_KINDS = frozenset({ScenarioKind.TCMEE})
RANKING_KINDS = frozenset({ScenarioKind.HFR, ScenarioKind.APR})
GENERATION_KINDS = frozenset(
    {
        ScenarioKind.HCCA,
        ScenarioKind.GCPMI,
        ScenarioKind.DHPE,
        ScenarioKind.TCMKQA,
        ScenarioKind.TCMRC,
        ScenarioKind.TLAW,
        ScenarioKind.ADTG,
    }
)

_GENERATION_SUITE = ("bleu-1", "bleu-4", "bertscore", "rouge-1", "rouge-2", "rouge-l", "meteor")
_RANKING_SUITE = ("mrr", "p@3", "r@3", "hr@3", "ndcg")

METRIC_SUITES: dict[ScenarioKind, tuple[str, ...]] = {
    ScenarioKind.APQ: ("accuracy",),
    ScenarioKind.TCMCD: ("accuracy",),
    ScenarioKind.TCMEE: ("precision", "recall", "f1"),
    ScenarioKind.HFR: _RANKING_SUITE,
    ScenarioKind.APR: _RANKING_SUITE + ("accuracy",),
    **{kind: _GENERATION_SUITE for kind in GENERATION_KINDS},
}

# Published benchmark sizes, kept as reference constants for manifests
# and documentation; loaders do not enforce them.
BENCHMARK_SET_SIZES: dict[ScenarioKind, int] = {
    ScenarioKind.APQ: 2000,
    ScenarioKind.TCMCD: 500,
    ScenarioKind.TCMEE: 480,
    ScenarioKind.HFR: 500,
    ScenarioKind.APR: 350,
    ScenarioKind.HCCA: 437,
    ScenarioKind.GCPMI: 566,
    ScenarioKind.DHPE: 437,
    ScenarioKind.TCMKQA: 500,
    ScenarioKind.TCMRC: 500,
    ScenarioKind.TLAW: 1000,
    ScenarioKind.ADTG: 1000,
}

OPTION_LETTERS = ("A", "B", "C", "D", "E")


def metric_suite_for(kind: ScenarioKind) -> tuple[str, ...]:
    return METRIC_SUITES[kind]


def requires_embedder(kind: ScenarioKind) -> bool:
    return "bertscore" in METRIC_SUITES[kind]


@dataclass(frozen=True)
class ScenarioExample:
    """One benchmark item: prompt material plus its gold payload.

    ``reference`` carries the gold letter (APQ), label (TCMCD), or
    reference text (generation kinds); ``gold_items`` carries the gold
    sets for recommendation and entity-extraction kinds.
    """

    id: str
    kind: ScenarioKind
    question: str
    reference: str = ""
    options: dict[str, str] = field(default_factory=dict)
    gold_items: tuple[str, ...] = ()
    system_exemplar: str | None = None
    source: str | None = None

    def validate(self) -> None:
        if not self.id:
            raise ValidationError("example is missing an id")
        if not self.question.strip():
            raise ValidationError(f"example {self.id}: question is empty")
        if self.kind in CHOICE_KINDS:
            self._validate_options()
        elif self.kind in LABEL_KINDS:
            if not self.reference.strip():
                raise ValidationError(f"example {self.id}: reference label is empty")
        elif self.kind in ENTITY_KINDS or self.kind in RANKING_KINDS:
            if not self.gold_items:
                raise ValidationError(f"example {self.id}: gold_items is empty")
            if any(not item.strip() for item in self.gold_items):
                raise ValidationError(f"example {self.id}: gold_items contains a blank item")
        elif self.kind in GENERATION_KINDS:
            if not self.reference.strip():
                raise ValidationError(f"example {self.id}: reference text is empty")

    def _validate_options(self) -> None:
        if not 2 <= len(self.options) <= 5:
            raise ValidationError(f"example {self.id}: need 2-5 options, got {len(self.options)}")
        for letter in self.options:
            if letter not in OPTION_LETTERS:
                raise ValidationError(f"example {self.id}: bad option letter {letter!r}")
        if self.reference not in self.options:
            raise ValidationError(
                f"example {self.id}: gold letter {self.reference!r} is not among the options"
            )
