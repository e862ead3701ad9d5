"""Prompt construction: one worked exemplar as the system message, the
item's question (plus lettered options for multiple choice) as the user
message."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigurationError
from ..scenarios import ScenarioExample, ScenarioKind
from .endpoints import ChatRequest, chat_request


@dataclass(frozen=True)
class PromptTemplate:
    """System/user templates; {exemplar}, {question}, {options} slots."""

    system: str
    user: str
    exemplar: str = ""


_GENERATION_SYSTEM = "你是中医领域的专家助手。请直接给出答案正文，不要输出与问题无关的内容。示例：\n{exemplar}"

DEFAULT_TEMPLATES: dict[ScenarioKind, PromptTemplate] = {
    ScenarioKind.APQ: PromptTemplate(
        system=(
            "你是中医考试答题助手。阅读单选题后只输出正确选项的字母"
            "（A、B、C、D或E），不要解释。示例：\n{exemplar}"
        ),
        user="{question}\n{options}",
        exemplar="题目：下列哪味药被称为百药之王？\nA. 人参\nB. 甘草\nC. 黄芪\n答案：B",
    ),
    ScenarioKind.TCMCD: PromptTemplate(
        system="你是中医辨证诊断助手。根据病例给出证型名称，只输出证型。示例：\n{exemplar}",
        user="{question}",
        exemplar="病例：情志不舒，胁胀纳差，脉弦。\n证型：肝郁脾虚",
    ),
    ScenarioKind.TCMEE: PromptTemplate(
        system="你是中医文本实体抽取助手。列出文本中的全部中医实体，用顿号分隔。示例：\n{exemplar}",
        user="{question}",
        exemplar="文本：方用人参、白术、茯苓。\n实体：人参、白术、茯苓",
    ),
    ScenarioKind.HFR: PromptTemplate(
        system="你是中药方剂推荐助手。按推荐优先级列出药物或方剂，用顿号分隔。示例：\n{exemplar}",
        user="{question}",
        exemplar="主诉：气虚乏力。\n推荐：人参、黄芪、白术",
    ),
    ScenarioKind.APR: PromptTemplate(
        system="你是针灸选穴推荐助手。按优先级列出穴位，用顿号分隔。示例：\n{exemplar}",
        user="{question}",
        exemplar="主诉：胃脘胀痛。\n推荐：足三里、中脘、内关",
    ),
    ScenarioKind.HCCA: PromptTemplate(
        system=_GENERATION_SYSTEM,
        user="请分析下列药物的主要化学成分：{question}",
        exemplar="问：人参的主要化学成分？\n答：人参皂苷、人参多糖等。",
    ),
    ScenarioKind.GCPMI: PromptTemplate(
        system=_GENERATION_SYSTEM,
        user="请为下列中成药撰写说明书内容：{question}",
        exemplar="问：六味地黄丸说明。\n答：滋阴补肾。用于肾阴亏损诸证。",
    ),
    ScenarioKind.DHPE: PromptTemplate(
        system=_GENERATION_SYSTEM,
        user="请描述下列药物的药理作用：{question}",
        exemplar="问：黄芪的药理作用？\n答：增强免疫、抗疲劳等作用。",
    ),
    ScenarioKind.TCMKQA: PromptTemplate(
        system=_GENERATION_SYSTEM,
        user="{question}",
        exemplar="问：何谓君臣佐使？\n答：方剂配伍的组织原则。",
    ),
    ScenarioKind.TCMRC: PromptTemplate(
        system=_GENERATION_SYSTEM,
        user="阅读材料并回答问题：{question}",
        exemplar="材料：……\n问：……\n答：……",
    ),
    ScenarioKind.TLAW: PromptTemplate(
        system=_GENERATION_SYSTEM,
        user="请围绕以下主题撰写一段研究摘要：{question}",
        exemplar="主题：黄芪药理研究。\n摘要：本研究考察黄芪……",
    ),
    ScenarioKind.ADTG: PromptTemplate(
        system=_GENERATION_SYSTEM,
        user="请根据以下摘要拟定研究主题：{question}",
        exemplar="摘要：本研究考察黄芪……\n主题：黄芪药理研究。",
    ),
}


def render_options(options: dict[str, str]) -> str:
    return "\n".join(f"{letter}. {text}" for letter, text in sorted(options.items()))


def render_prompt(
    example: ScenarioExample,
    templates: dict[ScenarioKind, PromptTemplate] | None = None,
    *,
    temperature: float = 0.0,
    max_tokens: int = 1024,
) -> ChatRequest:
    """Deterministically build the chat request for one benchmark item."""
    templates = templates if templates is not None else DEFAULT_TEMPLATES
    template = templates.get(example.kind)
    if template is None:
        raise ConfigurationError(f"no prompt template for scenario {example.kind.value}")
    exemplar = example.system_exemplar or template.exemplar
    system = template.system.format(exemplar=exemplar)
    user = template.user.format(
        question=example.question, options=render_options(example.options)
    ).rstrip()
    return chat_request(system, user, temperature=temperature, max_tokens=max_tokens)
