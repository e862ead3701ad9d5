"""Synthetic demo material: small schema-valid datasets for all twelve
scenarios plus a matching answer script for the mock endpoint.

Everything is deterministic in the seed, so demo runs are reproducible
end to end and tests can assert exact behaviour.
"""

from __future__ import annotations

import hashlib
import json
import random
from pathlib import Path

from .datasets import save_dataset
from .modelclient import DEFAULT_TEMPLATES, render_prompt
from .scenarios import (
    GENERATION_KINDS,
    OPTION_LETTERS,
    ScenarioExample,
    ScenarioKind,
)

_HERBS = ["人参", "黄芪", "甘草", "当归", "白术", "茯苓", "柴胡", "丹参", "川芎", "白芍", "枸杞", "金银花"]
_POINTS = ["足三里", "合谷", "内关", "中脘", "三阴交", "太冲", "曲池", "百会", "关元", "风池"]
_SYNDROMES = ["肝郁脾虚", "气血两虚", "肾阳虚", "痰湿内阻", "心脾两虚", "肝阳上亢", "脾胃虚寒", "阴虚火旺"]
_EFFECTS = ["补气健脾", "养血安神", "清热解毒", "活血化瘀", "疏肝理气", "滋阴补肾", "温中散寒", "化痰止咳"]


def build_demo_datasets(
    directory: str | Path, items_per_kind: int = 10, seed: int = 0
) -> dict[ScenarioKind, Path]:
    """Write one JSONL dataset per scenario kind; returns kind -> path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths: dict[ScenarioKind, Path] = {}
    for kind in ScenarioKind:
        rng = random.Random(f"{seed}:{kind.value}")
        records = [_make_example(kind, index, rng) for index in range(items_per_kind)]
        path = directory / f"{kind.value.lower()}.jsonl"
        save_dataset(records, path)
        paths[kind] = path
    return paths


def build_answer_script(
    datasets: dict[ScenarioKind, Path], *, perfect: bool = False
) -> dict[str, str]:
    """Map each item's rendered user message to a scripted reply.

    By default roughly 70% of replies are correct, 20% wrong but
    parseable, 10% unparseable; ``perfect`` makes every reply the gold
    answer. Buckets are keyed on the item id digest, so the script is
    stable across processes.
    """
    from .datasets import load_dataset

    script: dict[str, str] = {}
    for kind, path in datasets.items():
        for example in load_dataset(path).records:
            request = render_prompt(example, DEFAULT_TEMPLATES)
            user = next(m.content for m in request.messages if m.role == "user")
            bucket = 0 if perfect else _bucket(example.id)
            script[user] = _scripted_reply(example, bucket)
    return script


def write_demo_config(
    path: str | Path,
    datasets: dict[ScenarioKind, Path],
    *,
    base_url: str,
    cache_dir: str | Path,
    output_dir: str | Path,
    model_id: str = "mock-model",
    embedding_provider: str = "hash:32",
) -> Path:
    """Write a run config pointing every scenario at one endpoint."""
    payload = {
        "endpoints": [
            {
                "model_id": model_id,
                "kind": "local-http",
                "base_url": base_url,
                "max_concurrent": 4,
                "completion_path": "/v1/chat/completions",
            }
        ],
        "scenarios": {kind.value: str(p) for kind, p in sorted(datasets.items())},
        "cache_dir": str(cache_dir),
        "output_dir": str(output_dir),
        "embedding_provider": embedding_provider,
        "decode": {"temperature": 0.0, "max_tokens": 512},
        "retry": {"attempts": 2, "base_delay": 0.001, "max_delay": 0.01},
    }
    path = Path(path)
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    return path


def _bucket(item_id: str) -> int:
    digest = hashlib.sha256(item_id.encode("utf-8")).digest()
    return digest[0] % 10


def _scripted_reply(example: ScenarioExample, bucket: int) -> str:
    correct = bucket <= 6
    garbled = bucket == 9
    kind = example.kind
    if kind is ScenarioKind.APQ:
        if garbled:
            return "本题无法作答。"
        if correct:
            return f"答案：{example.reference}"
        wrong = next(l for l in example.options if l != example.reference)
        return f"答案：{wrong}"
    if kind is ScenarioKind.TCMCD:
        if garbled:
            return "   "
        if correct:
            return f"证型：{example.reference}"
        pool = [s for s in _SYNDROMES if s != example.reference]
        return f"证型：{pool[bucket % len(pool)]}"
    if kind in (ScenarioKind.TCMEE, ScenarioKind.HFR, ScenarioKind.APR):
        if garbled:
            return "。。。"
        items = list(example.gold_items)
        if not correct:
            items = items[1:] + ["麻黄"]  # drop the best item, add a stray one
        return "、".join(items)
    if kind in GENERATION_KINDS:
        if garbled:
            return ""
        if correct:
            return example.reference
        return "相关研究较多，此处从略。"
    raise AssertionError(f"unhandled kind {kind}")


def _make_example(kind: ScenarioKind, index: int, rng: random.Random) -> ScenarioExample:
    item_id = f"{kind.value.lower()}-{index:04d}"
    if kind is ScenarioKind.APQ:
        herbs = rng.sample(_HERBS, 4)
        gold = rng.choice(OPTION_LETTERS[:4])
        effect = rng.choice(_EFFECTS)
        options = dict(zip(OPTION_LETTERS, herbs))
        return ScenarioExample(
            id=item_id,
            kind=kind,
            question=f"下列哪味药长于{effect}（第{index + 1}题）？",
            reference=gold,
            options=options,
        )
    if kind is ScenarioKind.TCMCD:
        return ScenarioExample(
            id=item_id,
            kind=kind,
            question=f"病例{index + 1}：患者{rng.choice(['男', '女'])}，{rng.randint(20, 70)}岁，"
            f"主诉{rng.choice(['乏力', '胁痛', '失眠', '纳差'])}，脉{rng.choice(['弦', '细', '沉', '滑'])}。请辨证。",
            reference=rng.choice(_SYNDROMES),
        )
    if kind is ScenarioKind.TCMEE:
        entities = rng.sample(_HERBS, 3)
        return ScenarioExample(
            id=item_id,
            kind=kind,
            question=f"抽取下文中的中药实体（样本{index}）：方用{entities[0]}、{entities[1]}与{entities[2]}加减。",
            reference="、".join(entities),
            gold_items=tuple(entities),
        )
    if kind is ScenarioKind.HFR:
        gold = rng.sample(_HERBS, 3)
        return ScenarioExample(
            id=item_id,
            kind=kind,
            question=f"患者{rng.choice(_SYNDROMES)}（病例{index + 1}），推荐用药。",
            reference="、".join(gold),
            gold_items=tuple(gold),
        )
    if kind is ScenarioKind.APR:
        gold = rng.sample(_POINTS, 3)
        return ScenarioExample(
            id=item_id,
            kind=kind,
            question=f"患者{rng.choice(['头痛', '胃痛', '腰痛', '失眠'])}（病例{index + 1}），推荐穴位。",
            reference="、".join(gold),
            gold_items=tuple(gold),
        )
    herb = rng.choice(_HERBS)
    effect = rng.choice(_EFFECTS)
    question, reference = {
        ScenarioKind.HCCA: (
            f"{herb}的化学成分（样本{index}）",
            f"{herb}主要含{herb}皂苷、多糖及挥发油等成分，具有{effect}的基础。",
        ),
        ScenarioKind.GCPMI: (
            f"{herb}口服液（样本{index}）",
            f"{herb}口服液功能{effect}，用于相关诸证，口服，一次一支，一日两次。",
        ),
        ScenarioKind.DHPE: (
            f"{herb}的药理作用（样本{index}）",
            f"{herb}具有{effect}相关的药理活性，并有抗氧化与免疫调节作用。",
        ),
        ScenarioKind.TCMKQA: (
            f"{herb}的功效是什么（样本{index}）？",
            f"{herb}的主要功效是{effect}，常用于相应病证。",
        ),
        ScenarioKind.TCMRC: (
            f"材料：{herb}味甘，功能{effect}。问：{herb}的功能？（样本{index}）",
            f"{herb}的功能是{effect}。",
        ),
        ScenarioKind.TLAW: (
            f"{herb}治疗应用研究（样本{index}）",
            f"目的：考察{herb}的临床应用。方法：回顾相关文献。结果：{herb}以{effect}见长。结论：值得进一步研究。",
        ),
        ScenarioKind.ADTG: (
            f"摘要：本文回顾{herb}的{effect}作用及其机制（样本{index}）。",
            f"{herb}的{effect}作用研究",
        ),
    }[kind]
    return ScenarioExample(id=item_id, kind=kind, question=question, reference=reference)
