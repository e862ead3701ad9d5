"""The 27-model comparison roster used in the published benchmark run.

Metadata only (name, base model, category, deployment style); endpoint
URLs and credentials are wired per run through the config file.
"""

from __future__ import annotations

from dataclasses import dataclass

TCM = "TCM"
CHINESE_MEDICAL = "Chinese medical"
GENERAL = "General"
LOCAL = "Local"
API = "API"


@dataclass(frozen=True)
class RosterEntry:
    model: str
    base_model: str
    model_type: str
    deployment: str


MODEL_ROSTER: tuple[RosterEntry, ...] = (
    RosterEntry("Bentsao", "LLaMA-7B", TCM, LOCAL),
    RosterEntry("BianCang-Qwen2.5-7B-Instruct", "Qwen2.5-7B-Instruct", TCM, LOCAL),
    RosterEntry("HuatuoGPT2-13B", "Baichuan2-13B-Base", TCM, LOCAL),
    RosterEntry("Lingdan-13B-Base", "Baichuan2-13B-Base", TCM, LOCAL),
    RosterEntry("Lingdan-13B-PR", "Baichuan2-13B-Base", TCM, LOCAL),
    RosterEntry("ShenNong", "LLaMA-7B", TCM, LOCAL),
    RosterEntry("Sunsimiao-7B", "Qwen2-7B", TCM, LOCAL),
    RosterEntry("TCMchat", "Baichuan2-7B-Chat", TCM, LOCAL),
    RosterEntry("ZhongjingGPT1-13B", "Baichuan2-13B-Chat", TCM, LOCAL),
    RosterEntry("Baichuan-M1-14B", "Baichuan-M1-14B", CHINESE_MEDICAL, LOCAL),
    RosterEntry("BianQue-2", "ChatGLM-6B", CHINESE_MEDICAL, LOCAL),
    RosterEntry("Chatmed", "LLaMA-7B", CHINESE_MEDICAL, LOCAL),
    RosterEntry("Baichuan2-13B-Chat", "Baichuan2-13B-Chat", GENERAL, LOCAL),
    RosterEntry("Baichuan2-7B-Chat", "Baichuan2-7B-Chat", GENERAL, LOCAL),
    RosterEntry("ChatGLM3-6B", "ChatGLM3-6B", GENERAL, LOCAL),
    RosterEntry("DeepSeek-R1-Distill-Qwen-14B", "Qwen2.5-14B", GENERAL, LOCAL),
    RosterEntry("DeepSeek-R1-Distill-Qwen-32B", "Qwen2.5-32B", GENERAL, LOCAL),
    RosterEntry("DeepSeek-R1-Distill-Qwen-7B", "Qwen2.5-Math-7B", GENERAL, LOCAL),
    RosterEntry("Llama3-8B-Chinese-Chat", "Llama3-8B-Chinese-Chat", GENERAL, LOCAL),
    RosterEntry("Qwen2.5-14B-Instruct", "Qwen2.5-14B", GENERAL, LOCAL),
    RosterEntry("Qwen2.5-32B-Instruct", "Qwen2.5-32B", GENERAL, LOCAL),
    RosterEntry("Qwen2.5-72B-Instruct", "Qwen2.5-72B", GENERAL, LOCAL),
    RosterEntry("Qwen2.5-Math-7B", "Qwen2.5-Math-7B", GENERAL, LOCAL),
    RosterEntry("Deepseek-R1", "Deepseek-R1", GENERAL, API),
    RosterEntry("Deepseek-V3", "Deepseek-V3", GENERAL, API),
    RosterEntry("GPT-3.5-turbo", "GPT-3.5-turbo", GENERAL, API),
    RosterEntry("GPT-4o", "GPT-4o", GENERAL, API),
)
