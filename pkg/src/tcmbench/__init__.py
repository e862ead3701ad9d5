"""Benchmark harness for TCM-domain chat models.

Subpackages: metrics (scoring primitives), scenarios (the twelve task
families and their answer parsers), datasets (benchmark file handling),
corpus (pre-training/SFT corpus construction), modelclient (chat endpoint
access), runner (orchestration, ablation planning, reporting).
"""

__version__ = "0.1.0"
