"""Scoring primitives: tokenization, overlap, ranking, and embedding metrics."""

from .bertscore import bert_score
from .classification import PRF, ConfusionCounts, accuracy, prf_sets
from .generation import (
    BleuParams,
    MeteorParams,
    MetricScore,
    RougeLBeta,
    bleu,
    meteor,
    rouge_l,
    rouge_n,
)
from .ranking import TopKScores, mrr, ndcg, ndcg_batch, reciprocal_rank, topk_metrics
from .text import CJK_WORD_MODE, WHITESPACE_MODE, ngrams, tokenize

__all__ = [
    "PRF",
    "ConfusionCounts",
    "accuracy",
    "prf_sets",
    "BleuParams",
    "MeteorParams",
    "MetricScore",
    "RougeLBeta",
    "bleu",
    "meteor",
    "rouge_l",
    "rouge_n",
    "TopKScores",
    "mrr",
    "ndcg",
    "ndcg_batch",
    "reciprocal_rank",
    "topk_metrics",
    "bert_score",
    "CJK_WORD_MODE",
    "WHITESPACE_MODE",
    "ngrams",
    "tokenize",
]
