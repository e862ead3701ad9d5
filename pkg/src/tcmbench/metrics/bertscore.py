"""Greedy-matching embedding similarity reported as precision/recall/F1."""

from __future__ import annotations

import numpy as np

from .classification import PRF


def bert_score(candidate: np.ndarray, reference: np.ndarray) -> PRF:
    """Greedy max-cosine token matching between two embedding matrices.

    Each candidate row takes its best cosine match among reference rows
    (precision side); recall is symmetric; F1 is the harmonic mean.
    Rows are unit-normalized first and the means are clipped at 0 so the
    score stays in [0, 1] even for adversarial embeddings.
    """
    cand = _normalized(candidate, "candidate")
    ref = _normalized(reference, "reference")
    if cand.shape[1] != ref.shape[1]:
        raise ValueError(
            f"embedding dimension mismatch: candidate {cand.shape[1]} vs reference {ref.shape[1]}"
        )

    similarity = cand @ ref.T
    precision = _unit_clip(float(similarity.max(axis=1).mean()))
    recall = _unit_clip(float(similarity.max(axis=0).mean()))
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return PRF(precision, recall, f1)


def _unit_clip(value: float) -> float:
    # Cosine roundoff can leak a hair outside [0, 1]; scores must not.
    return min(1.0, max(0.0, value))


def _normalized(matrix: np.ndarray, name: str) -> np.ndarray:
    rows = np.asarray(matrix, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[0] == 0 or rows.shape[1] == 0:
        raise ValueError(f"{name} matrix must be non-empty and two-dimensional")
    if not np.isfinite(rows).all():
        raise ValueError(f"{name} matrix contains non-finite values")
    norms = np.linalg.norm(rows, axis=1, keepdims=True)
    if (norms == 0).any():
        raise ValueError(f"{name} matrix contains a zero-norm row")
    return rows / norms
