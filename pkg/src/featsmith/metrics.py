"""Evaluation metrics: Jaccard distance over API sets, MRR and Hit@1."""

from __future__ import annotations

from typing import Iterable


def jaccard_distance(mined_apis: Iterable[str], reference_apis: Iterable[str]) -> float:
    """1 - |X n Y| / |X u Y|; two empty sets are identical (distance 0)."""
    x, y = set(mined_apis), set(reference_apis)
    union = x | y
    if not union:
        return 0.0
    return 1.0 - len(x & y) / len(union)


def recommendation_metrics(log: list[dict]) -> tuple[float, float]:
    """(MRR, Hit@1) over interactions.

    Each record carries accepted_rank: a 1-based rank, or None when no
    useful recommendation existed (contributing 0 to both metrics).
    """
    if not log:
        raise ValueError("empty interaction log: metrics undefined")
    reciprocal = 0.0
    hits = 0
    for rec in log:
        rank = rec.get("accepted_rank")
        if rank is None:
            continue
        if rank < 1:
            raise ValueError(f"accepted_rank must be >= 1, got {rank}")
        reciprocal += 1.0 / rank
        if rank == 1:
            hits += 1
    n = len(log)
    return reciprocal / n, hits / n
