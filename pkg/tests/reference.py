"""Brute-force reference implementations used as test oracles.

The clustering reference recomputes every pairwise linkage distance from the
raw points at every step, so it shares no code path with the optimized
Lance-Williams implementation it checks.
"""

from __future__ import annotations

import math

import numpy as np


def _ward_cost(a: list[int], b: list[int], points, weights) -> float:
    na = sum(weights[i] for i in a)
    nb = sum(weights[i] for i in b)
    ca = sum((points[i] * weights[i] for i in a), np.zeros_like(points[0])) / na
    cb = sum((points[i] * weights[i] for i in b), np.zeros_like(points[0])) / nb
    gap = float(np.linalg.norm(ca - cb))
    return math.sqrt(2.0 * na * nb / (na + nb)) * gap


def _average_distance(a: list[int], b: list[int], points, weights) -> float:
    total = 0.0
    for i in a:
        for j in b:
            total += weights[i] * weights[j] * float(np.linalg.norm(points[i] - points[j]))
    na = sum(weights[i] for i in a)
    nb = sum(weights[i] for i in b)
    return total / (na * nb)


def reference_hac(
    vectors,
    *,
    weights=None,
    linkage: str = "ward",
    threshold: float = 0.5,
    cannot_link=frozenset(),
) -> set[frozenset[int]]:
    """Exhaustive agglomerative clustering; O(n^4) but obviously correct.

    Clusters carry scipy-style ids (originals 0..n-1, merges n, n+1, ...);
    each step merges the (distance, i, j)-minimal admissible pair while the
    distance does not exceed the threshold.
    """
    points = [np.asarray(v, dtype=np.float64) for v in vectors]
    n = len(points)
    weights = [1.0] * n if weights is None else [float(w) for w in weights]
    clusters: dict[int, list[int]] = {i: [i] for i in range(n)}
    next_id = n
    forbidden = {frozenset(p) for p in cannot_link}

    def blocked(a: list[int], b: list[int]) -> bool:
        return any(frozenset({i, j}) in forbidden for i in a for j in b)

    while len(clusters) > 1:
        best = None
        ids = sorted(clusters)
        for x in range(len(ids)):
            for y in range(x + 1, len(ids)):
                i, j = ids[x], ids[y]
                if blocked(clusters[i], clusters[j]):
                    continue
                if linkage == "ward":
                    d = _ward_cost(clusters[i], clusters[j], points, weights)
                else:
                    d = _average_distance(clusters[i], clusters[j], points, weights)
                cand = (d, i, j)
                if best is None or cand < best:
                    best = cand
        if best is None or best[0] > threshold:
            break
        _, bi, bj = best
        clusters[next_id] = clusters.pop(bi) + clusters.pop(bj)
        next_id += 1
    return {frozenset(block) for block in clusters.values()}
