"""Unique-maximum colorings built from conflict-free ones, and the instances
showing the resulting color counts cannot be improved."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Tuple

from cfum.hypergraph import CF, Certificate, Coloring, Hypergraph, InstanceError, is_valid


class PreconditionError(InstanceError):
    def __init__(self, message: str, certificate: Certificate = None):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class PartitionedHypergraph:
    base: Hypergraph
    parts: Tuple[Tuple[int, ...], ...]
    warnings: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        flat = [v for p in self.parts for v in p]
        if sorted(flat) != list(range(self.base.n)):
            raise InstanceError("parts must partition the vertex set")

    @property
    def k(self) -> int:
        return len(self.parts)

    def part_coloring(self) -> Coloring:
        """Vertex ``v`` gets ``1 + index of its part``."""
        colors = [0] * self.base.n
        for i, p in enumerate(self.parts):
            for v in p:
                colors[v] = i + 1
        return Coloring(colors, self.k)


def almost_equal_parts(n: int, k: int) -> Tuple[Tuple[int, ...], ...]:
    """Contiguous blocks; the first ``n mod k`` have ``ceil(n/k)`` vertices."""
    if not 1 <= k <= n:
        raise InstanceError(f"need 1 <= k <= n, got n={n}, k={k}")
    big = n % k or k
    size = math.ceil(n / k)
    parts, start = [], 0
    for i in range(k):
        width = size if i < big else size - 1
        parts.append(tuple(range(start, start + width)))
        start += width
    return tuple(parts)


def _classes_by_size(C: Coloring) -> List[Tuple[int, List[int]]]:
    """Color classes, biggest first; ties go to the lower color."""
    members: dict = {}
    for v, c in enumerate(C.colors):
        members.setdefault(c, []).append(v)
    return sorted(members.items(), key=lambda item: (-len(item[1]), item[0]))


def _require_cf(H: Hypergraph, C: Coloring):
    cert = is_valid(H, C, CF)
    if not cert.ok:
        raise PreconditionError(f"input coloring is not conflict-free on edge {cert.edge}", cert)


def um_from_cf(H: Hypergraph, C_cf: Coloring) -> Coloring:
    """Biggest conflict-free class gets color 1, every other vertex a fresh color.

    Uses at most ``n - ceil(n/k) + 1`` colors where ``k`` is the number of
    classes of ``C_cf``.
    """
    _require_cf(H, C_cf)
    classes = _classes_by_size(C_cf)
    if len(classes) <= 1:
        return C_cf
    bottom = set(classes[0][1])
    colors, nxt = [], 2
    for v in range(H.n):
        if v in bottom:
            colors.append(1)
        else:
            colors.append(nxt)
            nxt += 1
    return Coloring(colors, nxt - 1)


def um_from_cf_uniform(H: Hypergraph, C_cf: Coloring, l: int) -> Coloring:
    """Variant for ``l``-uniform hypergraphs saving ``l - 3`` further colors.

    The biggest class gets color 1, the ``min(l-2, |P2|)`` lowest-indexed
    vertices of the second biggest class get color 2, the rest distinct
    colors from 3 upwards in vertex order.
    """
    if l < 3:
        raise InstanceError(f"edge size must be at least 3, got {l}")
    bad = [e for e in H.edges if len(e) != l]
    if bad:
        raise InstanceError(f"hypergraph is not {l}-uniform: edge {bad[0]}")
    _require_cf(H, C_cf)
    classes = _classes_by_size(C_cf)
    if len(classes) <= 1:
        return C_cf
    bottom = set(classes[0][1])
    second = set(sorted(classes[1][1])[: l - 2])
    colors, nxt = [], 3
    for v in range(H.n):
        if v in bottom:
            colors.append(1)
        elif v in second:
            colors.append(2)
        else:
            colors.append(nxt)
            nxt += 1
    return Coloring(colors, max(colors))


def general_bound(n: int, k: int) -> int:
    return n - math.ceil(n / k) + 1


def uniform_bound(n: int, k: int, l: int) -> int:
    return n - math.ceil(n / k) - l + 4


def extremal_nonuniform(n: int, k: int) -> PartitionedHypergraph:
    """All 2- and 3-sets meeting exactly two of ``k`` almost equal parts."""
    parts = almost_equal_parts(n, k)
    where = {v: i for i, p in enumerate(parts) for v in p}
    edges = [
        e
        for size in (2, 3)
        for e in combinations(range(n), size)
        if len({where[v] for v in e}) == 2
    ]
    return PartitionedHypergraph(Hypergraph(n, edges), parts)


def extremal_uniform(n: int, k: int, l: int) -> PartitionedHypergraph:
    """All ``l``-sets that meet some part in exactly one vertex.

    Below ``n = 2kl`` the instance is still built but flagged, since the
    matching lower bound is only known from there on.
    """
    if l < 3:
        raise InstanceError(f"edge size must be at least 3, got {l}")
    parts = almost_equal_parts(n, k)
    where = {v: i for i, p in enumerate(parts) for v in p}
    edges = []
    for e in combinations(range(n), l):
        hits = Counter(where[v] for v in e)
        if 1 in hits.values():
            edges.append(e)
    warnings = () if n >= 2 * k * l else (f"n={n} < 2kl={2 * k * l}: tightness not guaranteed",)
    return PartitionedHypergraph(Hypergraph(n, edges), parts, warnings)
