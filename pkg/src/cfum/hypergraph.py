"""Hypergraphs, colorings and the five coloring predicates."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple


class InstanceError(ValueError):
    """Malformed hypergraph, tree, coloring or witness input."""


class ColoringKind(enum.Enum):
    NON_MONOCHROMATIC = "nm"
    RAINBOW = "rb"
    UNIQUE_MAXIMUM = "um"
    CONFLICT_FREE = "cf"
    ODD = "odd"

    @classmethod
    def parse(cls, value: "str | ColoringKind") -> "ColoringKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        raise InstanceError(f"unknown coloring kind {value!r}")


NM = ColoringKind.NON_MONOCHROMATIC
RB = ColoringKind.RAINBOW
UM = ColoringKind.UNIQUE_MAXIMUM
CF = ColoringKind.CONFLICT_FREE
ODD = ColoringKind.ODD
ALL_KINDS = (NM, RB, UM, CF, ODD)

# reason codes emitted on failure, one per kind
REASONS = {
    NM: "monochromatic",
    RB: "repeated_color",
    UM: "max_not_unique",
    CF: "no_unique_color",
    ODD: "all_even",
}


@dataclass(frozen=True)
class Hypergraph:
    """Vertices ``0..n-1`` and an ordered list of hyperedges.

    Edges are stored as sorted tuples; the list order is kept as given.
    """

    n: int
    edges: Tuple[Tuple[int, ...], ...]

    def __init__(self, n: int, edges: Iterable[Iterable[int]]):
        if n < 0:
            raise InstanceError(f"negative vertex count {n}")
        canon = []
        for i, e in enumerate(edges):
            e = tuple(int(v) for v in e)
            if not e:
                raise InstanceError(f"edge {i} is empty")
            if len(set(e)) != len(e):
                raise InstanceError(f"edge {i} repeats a vertex: {e}")
            for v in e:
                if not 0 <= v < n:
                    raise InstanceError(f"edge {i} has vertex {v} outside [0, {n})")
            canon.append(tuple(sorted(e)))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Coloring:
    """Per-vertex colors in ``1..k``; ``k`` may exceed the largest color used."""

    colors: Tuple[int, ...]
    k: int

    def __init__(self, colors: Iterable[int], k: Optional[int] = None):
        colors = tuple(int(c) for c in colors)
        if k is None:
            k = max(colors, default=1)
        k = int(k)
        if k < 1:
            raise InstanceError(f"palette size must be positive, got {k}")
        for v, c in enumerate(colors):
            if not 1 <= c <= k:
                raise InstanceError(f"vertex {v} has color {c} outside [1, {k}]")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "k", k)

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]


@dataclass(frozen=True)
class Certificate:
    """Outcome of a check. On failure ``edge`` names the offending vertex set."""

    ok: bool
    kind: Optional[ColoringKind] = None
    edge: Optional[Tuple[int, ...]] = None
    reason: str = "ok"
    detail: dict = field(default_factory=dict, compare=False)

    @property
    def verdict(self) -> str:
        return "pass" if self.ok else "fail"

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "kind": self.kind.value if self.kind is not None else None,
            "edge": list(self.edge) if self.edge is not None else None,
            "reason": self.reason,
        }
        if self.detail:
            out["detail"] = self.detail
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        kind = data.get("kind")
        edge = data.get("edge")
        return cls(
            ok=data["verdict"] == "pass",
            kind=ColoringKind.parse(kind) if kind is not None else None,
            edge=tuple(edge) if edge is not None else None,
            reason=data.get("reason", "ok"),
            detail=data.get("detail", {}),
        )


def passed(kind: Optional[ColoringKind] = None, reason: str = "ok", **detail) -> Certificate:
    return Certificate(True, kind, None, reason, detail)


def failed(kind: Optional[ColoringKind], edge, reason: Optional[str] = None, **detail) -> Certificate:
    if reason is None:
        reason = REASONS[kind]
    return Certificate(False, kind, tuple(edge) if edge is not None else None, reason, detail)


def parity_vector(C: Coloring, e: Iterable[int]) -> Tuple[int, ...]:
    """Bit ``i-1`` is the parity of the number of vertices of ``e`` colored ``i``."""
    bits = [0] * C.k
    for v in e:
        if not 0 <= v < len(C):
            raise InstanceError(f"vertex {v} outside [0, {len(C)})")
        bits[C.colors[v] - 1] ^= 1
    return tuple(bits)


def edge_satisfies(kind: ColoringKind, edge_colors: Sequence[int]) -> bool:
    """Predicate of ``kind`` on the multiset of colors of one edge."""
    counts: dict = {}
    for c in edge_colors:
        counts[c] = counts.get(c, 0) + 1
    if kind is NM:
        return len(edge_colors) == 1 or len(counts) > 1
    if kind is RB:
        return len(counts) == len(edge_colors)
    if kind is UM:
        return counts[max(counts)] == 1
    if kind is CF:
        return 1 in counts.values()
    if kind is ODD:
        return any(c & 1 for c in counts.values())
    raise InstanceError(f"unknown kind {kind!r}")


def is_valid(H: Hypergraph, C: Coloring, kind: "ColoringKind | str") -> Certificate:
    """Check every edge of ``H``; the first violating edge is reported."""
    kind = ColoringKind.parse(kind)
    if len(C) != H.n:
        raise InstanceError(f"coloring has {len(C)} entries, hypergraph has {H.n} vertices")
    colors = C.colors
    for e in H.edges:
        if not edge_satisfies(kind, [colors[v] for v in e]):
            return failed(kind, e)
    return passed(kind)


def recheck(C: Coloring, cert: Certificate) -> bool:
    """True when a fail certificate's edge really violates its kind under ``C``."""
    if cert.ok or cert.edge is None or cert.kind is None:
        return False
    return not edge_satisfies(cert.kind, [C.colors[v] for v in cert.edge])


def colors_used(C: "Coloring | Sequence[int]") -> int:
    colors = C.colors if isinstance(C, Coloring) else C
    return len(set(colors))


# -- file formats -------------------------------------------------------------


def format_hypergraph(H: Hypergraph) -> str:
    lines = [f"{H.n} {H.m}"] + [" ".join(map(str, e)) for e in H.edges]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the ``.hg`` format: ``n m`` then one edge per line."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise InstanceError("first line must be 'n m'")
    try:
        n, m = (int(x) for x in lines[0])
        edges = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise InstanceError(f"non-integer token: {exc}") from None
    if len(edges) != m:
        raise InstanceError(f"header announces {m} edges, found {len(edges)}")
    return Hypergraph(n, edges)


def format_coloring(C: Coloring) -> str:
    return f"k={C.k} " + " ".join(map(str, C.colors)) + "\n"


def parse_coloring(text: str) -> Coloring:
    """Whitespace-separated colors, optionally preceded by a ``k=<int>`` token."""
    tokens = text.split()
    k = None
    if tokens and tokens[0].startswith("k="):
        try:
            k = int(tokens[0][2:])
        except ValueError:
            raise InstanceError(f"bad palette token {tokens[0]!r}") from None
        tokens = tokens[1:]
    try:
        colors = [int(t) for t in tokens]
    except ValueError as exc:
        raise InstanceError(f"non-integer color: {exc}") from None
    if not colors:
        raise InstanceError("empty coloring")
    return Coloring(colors, k)
