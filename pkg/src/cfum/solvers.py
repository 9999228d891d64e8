"""Exact chromatic numbers by exhaustive search.

Four kinds (non-monochromatic, rainbow, conflict-free, odd) are invariant
under permuting colors, so the search only visits canonical colorings in
which color ``c + 1`` first appears after color ``c``. Unique-maximum is
order sensitive and is solved top-down instead: the top color class is a set
of vertices no edge contains two of, every edge meeting it exactly once is
settled, and the rest is solved recursively on the remaining vertex set.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from cfum.hypergraph import (
    CF,
    ODD,
    UM,
    Coloring,
    ColoringKind,
    Hypergraph,
    InstanceError,
    colors_used,
    edge_satisfies,
    is_valid,
)
from cfum.trees import Tree, path_hypergraph


class CapacityError(InstanceError):
    """Instance too large for a memoized exact solver."""


@dataclass(frozen=True)
class SolveBudget:
    max_colors: Optional[int] = None
    time_limit: Optional[float] = None
    node_limit: Optional[int] = None

    def __post_init__(self):
        for name in ("max_colors", "time_limit", "node_limit"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise InstanceError(f"{name} must be positive, got {value}")

    @classmethod
    def from_env(cls, **overrides) -> "SolveBudget":
        """Default budget; ``CFUM_TIME_LIMIT`` (seconds) overrides the time cap."""
        limit = os.environ.get("CFUM_TIME_LIMIT")
        kw = {"time_limit": float(limit)} if limit else {}
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


@dataclass
class SolveResult:
    """``chi`` is set only when the value is proven; ``lower`` always holds."""

    kind: ColoringKind
    chi: Optional[int]
    lower: int
    upper: Optional[int] = None
    witness: Optional[Coloring] = None
    nodes: int = 0
    seconds: float = 0.0

    @property
    def exact(self) -> bool:
        return self.chi is not None

    @property
    def status(self) -> str:
        return "exact" if self.exact else "unknown"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "chi": self.chi,
            "status": self.status,
            "lower": self.lower,
            "upper": self.upper,
            "witness": list(self.witness.colors) if self.witness is not None else None,
            "stats": {"nodes": self.nodes, "seconds": round(self.seconds, 6)},
        }


class _Exhausted(Exception):
    pass


class _Meter:
    def __init__(self, budget: SolveBudget):
        self.budget = budget
        self.nodes = 0
        self.start = time.perf_counter()

    def tick(self):
        self.nodes += 1
        b = self.budget
        if b.node_limit is not None and self.nodes > b.node_limit:
            raise _Exhausted
        if b.time_limit is not None and self.nodes % 256 == 0:
            if time.perf_counter() - self.start > b.time_limit:
                raise _Exhausted

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def _canonical_search(H: Hypergraph, kind: ColoringKind, k: int, meter: _Meter) -> Optional[List[int]]:
    """Lexicographically least canonical ``k``-coloring passing ``kind``, or None."""
    n = H.n
    closing: List[List[Tuple[int, ...]]] = [[] for _ in range(n)]
    for e in H.edges:
        if len(e) > 1:
            closing[e[-1]].append(e)
    colors = [0] * n

    def dfs(v: int, top: int) -> bool:
        if v == n:
            return True
        for c in range(1, min(top + 1, k) + 1):
            meter.tick()
            colors[v] = c
            if all(edge_satisfies(kind, [colors[x] for x in e]) for e in closing[v]):
                if dfs(v + 1, max(top, c)):
                    return True
        colors[v] = 0
        return False

    return list(colors) if dfs(0, 0) else None


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _UMSearch:
    """Top-down search over unique-maximum color classes, memoized on vertex sets."""

    def __init__(self, H: Hypergraph, meter: _Meter):
        self.n = H.n
        self.masks = sorted({sum(1 << v for v in e) for e in H.edges if len(e) > 1})
        self.meter = meter
        self.infeasible: Dict[int, int] = {}  # largest k known not to suffice
        self.feasible: Dict[int, Tuple[int, int]] = {}  # smallest k known to suffice, top class

    def _conflicts(self, R: int) -> List[int]:
        adj = [0] * self.n
        for em in self.masks:
            if em & R == em:
                for v in _bits(em):
                    adj[v] |= em
        for v in range(self.n):
            adj[v] &= ~(1 << v)
        return adj

    def _maximal_independent(self, R: int):
        """Maximal independent sets of the conflict graph on ``R`` (Bron-Kerbosch on the complement)."""
        adj = self._conflicts(R)
        non = [R & ~adj[v] & ~(1 << v) for v in range(self.n)]

        def bk(S: int, P: int, X: int):
            if not P and not X:
                yield S
                return
            pivot = max(_bits(P | X), key=lambda u: bin(P & non[u]).count("1"))
            for v in list(_bits(P & ~non[pivot])):
                yield from bk(S | (1 << v), P & non[v], X & non[v])
                P &= ~(1 << v)
                X |= 1 << v

        yield from bk(0, R, 0)

    def feasible_with(self, R: int, k: int) -> bool:
        if R == 0:
            return True
        if k <= 0:
            return False
        if k <= self.infeasible.get(R, 0):
            return False
        hit = self.feasible.get(R)
        if hit is not None and hit[0] <= k:
            return True
        for S in self._maximal_independent(R):
            self.meter.tick()
            if self.feasible_with(R & ~S, k - 1):
                if hit is None or k < hit[0]:
                    self.feasible[R] = (k, S)
                return True
        self.infeasible[R] = max(self.infeasible.get(R, 0), k)
        return False

    def witness(self, full: int, k: int) -> List[int]:
        colors = [0] * self.n
        R, c = full, k
        while R:
            _, S = self.feasible[R]
            for v in _bits(S):
                colors[v] = c
            R &= ~S
            c -= 1
        # compress to 1..used keeping the order
        rank = {c: i + 1 for i, c in enumerate(sorted(set(colors)))}
        return [rank[c] for c in colors]


def chromatic_number_exact(H: Hypergraph, kind: "ColoringKind | str", budget: Optional[SolveBudget] = None) -> SolveResult:
    """Smallest ``k`` admitting a ``kind`` coloring of ``H``, with an optimal witness.

    Budget exhaustion is reported as ``status == "unknown"`` with the best
    lower bound proven so far; it is never raised.
    """
    kind = ColoringKind.parse(kind)
    budget = budget or SolveBudget()
    meter = _Meter(budget)
    if H.n == 0:
        return SolveResult(kind, 0, 0, 0, Coloring([], 1))
    cap = budget.max_colors if budget.max_colors is not None else H.n
    cap = min(cap, H.n)  # all-distinct colors satisfy every kind
    um = _UMSearch(H, meter) if kind is UM else None
    full = (1 << H.n) - 1
    k = 1
    while k <= cap:
        try:
            if um is not None:
                found = um.witness(full, k) if um.feasible_with(full, k) else None
            else:
                found = _canonical_search(H, kind, k, meter)
        except _Exhausted:
            return SolveResult(kind, None, k, H.n, None, meter.nodes, meter.elapsed)
        if found is not None:
            witness = Coloring(found, k)
            assert is_valid(H, witness, kind).ok and colors_used(witness) == k
            return SolveResult(kind, k, k, k, witness, meter.nodes, meter.elapsed)
        k += 1
    return SolveResult(kind, None, k, H.n, None, meter.nodes, meter.elapsed)


# -- unique-maximum on trees ---------------------------------------------------


def _neighbor_masks(T: Tree) -> List[int]:
    return [sum(1 << y for y in T.adj[v]) for v in range(T.n)]


def _components(mask: int, nbr: List[int]):
    while mask:
        comp = mask & -mask
        frontier = comp
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= nbr[v]
            grow &= mask & ~comp
            comp |= grow
            frontier = grow
        mask &= ~comp
        yield comp


class _TreeUM:
    def __init__(self, T: Tree):
        self.nbr = _neighbor_masks(T)
        self.memo: Dict[int, Tuple[int, int]] = {}

    def value(self, S: int) -> int:
        """Unique-maximum number of the connected vertex set ``S``."""
        hit = self.memo.get(S)
        if hit is not None:
            return hit[0]
        if S & (S - 1) == 0:
            self.memo[S] = (1, S.bit_length() - 1)
            return 1
        best, best_v = S.bit_count() + 1, -1
        for v in _bits(S):
            worst = 0
            for comp in _components(S & ~(1 << v), self.nbr):
                worst = max(worst, self.value(comp))
                if worst + 1 >= best:
                    break
            if worst + 1 < best:
                best, best_v = worst + 1, v
                if best == 2:
                    break
        self.memo[S] = (best, best_v)
        return best

    def forest_value(self, mask: int) -> int:
        return max((self.value(c) for c in _components(mask, self.nbr)), default=0)

    def color(self, S: int, out: List[int]):
        val = self.value(S)
        v = self.memo[S][1]
        out[v] = val
        for comp in _components(S & ~(1 << v), self.nbr):
            self.color(comp, out)


def um_tree_exact(T: Tree, capacity: int = 25) -> SolveResult:
    """Unique-maximum number of a tree by separator recursion.

    The top color of a connected vertex set sits on exactly one vertex;
    removing it splits the set into independent subproblems.
    """
    if T.n > capacity:
        raise CapacityError(f"tree has {T.n} vertices; capacity is {capacity}")
    start = time.perf_counter()
    solver = _TreeUM(T)
    full = (1 << T.n) - 1
    chi = solver.value(full)
    colors = [0] * T.n
    solver.color(full, colors)
    return SolveResult(UM, chi, chi, chi, Coloring(colors, chi), len(solver.memo), time.perf_counter() - start)


def um_forest_value(T: Tree, vertices) -> int:
    """Unique-maximum number of the forest induced by ``vertices``."""
    mask = sum(1 << v for v in vertices)
    return _TreeUM(T).forest_value(mask)


def verify_optimality_gap(T: Tree, budget: Optional[SolveBudget] = None) -> Tuple[int, int, int]:
    """``(UM, CF, ODD)`` of a tree's path hypergraph."""
    um = um_tree_exact(T).chi
    H = path_hypergraph(T)
    out = [um]
    for kind in (CF, ODD):
        res = chromatic_number_exact(H, kind, budget)
        if not res.exact:
            raise CapacityError(f"{kind.value} search ran out of budget (lower bound {res.lower})")
        out.append(res.chi)
    return tuple(out)
