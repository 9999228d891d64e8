"""Trees, their path hypergraphs, complete binary trees and subdivision witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from cfum._kernels import KIND_CODES, first_violation_py
from cfum.hypergraph import (
    ODD,
    Certificate,
    Coloring,
    ColoringKind,
    Hypergraph,
    InstanceError,
    failed,
    parity_vector,
    passed,
)


@dataclass(frozen=True, eq=False)
class Tree:
    """Undirected tree on ``0..n-1``. ``root`` is only an annotation."""

    n: int
    edges: Tuple[Tuple[int, int], ...]
    root: Optional[int] = None

    def __init__(self, n: int, edges: Iterable[Sequence[int]], root: Optional[int] = None):
        n = int(n)
        if n < 1:
            raise InstanceError("a tree needs at least one vertex")
        edges = tuple((int(a), int(b)) for a, b in edges)
        if len(edges) != n - 1:
            raise InstanceError(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise InstanceError(f"bad edge ({a}, {b})")
        if root is not None and not 0 <= root < n:
            raise InstanceError(f"root {root} outside [0, {n})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "root", root)
        seen = {0}
        stack = [0]
        adj = self.adj
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != n:
            raise InstanceError("graph is not connected")

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        norm = lambda t: sorted(tuple(sorted(e)) for e in t.edges)
        return self.n == other.n and self.root == other.root and norm(self) == norm(other)

    def __hash__(self):
        return hash((self.n, tuple(sorted(tuple(sorted(e)) for e in self.edges))))

    @cached_property
    def adj(self) -> Tuple[Tuple[int, ...], ...]:
        nb: List[List[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return tuple(tuple(sorted(x)) for x in nb)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def _rooted(self):
        # parent/depth from vertex 0, used for path queries
        parent = [-1] * self.n
        depth = [0] * self.n
        order = [0]
        seen = [False] * self.n
        seen[0] = True
        for x in order:
            for y in self.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    order.append(y)
        return parent, depth

    @cached_property
    def csr(self):
        indptr = np.zeros(self.n + 1, np.int64)
        for v in range(self.n):
            indptr[v + 1] = indptr[v] + len(self.adj[v])
        indices = np.fromiter((y for x in self.adj for y in x), np.int64, count=int(indptr[-1]))
        return indptr, indices

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    def induced(self, vertices: Iterable[int]) -> Tuple["Tree", List[int]]:
        """Subtree induced on a connected vertex set, relabelled ``0..m-1``.

        Returns the tree and the list mapping new labels to old ones.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[a], index[b]) for a, b in self.edges if a in index and b in index]
        return Tree(len(keep), edges), keep


def tree_path(T: Tree, u: int, v: int) -> Tuple[int, ...]:
    """The unique ``u``-``v`` path, endpoints included."""
    if not (0 <= u < T.n and 0 <= v < T.n):
        raise InstanceError(f"vertex outside [0, {T.n})")
    parent, depth = T._rooted
    left, right = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return tuple(left + right[::-1])


def path_hypergraph(T: Tree) -> Hypergraph:
    """One hyperedge per pair ``u <= v``, ordered lexicographically by ``(u, v)``."""
    return Hypergraph(T.n, (tree_path(T, u, v) for u in range(T.n) for v in range(u, T.n)))


# below this many vertices the interpreted scan beats loading compiled code
SMALL_TREE = 400


def verify_tree_coloring(T: Tree, C: Coloring, kind: "ColoringKind | str", compiled: Optional[bool] = None) -> Certificate:
    """Check ``kind`` on every path of ``T`` without building the hypergraph.

    The reported violation is the lexicographically smallest pair ``(u, v)``,
    which matches the edge order of :func:`path_hypergraph`.
    """
    kind = ColoringKind.parse(kind)
    if len(C) != T.n:
        raise InstanceError(f"coloring has {len(C)} entries, tree has {T.n} vertices")
    indptr, indices = T.csr
    code = KIND_CODES[kind.value]
    if compiled is None:
        compiled = T.n > SMALL_TREE
    if compiled:
        from cfum._jit import first_violation

        colors = np.asarray(C.colors, dtype=np.int64)
        u, v = first_violation(indptr, indices, colors, C.k, code)
    else:
        u, v = first_violation_py(indptr.tolist(), indices.tolist(), list(C.colors), C.k, code)
    if u < 0:
        return passed(kind)
    path = tree_path(T, int(u), int(v))
    return failed(kind, sorted(path), endpoints=[int(u), int(v)])


def complete_binary(d: int) -> Tree:
    """``B_d`` in heap numbering: root 0, children of ``p`` are ``2p+1`` and ``2p+2``."""
    if d < 1:
        raise InstanceError(f"levels must be >= 1, got {d}")
    n = 2**d - 1
    return Tree(n, [((c - 1) // 2, c) for c in range(1, n)], root=0)


def level_of(pos: int) -> int:
    """1-based level of a heap position."""
    return (pos + 1).bit_length()


def path_colors_needed(n: int) -> int:
    return n.bit_length()  # == ceil(log2(n + 1))


def um_color_path(n: int) -> Coloring:
    """Unique-maximum coloring of ``P_n`` with ``ceil(log2(n+1))`` colors."""
    if n < 1:
        raise InstanceError("path length must be >= 1")
    colors = [0] * n

    def fill(lo: int, hi: int):
        length = hi - lo
        if length <= 0:
            return
        mid = lo + (length - 1) // 2
        colors[mid] = path_colors_needed(length)
        fill(lo, mid)
        fill(mid + 1, hi)

    fill(0, n)
    return Coloring(colors, path_colors_needed(n))


def um_color_complete_binary(d: int) -> Coloring:
    """Level ``l`` counted from the bottom gets color ``l``."""
    T = complete_binary(d)
    return Coloring([d - level_of(p) + 1 for p in range(T.n)], d)


def path_tree(n: int) -> Tree:
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def odd_lower_bound_path(n: int, k: int, C: Optional[Coloring] = None) -> Certificate:
    """Pigeonhole bound for odd colorings of ``P_n`` with ``k`` colors.

    Passes iff ``2**k - 1 >= n``. When it fails and a coloring is supplied,
    the prefix paths from vertex 0 are scanned for an all-zero parity or a
    repeated parity; the certificate then names a path with all counts even.
    """
    if n < 1 or k < 1:
        raise InstanceError("n and k must be positive")
    if 2**k - 1 >= n:
        return passed(ODD, "bound_allows")
    if C is None:
        return failed(ODD, None, "pigeonhole", n=n, k=k)
    if len(C) != n or C.k > k:
        raise InstanceError(f"expected a coloring of P_{n} with palette <= {k}")
    seen: Dict[Tuple[int, ...], int] = {}
    bits = [0] * C.k
    for j in range(n):
        bits[C.colors[j] - 1] ^= 1
        key = tuple(bits)
        if not any(key):
            lo = 0
        elif key in seen:
            lo = seen[key] + 1
        else:
            seen[key] = j
            continue
        edge = tuple(range(lo, j + 1))
        assert not any(parity_vector(C, edge))
        return failed(ODD, edge, "all_even", endpoints=[lo, j])
    raise AssertionError("pigeonhole failed")  # unreachable when 2**k - 1 < n


# -- subdivisions -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SubdivisionWitness:
    """Embedding of ``B_levels`` into ``host``.

    ``branch_map[p]`` is the host vertex for heap position ``p``;
    ``paths[p - 1]`` is the host path from ``branch_map[(p-1)//2]`` to
    ``branch_map[p]`` for every non-root position ``p``.
    """

    host: Tree
    levels: int
    branch_map: Tuple[int, ...]
    paths: Tuple[Tuple[int, ...], ...]

    def __init__(self, host: Tree, levels: int, branch_map, paths=None):
        branch_map = tuple(int(v) for v in branch_map)
        if paths is None:
            paths = [tree_path(host, branch_map[(p - 1) // 2], branch_map[p]) for p in range(1, len(branch_map))]
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "levels", int(levels))
        object.__setattr__(self, "branch_map", branch_map)
        object.__setattr__(self, "paths", tuple(tuple(int(v) for v in q) for q in paths))

    def __eq__(self, other):
        if not isinstance(other, SubdivisionWitness):
            return NotImplemented
        return (self.host, self.levels, self.branch_map, self.paths) == (other.host, other.levels, other.branch_map, other.paths)

    def __hash__(self):
        return hash((self.levels, self.branch_map, self.paths))

    @property
    def root(self) -> int:
        return self.branch_map[0]

    def to_dict(self) -> dict:
        return {"levels": self.levels, "branch_map": list(self.branch_map), "paths": [list(p) for p in self.paths]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, host: Tree, data: dict) -> "SubdivisionWitness":
        return cls(host, data["levels"], data["branch_map"], data["paths"])

    def vertices(self) -> set:
        out = set(self.branch_map)
        for p in self.paths:
            out.update(p)
        return out


def identity_witness(d: int, host: Optional[Tree] = None) -> SubdivisionWitness:
    host = host if host is not None else complete_binary(d)
    return SubdivisionWitness(host, d, range(2**d - 1))


def _map_position(pos: int, q: int) -> int:
    """Heap position of ``q`` (relative to a subtree) inside the subtree at ``pos``."""
    depth = level_of(q) - 1
    offset = q - (2**depth - 1)
    base_depth = level_of(pos) - 1
    base_offset = pos - (2**base_depth - 1)
    d = base_depth + depth
    return 2**d - 1 + base_offset * 2**depth + offset


def sub_witness(w: SubdivisionWitness, pos: int, levels: int) -> SubdivisionWitness:
    """Top ``levels`` levels of the sub-witness hanging at position ``pos``."""
    if levels < 1 or level_of(pos) + levels - 1 > w.levels:
        raise InstanceError(f"no {levels}-level sub-witness at position {pos}")
    size = 2**levels - 1
    bm = [w.branch_map[_map_position(pos, q)] for q in range(size)]
    paths = [w.paths[_map_position(pos, q) - 1] for q in range(1, size)]
    return SubdivisionWitness(w.host, levels, bm, paths)


def validate_subdivision(w: SubdivisionWitness) -> Certificate:
    """Check that ``w`` is a genuine subdivision of ``B_levels`` in its host."""
    T = w.host
    size = 2**w.levels - 1 if w.levels >= 1 else 0
    if w.levels < 1 or len(w.branch_map) != size or len(w.paths) != size - 1:
        return failed(None, None, "shape", levels=w.levels)
    if any(not 0 <= v < T.n for v in w.branch_map):
        return failed(None, None, "vertex_range")
    branch = set(w.branch_map)
    if len(branch) != size:
        return failed(None, None, "branch_not_injective")
    used_inner: set = set()
    for p in range(1, size):
        path = w.paths[p - 1]
        a, b = w.branch_map[(p - 1) // 2], w.branch_map[p]
        if len(path) < 2 or path[0] != a or path[-1] != b:
            return failed(None, path, "path_endpoints", position=p)
        if len(set(path)) != len(path):
            return failed(None, path, "path_not_simple", position=p)
        for x, y in zip(path, path[1:]):
            if not (0 <= x < T.n and 0 <= y < T.n) or not T.has_edge(x, y):
                return failed(None, path, "not_host_path", position=p)
        inner = path[1:-1]
        for x in inner:
            if x in branch:
                return failed(None, path, "path_hits_branch", position=p)
            if x in used_inner:
                return failed(None, path, "paths_cross", position=p)
            used_inner.add(x)
    return passed(None)


# -- file formats -------------------------------------------------------------


def format_tree(T: Tree) -> str:
    head = f"{T.n}" if T.root is None else f"{T.n} {T.root}"
    return "\n".join([head] + [f"{a} {b}" for a, b in T.edges]) + "\n"


def parse_tree(text: str) -> Tree:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InstanceError("empty tree file")
    try:
        head = [int(x) for x in lines[0]]
        edges = [tuple(int(x) for x in ln) for ln in lines[1:]]
    except ValueError as exc:
        raise InstanceError(f"non-integer token in tree file: {exc}") from None
    if len(head) not in (1, 2) or any(len(e) != 2 for e in edges):
        raise InstanceError("tree file lines must be 'n [root]' then 'u v'")
    return Tree(head[0], edges, head[1] if len(head) == 2 else None)
