"""UM-critical trees: construction, recognition, central-edge decomposition,
structure trees, and extraction of a long path or a deep binary subdivision.

A ``k``-critical tree is two ``(k-1)``-critical trees joined by one edge; it
has ``2**(k-1)`` vertices and the joining edge is the only edge splitting it
into two equal halves.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from cfum.hypergraph import ODD, Certificate, InstanceError, failed, passed
from cfum.solvers import chromatic_number_exact, um_forest_value, um_tree_exact
from cfum.trees import (
    SubdivisionWitness,
    Tree,
    _map_position,
    path_hypergraph,
    sub_witness,
    tree_path,
    validate_subdivision,
)


class ExtractionError(RuntimeError):
    """The extraction produced something that does not validate (a bug)."""


# -- recipes and construction ---------------------------------------------------


@dataclass(frozen=True)
class CriticalRecipe:
    """Join ``left`` (labels ``0..m-1``) to ``right`` (labels ``m..2m-1``)
    by the edge ``(join[0], m + join[1])``. A leaf recipe is ``None``."""

    left: Optional["CriticalRecipe"]
    right: Optional["CriticalRecipe"]
    join: Tuple[int, int]

    @property
    def level(self) -> int:
        sub = self.left.level if self.left is not None else 1
        return sub + 1

    def to_dict(self) -> dict:
        side = lambda r: r.to_dict() if r is not None else None
        return {"join": list(self.join), "left": side(self.left), "right": side(self.right)}

    @classmethod
    def from_dict(cls, data) -> Optional["CriticalRecipe"]:
        if data is None:
            return None
        return cls(cls.from_dict(data.get("left")), cls.from_dict(data.get("right")), tuple(data["join"]))


def recipe_level(recipe: Optional[CriticalRecipe]) -> int:
    return 1 if recipe is None else recipe.level


def canonical_recipe(k: int) -> Optional[CriticalRecipe]:
    if k < 1:
        raise InstanceError(f"k must be >= 1, got {k}")
    if k == 1:
        return None
    sub = canonical_recipe(k - 1)
    return CriticalRecipe(sub, sub, (0, 0))


def random_recipe(k: int, rng: random.Random) -> Optional[CriticalRecipe]:
    if k == 1:
        return None
    size = 2 ** (k - 2)
    return CriticalRecipe(random_recipe(k - 1, rng), random_recipe(k - 1, rng), (rng.randrange(size), rng.randrange(size)))


def compact_recipe(k: int) -> Optional[CriticalRecipe]:
    """Join two copies at a center vertex each time, keeping the diameter
    small; such trees lack long paths and force binary witnesses."""
    if k < 1:
        raise InstanceError(f"k must be >= 1, got {k}")
    if k == 1:
        return None
    sub = compact_recipe(k - 1)
    half = build_critical(k - 1, sub)
    c = min(range(half.n), key=lambda v: (_eccentricity(half, v), v))
    return CriticalRecipe(sub, sub, (c, c))


def _eccentricity(T: Tree, v: int) -> int:
    dist = {v: 0}
    order = [v]
    for x in order:
        for y in T.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                order.append(y)
    return max(dist.values())


def _edges_from_recipe(recipe: Optional[CriticalRecipe], k: int) -> List[Tuple[int, int]]:
    if k == 1:
        if recipe is not None:
            raise InstanceError("recipe deeper than k")
        return []
    if recipe is None:
        raise InstanceError("recipe shallower than k")
    m = 2 ** (k - 2)
    a, b = recipe.join
    if not (0 <= a < m and 0 <= b < m):
        raise InstanceError(f"join {recipe.join} outside the {m}-vertex halves")
    left = _edges_from_recipe(recipe.left, k - 1)
    right = [(x + m, y + m) for x, y in _edges_from_recipe(recipe.right, k - 1)]
    return left + right + [(a, m + b)]


def build_critical(k: int, recipe: Union[CriticalRecipe, None, str] = "canonical") -> Tree:
    """A ``k``-critical tree on ``2**(k-1)`` vertices."""
    if k < 1:
        raise InstanceError(f"k must be >= 1, got {k}")
    if isinstance(recipe, str):
        named = {"canonical": canonical_recipe, "compact": compact_recipe}
        if recipe not in named:
            raise InstanceError(f"unknown recipe {recipe!r}")
        recipe = named[recipe](k)
    return Tree(2 ** (k - 1), _edges_from_recipe(recipe, k))


def gap_tree() -> Tree:
    """Two copies of ``P_4`` joined at a middle vertex of each."""
    return Tree(8, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (1, 5)])


# -- recognition and decomposition ------------------------------------------------


def is_um_critical(T: Tree) -> Certificate:
    """Deleting any single vertex must lower the unique-maximum number.

    Single deletions suffice for trees: every proper subgraph lies inside
    some ``T - v`` or is ``T`` minus edges, and removing an edge of a tree
    leaves a forest inside ``T - v`` for either endpoint ``v``.
    """
    if T.n == 1:
        return passed(None, "critical", um=1)
    um = um_tree_exact(T).chi
    for v in range(T.n):
        rest = [x for x in range(T.n) if x != v]
        if um_forest_value(T, rest) >= um:
            return failed(None, (v,), "not_critical", um=um)
    return passed(None, "critical", um=um)


def _halves(T: Tree, a: int, b: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    side = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in T.adj[x]:
            if y not in side and not (x == a and y == b):
                side.add(y)
                stack.append(y)
    return frozenset(side), frozenset(range(T.n)) - side


def balanced_edge(T: Tree) -> Optional[Tuple[int, int]]:
    """The edge splitting ``T`` into two equal halves (unique when it exists)."""
    if T.n % 2:
        return None
    parent, _ = T._rooted
    order = sorted(range(T.n), key=lambda v: -T._rooted[1][v])
    size = [1] * T.n
    for v in order:
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    hits = sorted(tuple(sorted((v, parent[v]))) for v in range(T.n) if parent[v] >= 0 and 2 * size[v] == T.n)
    return hits[0] if hits else None


def central_edge(T: Tree, k: Optional[int] = None, check: bool = True) -> Tuple[int, int]:
    """Edge whose removal leaves two ``(k-1)``-critical halves."""
    if k is None:
        k = T.n.bit_length()
    if T.n != 2 ** (k - 1) or k < 2:
        raise InstanceError(f"a {k}-critical tree has {2 ** (k - 1)} vertices, got {T.n}")
    edge = balanced_edge(T)
    if edge is None:
        raise InstanceError("no edge splits the tree into equal halves")
    if check:
        for half in _halves(T, *edge):
            sub, _ = T.induced(half)
            if um_tree_exact(sub).chi != k - 1:
                raise InstanceError(f"half {sorted(half)} is not {k - 1}-critical")
    return edge


@dataclass(frozen=True)
class Decomposition:
    """``levels[i]`` lists the ``2**i`` vertex sets after ``i`` rounds of
    central-edge splitting; ``removed[i]`` the edges cut in round ``i + 1``."""

    levels: Tuple[Tuple[FrozenSet[int], ...], ...]
    removed: Tuple[Tuple[Tuple[int, int], ...], ...]


def decompose(T: Tree, depth: int) -> Decomposition:
    """Split ``depth`` times. Parts are listed in split order, the half
    holding the smaller vertex first."""
    k = T.n.bit_length()
    if T.n != 2 ** (k - 1) or not 0 <= depth <= k - 1:
        raise InstanceError(f"cannot split a {T.n}-vertex tree {depth} times")
    levels = [(frozenset(range(T.n)),)]
    removed = []
    for _ in range(depth):
        nxt, cut = [], []
        for part in levels[-1]:
            sub, back = T.induced(part)
            a, b = balanced_edge(sub) or (None, None)
            if a is None:
                raise InstanceError(f"part {sorted(part)} has no balanced edge")
            h1, h2 = _halves(sub, a, b)
            h1 = frozenset(back[v] for v in h1)
            h2 = frozenset(back[v] for v in h2)
            nxt.extend(sorted((h1, h2), key=min))
            cut.append((back[a], back[b]))
        levels.append(tuple(nxt))
        removed.append(tuple(cut))
    return Decomposition(tuple(levels), tuple(removed))


def _crossing_edges(T: Tree, parts: Sequence[FrozenSet[int]]) -> Dict[Tuple[int, int], Tuple[int, int]]:
    where = {v: i for i, p in enumerate(parts) for v in p}
    out = {}
    for a, b in T.edges:
        i, j = where[a], where[b]
        if i != j:
            out[(i, j)] = (a, b)
            out[(j, i)] = (b, a)
    return out


def structure_parts(T: Tree, l: int) -> Tuple[Tree, Tuple[FrozenSet[int], ...]]:
    parts = decompose(T, l).levels[l]
    cross = _crossing_edges(T, parts)
    edges = sorted({(i, j) for i, j in cross if i < j})
    return Tree(len(parts), edges), parts


def structure_tree(T: Tree, l: int) -> Tree:
    """Tree on the ``2**l`` parts after ``l`` splits, adjacent when joined in ``T``.

    ``l`` ranges over ``1..k-1``; at ``l = k-1`` the parts are single vertices.
    """
    return structure_parts(T, l)[0]


# -- path-or-binary extraction --------------------------------------------------


@dataclass(frozen=True)
class ExtractionResult:
    """Either ``path`` (host vertices, ``2**l`` of them) or ``witness``."""

    k: int
    l: int
    path: Optional[Tuple[int, ...]] = None
    witness: Optional[SubdivisionWitness] = None

    @property
    def m(self) -> int:
        return binary_levels(self.k, self.l)

    @property
    def is_path(self) -> bool:
        return self.path is not None

    def to_dict(self) -> dict:
        if self.is_path:
            return {"type": "path", "k": self.k, "l": self.l, "path": list(self.path)}
        return {"type": "binary", "k": self.k, "l": self.l, "m": self.m, "witness": self.witness.to_dict()}


def binary_levels(k: int, l: int) -> int:
    return -(-(k + l + 3) // (l + 2))


def _is_host_path(T: Tree, path: Sequence[int]) -> bool:
    return len(set(path)) == len(path) and all(T.has_edge(a, b) for a, b in zip(path, path[1:]))


def check_extraction(T: Tree, res: ExtractionResult) -> Certificate:
    if res.is_path:
        if len(res.path) == 2**res.l and _is_host_path(T, res.path):
            return passed(None, "path")
        return failed(None, res.path, "bad_path")
    if res.witness.levels != res.m or res.witness.host is not T:
        return failed(None, None, "wrong_levels")
    return validate_subdivision(res.witness)


def find_b3_subdivision(T: Tree) -> Optional[SubdivisionWitness]:
    """``B_3`` subdivision from two non-adjacent vertices of degree >= 3.

    They become the second level; the root is the first inner vertex of the
    path between them.
    """
    high = [v for v in range(T.n) if T.degree(v) >= 3]
    for i, u in enumerate(high):
        for v in high[i + 1 :]:
            if T.has_edge(u, v):
                continue
            path = tree_path(T, u, v)
            root = path[1]
            lu = [x for x in T.adj[u] if x != root][:2]
            lv = [x for x in T.adj[v] if x != path[-2]][:2]
            return SubdivisionWitness(T, 3, [root, u, v, *lu, *lv])
    return None


def _path_order(T: Tree) -> Tuple[int, ...]:
    """Vertices of a path-shaped tree from its lower-numbered end."""
    if T.n == 1:
        return (0,)
    ends = [v for v in range(T.n) if T.degree(v) == 1]
    return tree_path(T, ends[0], ends[1])


def _halves_as_trees(T: Tree):
    a, b = balanced_edge(T)
    out = []
    for half, end in zip(_halves(T, a, b), (a, b)):
        sub, back = T.induced(half)
        out.append((sub, back, back.index(end)))
    return out


def _path_ending_at(T: Tree, x: int, length: int) -> Tuple[int, ...]:
    """In a critical tree whose only vertex of degree >= 3 is ``x``, a path of
    ``length`` vertices starting at ``x`` (the half away from ``x`` is a path)."""
    for sub, back, _ in _halves_as_trees(T):
        if x in back:
            continue
        if any(sub.degree(v) >= 3 for v in range(sub.n)):
            raise ExtractionError("half without the branching vertex is not a path")
        ends = [back[v] for v in range(sub.n) if sub.degree(v) <= 1]
        best = max((tree_path(T, x, e) for e in ends), key=len)
        if len(best) < length:
            raise ExtractionError("path half too short")
        return best[:length]
    raise ExtractionError("no half avoids the branching vertex")


def _three_level_case(T: Tree, l: int):
    """An ``(l+2)``-critical tree holds a path of ``2**l`` vertices or a ``B_3``
    subdivision. Returns ``("path", seq)`` or ``("b3", witness)`` in ``T``'s labels."""
    target = 2**l
    high = [v for v in range(T.n) if T.degree(v) >= 3]
    b3 = find_b3_subdivision(T)
    if b3 is not None:
        return "b3", b3
    if not high:
        return "path", _path_order(T)[:target]
    if len(high) == 1:
        (x,) = high
        return "path", _path_ending_at(T, x, target)
    x, y = high  # adjacent, otherwise a B_3 was found above
    a, b = balanced_edge(T)
    if {a, b} != {x, y}:
        for sub, back, _ in _halves_as_trees(T):
            if x not in back and y not in back:
                return "path", tuple(back[v] for v in _path_order(sub))[:target]
        raise ExtractionError("both halves hold a branching vertex")
    pieces = []
    for sub, back, end in _halves_as_trees(T):
        if all(sub.degree(v) <= 2 for v in range(sub.n)):
            return "path", tuple(back[v] for v in _path_order(sub))[:target]
        piece = _path_ending_at(sub, end, target // 2)
        pieces.append([back[v] for v in piece])
    return "path", tuple(pieces[0][::-1] + pieces[1])


def _lift_witness(w: SubdivisionWitness, host: Tree, back: Sequence[int]) -> SubdivisionWitness:
    return SubdivisionWitness(host, w.levels, [back[v] for v in w.branch_map])


def _trim(w: SubdivisionWitness, levels: int) -> SubdivisionWitness:
    return sub_witness(w, 0, levels) if levels < w.levels else w


def _median(T: Tree, a: int, b: int, c: int) -> int:
    common = set(tree_path(T, a, b)) & set(tree_path(T, b, c)) & set(tree_path(T, a, c))
    (med,) = common
    return med


def find_path_or_binary(T: Tree, k: int, l: int) -> ExtractionResult:
    """A path of ``2**l`` vertices or a subdivision of ``B_m``,
    ``m = ceil((k+l+3)/(l+2))``, inside a ``k``-critical tree.

    Follows the induction on ``k``: small ``k`` is immediate, mid-range ``k``
    uses the three-case analysis on an ``(l+2)``-critical subtree, large ``k``
    finds the pattern in the ``(l+2)``-deep structure tree, recurses into the
    four parts under its leaves and splices one half of each returned binary
    witness below the lifted top of the ``B_3``.
    """
    if k < 3 or l < 1:
        raise InstanceError(f"need k >= 3 and l >= 1, got k={k}, l={l}")
    if T.n != 2 ** (k - 1):
        raise InstanceError(f"a {k}-critical tree has {2 ** (k - 1)} vertices, got {T.n}")
    res = _extract(T, k, l)
    cert = check_extraction(T, res)
    if not cert.ok:
        raise ExtractionError(f"extraction for k={k}, l={l} does not validate: {cert.reason}")
    return res


def _extract(T: Tree, k: int, l: int) -> ExtractionResult:
    m = binary_levels(k, l)
    target = 2**l

    if k <= l + 1:
        # m == 2 here, and B_2 is a path on three vertices
        v = next(v for v in range(T.n) if T.degree(v) >= 2)
        return ExtractionResult(k, l, witness=SubdivisionWitness(T, 2, [v, *T.adj[v][:2]]))

    if k <= 2 * l + 3:
        part = decompose(T, k - l - 2).levels[-1][0]
        sub, back = T.induced(part)
        tag, found = _three_level_case(sub, l)
        if tag == "path":
            return ExtractionResult(k, l, path=tuple(back[v] for v in found))
        return ExtractionResult(k, l, witness=_trim(_lift_witness(found, T, back), m))

    S, parts = structure_parts(T, l + 2)
    cross = _crossing_edges(T, parts)
    half = decompose(S, 1).levels[1][0]
    S_half, s_back = S.induced(half)
    tag, found = _three_level_case(S_half, l)
    if tag == "path":
        seq = [s_back[v] for v in found]
        start = cross[(seq[0], seq[1])][0]
        end = cross[(seq[-2], seq[-1])][1]
        return ExtractionResult(k, l, path=tree_path(T, start, end)[:target])
    sw = _lift_witness(found, S, s_back)  # B_3 in the structure tree
    spath = {p: sw.paths[p - 1] for p in range(1, 7)}

    def hub(pos: int) -> int:
        # branching point inside the part of a level-2 branch vertex
        toward_root = spath[pos][-2]
        here = sw.branch_map[pos]
        exits = [cross[(here, toward_root)][0]]
        for child in (2 * pos + 1, 2 * pos + 2):
            exits.append(cross[(here, spath[child][1])][0])
        return _median(T, *exits)

    x1, x2 = hub(1), hub(2)
    root_part = parts[sw.branch_map[0]]
    r = next(v for v in tree_path(T, x1, x2) if v in root_part)

    branch = [0] * (2**m - 1)
    branch[0], branch[1], branch[2] = r, x1, x2
    for slot, pos in enumerate(range(3, 7)):
        part = parts[sw.branch_map[pos]]
        sub, back = T.induced(part)
        inner = _extract(sub, k - l - 2, l)
        if inner.is_path:
            return ExtractionResult(k, l, path=tuple(back[v] for v in inner.path))
        W = _lift_witness(inner.witness, T, back)
        if W.levels != m - 1:
            raise ExtractionError(f"sub-extraction returned {W.levels} levels, expected {m - 1}")
        hub_vertex = x1 if pos < 5 else x2
        choice = _pick_half(T, W, hub_vertex, m - 2)
        for q in range(2 ** (m - 2) - 1):
            branch[_map_position(pos, q)] = choice.branch_map[q]
    return ExtractionResult(k, l, witness=SubdivisionWitness(T, m, branch))


def _pick_half(T: Tree, W: SubdivisionWitness, source: int, levels: int) -> SubdivisionWitness:
    """The child sub-witness of ``W`` reachable from ``source`` without
    crossing it: if the route from ``source`` first meets ``W`` on the left
    side, the right half is taken, and vice versa."""
    left_side = sub_witness(W, 1, W.levels - 1).vertices() | set(W.paths[0][1:])
    route = tree_path(T, source, W.root)
    used = W.vertices()
    meet = next(v for v in route if v in used)
    side = 2 if meet in left_side else 1
    return sub_witness(W, side, levels)


# -- reporting and enumeration ------------------------------------------------------


def odd_vs_um_consistency(T: Tree) -> dict:
    """Unique-maximum and odd numbers alongside the cube root of the former."""
    um = um_tree_exact(T).chi
    odd = chromatic_number_exact(path_hypergraph(T), ODD).chi
    return {"um": um, "odd": odd, "um_cuberoot": um ** (1 / 3)}


def tree_canonical_form(T: Tree) -> str:
    """Isomorphism invariant string (AHU encoding rooted at the center)."""
    if T.n == 1:
        return "()"
    degree = [T.degree(v) for v in range(T.n)]
    layer = [v for v in range(T.n) if degree[v] == 1]
    left = T.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for y in T.adj[v]:
                degree[y] -= 1
                if degree[y] == 1:
                    nxt.append(y)
        layer = nxt

    def enc(v: int, parent: int) -> str:
        return "(" + "".join(sorted(enc(y, v) for y in T.adj[v] if y != parent)) + ")"

    return min(enc(c, -1) for c in layer)


def critical_tree_classes(k: int) -> List[Tree]:
    """One representative per isomorphism class of ``k``-critical trees."""
    if k == 1:
        return [Tree(1, [])]
    smaller = critical_tree_classes(k - 1)
    m = 2 ** (k - 2)
    seen: Dict[str, Tree] = {}
    for i, A in enumerate(smaller):
        for B in smaller[i:]:
            for a in range(m):
                for b in range(m):
                    edges = list(A.edges) + [(x + m, y + m) for x, y in B.edges] + [(a, m + b)]
                    T = Tree(2 * m, edges)
                    seen.setdefault(tree_canonical_form(T), T)
    return [seen[key] for key in sorted(seen)]


def load_recipe(text: str) -> Optional[CriticalRecipe]:
    return CriticalRecipe.from_dict(json.loads(text))
