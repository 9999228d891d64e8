"""Prefix set-free families and conflict-free colorings of complete binary
trees, plus the monochromatic-subdivision vector and the odd-coloring
refuter for subdivided binary trees."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from cfum.hypergraph import ODD, Certificate, Coloring, InstanceError, failed, parity_vector, passed
from cfum.trees import (
    SubdivisionWitness,
    Tree,
    _map_position,
    complete_binary,
    level_of,
    tree_path,
    validate_subdivision,
)


@dataclass(frozen=True)
class PSFFamily:
    """Ordered sets over ``1..n``; ``k`` is the shortest length, ``|sets| >= 2**d``."""

    n: int
    sets: Tuple[Tuple[int, ...], ...]
    k: int
    d: int

    def __init__(self, n: int, sets, k: Optional[int] = None, d: Optional[int] = None):
        sets = tuple(tuple(int(x) for x in s) for s in sets)
        if not sets:
            raise InstanceError("empty family")
        for s in sets:
            if not s or len(set(s)) != len(s) or any(not 1 <= x <= n for x in s):
                raise InstanceError(f"{s} is not an ordered set over 1..{n}")
        shortest = min(len(s) for s in sets)
        k = shortest if k is None else int(k)
        d = len(sets).bit_length() - 1 if d is None else int(d)
        if shortest < k:
            raise InstanceError(f"a set is shorter than k={k}")
        if len(sets) < 2**d:
            raise InstanceError(f"{len(sets)} sets cannot carry d={d}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "d", d)


def is_prefix_set_free(F: PSFFamily) -> Certificate:
    """No prefix of a member (the whole member included) equals another member as a set."""
    as_sets = [frozenset(s) for s in F.sets]
    for i, A in enumerate(F.sets):
        for length in range(1, len(A) + 1):
            prefix = frozenset(A[:length])
            for j, B in enumerate(as_sets):
                if j != i and prefix == B:
                    return failed(None, A[:length], "prefix_matches_member", member=i, other=j)
    return passed(None)


def psf_from_ksubsets(n: int, k: int) -> PSFFamily:
    """All ``k``-subsets of ``1..n`` in increasing order; ``d = floor(log2 C(n, k))``."""
    if not 1 <= k <= n:
        raise InstanceError(f"need 1 <= k <= n, got n={n}, k={k}")
    sets = list(combinations(range(1, n + 1), k))
    return PSFFamily(n, sets, k, math.comb(n, k).bit_length() - 1)


def psf_capacity_bound(F: PSFFamily) -> Tuple[int, float]:
    """Return ``(d, log2 sum_{i>=k} C(n, i))``; the first never exceeds the second."""
    if not is_prefix_set_free(F).ok:
        raise InstanceError("family is not prefix set-free")
    rhs = math.log2(sum(math.comb(F.n, i) for i in range(F.k, F.n + 1)))
    if F.d > rhs:
        raise AssertionError(f"capacity bound violated: d={F.d} > {rhs}")
    return F.d, rhs


# the four ordered sets behind the 6-color coloring of B_7, over ground {1,..,4}
B7_FAMILY = PSFFamily(4, [(1, 2, 3), (2, 3, 4), (3, 4, 1), (4, 1, 2)], k=3, d=2)


def cf_color_from_psf(F: PSFFamily, r: int) -> Tuple[Tree, Coloring]:
    """Level-monochromatic coloring of ``B_{d(r+1)+kr}`` with at most ``nr + d`` colors.

    The top ``d`` levels get colors ``1..d``. Below them the ``2**d``
    subtrees, left to right, take the family's sets in order and spend one
    fresh color per level. Whatever lies underneath repeats the scheme with
    the next block of ``n`` fresh colors, and any stump of at most ``d``
    levels is colored ``1..d`` from the top.
    """
    if r < 0:
        raise InstanceError("r must be non-negative")
    cert = is_prefix_set_free(F)
    if not cert.ok:
        raise InstanceError(f"family is not prefix set-free at {cert.edge}")
    for s in F.sets:
        if len(s) > F.k + F.d:
            raise InstanceError(f"set {s} is longer than k + d = {F.k + F.d}")
    depth = F.d * (r + 1) + F.k * r
    T = complete_binary(depth)
    colors = [0] * T.n

    def below(pos: int, steps: int) -> range:
        # heap positions ``steps`` levels under ``pos``
        first = _map_position(pos, 2**steps - 1)
        return range(first, first + 2**steps)

    def paint(pos: int, height: int, block: int):
        top = min(height, F.d)
        for j in range(top):
            for p in below(pos, j):
                colors[p] = j + 1
        if height <= F.d:
            return
        offset = F.d + block * F.n
        for idx, root in enumerate(below(pos, F.d)):
            s = F.sets[idx]
            used = min(len(s), height - F.d)
            for j in range(used):
                for p in below(root, j):
                    colors[p] = offset + s[j]
            rest = height - F.d - used
            if rest > 0:
                for sub in below(root, used):
                    paint(sub, rest, block + 1)

    paint(0, depth, 0)
    return T, Coloring(colors, F.n * r + F.d)


def cf_b7_explicit() -> Tuple[Tree, Coloring]:
    """``B_7`` with six colors: root 1, second level 2, then the four
    ``B_5`` subtrees level-colored 34512, 45612, 56312, 63412."""
    patterns = [(3, 4, 5, 1, 2), (4, 5, 6, 1, 2), (5, 6, 3, 1, 2), (6, 3, 4, 1, 2)]
    T = complete_binary(7)
    colors = []
    for p in range(T.n):
        lev = level_of(p)
        if lev <= 2:
            colors.append(lev)
        else:
            anchor = ((p + 1) >> (lev - 3)) - 1  # ancestor on level 3
            colors.append(patterns[anchor - 3][lev - 3])
    return T, Coloring(colors, 6)


def cf_b7_iterated(r: int) -> Tuple[Tree, Coloring]:
    """``B_{5r+2}`` with ``4r + 2`` colors by stacking the ``B_7`` pattern."""
    return cf_color_from_psf(B7_FAMILY, r)


def sqrt_depth_consistent(depth: int, C: Coloring) -> bool:
    """An odd (hence any conflict-free) coloring of ``B_depth`` has at least sqrt(depth) colors."""
    return len(set(C.colors)) ** 2 >= depth


# -- monochromatic subdivisions -------------------------------------------------


def _join(pos: int, left: List[int], right: List[int]) -> List[int]:
    a = (len(left) + 1).bit_length() - 1
    out = [0] * (2 ** (a + 1) - 1)
    out[0] = pos
    for q in range(len(left)):
        out[_map_position(1, q)] = left[q]
        out[_map_position(2, q)] = right[q]
    return out


def mono_subdivision_vector(
    host: Tree, w: SubdivisionWitness, C: Coloring, k: int
) -> Tuple[Tuple[int, ...], Dict[int, SubdivisionWitness]]:
    """Vector ``a`` with ``sum(a) = d`` such that for each color ``i`` with
    ``a[i-1] > 0`` the host holds a ``B_{a[i-1]}`` subdivision whose branch
    vertices are all colored ``i``; the witnesses are returned by color.

    Works on the branch-vertex skeleton bottom-up: equal child vectors grow
    the root's color by one, different ones are merged by coordinate-wise
    maximum and then cut back to total ``d`` from the largest coordinate.
    """
    if w.host is not host and w.host != host:
        raise InstanceError("witness lives in another host")
    if not validate_subdivision(w).ok:
        raise InstanceError("input witness does not validate")
    if len(C) != host.n or C.k > k:
        raise InstanceError(f"need a coloring of the host with palette <= {k}")
    skel = [C.colors[v] - 1 for v in w.branch_map]

    def rec(pos: int, height: int):
        c = skel[pos]
        if height == 1:
            vec = [0] * k
            vec[c] = 1
            return vec, {c: [pos]}
        vl, wl = rec(2 * pos + 1, height - 1)
        vr, wr = rec(2 * pos + 2, height - 1)
        if vl == vr:
            vec = list(vl)
            wit = {i: wl[i] for i in wl if i != c}
            wit[c] = _join(pos, wl[c], wr[c]) if vl[c] else [pos]
            vec[c] += 1
            return vec, wit
        vec = [max(x, y) for x, y in zip(vl, vr)]
        wit = {i: (wl[i] if vl[i] >= vr[i] else wr[i]) for i in range(k) if vec[i]}
        while sum(vec) > height:
            i = max(range(k), key=lambda j: (vec[j], -j))
            vec[i] -= 1
            if vec[i]:
                wit[i] = wit[i][: 2 ** vec[i] - 1]
            else:
                del wit[i]
        return vec, wit

    vec, wit = rec(0, w.levels)
    if sum(vec) != w.levels:
        raise AssertionError(f"vector {vec} does not sum to {w.levels}")
    out = {}
    for i, positions in wit.items():
        sub = SubdivisionWitness(host, vec[i], [w.branch_map[p] for p in positions])
        if not validate_subdivision(sub).ok or any(C.colors[v] != i + 1 for v in sub.branch_map):
            raise AssertionError(f"witness for color {i + 1} is broken")
        out[i + 1] = sub
    return tuple(vec), out


def max_mono_subdivision_depth(host: Tree, C: Coloring, color: int, limit: int) -> int:
    """Largest ``a <= limit`` with a ``B_a`` subdivision of ``host`` whose
    branch vertices all have ``color``, by backtracking over embeddings."""
    candidates = [v for v in range(host.n) if C.colors[v] == color]

    def embed(a: int) -> bool:
        size = 2**a - 1
        image = [-1] * size
        used: set = set()

        def place(p: int) -> bool:
            if p == size:
                return True
            for v in candidates:
                if v in used:
                    continue
                if p == 0:
                    inner = ()
                else:
                    route = tree_path(host, image[(p - 1) // 2], v)
                    inner = route[1:-1]
                    if any(x in used for x in inner):
                        continue
                image[p] = v
                used.add(v)
                used.update(inner)
                if place(p + 1):
                    return True
                used.discard(v)
                used.difference_update(inner)
            return False

        return place(0)

    best = 0
    for a in range(1, limit + 1):
        if not embed(a):
            break
        best = a
    return best


def binary_odd_refuter(host: Tree, w: SubdivisionWitness, C: Coloring, k: int) -> Certificate:
    """Look for a path of the host on which every color occurs an even number of times.

    Takes the color with the largest entry of the monochromatic vector and
    compares the parity vectors of the leaf-to-root routes of its witness.
    Two equal ones give a path between two leaves whose only odd color is
    the one of their meeting vertex, which is also the color of both ends;
    dropping one end leaves an all-even path. With ``k*k < d`` such a path
    must exist.
    """
    d = w.levels
    forced = k * k < d
    vec, wits = mono_subdivision_vector(host, w, C, k)
    i = max(range(k), key=lambda j: (vec[j], -j)) + 1
    W = wits[i]
    a = W.levels
    root = W.root
    seen: Dict[Tuple[int, ...], int] = {}
    for leaf in W.branch_map[2 ** (a - 1) - 1 :]:
        route = tree_path(host, leaf, root)
        key = parity_vector(C, route)
        if not any(key):
            return failed(ODD, route, "all_even", forced=forced, color=i)
        if key in seen:
            path = tree_path(host, seen[key], leaf)[1:]
            if any(parity_vector(C, path)):
                raise AssertionError("collision path is not all-even")
            return failed(ODD, path, "all_even", forced=forced, color=i)
        seen[key] = leaf
    if forced:
        raise AssertionError(f"no collision among {2 ** (a - 1)} routes with k={k}")
    return passed(ODD, "no_refutation_forced", forced=False)


# -- the log 3 ratio ----------------------------------------------------------------


def binary_entropy(x):
    x = np.asarray(x, dtype=float)
    return -x * np.log2(x) - (1 - x) * np.log2(1 - x)


@dataclass(frozen=True)
class RatioOptimum:
    x_star: float
    value: float
    grid_x: float
    grid_value: float


def optimize_ratio(step: float = 1e-6) -> RatioOptimum:
    """Maximize ``x + H(x)`` on ``(0, 1)``.

    The derivative ``1 + log2((1-x)/x)`` vanishes at ``x = 2/3`` where the
    value is ``log2 3``; a grid search over the open interval checks it.
    """
    x_star = 2 / 3
    value = float(x_star + binary_entropy(x_star))
    grid = np.arange(1, round(1 / step)) * step
    f = grid + binary_entropy(grid)
    j = int(np.argmax(f))
    return RatioOptimum(x_star, value, float(grid[j]), float(f[j]))
