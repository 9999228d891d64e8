"""Named reproduction runs. Each returns an :class:`ExperimentReport` whose
claims carry the expected value, the computed value and a verdict."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from cfum.critical import (
    build_critical,
    check_extraction,
    find_path_or_binary,
    gap_tree,
    is_um_critical,
    odd_vs_um_consistency,
    random_recipe,
    structure_tree,
)
from cfum.hypergraph import (
    ALL_KINDS,
    CF,
    NM,
    ODD,
    RB,
    UM,
    Coloring,
    Hypergraph,
    colors_used,
    is_valid,
    parity_vector,
)
from cfum.psf import (
    binary_odd_refuter,
    cf_b7_explicit,
    cf_b7_iterated,
    max_mono_subdivision_depth,
    mono_subdivision_vector,
    optimize_ratio,
    sqrt_depth_consistent,
)
from cfum.solvers import SolveBudget, chromatic_number_exact, um_tree_exact
from cfum.transfer import (
    extremal_nonuniform,
    extremal_uniform,
    general_bound,
    um_from_cf,
    um_from_cf_uniform,
    uniform_bound,
)
from cfum.trees import (
    complete_binary,
    identity_witness,
    odd_lower_bound_path,
    path_colors_needed,
    path_hypergraph,
    path_tree,
    tree_path,
    um_color_path,
    verify_tree_coloring,
)

SCHEMA = "cfum.report/1"


@dataclass
class Claim:
    anchor: str
    expected: object
    computed: object
    ok: bool

    def to_dict(self) -> dict:
        return {"anchor": self.anchor, "expected": self.expected, "computed": self.computed, "verdict": "pass" if self.ok else "fail"}


@dataclass
class ExperimentReport:
    name: str
    claims: List[Claim] = field(default_factory=list)
    seconds: float = 0.0
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims)

    def check(self, anchor: str, expected, computed, ok=None) -> bool:
        if ok is None:
            ok = expected == computed
        self.claims.append(Claim(anchor, expected, computed, bool(ok)))
        return bool(ok)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "experiment": self.name,
            "verdict": "pass" if self.ok else "fail",
            "claims": [c.to_dict() for c in self.claims],
            "notes": self.notes,
            "stats": {"seconds": round(self.seconds, 3)},
        }


def random_hypergraph(rng: random.Random, n: int, m: int, max_size: int = 4) -> Hypergraph:
    edges = []
    for _ in range(m):
        size = rng.randint(1, min(max_size, n))
        edges.append(rng.sample(range(n), size))
    return Hypergraph(n, edges)


def random_uniform_hypergraph(rng: random.Random, n: int, m: int, l: int) -> Hypergraph:
    pool = list(itertools.combinations(range(n), l))
    return Hypergraph(n, rng.sample(pool, min(m, len(pool))))


# -- experiments ----------------------------------------------------------------


def exp_b7(seed: int = 0) -> ExperimentReport:
    rep = ExperimentReport("b7")
    T, C = cf_b7_explicit()
    rep.check("CF(B_7) <= 6: colors used", 6, colors_used(C))
    # singletons plus unordered pairs; the verifier walks every one of them
    rep.check("B_7 path count", math.comb(T.n, 2) + T.n, path_hypergraph(T).m)
    rep.check("explicit coloring is conflict-free", "pass", verify_tree_coloring(T, C, CF).verdict)
    leaves = range(2**6 - 1, 2**7 - 1)
    rep.check("every leaf has color 2", True, all(C[v] == 2 for v in leaves))
    rep.check("every leaf parent has color 1", True, all(C[(v - 1) // 2] == 1 for v in leaves))
    return rep


def exp_b7_iterated(seed: int = 0, r: int = 2) -> ExperimentReport:
    rep = ExperimentReport("b7-iterated")
    T, C = cf_b7_iterated(r)
    depth = 5 * r + 2
    rep.check("tree size", 2**depth - 1, T.n)
    rep.check("colors <= 4r + 2", 4 * r + 2, colors_used(C), colors_used(C) <= 4 * r + 2)
    rep.notes["paths"] = T.n * (T.n + 1) // 2
    rep.check("iterated coloring is conflict-free", "pass", verify_tree_coloring(T, C, CF).verdict)
    rep.check("at least sqrt(depth) colors", True, sqrt_depth_consistent(depth, C))
    return rep


def exp_path_table(seed: int = 0, n_max: int = 15) -> ExperimentReport:
    rep = ExperimentReport("path-table")
    rows = []
    for n in range(1, n_max + 1):
        want = path_colors_needed(n)
        C = um_color_path(n)
        T = path_tree(n)
        um_ok = verify_tree_coloring(T, C, UM).ok and colors_used(C) == want
        below = odd_lower_bound_path(n, want - 1).ok if want > 1 else False
        at = odd_lower_bound_path(n, want).ok
        rows.append({"n": n, "ceil_log": want, "um_coloring_ok": um_ok, "fewer_excluded": not below, "bound_allows": at})
        rep.check(f"UM=CF=ODD(P_{n}) = {want}", True, um_ok and not below and at)
    rep.notes["rows"] = rows
    return rep


def exp_gap_tree(seed: int = 0) -> ExperimentReport:
    rep = ExperimentReport("gap-tree-8")
    T = gap_tree()
    H = path_hypergraph(T)
    rep.check("UM of the 8-vertex gap tree", 4, um_tree_exact(T).chi)
    rep.check("UM by hypergraph search", 4, chromatic_number_exact(H, UM).chi)
    rep.check("CF of the 8-vertex gap tree", 3, chromatic_number_exact(H, CF).chi)
    cf_best = um_fail = None
    for colors in itertools.product((1, 2, 3), repeat=T.n):
        C = Coloring(colors, 3)
        used = len(set(colors))
        if verify_tree_coloring(T, C, UM).ok:
            um_fail = False
        elif um_fail is None:
            um_fail = True
        if verify_tree_coloring(T, C, CF).ok:
            cf_best = used if cf_best is None else min(cf_best, used)
    rep.check("exhaustive 3^8: fewest colors of a CF coloring", 3, cf_best)
    rep.check("exhaustive 3^8: no UM coloring", True, bool(um_fail))
    rep.check("4-UM-critical", "pass", is_um_critical(T).verdict)
    return rep


def exp_extremal_tight(seed: int = 0) -> ExperimentReport:
    rep = ExperimentReport("extremal-tight")
    for n, k in [(4, 2), (6, 2), (6, 3)]:
        P = extremal_nonuniform(n, k)
        cf = chromatic_number_exact(P.base, CF).chi
        um = chromatic_number_exact(P.base, UM).chi
        rep.check(f"extremal({n},{k}): chi_cf = k", k, cf)
        rep.check(f"extremal({n},{k}): chi_um = n - ceil(n/k) + 1", general_bound(n, k), um)
        out = um_from_cf(P.base, P.part_coloring())
        rep.check(
            f"extremal({n},{k}): transfer meets the bound",
            general_bound(n, k),
            colors_used(out),
            is_valid(P.base, out, UM).ok and colors_used(out) <= general_bound(n, k),
        )
    return rep


def exp_transfer_bound(seed: int = 0, count: int = 200) -> ExperimentReport:
    rep = ExperimentReport("transfer-bound")
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        n = rng.randint(2, 10)
        H = random_hypergraph(rng, n, rng.randint(1, 3 * n))
        res = chromatic_number_exact(H, CF)
        C = res.witness
        k = colors_used(C)
        out = um_from_cf(H, C)
        if not (is_valid(H, out, UM).ok and colors_used(out) <= general_bound(n, k)):
            bad.append(i)
    rep.check(f"{count} random hypergraphs: UM output within n - ceil(n/k) + 1", 0, len(bad))
    rep.notes["violations"] = bad
    return rep


def exp_uniform(seed: int = 0, count: int = 200, time_limit: float = 120.0) -> ExperimentReport:
    rep = ExperimentReport("uniform")
    n, k, l = 12, 2, 3
    P = extremal_uniform(n, k, l)
    H = P.base
    rep.check("n >= 2kl regime", True, not P.warnings)
    rep.check("part coloring is conflict-free", "pass", is_valid(H, P.part_coloring(), CF).verdict)
    rep.check("one color is not conflict-free", "fail", is_valid(H, Coloring([1] * n), CF).verdict)
    out = um_from_cf_uniform(H, P.part_coloring(), l)
    rep.check("uniform transfer output is unique-maximum", "pass", is_valid(H, out, UM).verdict)
    rep.check("uniform transfer uses n - ceil(n/k) - l + 4 colors", uniform_bound(n, k, l), colors_used(out))
    res = chromatic_number_exact(H, UM, SolveBudget(time_limit=time_limit))
    rep.notes["um_search"] = res.to_dict()
    rep.check(
        "budgeted UM search lower bound consistent with the transfer",
        uniform_bound(n, k, l),
        res.lower,
        res.lower <= uniform_bound(n, k, l) and (not res.exact or res.chi == uniform_bound(n, k, l)),
    )
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        nn = rng.randint(3, 10)
        G = random_uniform_hypergraph(rng, nn, rng.randint(1, 2 * nn), l)
        C = chromatic_number_exact(G, CF).witness
        sizes = sorted((C.colors.count(c) for c in set(C.colors)), reverse=True)
        got = um_from_cf_uniform(G, C, l)
        p1, p2 = sizes[0], sizes[1] if len(sizes) > 1 else 0
        want = nn - p1 - min(l - 2, p2) + 2 if len(sizes) > 1 else 1
        kk = len(sizes)
        in_regime = nn >= 2 * kk * l
        if not is_valid(G, got, UM).ok or colors_used(got) != want:
            bad.append(i)
        elif in_regime and colors_used(got) > uniform_bound(nn, kk, l):
            bad.append(i)
    rep.check(f"{count} random 3-uniform hypergraphs: transfer valid with the stated count", 0, len(bad))
    rep.notes["violations"] = bad
    return rep


def exp_critical(seed: int = 0) -> ExperimentReport:
    rep = ExperimentReport("critical")
    for k in range(1, 6):
        T = build_critical(k)
        rep.check(f"k={k}: 2^(k-1) vertices", 2 ** (k - 1), T.n)
        rep.check(f"k={k}: UM = k", k, um_tree_exact(T).chi)
        rep.check(f"k={k}: UM-critical", "pass", is_um_critical(T).verdict)
        if k >= 2:
            S1 = structure_tree(T, 1)
            rep.check(f"k={k}: 1-deep structure tree is an edge", (2, 1), (S1.n, len(S1.edges)))
        if k >= 3:
            S2 = structure_tree(T, 2)
            degs = sorted(S2.degree(v) for v in range(S2.n))
            rep.check(f"k={k}: 2-deep structure tree is P_4", [1, 1, 2, 2], degs)
    return rep


def exp_extraction(seed: int = 0, count: int = 50) -> ExperimentReport:
    rep = ExperimentReport("extraction")
    rng = random.Random(seed)
    failures = []
    kinds = {"path": 0, "binary": 0}
    for i in range(count):
        k = 3 + i % 3
        T = build_critical(k, random_recipe(k, rng))
        for l in (1, 2):
            try:
                res = find_path_or_binary(T, k, l)
                ok = check_extraction(T, res).ok
            except Exception as exc:  # reported, not raised
                ok = False
                res = exc
            if not ok:
                failures.append({"recipe": i, "k": k, "l": l, "error": repr(res)})
            else:
                kinds["path" if res.is_path else "binary"] += 1
    rep.notes["witness_types"] = kinds
    rep.notes["failures"] = failures
    rep.check(f"{count} recipes x l in {{1,2}}: every extraction validates", 0, len(failures))
    # low-diameter trees have no long path, so the splice branch runs
    T = build_critical(11, "compact")
    res = find_path_or_binary(T, 11, 3)
    rep.check("compact 11-critical tree, l=3: spliced B_4 validates", (False, 4, "pass"), (res.is_path, res.m, check_extraction(T, res).verdict))
    return rep


def exp_vector(seed: int = 0, count: int = 100) -> ExperimentReport:
    rep = ExperimentReport("vector")
    rng = random.Random(seed)
    bad = []
    for i in range(count):
        d = rng.randint(1, 4)
        k = rng.randint(1, 3)
        w = identity_witness(d)
        C = Coloring([rng.randint(1, k) for _ in range(w.host.n)], k)
        vec, wits = mono_subdivision_vector(w.host, w, C, k)
        ok = sum(vec) == d
        for c in range(1, k + 1):
            a = vec[c - 1]
            if a:
                W = wits[c]
                ok &= W.levels == a and all(C[v] == c for v in W.branch_map)
            ok &= a <= max_mono_subdivision_depth(w.host, C, c, d)
        if not ok:
            bad.append(i)
    rep.check(f"{count} colorings of B_d (d <= 4, k <= 3): vector sums to d, witnesses within brute force", 0, len(bad))
    rep.notes["violations"] = bad
    return rep


def exp_refuter(seed: int = 0, count: int = 100) -> ExperimentReport:
    rep = ExperimentReport("refuter")
    rng = random.Random(seed)
    w = identity_witness(9)
    T = w.host
    bad = []
    for i in range(count):
        C = Coloring([rng.randint(1, 2) for _ in range(T.n)], 2)
        cert = binary_odd_refuter(T, w, C, 2)
        path = cert.edge
        ok = (
            not cert.ok
            and path is not None
            and tuple(path) == tree_path(T, path[0], path[-1])
            and not any(parity_vector(C, path))
        )
        if not ok:
            bad.append(i)
    rep.check(f"{count} 2-colorings of B_9: an all-even path is always found", 0, len(bad))
    rep.notes["violations"] = bad
    return rep


def exp_ratio(seed: int = 0) -> ExperimentReport:
    rep = ExperimentReport("ratio")
    res = optimize_ratio()
    rep.check("argmax of x + H(x) is 2/3", 2 / 3, res.x_star, abs(res.x_star - 2 / 3) <= 1e-6)
    rep.check("max of x + H(x) is log2 3", math.log2(3), res.value, abs(res.value - math.log2(3)) <= 1e-9)
    rep.check("grid argmax agrees", res.x_star, res.grid_x, abs(res.grid_x - res.x_star) <= 1e-6)
    rep.check("grid max agrees", res.value, res.grid_value, abs(res.grid_value - res.value) <= 1e-9)
    return rep


def hierarchy_holds(verdicts: Dict) -> bool:
    rb, um, cf, odd, nm = (verdicts[k] for k in (RB, UM, CF, ODD, NM))
    return (not rb or um) and (not um or cf) and (not cf or (odd and nm))


def exp_hierarchy(seed: int = 0, count: int = 500) -> ExperimentReport:
    rep = ExperimentReport("hierarchy")
    rng = random.Random(seed)
    bad = []
    tally = {kind.value: 0 for kind in ALL_KINDS}
    for i in range(count):
        n = rng.randint(1, 8)
        H = random_hypergraph(rng, n, rng.randint(1, 6))
        k = rng.randint(1, 4)
        C = Coloring([rng.randint(1, k) for _ in range(n)], k)
        verdicts = {kind: is_valid(H, C, kind).ok for kind in ALL_KINDS}
        for kind, ok in verdicts.items():
            tally[kind.value] += ok
        if not hierarchy_holds(verdicts):
            bad.append(i)
    rep.notes["passes_per_kind"] = tally
    rep.check(f"{count} random (H, C): rainbow => UM => CF => odd and non-monochromatic", 0, len(bad))
    return rep


def exp_consistency(seed: int = 0) -> ExperimentReport:
    """Logged only: the cube-root relation holds up to an unspecified constant."""
    rep = ExperimentReport("consistency")
    rows = {}
    for name, T in [("P_7", path_tree(7)), ("gap-tree-8", gap_tree()), ("B_3", complete_binary(3))]:
        rows[name] = odd_vs_um_consistency(T)
    rep.notes["rows"] = rows
    rep.check("P_7 (um, odd)", (3, 3), (rows["P_7"]["um"], rows["P_7"]["odd"]))
    rep.check("gap tree (um, odd)", (4, 3), (rows["gap-tree-8"]["um"], rows["gap-tree-8"]["odd"]))
    rep.check("B_3 (um, odd)", (3, 3), (rows["B_3"]["um"], rows["B_3"]["odd"]))
    return rep


EXPERIMENTS: Dict[str, Callable[..., ExperimentReport]] = {
    "b7": exp_b7,
    "b7-iterated": exp_b7_iterated,
    "path-table": exp_path_table,
    "gap-tree-8": exp_gap_tree,
    "extremal-tight": exp_extremal_tight,
    "transfer-bound": exp_transfer_bound,
    "uniform": exp_uniform,
    "critical": exp_critical,
    "extraction": exp_extraction,
    "vector": exp_vector,
    "refuter": exp_refuter,
    "ratio": exp_ratio,
    "hierarchy": exp_hierarchy,
    "consistency": exp_consistency,
}


def run_experiment(name: str, seed: int = 0) -> ExperimentReport:
    if name not in EXPERIMENTS:
        raise KeyError(name)
    start = time.perf_counter()
    rep = EXPERIMENTS[name](seed=seed)
    rep.seconds = time.perf_counter() - start
    return rep
