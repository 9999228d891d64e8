"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary and also when this file is run directly.
"""

import math
import sys
import time

import pytest

from cfum.experiments import run_experiment
from cfum.hypergraph import CF, colors_used
from cfum.psf import cf_b7_explicit, cf_b7_iterated
from cfum.trees import verify_tree_coloring

RESULTS = []


def _record(number, title, ok, seconds, limit, detail=""):
    within = seconds <= limit
    verdict = "PASS" if ok and within else "FAIL"
    line = f"criterion {number:>2} {verdict}  {title}  [{seconds:.2f}s / limit {limit:g}s]"
    if detail:
        line += f"  {detail}"
    RESULTS.append(line)
    print(line)
    return ok and within


def _experiment(number, title, name, limit, extra=None):
    start = time.perf_counter()
    rep = run_experiment(name, seed=0)
    ok = rep.ok
    detail = ""
    if extra is not None:
        more_ok, detail = extra(rep)
        ok = ok and more_ok
    seconds = time.perf_counter() - start
    failed = [c.anchor for c in rep.claims if not c.ok]
    if failed:
        detail = (detail + " failed: " + "; ".join(failed)).strip()
    assert _record(number, title, ok, seconds, limit, detail), detail or "time limit exceeded"


def test_criterion_01_b7_explicit():
    start = time.perf_counter()
    T, C = cf_b7_explicit()
    cert = verify_tree_coloring(T, C, CF)
    ok = colors_used(C) == 6 and cert.ok and T.n == 127
    seconds = time.perf_counter() - start
    assert _record(1, "B_7 explicit coloring: 6 colors, CF over all paths", ok, seconds, 1.0)


def test_criterion_02_iterated():
    start = time.perf_counter()
    T, C = cf_b7_iterated(2)
    cert = verify_tree_coloring(T, C, CF)
    ok = T.n == 4095 and colors_used(C) <= 10 and cert.ok
    seconds = time.perf_counter() - start
    detail = f"{colors_used(C)} colors, {T.n * (T.n + 1) // 2} paths"
    assert _record(2, "B_12 iterated coloring: <= 10 colors, CF", ok, seconds, 120.0, detail)


def test_criterion_03_path_table():
    _experiment(3, "paths n=1..15: UM = CF = ODD = ceil(log2(n+1))", "path-table", 1.0)


def test_criterion_04_gap_tree():
    _experiment(4, "8-vertex gap tree: UM 4, CF 3 (exhaustive 3^8)", "gap-tree-8", 10.0)


def test_criterion_05_extremal_tight():
    _experiment(5, "extremal non-uniform instances are tight", "extremal-tight", 120.0)


def test_criterion_06_transfer_bound():
    _experiment(6, "UM from CF within n - ceil(n/k) + 1 on 200 instances", "transfer-bound", 300.0)


def test_criterion_07_uniform():
    def search(rep):
        res = rep.notes["um_search"]
        return True, f"UM search {res['status']}, lower bound {res['lower']}"

    _experiment(7, "uniform transfer on extremal(12,2,3): 7 colors", "uniform", 300.0, search)


def test_criterion_08_critical():
    _experiment(8, "critical trees k <= 5 and their structure trees", "critical", 60.0)


def test_criterion_09_extraction():
    _experiment(9, "path-or-binary extraction validates on 50 recipes", "extraction", 120.0)


def test_criterion_10_vector():
    _experiment(10, "monochromatic vector within brute force on 100 colorings", "vector", 120.0)


def test_criterion_11_refuter():
    _experiment(11, "all-even path in 100 two-colorings of B_9", "refuter", 60.0)


def test_criterion_12_ratio():
    def tolerances(rep):
        x = next(c.computed for c in rep.claims if c.anchor.startswith("argmax"))
        v = next(c.computed for c in rep.claims if c.anchor.startswith("max"))
        ok = abs(x - 2 / 3) <= 1e-6 and abs(v - math.log2(3)) <= 1e-9
        return ok, f"x*={x:.9f} value={v:.12f}"

    _experiment(12, "x + H(x) peaks at 2/3 with value log2 3", "ratio", 5.0, tolerances)


def test_criterion_13_hierarchy():
    _experiment(13, "rainbow => UM => CF => odd and non-monochromatic on 500 pairs", "hierarchy", 30.0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
