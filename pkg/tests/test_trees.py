import json
import math
import random

import pytest

from cfum.hypergraph import ALL_KINDS, CF, ODD, UM, Coloring, Hypergraph, InstanceError, colors_used, is_valid, parity_vector
from cfum.solvers import chromatic_number_exact
from cfum.trees import (
    SubdivisionWitness,
    Tree,
    complete_binary,
    format_tree,
    identity_witness,
    level_of,
    odd_lower_bound_path,
    parse_tree,
    path_colors_needed,
    path_hypergraph,
    path_tree,
    sub_witness,
    tree_path,
    um_color_complete_binary,
    um_color_path,
    validate_subdivision,
    verify_tree_coloring,
)

from oracles import chromatic_number, coloring_ok, forest_paths, random_tree_edges, tree_paths


def test_tree_path_examples():
    P4 = path_tree(4)
    assert tree_path(P4, 0, 3) == (0, 1, 2, 3)
    assert tree_path(P4, 3, 1) == (3, 2, 1)
    assert tree_path(P4, 2, 2) == (2,)
    star = Tree(4, [(0, 1), (0, 2), (0, 3)])
    assert tree_path(star, 1, 2) == (1, 0, 2)


def test_tree_rejects_bad_input():
    with pytest.raises(InstanceError):
        Tree(3, [(0, 1)])
    with pytest.raises(InstanceError):
        Tree(4, [(0, 1), (1, 0), (2, 3)])
    with pytest.raises(InstanceError):
        Tree(2, [(0, 0)])
    with pytest.raises(InstanceError):
        Tree(0, [])


def test_path_hypergraph_counts():
    assert path_hypergraph(path_tree(2)).edges == ((0,), (0, 1), (1,))
    assert path_hypergraph(path_tree(3)).m == 6
    assert path_hypergraph(complete_binary(2)).m == 6
    T = complete_binary(5)
    assert path_hypergraph(T).m == T.n * (T.n - 1) // 2 + T.n


def test_path_hypergraph_matches_bfs_oracle():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 9)
        edges = random_tree_edges(rng, n)
        assert sorted(path_hypergraph(Tree(n, edges)).edges) == tree_paths(n, edges)


def test_streaming_verifier_agrees_with_hypergraph_check():
    rng = random.Random(11)
    for _ in range(400):
        n = rng.randint(1, 10)
        T = Tree(n, random_tree_edges(rng, n))
        H = path_hypergraph(T)
        k = rng.randint(1, 4)
        C = Coloring([rng.randint(1, k) for _ in range(n)], k)
        for kind in ALL_KINDS:
            slow = is_valid(H, C, kind)
            for compiled in (False, True):
                fast = verify_tree_coloring(T, C, kind, compiled=compiled)
                assert fast.ok == slow.ok
                assert fast.edge == slow.edge
                if not fast.ok:
                    assert coloring_ok([fast.edge], C.colors, kind.value) is False


def test_compiled_and_interpreted_scans_agree_on_larger_trees():
    rng = random.Random(13)
    for n in (150, 300, 600):
        T = Tree(n, random_tree_edges(rng, n))
        C = um_color_path(n) if rng.random() < 0.5 else Coloring([rng.randint(1, 9) for _ in range(n)], 9)
        for kind in ALL_KINDS:
            assert verify_tree_coloring(T, C, kind, compiled=False) == verify_tree_coloring(T, C, kind, compiled=True)


def test_verifier_on_single_vertex():
    T = Tree(1, [])
    for kind in ALL_KINDS:
        assert verify_tree_coloring(T, Coloring([1]), kind).ok


def test_complete_binary_shape():
    assert complete_binary(1).n == 1
    B2 = complete_binary(2)
    assert B2.n == 3 and B2.degree(0) == 2
    B3 = complete_binary(3)
    assert B3.n == 7 and B3.root == 0
    assert [level_of(p) for p in range(7)] == [1, 2, 2, 3, 3, 3, 3]
    with pytest.raises(InstanceError):
        complete_binary(0)


def test_um_color_path_examples():
    assert um_color_path(1).colors == (1,)
    assert um_color_path(3).colors == (1, 2, 1)
    C = um_color_path(7)
    assert colors_used(C) == 3 and verify_tree_coloring(path_tree(7), C, UM).ok


def test_um_color_path_up_to_1024():
    for n in range(1, 1025):
        C = um_color_path(n)
        assert colors_used(C) == math.ceil(math.log2(n + 1)) == path_colors_needed(n)
        assert verify_tree_coloring(path_tree(n), C, UM).ok, n


def test_um_color_complete_binary():
    assert um_color_complete_binary(1).colors == (1,)
    assert um_color_complete_binary(2).colors == (2, 1, 1)
    C = um_color_complete_binary(4)
    assert colors_used(C) == 4 and verify_tree_coloring(complete_binary(4), C, UM).ok


def test_odd_lower_bound_examples():
    assert not odd_lower_bound_path(3, 1).ok
    assert odd_lower_bound_path(3, 2).ok
    cert = odd_lower_bound_path(7, 2, Coloring([1, 2, 1, 2, 1, 2, 1], 2))
    assert not cert.ok and not any(parity_vector(Coloring([1, 2, 1, 2, 1, 2, 1], 2), cert.edge))
    assert cert.edge == tuple(range(cert.edge[0], cert.edge[-1] + 1))


def test_odd_lower_bound_finds_even_path_for_every_small_coloring():
    rng = random.Random(5)
    for _ in range(300):
        k = rng.randint(1, 3)
        n = rng.randint(2**k, 2**k + 4)
        C = Coloring([rng.randint(1, k) for _ in range(n)], k)
        cert = odd_lower_bound_path(n, k, C)
        assert not cert.ok and not any(parity_vector(C, cert.edge))


def test_minimal_odd_colors_of_paths():
    for n in range(1, 16):
        H = path_hypergraph(path_tree(n))
        assert chromatic_number_exact(H, ODD).chi == path_colors_needed(n), n
    for n in range(1, 8):
        paths = tree_paths(n, [(i, i + 1) for i in range(n - 1)])
        assert chromatic_number(n, paths, "odd") == path_colors_needed(n)


def test_monotone_under_subgraphs():
    rng = random.Random(8)
    for _ in range(25):
        n = rng.randint(2, 8)
        edges = random_tree_edges(rng, n)
        keep_v = sorted(rng.sample(range(n), rng.randint(1, n)))
        sub_edges = [e for e in edges if e[0] in keep_v and e[1] in keep_v and rng.random() < 0.8]
        idx = {v: i for i, v in enumerate(keep_v)}
        sub = forest_paths(len(keep_v), [(idx[a], idx[b]) for a, b in sub_edges])
        whole = tree_paths(n, edges)
        for kind in (UM, CF, ODD):
            big = chromatic_number_exact(Hypergraph(n, whole), kind).chi
            small = chromatic_number_exact(Hypergraph(len(keep_v), sub), kind).chi
            assert small <= big


def test_tree_file_round_trip():
    for T in [path_tree(5), complete_binary(3), Tree(1, [])]:
        assert parse_tree(format_tree(T)) == T
    assert parse_tree(format_tree(complete_binary(3))).root == 0
    for bad in ["", "3\n0 1", "2\n0 x", "2 0 1\n0 1"]:
        with pytest.raises(InstanceError):
            parse_tree(bad)


# -- subdivisions -----------------------------------------------------------------


def test_identity_witness_validates():
    w = identity_witness(3)
    assert validate_subdivision(w).ok
    back = SubdivisionWitness.from_dict(w.host, json.loads(w.to_json()))
    assert back == w


def test_subdivision_rejections():
    B3 = complete_binary(3)
    bm = list(range(7))
    bm[3] = bm[4]
    assert validate_subdivision(SubdivisionWitness(B3, 3, bm, [(0, 1), (0, 2), (1, 4), (1, 4), (2, 5), (2, 6)])).reason == "branch_not_injective"
    # subdivided B_2 whose two legs share the inner vertex 1
    host = Tree(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    crossing = SubdivisionWitness(host, 2, [0, 2, 4], [(0, 1, 2), (0, 1, 3, 4)])
    assert validate_subdivision(crossing).reason == "paths_cross"
    host2 = Tree(4, [(0, 1), (1, 2), (1, 3)])
    assert validate_subdivision(SubdivisionWitness(host2, 2, [1, 0, 3])).ok
    assert validate_subdivision(SubdivisionWitness(host2, 2, [0, 2, 3])).reason == "paths_cross"
    assert validate_subdivision(SubdivisionWitness(host2, 2, [0, 1, 2])).reason == "path_hits_branch"
    assert validate_subdivision(SubdivisionWitness(host2, 2, [1, 0, 3], [(1, 0), (1, 2, 3)])).reason == "not_host_path"
    assert validate_subdivision(SubdivisionWitness(host2, 2, [1, 0, 3], [(1, 0), (3, 1)])).reason == "path_endpoints"
    assert validate_subdivision(SubdivisionWitness(host2, 3, [1, 0, 3])).reason == "shape"
    assert validate_subdivision(SubdivisionWitness(host2, 2, [1, 0, 9], [(1, 0), (1, 9)])).reason == "vertex_range"


def test_subdivided_host_validates():
    # B_2 with each edge replaced by a two-edge path
    host = Tree(5, [(0, 1), (1, 2), (0, 3), (3, 4)])
    w = SubdivisionWitness(host, 2, [0, 2, 4])
    assert validate_subdivision(w).ok
    assert w.paths == ((0, 1, 2), (0, 3, 4))


def test_sub_witness_positions():
    w = identity_witness(4)
    s = sub_witness(w, 2, 3)
    assert s.branch_map == (2, 5, 6, 11, 12, 13, 14)
    assert validate_subdivision(s).ok
    with pytest.raises(InstanceError):
        sub_witness(w, 2, 4)
