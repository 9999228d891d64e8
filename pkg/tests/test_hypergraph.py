import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfum.hypergraph import (
    ALL_KINDS,
    CF,
    NM,
    ODD,
    RB,
    UM,
    Certificate,
    Coloring,
    ColoringKind,
    Hypergraph,
    InstanceError,
    colors_used,
    edge_satisfies,
    format_coloring,
    format_hypergraph,
    is_valid,
    parity_vector,
    parse_coloring,
    parse_hypergraph,
    recheck,
)

from oracles import edge_ok


def test_kind_parsing():
    assert ColoringKind.parse("um") is UM
    assert ColoringKind.parse(CF) is CF
    with pytest.raises(InstanceError):
        ColoringKind.parse("bogus")


@pytest.mark.parametrize(
    "colors, expected",
    [
        ((1, 1, 1), {NM: False, RB: False, UM: False, CF: False, ODD: True}),
        ((1, 2, 2), {NM: True, RB: False, UM: False, CF: True, ODD: True}),
        ((2, 1, 1), {NM: True, RB: False, UM: True, CF: True, ODD: True}),
        ((1, 1, 2, 2), {NM: True, RB: False, UM: False, CF: False, ODD: False}),
        ((1, 2, 3), {NM: True, RB: True, UM: True, CF: True, ODD: True}),
        ((5,), {NM: True, RB: True, UM: True, CF: True, ODD: True}),
    ],
)
def test_edge_predicates(colors, expected):
    for kind, want in expected.items():
        assert edge_satisfies(kind, colors) is want


def test_first_violating_edge_and_reason():
    H = Hypergraph(4, [(0, 1), (1, 2, 3), (2, 3)])
    C = Coloring([1, 2, 2, 2])
    cert = is_valid(H, C, UM)
    assert not cert.ok and cert.edge == (1, 2, 3) and cert.reason == "max_not_unique"
    assert recheck(C, cert)
    assert is_valid(H, C, NM).edge == (1, 2, 3)
    assert is_valid(H, Coloring([1, 2, 1, 3]), RB).ok


def test_singleton_edges_never_violate():
    H = Hypergraph(3, [(0,), (1,), (2,)])
    for kind in ALL_KINDS:
        assert is_valid(H, Coloring([1, 1, 1]), kind).ok


def test_validation_errors():
    with pytest.raises(InstanceError):
        Hypergraph(2, [(0, 2)])
    with pytest.raises(InstanceError):
        Hypergraph(2, [()])
    with pytest.raises(InstanceError):
        Hypergraph(3, [(1, 1)])
    with pytest.raises(InstanceError):
        Coloring([0, 1])
    with pytest.raises(InstanceError):
        Coloring([3], k=2)
    with pytest.raises(InstanceError):
        is_valid(Hypergraph(3, [(0, 1)]), Coloring([1, 1]), CF)


def test_parity_vector():
    C = Coloring([1, 2, 1, 3], k=4)
    assert parity_vector(C, (0, 1, 2, 3)) == (0, 1, 1, 0)
    assert parity_vector(C, ()) == (0, 0, 0, 0)


def test_certificate_round_trip():
    H = Hypergraph(3, [(0, 1, 2)])
    cert = is_valid(H, Coloring([1, 1, 2]), ODD)
    assert cert.ok
    cert = is_valid(H, Coloring([1, 1, 2]), RB)
    data = json.loads(cert.to_json())
    assert data == {"verdict": "fail", "kind": "rb", "edge": [0, 1, 2], "reason": "repeated_color"}
    assert Certificate.from_dict(data) == cert


def test_file_formats_round_trip():
    H = Hypergraph(5, [(0, 4), (1, 2, 3), (2,)])
    assert parse_hypergraph(format_hypergraph(H)) == H
    C = Coloring([1, 3, 2, 2, 1], k=4)
    assert parse_coloring(format_coloring(C)) == C
    assert parse_coloring("1 2 3").k == 3
    for bad in ["", "3", "2 1\n0 x", "2 2\n0 1"]:
        with pytest.raises(InstanceError):
            parse_hypergraph(bad)
    for bad in ["", "k=x 1", "1 a"]:
        with pytest.raises(InstanceError):
            parse_coloring(bad)


def test_colors_used():
    assert colors_used(Coloring([1, 3, 3], k=5)) == 2
    assert colors_used([2, 2]) == 1


edge_colors = st.lists(st.integers(1, 4), min_size=1, max_size=7)


@given(edge_colors)
def test_predicates_match_oracle(colors):
    for kind in ALL_KINDS:
        assert edge_satisfies(kind, colors) == edge_ok(kind.value, colors)


@given(edge_colors)
def test_hierarchy_on_edges(colors):
    ok = {kind: edge_satisfies(kind, colors) for kind in ALL_KINDS}
    assert not ok[RB] or ok[UM]
    assert not ok[UM] or ok[CF]
    assert not ok[CF] or (ok[ODD] and ok[NM])


@given(st.lists(st.integers(1, 3), min_size=1, max_size=8), st.data())
def test_parity_of_symmetric_difference_is_xor(colors, data):
    C = Coloring(colors, k=3)
    vertices = st.sets(st.integers(0, len(colors) - 1))
    a, b = data.draw(vertices), data.draw(vertices)
    whole = parity_vector(C, sorted(a ^ b))
    assert whole == tuple(x ^ y for x, y in zip(parity_vector(C, sorted(a)), parity_vector(C, sorted(b))))


@settings(max_examples=60)
@given(st.integers(0, 10_000))
def test_failed_certificates_recheck(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    H = Hypergraph(n, [rng.sample(range(n), rng.randint(1, n)) for _ in range(rng.randint(1, 6))])
    C = Coloring([rng.randint(1, 3) for _ in range(n)], k=3)
    for kind in ALL_KINDS:
        cert = is_valid(H, C, kind)
        if not cert.ok:
            assert recheck(C, cert)
            assert cert.edge in H.edges
            assert not edge_ok(kind.value, [C[v] for v in cert.edge])
            earlier = H.edges[: H.edges.index(cert.edge)]
            assert all(edge_ok(kind.value, [C[v] for v in e]) for e in earlier)


def test_documented_examples():
    assert parity_vector(Coloring([2, 2, 3], 3), (0, 1, 2)) == (0, 0, 1)
    assert parity_vector(Coloring([1, 2, 1, 2], 2), (0, 1, 2, 3)) == (0, 0)
    assert parity_vector(Coloring([1, 3, 2], 3), (1,)) == (0, 0, 1)
    P3 = Hypergraph(3, [(0,), (1,), (2,), (0, 1), (1, 2), (0, 1, 2)])
    for kind in (UM, CF, ODD):
        assert is_valid(P3, Coloring([1, 2, 1]), kind).ok
    pair = Hypergraph(2, [(0, 1)])
    assert all(not is_valid(pair, Coloring([1, 1]), kind).ok for kind in ALL_KINDS)
    from itertools import combinations

    triples = Hypergraph(4, list(combinations(range(4), 3)))
    assert is_valid(triples, Coloring([1] * 4), ODD).ok
    assert not is_valid(triples, Coloring([1] * 4), CF).ok
    assert [colors_used(c) for c in ([1, 3, 1], [1], [1, 2, 3, 4])] == [2, 1, 4]
    with pytest.raises(InstanceError):
        parity_vector(Coloring([1, 2]), (0, 5))
