import math

import pytest

from vassiliev.diagrams import (
    ChordDiagram,
    GraphSum,
    TrivalentGraph,
    automorphism_count,
    canonical_signed,
    contract_edge,
    enumerate_chord_diagrams,
    enumerate_graphs,
    graph_product,
    is_split,
    labellings,
    nested_diagram,
    tripod,
    uncontract_partners,
    x_diagram,
)
from vassiliev.errors import ParameterError, StructuralError


def _brute_chord_count(k):
    """Rotation classes of perfect matchings, by explicit orbit collection."""
    pts = list(range(2 * k))

    def matchings(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for b in rest[1:]:
            left = [x for x in rest if x not in (a, b)]
            for m in matchings(left):
                yield ((a, b),) + m

    seen, classes = set(), 0
    for m in matchings(pts):
        key = frozenset(m)
        if key in seen:
            continue
        classes += 1
        for r in range(2 * k):
            seen.add(frozenset(tuple(sorted(((a + r) % (2 * k), (b + r) % (2 * k)))) for a, b in m))
    return classes


@pytest.mark.parametrize("k,count", [(1, 1), (2, 2), (3, 5), (4, 18), (5, 105)])
def test_chord_diagram_counts(k, count):
    assert len(enumerate_chord_diagrams(k)) == count
    if k <= 4:
        assert _brute_chord_count(k) == count


def test_chord_diagram_count_degree6():
    assert len(enumerate_chord_diagrams(6)) == 902


def test_chord_degree_bounds():
    with pytest.raises(ParameterError):
        enumerate_chord_diagrams(7)
    with pytest.raises(ParameterError):
        enumerate_chord_diagrams(0)


def test_canonical_is_rotation_minimum():
    d = ChordDiagram(3, ((0, 3), (1, 5), (2, 4)))
    c = d.canonical()
    assert c == min((d.rotate(r) for r in range(6)), key=lambda x: x.chords)
    assert all(d.rotate(r).canonical() == c for r in range(6))


def test_parse_roundtrip():
    for d in enumerate_chord_diagrams(4):
        assert ChordDiagram.parse(str(d)) == d


def test_bad_matching_rejected():
    with pytest.raises(StructuralError):
        ChordDiagram(2, ((0, 1), (1, 2)))


def test_graph_counts():
    assert len(enumerate_graphs(2)) == 5
    assert len(enumerate_graphs(3)) == 18


def test_automorphisms():
    assert automorphism_count(nested_diagram()) == 2
    assert automorphism_count(x_diagram()) == 4
    assert automorphism_count(tripod()) == 3


@pytest.mark.parametrize("k", [1, 2, 3])
def test_orbit_stabilizer(k):
    for g in enumerate_graphs(k):
        assert labellings(g) * automorphism_count(g) == math.factorial(g.n_vertices)


def test_invalid_graphs():
    with pytest.raises(StructuralError):
        TrivalentGraph(2, 0, ((0, 0),))
    with pytest.raises(StructuralError):
        TrivalentGraph(3, 1, ((0, 3), (1, 3), (2, 2)), ((0, 1, 2),))
    with pytest.raises(StructuralError):
        TrivalentGraph(4, 0, ((0, 1),))


def test_orientation_reversal_sign():
    t = tripod()
    flipped = TrivalentGraph(3, 1, t.edges, ((1, 0, 2),))
    _, s1 = canonical_signed(t)
    _, s2 = canonical_signed(flipped)
    assert s1 == -s2


def test_json_roundtrip():
    for g in enumerate_graphs(3):
        assert TrivalentGraph.from_json(g.to_json()) == g


def test_product_of_chords():
    chord = TrivalentGraph(2, 0, ((0, 1),))
    p = graph_product(chord, chord)
    assert dict(p.items()) == {nested_diagram().canonical()[0]: 4, x_diagram().canonical()[0]: 2}


def test_graphsum_drops_zero():
    g = x_diagram()
    assert len(GraphSum([(g, 1), (g, -1)])) == 0


def test_is_split():
    assert not is_split(x_diagram())
    assert is_split(nested_diagram())
    assert not is_split(tripod())


@pytest.mark.parametrize("k", [2, 3])
def test_contract_uncontract_recovers(k):
    for g in enumerate_graphs(k):
        key = g.canonical()[0]
        for e, (a, b) in enumerate(g.edges):
            if g.edges.count((a, b)) > 1 or (a < g.n_cycle and b < g.n_cycle):
                continue
            cg = contract_edge(g, e)
            reps = {r.graph.canonical()[0] for r in uncontract_partners(cg)}
            assert key in reps


def test_contract_chord_rejected():
    with pytest.raises(StructuralError):
        contract_edge(x_diagram(), 0)
