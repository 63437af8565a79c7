import itertools

import pytest

from vassiliev.diagrams import enumerate_graphs, tripod, x_diagram
from vassiliev.errors import ParameterError
from vassiliev.orientation import (
    Labelling,
    all_labellings,
    det_merge_sign,
    epsilon_sign,
    odd_collection_sign,
    orientation_equivalence,
    permutation_sign,
    reference_labelling,
    sign_def1,
    sign_def2,
    sign_def3,
    wedge_parity_oracle,
)


def graphs_upto(k):
    return [g for d in range(1, k + 1) for g in enumerate_graphs(d) if g.n_cycle >= 2]


def test_det_merge_sign():
    assert det_merge_sign(1, 1) == -1
    assert det_merge_sign(2, 3) == 1
    assert det_merge_sign(3, 3) == -1
    with pytest.raises(ParameterError):
        det_merge_sign(-1, 2)


def test_odd_collection_sign():
    assert odd_collection_sign([2, 1, 3]) == -1
    assert odd_collection_sign([1, 2, 3]) == 1
    assert odd_collection_sign([2, 3, 1]) == 1
    with pytest.raises(ParameterError):
        odd_collection_sign([1, 1, 2])


def test_permutation_sign():
    assert permutation_sign("abc", "bac") == -1
    assert permutation_sign("abc", "cab") == 1


def test_reference_signs():
    assert epsilon_sign(x_diagram(), reference_labelling(x_diagram())) == 1
    assert epsilon_sign(tripod(), reference_labelling(tripod())) == -1


@pytest.mark.parametrize("g", graphs_upto(2), ids=str)
def test_single_moves_flip(g):
    ref = reference_labelling(g)
    s = epsilon_sign(g, ref)
    for i, j in itertools.combinations(range(g.n_vertices), 2):
        assert epsilon_sign(g, ref.swap_vertices(i, j)) == -s
    for e in range(len(g.edges)):
        assert epsilon_sign(g, ref.flip(e)) == -s
    for i, j in itertools.combinations(range(len(g.edges)), 2):
        assert epsilon_sign(g, ref.swap_edges(i, j)) == s


@pytest.mark.parametrize("g", graphs_upto(2), ids=str)
def test_three_definitions_agree_exhaustively(g):
    assert orientation_equivalence(g, exhaustive=True)


@pytest.mark.parametrize("g", graphs_upto(2), ids=str)
def test_wedge_oracle(g):
    for lab in all_labellings(g, edge_orders=True):
        assert wedge_parity_oracle(g, lab) == sign_def2(g, lab)


def test_three_definitions_degree3():
    for g in enumerate_graphs(3):
        if g.n_cycle >= 2:
            assert orientation_equivalence(g)


def test_def3_tracks_def1_on_tripod():
    g = tripod()
    ratio = {sign_def1(g, lab) * sign_def3(g, lab) for lab in all_labellings(g)}
    assert len(ratio) == 1


def test_bad_labelling():
    g = x_diagram()
    with pytest.raises(ParameterError):
        epsilon_sign(g, Labelling((0, 0, 1, 2), (0, 1), g.edges))
    with pytest.raises(ParameterError):
        epsilon_sign(g, Labelling((0, 1, 2, 3), (0, 1), ((0, 1), (1, 3))))
