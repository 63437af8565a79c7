import time
from fractions import Fraction

import pytest
import sympy

from vassiliev.diagrams import ChordDiagram, enumerate_chord_diagrams, enumerate_graphs, tripod, x_diagram
from vassiliev.errors import StructuralError, TotalityError, UnsupportedGraphError
from vassiliev.weights import (
    AnomalyCase,
    ExtendedWeightSystem,
    IHXReport,
    Parity,
    WeightSystem,
    anomaly_case,
    anomaly_case_from_parity,
    c2_system,
    check_4T,
    check_IHX,
    check_STU_order,
    chord_evaluation,
    deg3_representatives,
    deg3_system,
    extend_STU,
    four_term_relations,
    parity,
    split_by_reversal,
    zero_system,
)


def _nullity(k):
    diags = enumerate_chord_diagrams(k)
    idx = {d: i for i, d in enumerate(diags)}
    rows = []
    for r in four_term_relations(k):
        row = [0] * len(diags)
        for d, c in r.terms:
            row[idx[d]] += c
        rows.append(row)
    M = sympy.Matrix(rows) if rows else sympy.zeros(1, len(diags))
    return len(diags) - M.rank()


@pytest.mark.parametrize("k,dim", [(2, 2), (3, 3), (4, 6)])
def test_weight_space_dimensions(k, dim):
    assert _nullity(k) == dim


def test_c2_values():
    w = c2_system()
    ext = ExtendedWeightSystem(w)
    assert ext(x_diagram()) == 1
    assert ext(tripod()) == 1


def test_deg3_passes_4T_and_matches_representatives():
    w = deg3_system()
    assert check_4T(w) == []
    ext = ExtendedWeightSystem(w)
    assert [ext(g) for g in deg3_representatives()] == [2, -1, 1, 1]


def test_non_4T_system_rejected():
    vals = {d: 0 for d in enumerate_chord_diagrams(3)}
    vals[ChordDiagram(3, ((0, 3), (1, 4), (2, 5)))] = 1
    with pytest.raises(StructuralError):
        WeightSystem(3, vals)
    w = WeightSystem(3, vals, verify=False)
    assert not w.verified and check_4T(w)


def test_totality():
    with pytest.raises(TotalityError):
        WeightSystem(2, {ChordDiagram(2, ((0, 2), (1, 3))): 1})


def test_json_roundtrip():
    w = deg3_system()
    assert WeightSystem.from_json(w.dumps()) == w


def test_stu_order_independent():
    for w in (c2_system(), deg3_system()):
        checked, bad = check_STU_order(w)
        assert checked > 0 and bad == []


def test_ihx():
    rep = IHXReport()
    assert check_IHX(deg3_system(), rep) == []
    assert len(rep.checked) == 20 and rep.skipped == 0


def test_zero_system_extends_to_zero():
    ext = ExtendedWeightSystem(zero_system(3))
    for g in enumerate_graphs(3):
        if not g.has_multi_edge():
            assert ext(g) == 0


def test_sillycase_rejected():
    from vassiliev.diagrams import is_sillycase

    silly = [g for g in enumerate_graphs(3) if is_sillycase(g)]
    assert silly
    for g in silly:
        with pytest.raises(UnsupportedGraphError):
            extend_STU(deg3_system(), g)


def test_parity_and_anomaly():
    assert parity(c2_system()) == (Parity.EVEN, Parity.EVEN)
    assert anomaly_case(c2_system()) == AnomalyCase.Vanishes
    assert parity(deg3_system()) == (Parity.ODD, Parity.EVEN)
    assert anomaly_case(deg3_system()) == AnomalyCase.WritheCorrectionClass
    assert anomaly_case_from_parity(Parity.EVEN, Parity.ODD) == AnomalyCase.OneFormCorrectionClass
    assert anomaly_case_from_parity(Parity.ODD, Parity.ODD) == AnomalyCase.Vanishes


def test_split_by_reversal():
    even, odd = split_by_reversal(deg3_system())
    for d in enumerate_chord_diagrams(3):
        assert even(d) + odd(d) == deg3_system()(d)
        assert odd(d) == 0


def test_chord_evaluation():
    x = x_diagram()
    assert chord_evaluation(x, ChordDiagram(2, ((0, 2), (1, 3)))) == 4
    assert chord_evaluation(x, ChordDiagram(2, ((0, 1), (2, 3)))) == 0


def test_suite_under_one_second():
    t = time.perf_counter()
    w = deg3_system()
    check_4T(w)
    check_STU_order(w)
    check_IHX(w)
    assert time.perf_counter() - t < 1.0


def test_scaled_values():
    w = c2_system().scaled(Fraction(1, 2))
    assert w(ChordDiagram(2, ((0, 2), (1, 3)))) == Fraction(1, 2)
