from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from vassiliev.errors import GenericityError, ParameterError
from vassiliev.integrate import tripod_kernel
from vassiliev.knots import PolygonalKnot, extract_crossings, standard_knot, writhe
from vassiliev.tinkertoy import (
    DirectionSet,
    _Interior,
    find_chords,
    find_tripods,
    signed_count_v2,
    standard_polygon,
    tinkertoy_v2,
)

EXACT = {"unknot": Fraction(-1, 24), "trefoil": Fraction(23, 24), "figure8": Fraction(-25, 24)}


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def test_planar_polygon_has_no_vertical_chords():
    k = standard_knot("unknot").polygon(9)
    for d in ([0, 0, 1], [0.2, -0.1, 1.0]):
        assert find_chords(k, d) == []


@pytest.mark.parametrize("name", ["trefoil", "figure8"])
def test_chords_are_projection_crossings(name):
    # a chord along d is a crossing of the projection along d
    k = standard_polygon(name)
    rng = np.random.default_rng(11)
    for _ in range(4):
        d = unit(rng.normal(size=3))
        ch = find_chords(k, d)
        diag = extract_crossings(k, d)
        assert len(ch) == len(diag.crossings)
        assert sum(c.sign for c in ch) == writhe(diag)


def test_chords_invariant_under_antipode():
    k = standard_polygon("trefoil")
    d = unit([0.3, -0.5, 0.8])
    a = [c.params for c in find_chords(k, d)]
    b = [c.params for c in find_chords(k, -d)]
    assert a == b


def test_chord_solutions_parallel():
    k = standard_polygon("figure8")
    d = unit([0.1, 0.7, -0.4])
    for c in find_chords(k, d):
        r = k.position(np.array(c.params))
        r = r[1] - r[0]
        assert np.linalg.norm(np.cross(unit(r), d)) < 1e-9


def test_tripod_solutions_parallel_and_signed():
    k = standard_polygon("trefoil")
    dirs = DirectionSet.random(np.random.default_rng(3))
    D = dirs.array
    sols = find_tripods(k, dirs)
    assert sols
    for t in sols:
        s = np.array(t.params)
        x = np.array(t.point)
        segs = np.floor(s * k.n).astype(int)
        P = k.position(s)
        for m in range(3):
            assert np.linalg.norm(np.cross(unit(x - P[m]), D[t.assignment[m]])) < 1e-9
        # closed form: the tripod form is -det(v0, v1, v2)
        val = -tripod_kernel(_Interior(k, segs[None]), s[None], x[None])[0]
        assert int(np.sign(val)) == t.sign


def test_rotation_equivariance():
    k = standard_polygon("figure8")
    dirs = DirectionSet.random(np.random.default_rng(8))
    R = Rotation.from_rotvec([0.3, -1.1, 0.7]).as_matrix()
    kr = PolygonalKnot(k.vertices @ R.T)
    a, b = tinkertoy_v2(k, dirs), tinkertoy_v2(kr, dirs.rotated(R))
    assert a.value == b.value
    assert a.chord_counts == b.chord_counts
    assert (a.interleaved, a.tripods, a.corners) == (b.interleaved, b.tripods, b.corners)


@pytest.mark.parametrize("name", sorted(EXACT))
def test_exact_values(name):
    v = signed_count_v2(standard_polygon(name), trials=5, seed=0)
    assert isinstance(v, Fraction) and v == EXACT[name]


def test_other_polygons_same_value():
    k = standard_knot("trefoil").polygon(24, 0.01, 7)
    assert signed_count_v2(k, trials=3, seed=1) == EXACT["trefoil"]
    k = standard_knot("trefoil").polygon(40, 0.005, 2)
    assert signed_count_v2(k, trials=3, seed=2) == EXACT["trefoil"]


def test_direction_set_validation():
    with pytest.raises(GenericityError):
        DirectionSet(((1, 0, 0), (2, 0, 0), (0, 1, 0)))
    with pytest.raises(ParameterError):
        DirectionSet(((1, 0, 0), (0, 0, 0), (0, 1, 0)))
    d = DirectionSet.random(np.random.default_rng(0))
    assert DirectionSet.from_json(d.to_json()) == d
    with pytest.raises(ParameterError):
        signed_count_v2(standard_polygon("unknot"), trials=0)


def test_parallel_segment_rejected():
    k = standard_polygon("unknot")
    with pytest.raises(GenericityError):
        find_chords(k, k.edges[2])
