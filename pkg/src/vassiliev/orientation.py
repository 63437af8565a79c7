"""Determinant-line signs and orientations of graphs based on a circle.

An oriented graph carries its orientation as cyclic orders of the edges at
each vertex.  Knot vertices have the fixed order (outgoing knot edge,
incoming knot edge, propagator); internal vertices use ``g.orders``.
The knot-vertex convention sets the relative sign of graphs whose knot
vertex counts differ in parity; this one makes the degree-2 combination
of the crossing diagram and the tripod an isotopy invariant.

A :class:`Labelling` orders the vertices, orders the propagators and picks a
direction ``(s, d)`` on each propagator.  Its sign :func:`epsilon_sign`
compares the element::

    (t(1) ^ ... ^ t(n))  (x)  (s_e ^ d_e over propagators)  (x)  (knot edges)

with the graph's orientation, using the regrouping of vertex-edge pairs
first by edge and then by vertex.  Knot edges always point along the knot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .diagrams import TrivalentGraph, perm_sign, x_diagram
from .errors import ParameterError, StructuralError


def det_merge_sign(dim_v: int, dim_w: int) -> int:
    """Sign relating det V (x) det W to det W (x) det V."""
    if dim_v < 0 or dim_w < 0:
        raise ParameterError("dimensions must be nonnegative")
    return -1 if (dim_v * dim_w) % 2 else 1


def odd_collection_sign(permutation) -> int:
    """Sign picked up by a wedge of odd-degree elements under ``permutation``.

    Accepts a permutation of 1..k or of 0..k-1 in one-line notation.
    """
    perm = list(permutation)
    if sorted(perm) not in (list(range(len(perm))), list(range(1, len(perm) + 1))):
        raise ParameterError(f"{perm} is not a permutation")
    return perm_sign(perm)


def permutation_sign(source, target) -> int:
    """Sign of the permutation carrying the sequence ``source`` to ``target``."""
    pos = {x: i for i, x in enumerate(target)}
    if len(pos) != len(target) or sorted(map(repr, source)) != sorted(map(repr, target)):
        raise ParameterError("sequences are not rearrangements of each other")
    return perm_sign([pos[x] for x in source])


@dataclass(frozen=True)
class Labelling:
    """t, l and l_e for a graph.

    ``vertex_order[i]`` is the vertex labelled ``i + 1`` (so this is the
    inverse of t), ``edge_order[i]`` is the propagator labelled ``i + 1``
    and ``directions[e]`` is the ordered pair ``(s, d)`` for propagator e.
    """
    vertex_order: tuple
    edge_order: tuple
    directions: tuple

    def validate(self, g: TrivalentGraph):
        if sorted(self.vertex_order) != list(range(g.n_vertices)):
            raise ParameterError("vertex labelling is not a bijection")
        if sorted(self.edge_order) != list(range(len(g.edges))):
            raise ParameterError("edge labelling is not a bijection")
        if len(self.directions) != len(g.edges):
            raise ParameterError("need a direction for every propagator")
        for e, (s, d) in enumerate(self.directions):
            if tuple(sorted((s, d))) != g.edges[e]:
                raise ParameterError(f"direction {(s, d)} does not match edge {g.edges[e]}")

    def flip(self, e: int) -> Labelling:
        dirs = list(self.directions)
        s, d = dirs[e]
        dirs[e] = (d, s)
        return Labelling(self.vertex_order, self.edge_order, tuple(dirs))

    def swap_vertices(self, i: int, j: int) -> Labelling:
        """Exchange the labels in positions i and j."""
        vo = list(self.vertex_order)
        vo[i], vo[j] = vo[j], vo[i]
        return Labelling(tuple(vo), self.edge_order, self.directions)

    def swap_edges(self, i: int, j: int) -> Labelling:
        eo = list(self.edge_order)
        eo[i], eo[j] = eo[j], eo[i]
        return Labelling(self.vertex_order, tuple(eo), self.directions)


def reference_labelling(g: TrivalentGraph) -> Labelling:
    """Vertices in numbering order, propagators in index order, low -> high."""
    return Labelling(tuple(range(g.n_vertices)), tuple(range(len(g.edges))), tuple(g.edges))


def all_labellings(g: TrivalentGraph, edge_orders: bool = False):
    """Every vertex order and direction choice (edge orders too if asked)."""
    eorders = itertools.permutations(range(len(g.edges))) if edge_orders else [tuple(range(len(g.edges)))]
    eorders = list(eorders)
    for vo in itertools.permutations(range(g.n_vertices)):
        for flips in itertools.product((False, True), repeat=len(g.edges)):
            dirs = tuple((b, a) if f else (a, b) for (a, b), f in zip(g.edges, flips))
            for eo in eorders:
                yield Labelling(vo, eo, dirs)


def _check(g: TrivalentGraph):
    if g.n_cycle < 2:
        raise StructuralError("orientation signs need at least two knot vertices")


def _knot_edges(g: TrivalentGraph):
    c = g.n_cycle
    return [(("k", i), i, (i + 1) % c) for i in range(c)]


def vertex_edge_order(g: TrivalentGraph, v: int) -> list:
    """Edges at v in orientation order, as edge identifiers."""
    if g.is_internal(v):
        return [("p", e) for e in g.vertex_orders[v]]
    c = g.n_cycle
    return [("k", v), ("k", (v - 1) % c), ("p", g.incident(v)[0])]


# Global sign fixing the reference labelling of the crossing diagram to +1.
_ANCHOR = None


def _raw_sign(g: TrivalentGraph, lab: Labelling) -> int:
    _check(g)
    by_edge = []
    for e in lab.edge_order:
        s, d = lab.directions[e]
        by_edge += [(s, ("p", e)), (d, ("p", e))]
    for ident, s, d in _knot_edges(g):
        by_edge += [(s, ident), (d, ident)]
    by_vertex = [(v, ident) for v in lab.vertex_order for ident in vertex_edge_order(g, v)]
    return permutation_sign(by_edge, by_vertex)


def epsilon_sign(g: TrivalentGraph, lab: Labelling) -> int:
    """Sign of the labelled element in the orientation carried by ``g``."""
    global _ANCHOR
    lab.validate(g)
    if _ANCHOR is None:
        x = x_diagram()
        _ANCHOR = _raw_sign(x, reference_labelling(x))
    return _ANCHOR * _raw_sign(g, lab)


# ---------------------------------------------------------------------------
# the three definitions, for cross-checking

def sign_def1(g: TrivalentGraph, lab: Labelling) -> int:
    """Sign of the labelled element relative to the reference labelling in
    det RV (x) tensor of det RV(e): vertex permutation sign times the number of
    reversed propagators."""
    lab.validate(g)
    ref = reference_labelling(g)
    s = permutation_sign(lab.vertex_order, ref.vertex_order)
    for e, d in enumerate(lab.directions):
        if d != ref.directions[e]:
            s = -s
    return s


def sign_def2(g: TrivalentGraph, lab: Labelling) -> int:
    """Sign obtained by regrouping vertex-edge pairs by vertex."""
    return _raw_sign(g, lab)


def sign_def3(g: TrivalentGraph, lab: Labelling) -> int:
    """Sign in det RE (x) det H1 (x) det H0 using spanning-tree bases.

    Edges are taken in one fixed order (propagators by index, then knot
    edges), so the det RE factor is common to every labelling.  The labelled
    oriented edges are expressed in the basis [fundamental cycles, tree
    edges] of C1, and the labelled vertices in the basis [boundaries of tree
    edges, root] of C0.
    """
    lab.validate(g)
    _check(g)
    n = g.n_vertices
    oriented = [lab.directions[e] for e in range(len(g.edges))] + [(s, d) for _, s, d in _knot_edges(g)]
    base = [tuple(g.edges[e]) for e in range(len(g.edges))] + [(s, d) for _, s, d in _knot_edges(g)]
    m = len(base)
    # spanning tree by BFS from vertex 0 over the fixed edge list
    tree, seen, queue = [], {0}, [0]
    while queue:
        v = queue.pop(0)
        for i, (a, b) in enumerate(base):
            if v in (a, b):
                w = b if a == v else a
                if w not in seen:
                    seen.add(w)
                    tree.append(i)
                    queue.append(w)
    cotree = [i for i in range(m) if i not in tree]
    # incidence (vertex x edge) with the fixed base orientation
    D = np.zeros((n, m))
    for i, (a, b) in enumerate(base):
        D[a, i] -= 1
        D[b, i] += 1
    T = D[:, tree]
    cycles = []
    for i in cotree:
        # close edge i through the tree: solve T y = -D[:, i] (exact on the tree)
        y, *_ = np.linalg.lstsq(T, -D[:, i], rcond=None)
        z = np.zeros(m)
        z[i] = 1
        z[tree] = np.round(y)
        cycles.append(z)
    basis = np.array(cycles + [np.eye(m)[i] for i in tree]).T  # columns
    labelled = np.zeros((m, m))
    for i, (s, d) in enumerate(oriented):
        labelled[i, i] = 1 if (s, d) == base[i] else -1
    # coordinates of the labelled oriented edges in [cycles, tree]
    A = np.linalg.solve(basis, labelled)
    s1 = np.sign(np.linalg.det(A))
    root = np.zeros(n)
    root[0] = 1
    vb = np.array([T[:, j] for j in range(len(tree))] + [root]).T
    vl = np.eye(n)[:, list(lab.vertex_order)]
    s0 = np.sign(np.linalg.det(np.linalg.solve(vb, vl)))
    return int(s1 * s0)


def orientation_equivalence(g: TrivalentGraph, exhaustive: bool = False) -> bool:
    """Definitions (1), (2) and (3) change sign together.

    Checks the reference labelling and every single-step relabelling from it
    (vertex transposition, propagator flip, propagator swap), or every
    labelling when ``exhaustive``.
    """
    ref = reference_labelling(g)
    if exhaustive:
        labs = list(all_labellings(g))
    else:
        labs = [ref]
        n, m = g.n_vertices, len(g.edges)
        labs += [ref.swap_vertices(i, j) for i, j in itertools.combinations(range(n), 2)]
        labs += [ref.flip(e) for e in range(m)]
        labs += [ref.swap_edges(i, j) for i, j in itertools.combinations(range(m), 2)]
    k12 = {sign_def1(g, lab) * sign_def2(g, lab) for lab in labs}
    k13 = {sign_def1(g, lab) * sign_def3(g, lab) for lab in labs}
    return len(k12) == 1 and len(k13) == 1


def wedge_parity_oracle(g: TrivalentGraph, lab: Labelling) -> int:
    """Independent brute-force sign of the labelled element in definition (2).

    Builds the list of vertex-edge pairs edge by edge and bubble-sorts it into
    vertex-grouped order, counting swaps.
    """
    seq = []
    for e in lab.edge_order:
        s, d = lab.directions[e]
        seq += [(s, ("p", e)), (d, ("p", e))]
    for ident, s, d in _knot_edges(g):
        seq += [(s, ident), (d, ident)]
    target = [(v, ident) for v in lab.vertex_order for ident in vertex_edge_order(g, v)]
    rank = {x: i for i, x in enumerate(target)}
    keys = [rank[x] for x in seq]
    swaps = 0
    for i in range(len(keys)):
        for j in range(len(keys) - 1 - i):
            if keys[j] > keys[j + 1]:
                keys[j], keys[j + 1] = keys[j + 1], keys[j]
                swaps += 1
    return -1 if swaps % 2 else 1
