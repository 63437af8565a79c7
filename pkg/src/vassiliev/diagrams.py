"""Chord diagrams and trivalent graphs based on an oriented circle.

Vertices of a :class:`TrivalentGraph` are integers.  The knot cycle uses
``0 .. n_cycle-1`` in cycle order, and internal vertices follow as
``n_cycle .. n_cycle+n_internal-1``.  Propagator edges are stored as
``(u, v)`` pairs with ``u < v`` and are referred to by their index in
``edges``.  ``orders[i]`` is the cyclic order of the three propagators
at internal vertex ``n_cycle + i``.

Text formats
------------
Chord diagram::

    k:[(a,b),(c,d),...]      positions 0..2k-1, each pair with a < b

Trivalent graph (JSON)::

    {"cycle": [0, 1, ...], "internal": [c, ...],
     "edges": [[u, v], ...], "orders": {"c": [e1, e2, e3], ...}}
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

from .errors import ParameterError, StructuralError

MAX_CHORD_DEGREE = 6
MAX_INTERNAL = 4


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (entries must be distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# chord diagrams

@dataclass(frozen=True, order=True)
class ChordDiagram:
    degree: int
    chords: tuple

    def __post_init__(self):
        norm = tuple(sorted(tuple(sorted(int(p) for p in c)) for c in self.chords))
        object.__setattr__(self, "chords", norm)
        pts = sorted(p for c in norm for p in c)
        if self.degree < 0 or len(norm) != self.degree or pts != list(range(2 * self.degree)):
            raise StructuralError(f"chords {norm} are not a perfect matching of 0..{2 * self.degree - 1}")

    @property
    def n_points(self) -> int:
        return 2 * self.degree

    def rotate(self, r: int) -> ChordDiagram:
        n = self.n_points
        return ChordDiagram(self.degree, tuple(((a + r) % n, (b + r) % n) for a, b in self.chords))

    def reverse(self) -> ChordDiagram:
        """Reflect the circle (reverses its orientation)."""
        n = self.n_points
        return ChordDiagram(self.degree, tuple(((-a) % n, (-b) % n) for a, b in self.chords)).canonical()

    def canonical(self) -> ChordDiagram:
        if self.degree == 0:
            return self
        return min((self.rotate(r) for r in range(self.n_points)), key=lambda d: d.chords)

    def is_canonical(self) -> bool:
        return self.canonical() == self

    def partner(self, p: int) -> int:
        for a, b in self.chords:
            if a == p:
                return b
            if b == p:
                return a
        raise ParameterError(f"point {p} not on diagram")

    def to_graph(self) -> TrivalentGraph:
        return TrivalentGraph(self.n_points, 0, self.chords)

    def __str__(self):
        return f"{self.degree}:[" + ",".join(f"({a},{b})" for a, b in self.chords) + "]"

    @classmethod
    def parse(cls, text: str) -> ChordDiagram:
        m = re.fullmatch(r"\s*(\d+)\s*:\s*\[(.*)\]\s*", text)
        if not m:
            raise ParameterError(f"cannot parse chord diagram {text!r}")
        pairs = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", m.group(2))
        return cls(int(m.group(1)), tuple((int(a), int(b)) for a, b in pairs))


def _matchings(points):
    if not points:
        yield ()
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for m in _matchings(rest):
            yield ((a, points[i]),) + m


def enumerate_chord_diagrams(k: int) -> list[ChordDiagram]:
    """One canonical diagram per rotation class of degree-k matchings, sorted."""
    if not isinstance(k, int) or not 1 <= k <= MAX_CHORD_DEGREE:
        raise ParameterError(f"degree must be in 1..{MAX_CHORD_DEGREE}, got {k!r}")
    seen = {ChordDiagram(k, m).canonical() for m in _matchings(list(range(2 * k)))}
    return sorted(seen)


# ---------------------------------------------------------------------------
# trivalent graphs

@dataclass(frozen=True)
class TrivalentGraph:
    n_cycle: int
    n_internal: int
    edges: tuple
    orders: tuple = ()

    def __post_init__(self):
        c, m = self.n_cycle, self.n_internal
        n = c + m
        edges = tuple(tuple(sorted((int(u), int(v)))) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if c < 0 or m < 0:
            raise StructuralError("negative vertex count")
        inc = [[] for _ in range(n)]
        for i, (u, v) in enumerate(edges):
            if u == v:
                raise StructuralError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise StructuralError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
            inc[u].append(i)
            inc[v].append(i)
        for v in range(n):
            want = 1 if v < c else 3
            if len(inc[v]) != want:
                raise StructuralError(f"vertex {v} meets {len(inc[v])} propagators, expected {want}")
        if (c + m) % 2:
            raise StructuralError("cycle + internal vertex count must be even")
        if len(edges) != (c + m) // 2 + m:
            raise StructuralError("propagator count must equal degree + internal count")
        if not self.orders:
            orders = tuple(tuple(inc[c + i]) for i in range(m))
        else:
            orders = tuple(tuple(int(e) for e in o) for o in self.orders)
        if len(orders) != m:
            raise StructuralError("need one cyclic order per internal vertex")
        for i, o in enumerate(orders):
            if sorted(o) != sorted(inc[c + i]):
                raise StructuralError(f"order {o} at vertex {c + i} does not list its incident edges")
        object.__setattr__(self, "orders", orders)
        if n and not _connected(c, n, edges):
            raise StructuralError("graph is not connected")

    # -- basic views
    @property
    def n_vertices(self) -> int:
        return self.n_cycle + self.n_internal

    @property
    def degree(self) -> int:
        return self.n_vertices // 2

    @property
    def cycle_vertices(self) -> list[int]:
        return list(range(self.n_cycle))

    @property
    def internal_vertices(self) -> list[int]:
        return list(range(self.n_cycle, self.n_vertices))

    @property
    def propagator_edges(self) -> tuple:
        return self.edges

    @property
    def vertex_orders(self) -> dict:
        return {self.n_cycle + i: o for i, o in enumerate(self.orders)}

    def is_internal(self, v: int) -> bool:
        return v >= self.n_cycle

    def incident(self, v: int) -> list[int]:
        if v >= self.n_cycle:
            return list(self.orders[v - self.n_cycle])
        return [i for i, e in enumerate(self.edges) if v in e]

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def has_multi_edge(self) -> bool:
        return len(set(self.edges)) != len(self.edges)

    def is_chord_diagram(self) -> bool:
        return self.n_internal == 0

    def to_chord_diagram(self) -> ChordDiagram:
        if self.n_internal:
            raise StructuralError("graph has internal vertices")
        return ChordDiagram(self.degree, self.edges)

    # -- canonical forms
    def canonical(self) -> tuple[TrivalentGraph, int]:
        """(representative, sign) with sign 0 when an automorphism reverses orientation."""
        return canonical_signed(self)

    def to_json(self) -> dict:
        return {
            "cycle": self.cycle_vertices,
            "internal": self.internal_vertices,
            "edges": [list(e) for e in self.edges],
            "orders": {str(v): list(o) for v, o in self.vertex_orders.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj) -> TrivalentGraph:
        if isinstance(obj, str):
            obj = json.loads(obj)
        cycle = list(obj["cycle"])
        internal = list(obj.get("internal", []))
        orders = {int(k): v for k, v in obj.get("orders", {}).items()}
        return assemble(cycle, internal, [tuple(e) for e in obj["edges"]], orders)

    def __str__(self):
        return self.dumps()


EMPTY_GRAPH = TrivalentGraph(0, 0, ())


def _connected(c, n, edges) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = list(edges) + [(i, (i + 1) % c) for i in range(c)]
    for u, v in pairs:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(n)}) == 1


def assemble(cycle, internal, edges, orders=None) -> TrivalentGraph:
    """Build a graph from arbitrary hashable vertex names.

    ``cycle`` lists the knot vertices in order, ``edges`` are pairs of names
    and ``orders`` maps internal names to lists of indices into ``edges``.
    """
    names = list(cycle) + list(internal)
    pos = {v: i for i, v in enumerate(names)}
    if len(pos) != len(names):
        raise StructuralError("duplicate vertex names")
    raw = [(pos[a], pos[b]) for a, b in edges]
    keyed = [tuple(sorted(e)) for e in raw]
    perm = sorted(range(len(keyed)), key=lambda i: keyed[i])
    new_index = {old: new for new, old in enumerate(perm)}
    orders = orders or {}
    new_orders = []
    for v in internal:
        if v in orders:
            new_orders.append(tuple(new_index[e] for e in orders[v]))
        else:
            inc = [i for i, e in enumerate(raw) if pos[v] in e]
            new_orders.append(tuple(sorted(new_index[e] for e in inc)))
    return TrivalentGraph(len(cycle), len(internal), tuple(keyed[i] for i in perm), tuple(new_orders))


def _relabel(g: TrivalentGraph, vmap) -> tuple[tuple, dict]:
    """Apply a vertex map; returns sorted edges and orders keyed by new vertex."""
    raw = [tuple(sorted((vmap[u], vmap[v]))) for u, v in g.edges]
    perm = sorted(range(len(raw)), key=lambda i: raw[i])
    new_index = [0] * len(raw)
    for new, old in enumerate(perm):
        new_index[old] = new
    orders = {vmap[g.n_cycle + i]: tuple(new_index[e] for e in o) for i, o in enumerate(g.orders)}
    return tuple(raw[i] for i in perm), orders


def _parities(edges, orders) -> dict:
    """Orientation parity per internal vertex, modulo swapping parallel edges.

    Parallel edges only join two internal vertices, and exchanging their
    indices flips the parity at both ends, so the parity of the lower end
    of every doubled pair is normalised to +1.
    """
    par = {v: perm_sign(o) for v, o in orders.items()}
    for i in range(1, len(edges)):
        if edges[i] == edges[i - 1]:
            u, v = edges[i]
            if par[u] < 0:
                par[u] = -par[u]
                par[v] = -par[v]
    return par


def _cycle_maps(g: TrivalentGraph):
    c, m = g.n_cycle, g.n_internal
    for r in range(max(c, 1)):
        rot = [(i - r) % c for i in range(c)]
        for p in itertools.permutations(range(m)):
            yield rot + [c + x for x in p]


@lru_cache(maxsize=None)
def canonical_signed(g: TrivalentGraph) -> tuple[TrivalentGraph, int]:
    """Canonical representative with reference orders and the relative sign.

    The representative minimises the sorted edge list over rotations of the
    cycle and permutations of internal vertices; its orders list incident
    edges in increasing index.  The sign compares ``g``'s orientation (the
    product of its vertex order parities) with that reference.  A sign of 0
    means some minimising relabelling disagrees, i.e. ``g`` has an
    orientation-reversing automorphism and vanishes.
    """
    best, signs = None, set()
    for vmap in _cycle_maps(g):
        edges, orders = _relabel(g, vmap)
        s = math.prod(perm_sign(o) for o in orders.values())
        if best is None or edges < best:
            best, signs = edges, {s}
        elif edges == best:
            signs.add(s)
    rep = TrivalentGraph(g.n_cycle, g.n_internal, best)
    return rep, (signs.pop() if len(signs) == 1 else 0)


def canonical_key(g: TrivalentGraph) -> tuple:
    """Unsigned isomorphism key (ignores vertex orders)."""
    rep, _ = canonical_signed(g)
    return (rep.n_cycle, rep.n_internal, rep.edges)


def _structure_key(edges, orders) -> tuple:
    par = _parities(edges, orders)
    return edges, tuple(sorted(par.items()))


def automorphism_count(g: TrivalentGraph) -> int:
    """Vertex maps preserving the directed cycle, propagators and cyclic orders."""
    ident = _structure_key(*_relabel(g, list(range(g.n_vertices))))
    return sum(_structure_key(*_relabel(g, vmap)) == ident for vmap in _cycle_maps(g))


def labellings(g: TrivalentGraph) -> int:
    """Number of distinct vertex labellings of ``g`` by 0..n-1 (brute force)."""
    n, c = g.n_vertices, g.n_cycle
    seen = set()
    for sigma in itertools.permutations(range(n)):
        edges, orders = _relabel(g, sigma)
        cyc = frozenset((sigma[i], sigma[(i + 1) % c]) for i in range(c))
        seen.add((cyc, _structure_key(edges, orders)))
    return len(seen)


def is_sillycase(g: TrivalentGraph) -> bool:
    """At least two internal vertices but only one of them touches the knot.

    The STU recursion cannot start from a knot-attached edge without
    passing through such a shape, so these graphs are flagged rather than
    evaluated.
    """
    if g.n_internal < 2:
        return False
    touching = {v for e in g.edges for v in e if g.is_internal(v) and min(e) < g.n_cycle}
    return len(touching) == 1


def _multigraphs(deg):
    """Loopless multigraphs with the given degree sequence, as sorted edge lists."""
    n = len(deg)
    rem = list(deg)

    def rec(last, acc):
        v = next((i for i in range(n) if rem[i]), None)
        if v is None:
            yield tuple(acc)
            return
        start = last[1] if last and last[0] == v else v + 1
        for w in range(start, n):
            if rem[w] == 0 or w == v:
                continue
            rem[v] -= 1
            rem[w] -= 1
            acc.append((v, w))
            yield from rec((v, w), acc)
            acc.pop()
            rem[v] += 1
            rem[w] += 1

    yield from rec(None, [])


def enumerate_graphs(k: int, max_internal: int = MAX_INTERNAL) -> list[TrivalentGraph]:
    """Connected trivalent graphs of degree k up to isomorphism.

    Each class is returned once, as its canonical representative with the
    reference orientation.  Graphs with ``2k`` internal vertices have no
    knot and are excluded.
    """
    if k == 0:
        return [EMPTY_GRAPH]
    if k < 0 or max_internal < 0 or max_internal > MAX_INTERNAL:
        raise ParameterError("degree must be >= 0 and max_internal in 0..4")
    out = {}
    for m in range(0, min(2 * k - 1, max_internal) + 1):
        c = 2 * k - m
        for edges in _multigraphs([1] * c + [3] * m):
            if not _connected(c, c + m, edges):
                continue
            g = TrivalentGraph(c, m, edges)
            rep, _ = canonical_signed(g)
            out.setdefault(canonical_key(rep), rep)
    return [out[key] for key in sorted(out, key=lambda t: (t[1], t[0], t[2]))]


# ---------------------------------------------------------------------------
# contraction and the six resolutions

@dataclass(frozen=True)
class ContractedGraph:
    """A graph with one merged vertex.

    ``kind`` is ``"knot"`` when the merged vertex lies on the cycle (it
    then carries the two propagators ``props`` in order) or ``"internal"``
    when it is a 4-valent internal vertex with cyclic order ``props``.
    """
    cycle: tuple
    internal: tuple
    edges: tuple
    orders: tuple  # pairs (vertex name, edge index tuple)
    merged: object
    kind: str
    props: tuple

    def order_map(self) -> dict:
        return dict(self.orders)


def _names(g: TrivalentGraph):
    return list(range(g.n_cycle)), list(range(g.n_cycle, g.n_vertices))


def _rotate_to(order, e):
    i = order.index(e)
    return tuple(order[i:]) + tuple(order[:i])


def contract_edge(g: TrivalentGraph, e) -> ContractedGraph:
    """Contract a propagator (an int index) or a cycle segment ``("cycle", i)``.

    ``("cycle", i)`` is the segment from cycle vertex ``i`` to ``i+1``.
    """
    cycle, internal = _names(g)
    edges = list(g.edges)
    orders = dict(g.vertex_orders)
    c = g.n_cycle
    if isinstance(e, tuple) and e and e[0] == "cycle":
        i = int(e[1]) % c if c else 0
        if c < 2:
            raise StructuralError("a one-vertex cycle has no segment to contract")
        j = (i + 1) % c
        pi, pj = g.incident(i)[0], g.incident(j)[0]
        if pi == pj:
            raise StructuralError("segment endpoints share a chord; contraction makes a self-loop")
        new_edges = [tuple(i if x == j else x for x in ed) for ed in edges]
        new_cycle = [v for v in cycle[i:] + cycle[:i] if v != j]
        return ContractedGraph(tuple(new_cycle), tuple(internal), tuple(new_edges),
                               tuple(sorted(orders.items())), i, "knot", (pi, pj))
    e = int(e)
    u, v = edges[e]
    if edges.count((u, v)) > 1:
        raise StructuralError("contracting one of two parallel edges leaves a self-loop")
    if u < c and v < c:
        raise StructuralError("contracting a chord between knot points leaves a self-loop")
    # remove e; other edges keep their indices shifted down past e
    def shift(idx):
        return idx - (idx > e)

    rest = [ed for k, ed in enumerate(edges) if k != e]
    if u < c:
        a, w = u, v  # a on knot, w internal
        o = _rotate_to(orders.pop(w), e)
        x, y = shift(o[1]), shift(o[2])
        rest = [tuple(a if z == w else z for z in ed) for ed in rest]
        new_orders = {k: tuple(shift(t) for t in o2) for k, o2 in orders.items()}
        return ContractedGraph(tuple(cycle), tuple(z for z in internal if z != w), tuple(rest),
                               tuple(sorted(new_orders.items())), a, "knot", (x, y))
    ou = _rotate_to(orders.pop(u), e)
    ov = _rotate_to(orders.pop(v), e)
    rest = [tuple(u if z == v else z for z in ed) for ed in rest]
    merged = tuple(shift(t) for t in ou[1:] + ov[1:])
    new_orders = {k: tuple(shift(t) for t in o2) for k, o2 in orders.items()}
    new_orders[u] = merged
    return ContractedGraph(tuple(cycle), tuple(z for z in internal if z != v), tuple(rest),
                           tuple(sorted(new_orders.items())), u, "internal", merged)


@dataclass(frozen=True)
class Resolution:
    role: str  # S, T, U or I, H, X
    graph: TrivalentGraph
    swapped: bool  # which of the two new vertices received the merged label


def uncontract_partners(cg: ContractedGraph) -> list[Resolution]:
    """The six labelled graphs contracting to ``cg``, grouped by relation role."""
    new = ("new",)
    edges = list(cg.edges)
    orders = cg.order_map()
    w = cg.merged
    out = []
    if cg.kind == "internal":
        a, b, c, d = cg.props
        triples = {"I": ((a, b), (c, d)), "H": ((a, c), (b, d)), "X": ((b, c), (a, d))}
        for role in ("I", "H", "X"):
            (p1, p2), (q1, q2) = triples[role]
            for swapped in (False, True):
                first, second = (new, w) if swapped else (w, new)
                ed = [list(x) for x in edges]
                for q in (q1, q2):
                    ed[q] = [second if z == w else z for z in ed[q]]
                for p in (p1, p2):
                    ed[p] = [first if z == w else z for z in ed[p]]
                ed.append([first, second])
                ei = len(ed) - 1
                od = {k: o for k, o in orders.items() if k != w}
                od[first] = (ei, p1, p2)
                od[second] = (ei, q1, q2)
                out.append(Resolution(role, assemble(cg.cycle, list(cg.internal) + [new],
                                                     [tuple(x) for x in ed], od), swapped))
        return out
    p, q = cg.props
    for role in ("S", "T", "U"):
        for swapped in (False, True):
            ed = [list(x) for x in edges]
            od = dict(orders)
            if role == "S":
                knot, inner = (new, w) if swapped else (w, new)
                cycle = [knot if z == w else z for z in cg.cycle]
                internal = list(cg.internal) + [inner]
                for t in (p, q):
                    ed[t] = [inner if z == w else z for z in ed[t]]
                ed.append([knot, inner])
                od[inner] = (len(ed) - 1, p, q)
            else:
                a1, a2 = (new, w) if swapped else (w, new)
                i = cg.cycle.index(w)
                cycle = list(cg.cycle[:i]) + [a1, a2] + list(cg.cycle[i + 1:])
                internal = list(cg.internal)
                first, second = (p, q) if role == "T" else (q, p)
                ed[first] = [a1 if z == w else z for z in ed[first]]
                ed[second] = [a2 if z == w else z for z in ed[second]]
            out.append(Resolution(role, assemble(cycle, internal, [tuple(x) for x in ed], od), swapped))
    return out


# ---------------------------------------------------------------------------
# sums, products, splitting

class GraphSum:
    """Finite formal sum of oriented graphs with rational coefficients."""

    def __init__(self, pairs=()):
        terms = {}
        if isinstance(pairs, dict):
            pairs = pairs.items()
        for g, coeff in pairs:
            rep, s = canonical_signed(g)
            if s == 0:
                continue
            val = terms.get(rep, Fraction(0)) + s * Fraction(coeff)
            if val:
                terms[rep] = val
            else:
                terms.pop(rep, None)
        self.terms = MappingProxyType(terms)

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, GraphSum) and dict(self.terms) == dict(other.terms)

    def __add__(self, other):
        return GraphSum(list(self.items()) + list(other.items()))

    def __repr__(self):
        body = ", ".join(f"{g.edges}: {v}" for g, v in sorted(self.items(), key=lambda t: canonical_key(t[0])))
        return f"GraphSum({{{body}}})"


def graph_product(g1: TrivalentGraph, g2: TrivalentGraph) -> GraphSum:
    """Sum over shuffles of the two knot-vertex sequences, cut at vertex 0."""
    c1, c2 = g1.n_cycle, g2.n_cycle
    A = [("a", v) for v in range(g1.n_vertices)]
    B = [("b", v) for v in range(g2.n_vertices)]
    edges = [(A[u], A[v]) for u, v in g1.edges] + [(B[u], B[v]) for u, v in g2.edges]
    off = len(g1.edges)
    orders = {A[v]: o for v, o in g1.vertex_orders.items()}
    orders.update({B[v]: tuple(off + e for e in o) for v, o in g2.vertex_orders.items()})
    internal = A[c1:] + B[c2:]
    terms = []
    for pos in itertools.combinations(range(c1 + c2), c1):
        ia, ib = iter(A[:c1]), iter(B[:c2])
        chosen = set(pos)
        cycle = [next(ia) if i in chosen else next(ib) for i in range(c1 + c2)]
        terms.append((assemble(cycle, internal, edges, orders), 1))
    return GraphSum(terms)


def propagator_components(g: TrivalentGraph) -> list[set]:
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in g.edges:
        parent[find(u)] = find(v)
    comps = {}
    for v in range(g.n_vertices):
        comps.setdefault(find(v), set()).add(v)
    return list(comps.values())


def is_split(g: TrivalentGraph) -> bool:
    """True when g is a connected sum along the knot.

    Some proper arc of the cycle must contain every propagator component
    that meets it, so cutting the cycle at the two ends of the arc splits
    the graph into two nonempty pieces joined only by knot edges.
    """
    c = g.n_cycle
    if c < 2:
        return False
    comps = [frozenset(v for v in comp if v < c) for comp in propagator_components(g)]
    for start in range(c):
        for length in range(1, c):
            arc = {(start + t) % c for t in range(length)}
            if all(comp <= arc or not (comp & arc) for comp in comps):
                return True
    return False


def from_chords(chords, degree: int | None = None) -> TrivalentGraph:
    chords = tuple(chords)
    d = ChordDiagram(degree if degree is not None else len(chords), chords)
    return d.to_graph()


def x_diagram() -> TrivalentGraph:
    """The degree-2 crossing diagram, chords 0-2 and 1-3."""
    return from_chords([(0, 2), (1, 3)])


def nested_diagram() -> TrivalentGraph:
    return from_chords([(0, 1), (2, 3)])


def tripod() -> TrivalentGraph:
    """Three knot vertices joined to one internal vertex, order (0, 1, 2)."""
    return TrivalentGraph(3, 1, ((0, 3), (1, 3), (2, 3)), ((0, 1, 2),))
