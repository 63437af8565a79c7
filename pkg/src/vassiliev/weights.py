"""Weight systems on chord diagrams and their STU extension to trivalent graphs.

STU convention.  Let ``u`` be an internal vertex whose cyclic order, rotated
to start at its knot leg, is ``(leg, x, y)`` with the leg ending at knot
vertex ``a``.  Replace ``a`` by two consecutive knot vertices ``a1 < a2``::

    T:  a1 -- x,  a2 -- y
    U:  a1 -- y,  a2 -- x

and set ``w(S) = w(T) - w(U)``.  With this rule the tripod has value 1
under the degree-2 system that is 1 on the crossing diagram.

IHX convention.  For an internal edge ``e`` between ``u`` and ``v``::

    I:  u (e, a, b)   v (e, c, d)
    H:  u (e, a, c)   v (e, b, d)
    X:  u (e, b, c)   v (e, a, d)

and ``w(I) - w(H) + w(X) = 0``.
"""

from __future__ import annotations

import enum
import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .diagrams import (
    ChordDiagram,
    TrivalentGraph,
    assemble,
    canonical_signed,
    contract_edge,
    enumerate_chord_diagrams,
    enumerate_graphs,
    is_sillycase,
    uncontract_partners,
)
from .errors import ParameterError, StructuralError, TotalityError, UnsupportedGraphError


@dataclass(frozen=True)
class FourTermRelation:
    """Difference of two STU expansions of one tripod-with-chords graph."""
    graph: TrivalentGraph
    legs: tuple
    terms: tuple  # (ChordDiagram, coefficient) pairs, merged

    def evaluate(self, values) -> Fraction:
        return sum((Fraction(c) * values[d] for d, c in self.terms), Fraction(0))


class WeightSystem:
    """Rational values on every canonical chord diagram of one degree."""

    def __init__(self, degree: int, values, verify: bool = True):
        self.degree = int(degree)
        vals = {}
        for d, v in dict(values).items():
            if isinstance(d, str):
                d = ChordDiagram.parse(d)
            if d.degree != self.degree:
                raise ParameterError(f"diagram {d} has degree {d.degree}, expected {self.degree}")
            vals[d.canonical()] = Fraction(v)
        missing = [d for d in _diagrams(self.degree) if d not in vals]
        if missing:
            raise TotalityError(f"no value for {', '.join(map(str, missing))}")
        self.values = vals
        self.verified = False
        if verify:
            bad = check_4T(self)
            if bad:
                raise StructuralError(f"{len(bad)} 4T relations fail")
            self.verified = True

    def __call__(self, d: ChordDiagram) -> Fraction:
        try:
            return self.values[d.canonical()]
        except KeyError:
            raise TotalityError(f"no value for {d}") from None

    def __eq__(self, other):
        return isinstance(other, WeightSystem) and self.degree == other.degree and self.values == other.values

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.values.items()))))

    def scaled(self, c) -> WeightSystem:
        return WeightSystem(self.degree, {d: c * v for d, v in self.values.items()}, verify=False)

    def reversed(self) -> WeightSystem:
        """The system d -> w(reverse(d))."""
        return WeightSystem(self.degree, {d: self(d.reverse()) for d in self.values}, verify=False)

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "values": [[str(d), str(v)] for d, v in sorted(self.values.items())]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj, verify: bool = True) -> WeightSystem:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["degree"], {ChordDiagram.parse(d): Fraction(v) for d, v in obj["values"]}, verify=verify)

    def __repr__(self):
        body = ", ".join(f"{d}: {v}" for d, v in sorted(self.values.items()))
        return f"WeightSystem({self.degree}, {{{body}}})"


def _diagrams(k):
    if k == 0:
        return [ChordDiagram(0, ())]
    return enumerate_chord_diagrams(k)


def zero_system(k: int) -> WeightSystem:
    return WeightSystem(k, {d: 0 for d in _diagrams(k)})


def c2_system() -> WeightSystem:
    """Degree 2: 1 on the crossing diagram, 0 on the nested one."""
    return WeightSystem(2, {ChordDiagram(2, ((0, 2), (1, 3))): 1, ChordDiagram(2, ((0, 1), (2, 3))): 0})


def deg3_system() -> WeightSystem:
    """The primitive degree-3 system.

    It vanishes on diagrams with an isolated chord, is 1 on
    ``3:[(0,2),(1,4),(3,5)]`` and 2 on the three mutually crossing chords.
    On the four representatives returned by :func:`deg3_representatives` its
    STU extension takes the values 2, -1, 1, 1.
    """
    return WeightSystem(3, {
        ChordDiagram(3, ((0, 1), (2, 3), (4, 5))): 0,
        ChordDiagram(3, ((0, 1), (2, 4), (3, 5))): 0,
        ChordDiagram(3, ((0, 1), (2, 5), (3, 4))): 0,
        ChordDiagram(3, ((0, 2), (1, 4), (3, 5))): 1,
        ChordDiagram(3, ((0, 3), (1, 4), (2, 5))): 2,
    })


def deg3_representatives() -> list[TrivalentGraph]:
    """Three crossing chords; tripod with a crossing chord; H graph; wheel."""
    return [
        TrivalentGraph(6, 0, ((0, 3), (1, 4), (2, 5))),
        TrivalentGraph(5, 1, ((0, 2), (1, 5), (3, 5), (4, 5)), ((3, 2, 1),)),
        TrivalentGraph(4, 2, ((0, 4), (1, 4), (2, 5), (3, 5), (4, 5))),
        TrivalentGraph(3, 3, ((0, 3), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5))),
    ]


# ---------------------------------------------------------------------------
# STU

def stu_step(g: TrivalentGraph, u: int, leg: int) -> tuple[TrivalentGraph, TrivalentGraph]:
    """Resolve internal vertex ``u`` along its knot leg ``leg``; returns (T, U)."""
    order = g.vertex_orders[u]
    i = order.index(leg)
    _, x, y = order[i:] + order[:i]
    a = g.other_end(leg, u)
    if g.is_internal(a):
        raise StructuralError(f"edge {leg} does not reach the knot")
    cyc = list(range(g.n_cycle))
    pos = cyc.index(a)
    new = ("a2",)
    cycle = cyc[:pos + 1] + [new] + cyc[pos + 1:]
    internal = [v for v in g.internal_vertices if v != u]
    orders = {v: o for v, o in g.vertex_orders.items() if v != u}
    out = []
    for first, second in ((x, y), (y, x)):
        edges = []
        for k, (p, q) in enumerate(g.edges):
            if k == leg:
                edges.append(None)
                continue
            if k == first:
                p, q = (a if p == u else p), (a if q == u else q)
            elif k == second:
                p, q = (new if p == u else p), (new if q == u else q)
            edges.append((p, q))
        keep = [k for k, e in enumerate(edges) if e is not None]
        remap = {k: j for j, k in enumerate(keep)}
        od = {v: tuple(remap[e] for e in o) for v, o in orders.items()}
        out.append(assemble(cycle, internal, [edges[k] for k in keep], od))
    return out[0], out[1]


def stu_candidates(g: TrivalentGraph) -> list[tuple[int, int]]:
    """(internal vertex, knot leg) pairs where an STU step can start."""
    out = []
    for u in g.internal_vertices:
        for e in g.vertex_orders[u]:
            if not g.is_internal(g.other_end(e, u)):
                out.append((u, e))
    return out


class ExtendedWeightSystem:
    """A weight system together with its cached STU extension."""

    def __init__(self, base: WeightSystem):
        self.base = base
        self.cache: dict = {}
        self._lock = threading.RLock()

    @property
    def degree(self) -> int:
        return self.base.degree

    def __call__(self, g: TrivalentGraph) -> Fraction:
        if g.degree != self.degree:
            raise ParameterError(f"graph degree {g.degree} != weight degree {self.degree}")
        rep, s = canonical_signed(g)
        if s == 0:
            return Fraction(0)
        return s * self._value(rep)

    def _value(self, rep: TrivalentGraph) -> Fraction:
        with self._lock:
            if rep in self.cache:
                return self.cache[rep]
        if rep.n_internal == 0:
            val = self.base(rep.to_chord_diagram())
        else:
            val = None
            if not is_sillycase(rep):
                for u, leg in stu_candidates(rep):
                    try:
                        val = self._expand(rep, u, leg)
                        break
                    except UnsupportedGraphError:
                        continue
            if val is None:
                raise UnsupportedGraphError("graph only reduces through the deferred one-attachment shape")
        with self._lock:
            self.cache[rep] = val
        return val

    def _expand(self, g, u, leg) -> Fraction:
        t, uu = stu_step(g, u, leg)
        return self(t) - self(uu)

    def expansions(self, g: TrivalentGraph) -> list[Fraction]:
        """Values from every starting (vertex, leg) choice that avoids unsupported shapes."""
        rep, s = canonical_signed(g)
        if s == 0:
            return [Fraction(0)]
        out = []
        for u, leg in stu_candidates(rep):
            try:
                out.append(s * self._expand(rep, u, leg))
            except UnsupportedGraphError:
                continue
        return out


def extend_STU(w: WeightSystem, g: TrivalentGraph, ext: ExtendedWeightSystem | None = None) -> Fraction:
    if g.n_internal and is_sillycase(g):
        raise UnsupportedGraphError("one-attachment graph shape is not evaluated")
    ext = ext or ExtendedWeightSystem(w)
    return ext(g)


# ---------------------------------------------------------------------------
# relations

def _merge(terms):
    acc = {}
    for d, c in terms:
        acc[d] = acc.get(d, 0) + c
    return tuple(sorted((d, c) for d, c in acc.items() if c))


def four_term_relations(k: int) -> list[FourTermRelation]:
    """All 4T relations of degree k.

    Every degree-k graph with a single internal vertex (a tripod plus k-2
    chords) gives one relation per pair of its legs: its STU expansions
    along the two legs must agree.  Each such difference is a four-term
    combination of chord diagrams, and together they span the relations
    obtained by sliding a chord endpoint past the ends of another chord.
    """
    out = []
    for g in enumerate_graphs(k, max_internal=1):
        if g.n_internal != 1:
            continue
        u = g.internal_vertices[0]
        legs = list(g.vertex_orders[u])
        exps = {}
        for leg in legs:
            t, uu = stu_step(g, u, leg)
            exps[leg] = [(t.to_chord_diagram().canonical(), 1), (uu.to_chord_diagram().canonical(), -1)]
        for i in range(3):
            for j in range(i + 1, 3):
                li, lj = legs[i], legs[j]
                terms = _merge(exps[li] + [(d, -c) for d, c in exps[lj]])
                out.append(FourTermRelation(g, (li, lj), terms))
    return out


def check_4T(w: WeightSystem) -> list[FourTermRelation]:
    """Relations that ``w`` violates (empty when ``w`` is a weight system)."""
    vals = {}
    for d in _diagrams(w.degree):
        vals[d] = w(d)
    return [r for r in four_term_relations(w.degree) if r.evaluate(vals) != 0]


@dataclass(frozen=True)
class IHXInstance:
    graph: TrivalentGraph
    edge: int
    values: tuple  # w(I), w(H), w(X)

    @property
    def residual(self) -> Fraction:
        i, h, x = self.values
        return i - h + x


@dataclass
class IHXReport:
    checked: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    skipped: int = 0


def ihx_instances(k: int):
    """(graph, internal edge, I, H, X) for every internal edge of degree-k graphs."""
    for g in enumerate_graphs(k):
        for e, (a, b) in enumerate(g.edges):
            if not (g.is_internal(a) and g.is_internal(b)) or g.edges.count((a, b)) > 1:
                continue
            cg = contract_edge(g, e)
            res = {r.role: r.graph for r in uncontract_partners(cg) if not r.swapped}
            yield g, e, res["I"], res["H"], res["X"]


def check_IHX(w, report: IHXReport | None = None) -> list[IHXInstance]:
    """IHX instances violated by the STU extension of ``w``.

    Instances touching a graph the extension does not evaluate are counted
    in ``report.skipped``.
    """
    ext = w if isinstance(w, ExtendedWeightSystem) else ExtendedWeightSystem(w)
    report = report if report is not None else IHXReport()
    for g, e, gi, gh, gx in ihx_instances(ext.degree):
        try:
            vals = (ext(gi), ext(gh), ext(gx))
        except UnsupportedGraphError:
            report.skipped += 1
            continue
        inst = IHXInstance(g, e, vals)
        report.checked.append(inst)
        if inst.residual != 0:
            report.violations.append(inst)
    return report.violations


# ---------------------------------------------------------------------------
# parity and anomaly classes

class Parity(enum.IntEnum):
    ODD = -1
    EVEN = 1


MIXED = "mixed"


def parity(w: WeightSystem):
    """(R^3 parity, S^1 parity); the second is MIXED when neither holds."""
    r3 = Parity.EVEN if w.degree % 2 == 0 else Parity.ODD
    even = all(w(d.reverse()) == w(d) for d in w.values)
    odd = all(w(d.reverse()) == -w(d) for d in w.values)
    if even:
        return r3, Parity.EVEN
    if odd:
        return r3, Parity.ODD
    return r3, MIXED


def split_by_reversal(w: WeightSystem) -> tuple[WeightSystem, WeightSystem]:
    """Even and odd parts under reversal of the circle."""
    r = w.reversed()
    even = WeightSystem(w.degree, {d: (w(d) + r(d)) / 2 for d in w.values}, verify=False)
    odd = WeightSystem(w.degree, {d: (w(d) - r(d)) / 2 for d in w.values}, verify=False)
    return even, odd


class AnomalyCase(enum.Enum):
    Vanishes = "Vanishes"
    WritheCorrectionClass = "WritheCorrectionClass"
    OneFormCorrectionClass = "OneFormCorrectionClass"


def anomaly_case_from_parity(r3, s1) -> AnomalyCase:
    if s1 == MIXED:
        raise ParameterError("mixed parity: split the system with split_by_reversal first")
    if r3 == s1:
        return AnomalyCase.Vanishes
    if r3 == Parity.ODD:
        return AnomalyCase.WritheCorrectionClass
    return AnomalyCase.OneFormCorrectionClass


def anomaly_case(w: WeightSystem) -> AnomalyCase:
    return anomaly_case_from_parity(*parity(w))


def chord_evaluation(g: TrivalentGraph, d: ChordDiagram) -> int:
    """Number of rotations carrying the matching of ``g`` onto ``d``."""
    if g.n_internal:
        raise ParameterError("graph must be a chord diagram")
    if g.degree != d.degree:
        raise ParameterError("degree mismatch")
    gd = g.to_chord_diagram()
    target = set(d.chords)
    return sum(set(gd.rotate(r).chords) == target for r in range(max(gd.n_points, 1)))


def check_STU_order(w, max_internal: int = 4) -> tuple[int, list]:
    """Graphs whose STU expansions disagree between starting choices.

    Returns (number of graphs checked, offending graphs).  Graphs with a
    repeated propagator or the one-attachment shape are not checked.
    """
    ext = w if isinstance(w, ExtendedWeightSystem) else ExtendedWeightSystem(w)
    checked, bad = 0, []
    for g in enumerate_graphs(ext.degree, max_internal):
        if g.n_internal == 0 or g.has_multi_edge() or is_sillycase(g):
            continue
        vals = set(ext.expansions(g))
        checked += 1
        if len(vals) > 1:
            bad.append(g)
    return checked, bad
