"""Strata of the compactified configuration space and face classification.

A stratum is a family of collapsing subsets, pairwise nested or disjoint;
its codimension is the size of the family.  Faces of a graph's
configuration space are codimension-one strata: a single subset ``A`` of
vertices collapses, or a set of internal vertices runs off to infinity.

Only the combinatorics is modelled.  The classification follows the usual
vanishing arguments:

* ``|A| = 2``: principal faces.
* ``Gamma_A`` (propagators with both ends in A) disconnected: the
  components translate independently, so the face is degenerate.
* no propagator leaves A: anomalous.
* a repeated propagator: the whole form is zero.
* A made of internal vertices with at most 3 edges leaving it: degenerate.
* an internal vertex with one edge leaving A and two neighbours in A
  (``x_a -> x_b + x_c - x_a``), or two edges leaving A and one neighbour
  in A (``x_a -> 2 x_b - x_a``): an orientation-reversing symmetry kills
  the face.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass

from .diagrams import TrivalentGraph
from .errors import ParameterError, StructuralError

MAX_POINTS = 7
MAX_CODIM = 4
INFINITY = "inf"


@dataclass(frozen=True)
class StratumDescriptor:
    ground: frozenset
    family: frozenset

    def __post_init__(self):
        for S in self.family:
            if len(S) < 2 or not S <= self.ground:
                raise StructuralError(f"bad collapsing subset {sorted(S)}")
        for S, T in itertools.combinations(self.family, 2):
            if not (S.isdisjoint(T) or S < T or T < S):
                raise StructuralError(f"{sorted(S)} and {sorted(T)} overlap without nesting")

    @classmethod
    def of(cls, n: int, *subsets) -> StratumDescriptor:
        return cls(frozenset(range(1, n + 1)), frozenset(frozenset(s) for s in subsets))

    @property
    def codim(self) -> int:
        return len(self.family)

    def __str__(self):
        parts = sorted("".join(map(str, sorted(S))) for S in self.family)
        return "{" + ",".join(parts) + "}"


def _collapsible(n):
    pts = range(1, n + 1)
    return [frozenset(c) for r in range(2, n + 1) for c in itertools.combinations(pts, r)]


def _compatible(S, T):
    return S.isdisjoint(T) or S < T or T < S


def _check_bounds(n, max_codim):
    if not 1 <= n <= MAX_POINTS:
        raise ParameterError(f"n must lie in 1..{MAX_POINTS}")
    if not 1 <= max_codim <= MAX_CODIM:
        raise ParameterError(f"max_codim must lie in 1..{MAX_CODIM}")


def enumerate_strata(n: int, max_codim: int, exact: bool = False) -> list[StratumDescriptor]:
    """Nested families on {1..n} with 1 <= |fS| <= max_codim (== if exact)."""
    _check_bounds(n, max_codim)
    cands = _collapsible(n)
    ground = frozenset(range(1, n + 1))
    out = []

    def grow(start, fam):
        if fam and (not exact or len(fam) == max_codim):
            out.append(StratumDescriptor(ground, frozenset(fam)))
        if len(fam) == max_codim:
            return
        for i in range(start, len(cands)):
            S = cands[i]
            if all(_compatible(S, T) for T in fam):
                grow(i + 1, fam + [S])

    grow(0, [])
    return out


def brute_force_strata(n: int, max_codim: int, exact: bool = False) -> list[StratumDescriptor]:
    """Oracle: every family of candidate subsets, filtered by the nesting test."""
    _check_bounds(n, max_codim)
    cands = _collapsible(n)
    ground = frozenset(range(1, n + 1))
    sizes = [max_codim] if exact else range(1, max_codim + 1)
    out = []
    for r in sizes:
        for fam in itertools.combinations(cands, r):
            if all(_compatible(S, T) for S, T in itertools.combinations(fam, 2)):
                out.append(StratumDescriptor(ground, frozenset(fam)))
    return out


def stratum_dimension(n: int, s: StratumDescriptor) -> int:
    if s.ground != frozenset(range(1, n + 1)):
        raise ParameterError("descriptor is not on n points")
    return 3 * n - s.codim


# ---------------------------------------------------------------------------
# faces of a graph

class FaceClass(enum.Enum):
    PrincipalKnotPair = "PrincipalKnotPair"
    PrincipalPropagatorPair = "PrincipalPropagatorPair"
    PrincipalDisconnected = "PrincipalDisconnected"
    HiddenDegenerate = "HiddenDegenerate"
    HiddenSymmetryVanishing = "HiddenSymmetryVanishing"
    Anomalous = "Anomalous"
    Infinity = "Infinity"
    Unresolved = "Unresolved"


VANISHING = {FaceClass.HiddenDegenerate, FaceClass.HiddenSymmetryVanishing, FaceClass.Anomalous, FaceClass.Infinity}


def is_contiguous_block(g: TrivalentGraph, A) -> bool:
    """Knot vertices of A form one cyclic interval of the knot (or none/all)."""
    c = g.n_cycle
    on = [v in A for v in range(c)]
    k = sum(on)
    if k in (0, c):
        return True
    starts = sum(on[i] and not on[i - 1] for i in range(c))
    return starts == 1


def _split(g: TrivalentGraph, A):
    inner = [e for e, (a, b) in enumerate(g.edges) if a in A and b in A]
    ext = [e for e, (a, b) in enumerate(g.edges) if (a in A) != (b in A)]
    return inner, ext


def _connected(A, edges) -> bool:
    A = list(A)
    adj = {v: set() for v in A}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {A[0]}, [A[0]]
    while stack:
        for w in adj[stack.pop()] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == len(A)


def face_pattern(g: TrivalentGraph, A) -> str | None:
    """'oneext' or 'twoext' when an internal vertex of A has that shape."""
    for a in sorted(A):
        if not g.is_internal(a):
            continue
        nbrs = [g.other_end(e, a) for e in g.incident(a)]
        inside = [b for b in nbrs if b in A]
        if len(inside) == 2 and inside[0] != inside[1]:
            return "oneext"
        if len(inside) == 1:
            return "twoext"
    return None


def classify_face(g: TrivalentGraph, collapsing) -> FaceClass:
    """Class of the face where the vertices in ``collapsing`` come together.

    Including :data:`INFINITY` marks a face at infinity instead.
    """
    A = set(collapsing)
    if INFINITY in A:
        A.discard(INFINITY)
        if not A or any(not g.is_internal(v) for v in A):
            raise StructuralError("only internal vertices can escape to infinity")
        return FaceClass.Infinity
    if len(A) < 2:
        raise ParameterError("a face needs at least two collapsing vertices")
    if not A <= set(range(g.n_vertices)):
        raise ParameterError("collapsing set contains unknown vertices")
    if not is_contiguous_block(g, A):
        raise StructuralError(f"knot vertices of {sorted(A)} are not a contiguous block")
    inner, ext = _split(g, A)
    if len(A) == 2:
        if inner:
            return FaceClass.PrincipalPropagatorPair
        if all(not g.is_internal(v) for v in A):
            return FaceClass.PrincipalKnotPair
        return FaceClass.PrincipalDisconnected
    if not _connected(A, [g.edges[e] for e in inner]):
        return FaceClass.HiddenDegenerate
    if not ext:
        return FaceClass.Anomalous
    if g.has_multi_edge():
        # a repeated propagator puts theta_e ^ theta_e = 0 in the form
        return FaceClass.HiddenDegenerate
    if all(g.is_internal(v) for v in A) and len(ext) <= 3:
        return FaceClass.HiddenDegenerate
    if face_pattern(g, A):
        return FaceClass.HiddenSymmetryVanishing
    return FaceClass.Unresolved


def faces(g: TrivalentGraph, min_size: int = 2):
    """Every collapsing set (contiguous on the knot) and every face at infinity."""
    n = g.n_vertices
    for r in range(min_size, n + 1):
        for A in itertools.combinations(range(n), r):
            if is_contiguous_block(g, A):
                yield frozenset(A)
    internal = g.internal_vertices
    for r in range(1, len(internal) + 1):
        for A in itertools.combinations(internal, r):
            yield frozenset(A) | {INFINITY}


def hidden_faces_all_vanish(g: TrivalentGraph) -> tuple[bool, dict]:
    """Whether every face with at least three points (or at infinity) vanishes.

    Returns the verdict and a census {class name: count}.
    """
    census = Counter(classify_face(g, A).value for A in faces(g, min_size=3))
    ok = census.get(FaceClass.Unresolved.value, 0) == 0
    return ok, dict(sorted(census.items()))
