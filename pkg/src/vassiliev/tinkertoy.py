"""Signed counts of tinkertoy diagrams on polygonal knots.

A tinkertoy diagram is a preimage of a generic point under the direction
maps of a graph: rods joining knot points (and a free node) that point
along prescribed directions.  On a polygon every constraint is linear, so
each segment pair or triple is one small linear solve.

For the degree-2 invariant, with three generic directions ``d_1, d_2, d_3``::

    v2 = S / 24 + T / 48

``S`` sums sign products over interleaved pairs of chords parallel to two
different directions; ``T`` counts tripods, one leg per direction.  The
denominators are the number of direction choices averaged over (three
pairs, two orders, four sign patterns; three orderings times eight sign
patterns); the 1/|Aut| prefactors cancel against cyclic relabellings.
``T`` includes a correction from the corners of the polygon, where the
three feet sit on the two segments meeting at a vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .diagrams import tripod
from .errors import GenericityError, ParameterError
from .integrate import Configuration, graph_integrand
from .knots import PolygonalKnot

TOL = 1e-9
ANGLE_TOL = 1e-6
MAX_REDRAWS = 20


@dataclass(frozen=True)
class DirectionSet:
    vectors: tuple

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3:
            raise ParameterError("directions must be 3-vectors")
        n = np.linalg.norm(v, axis=1)
        if np.any(n == 0):
            raise ParameterError("zero direction")
        # already-unit rows are kept as is so JSON round trips are exact
        v = np.where(np.abs(n - 1)[:, None] > 1e-12, v / n[:, None], v)
        for a, b in itertools.combinations(range(len(v)), 2):
            if np.linalg.norm(np.cross(v[a], v[b])) < ANGLE_TOL:
                raise GenericityError("two directions are parallel")
        object.__setattr__(self, "vectors", tuple(tuple(float(c) for c in row) for row in v))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vectors)

    @classmethod
    def random(cls, rng, n: int = 3) -> DirectionSet:
        return cls(tuple(map(tuple, rng.normal(size=(n, 3)))))

    def rotated(self, R) -> DirectionSet:
        return DirectionSet(tuple(map(tuple, self.array @ np.asarray(R).T)))

    def to_json(self) -> dict:
        return {"directions": [list(v) for v in self.vectors]}

    @classmethod
    def from_json(cls, obj) -> DirectionSet:
        return cls(tuple(map(tuple, obj["directions"])))


@dataclass(frozen=True)
class TinkertoySolution:
    params: tuple
    point: tuple | None
    assignment: tuple
    sign: int

    def to_json(self) -> dict:
        return {"params": list(self.params), "point": None if self.point is None else list(self.point),
                "assignment": list(self.assignment), "sign": self.sign}


def _check_inside(vals):
    """Reject solutions within TOL of a segment end."""
    near = (np.abs(vals) < TOL) | (np.abs(vals - 1) < TOL)
    if near.any():
        raise GenericityError("a rod ends within tolerance of a polygon vertex")


def find_chords(k: PolygonalKnot, d) -> list[TinkertoySolution]:
    """Pairs s1 < s2 with K(s2) - K(s1) parallel to +-d."""
    d = np.asarray(d, dtype=float)
    d = d / np.linalg.norm(d)
    P, E, n = k.vertices, k.edges, k.n
    if np.min(np.linalg.norm(np.cross(E, d), axis=1) / np.linalg.norm(E, axis=1)) < ANGLE_TOL:
        raise GenericityError("a segment is parallel to the direction")
    i, j = np.triu_indices(n, 1)
    # adjacent segments only meet in the zero-length chord at their common vertex
    keep = (j - i != 1) & ~((i == 0) & (j == n - 1))
    i, j = i[keep], j[keep]
    M = np.stack([E[i], -E[j], np.broadcast_to(d, E[i].shape)], axis=2)
    det = np.linalg.det(M)
    scale = np.linalg.norm(E[i], axis=1) * np.linalg.norm(E[j], axis=1)
    ok = np.abs(det) > ANGLE_TOL * scale
    sol = np.zeros((len(i), 3))
    sol[ok] = np.linalg.solve(M[ok], (P[j] - P[i])[ok][..., None])[..., 0]
    a, b = sol[:, 0], sol[:, 1]
    hit = ok & (a > -TOL) & (a < 1 + TOL) & (b > -TOL) & (b < 1 + TOL)
    _check_inside(np.concatenate([a[hit], b[hit]]))
    hit &= (a >= 0) & (a < 1) & (b >= 0) & (b < 1)
    out = []
    for x in np.nonzero(hit)[0]:
        ii, jj = i[x], j[x]
        r = P[jj] + b[x] * E[jj] - P[ii] - a[x] * E[ii]
        sg = int(np.sign(np.linalg.det(np.stack([r, -E[ii], E[jj]]))))
        out.append(TinkertoySolution(((ii + a[x]) / n, (jj + b[x]) / n), None, (), sg))
    return out


def find_tripods(k: PolygonalKnot, dirs, chunk: int = 100_000) -> list[TinkertoySolution]:
    """Tripods with feet on three distinct segments, leg m along +-dirs[sigma(m)].

    The sign is the sign of the tripod integrand at the solution, which is
    the local degree of the direction map in the graph's orientation.
    """
    D = dirs.array if isinstance(dirs, DirectionSet) else np.asarray(dirs, dtype=float)
    if len(D) != 3:
        raise ParameterError("a tripod needs three directions")
    D = D / np.linalg.norm(D, axis=1)[:, None]
    P, E, n = k.vertices, k.edges, k.n
    tri = np.array(list(itertools.combinations(range(n), 3)))
    if not len(tri):
        return []
    out = []
    g = tripod()
    for perm in itertools.permutations(range(3)):
        e = D[list(perm)]
        for c0 in range(0, len(tri), chunk):
            T = tri[c0:c0 + chunk]
            i, j, kk = T.T
            m = len(T)
            M = np.zeros((m, 6, 6))
            rhs = np.zeros((m, 6))
            M[:, 0:3, 0], M[:, 0:3, 1], M[:, 0:3, 3], M[:, 0:3, 4] = E[i], -E[j], e[0], -e[1]
            M[:, 3:6, 0], M[:, 3:6, 2], M[:, 3:6, 3], M[:, 3:6, 5] = E[i], -E[kk], e[0], -e[2]
            rhs[:, 0:3], rhs[:, 3:6] = P[j] - P[i], P[kk] - P[i]
            sol = np.linalg.solve(M, rhs[..., None])[..., 0]
            abc = sol[:, :3]
            near = np.all((abc > -TOL) & (abc < 1 + TOL), axis=1)
            if not near.any():
                continue
            _check_inside(abc[near])
            ok = np.all((abc >= 0) & (abc < 1), axis=1)
            if not ok.any():
                continue
            s = (T[ok] + abc[ok]) / n
            x = P[i[ok]] + abc[ok, 0, None] * E[i[ok]] + sol[ok, 3, None] * e[0]
            # the tangent at a segment interior is the segment direction
            vals = graph_integrand(g, None, Configuration(s, x[:, None, :]), _Interior(k, T[ok]))
            for row, v in enumerate(vals):
                out.append(TinkertoySolution(tuple(s[row]), tuple(x[row]), perm, int(np.sign(v))))
    return sorted(out, key=lambda t: (t.params, t.assignment))


class _Interior:
    """Polygon evaluator pinned to known segments (avoids vertex ambiguity)."""

    def __init__(self, k: PolygonalKnot, segs):
        self.k, self.segs = k, np.asarray(segs)

    def eval(self, s):
        a = s * self.k.n - self.segs
        return self.k.vertices[self.segs] + a[..., None] * self.k.edges[self.segs], self.k.edges[self.segs] * self.k.n


def corner_count(k: PolygonalKnot, dirs) -> int:
    """Signed tripods concentrated at the polygon's corners.

    At a vertex with outgoing unit edge a and reversed incoming unit edge
    b, feet q a + b / q on the hyperbola in the corner plane meet a common
    node for a unique scale when the slopes m12 < m13 < m23 are positive.
    """
    D = dirs.array if isinstance(dirs, DirectionSet) else np.asarray(dirs, dtype=float)
    P, N = k.vertices, k.n
    total = 0
    for v in range(N):
        e_in, e_out = P[v] - P[v - 1], P[(v + 1) % N] - P[v]
        a = e_out / np.linalg.norm(e_out)
        b = -e_in / np.linalg.norm(e_in)
        nrm = np.cross(a, b)
        nrm /= np.linalg.norm(nrm)
        G = np.array([[a @ a, a @ b], [a @ b, b @ b]])
        W = [np.linalg.solve(G, [w @ a, w @ b]) for w in (e / (e @ nrm) - nrm for e in D)]
        for sg in itertools.permutations(range(3)):
            w = [W[s] for s in sg]

            def slope(p, q):
                al, be = w[p] - w[q]
                return -al / be

            m12, m13, m23 = slope(0, 1), slope(0, 2), slope(1, 2)
            if not 0 < m12 < m13 < m23:
                continue
            q = [np.sqrt(m12 * m13 / m23), np.sqrt(m12 * m23 / m13), np.sqrt(m13 * m23 / m12)]
            feet = [qi * a + b / qi for qi in q]
            tang = [qi * a - b / qi for qi in q]
            h = (q[1] - q[0]) / (w[0] - w[1])[0]
            legs = [h * D[s] / (D[s] @ nrm) for s in sg]
            node = feet[0] + legs[0]
            scale = max(np.linalg.norm(node), 1.0)
            if not all(np.linalg.norm(feet[m] + legs[m] - node) <= 1e-8 * scale for m in range(3)):
                raise GenericityError(f"corner tripod at vertex {v} failed to close")
            vv = np.stack([np.cross(tang[m], legs[m]) for m in range(3)])
            total += int(np.sign(-np.linalg.det(vv)))
    return total


@dataclass(frozen=True)
class TinkertoyReport:
    value: Fraction
    chord_counts: tuple
    interleaved: int
    tripods: int
    corners: int
    directions: DirectionSet = field(repr=False)


def _interleaved_sum(ch):
    S = 0
    for a, b in itertools.combinations(range(len(ch)), 2):
        for c1 in ch[a]:
            p, q = c1.params
            for c2 in ch[b]:
                pp, qq = c2.params
                if (p < pp < q) != (p < qq < q):
                    S += c1.sign * c2.sign
    return S


def tinkertoy_v2(k: PolygonalKnot, dirs: DirectionSet) -> TinkertoyReport:
    """S / 24 + T / 48 for one direction set, with the counts behind it."""
    ch = [find_chords(k, d) for d in dirs.array]
    S = _interleaved_sum(ch)
    T = sum(t.sign for t in find_tripods(k, dirs))
    C = corner_count(k, dirs)
    return TinkertoyReport(Fraction(S, 24) + Fraction(T + C, 48), tuple(len(c) for c in ch), S, T, C, dirs)


def signed_count_v2(k: PolygonalKnot, dirs=None, trials: int = 5, seed: int = 0) -> Fraction:
    """Exact degree-2 invariant; the same value is required over every trial."""
    if trials < 1:
        raise ParameterError("trials must be positive")
    rng = np.random.default_rng(seed)
    given = list(dirs) if dirs is not None else []
    values = []
    for t in range(trials):
        if t < len(given):
            values.append(tinkertoy_v2(k, given[t]).value)
            continue
        for _ in range(MAX_REDRAWS):
            try:
                values.append(tinkertoy_v2(k, DirectionSet.random(rng)).value)
                break
            except GenericityError:
                continue
        else:
            raise GenericityError("no generic direction set found")
    if len(set(values)) != 1:
        raise GenericityError(f"counts differ across direction sets: {sorted(set(values))}")
    return values[0]


def standard_polygon(name: str) -> PolygonalKnot:
    """Jittered polygonal versions of the zoo used for exact counts."""
    from .knots import standard_knot

    sizes = {"unknot": (7, 0.05, 0), "trefoil": (24, 0.01, 0), "figure8": (30, 0.01, 0)}
    key = name.lower().replace("-", "").replace("_", "")
    key = "figure8" if key in ("fig8", "figureeight") else key
    if key not in sizes:
        raise ParameterError(f"no standard polygon for {name!r}")
    n, jitter, seed = sizes[key]
    return standard_knot(key).polygon(n, jitter, seed)
