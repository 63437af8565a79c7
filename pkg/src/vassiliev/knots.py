"""Closed curves in 3-space, plane diagrams, writhe and linking numbers.

Every curve is parametrised by ``s`` in [0, 1).  Evaluators take arrays of
parameters and return arrays of shape ``s.shape + (3,)``; tangents are
derivatives with respect to ``s``.

Crossing sign: with the viewer on the ``+d`` side, a crossing is positive
when ``(t_over x t_under) . d > 0``.  With this rule the combinatorial
linking number agrees with the Gauss integral.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import EmbeddingError, GenericityError, ParameterError, StructuralError

TAU = 2.0 * math.pi
GENERIC_TOL = 1e-6
MAX_RETRIES = 20


def _stack(x, y, z):
    return np.stack(np.broadcast_arrays(x, y, z), axis=-1)


@dataclass(frozen=True)
class ParametricKnot:
    position: Callable
    tangent: Callable
    name: str = "knot"

    def __call__(self, s):
        return self.position(np.asarray(s, dtype=float))

    def eval(self, s):
        s = np.asarray(s, dtype=float)
        return self.position(s), self.tangent(s)

    def check(self, n: int = 400, sep: float = 0.02, tol: float = 1e-6) -> float:
        """Spot-check periodicity, regularity and injectivity; returns min distance."""
        s = np.arange(n) / n
        p, t = self.eval(s)
        if not np.allclose(self.position(np.array([0.0, 1.0]))[0], self.position(np.array([1.0]))[0], atol=1e-9):
            raise StructuralError(f"{self.name}: curve is not closed")
        if np.min(np.linalg.norm(t, axis=-1)) <= tol:
            raise StructuralError(f"{self.name}: tangent vanishes")
        dmin = _self_distance(s, p, sep)
        if dmin <= tol:
            raise EmbeddingError(f"{self.name}: curve meets itself (distance {dmin:.3g})")
        return dmin

    def polygon(self, n: int, jitter: float = 0.0, seed: int = 0) -> PolygonalKnot:
        p = self.position(np.arange(n) / n)
        if jitter:
            p = p + np.random.default_rng(seed).normal(scale=jitter, size=p.shape)
        return PolygonalKnot(p, name=f"{self.name}_{n}gon")


def _self_distance(s, p, sep):
    """Minimum distance between samples at circular parameter separation >= sep."""
    diff = np.abs(s[:, None] - s[None, :])
    circ = np.minimum(diff, 1 - diff)
    d = np.linalg.norm(p[:, None, :] - p[None, :, :], axis=-1)
    d[circ < sep] = np.inf
    return float(d.min())


class PolygonalKnot:
    """Closed polygon; vertex i sits at s = i / n and segments are affine in s."""

    def __init__(self, vertices, name: str = "polygon", check: bool = True):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3 or len(v) < 3:
            raise StructuralError("a polygon needs at least 3 vertices in R^3")
        self.vertices = v
        self.name = name
        if check:
            self.check()

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def _locate(self, s):
        s = np.mod(np.asarray(s, dtype=float), 1.0)
        x = s * self.n
        i = np.minimum(np.floor(x).astype(int), self.n - 1)
        return i, x - i

    def position(self, s):
        i, a = self._locate(s)
        return self.vertices[i] + a[..., None] * self.edges[i]

    def tangent(self, s):
        """Segment direction times n; at a vertex the incoming segment (left limit)."""
        x = np.mod(np.asarray(s, dtype=float), 1.0) * self.n
        i = (np.ceil(x).astype(int) - 1) % self.n
        return self.edges[i] * self.n

    def eval(self, s):
        return self.position(s), self.tangent(s)

    def __call__(self, s):
        return self.position(s)

    def check(self, tol: float = 1e-9):
        e = self.edges
        if np.min(np.linalg.norm(e, axis=1)) <= tol:
            raise StructuralError("consecutive polygon vertices coincide")
        n = self.n
        P, E = self.vertices, e
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                if _segment_distance(P[i], E[i], P[j], E[j]) <= tol:
                    raise EmbeddingError(f"segments {i} and {j} intersect")

    def to_json(self) -> dict:
        return {"type": "polyline", "vertices": self.vertices.tolist()}


def _segment_distance(p, e, q, f) -> float:
    """Distance between segments p + a e and q + b f, a, b in [0, 1]."""
    best = np.inf
    # interior critical point
    A = np.array([[e @ e, -(e @ f)], [-(e @ f), f @ f]])
    rhs = np.array([(q - p) @ e, -(q - p) @ f])
    if abs(np.linalg.det(A)) > 1e-14:
        a, b = np.linalg.solve(A, rhs)
        if 0 <= a <= 1 and 0 <= b <= 1:
            best = np.linalg.norm(p + a * e - q - b * f)
    for a in (0.0, 1.0):
        x = p + a * e
        b = np.clip((x - q) @ f / (f @ f), 0, 1)
        best = min(best, np.linalg.norm(x - q - b * f))
    for b in (0.0, 1.0):
        y = q + b * f
        a = np.clip((y - p) @ e / (e @ e), 0, 1)
        best = min(best, np.linalg.norm(p + a * e - y))
    return float(best)


# ---------------------------------------------------------------------------
# the zoo

def circle(center=(0.0, 0.0, 0.0), normal=(0.0, 0.0, 1.0), radius: float = 1.0, name: str = "circle") -> ParametricKnot:
    c = np.asarray(center, dtype=float)
    nrm = np.asarray(normal, dtype=float)
    nrm = nrm / np.linalg.norm(nrm)
    helper = np.array([1.0, 0.0, 0.0]) if abs(nrm[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = helper - (helper @ nrm) * nrm
    u = u / np.linalg.norm(u)
    v = np.cross(nrm, u)  # u x v = normal: counterclockwise seen from +normal

    def pos(s):
        th = TAU * s
        return c + radius * (np.cos(th)[..., None] * u + np.sin(th)[..., None] * v)

    def tan(s):
        th = TAU * s
        return TAU * radius * (-np.sin(th)[..., None] * u + np.cos(th)[..., None] * v)

    return ParametricKnot(pos, tan, name)


def torus_knot(p: int, q: int, R: float = 2.0, r: float = 1.0, phase: float = 0.0, name=None) -> ParametricKnot:
    """(p, q) torus curve: p turns around the z-axis, q around the core circle."""
    if math.gcd(p, q) != 1:
        raise ParameterError(f"torus({p},{q}) has {math.gcd(p, q)} components; use torus_link")

    def pos(s):
        th = TAU * s
        rho = R + r * np.cos(q * th + phase)
        return _stack(rho * np.cos(p * th), rho * np.sin(p * th), r * np.sin(q * th + phase))

    def tan(s):
        th = TAU * s
        rho = R + r * np.cos(q * th + phase)
        drho = -q * r * np.sin(q * th + phase)
        return TAU * _stack(drho * np.cos(p * th) - p * rho * np.sin(p * th),
                            drho * np.sin(p * th) + p * rho * np.cos(p * th),
                            q * r * np.cos(q * th + phase))

    return ParametricKnot(pos, tan, name or f"torus({p},{q})")


def figure8() -> ParametricKnot:
    """((2 + cos 2t) cos 3t, (2 + cos 2t) sin 3t, sin 4t)."""

    def pos(s):
        th = TAU * s
        rho = 2 + np.cos(2 * th)
        return _stack(rho * np.cos(3 * th), rho * np.sin(3 * th), np.sin(4 * th))

    def tan(s):
        th = TAU * s
        rho = 2 + np.cos(2 * th)
        drho = -2 * np.sin(2 * th)
        return TAU * _stack(drho * np.cos(3 * th) - 3 * rho * np.sin(3 * th),
                            drho * np.sin(3 * th) + 3 * rho * np.cos(3 * th),
                            4 * np.cos(4 * th))

    return ParametricKnot(pos, tan, "figure8")


def torus_link(p: int, q: int, R: float = 2.0, r: float = 1.0) -> list[ParametricKnot]:
    """Components of the (p, q) torus link; each winds p/g and q/g times."""
    g = math.gcd(p, q)
    if g < 2:
        raise ParameterError("torus_link needs gcd(p, q) >= 2")
    if g > 2:
        raise ParameterError("links with more than two components are not supported")
    pp, qq = p // g, q // g
    comps = []
    for j in range(g):
        # component j is the (pp, qq) curve shifted around the meridian
        comps.append(_torus_component(pp, qq, R, r, TAU * j / (g * pp), f"torus_link({p},{q})[{j}]"))
    return comps


def _torus_component(p, q, R, r, shift, name):
    def pos(s):
        th = TAU * s
        ang = p * th
        phi = q * th + shift
        rho = R + r * np.cos(phi)
        return _stack(rho * np.cos(ang), rho * np.sin(ang), r * np.sin(phi))

    def tan(s):
        th = TAU * s
        ang = p * th
        phi = q * th + shift
        rho = R + r * np.cos(phi)
        drho = -q * r * np.sin(phi)
        return TAU * _stack(drho * np.cos(ang) - p * rho * np.sin(ang),
                            drho * np.sin(ang) + p * rho * np.cos(ang),
                            q * r * np.cos(phi))

    return ParametricKnot(pos, tan, name)


def hopf_link() -> list[ParametricKnot]:
    """Unit circle in the xy-plane and unit circle in the xz-plane through its center."""
    return [circle(name="hopf_a"), circle(center=(1.0, 0.0, 0.0), normal=(0.0, 1.0, 0.0), name="hopf_b")]


def standard_knot(name: str, **params) -> ParametricKnot:
    """unknot, trefoil, figure8 or torus(p,q)."""
    key = name.strip().lower().replace("-", "").replace("_", "")
    if key in ("unknot", "circle"):
        return circle(name="unknot", **params)
    if key == "trefoil":
        return torus_knot(2, 3, name="trefoil", **params)
    if key in ("figure8", "figureeight", "fig8"):
        return figure8()
    if key.startswith("torus"):
        inner = key[len("torus"):].strip("()")
        if inner:
            p, q = (int(x) for x in inner.split(","))
        else:
            p, q = int(params.pop("p")), int(params.pop("q"))
        return torus_knot(p, q, **params)
    raise ParameterError(f"unknown knot {name!r}")


def perturb(k: ParametricKnot, amplitude: float, seed: int, modes: int = 3) -> ParametricKnot:
    """k plus a smooth Fourier perturbation with sup norm at most ``amplitude``.

    The perturbation is accepted only if it stays below half the curve's
    self-distance and below half its speed, so the straight-line homotopy
    is through embeddings.
    """
    if amplitude == 0:
        return k
    if amplitude < 0:
        raise ParameterError("amplitude must be nonnegative")
    rng = np.random.default_rng(seed)
    coef = rng.normal(size=(modes, 2, 3))
    norm = sum(np.abs(coef[j]).sum(axis=0).max() for j in range(modes))
    coef *= amplitude / norm
    freqs = np.arange(1, modes + 1)

    def delta(s):
        th = TAU * np.asarray(s)[..., None] * freqs
        return np.einsum("...j,jk->...k", np.cos(th), coef[:, 0]) + np.einsum("...j,jk->...k", np.sin(th), coef[:, 1])

    def ddelta(s):
        th = TAU * np.asarray(s)[..., None] * freqs
        return TAU * (np.einsum("...j,jk->...k", -freqs * np.sin(th), coef[:, 0])
                      + np.einsum("...j,jk->...k", freqs * np.cos(th), coef[:, 1]))

    grid = np.arange(512) / 512
    p, t = k.eval(grid)
    dmin = _self_distance(grid, p, 0.05)
    if np.max(np.linalg.norm(delta(grid), axis=-1)) >= 0.5 * dmin or \
            np.any(np.linalg.norm(ddelta(grid), axis=-1) >= 0.5 * np.linalg.norm(t, axis=-1)):
        raise EmbeddingError(f"perturbation of amplitude {amplitude} may change the knot type")
    out = ParametricKnot(lambda s: k.position(s) + delta(s), lambda s: k.tangent(s) + ddelta(s),
                         f"{k.name}+perturb({amplitude},{seed})")
    out.check()
    return out


def reparametrize(k: ParametricKnot, strength: float = 0.1, shift: float = 0.0) -> ParametricKnot:
    """Same curve traversed with s -> s + shift + strength sin(2 pi s) / (2 pi)."""
    if not 0 <= strength < 1:
        raise ParameterError("strength must lie in [0, 1)")

    def f(s):
        return s + shift + strength * np.sin(TAU * s) / TAU

    def df(s):
        return 1 + strength * np.cos(TAU * s)

    return ParametricKnot(lambda s: k.position(np.mod(f(s), 1.0)),
                          lambda s: k.tangent(np.mod(f(s), 1.0)) * df(np.asarray(s))[..., None],
                          f"{k.name}~reparam({strength},{shift})")


def rotated(k: ParametricKnot, R) -> ParametricKnot:
    R = np.asarray(R, dtype=float)
    return ParametricKnot(lambda s: k.position(s) @ R.T, lambda s: k.tangent(s) @ R.T, f"{k.name}~rot")


# ---------------------------------------------------------------------------
# plane diagrams

@dataclass(frozen=True)
class Crossing:
    s_under: float
    s_over: float
    sign: int
    under: int = 0  # component indices (links)
    over: int = 0


@dataclass(frozen=True)
class PlaneDiagram:
    direction: tuple
    crossings: tuple = ()

    @property
    def signs(self) -> list[int]:
        return [c.sign for c in self.crossings]


def writhe(d: PlaneDiagram) -> int:
    return int(sum(c.sign for c in d.crossings))


def _plane_basis(d):
    d = np.asarray(d, dtype=float)
    d = d / np.linalg.norm(d)
    helper = np.array([1.0, 0.0, 0.0]) if abs(d[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = np.cross(d, helper)
    u /= np.linalg.norm(u)
    v = np.cross(d, u)
    return d, u, v


def _is_polygon(k) -> bool:
    return isinstance(k, PolygonalKnot)


def _samples(k, n):
    if _is_polygon(k):
        return np.arange(k.n) / k.n, k.vertices.copy()
    s = np.arange(n) / n
    return s, k.position(s)


def _segment_hits(A, B, same: bool):
    """2D segment intersections between closed polylines A and B.

    Returns arrays (i, j, a, b) with A[i] + a (A[i+1]-A[i]) = B[j] + b (...).
    """
    EA = np.roll(A, -1, 0) - A
    EB = np.roll(B, -1, 0) - B
    out = []
    n = len(A)
    step = max(1, 4_000_000 // max(len(B), 1))
    for i0 in range(0, n, step):
        ia = np.arange(i0, min(n, i0 + step))
        P, E = A[ia, None, :], EA[ia, None, :]
        Q, F = B[None, :, :], EB[None, :, :]
        den = E[..., 0] * F[..., 1] - E[..., 1] * F[..., 0]
        w = Q - P
        with np.errstate(divide="ignore", invalid="ignore"):
            a = (w[..., 0] * F[..., 1] - w[..., 1] * F[..., 0]) / den
            b = (w[..., 0] * E[..., 1] - w[..., 1] * E[..., 0]) / den
        ok = (a >= 0) & (a < 1) & (b >= 0) & (b < 1) & (den != 0)
        ii, jj = np.nonzero(ok)
        for x, y in zip(ii, jj):
            i, j = ia[x], y
            if same:
                if j <= i or (j - i) % n in (1, n - 1) or j == i:
                    continue
            out.append((i, j, a[x, y], b[x, y]))
    return out


def _refine(ka, kb, s, t, u, v, iters: int = 30):
    """Newton solve of proj(ka(s)) = proj(kb(t)) in the (u, v) plane."""
    for _ in range(iters):
        (pa, ta), (pb, tb) = ka.eval(np.array([s])), kb.eval(np.array([t]))
        r = pa[0] - pb[0]
        F = np.array([r @ u, r @ v])
        J = np.array([[ta[0] @ u, -(tb[0] @ u)], [ta[0] @ v, -(tb[0] @ v)]])
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            raise GenericityError("singular Jacobian while refining a crossing") from None
        s, t = (s - step[0]) % 1.0, (t - step[1]) % 1.0
        if np.max(np.abs(step)) < 1e-14:
            break
    return s, t


def _crossings_once(comps, d, n, tol):
    d, u, v = _plane_basis(d)
    samples = [_samples(k, n) for k in comps]
    proj = [np.stack([p @ u, p @ v], axis=1) for _, p in samples]
    found = []
    for ia, ka in enumerate(comps):
        for ib in range(ia, len(comps)):
            kb = comps[ib]
            sa, sb = samples[ia][0], samples[ib][0]
            na, nb = len(sa), len(sb)
            for i, j, a, b in _segment_hits(proj[ia], proj[ib], same=(ia == ib)):
                s, t = (i + a) / na, (j + b) / nb
                if not (_is_polygon(ka) and _is_polygon(kb)):
                    s, t = _refine(ka, kb, s, t, u, v)
                (pa, ta), (pb, tb) = ka.eval(np.array([s])), kb.eval(np.array([t]))
                pa, ta, pb, tb = pa[0], ta[0], pb[0], tb[0]
                if np.linalg.norm([(pa - pb) @ u, (pa - pb) @ v]) > 1e-6 * (1 + np.linalg.norm(pa)):
                    raise GenericityError("crossing refinement did not converge")
                ha, hb = pa @ d, pb @ d
                ta2, tb2 = np.array([ta @ u, ta @ v]), np.array([tb @ u, tb @ v])
                sin = abs(ta2[0] * tb2[1] - ta2[1] * tb2[0]) / (np.linalg.norm(ta2) * np.linalg.norm(tb2) + 1e-300)
                if abs(ha - hb) < tol:
                    raise EmbeddingError("strands meet in space at a crossing", location=(ia, s, ib, t))
                if sin < tol:
                    raise GenericityError("projection tangency")
                if ha > hb:
                    over, under = (ia, s, ta), (ib, t, tb)
                else:
                    over, under = (ib, t, tb), (ia, s, ta)
                sign = 1 if np.cross(over[2], under[2]) @ d > 0 else -1
                found.append(Crossing(under[1], over[1], sign, under[0], over[0]))
    # distinct crossings, no coincident parameters
    keys = sorted(found, key=lambda c: (c.under, c.s_under))
    for c1, c2 in zip(keys, keys[1:]):
        if c1.under == c2.under and abs(c1.s_under - c2.s_under) < tol:
            if abs(c1.s_over - c2.s_over) < tol and c1.over == c2.over:
                raise GenericityError("duplicate crossing (projection through a sample point)")
    params = [(c.under, c.s_under) for c in found] + [(c.over, c.s_over) for c in found]
    params.sort()
    for (c1, x1), (c2, x2) in zip(params, params[1:]):
        if c1 == c2 and abs(x1 - x2) < tol:
            raise GenericityError("two crossings share a parameter")
    return tuple(sorted(found, key=lambda c: (c.over, c.s_over)))


def _extract(comps, direction, n=2048, tol=GENERIC_TOL, seed=0, max_retries=MAX_RETRIES):
    rng = np.random.default_rng(seed)
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    last = None
    for _ in range(max_retries + 1):
        try:
            return PlaneDiagram(tuple(d), _crossings_once(comps, d, n, tol))
        except EmbeddingError:
            raise
        except GenericityError as err:
            last = err
            d = d + 1e-3 * rng.normal(size=3)
            d = d / np.linalg.norm(d)
    raise GenericityError(f"no generic direction after {max_retries} retries: {last}")


def extract_crossings(k, direction=(0.0, 0.0, 1.0), n: int = 2048, tol: float = GENERIC_TOL, seed: int = 0) -> PlaneDiagram:
    """Crossings of the projection along ``direction`` (viewer on the + side)."""
    return _extract([k], direction, n, tol, seed)


def combinatorial_linking(a, b, direction=(0.0, 0.0, 1.0), n: int = 2048, seed: int = 0) -> int:
    """Signed count of a-over-b crossings, checked against b-over-a."""
    diag = _extract([a, b], direction, n, GENERIC_TOL, seed)
    ab = sum(c.sign for c in diag.crossings if c.over == 0 and c.under == 1)
    ba = sum(c.sign for c in diag.crossings if c.over == 1 and c.under == 0)
    if ab != ba:
        raise GenericityError(f"a-over-b count {ab} differs from b-over-a count {ba}")
    return int(ab)


def min_distance(a, b, n: int = 1024) -> float:
    """Minimum distance between two curves: grid search, then local refinement."""
    from scipy.optimize import minimize

    s = np.arange(n) / n
    pa, pb = a.position(s), b.position(s)
    best = np.inf
    arg = (0.0, 0.0)
    for i0 in range(0, n, 256):
        d = np.linalg.norm(pa[i0:i0 + 256, None, :] - pb[None, :, :], axis=-1)
        k = np.unravel_index(np.argmin(d), d.shape)
        if d[k] < best:
            best, arg = float(d[k]), ((i0 + k[0]) / n, k[1] / n)

    def f(x):
        return float(np.linalg.norm(a.position(np.array([x[0] % 1]))[0] - b.position(np.array([x[1] % 1]))[0]))

    res = minimize(f, np.array(arg), method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-14})
    return min(best, float(res.fun))


# ---------------------------------------------------------------------------
# almost planar curves

@dataclass(frozen=True)
class PlanarTemplate:
    """A planar closed curve in the xy-plane and a state at each crossing.

    ``crossings`` holds ``(s1, s2, state)`` with the two parameters meeting
    in the plane; state 1 puts s1 on top, 2 puts s2 on top and 0 leaves a
    double point.
    """
    curve: ParametricKnot
    crossings: tuple
    name: str = "template"

    def with_states(self, states) -> PlanarTemplate:
        cr = tuple((a, b, int(st)) for (a, b, _), st in zip(self.crossings, states))
        return PlanarTemplate(self.curve, cr, self.name)

    def positive_state(self, i: int) -> int:
        """State (1 or 2) that makes crossing i positive."""
        a, b, _ = self.crossings[i]
        ta, tb = self.curve.tangent(np.array([a]))[0], self.curve.tangent(np.array([b]))[0]
        return 1 if np.cross(ta, tb)[2] > 0 else 2


def template_from_knot(k: ParametricKnot, name: str | None = None) -> PlanarTemplate:
    """Project k to the xy-plane and keep its over/under information."""
    diag = extract_crossings(k, (0.0, 0.0, 1.0))
    if tuple(diag.direction) != (0.0, 0.0, 1.0):
        raise GenericityError("the xy projection of this curve is not generic")
    flat = ParametricKnot(lambda s: k.position(s) * np.array([1.0, 1.0, 0.0]),
                          lambda s: k.tangent(s) * np.array([1.0, 1.0, 0.0]), f"{k.name}_flat")
    cr = tuple(sorted((float(c.s_over), float(c.s_under), 1) for c in diag.crossings))
    return PlanarTemplate(flat, cr, name or k.name)


def _bump(x, w):
    y = np.where(np.abs(x) < w, np.cos(np.pi * x / (2 * w)) ** 2, 0.0)
    dy = np.where(np.abs(x) < w, -np.pi / (2 * w) * np.sin(np.pi * x / w), 0.0)
    return y, dy


def almost_planar(t: PlanarTemplate, height: float = 0.4, width: float | None = None) -> ParametricKnot:
    """The template's curve lifted by +-height near each crossing."""
    planar = t.curve
    for a, b, _ in t.crossings:
        pa, pb = planar.position(np.array([a, b]))
        if np.linalg.norm(pa - pb) > 1e-6 or abs(pa[2]) > 1e-9:
            raise StructuralError(f"template crossing ({a}, {b}) is not a planar double point")
    params = sorted(x for a, b, _ in t.crossings for x in (a, b))
    if width is None:
        gaps = [(y - x) for x, y in zip(params, params[1:] + [params[0] + 1])] if params else [1.0]
        width = 0.45 * min(gaps) if params else 0.1
    bumps = []
    for a, b, st in t.crossings:
        if st == 1:
            bumps += [(a, height), (b, -height)]
        elif st == 2:
            bumps += [(a, -height), (b, height)]
        elif st != 0:
            raise StructuralError(f"bad crossing state {st}")

    def z(s):
        s = np.asarray(s, dtype=float)
        out, dout = np.zeros_like(s), np.zeros_like(s)
        for c, h in bumps:
            x = (s - c + 0.5) % 1.0 - 0.5
            y, dy = _bump(x, width)
            out += h * y
            dout += h * dy
        return out, dout

    def pos(s):
        return planar.position(s) + z(s)[0][..., None] * np.array([0.0, 0.0, 1.0])

    def tan(s):
        return planar.tangent(s) + z(s)[1][..., None] * np.array([0.0, 0.0, 1.0])

    return ParametricKnot(pos, tan, f"{t.name}_almost_planar")


def standard_template(name: str) -> PlanarTemplate:
    key = name.lower().replace("-", "").replace("_", "")
    if key in ("unknot", "circle", "0crossing"):
        return PlanarTemplate(circle(), (), "unknot")
    if key == "trefoil":
        return template_from_knot(standard_knot("trefoil"), "trefoil")
    if key in ("figure8", "fig8"):
        return template_from_knot(figure8(), "figure8")
    raise ParameterError(f"no template named {name!r}")


# ---------------------------------------------------------------------------
# files

def data_dir() -> Path:
    env = os.environ.get("VASSILIEV_DATA_DIR")
    return Path(env) if env else Path(__file__).parent / "data"


def knot_from_json(obj):
    if isinstance(obj, (str, Path)) and not str(obj).lstrip().startswith("{"):
        obj = json.loads(Path(obj).read_text())
    elif isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj.get("type")
    if kind == "polyline":
        return PolygonalKnot(obj["vertices"], name=obj.get("name", "polyline"))
    if kind != "named":
        raise ParameterError(f"unknown knot file type {kind!r}")
    params = dict(obj.get("params", {}))
    pert = params.pop("perturb", None)
    name = obj["name"]
    if name == "circle":
        k = circle(**params, name=obj.get("label", "circle"))
    elif name == "torus_link_component":
        k = torus_link(int(params["p"]), int(params["q"]))[int(params.get("index", 0))]
    elif name == "polygon_of":
        base = standard_knot(params["knot"])
        k = base.polygon(int(params["n"]), float(params.get("jitter", 0.0)), int(params.get("seed", 0)))
    else:
        k = standard_knot(name, **params)
    if pert:
        k = perturb(k, float(pert["amplitude"]), int(pert["seed"]))
    return k


def load_knot(source):
    """A knot from a JSON path, a zoo file name, or a standard knot name."""
    src = str(source)
    p = Path(src)
    if p.suffix == ".json" and p.exists():
        return knot_from_json(p)
    cand = data_dir() / (src if src.endswith(".json") else src + ".json")
    if cand.exists():
        return knot_from_json(cand)
    return standard_knot(src)


# ---------------------------------------------------------------------------
# Conway oracle

def conway_c2(d: PlaneDiagram) -> int:
    """z^2 coefficient of the Conway polynomial by skein recursion.

    Walk from s = 0 and switch every crossing met first from below; the
    result is descending, hence trivial.  Each switch contributes
    sign * lk(smoothing) by the skein relation, where the smoothing at a
    crossing with parameters p < q splits the knot into the arcs (p, q)
    and (q, p).
    """
    if any(c.under != 0 or c.over != 0 for c in d.crossings):
        raise ParameterError("conway_c2 takes a single-component diagram")
    cr = [[c.s_under, c.s_over, c.sign] for c in d.crossings]
    total = 0
    for i in sorted(range(len(cr)), key=lambda j: min(cr[j][0], cr[j][1])):
        under, over, sign = cr[i]
        if over < under:
            continue
        p, q = under, over

        def inside(x):
            return p < x < q

        lk = 0
        for j, (u, o, s) in enumerate(cr):
            if j != i and inside(o) and not inside(u):
                lk += s
        total += sign * lk
        cr[i] = [over, under, -sign]
    return total
