"""Gauss forms, graph integrands and Monte Carlo configuration-space integrals.

Conventions
-----------
The Gauss form of a propagator (s, d) pulls back to::

    theta_e = -Delta_{mu nu}(x_d - x_s) dx_s^mu dx_d^nu,
    Delta_{mu nu}(x) = eps_{mu nu sigma} x^sigma / (4 pi |x|^3).

A knot vertex contributes its tangent ``K'(s)`` (one form degree ``ds``); an
internal vertex contributes ``eps_{abc}`` with slots in its cyclic order.
The product of the edge forms, taken in label order, is regrouped by vertex
in label order; that permutation's sign, ``(-1)^E`` and
:func:`vassiliev.orientation.epsilon_sign` make the result independent of
the labelling.  ``GLOBAL_SIGN`` fixes the overall sign so that the
degree-2 sum comes out as the known invariant.

Sampling
--------
Knot parameters are uniform on the chamber ``s_0 < s_1 < ... < s_{c-1}``
(cyclically); the chamber has volume ``1/(c-1)!``.  Free points come from a
mixture of heavy-tailed shells, one centered at each point already placed
and one centered on the knot's bounding sphere center::

    f(x) = (1 - beta)/A sum_a rho(|x - y_a|; L) + beta rho(|x - o|; R),
    rho(d; L) = L / ((L + d)^2 4 pi d^2),

whose tails decay like ``|x|^-4`` and dominate every propagator product.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
import warnings
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .diagrams import TrivalentGraph, automorphism_count, canonical_key, enumerate_graphs, tripod, x_diagram
from .errors import EmbeddingError, NumericalError, ParameterError, UnsupportedGraphError
from .orientation import Labelling, epsilon_sign, permutation_sign, reference_labelling

log = logging.getLogger(__name__)

GLOBAL_SIGN = -1
N_STREAMS = 32
CHUNK = 1 << 15
DIAG_GUARD = 1e-9
BULK_WEIGHT = 0.1

_EPS3 = np.zeros((3, 3, 3))
for _p in itertools.permutations(range(3)):
    _EPS3[_p] = permutation_sign(list(_p), [0, 1, 2])


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    std_error: float
    n_samples: int
    seed: int | None = None
    runtime_ms: float = 0.0
    notes: tuple = ()

    def __post_init__(self):
        if not self.std_error >= 0:
            raise NumericalError(f"bad standard error {self.std_error}")

    def __sub__(self, other: IntegralEstimate) -> IntegralEstimate:
        return combine([(1, self), (-1, other)])

    def __add__(self, other: IntegralEstimate) -> IntegralEstimate:
        return combine([(1, self), (1, other)])

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        return abs(self.value - target) <= sigmas * self.std_error

    def to_dict(self) -> dict:
        out = {"value": self.value, "std_error": self.std_error, "n_samples": self.n_samples,
               "seed": self.seed, "runtime_ms": round(self.runtime_ms, 3)}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def combine(terms, seed=None) -> IntegralEstimate:
    """Linear combination of independent estimates; errors add in quadrature."""
    terms = list(terms)
    value = math.fsum(float(c) * e.value for c, e in terms)
    se = math.sqrt(math.fsum((float(c) * e.std_error) ** 2 for c, e in terms))
    notes = tuple(dict.fromkeys(n for _, e in terms for n in e.notes))
    return IntegralEstimate(value, se, sum(e.n_samples for _, e in terms), seed,
                            sum(e.runtime_ms for _, e in terms), notes)


@dataclass(frozen=True)
class Configuration:
    """Knot parameters ``s`` (..., c) and free points ``x`` (..., m, 3)."""
    s: np.ndarray
    x: np.ndarray

    @classmethod
    def make(cls, s, x=()) -> Configuration:
        s = np.asarray(s, dtype=float)
        x = np.asarray(x, dtype=float)
        if x.size == 0:
            x = np.zeros(s.shape[:-1] + (0, 3))
        return cls(s, x)


def gauss_direction(x, y):
    """(y - x) / |y - x|."""
    r = np.asarray(y, dtype=float) - np.asarray(x, dtype=float)
    n = np.linalg.norm(r, axis=-1, keepdims=True)
    if np.any(n == 0):
        raise NumericalError("coincident points have no direction", location=(x, y))
    return r / n


def propagator(x):
    """Delta_{mu nu}(x) = eps_{mu nu sigma} x^sigma / (4 pi |x|^3); batched over leading axes."""
    x = np.asarray(x, dtype=float)
    n = np.linalg.norm(x, axis=-1)
    if np.any(n == 0):
        raise NumericalError("propagator at the origin")
    return np.einsum("ijk,...k->...ij", _EPS3, x) / (4 * np.pi * n[..., None, None] ** 3)


def theta(pa, ta, pb, tb):
    """Pullback of omega by (b - a)/|b - a| on (d_sa, d_sb), two knot points."""
    r = pb - pa
    n = np.linalg.norm(r, axis=-1)
    return np.einsum("...i,...i->...", r, np.cross(-ta, tb)) / (4 * np.pi * n ** 3)


# ---------------------------------------------------------------------------
# generic integrand

@lru_cache(maxsize=None)
def _contraction_plan(g: TrivalentGraph, lab: Labelling):
    """einsum subscripts and the overall sign for (g, lab)."""
    letters = iter("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXY")
    slot = {}
    q = []
    edges = []
    for e in lab.edge_order:
        s, d = lab.directions[e]
        for v in (s, d):
            slot[(v, e)] = next(letters)
            q.append((v, e))
        edges.append((e, s, d))
    target = []
    vertex_ops = []
    for v in lab.vertex_order:
        if g.is_internal(v):
            order = g.vertex_orders[v]
            target += [(v, e) for e in order]
            vertex_ops.append(("eps", v, "".join(slot[(v, e)] for e in order)))
        else:
            (e,) = g.incident(v)
            target.append((v, e))
            vertex_ops.append(("tan", v, slot[(v, e)]))
    sign = GLOBAL_SIGN * epsilon_sign(g, lab) * (-1) ** len(edges) * permutation_sign(q, target)
    subs = ["..." + slot[(s, e)] + slot[(d, e)] for e, s, d in edges]
    subs += [("..." if kind == "tan" else "") + lets for kind, _, lets in vertex_ops]
    return sign, ",".join(subs) + "->...", tuple(edges), tuple(vertex_ops)


def graph_integrand(g: TrivalentGraph, lab: Labelling | None, c: Configuration, k):
    """Integrand of I(g) at configuration(s) c on knot k (density in ds d^3x)."""
    if g.has_multi_edge():
        return np.zeros(c.s.shape[:-1])
    lab = lab or reference_labelling(g)
    lab.validate(g)
    if c.s.shape[-1] != g.n_cycle or c.x.shape[-2] != len(g.internal_vertices):
        raise ParameterError("configuration does not match the graph")
    sign, subs, edges, vops = _contraction_plan(g, lab)
    P, T = k.eval(c.s)
    pts = np.concatenate([P, c.x], axis=-2)
    ops = []
    for e, s, d in edges:
        r = pts[..., d, :] - pts[..., s, :]
        if np.any(np.linalg.norm(r, axis=-1) == 0):
            raise NumericalError("coincident points in configuration", location=(s, d))
        ops.append(propagator(r))
    for kind, v, _ in vops:
        ops.append(T[..., v, :] if kind == "tan" else _EPS3)
    return sign * np.einsum(subs, *ops, optimize="greedy")


# specialized kernels, used as independent checks of graph_integrand

def chord_kernel(k, s):
    """theta_02 theta_13 on four ordered knot parameters (the X diagram)."""
    P, T = k.eval(s)
    return theta(P[..., 0, :], T[..., 0, :], P[..., 2, :], T[..., 2, :]) * \
        theta(P[..., 1, :], T[..., 1, :], P[..., 3, :], T[..., 3, :])


def tripod_kernel(k, s, x):
    """det(v_0, v_1, v_2), v_i = K'(s_i) x (x - K(s_i)) / (4 pi |x - K(s_i)|^3)."""
    P, T = k.eval(s)
    r = x[..., None, :] - P
    n = np.linalg.norm(r, axis=-1)
    v = np.cross(T, r) / (4 * np.pi * n[..., None] ** 3)
    return np.einsum("...i,...i->...", v[..., 0, :], np.cross(v[..., 1, :], v[..., 2, :]))


# ---------------------------------------------------------------------------
# sampling

@dataclass(frozen=True)
class Proposal:
    center: np.ndarray
    radius: float
    scale: float
    bulk: float = BULK_WEIGHT

    @classmethod
    def for_knot(cls, k, n: int = 256) -> Proposal:
        p = k.position(np.arange(n) / n)
        center = p.mean(axis=0)
        radius = float(np.max(np.linalg.norm(p - center, axis=1)))
        return cls(center, radius, 0.3 * radius)


def _shell(rng, n, L):
    u = rng.normal(size=(n, 3))
    u /= np.linalg.norm(u, axis=1)[:, None]
    v = rng.random(n)
    return u * (L * v / (1 - v))[:, None]


def _shell_density(d, L):
    with np.errstate(divide="ignore"):
        return L / ((L + d) ** 2 * 4 * np.pi * d ** 2)


def sample_free_point(rng, anchors, prop: Proposal):
    """One free point per row given anchors (n, A, 3); returns (x, density)."""
    n, A, _ = anchors.shape
    bulk = rng.random(n) < prop.bulk
    pick = rng.integers(0, A, n)
    ctr = np.where(bulk[:, None], prop.center, anchors[np.arange(n), pick])
    L = np.where(bulk, prop.radius, prop.scale)
    u = rng.normal(size=(n, 3))
    u /= np.linalg.norm(u, axis=1)[:, None]
    v = rng.random(n)
    x = ctr + u * (L * v / (1 - v))[:, None]
    d = np.linalg.norm(x[:, None, :] - anchors, axis=-1)
    dens = (1 - prop.bulk) / A * _shell_density(d, prop.scale).sum(axis=1) + \
        prop.bulk * _shell_density(np.linalg.norm(x - prop.center, axis=1), prop.radius)
    return x, dens


def sample_configuration(rng, g: TrivalentGraph, k, n: int, prop: Proposal):
    """n configurations for g and their sampling densities."""
    c, m = g.n_cycle, len(g.internal_vertices)
    s0 = rng.random(n)
    gaps = np.sort(rng.random((n, c - 1)), axis=1)
    s = np.concatenate([s0[:, None], (s0[:, None] + gaps) % 1.0], axis=1)
    dens = np.full(n, float(math.factorial(c - 1)))
    xs = []
    if m:
        anchors = k.position(s)
        for _ in range(m):
            x, d = sample_free_point(rng, anchors, prop)
            dens = dens * d
            xs.append(x)
            anchors = np.concatenate([anchors, x[:, None, :]], axis=1)
    x = np.stack(xs, axis=1) if xs else np.zeros((n, 0, 3))
    return Configuration(s, x), dens


def _min_separation(k, conf: Configuration):
    pts = np.concatenate([k.position(conf.s), conf.x], axis=-2)
    d = np.linalg.norm(pts[:, :, None, :] - pts[:, None, :, :], axis=-1)
    i = np.arange(pts.shape[1])
    d[:, i, i] = np.inf
    gap = np.abs(conf.s[:, :, None] - conf.s[:, None, :])
    gap = np.minimum(gap, 1 - gap)
    c = conf.s.shape[1]
    gap[:, i[:c], i[:c]] = np.inf
    return np.minimum(d.reshape(len(d), -1).min(axis=1), gap.reshape(len(gap), -1).min(axis=1))


def _sample_guarded(rng, g, k, n, prop):
    conf, dens = sample_configuration(rng, g, k, n, prop)
    for _ in range(100):
        bad = _min_separation(k, conf) < DIAG_GUARD
        if not bad.any():
            return conf, dens
        nb = int(bad.sum())
        c2, d2 = sample_configuration(rng, g, k, nb, prop)
        s, x = conf.s.copy(), conf.x.copy()
        s[bad], x[bad] = c2.s, c2.x
        dens = dens.copy()
        dens[bad] = d2
        conf = Configuration(s, x)
    raise NumericalError("could not draw configurations away from the diagonal")


def _stream(g, lab, k, n, ss, prop, kernel):
    """Sum and count for one substream, chunked deterministically."""
    rng = np.random.default_rng(ss)
    partial = []
    done = 0
    while done < n:
        m = min(CHUNK, n - done)
        conf, dens = _sample_guarded(rng, g, k, m, prop)
        vals = kernel(conf) / dens
        if not np.all(np.isfinite(vals)):
            i = int(np.argmin(np.isfinite(vals)))
            raise NumericalError("non-finite integrand", location={"s": conf.s[i].tolist(), "x": conf.x[i].tolist()})
        partial.append(float(np.sum(vals)))
        done += m
    return math.fsum(partial), n


def _spread(n: int, streams: int):
    base, extra = divmod(n, streams)
    return [base + (1 if i < extra else 0) for i in range(streams)]


def _batch_means(results):
    """Value and batch-means standard error from per-stream (sum, count)."""
    total = sum(c for _, c in results)
    value = math.fsum(s for s, _ in results) / total
    used = [(s / c, c) for s, c in results if c]
    if len(used) < 2:
        return value, math.inf
    B = len(used)
    var = math.fsum(c * (m - value) ** 2 for m, c in used) / (B - 1)
    return value, math.sqrt(var / total)


def mc_run(g, k, n: int, seed: int, kernel, threads: int = 1, streams: int = N_STREAMS,
           proposal: Proposal | None = None, lab=None, trace: list | None = None) -> IntegralEstimate:
    """Shared driver: split n over ``streams`` seeded substreams."""
    if seed is None:
        raise ParameterError("a seed is required")
    if n < 1:
        raise ParameterError("need at least one sample")
    if streams < 1 or threads < 1:
        raise ParameterError("streams and threads must be positive")
    t0 = time.perf_counter()
    prop = proposal or Proposal.for_knot(k)
    children = np.random.SeedSequence(seed).spawn(streams)
    sizes = _spread(n, streams)
    jobs = [(g, lab, k, m, ss, prop, kernel) for m, ss in zip(sizes, children) if m]
    if threads == 1:
        results = [_stream(*j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda j: _stream(*j), jobs))
    value, se = _batch_means(results)
    if trace is not None:
        acc_s = acc_n = 0.0
        for s, c in results:
            acc_s += s
            acc_n += c
            trace.append((int(acc_n), acc_s / acc_n))
    return IntegralEstimate(value, se, n, seed, 1000 * (time.perf_counter() - t0))


def mc_integrate(g: TrivalentGraph, k, n: int, seed: int, threads: int = 1, streams: int = N_STREAMS,
                 proposal: Proposal | None = None, lab: Labelling | None = None, trace=None) -> IntegralEstimate:
    """Monte Carlo estimate of I(g) on k: the integral of the graph form."""
    lab = lab or reference_labelling(g)
    if g.has_multi_edge():
        return IntegralEstimate(0.0, 0.0, n, seed, notes=("multi-edge graph: form vanishes",))

    def kernel(conf):
        return graph_integrand(g, lab, conf, k)

    return mc_run(g, k, n, seed, kernel, threads, streams, proposal, lab, trace)


def omega_normalization(n: int, seed: int, threads: int = 1) -> IntegralEstimate:
    """Integral of omega over S^2 by MC in spherical coordinates.

    omega(u)(a, b) = det(u, a, b) / (4 pi); with u(t, p) the standard
    chart, det(u, u_t, u_p) = sin t, integrated over [0, pi] x [0, 2 pi].
    """
    if n < 1:
        raise ParameterError("need at least one sample")
    t0 = time.perf_counter()
    children = np.random.SeedSequence(seed).spawn(N_STREAMS)

    def one(args):
        m, ss = args
        rng = np.random.default_rng(ss)
        t, p = np.pi * rng.random(m), 2 * np.pi * rng.random(m)
        st, ct, sp, cp = np.sin(t), np.cos(t), np.sin(p), np.cos(p)
        u = np.stack([st * cp, st * sp, ct], axis=1)
        ut = np.stack([ct * cp, ct * sp, -st], axis=1)
        up = np.stack([-st * sp, st * cp, np.zeros(m)], axis=1)
        form = np.einsum("ij,ij->i", u, np.cross(ut, up)) / (4 * np.pi)
        return float(np.sum(2 * np.pi ** 2 * form)), m

    jobs = [(m, ss) for m, ss in zip(_spread(n, N_STREAMS), children) if m]
    if threads == 1:
        res = [one(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            res = list(pool.map(one, jobs))
    value, se = _batch_means(res)
    return IntegralEstimate(value, se, n, seed, 1000 * (time.perf_counter() - t0))


# ---------------------------------------------------------------------------
# invariants

def linking_integral(a, b, n: int, seed: int, threads: int = 1, streams: int = N_STREAMS,
                     tol: float = 1e-6, trace=None) -> IntegralEstimate:
    """Gauss double integral over the torus of parameters."""
    from .knots import min_distance

    if seed is None:
        raise ParameterError("a seed is required")
    if n < 1:
        raise ParameterError("need at least one sample")
    if min_distance(a, b) <= tol:
        raise EmbeddingError("the two curves intersect")
    t0 = time.perf_counter()
    children = np.random.SeedSequence(seed).spawn(streams)

    def one(args):
        m, ss = args
        rng = np.random.default_rng(ss)
        parts = []
        done = 0
        while done < m:
            c = min(CHUNK, m - done)
            # stratified in s, uniform in u
            s = (np.arange(done, done + c) + rng.random(c)) / m
            u = rng.random(c)
            (pa, ta), (pb, tb) = a.eval(s), b.eval(u)
            parts.append(float(np.sum(theta(pa, ta, pb, tb))))
            done += c
        return math.fsum(parts), m

    jobs = [(m, ss) for m, ss in zip(_spread(n, streams), children) if m]
    if threads == 1:
        res = [one(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            res = list(pool.map(one, jobs))
    value, se = _batch_means(res)
    if trace is not None:
        acc_s = acc_n = 0.0
        for s, c in res:
            acc_s += s
            acc_n += c
            trace.append((int(acc_n), acc_s / acc_n))
    return IntegralEstimate(value, se, n, seed, 1000 * (time.perf_counter() - t0))


def graph_seed(seed: int, g: TrivalentGraph) -> int:
    """Seed for I(g) derived from the run seed and g's canonical form."""
    key = zlib.crc32(repr(canonical_key(g)).encode())
    return int(np.random.SeedSequence([int(seed), key]).generate_state(1)[0])


def graph_sum(terms, k, n: int, seed: int, threads: int = 1, streams: int = N_STREAMS,
              traces: dict | None = None) -> IntegralEstimate:
    """Sum of coeff * I(g) over (coeff, g) pairs, one independent run per graph."""
    if seed is None:
        raise ParameterError("a seed is required")
    t0 = time.perf_counter()
    parts = []
    for coeff, g in terms:
        tr = [] if traces is not None else None
        est = mc_integrate(g, k, n, graph_seed(seed, g), threads, streams, trace=tr)
        if traces is not None:
            traces[str(g)] = tr
        parts.append((coeff, est))
    if not parts:
        return IntegralEstimate(0.0, 0.0, 0, seed)
    out = combine(parts, seed)
    return IntegralEstimate(out.value, out.std_error, n, seed, 1000 * (time.perf_counter() - t0), out.notes)


def v2(k, n: int, seed: int, threads: int = 1, streams: int = N_STREAMS, traces=None) -> IntegralEstimate:
    """Degree-2 invariant: I(X)/4 + I(tripod)/3, no correction term."""
    return graph_sum([(Fraction(1, 4), x_diagram()), (Fraction(1, 3), tripod())], k, n, seed,
                     threads, streams, traces)


def invariant_from_weight(w, k, n: int, seed: int, threads: int = 1, streams: int = N_STREAMS,
                          max_internal: int = 3, traces=None) -> IntegralEstimate:
    """Sum of w(g) I(g) / |Aut g| over trivalent graphs of degree w.degree.

    Graphs with a repeated propagator are skipped: their form is a wedge
    of a 2-form with itself and vanishes identically.
    """
    from .weights import AnomalyCase, ExtendedWeightSystem, anomaly_case

    if seed is None:
        raise ParameterError("a seed is required")
    if w.degree > 3:
        raise ParameterError("numerical invariants are limited to degree <= 3")
    case = anomaly_case(w)
    notes = ()
    if case == AnomalyCase.OneFormCorrectionClass:
        raise UnsupportedGraphError("weight system needs a 1-form correction; not supported")
    if case == AnomalyCase.WritheCorrectionClass:
        msg = "WARN: writhe-class anomaly correction omitted (coefficient not known)"
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
        notes = (msg,)
    ext = ExtendedWeightSystem(w)
    terms = []
    for g in enumerate_graphs(w.degree, max_internal):
        if g.has_multi_edge():
            continue
        wg = ext(g)
        if wg:
            terms.append((Fraction(wg) / automorphism_count(g), g))
    out = graph_sum(terms, k, n, seed, threads, streams, traces)
    return IntegralEstimate(out.value, out.std_error, out.n_samples, seed, out.runtime_ms, notes + out.notes)


def vassiliev_finite_difference(inv, singular, height: float = 0.4):
    """Alternating sum of inv over the 2^j resolutions of a singular template.

    ``singular`` is a :class:`vassiliev.knots.PlanarTemplate`; crossings in
    state 0 are double points.  The positive resolution of each double point
    enters with +1 and the negative one with -1.  Returns a float, or an
    :class:`IntegralEstimate` when ``inv`` does.
    """
    from .knots import almost_planar

    dbl = [i for i, (_, _, st) in enumerate(singular.crossings) if st == 0]
    if len(dbl) > 3:
        raise ParameterError("at most three double points are supported")
    terms = []
    for choice in itertools.product((1, -1), repeat=len(dbl)):
        states = [st for _, _, st in singular.crossings]
        for i, ch in zip(dbl, choice):
            pos = singular.positive_state(i)
            states[i] = pos if ch == 1 else 3 - pos
        knot = almost_planar(singular.with_states(states), height)
        knot.check()
        terms.append((math.prod(choice), inv(knot)))
    if all(isinstance(v, IntegralEstimate) for _, v in terms):
        return combine(terms)
    return math.fsum(c * float(v) for c, v in terms)
