"""Hall density, degeneracy and Hall complexity, all as exact Fractions.

Two independent routes to the Hall density: the definitional minimum over all
vertex subsets (bitmask enumeration), and bisection on a max-flow feasibility
test followed by snapping to the unique nearby rational with small denominator.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from joblib import Parallel, delayed

from ._validation import as_fraction
from .classes import HypothesisClass
from .exceptions import CapExceededError, OIGError
from .flow import MaxFlow
from .oig import AGNOSTIC, REALIZABLE, OneInclusionGraph, build_agnostic_oig, build_oig

BRUTE_CAP = 24
_CHUNK = 1 << 18


# -- max-flow feasibility ------------------------------------------------

@dataclass
class DemandNetwork:
    flow: MaxFlow
    scale: int
    edge_arcs: list      # per edge: arc ids toward each incident vertex
    saturated: bool


def demand_network(g: OneInclusionGraph, demands) -> DemandNetwork:
    """Can each vertex receive expected in-degree ``demands[v]``?

    Capacities are scaled by the common denominator ``q`` of the demands:
    source -> edge (q), edge -> incident vertex (q), vertex -> sink
    (``q * max(0, demand)``). Feasible iff every sink arc is saturated.
    """
    demands = [max(Fraction(0), as_fraction(d)) for d in demands]
    if len(demands) != len(g.vertices):
        raise OIGError("need one demand per vertex")
    q = 1
    for d in demands:
        q = q * d.denominator // math.gcd(q, d.denominator)
    E, V = len(g.edges), len(g.vertices)
    s, t = E + V, E + V + 1
    mf = MaxFlow(E + V + 2)
    arcs = []
    for k, e in enumerate(g.edges):
        mf.add_edge(s, k, q)
        arcs.append([mf.add_edge(k, E + v, q) for v in e.incident])
    need = 0
    for v, d in enumerate(demands):
        c = int(d * q)
        need += c
        if c:
            mf.add_edge(E + v, t, c)
    value = mf.max_flow(s, t)
    return DemandNetwork(mf, q, arcs, value == need)


def positive_support(g: OneInclusionGraph, demands) -> list:
    """For each edge, the positions of incident vertices that receive positive
    weight in *some* fractional orientation meeting ``demands``.

    Works on one feasible integral flow. Shifting edge ``e`` from ``w`` to
    ``v`` is possible iff ``w`` can be refilled by a chain of shifts starting
    at a vertex with spare in-degree or at ``v`` itself, i.e. iff ``w`` is
    reachable from those vertices in the shift graph ``a -> b`` (some edge
    with flow to ``a`` is also incident to ``b``).
    """
    net = demand_network(g, demands)
    if not net.saturated:
        raise OIGError("demands are infeasible")
    q = net.scale
    flows = []
    for k, e in enumerate(g.edges):
        f = [net.flow.flow_on(a) for a in net.edge_arcs[k]]
        f[next((j for j, x in enumerate(f) if x > 0), 0)] += q - sum(f)
        flows.append(f)
    inflow = [0] * len(g.vertices)
    for e, f in zip(g.edges, flows):
        for v, x in zip(e.incident, f):
            inflow[v] += x
    need = [max(Fraction(0), as_fraction(d)) * q for d in demands]
    slack = [v for v in range(len(g.vertices)) if inflow[v] > need[v]]
    shift = [set() for _ in g.vertices]
    for e, f in zip(g.edges, flows):
        for a, x in zip(e.incident, f):
            if x > 0:
                shift[a].update(b for b in e.incident if b != a)

    def reach(starts):
        seen = set(starts)
        todo = list(starts)
        while todo:
            a = todo.pop()
            for b in shift[a]:
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return seen

    base = reach(slack)
    cache = {}
    support = []
    for e, f in zip(g.edges, flows):
        holders = [w for w, x in zip(e.incident, f) if x > 0]
        keep = []
        for j, (v, x) in enumerate(zip(e.incident, f)):
            if x > 0:
                keep.append(j)
                continue
            if v not in cache:
                cache[v] = base | reach([v])
            if any(w in cache[v] for w in holders):
                keep.append(j)
        support.append(tuple(keep))
    return support


def alpha_demands(g: OneInclusionGraph, alpha) -> list:
    alpha = as_fraction(alpha)
    return [max(Fraction(0), alpha - c) for c in g.credits]


def is_feasible(g: OneInclusionGraph, alpha) -> bool:
    """Is ``g`` fractionally alpha-orientable (credit-adjusted)?"""
    return demand_network(g, alpha_demands(g, alpha)).saturated


def hall_density_flow(g: OneInclusionGraph) -> Fraction:
    """Hall density via bisection on max-flow feasibility.

    The density is a ratio with denominator at most ``|V|``. Once the
    bracket ``[lo, hi)`` is shorter than ``1/(2|V|^2)`` it holds exactly one
    such rational, which ``limit_denominator`` recovers from the midpoint.
    """
    N = len(g.vertices)
    lo = Fraction(0)
    hi = Fraction(min(d + c for d, c in zip(g.degrees(), g.credits)) + 1)
    gap = Fraction(1, 2 * N * N)
    while hi - lo > gap:
        mid = (lo + hi) / 2
        if is_feasible(g, mid):
            lo = mid
        else:
            hi = mid
    value = ((lo + hi) / 2).limit_denominator(N)
    if not (lo <= value < hi) or not is_feasible(g, value):
        raise AssertionError("snapping failed")  # pragma: no cover
    return value


# -- brute force -------------------------------------------------------

def _bits(U, N):
    return [((U >> v) & 1).astype(bool) for v in range(N)]


def _edge_masks(g):
    masks = {}
    for e in g.edges:
        m = 0
        for v in e.incident:
            m |= 1 << v
        masks[m] = masks.get(m, 0) + 1
    return masks


def _check_cap(N, cap):
    if N > cap:
        raise CapExceededError(f"{N} vertices exceed the brute-force cap {cap}")


def hall_density_brute(g: OneInclusionGraph, return_subset: bool = False, cap: int = BRUTE_CAP):
    """``min_U (|E[U]| + sum credit(U)) / |U|`` over all nonempty ``U``.

    ``E[U]`` counts the edges touching ``U``. With ``return_subset`` the
    smallest minimizer (first in bitmask order) is returned too.
    """
    N = len(g.vertices)
    _check_cap(N, cap)
    masks = _edge_masks(g)
    credits = np.array(g.credits, dtype=np.int64)
    best_num = [None] * (N + 1)
    best_mask = [0] * (N + 1)
    for a in range(1, 1 << N, _CHUNK):
        U = np.arange(a, min(a + _CHUNK, 1 << N), dtype=np.int64)
        num = np.zeros(len(U), dtype=np.int64)
        for m, mult in masks.items():
            num += mult * ((U & m) != 0)
        size = np.zeros(len(U), dtype=np.int64)
        for v, bit in enumerate(_bits(U, N)):
            size += bit
            num += credits[v] * bit
        for k in range(1, N + 1):
            sel = np.flatnonzero(size == k)
            if not len(sel):
                continue
            j = sel[np.argmin(num[sel])]
            if best_num[k] is None or num[j] < best_num[k]:
                best_num[k], best_mask[k] = int(num[j]), int(U[j])
    best, arg = None, None
    for k in range(1, N + 1):
        if best_num[k] is None:
            continue
        r = Fraction(best_num[k], k)
        if best is None or r < best:
            best, arg = r, best_mask[k]
    if return_subset:
        return best, tuple(v for v in range(N) if arg >> v & 1)
    return best


def hall_density(g: OneInclusionGraph, method: str = "flow") -> Fraction:
    if method == "flow":
        return hall_density_flow(g)
    if method == "brute":
        return hall_density_brute(g)
    raise OIGError(f"unknown method {method!r}")


def degeneracy(g: OneInclusionGraph, method: str = "brute", cap: int = BRUTE_CAP) -> int:
    """Max over ``U`` of the minimum within-``U`` degree, counting only edges
    with at least two incident vertices in ``U``."""
    if method == "peel":
        from .solvers import kcore_orient
        return kcore_orient(g).max_outdegree
    if method != "brute":
        raise OIGError(f"unknown method {method!r}")
    N = len(g.vertices)
    _check_cap(N, cap)
    edges = [e.incident for e in g.edges if len(e.incident) > 1]
    best = 0
    for a in range(1, 1 << N, _CHUNK):
        U = np.arange(a, min(a + _CHUNK, 1 << N), dtype=np.int64)
        bits = _bits(U, N)
        deg = np.zeros((N, len(U)), dtype=np.int64)
        for inc in edges:
            inside = sum(bits[v].astype(np.int64) for v in inc) >= 2
            for v in inc:
                deg[v] += inside
        big = np.iinfo(np.int64).max
        mins = np.min(np.where(np.array(bits), deg, big), axis=0)
        best = max(best, int(mins.max()))
    return best


# -- Hall complexity -----------------------------------------------------

@dataclass(frozen=True)
class HallComplexity:
    pi: Fraction
    epsilon: Fraction
    argmax_S: tuple
    hall: Fraction
    n: int
    deterministic: bool = False

    def to_dict(self):
        return {"hall": str(self.hall), "pi": str(self.pi), "epsilon": str(self.epsilon),
                "argmax_S": list(self.argmax_S)}


def samples(num_points: int, n: int, dedup: bool = True, cap: int = 10 ** 5):
    """Size-``n`` samples, up to point multiset when ``dedup`` is set."""
    if n < 1:
        raise OIGError("n must be at least 1")
    count = math.comb(num_points + n - 1, n) if dedup else num_points ** n
    if count > cap:
        raise CapExceededError(f"{count} samples exceed the enumeration cap {cap}")
    if dedup:
        return list(itertools.combinations_with_replacement(range(num_points), n))
    return list(itertools.product(range(num_points), repeat=n))


def build_graph(hclass, S, mode: str = REALIZABLE, agnostic_cap: int = 10 ** 6):
    if mode == REALIZABLE:
        return build_oig(hclass, S)
    if mode == AGNOSTIC:
        return build_agnostic_oig(hclass, S, cap=agnostic_cap)
    raise OIGError(f"unknown mode {mode!r}")


def _hall_for(hclass, S, mode, method):
    return hall_density(build_graph(hclass, S, mode), method)


def hall_complexity(hclass: HypothesisClass, n: int, mode: str = REALIZABLE,
                    deterministic: bool = False, cap: int = 10 ** 5, dedup: bool = True,
                    method: str = "flow", n_jobs=None) -> HallComplexity:
    """``max_S n - Hall(G_S)``; with ``deterministic`` the density is floored."""
    seqs = samples(hclass.num_points, n, dedup, cap)
    if n_jobs not in (None, 1):
        halls = Parallel(n_jobs=n_jobs)(delayed(_hall_for)(hclass, S, mode, method) for S in seqs)
    else:
        cache, halls = {}, []
        for S in seqs:
            g = build_graph(hclass, S, mode)
            k = g.key()
            if k not in cache:
                cache[k] = hall_density(g, method)
            halls.append(cache[k])
    best = None
    for S, h in zip(seqs, halls):
        val = n - (math.floor(h) if deterministic else h)
        if best is None or val > best[0]:
            best = (Fraction(val), S, h)
    pi, S, h = best
    return HallComplexity(pi, pi / n, tuple(S), h, n, deterministic)
