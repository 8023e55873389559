"""Three ways to orient a one-inclusion graph.

* ``flow_orient``: exact fractional orientation read off the feasibility flow.
* ``kcore_orient``: acyclic orientation by min-degree peeling, plus the vertex
  potential (regularizer) that reproduces it through an SRM rule.
* ``maxent_solve``: the maximum-entropy distribution over orientations meeting
  expected in-degree demands. It factorizes per edge through a prior ``rho``
  over vertices, found by solving the dual.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog, minimize
from scipy.special import logsumexp, softmax

from ._validation import as_fraction
from .exceptions import CapExceededError, InfeasibleError, OIGError
from .hall import alpha_demands, demand_network, hall_density_flow, positive_support
from .oig import AGNOSTIC, OneInclusionGraph
from .orientation import FractionalOrientation, Orientation

# -- max-flow ------------------------------------------------------------


def flow_orient(g: OneInclusionGraph, alpha=None) -> FractionalOrientation:
    """Exact fractional orientation with ``in(v) >= alpha - credit(v)``.

    ``alpha`` defaults to the Hall density. Edge capacity left unused by the
    flow goes to the first incident vertex that already receives flow from
    that edge (else to the first incident vertex), so integral ``alpha`` gives
    an integral orientation.
    """
    alpha = hall_density_flow(g) if alpha is None else as_fraction(alpha)
    if alpha < 0:
        raise OIGError("alpha must be nonnegative")
    net = demand_network(g, alpha_demands(g, alpha))
    if not net.saturated:
        raise InfeasibleError(f"alpha = {alpha} exceeds the Hall density")
    q = net.scale
    rows = []
    for k, e in enumerate(g.edges):
        f = [net.flow.flow_on(a) for a in net.edge_arcs[k]]
        spare = q - sum(f)
        j = next((j for j, x in enumerate(f) if x > 0), 0)
        f[j] += spare
        rows.append(tuple(Fraction(x, q) for x in f))
    return FractionalOrientation(tuple(rows), "exact")


# -- k-core peeling ------------------------------------------------------

@dataclass(frozen=True)
class PeelingResult:
    removal_order: tuple
    layer: tuple          # per vertex, 1-based removal rank
    orientation: Orientation
    max_outdegree: int
    removal_degree: tuple  # per vertex, its degree when removed


def kcore_orient(g: OneInclusionGraph, tie_break: str = "largest") -> PeelingResult:
    """Repeatedly remove a vertex of minimum degree.

    Degree counts edges that still have at least two incident vertices
    present. Ties go to the lexicographically largest pattern by default
    (``tie_break="smallest"`` flips this). Each edge points to its
    last-removed incident vertex, so out-degree equals removal degree.
    """
    if g.mode == AGNOSTIC:
        raise OIGError("k-core peeling is only defined for realizable graphs")
    if tie_break not in ("largest", "smallest"):
        raise OIGError(f"unknown tie_break {tie_break!r}")
    N = len(g.vertices)
    alive = [len(e.incident) for e in g.edges]
    deg = [sum(1 for e in g.incidence[v] if alive[e] >= 2) for v in range(N)]
    present = set(range(N))
    order, rdeg = [], [0] * N
    while present:
        if tie_break == "largest":
            v = min(present, key=lambda u: (deg[u], tuple(-y for y in g.vertices[u])))
        else:
            v = min(present, key=lambda u: (deg[u], g.vertices[u]))
        order.append(v)
        rdeg[v] = deg[v]
        present.discard(v)
        for e in g.incidence[v]:
            alive[e] -= 1
            if alive[e] == 1:
                (w,) = [u for u in g.edges[e].incident if u in present]
                deg[w] -= 1
    layer = [0] * N
    for r, v in enumerate(order, start=1):
        layer[v] = r
    targets = tuple(max(e.incident, key=lambda u: layer[u]) for e in g.edges)
    return PeelingResult(tuple(order), tuple(layer), Orientation(targets),
                         max(rdeg) if rdeg else 0, tuple(rdeg))


@dataclass(frozen=True)
class RegularizerTable:
    """Vertex potential ``phi_v = (1 - 1/layer_v) / (2n)``, increasing along
    the removal order and below ``1/(2n)``."""

    phi: tuple
    layers: tuple
    n: int

    def psi(self, v: int) -> Fraction:
        # complexity penalty for the SRM rule; smaller for later layers
        return Fraction(1, 2 * self.n) - self.phi[v]

    def to_dict(self):
        return {"phi": [str(p) for p in self.phi], "layers": list(self.layers)}


def extract_regularizer(peeling: PeelingResult, n: int) -> RegularizerTable:
    half = Fraction(1, 2 * n)
    phi = tuple(half * (1 - Fraction(1, ell)) for ell in peeling.layer)
    return RegularizerTable(phi, tuple(peeling.layer), n)


def srm_table(g: OneInclusionGraph, reg: RegularizerTable) -> dict:
    """Prediction per hyperedge by ``argmin_v risk(v) + psi(v)`` over all
    vertices, where risk counts disagreements with the context (over n)."""
    n = g.n
    table = {}
    for e in g.edges:
        best = None
        for v, pat in enumerate(g.vertices):
            miss = sum(1 for j, y in enumerate(pat[:e.hole] + pat[e.hole + 1:]) if y != e.context[j])
            score = Fraction(miss, n) + reg.psi(v)
            if best is None or score < best[0]:
                best = (score, v)
        table[(e.hole, e.context)] = g.vertices[best[1]][e.hole]
    return table


# -- maximum entropy -----------------------------------------------------

@dataclass
class MaxEntSolution:
    lam: np.ndarray
    rho: np.ndarray
    c: np.ndarray
    kkt_residual: float
    iterations: int
    capped: bool
    converged: bool
    expected_indegree: np.ndarray
    support: tuple = field(default=(), repr=False)   # per edge: allowed incident positions
    history: list = field(default_factory=list, repr=False)

    def to_dict(self):
        return {"lambda": self.lam.tolist(), "rho": self.rho.tolist(), "c": self.c.tolist(),
                "kkt_residual": float(self.kkt_residual), "iterations": int(self.iterations),
                "capped": bool(self.capped)}


class _Dual:
    """``f(lam) = -c.lam + sum_u logsumexp(lam[incident(u)])``, minimized over
    ``0 <= lam <= cap``; per-edge shares are softmax of ``lam``."""

    def __init__(self, g, c, support):
        self.groups = {}
        for e, keep in zip(g.edges, support):
            inc = tuple(e.incident[j] for j in keep)
            self.groups.setdefault(len(inc), []).append(inc)
        self.groups = {k: np.array(v, dtype=np.int64) for k, v in self.groups.items()}
        self.c = c
        self.N = len(g.vertices)

    def shares(self, lam):
        return {k: softmax(lam[idx], axis=1) for k, idx in self.groups.items()}

    def value(self, lam):
        return float(-self.c @ lam + sum(logsumexp(lam[idx], axis=1).sum()
                                          for idx in self.groups.values()))

    def expected(self, lam, sh=None):
        sh = self.shares(lam) if sh is None else sh
        E = np.zeros(self.N)
        for k, idx in self.groups.items():
            np.add.at(E, idx, sh[k])
        return E

    def hessian(self, lam, sh):
        H = np.zeros((self.N, self.N))
        for k, idx in self.groups.items():
            s = sh[k]
            for r in range(len(idx)):
                ii = idx[r]
                H[np.ix_(ii, ii)] += np.diag(s[r]) - np.outer(s[r], s[r])
        return H


def default_demands(g: OneInclusionGraph, alpha=None) -> np.ndarray:
    alpha = hall_density_flow(g) if alpha is None else as_fraction(alpha)
    return np.array([float(max(Fraction(0), alpha - cr)) for cr in g.credits])


def kkt_residual(lam, E, c) -> float:
    return float(max(np.max(np.maximum(c - E, 0.0)), np.max(lam * np.abs(E - c))))


def maxent_solve(g: OneInclusionGraph, c=None, tol: float = 1e-6, lambda_cap: float = 50.0,
                 max_iter: int = 1000) -> MaxEntSolution:
    """Solve the max-entropy dual by projected Newton with backtracking.

    ``c`` is a per-vertex demand vector, a scalar alpha (turned into
    ``max(0, alpha - credit)``) or None for the graph's Hall density. The
    prior is ``rho ∝ exp(lam)``: a positive multiplier pulls mass toward
    a vertex whose demand binds.

    Edge-to-vertex choices that no feasible orientation can use are found
    by a flow argument and removed first. They would otherwise need an
    infinite multiplier; on the reduced support a strictly positive feasible
    point exists and the dual optimum is finite.
    """
    if not tol > 0:
        raise OIGError("tol must be positive")
    if c is None:
        exact = alpha_demands(g, hall_density_flow(g))
    elif np.ndim(c) == 0:
        exact = alpha_demands(g, c)
    else:
        exact = [max(Fraction(0), as_fraction(x)) for x in c]
        if len(exact) != len(g.vertices):
            raise OIGError("need one demand per vertex")
    if not demand_network(g, exact).saturated:
        raise InfeasibleError("demands are not attainable by any fractional orientation")
    cvec = np.array([float(x) for x in exact])
    support = tuple(positive_support(g, exact))
    dual = _Dual(g, cvec, support)
    N = len(g.vertices)
    lam = np.zeros(N)
    f = dual.value(lam)
    history = [f]
    it, res = 0, math.inf
    eps_active = 1e-12
    stalled, prev_res = 0, math.inf
    for it in range(1, max_iter + 1):
        sh = dual.shares(lam)
        E = dual.expected(lam, sh)
        grad = E - cvec
        res = kkt_residual(lam, E, cvec)
        if res <= tol:
            it -= 1
            break
        # variables pinned at a bound with the gradient pushing outward stay fixed
        fixed = ((lam <= eps_active) & (grad > 0)) | ((lam >= lambda_cap - eps_active) & (grad < 0))
        free = ~fixed
        step = np.zeros(N)
        if free.any():
            H = dual.hessian(lam, sh)[np.ix_(free, free)]
            H += 1e-12 * np.eye(H.shape[0])
            step[free] = np.linalg.lstsq(H, grad[free], rcond=None)[0]
        if not grad @ step > 0:
            step = grad.copy()
        t = 1.0
        while True:
            new = np.clip(lam - t * step, 0.0, lambda_cap)
            fn = dual.value(new)
            if fn <= f - 1e-4 * (grad @ (lam - new)) or t < 1e-12:
                break
            t *= 0.5
        if fn > f:  # no progress even on a tiny step: fall back to a projected gradient step
            t = 1.0
            while t >= 1e-12:
                new = np.clip(lam - t * grad, 0.0, lambda_cap)
                fn = dual.value(new)
                if fn <= f:
                    break
                t *= 0.5
            if fn > f:
                break
        flat = f - fn <= 1e-15 * max(1.0, abs(f)) and res >= 0.5 * prev_res
        stalled = stalled + 1 if flat else 0
        prev_res = res
        lam, f = new, fn
        history.append(f)
        if stalled >= 5:  # objective flat at machine precision
            break
    E = dual.expected(lam)
    res = kkt_residual(lam, E, cvec)
    rho = softmax(lam)
    capped = bool(np.any(lam >= lambda_cap - 1e-9))
    return MaxEntSolution(lam, rho, cvec, res, it, capped, res <= tol, E, support, history)


def maxent_sampler(g: OneInclusionGraph, sol: MaxEntSolution) -> FractionalOrientation:
    """Edge ``u`` picks ``v`` with probability ``rho_v / sum_{w ~ u} rho_w``,
    the prior restricted to the edge and renormalized. Choices outside the
    feasible support get exactly zero."""
    support = sol.support or tuple(tuple(range(len(e.incident))) for e in g.edges)
    rows = []
    for e, keep in zip(g.edges, support):
        w = np.zeros(len(e.incident))
        w[list(keep)] = softmax(sol.lam[[e.incident[j] for j in keep]])
        rows.append(tuple(float(x) for x in w))
    return FractionalOrientation(tuple(rows), "float")


def bayes_restriction(rho, support) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    mask = np.zeros(len(rho), dtype=bool)
    mask[list(support)] = True
    out = np.where(mask, rho, 0.0)
    return out / out.sum()


# -- brute-force primal oracle ------------------------------------------

def assignment_count(g: OneInclusionGraph) -> int:
    return math.prod(len(e.incident) for e in g.edges)


def assignment_degrees(g: OneInclusionGraph, cap: int = 10 ** 5) -> np.ndarray:
    """In-degree vector of every deterministic orientation (rows in
    mixed-radix order over the edges)."""
    count = assignment_count(g)
    if count > cap:
        raise CapExceededError(f"{count} assignments exceed cap {cap}")
    D = np.zeros((1, len(g.vertices)), dtype=np.int64)
    for e in g.edges:
        k = len(e.incident)
        nxt = np.repeat(D, k, axis=0)
        for j, v in enumerate(e.incident):
            nxt[j::k, v] += 1
        D = nxt
    return D


def maxent_brute_primal(g: OneInclusionGraph, c=None, cap: int = 10 ** 5,
                        lambda_cap: float = 50.0) -> np.ndarray:
    """Entropy-maximizing distribution over all assignments, computed on the
    explicit assignment simplex (no product-form assumption).

    Feasibility is checked by a linear program; the optimum comes from the
    convex dual ``log sum_d exp(D_d . lam) - c . lam`` over ``lam >= 0``.
    """
    D = assignment_degrees(g, cap).astype(float)
    if c is None:
        cvec = default_demands(g)
    elif np.ndim(c) == 0:
        cvec = np.array([float(max(Fraction(0), as_fraction(c) - cr)) for cr in g.credits])
    else:
        cvec = np.asarray(c, dtype=float)
    m = D.shape[0]
    lp = linprog(np.zeros(m), A_ub=-D.T, b_ub=-cvec + 1e-12, A_eq=np.ones((1, m)), b_eq=[1.0],
                 bounds=(0, None), method="highs")
    if lp.status != 0:
        raise InfeasibleError("demands are not attainable")

    def fun(lam):
        z = D @ lam
        lse = logsumexp(z)
        p = np.exp(z - lse)
        return lse - cvec @ lam, D.T @ p - cvec

    res = minimize(fun, np.zeros(D.shape[1]), jac=True, method="L-BFGS-B",
                   bounds=[(0, lambda_cap)] * D.shape[1],
                   options={"maxiter": 20000, "ftol": 1e-15, "gtol": 1e-12, "maxcor": 30})
    return softmax(D @ res.x)


def product_distribution(g: OneInclusionGraph, o: FractionalOrientation,
                         cap: int = 10 ** 5) -> np.ndarray:
    """Probability of each assignment (same order as ``assignment_degrees``)
    when edges choose independently according to ``o``."""
    count = assignment_count(g)
    if count > cap:
        raise CapExceededError(f"{count} assignments exceed cap {cap}")
    p = np.ones(1)
    for ws in o.weights:
        p = np.outer(p, np.array([float(w) for w in ws])).ravel()
    return p


def total_variation(p, q) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())


def kl_divergence(p, q) -> float:
    """KL(p || q) with ``0 log 0 = 0``; ``inf`` when p leaves q's support."""
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    on = p > 0
    if np.any(q[on] <= 0):
        return math.inf
    return float(np.sum(p[on] * np.log(p[on] / q[on])))


def kl_regularizer_value(dist, rho, K: float) -> float:
    """``arctan(KL(dist || rho)) / K``; an infinite KL maps to ``pi / (2K)``."""
    if not K > 0:
        raise OIGError("K must be positive")
    return math.atan(kl_divergence(dist, rho)) / K
