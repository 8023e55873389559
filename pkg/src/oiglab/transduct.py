"""Transductive learners on one-inclusion graphs and their exact error.

A learner is a table from partially labeled datasets ``(hole, context)`` to a
label, or to a label distribution for randomized learners. Errors are computed
straight from the leave-one-out definition, not through out-degrees, so the
identity ``n * error + credit = out-degree`` is a genuine check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classes import HypothesisClass, gen_cantor
from .exceptions import InvalidClassError, OIGError, OrientationMismatchError
from .hall import build_graph, samples
from .oig import AGNOSTIC, REALIZABLE, OneInclusionGraph
from .orientation import FractionalOrientation, Orientation, learner_table

DETERMINISTIC = "deterministic"
RANDOMIZED = "randomized"


@dataclass(frozen=True)
class TransductiveLearner:
    kind: str
    table: dict

    @classmethod
    def from_orientation(cls, g, o):
        kind = DETERMINISTIC if isinstance(o, Orientation) else RANDOMIZED
        return cls(kind, learner_table(g, o))

    def predict(self, hole, context):
        try:
            return self.table[(hole, tuple(context))]
        except KeyError:
            raise OrientationMismatchError(f"learner has no entry for {(hole, tuple(context))}") from None


def _wrong(pred, label, kind):
    if kind == DETERMINISTIC:
        return Fraction(int(pred != label))
    return 1 - pred.get(label, 0)


def transductive_error(g: OneInclusionGraph, learner: TransductiveLearner, v):
    """Leave-one-out error of ``learner`` when the truth is vertex ``v``,
    minus ``credit(v)/n`` in agnostic mode (so it may be negative)."""
    if not isinstance(v, (int, np.integer)):
        try:
            v = g.index[tuple(v)]
        except KeyError:
            raise OIGError(f"{v!r} is not a vertex of the graph") from None
    pat = g.vertices[v]
    miss = sum(_wrong(learner.predict(i, pat[:i] + pat[i + 1:]), pat[i], learner.kind)
               for i in range(g.n))
    if isinstance(miss, (int, Fraction)):
        return Fraction(miss - g.credits[v]) / g.n
    return (float(miss) - g.credits[v]) / g.n


def induced_orientation(g: OneInclusionGraph, learner: TransductiveLearner):
    """Inverse of :func:`learner_table`. In realizable mode a prediction that
    matches no incident vertex is rejected as locally improper."""
    targets, rows = [], []
    exact = True
    for e in g.edges:
        pred = learner.predict(e.hole, e.context)
        by_label = {g.vertices[v][e.hole]: v for v in e.incident}
        if learner.kind == DETERMINISTIC:
            if pred not in by_label:
                raise OrientationMismatchError(
                    f"prediction {pred} at hole {e.hole} of {e.context} matches no incident vertex")
            targets.append(by_label[pred])
        else:
            if any(p != 0 and y not in by_label for y, p in pred.items()):
                raise OrientationMismatchError(
                    f"prediction at hole {e.hole} of {e.context} puts mass on an improper label")
            ws = tuple(pred.get(g.vertices[v][e.hole], 0) for v in e.incident)
            exact = exact and all(isinstance(w, (int, Fraction)) for w in ws)
            rows.append(ws)
    if learner.kind == DETERMINISTIC:
        return Orientation(tuple(targets))
    if exact:
        return FractionalOrientation(tuple(tuple(Fraction(w) for w in ws) for ws in rows), "exact")
    return FractionalOrientation(tuple(tuple(float(w) for w in ws) for ws in rows), "float")


# -- learner factories (graph -> learner) ----------------------------------

def flow_learner(g):
    from .solvers import flow_orient
    return TransductiveLearner.from_orientation(g, flow_orient(g))


def kcore_learner(g):
    from .solvers import kcore_orient
    return TransductiveLearner.from_orientation(g, kcore_orient(g).orientation)


def maxent_learner(g, tol: float = 1e-9, **kw):
    from .solvers import maxent_sampler, maxent_solve
    return TransductiveLearner.from_orientation(g, maxent_sampler(g, maxent_solve(g, tol=tol, **kw)))


def constant_learner(hclass: HypothesisClass, h: int = 0):
    """Factory for the learner that always answers ``h(x_hole)``."""
    row = hclass.hypotheses[h]

    def factory(g):
        if g.sample is None:
            raise OIGError("graph carries no sample")
        return TransductiveLearner(DETERMINISTIC, {
            (e.hole, e.context): row[g.sample[e.hole]] for e in g.edges})
    return factory


LEARNERS = {"flow": flow_learner, "kcore": kcore_learner, "maxent": maxent_learner}


@dataclass(frozen=True)
class ErrorReport:
    error_rate: object
    argmax_S: tuple
    argmax_vertex: tuple
    per_vertex: tuple   # signed errors on the argmax sample

    def to_dict(self):
        fmt = lambda x: str(x) if isinstance(x, Fraction) else float(x)  # noqa: E731
        return {"error_rate": fmt(self.error_rate),
                "argmax": {"S": list(self.argmax_S), "vertex": list(self.argmax_vertex)},
                "per_vertex": [fmt(x) for x in self.per_vertex]}


def vertex_errors(g, learner) -> list:
    return [transductive_error(g, learner, v) for v in range(len(g.vertices))]


def error_rate(hclass: HypothesisClass, n: int, learner_factory, mode: str = REALIZABLE,
               dedup: bool = True, cap: int = 10 ** 5) -> ErrorReport:
    """Worst-case transductive error over samples (up to multiset when
    ``dedup``) and over vertices; randomized learners count in expectation."""
    if isinstance(learner_factory, str):
        learner_factory = LEARNERS[learner_factory]
    best = None
    for S in samples(hclass.num_points, n, dedup, cap):
        g = build_graph(hclass, S, mode)
        errs = vertex_errors(g, learner_factory(g))
        j = max(range(len(errs)), key=lambda k: errs[k])
        if best is None or errs[j] > best.error_rate:
            best = ErrorReport(errs[j], tuple(S), g.vertices[j], tuple(errs))
    return best


# -- Cantor demo ---------------------------------------------------------

@dataclass(frozen=True)
class CantorReport:
    d: int
    m: int
    expected_error: Fraction
    threshold_exceeded: bool
    in_proof_regime: bool = True
    trials: int = 0
    mc_estimate: float | None = None
    mc_sigma: float | None = None
    mc_within_3sigma: bool | None = None

    def to_dict(self):
        out = {"d": self.d, "m": self.m, "expected_error": str(self.expected_error),
               "threshold_exceeded": self.threshold_exceeded,
               "in_proof_regime": self.in_proof_regime}
        if self.trials:
            out.update(trials=self.trials, mc_estimate=self.mc_estimate,
                       mc_sigma=self.mc_sigma, mc_within_3sigma=self.mc_within_3sigma)
        return out


def cantor_failure_demo(d: int, m: int, trials: int = 0, seed=0,
                        strict: bool = False) -> CantorReport:
    """Expected error of the worst learner induced by a regularizer that
    never penalizes naming a set.

    The target ``h_A`` labels every point outside ``A`` with ``*`` and the
    test distribution is uniform on those points. Given ``m`` training points,
    an unseen test point ``x`` is consistent with some half-size set that
    contains ``x`` and avoids the training points; the empirical risk ties,
    so the learner may name that set and err. Seen points are labeled
    correctly. Hence the error is the unseen probability ``(1 - 2/d)^m``.

    The argument works for every ``m``; the regime ``m < d/4`` is where the
    error provably stays at least 1/2. ``strict=True`` rejects other ``m``,
    otherwise ``in_proof_regime`` records it.

    With ``trials > 0`` the learner is run on the actual class for that many
    random draws and the estimate is compared to the closed form.
    """
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 2 or d % 2:
        raise InvalidClassError("d must be an even integer >= 2")
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 0:
        raise OIGError("m must be a nonnegative integer")
    if strict and not 4 * m < d:
        raise OIGError(f"need m < d/4 (got d={d}, m={m})")
    expected = Fraction(d - 2, d) ** m
    report = dict(d=d, m=m, expected_error=expected, threshold_exceeded=expected >= Fraction(1, 2),
                  in_proof_regime=4 * m < d)
    if trials:
        est = _cantor_monte_carlo(d, m, trials, seed)
        p = float(expected)
        sigma = math.sqrt(p * (1 - p) / trials)
        report.update(trials=trials, mc_estimate=est, mc_sigma=sigma,
                      mc_within_3sigma=abs(est - p) <= 3 * sigma + 1e-12)
    return CantorReport(**report)


def _cantor_monte_carlo(d, m, trials, seed) -> float:
    H = np.array(gen_cantor(d, cap=max(12870, math.comb(d, d // 2))).hypotheses, dtype=np.int64)
    # bitmask of the labeled (non-*) points of each hypothesis
    masks = ((H != 0).astype(np.int64) << np.arange(d, dtype=np.int64)).sum(axis=1)
    rng = np.random.default_rng(seed)
    errors = 0
    for _ in range(trials):
        target = masks[rng.integers(len(masks))]
        outside = np.array([x for x in range(d) if not target >> x & 1])
        train = rng.choice(outside, size=m, replace=True)
        x = int(rng.choice(outside))
        seen = 0
        for t in train:
            seen |= 1 << int(t)
        # hypotheses that label every training point * (zero empirical risk)
        consistent = (masks & seen) == 0
        # adversarial tie-break: name a set containing x whenever one is consistent
        naming = consistent & ((masks >> x) & 1).astype(bool)
        if naming.any():
            errors += 1  # the named set is not *, the true label
    return errors / trials
