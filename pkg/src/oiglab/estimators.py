"""scikit-learn style wrappers around the orientation engines.

``fit`` takes the unlabeled sample (a 1-D array of domain-point indices) and
builds the one-inclusion graph plus an orientation. ``predict`` takes
partially labeled datasets: rows of label indices with a single ``-1`` at the
test position.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_partial_rows, check_point_indices
from .classes import HypothesisClass
from .exceptions import InvalidClassError, OrientationMismatchError
from .oig import build_agnostic_oig, build_oig
from .orientation import learner_table
from .transduct import TransductiveLearner, vertex_errors


class OIGLearner(BaseEstimator):
    """Base class; subclasses implement ``_orient(graph)``."""

    def __init__(self, hypothesis_class=None, agnostic=False):
        self.hypothesis_class = hypothesis_class
        self.agnostic = agnostic

    def _orient(self, graph):  # pragma: no cover
        raise NotImplementedError

    def fit(self, X, y=None):
        if not isinstance(self.hypothesis_class, HypothesisClass):
            raise InvalidClassError("hypothesis_class must be a HypothesisClass")
        S = check_point_indices(X, self.hypothesis_class.num_points)
        build = build_agnostic_oig if self.agnostic else build_oig
        self.graph_ = build(self.hypothesis_class, S)
        self.orientation_ = self._orient(self.graph_)
        self.table_ = learner_table(self.graph_, self.orientation_)
        self.learner_ = TransductiveLearner.from_orientation(self.graph_, self.orientation_)
        self.vertex_errors_ = vertex_errors(self.graph_, self.learner_)
        self.error_rate_ = max(self.vertex_errors_)
        self.n_features_in_ = len(S)
        return self

    def predict_proba(self, X) -> np.ndarray:
        check_is_fitted(self, "table_")
        g = self.graph_
        rows = check_partial_rows(X, g.n, g.num_labels)
        out = np.zeros((len(rows), g.num_labels))
        for r, row in enumerate(rows):
            hole = int(np.flatnonzero(row == -1)[0])
            ctx = tuple(int(y) for y in np.delete(row, hole))
            if (hole, ctx) not in self.table_:
                raise OrientationMismatchError(f"{row.tolist()} is not a hyperedge of the fitted graph")
            pred = self.table_[(hole, ctx)]
            if isinstance(pred, dict):
                for y, p in pred.items():
                    out[r, y] = float(p)
            else:
                out[r, pred] = 1.0
        return out

    def predict(self, X) -> np.ndarray:
        return self.predict_proba(X).argmax(axis=1)


class FlowLearner(OIGLearner):
    """Optimal fractional learner from the feasibility flow at ``alpha``
    (default: the Hall density of the fitted graph)."""

    def __init__(self, hypothesis_class=None, agnostic=False, alpha=None):
        super().__init__(hypothesis_class, agnostic)
        self.alpha = alpha

    def _orient(self, graph):
        from .solvers import flow_orient
        return flow_orient(graph, self.alpha)


class KCoreLearner(OIGLearner):
    def __init__(self, hypothesis_class=None, tie_break="largest"):
        super().__init__(hypothesis_class, False)
        self.tie_break = tie_break

    def _orient(self, graph):
        from .solvers import extract_regularizer, kcore_orient
        self.peeling_ = kcore_orient(graph, self.tie_break)
        self.regularizer_ = extract_regularizer(self.peeling_, graph.n)
        return self.peeling_.orientation


class MaxEntLearner(OIGLearner):
    def __init__(self, hypothesis_class=None, agnostic=False, tol=1e-9, lambda_cap=50.0,
                 max_iter=1000, demand=None):
        super().__init__(hypothesis_class, agnostic)
        self.tol = tol
        self.lambda_cap = lambda_cap
        self.max_iter = max_iter
        self.demand = demand

    def _orient(self, graph):
        from .solvers import maxent_sampler, maxent_solve
        self.solution_ = maxent_solve(graph, self.demand, tol=self.tol,
                                      lambda_cap=self.lambda_cap, max_iter=self.max_iter)
        self.rho_ = self.solution_.rho
        return maxent_sampler(graph, self.solution_)
