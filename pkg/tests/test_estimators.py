import numpy as np
import pytest
from sklearn.base import clone

from oiglab import FlowLearner, KCoreLearner, MaxEntLearner, make_class
from oiglab.exceptions import InvalidSampleError, OrientationMismatchError
from sklearn.exceptions import NotFittedError


def test_flow_learner_fit_predict(fig):
    est = FlowLearner(fig).fit(np.array([0, 1, 2]))
    assert est.error_rate_ == pytest.approx(2 / 9)
    proba = est.predict_proba([[-1, 0, 0], [0, -1, 0], [1, 0, -1]])
    assert proba[0] == pytest.approx([2 / 3, 1 / 3])
    assert proba[2] == pytest.approx([1, 0])
    assert est.predict([[-1, 0, 0]]).tolist() == [0]


def test_kcore_and_maxent(fig):
    k = KCoreLearner(fig).fit([0, 1, 2])
    assert float(k.error_rate_) == pytest.approx(1 / 3)
    assert k.regularizer_.n == 3
    m = MaxEntLearner(fig).fit([0, 1, 2])
    assert m.rho_ == pytest.approx([0.5, 0.25, 0.25], abs=1e-6)


def test_agnostic_flow_learner():
    h = make_class("ab", [0, 1], ["00"])
    est = FlowLearner(h, agnostic=True).fit([0, 1])
    assert est.error_rate_ == 0
    assert est.predict([[1, -1]]).tolist() == [0]


def test_params_and_clone(fig):
    est = MaxEntLearner(fig, tol=1e-8)
    assert est.get_params()["tol"] == 1e-8
    assert clone(est).get_params()["tol"] == 1e-8
    assert KCoreLearner().get_params() == {"hypothesis_class": None, "tie_break": "largest"}


def test_validation(fig):
    with pytest.raises(NotFittedError):
        FlowLearner(fig).predict([[-1, 0, 0]])
    est = FlowLearner(fig).fit([0, 1, 2])
    with pytest.raises(InvalidSampleError):
        est.predict([[0, 0, 0]])
    with pytest.raises(InvalidSampleError):
        est.predict([[-1, 0]])
    with pytest.raises(OrientationMismatchError):
        est.predict([[-1, 1, 1]])
    with pytest.raises(InvalidSampleError):
        FlowLearner(fig).fit([0, 5])
