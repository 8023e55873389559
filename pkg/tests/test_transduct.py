from fractions import Fraction

import pytest

from oiglab import (FractionalOrientation, Orientation, TransductiveLearner, build_agnostic_oig,
                    build_oig, cantor_failure_demo, error_rate, gen_full, hall_complexity,
                    induced_orientation, learner_table, make_class, transductive_error)
from oiglab.exceptions import OIGError, OrientationMismatchError
from oiglab.orientation import out_degrees
from oiglab.transduct import (DETERMINISTIC, constant_learner, flow_learner, kcore_learner,
                              maxent_learner, vertex_errors)

F = Fraction


@pytest.fixture
def g(fig):
    return build_oig(fig, (0, 1, 2))


def to_000(g):
    return Orientation(tuple(0 if 0 in e.incident else e.incident[0] for e in g.edges))


def test_errors_from_orientation(g):
    lr = TransductiveLearner.from_orientation(g, to_000(g))
    assert transductive_error(g, lr, (0, 0, 0)) == 0
    assert transductive_error(g, lr, (1, 0, 0)) == F(1, 3)
    assert vertex_errors(g, lr) == [0, F(1, 3), F(1, 3)]


def test_singleton_forced_learner():
    s = build_oig(make_class("abc", [0, 1], ["011"]), (0, 1, 2))
    assert vertex_errors(s, flow_learner(s)) == [0]


def test_agnostic_constant_learner():
    h = make_class("ab", [0, 1], ["00"])
    a = build_agnostic_oig(h, (0, 1))
    lr = constant_learner(h)(a)
    assert transductive_error(a, lr, (1, 1)) == 0
    assert vertex_errors(a, lr) == [0, 0, 0, 0]


def test_error_outdegree_identity(fig):
    for build in (build_oig, build_agnostic_oig):
        gg = build(fig, (0, 1, 1))
        for factory in (flow_learner, maxent_learner):
            lr = factory(gg)
            o = induced_orientation(gg, lr)
            for v, (err, out) in enumerate(zip(vertex_errors(gg, lr), out_degrees(gg, o))):
                assert err * gg.n + gg.credits[v] == pytest.approx(out, abs=1e-12)


def test_error_rates_figure(fig):
    assert error_rate(fig, 3, "kcore").error_rate == F(1, 3)
    assert error_rate(fig, 3, "flow").error_rate == F(2, 9)
    assert error_rate(fig, 3, "maxent").error_rate == pytest.approx(2 / 9, abs=1e-6)
    rep = error_rate(fig, 3, "flow")
    assert rep.argmax_S == (0, 1, 2)
    assert rep.to_dict()["error_rate"] == "2/9"


def test_error_rate_singleton():
    h = make_class("ab", [0, 1], ["10"])
    for f in (flow_learner, kcore_learner, maxent_learner):
        assert error_rate(h, 2, f).error_rate == 0


def test_full_binary_rate_is_half():
    assert error_rate(gen_full(2, 2), 2, flow_learner).error_rate == hall_complexity(gen_full(2, 2), 2).epsilon


def test_induced_orientation_round_trip(g):
    o = to_000(g)
    assert induced_orientation(g, TransductiveLearner.from_orientation(g, o)) == o
    fr = FractionalOrientation(tuple((F(2, 3), F(1, 3)) if len(e.incident) == 2 else (F(1),)
                                     for e in g.edges))
    back = induced_orientation(g, TransductiveLearner.from_orientation(g, fr))
    assert back == fr
    assert learner_table(g, back)[(0, (0, 0))][0] == F(2, 3)


def test_induced_orientation_rejects_improper(g):
    table = learner_table(g, to_000(g))
    table[(2, (0, 0))] = 1  # self-loop of 000 at hole c only completes with 0
    with pytest.raises(OrientationMismatchError):
        induced_orientation(g, TransductiveLearner(DETERMINISTIC, table))


def test_cantor_closed_forms():
    r = cantor_failure_demo(16, 3)
    assert r.expected_error == F(343, 512) and r.threshold_exceeded and r.in_proof_regime
    assert cantor_failure_demo(8, 2).expected_error == F(9, 16)
    assert cantor_failure_demo(4, 0).expected_error == 1


def test_cantor_regime_checks():
    with pytest.raises(OIGError):
        cantor_failure_demo(7, 1)
    with pytest.raises(OIGError):
        cantor_failure_demo(8, 2, strict=True)
    assert not cantor_failure_demo(8, 2).in_proof_regime


def test_cantor_monte_carlo_small():
    r = cantor_failure_demo(8, 1, trials=4000, seed=3)
    assert r.mc_within_3sigma
