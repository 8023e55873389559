"""Randomized structural laws."""
import json
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from oiglab import (FractionalOrientation, Orientation, build_agnostic_oig, build_oig, gen_random,
                    hall_density_brute, hall_density_flow, verify_coorientation, verify_orientation)
from oiglab.classes import HypothesisClass
from oiglab.oig import export, import_json
from oiglab.orientation import dumps, in_degrees, loads, out_degrees
from oiglab.transduct import TransductiveLearner, induced_orientation, vertex_errors

CASES = settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def instances(draw, max_points=4, max_labels=3, max_n=4):
    X = draw(st.integers(1, max_points))
    L = draw(st.integers(2, max_labels))
    m = draw(st.integers(1, min(8, L ** X)))
    h = gen_random(X, L, m, seed=draw(st.integers(0, 2 ** 31)))
    S = tuple(draw(st.lists(st.integers(0, X - 1), min_size=1, max_size=max_n)))
    return h, S


@st.composite
def oriented(draw, agnostic=False):
    h, S = draw(instances(max_labels=2 if agnostic else 3, max_n=3 if agnostic else 4))
    g = build_agnostic_oig(h, S) if agnostic else build_oig(h, S)
    if draw(st.booleans()):
        o = Orientation(tuple(draw(st.sampled_from(e.incident)) for e in g.edges))
    else:
        rows = []
        for e in g.edges:
            raw = draw(st.lists(st.integers(0, 6), min_size=len(e.incident), max_size=len(e.incident)))
            if sum(raw) == 0:
                raw[0] = 1
            rows.append(tuple(Fraction(x, sum(raw)) for x in raw))
        o = FractionalOrientation(tuple(rows))
    return g, o


@CASES
@given(instances())
def test_degree_law(inst):
    h, S = inst
    g = build_oig(h, S)
    assert g.degrees() == [len(S)] * len(g.vertices)
    for e in g.edges:
        labels = {g.vertices[v][e.hole] for v in e.incident}
        assert len(labels) == len(e.incident) <= h.num_labels


@CASES
@given(oriented())
def test_in_plus_out_equals_degree(go):
    g, o = go
    for i, out, d in zip(in_degrees(g, o), out_degrees(g, o), g.degrees()):
        assert i + out == d


@CASES
@given(oriented(), st.fractions(min_value=0, max_value=5, max_denominator=6))
def test_orientation_coorientation_duality(go, alpha):
    g, o = go
    if alpha > g.n:
        alpha = Fraction(g.n)
    assert verify_orientation(g, o, alpha) == verify_coorientation(g, o, g.n - alpha)


@CASES
@given(oriented(agnostic=True))
def test_error_outdegree_identity_agnostic(go):
    g, o = go
    lr = TransductiveLearner.from_orientation(g, o)
    assert induced_orientation(g, lr) == o
    for v, (err, out) in enumerate(zip(vertex_errors(g, lr), out_degrees(g, o))):
        assert err * g.n + g.credits[v] == out


@CASES
@given(oriented())
def test_json_round_trips(go):
    g, o = go
    g2 = import_json(export(g, "json"))
    assert g2 == g
    assert loads(g2, dumps(g, o)) == o


@CASES
@given(instances())
def test_class_json_round_trip(inst):
    h, _ = inst
    assert HypothesisClass.from_dict(json.loads(json.dumps(h.to_dict()))) == h


@settings(max_examples=150, deadline=None)
@given(instances(max_n=3))
def test_flow_density_matches_brute(inst):
    h, S = inst
    g = build_oig(h, S)
    assert hall_density_flow(g) == hall_density_brute(g)
