import itertools
from fractions import Fraction

import pytest

from oiglab import (build_agnostic_oig, build_oig, degeneracy, gen_full, hall_complexity,
                    hall_density_brute, hall_density_flow, make_class)
from oiglab.exceptions import CapExceededError
from oiglab.hall import is_feasible, positive_support
from oiglab.oig import induced_subgraph

from oracles import naive_degeneracy, naive_edges, naive_hall, naive_vertices

F = Fraction


def test_figure_density(fig):
    g = build_oig(fig, (0, 1, 2))
    assert hall_density_brute(g, return_subset=True) == (F(7, 3), (0, 1, 2))
    assert hall_density_flow(g) == F(7, 3)


def test_singleton_density_is_n():
    g = build_oig(make_class("abc", [0, 1], ["000"]), (0, 1, 2))
    assert hall_density_brute(g) == 3 == hall_density_flow(g)


def test_agnostic_singleton_density():
    g = build_agnostic_oig(make_class("ab", [0, 1], ["00"]), (0, 1))
    assert hall_density_brute(g, return_subset=True) == (F(2), (0,))
    assert hall_density_flow(g) == 2


def test_full_binary_density():
    h = gen_full(2, 2)
    assert hall_density_flow(build_oig(h, (0, 1))) == 1
    assert hall_density_brute(build_agnostic_oig(h, (0, 1))) == 1
    assert hall_density_flow(build_agnostic_oig(h, (0, 1))) == 1


def test_brute_agrees_with_naive_oracle():
    h = make_class("abcd", [0, 1, 2], ["0120", "2001", "1111", "0000", "0121", "2201"])
    for S in [(0, 1, 2), (1, 3, 3), (0, 1, 2, 3), (2, 2)]:
        g = build_oig(h, S)
        V = naive_vertices(h.hypotheses, S)
        E = naive_edges(V)
        assert hall_density_brute(g) == naive_hall(V, E) == hall_density_flow(g)
        assert degeneracy(g) == naive_degeneracy(V, E) == degeneracy(g, "peel")


def test_feasibility_threshold(fig):
    g = build_oig(fig, (0, 1, 2))
    assert is_feasible(g, F(7, 3))
    assert not is_feasible(g, F(7, 3) + F(1, 1000))


def test_brute_cap():
    g = build_agnostic_oig(gen_full(5, 2), tuple(range(5)))
    with pytest.raises(CapExceededError):
        hall_density_brute(g, cap=16)


def test_induced_subgraph_density_not_smaller():
    h = make_class("abc", [0, 1], ["000", "100", "010", "001", "111"])
    g = build_oig(h, (0, 1, 2))
    base = hall_density_brute(g)
    for k in range(1, len(g.vertices) + 1):
        for keep in itertools.combinations(range(len(g.vertices)), k):
            assert hall_density_brute(induced_subgraph(g, keep)) >= base


def test_figure_complexity(fig):
    r = hall_complexity(fig, 3)
    assert (r.pi, r.epsilon, r.argmax_S, r.hall) == (F(2, 3), F(2, 9), (0, 1, 2), F(7, 3))
    assert r.to_dict() == {"hall": "7/3", "pi": "2/3", "epsilon": "2/9", "argmax_S": [0, 1, 2]}
    full = hall_complexity(fig, 3, dedup=False)
    assert full.pi == F(2, 3)
    det = hall_complexity(fig, 3, deterministic=True)
    assert det.pi == 1 and det.epsilon == F(1, 3)


def test_complexity_singleton_and_full():
    for n in (1, 2, 3):
        assert hall_complexity(make_class("ab", [0, 1], ["01"]), n).pi == 0
    r = hall_complexity(gen_full(2, 2), 2)
    assert (r.pi, r.epsilon) == (1, F(1, 2))


def test_agnostic_complexity_singleton():
    r = hall_complexity(make_class("ab", [0, 1], ["00"]), 2, mode="agnostic")
    assert r.pi == 0 and r.hall == 2


def test_complexity_parallel_matches_serial(fig):
    assert hall_complexity(fig, 3, n_jobs=2) == hall_complexity(fig, 3)


def test_complexity_cap(fig):
    with pytest.raises(CapExceededError):
        hall_complexity(fig, 3, dedup=False, cap=20)


def test_degeneracy_examples(fig):
    assert degeneracy(build_oig(fig, (0, 1, 2))) == 1
    assert degeneracy(build_oig(gen_full(2, 2), (0, 1))) == 2
    assert degeneracy(build_oig(make_class("ab", [0, 1], ["01"]), (0, 1))) == 0


def test_positive_support_forced_orientation():
    # single hypothesis, agnostic: all demands tight, every edge must go toward h
    g = build_agnostic_oig(make_class("abc", [0, 1], ["000"]), (0, 1, 2))
    sup = positive_support(g, [max(0, 3 - c) for c in g.credits])
    for e, keep in zip(g.edges, sup):
        assert [e.incident[j] for j in keep] == [min(e.incident, key=lambda v: g.credits[v])]
    # figure instance at its density: both choices on the shared edges stay usable
    g = build_oig(make_class("abc", [0, 1], ["000", "100", "010"]), (0, 1, 2))
    sup = positive_support(g, [F(7, 3)] * 3)
    assert [len(k) for k in sup] == [len(e.incident) for e in g.edges]
