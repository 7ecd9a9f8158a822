"""Witness-copy detection against the brute-force oracle, budget
semantics, Wilson intervals, and the connector-path predicate."""

import itertools
import random

import pytest

from sparsewitness.detect import (
    SearchBudget,
    check_connector_property,
    exists_dominating_set_of_size,
    find_dominating_induced_W,
    find_induced_W,
    wilson_interval,
)
from sparsewitness.graphs import induced_embeddings, is_dominating, new_graph
from sparsewitness.witness import build_W


def random_graph(n, p, rnd):
    edges = [e for e in itertools.combinations(range(n), 2) if rnd.random() < p]
    return new_graph(n, edges)


def path(n):
    return new_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return new_graph(n, [(i, (i + 1) % n) for i in range(n)])


def test_find_induced_W_examples():
    # No induced edge-with-nonedge structure (W at a=2, gamma=0, r=4 has 7
    # vertices) fits in K_5; an isolated-vertex graph has no copies at all.
    k5 = new_graph(5, itertools.combinations(range(5), 2))
    assert find_induced_W(k5, 2, 0, 4).outcome == "none"
    isolates = new_graph(4, [])
    assert find_induced_W(isolates, 1, 0, 4).outcome == "none"
    # A star contains the a=1 witness (a single edge).
    star = new_graph(5, [(0, i) for i in range(1, 5)])
    res = find_induced_W(star, 1, 0, 4)
    assert res.outcome == "found" and res.embedding is not None


def test_find_induced_W_count_matches_oracle():
    rnd = random.Random(5)
    for trial in range(60):
        g = random_graph(rnd.randint(3, 12), rnd.choice([0.2, 0.5]), rnd)
        for a, gamma in [(1, 0), (1, 1), (2, 0)]:
            pat = build_W(a, gamma, 4).graph
            oracle = induced_embeddings(pat, g)
            res = find_induced_W(g, a, gamma, 4, mode="count")
            assert res.count == len(oracle), (trial, a, gamma)


def test_found_embeddings_revalidate():
    rnd = random.Random(9)
    pat = build_W(2, 0, 4).graph
    for trial in range(40):
        g = random_graph(12, 0.5, rnd)
        res = find_induced_W(g, 2, 0, 4)
        if res.outcome != "found":
            continue
        emb = res.embedding
        assert len(set(emb)) == pat.n
        for u, v in itertools.combinations(range(pat.n), 2):
            assert (v in pat.neighbors(u)) == (emb[v] in g.neighbors(emb[u]))


def test_dominating_search_matches_oracle():
    rnd = random.Random(13)
    for trial in range(40):
        g = random_graph(rnd.randint(4, 11), 0.4, rnd)
        res = find_dominating_induced_W(g, 0, 4, (1, 2))
        expect = False
        for a in (1, 2):
            pat = build_W(a, 0, 4).graph
            if any(
                is_dominating(g, e) for e in induced_embeddings(pat, g)
            ):
                expect = True
        assert bool(res) == expect, trial


def test_dominating_search_prefers_larger_a():
    # Search descends from a_max; report the largest stage that matches.
    g = build_W(2, 0, 4).graph  # dominates itself and contains a=1 copies
    res = find_dominating_induced_W(g, 0, 4, (1, 2))
    assert res.a == 2


def test_budget_exceeded_is_reported_not_raised():
    big = new_graph(40, itertools.combinations(range(40), 2))
    res = find_induced_W(big, 2, 1, 4, budget=SearchBudget(max_expansions=10))
    assert res.outcome == "budget_exceeded"
    assert not res


def test_monotone_in_a_on_fixed_graphs():
    # A dominating copy at stage a+1 is strictly harder than at stage a,
    # so on any fixed graph set, success counts must be non-increasing.
    rnd = random.Random(21)
    graphs = [random_graph(10, 0.5, rnd) for _ in range(30)]
    hits = []
    for a in (1, 2):
        hits.append(
            sum(
                1
                for g in graphs
                if find_dominating_induced_W(g, 0, 4, (a, a))
            )
        )
    assert hits[0] >= hits[1]


def test_wilson_interval_examples():
    lo, hi = wilson_interval(0, 100)
    assert lo == pytest.approx(0.0, abs=1e-12) and 0.03 < hi < 0.045
    lo2, hi2 = wilson_interval(100, 100)
    assert hi2 == 1.0 and abs(lo2 - (1 - hi)) < 1e-12
    lo3, hi3 = wilson_interval(50, 100)
    assert abs((0.5 - lo3) - (hi3 - 0.5)) < 1e-12
    with pytest.raises(ValueError):
        wilson_interval(5, 0)
    with pytest.raises(ValueError):
        wilson_interval(7, 5)


def test_exists_dominating_set_exact():
    c5 = cycle(5)
    assert not exists_dominating_set_of_size(c5, 1)
    assert exists_dominating_set_of_size(c5, 2)
    p3 = path(3)
    assert exists_dominating_set_of_size(p3, 1)


def test_exists_dominating_set_sampled_matches_exact_when_hit():
    g = path(3)
    verdict = exists_dominating_set_of_size(
        g, 1, mode="sampled", trials=500, seed=1
    )
    assert verdict  # {1} dominates and is hit with overwhelming probability


def test_connector_property():
    # P_4 endpoints are connected by the induced 2-vertex path 1-2.
    p4 = path(4)
    assert check_connector_property(p4, [0, 3], 1)
    # No 3-vertex connector exists in P_4, and {0, 2} has no valid
    # attachment (vertex 1 touches both set vertices).
    assert not check_connector_property(p4, [0, 3], 2)
    assert not check_connector_property(p4, [0, 2], 1)
    # In C_4 both outside vertices are adjacent to both set vertices.
    assert not check_connector_property(cycle(4), [0, 2], 1)
    with pytest.raises(ValueError):
        check_connector_property(p4, [0, 3], 0)
