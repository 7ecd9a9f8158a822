"""Witness families, the growth process, and the parity property."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsewitness.graphs import automorphism_count, induced_embeddings, new_graph
from sparsewitness.witness import (
    ProcessError,
    RootedTree,
    WitnessError,
    build_W,
    build_W_star,
    gamma_product,
    has_gamma_r_property,
    omega,
    ordered_gamma_product,
    process_init,
    process_run,
    process_step,
    w_edge_count,
    w_star_edge_count,
    w_star_vertex_count,
    w_vertex_count,
)


def is_path(g) -> bool:
    degs = sorted(g.degree(v) for v in range(g.n))
    if g.n == 1:
        return degs == [0]
    if degs != [1, 1] + [2] * (g.n - 2):
        return False
    return g.m == g.n - 1 and _connected(g)


def _connected(g) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == g.n


def test_omega_closed_form():
    assert omega(1, 4) == 1
    assert omega(2, 4) == 5
    assert omega(3, 4) == 21
    assert omega(3, 2) == 7
    # Geometric-series identity against direct summation.
    for a in range(1, 7):
        for r in (2, 3, 4, 5):
            assert omega(a, r) == sum(r**t for t in range(a))


def test_parameter_validation():
    with pytest.raises(WitnessError):
        build_W(0, 0, 4)
    with pytest.raises(WitnessError):
        build_W(1, -1, 4)
    with pytest.raises(WitnessError):
        build_W(1, 0, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 3), st.sampled_from([2, 3, 4]))
def test_w_counts_match_closed_forms(a, gamma, r):
    ws = build_W(a, gamma, r)
    s = w_vertex_count(a, gamma, r)
    assert ws.graph.n == s == a + (gamma + 1) * omega(a, r)
    assert ws.graph.m == w_edge_count(a, gamma, r)
    # Edge count restated through s, as an independent identity.
    assert (gamma + 1) * ws.graph.m == (gamma + 2) * s - a - 2 * (gamma + 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.integers(0, 3), st.sampled_from([2, 3]))
def test_w_star_counts_match_closed_forms(a, gamma, r):
    ws = build_W_star(a, gamma, r)
    assert ws.graph.n == w_star_vertex_count(a, gamma, r)
    assert ws.graph.m == w_star_edge_count(a, gamma, r)
    assert _connected(ws.graph)


def test_w_star_base_case_is_a_path():
    # With a=1 both trees are single vertices, so the whole construction
    # collapses to a path on 3*gamma + 4 vertices.
    for gamma in range(4):
        g = build_W_star(1, gamma, 2).graph
        assert g.n == 3 * gamma + 4
        assert is_path(g)


def test_w_small_shapes():
    # a=1, gamma=0: a single edge.
    g = build_W(1, 0, 4).graph
    assert (g.n, g.m) == (2, 1)
    # a=2, gamma=0, r=4: K_{1,5} plus the path edge = two path vertices
    # joined appropriately; check count identities and bipartite-ish degrees.
    g = build_W(2, 0, 4).graph
    assert (g.n, g.m) == (7, 10)


def test_w2_gamma_r4_is_theta_like():
    # W_2^gamma (r=4) is five internally disjoint equal-length paths
    # between the two original path endpoints; its automorphism group is
    # the path swap times the 5! path permutations.
    for gamma in (0, 1):
        g = build_W(2, gamma, 4).graph
        assert automorphism_count(g) == 2 * 120


def test_gamma_product_count_identities():
    # Joining a rooted P_2 with a single vertex pairs only the two depth-0
    # roots: n = n1 + n2 + gamma, m = m1 + m2 + gamma + 1.
    p2 = new_graph(2, [(0, 1)])
    single = new_graph(1, [])
    for gamma in range(3):
        g = gamma_product(RootedTree(p2, 0), RootedTree(single, 0), gamma)
        assert g.n == 3 + gamma
        assert g.m == 1 + gamma + 1


def test_gamma_product_rejects_non_trees():
    c3 = new_graph(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(WitnessError):
        gamma_product(RootedTree(c3, 0), RootedTree(new_graph(1, []), 0), 1)


def test_ordered_gamma_product_validation():
    p2 = new_graph(2, [(0, 1)])
    with pytest.raises(WitnessError, match="unique minimum"):
        ordered_gamma_product(p2, [[0, 1]], p2, [[0, 1]], 1)
    with pytest.raises(WitnessError, match="partition"):
        ordered_gamma_product(p2, [[0]], p2, [[0], [1]], 1)
    # Rank-paired linear orders on two P_2s give a ladder of connectors.
    g = ordered_gamma_product(p2, [[0], [1]], p2, [[0], [1]], 0)
    assert g.n == 4 and g.m == 4


def test_process_reaches_w_star_exactly():
    state = process_init(2, 2)
    assert state.graph.n == w_star_vertex_count(1, 2, 2) == 10
    assert state.floor == 1
    sizes = [state.graph.n]
    while state.graph.n < w_star_vertex_count(2, 2, 2):
        state = process_step(state)
        sizes.append(state.graph.n)
    increments = {b - a for a, b in zip(sizes, sizes[1:])}
    assert increments <= {1, 3}  # 1 or gamma + 1
    assert state.floor == 2
    target = build_W_star(2, 2, 2).graph
    assert state.graph.n == target.n and state.graph.m == target.m
    assert induced_embeddings(target, state.graph, limit=1)


def test_process_run_and_floor_monotone():
    floors = [process_run(2, 2, steps).floor for steps in range(0, 14)]
    assert floors == sorted(floors)
    assert floors[0] == 1 and floors[-1] == 2


def test_process_rejects_bad_params():
    with pytest.raises((ProcessError, WitnessError)):
        process_init(2, 1)
    with pytest.raises((ProcessError, WitnessError)):
        process_init(-1, 2)


def test_property_on_exact_stage():
    w2 = build_W_star(2, 2, 2).graph
    verdict = has_gamma_r_property(w2, 2, 2)
    assert verdict and verdict.a == 2
    assert verdict.embedding is not None


def test_property_false_below_and_past_stage():
    w1 = build_W_star(1, 2, 2).graph
    assert not has_gamma_r_property(w1, 2, 2)
    # One extension step past the completed stage: the copy is extendable,
    # so the parity property no longer holds.
    state = process_run(2, 2, 12)
    assert state.graph.n > w_star_vertex_count(2, 2, 2)
    assert not has_gamma_r_property(state.graph, 2, 2)
