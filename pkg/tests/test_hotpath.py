"""Kernel backends: the compiled and pure searches must agree exactly."""

import itertools
import random

import pytest

from sparsewitness.graphs import induced_embeddings, new_graph
from sparsewitness.hotpath import (
    BACKEND,
    MODE_COLLECT,
    MODE_COUNT,
    MODE_COUNT_DOMINATING,
    MODE_FIND,
    MODE_FIND_DOMINATING,
    available_backends,
    embed_search,
)
from sparsewitness.graphs import is_dominating

BACKENDS = available_backends()


def random_graph(n, p, rnd):
    edges = [e for e in itertools.combinations(range(n), 2) if rnd.random() < p]
    return new_graph(n, edges)


def test_compiled_backend_is_available():
    assert "pure" in BACKENDS
    assert BACKEND in BACKENDS


@pytest.mark.parametrize("backend", BACKENDS)
def test_kernel_matches_oracle_on_random_instances(backend):
    rnd = random.Random(7)
    patterns = [
        new_graph(3, [(0, 1), (1, 2)]),           # P_3
        new_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),  # C_4
        new_graph(4, [(0, 1), (0, 2), (0, 3)]),   # star
    ]
    for trial in range(40):
        host = random_graph(rnd.randint(4, 11), rnd.choice([0.2, 0.4, 0.6]), rnd)
        for pat in patterns:
            oracle = set(induced_embeddings(pat, host))
            res = embed_search(pat, host, mode=MODE_COLLECT, backend=backend)
            assert set(res.embeddings) == oracle
            cnt = embed_search(pat, host, mode=MODE_COUNT, backend=backend)
            assert cnt.count == len(oracle)
            found = embed_search(pat, host, mode=MODE_FIND, backend=backend)
            assert (found.count > 0) == bool(oracle)
            if found.embeddings:
                assert found.embeddings[0] in oracle


@pytest.mark.parametrize("backend", BACKENDS)
def test_dominating_modes_match_filtered_oracle(backend):
    rnd = random.Random(11)
    pat = new_graph(3, [(0, 1), (1, 2)])
    for trial in range(30):
        host = random_graph(rnd.randint(4, 10), 0.4, rnd)
        oracle = [
            e for e in induced_embeddings(pat, host) if is_dominating(host, e)
        ]
        cnt = embed_search(pat, host, mode=MODE_COUNT_DOMINATING, backend=backend)
        assert cnt.count == len(oracle)
        found = embed_search(pat, host, mode=MODE_FIND_DOMINATING, backend=backend)
        assert (found.count > 0) == bool(oracle)
        if found.embeddings:
            assert is_dominating(host, found.embeddings[0])


@pytest.mark.parametrize("backend", BACKENDS)
def test_empty_and_oversized_patterns(backend):
    host = new_graph(3, [(0, 1)])
    empty = new_graph(0, [])
    res = embed_search(empty, host, mode=MODE_FIND, backend=backend)
    assert res.count == 1 and res.embeddings == [()]
    big = new_graph(5, [(0, 1)])
    res = embed_search(big, host, mode=MODE_COUNT, backend=backend)
    assert res.count == 0


@pytest.mark.parametrize("backend", BACKENDS)
def test_budget_reporting(backend):
    host = new_graph(20, [(i, j) for i in range(20) for j in range(i + 1, 20)])
    pat = new_graph(3, [(0, 1), (0, 2), (1, 2)])
    res = embed_search(pat, host, mode=MODE_COUNT, backend=backend, budget=10)
    assert res.exceeded
    assert res.expansions > 10


def test_backends_agree_beyond_one_word():
    # Hosts with more than 64 vertices exercise the multi-word bitset path.
    rnd = random.Random(3)
    host = random_graph(70, 0.15, rnd)
    pat = new_graph(3, [(0, 1), (1, 2)])
    results = {
        b: embed_search(pat, host, mode=MODE_COUNT, backend=b).count
        for b in BACKENDS
    }
    assert len(set(results.values())) == 1


def test_collect_limit():
    host = new_graph(6, [(i, (i + 1) % 6) for i in range(6)])
    pat = new_graph(2, [(0, 1)])
    res = embed_search(pat, host, mode=MODE_COLLECT, limit=4)
    assert len(res.embeddings) == 4
