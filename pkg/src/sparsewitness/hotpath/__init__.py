"""Induced-embedding search kernels.

The compiled Cython kernel is preferred when its extension module built;
otherwise the pure-Python bitset kernel is used.  Both implement the same
``search`` contract and are cross-checked in the tests, and either can be
forced per call via ``backend=``.
"""

from __future__ import annotations

from collections import deque

from ..graphs import BudgetExceededError, DEFAULT_BUDGET, Embedding, Graph
from . import _pure

MODE_FIND = _pure.MODE_FIND
MODE_COUNT = _pure.MODE_COUNT
MODE_COLLECT = _pure.MODE_COLLECT
MODE_FIND_DOMINATING = _pure.MODE_FIND_DOMINATING
MODE_COUNT_DOMINATING = _pure.MODE_COUNT_DOMINATING

try:
    from . import _speedups

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    _speedups = None
    BACKEND = "pure"


def available_backends() -> list[str]:
    return ["pure"] if _speedups is None else ["cython", "pure"]


def default_order(pattern: Graph, start: int | None = None) -> list[int]:
    """BFS order from a max-degree vertex (or the given anchor); any
    leftover isolated components follow in index order."""
    if pattern.n == 0:
        return []
    if start is None:
        start = max(range(pattern.n), key=pattern.degree)
    order = []
    seen = [False] * pattern.n
    queue = deque([start])
    seen[start] = True
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in sorted(pattern.adj[v], key=lambda x: -pattern.degree(x)):
            if not seen[w]:
                seen[w] = True
                queue.append(w)
        if not queue:
            for w in range(pattern.n):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
                    break
    return order


def base_masks(pattern: Graph, host: Graph) -> list[int]:
    """Per pattern vertex, the bitmask of degree-compatible host images.

    An induced embedding maps every pattern neighbor to a host neighbor,
    so the host degree can only exceed the pattern degree; when the sizes
    match the embedding is an isomorphism and degrees must agree exactly.
    """
    exact = pattern.n == host.n
    degs = [host.degree(v) for v in range(host.n)]
    masks = []
    for pv in range(pattern.n):
        d = pattern.degree(pv)
        mask = 0
        for hv in range(host.n):
            if degs[hv] == d if exact else degs[hv] >= d:
                mask |= 1 << hv
        masks.append(mask)
    return masks


class SearchResult:
    __slots__ = ("embeddings", "count", "expansions", "exceeded", "backend")

    def __init__(self, embeddings, count, expansions, exceeded, backend):
        self.embeddings: list[Embedding] = embeddings
        self.count = count
        self.expansions = expansions
        self.exceeded = exceeded
        self.backend = backend

    def __repr__(self):
        return (
            f"SearchResult(count={self.count}, expansions={self.expansions}, "
            f"exceeded={self.exceeded}, backend={self.backend!r})"
        )


def embed_search(
    pattern: Graph,
    host: Graph,
    mode: int = MODE_FIND,
    order: list[int] | None = None,
    base: list[int] | None = None,
    limit: int | None = None,
    budget: int = DEFAULT_BUDGET,
    backend: str | None = None,
    raise_on_budget: bool = False,
) -> SearchResult:
    """Run the kernel on Graph inputs, preparing masks and search order."""
    if order is None:
        order = default_order(pattern)
    if base is None:
        base = base_masks(pattern, host)
    name = backend or BACKEND
    if name == "cython" and _speedups is None:
        raise ValueError("compiled kernel is not available")
    impl = _speedups if name == "cython" else _pure
    emb, count, expansions, exceeded = impl.search(
        pattern.n, pattern.bits, host.n, host.bits, order, base, mode, limit, budget
    )
    if exceeded and raise_on_budget:
        raise BudgetExceededError(f"search exceeded budget of {budget} expansions")
    return SearchResult(list(emb), int(count), int(expansions), bool(exceeded), name)
