"""Small undirected graphs with brute-force embedding oracles.

Vertices are integers 0..n-1.  Graphs are immutable after construction and
keep both neighbor sets and (lazily) per-vertex adjacency bitmasks; the
bitmasks make domination checks and the search kernels cheap.

The embedding search in this module is the reference oracle: a plain
backtracking search over dicts and sets, independent of the optimized
kernels in ``sparsewitness.hotpath``.  Tests use it to cross-check the
fast paths.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

DEFAULT_BUDGET = 10**8

#: An embedding is a tuple whose index is the pattern vertex and whose
#: value is the host vertex it maps to.
Embedding = tuple[int, ...]


class GraphError(ValueError):
    """Malformed graph input (bad vertex id, self-loop, bad edge list text)."""


class BudgetExceededError(RuntimeError):
    """A search ran out of its node-expansion budget before finishing."""


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "m", "adj", "_bits")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v not in adj[u]:
                adj[u].add(v)
                adj[v].add(u)
                m += 1
        self.n = n
        self.m = m
        self.adj = adj
        self._bits: list[int] | None = None

    @classmethod
    def from_arrays(cls, n: int, us, vs) -> "Graph":
        """Trusted fast path used by the sampler: no validation, no dedup."""
        g = cls.__new__(cls)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in zip(us, vs):
            u, v = int(u), int(v)  # numpy scalars overflow in bitmask shifts
            adj[u].add(v)
            adj[v].add(u)
        g.n = n
        g.m = sum(len(s) for s in adj) // 2
        g.adj = adj
        g._bits = None
        return g

    @property
    def bits(self) -> list[int]:
        """Adjacency rows as integer bitmasks, built on first use."""
        if self._bits is None:
            rows = [0] * self.n
            for u, nbrs in enumerate(self.adj):
                row = 0
                for v in nbrs:
                    row |= 1 << v
                rows[u] = row
            self._bits = rows
        return self._bits

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges())

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabeled to 0..k-1 in the given vertex order."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("duplicate vertices in induced-subgraph selection")
        edges = []
        for i, v in enumerate(vertices):
            for w in self.adj[v]:
                j = index.get(w)
                if j is not None and i < j:
                    edges.append((i, j))
        return Graph(len(vertices), edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.edges()))))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def new_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph, validating vertex ids and rejecting self-loops."""
    return Graph(n, edges)


def mask_of(vertices: Iterable[int], n: int | None = None) -> int:
    """Pack a vertex collection into a bitmask (validating range if n given)."""
    mask = 0
    for v in vertices:
        if n is not None and not (0 <= v < n):
            raise GraphError(f"vertex {v} out of range")
        mask |= 1 << v
    return mask


def iter_mask(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_dominating(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff every vertex outside the set has a neighbor inside it."""
    mask = mask_of(vertices, g.n)
    bits = g.bits
    for v in range(g.n):
        if not (mask >> v) & 1 and not bits[v] & mask:
            return False
    return True


def _oracle_order(pattern: Graph) -> list[int]:
    """Most-constrained-first: start at a max-degree vertex, then always
    extend by the unplaced vertex with the most placed neighbors."""
    if pattern.n == 0:
        return []
    order = [max(range(pattern.n), key=pattern.degree)]
    placed = set(order)
    while len(order) < pattern.n:
        best = max(
            (v for v in range(pattern.n) if v not in placed),
            key=lambda v: (len(pattern.adj[v] & placed), pattern.degree(v)),
        )
        order.append(best)
        placed.add(best)
    return order


def induced_embeddings(
    pattern: Graph,
    host: Graph,
    limit: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[Embedding]:
    """All injective maps pattern -> host preserving both adjacency and
    non-adjacency (induced copies), as labeled embeddings.

    Raises BudgetExceededError once more than `budget` candidate vertices
    have been tried.
    """
    np_, nh = pattern.n, host.n
    if np_ > nh:
        return []
    order = _oracle_order(pattern)
    # Candidate prefilter by degree; when sizes match an embedding is an
    # isomorphism, so degrees must agree exactly.
    exact = np_ == nh
    host_by_deg = sorted(range(nh), key=host.degree)
    candidates = []
    for pv in order:
        d = pattern.degree(pv)
        if exact:
            candidates.append([hv for hv in host_by_deg if host.degree(hv) == d])
        else:
            candidates.append([hv for hv in host_by_deg if host.degree(hv) >= d])

    results: list[Embedding] = []
    assign: dict[int, int] = {}
    used: set[int] = set()
    expansions = 0

    def extend(k: int) -> bool:
        nonlocal expansions
        if k == np_:
            emb = [0] * np_
            for pv, hv in assign.items():
                emb[pv] = hv
            results.append(tuple(emb))
            return limit is not None and len(results) >= limit
        pv = order[k]
        nbrs = pattern.adj[pv]
        for hv in candidates[k]:
            if hv in used:
                continue
            expansions += 1
            if expansions > budget:
                raise BudgetExceededError(
                    f"induced_embeddings exceeded budget of {budget} expansions"
                )
            ok = True
            for qv, qh in assign.items():
                if (qv in nbrs) != host.has_edge(hv, qh):
                    ok = False
                    break
            if not ok:
                continue
            assign[pv] = hv
            used.add(hv)
            if extend(k + 1):
                return True
            del assign[pv]
            used.discard(hv)
        return False

    extend(0)
    return results


def automorphism_count(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Number of adjacency-preserving vertex permutations.

    Candidate classes are refined by (degree, sorted neighbor degrees)
    before the backtracking search.
    """
    sig = [
        (g.degree(v), tuple(sorted(g.degree(w) for w in g.adj[v])))
        for v in range(g.n)
    ]
    order = _oracle_order(g)
    candidates = [[hv for hv in range(g.n) if sig[hv] == sig[pv]] for pv in order]

    count = 0
    assign: dict[int, int] = {}
    used: set[int] = set()
    expansions = 0

    def extend(k: int) -> None:
        nonlocal count, expansions
        if k == g.n:
            count += 1
            return
        pv = order[k]
        nbrs = g.adj[pv]
        for hv in candidates[k]:
            if hv in used:
                continue
            expansions += 1
            if expansions > budget:
                raise BudgetExceededError(
                    f"automorphism_count exceeded budget of {budget} expansions"
                )
            ok = True
            for qv, qh in assign.items():
                if (qv in nbrs) != g.has_edge(hv, qh):
                    ok = False
                    break
            if not ok:
                continue
            assign[pv] = hv
            used.add(hv)
            extend(k + 1)
            del assign[pv]
            used.discard(hv)

    extend(0)
    return count


def write_edge_list(g: Graph) -> str:
    """Canonical text form: header ``n m`` then one ``u v`` line per edge
    with u < v, edges sorted lexicographically."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    """Parse the canonical edge-list format, validating the header counts."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"bad header line: {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphError(f"bad header line: {lines[0]!r}") from None
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    g = Graph(n, edges)
    if g.m != m or len(edges) != m:
        raise GraphError(f"header claims {m} edges, found {len(edges)}")
    return g
