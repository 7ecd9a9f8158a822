"""Witness graph families and the (gamma, r) graph process.

The building block is the gamma-product: two rooted trees are laid side by
side and every pair of vertices at equal depth is joined by a fresh path
with gamma inner vertices.  The plain witness graph W(a) is the
gamma-product of a path on ``a`` vertices with a perfect r-ary tree on
omega(a) = (r^a - 1)/(r - 1) vertices.

The starred witness graph W*(a) glues together two such products:

* W(a) itself, on the path F1 and the r-ary tree F2;
* a second product on a path TF1 with omega(a) vertices and a perfect
  r-ary tree TF2 with omega(omega(a)) vertices;
* connector paths matching the k-th vertex of F2 in breadth-first order
  with the k-th vertex of TF1, one path per rank (the rank-bijective
  ordered product).

With that third block W*(1) collapses to a path on 3*gamma + 4 vertices,
and the graph process below reproduces every W*(a) exactly.

The process grows W*(1) one step at a time; which rule applies is a
function of the current vertex count alone:

* at count V(a): extend the F1 path by one vertex;
* then, for each sub-round j = 0..r^a - 1: grow one new F2 leaf and wire
  it to the new F1 end (gamma+1 vertices); extend TF1 by one vertex wired
  back to that leaf (gamma+1 vertices); grow r^{omega(a)+j} new TF2
  leaves, each wired to the new TF1 end (gamma+1 vertices each).

Parents for new tree leaves are chosen breadth-first among vertices one
level up that still have fewer than r children, which reproduces the
perfect-tree numbering.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .graphs import BudgetExceededError, DEFAULT_BUDGET, Graph, GraphError
from . import hotpath

ROLE_F1 = "F1"
ROLE_F2 = "F2"
ROLE_TF1 = "TF1"
ROLE_TF2 = "TF2"
ROLE_CONNECTOR = "CONN"


class WitnessError(ValueError):
    """Bad family parameters (a < 1, gamma < 0, r < 2) or malformed input."""


class ProcessError(ValueError):
    """Process state whose vertex count matches no growth rule."""


def omega(a: int, r: int) -> int:
    """Vertex count of the perfect r-ary tree of depth a - 1."""
    if a < 0:
        raise WitnessError("a must be nonnegative")
    if r < 2:
        raise WitnessError("r must be at least 2")
    return (r**a - 1) // (r - 1)


def _check_params(a: int, gamma: int, r: int) -> None:
    if a < 1:
        raise WitnessError("a must be at least 1")
    if gamma < 0:
        raise WitnessError("gamma must be nonnegative")
    if r < 2:
        raise WitnessError("r must be at least 2")


def w_vertex_count(a: int, gamma: int, r: int) -> int:
    return a + (gamma + 1) * omega(a, r)


def w_edge_count(a: int, gamma: int, r: int) -> int:
    return a + (gamma + 2) * omega(a, r) - 2


def w_star_vertex_count(a: int, gamma: int, r: int) -> int:
    return a + 2 * (gamma + 1) * omega(a, r) + (gamma + 1) * omega(omega(a, r), r)


def w_star_edge_count(a: int, gamma: int, r: int) -> int:
    return a + 2 * (gamma + 2) * omega(a, r) + (gamma + 2) * omega(omega(a, r), r) - 4


@dataclass(frozen=True)
class RootedTree:
    """A tree given as a Graph plus a distinguished root."""

    graph: Graph
    root: int

    def depths(self) -> list[int]:
        depth = [-1] * self.graph.n
        depth[self.root] = 0
        frontier = [self.root]
        while frontier:
            nxt = []
            for v in frontier:
                for w in self.graph.adj[v]:
                    if depth[w] < 0:
                        depth[w] = depth[v] + 1
                        nxt.append(w)
            frontier = nxt
        if min(depth) < 0 or self.graph.m != self.graph.n - 1:
            raise WitnessError("rooted tree input is not a tree")
        return depth


class _Builder:
    """Accumulates vertices with roles and edges; connectors are paths
    with gamma fresh inner vertices (a direct edge when gamma == 0)."""

    def __init__(self, gamma: int):
        self.gamma = gamma
        self.roles: list[str] = []
        self.edges: list[tuple[int, int]] = []

    def vertex(self, role: str) -> int:
        self.roles.append(role)
        return len(self.roles) - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def connector(self, u: int, v: int) -> None:
        prev = u
        for _ in range(self.gamma):
            w = self.vertex(ROLE_CONNECTOR)
            self.edge(prev, w)
            prev = w
        self.edge(prev, v)

    def graph(self) -> Graph:
        return Graph(len(self.roles), self.edges)


def gamma_product(f1: RootedTree, f2: RootedTree, gamma: int) -> Graph:
    """Join every equal-depth pair (u in f1, v in f2) by a fresh path with
    gamma inner vertices; the two trees keep their own edges."""
    if gamma < 0:
        raise WitnessError("gamma must be nonnegative")
    d1, d2 = f1.depths(), f2.depths()
    b = _Builder(gamma)
    map1 = [b.vertex(ROLE_F1) for _ in range(f1.graph.n)]
    map2 = [b.vertex(ROLE_F2) for _ in range(f2.graph.n)]
    for u, v in f1.graph.edges():
        b.edge(map1[u], map1[v])
    for u, v in f2.graph.edges():
        b.edge(map2[u], map2[v])
    for u in range(f1.graph.n):
        for v in range(f2.graph.n):
            if d1[u] == d2[v]:
                b.connector(map1[u], map2[v])
    return b.graph()


def ordered_gamma_product(
    f1: Graph,
    levels1: list[list[int]],
    f2: Graph,
    levels2: list[list[int]],
    gamma: int,
) -> Graph:
    """Gamma-product driven by explicit level orders: vertices are paired
    when they sit at the same level index.  A linear order (all levels
    singletons) pairs by rank; coarser orders pair whole levels."""
    if gamma < 0:
        raise WitnessError("gamma must be nonnegative")
    for g, levels in ((f1, levels1), (f2, levels2)):
        flat = [v for lvl in levels for v in lvl]
        if sorted(flat) != list(range(g.n)):
            raise WitnessError("levels must partition the vertex set")
        if not levels or len(levels[0]) != 1:
            raise WitnessError("order lacks a unique minimum")
    b = _Builder(gamma)
    map1 = [b.vertex(ROLE_F1) for _ in range(f1.n)]
    map2 = [b.vertex(ROLE_F2) for _ in range(f2.n)]
    for u, v in f1.edges():
        b.edge(map1[u], map1[v])
    for u, v in f2.edges():
        b.edge(map2[u], map2[v])
    for lvl1, lvl2 in zip(levels1, levels2):
        for u in lvl1:
            for v in lvl2:
                b.connector(map1[u], map2[v])
    return b.graph()


@dataclass(frozen=True)
class WitnessGraph:
    """A witness graph with its construction bookkeeping.

    f1/tf1 hold path vertices in path order; f2/tf2 hold tree vertices in
    breadth-first order.  Roots are f1[0], f2[0], tf1[0], tf2[0].
    """

    graph: Graph
    roles: tuple[str, ...]
    a: int
    gamma: int
    r: int
    starred: bool
    f1: tuple[int, ...]
    f2: tuple[int, ...]
    tf1: tuple[int, ...] = ()
    tf2: tuple[int, ...] = ()

    def role_lines(self) -> str:
        return "".join(f"{v} {role}\n" for v, role in enumerate(self.roles))


def _tree_depth_of_rank(k: int, r: int) -> int:
    # Depth of the k-th vertex (0-based, breadth-first) of a perfect r-ary tree.
    d, level_start, level_size = 0, 0, 1
    while k >= level_start + level_size:
        level_start += level_size
        level_size *= r
        d += 1
    return d


def build_W(a: int, gamma: int, r: int) -> WitnessGraph:
    """Witness graph W(a): gamma-product of the path on a vertices with
    the perfect r-ary tree on omega(a) vertices."""
    _check_params(a, gamma, r)
    w = omega(a, r)
    b = _Builder(gamma)
    f1 = [b.vertex(ROLE_F1) for _ in range(a)]
    f2 = [b.vertex(ROLE_F2) for _ in range(w)]
    for i in range(a - 1):
        b.edge(f1[i], f1[i + 1])
    for k in range(1, w):
        b.edge(f2[(k - 1) // r], f2[k])
    for k in range(w):
        b.connector(f1[_tree_depth_of_rank(k, r)], f2[k])
    g = b.graph()
    assert g.n == w_vertex_count(a, gamma, r)
    assert g.m == w_edge_count(a, gamma, r)
    return WitnessGraph(g, tuple(b.roles), a, gamma, r, False, tuple(f1), tuple(f2))


def build_W_star(a: int, gamma: int, r: int) -> WitnessGraph:
    """Starred witness graph W*(a): W(a) on (F1, F2), a second product on
    (TF1, TF2), and one connector path per breadth-first rank matching F2
    with TF1."""
    _check_params(a, gamma, r)
    w = omega(a, r)
    ww = omega(w, r)
    b = _Builder(gamma)
    f1 = [b.vertex(ROLE_F1) for _ in range(a)]
    f2 = [b.vertex(ROLE_F2) for _ in range(w)]
    tf1 = [b.vertex(ROLE_TF1) for _ in range(w)]
    tf2 = [b.vertex(ROLE_TF2) for _ in range(ww)]
    for i in range(a - 1):
        b.edge(f1[i], f1[i + 1])
    for k in range(1, w):
        b.edge(f2[(k - 1) // r], f2[k])
    for i in range(w - 1):
        b.edge(tf1[i], tf1[i + 1])
    for k in range(1, ww):
        b.edge(tf2[(k - 1) // r], tf2[k])
    for k in range(w):
        b.connector(f1[_tree_depth_of_rank(k, r)], f2[k])
    for k in range(w):
        b.connector(f2[k], tf1[k])
    for k in range(ww):
        b.connector(tf1[_tree_depth_of_rank(k, r)], tf2[k])
    g = b.graph()
    assert g.n == w_star_vertex_count(a, gamma, r)
    assert g.m == w_star_edge_count(a, gamma, r)
    return WitnessGraph(
        g, tuple(b.roles), a, gamma, r, True,
        tuple(f1), tuple(f2), tuple(tf1), tuple(tf2),
    )


@dataclass(frozen=True)
class ProcessState:
    """Snapshot of the graph process.

    floor is the largest a with a completed W*(a) inside the snapshot;
    step counts applied growth steps.  f2_depth/tf2_depth and the child
    counters track the partially grown trees.
    """

    gamma: int
    r: int
    graph: Graph
    roles: tuple[str, ...]
    floor: int
    step: int
    f1: tuple[int, ...]
    f2: tuple[int, ...]
    tf1: tuple[int, ...]
    tf2: tuple[int, ...]
    f2_depth: tuple[int, ...]
    tf2_depth: tuple[int, ...]
    f2_children: tuple[int, ...]
    tf2_children: tuple[int, ...]
    last_f2: int = -1

    def role_lines(self) -> str:
        return "".join(f"{v} {role}\n" for v, role in enumerate(self.roles))


def bookkeeping_vertex_count(i: int, a: int, gamma: int) -> int:
    """Diagnostic closed form (gamma + 1) * (i + 2) + a for the vertex
    count after step i at floor a; exposed for inspection only, it does
    not drive the rule schedule."""
    return (gamma + 1) * (i + 2) + a


def process_init(gamma: int, r: int) -> ProcessState:
    """Initial state: W*(1), a path on 3 * gamma + 4 vertices."""
    ws = build_W_star(1, gamma, r)
    return ProcessState(
        gamma=gamma,
        r=r,
        graph=ws.graph,
        roles=ws.roles,
        floor=1,
        step=0,
        f1=ws.f1,
        f2=ws.f2,
        tf1=ws.tf1,
        tf2=ws.tf2,
        f2_depth=(0,),
        tf2_depth=(0,),
        f2_children=(0,),
        tf2_children=(0,),
    )


def _classify(v: int, a: int, gamma: int, r: int):
    """Map the current vertex count to the unique applicable rule."""
    base = w_star_vertex_count(a, gamma, r)
    if v == base:
        return ("extend_f1",)
    d = v - base - 1
    if d < 0 or d % (gamma + 1) != 0:
        raise ProcessError(f"vertex count {v} matches no rule at floor {a}")
    q = d // (gamma + 1)
    w = omega(a, r)
    offset = 0  # 2*j + sum of r^(omega(a)+t) for t < j
    for j in range(r**a):
        width = r ** (w + j)
        if q == offset:
            return ("extend_f2", j)
        if q == offset + 1:
            return ("extend_tf1", j)
        if offset + 2 <= q < offset + 2 + width:
            return ("extend_tf2", j, q - offset - 2)
        offset += 2 + width
        if q < offset:
            break
    raise ProcessError(f"vertex count {v} matches no rule at floor {a}")


def process_step(state: ProcessState) -> ProcessState:
    """Apply the unique growth rule for the current vertex count and
    return the new state (states are never mutated in place)."""
    gamma, r, a = state.gamma, state.r, state.floor
    rule = _classify(state.graph.n, a, gamma, r)
    roles = list(state.roles)
    edges = list(state.graph.edges())
    f1, f2, tf1, tf2 = list(state.f1), list(state.f2), list(state.tf1), list(state.tf2)
    f2_depth, tf2_depth = list(state.f2_depth), list(state.tf2_depth)
    f2_children, tf2_children = list(state.f2_children), list(state.tf2_children)
    last_f2 = state.last_f2

    def new_vertex(role: str) -> int:
        roles.append(role)
        return len(roles) - 1

    def connector(u: int, v: int) -> None:
        prev = u
        for _ in range(gamma):
            w = new_vertex(ROLE_CONNECTOR)
            edges.append((prev, w))
            prev = w
        edges.append((prev, v))

    def bfs_first_open(ids, depths, children, want_depth):
        for idx, vid in enumerate(ids):
            if depths[idx] == want_depth and children[idx] < r:
                return idx, vid
        raise ProcessError(f"no open parent at depth {want_depth}")

    kind = rule[0]
    if kind == "extend_f1":
        v_new = new_vertex(ROLE_F1)
        edges.append((f1[-1], v_new))
        f1.append(v_new)
    elif kind == "extend_f2":
        idx, parent = bfs_first_open(f2, f2_depth, f2_children, a - 1)
        u_new = new_vertex(ROLE_F2)
        edges.append((parent, u_new))
        f2.append(u_new)
        f2_depth.append(a)
        f2_children[idx] += 1
        f2_children.append(0)
        connector(f1[-1], u_new)
        last_f2 = u_new
    elif kind == "extend_tf1":
        v_new = new_vertex(ROLE_TF1)
        edges.append((tf1[-1], v_new))
        tf1.append(v_new)
        if last_f2 < 0:
            raise ProcessError("path extension before any tree leaf was added")
        connector(v_new, last_f2)
    else:  # extend_tf2
        j = rule[1]
        idx, parent = bfs_first_open(
            tf2, tf2_depth, tf2_children, omega(a, r) + j - 1
        )
        u_new = new_vertex(ROLE_TF2)
        edges.append((parent, u_new))
        tf2.append(u_new)
        tf2_depth.append(omega(a, r) + j)
        tf2_children[idx] += 1
        tf2_children.append(0)
        connector(tf1[-1], u_new)

    graph = Graph(len(roles), edges)
    floor = a + 1 if graph.n == w_star_vertex_count(a + 1, gamma, r) else a
    return ProcessState(
        gamma=gamma,
        r=r,
        graph=graph,
        roles=tuple(roles),
        floor=floor,
        step=state.step + 1,
        f1=tuple(f1),
        f2=tuple(f2),
        tf1=tuple(tf1),
        tf2=tuple(tf2),
        f2_depth=tuple(f2_depth),
        tf2_depth=tuple(tf2_depth),
        f2_children=tuple(f2_children),
        tf2_children=tuple(tf2_children),
        last_f2=last_f2,
    )


def process_run(gamma: int, r: int, steps: int) -> ProcessState:
    state = process_init(gamma, r)
    for _ in range(steps):
        state = process_step(state)
    return state


@dataclass(frozen=True)
class PropertyWitness:
    """Outcome of the (gamma, r) property check, truthy when it holds."""

    holds: bool
    a: int | None = None
    embedding: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def has_gamma_r_property(
    g: Graph, gamma: int, r: int, budget: int = DEFAULT_BUDGET
) -> PropertyWitness:
    """True iff some even a admits an induced copy of W*(a) in g that the
    process cannot extend: no vertex outside the copy is adjacent to
    exactly the image of the F1 path end (the rule-one attachment point).

    Any induced copy of W*(a) is a valid endpoint of a process chain (all
    process edges touch new vertices only), so only the extension check
    varies over copies.
    """
    a = 2
    seen: set[tuple[frozenset[int], int]] = set()
    while w_star_vertex_count(a, gamma, r) <= g.n:
        ws = build_W_star(a, gamma, r)
        res = hotpath.embed_search(
            ws.graph, g, mode=hotpath.MODE_COLLECT, budget=budget,
            raise_on_budget=True,
        )
        va = ws.f1[-1]
        for emb in res.embeddings:
            image = frozenset(emb)
            key = (image, emb[va])
            if key in seen:
                continue
            seen.add(key)
            mask = 0
            for v in image:
                mask |= 1 << v
            target = 1 << emb[va]
            extendable = any(
                g.bits[w] & mask == target
                for w in range(g.n)
                if not (mask >> w) & 1
            )
            if not extendable:
                return PropertyWitness(True, a, emb)
        a += 2
    return PropertyWitness(False)
