"""Detection of induced witness copies, dominating sets, and connector
structure in host graphs.

All searches run on the hotpath kernel; the search order anchors on the
r-ary tree root of the pattern (its rarest high-degree vertex) and then
expands breadth-first, which keeps every prefix of the pattern connected.
Path patterns (a = 1) start from a path endpoint instead.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import hotpath, witness
from .graphs import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    Embedding,
    Graph,
    mask_of,
)

WILSON_Z = 1.959963984540054  # two-sided 95%


@dataclass(frozen=True)
class SearchBudget:
    """Resource limits for a detection run."""

    max_expansions: int = DEFAULT_BUDGET
    limit: int | None = None


@dataclass(frozen=True)
class DetectionResult:
    """Outcome of a copy search."""

    outcome: str  # "found" | "none" | "budget_exceeded"
    a: int | None = None
    embedding: Embedding | None = None
    count: int = 0
    expansions: int = 0

    def __bool__(self) -> bool:
        return self.outcome == "found"


def _pattern_order(ws: witness.WitnessGraph) -> list[int]:
    if ws.a == 1 and not ws.starred:
        # The pattern is a bare path: walk it from one endpoint.
        g = ws.graph
        start = next(v for v in range(g.n) if g.degree(v) == 1)
        return hotpath.default_order(g, start=start)
    return hotpath.default_order(ws.graph, start=ws.f2[0])


def find_induced_W(
    g: Graph,
    a: int,
    gamma: int,
    r: int,
    mode: str = "find",
    budget: SearchBudget | None = None,
    starred: bool = False,
) -> DetectionResult:
    """Search for induced copies of W(a) (or W*(a)) in g.

    mode "find" stops at the first copy; "count" counts all labeled
    embeddings.
    """
    budget = budget or SearchBudget()
    build = witness.build_W_star if starred else witness.build_W
    ws = build(a, gamma, r)
    if ws.graph.n > g.n:
        return DetectionResult("none", a=a)
    kernel_mode = hotpath.MODE_FIND if mode == "find" else hotpath.MODE_COUNT
    res = hotpath.embed_search(
        ws.graph, g, mode=kernel_mode, order=_pattern_order(ws),
        budget=budget.max_expansions,
    )
    if res.exceeded:
        return DetectionResult("budget_exceeded", a=a, count=res.count,
                               expansions=res.expansions)
    if res.count == 0:
        return DetectionResult("none", a=a, expansions=res.expansions)
    emb = res.embeddings[0] if res.embeddings else None
    return DetectionResult("found", a=a, embedding=emb, count=res.count,
                           expansions=res.expansions)


def find_dominating_induced_W(
    g: Graph,
    gamma: int,
    r: int,
    a_range: tuple[int, int],
    mode: str = "find",
    budget: SearchBudget | None = None,
) -> DetectionResult:
    """First dominating induced W(a) copy, trying a from a_range[1] down to
    a_range[0].  Domination is checked once per completed candidate, inside
    the kernel.  In "count" mode, counts dominating labeled embeddings
    summed over the range.
    """
    budget = budget or SearchBudget()
    a_lo, a_hi = a_range
    if a_lo < 1 or a_hi < a_lo:
        raise ValueError(f"bad a_range {a_range}")
    remaining = budget.max_expansions
    total = 0
    expansions = 0
    exceeded = False
    for a in range(a_hi, a_lo - 1, -1):
        ws = witness.build_W(a, gamma, r)
        if ws.graph.n > g.n:
            continue
        kernel_mode = (
            hotpath.MODE_FIND_DOMINATING if mode == "find"
            else hotpath.MODE_COUNT_DOMINATING
        )
        res = hotpath.embed_search(
            ws.graph, g, mode=kernel_mode, order=_pattern_order(ws),
            budget=remaining,
        )
        expansions += res.expansions
        remaining -= res.expansions
        total += res.count
        if res.exceeded:
            exceeded = True
            break
        if mode == "find" and res.count:
            return DetectionResult("found", a=a, embedding=res.embeddings[0],
                                   count=res.count, expansions=expansions)
    if exceeded:
        return DetectionResult("budget_exceeded", count=total, expansions=expansions)
    if mode == "count" and total:
        return DetectionResult("found", count=total, expansions=expansions)
    return DetectionResult("none", count=total, expansions=expansions)


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass(frozen=True)
class DominatingSetVerdict:
    """exists is definite in exact mode; in sampled mode it reflects the
    trials only and the Wilson interval qualifies the fraction."""

    exists: bool
    mode: str
    checked: int
    fraction: float | None = None
    ci: tuple[float, float] | None = None
    witness: tuple[int, ...] | None = None
    exhausted: bool = True

    def __bool__(self) -> bool:
        return self.exists


def exists_dominating_set_of_size(
    g: Graph,
    k: int,
    mode: str = "exact",
    budget: int = DEFAULT_BUDGET,
    trials: int = 10000,
    seed: int = 0,
) -> DominatingSetVerdict:
    """Decide (exact) or estimate (sampled) whether some k-subset dominates.

    A set S dominates iff the union of closed neighborhoods N[s], s in S,
    covers every vertex.
    """
    if not 0 <= k <= g.n:
        raise ValueError(f"k={k} out of range")
    closed = [g.bits[v] | (1 << v) for v in range(g.n)]
    full = (1 << g.n) - 1
    if mode == "exact":
        checked = 0
        for combo in itertools.combinations(range(g.n), k):
            checked += 1
            if checked > budget:
                return DominatingSetVerdict(False, "exact", checked - 1,
                                            exhausted=False)
            cover = 0
            for v in combo:
                cover |= closed[v]
            if cover == full:
                return DominatingSetVerdict(True, "exact", checked, witness=combo)
        return DominatingSetVerdict(False, "exact", checked)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    import numpy as np

    rng = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), 0]))
    hits = 0
    found = None
    for _ in range(trials):
        combo = rng.choice(g.n, size=k, replace=False)
        cover = 0
        for v in combo:
            cover |= closed[int(v)]
        if cover == full:
            hits += 1
            if found is None:
                found = tuple(sorted(int(v) for v in combo))
    return DominatingSetVerdict(
        hits > 0, "sampled", trials, fraction=hits / trials,
        ci=wilson_interval(hits, trials), witness=found,
    )


def check_connector_property(
    g: Graph,
    vertices,
    gamma: int,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """True iff for every ordered pair (u, v) of distinct vertices in the
    given set there is an induced path w_1..w_{gamma+1} outside the set with
    w_1 adjacent to u and to no other set vertex, w_{gamma+1} adjacent to v
    and to no other set vertex, and inner vertices adjacent to no set vertex.

    For gamma = 0 such a path would need a single vertex adjacent to u only
    and to v only at once, which is impossible for u != v.
    """
    if gamma < 1:
        raise ValueError("connector property needs gamma >= 1")
    vs = sorted(set(vertices))
    vmask = mask_of(vs, g.n)
    bits = g.bits
    expansions = 0

    def attach_ok(w: int, anchor: int) -> bool:
        return bits[w] & vmask == 1 << anchor

    def connects(u: int, v: int) -> bool:
        nonlocal expansions
        length = gamma + 1
        starts = [w for w in range(g.n) if not (vmask >> w) & 1 and attach_ok(w, u)]

        def extend(path: list[int], pmask: int) -> bool:
            nonlocal expansions
            k = len(path)
            if k == length:
                return attach_ok(path[-1], v)
            prev_mask = mask_of(path[:-1])
            for w in g.adj[path[-1]]:
                expansions += 1
                if expansions > budget:
                    raise BudgetExceededError(
                        f"connector search exceeded budget of {budget}"
                    )
                if (vmask >> w) & 1 or (pmask >> w) & 1:
                    continue
                if bits[w] & prev_mask:
                    continue  # would chord the path
                if k < length - 1 and bits[w] & vmask:
                    continue  # inner vertices must avoid the set
                if extend(path + [w], pmask | (1 << w)):
                    return True
            return False

        for s in starts:
            expansions += 1
            if expansions > budget:
                raise BudgetExceededError(
                    f"connector search exceeded budget of {budget}"
                )
            if length == 1:
                if attach_ok(s, v):
                    return True
                continue
            if extend([s], 1 << s):
                return True
        return False

    return all(connects(u, v) for u in vs for v in vs if u != v)
