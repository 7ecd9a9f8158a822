"""Pure-Python induced-embedding search kernel.

Same contract as the compiled kernel in ``_speedups``: bitset backtracking
over host adjacency masks.  Masks are arbitrary-width Python ints here, so
this backend has no size limits and serves as the fallback.
"""

MODE_FIND = 0
MODE_COUNT = 1
MODE_COLLECT = 2
MODE_FIND_DOMINATING = 3
MODE_COUNT_DOMINATING = 4


def search(n_p, pattern_masks, n_h, host_masks, order, base_masks, mode, limit, budget):
    """Backtracking search for induced copies of the pattern in the host.

    pattern_masks: pattern adjacency rows as bitmasks over pattern vertices.
    host_masks: host adjacency rows as bitmasks over host vertices.
    order: permutation of pattern vertices giving the assignment order.
    base_masks: per pattern vertex, bitmask of allowed host images.

    Returns (embeddings, count, expansions, exceeded) where embeddings[i] is
    a tuple indexed by *pattern vertex* (not search position).  In the two
    dominating modes a complete assignment only counts when its image set
    dominates the host.
    """
    if n_p == 0:
        emb = [()] if mode in (MODE_FIND, MODE_COLLECT) else []
        return emb, 1, 0, False
    if n_p > n_h:
        return [], 0, 0, False

    full = (1 << n_h) - 1
    dominating = mode in (MODE_FIND_DOMINATING, MODE_COUNT_DOMINATING)
    counting = mode in (MODE_COUNT, MODE_COUNT_DOMINATING)
    finding = mode in (MODE_FIND, MODE_FIND_DOMINATING)
    # Precompute, per search depth, which earlier depths are pattern
    # neighbors of the vertex placed at that depth.
    adj_flags = []
    for k, pv in enumerate(order):
        row = pattern_masks[pv]
        adj_flags.append([(row >> order[j]) & 1 for j in range(k)])

    assign = [0] * n_p
    embeddings = []
    count = 0
    expansions = 0
    exceeded = False

    def dominates(used):
        outside = full & ~used
        while outside:
            low = outside & -outside
            v = low.bit_length() - 1
            if not host_masks[v] & used:
                return False
            outside ^= low
        return True

    def descend(k, used):
        nonlocal count, expansions, exceeded
        cand = base_masks[order[k]] & ~used
        flags = adj_flags[k]
        for j in range(k):
            row = host_masks[assign[j]]
            cand &= row if flags[j] else ~row
        if k == n_p - 1 and mode == MODE_COUNT:
            # Leaf shortcut: every remaining candidate completes a copy.
            c = cand.bit_count()
            count += c
            expansions += c
            if expansions > budget:
                exceeded = True
                return True
            return False
        while cand:
            low = cand & -cand
            cand ^= low
            expansions += 1
            if expansions > budget:
                exceeded = True
                return True
            v = low.bit_length() - 1
            assign[k] = v
            if k == n_p - 1:
                new_used = used | low
                if dominating and not dominates(new_used):
                    continue
                count += 1
                if not counting:
                    emb = [0] * n_p
                    for i in range(n_p):
                        emb[order[i]] = assign[i]
                    embeddings.append(tuple(emb))
                if finding or (mode == MODE_COLLECT and limit and count >= limit):
                    return True
            else:
                if descend(k + 1, used | low):
                    return True
        return False

    descend(0, 0)
    return embeddings, count, expansions, exceeded
