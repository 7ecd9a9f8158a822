# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled induced-embedding search kernel.

Bitset backtracking over uint64 words; same contract as ``_pure.search``.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define SW_POPCOUNT(x) __builtin_popcountll(x)
    #define SW_CTZ(x) __builtin_ctzll(x)
    #else
    static int SW_POPCOUNT(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; c++; }
        return c;
    }
    static int SW_CTZ(unsigned long long x) {
        int c = 0;
        while (!(x & 1ULL)) { x >>= 1; c++; }
        return c;
    }
    #endif
    """
    int SW_POPCOUNT(unsigned long long x) nogil
    int SW_CTZ(unsigned long long x) nogil

MODE_FIND = 0
MODE_COUNT = 1
MODE_COLLECT = 2
MODE_FIND_DOMINATING = 3
MODE_COUNT_DOMINATING = 4

_M64 = (1 << 64) - 1

cdef void _pack(object mask, unsigned long long *out, int words):
    cdef int w
    cdef object m = mask
    for w in range(words):
        out[w] = <unsigned long long>(m & _M64)
        m = m >> 64


cdef bint _dominates(unsigned long long *host, unsigned long long *used,
                     int n_h, int words) nogil:
    cdef int v, w
    cdef unsigned long long inter
    for v in range(n_h):
        if used[v >> 6] & (1ULL << (v & 63)):
            continue
        inter = 0
        for w in range(words):
            inter |= host[v * words + w] & used[w]
        if inter == 0:
            return False
    return True


cdef void _fill(unsigned long long *cand, unsigned long long *base,
                unsigned long long *host, unsigned long long *pat,
                unsigned long long *used, int *ordr, int *assign,
                int k, int words, int pwords) nogil:
    # Candidates at depth k: allowed images of order[k], not yet used,
    # adjacent to images of earlier pattern neighbors and non-adjacent to
    # images of earlier non-neighbors.
    cdef int j, w, pv, qv
    cdef unsigned long long *row
    pv = ordr[k]
    for w in range(words):
        cand[k * words + w] = base[pv * words + w] & ~used[k * words + w]
    for j in range(k):
        qv = ordr[j]
        row = host + assign[j] * words
        if (pat[pv * pwords + (qv >> 6)] >> (qv & 63)) & 1ULL:
            for w in range(words):
                cand[k * words + w] &= row[w]
        else:
            for w in range(words):
                cand[k * words + w] &= ~row[w]


def search(int n_p, pattern_masks, int n_h, host_masks, order, base_masks,
           int mode, limit, long long budget):
    """See ``sparsewitness.hotpath._pure.search`` for the contract."""
    if n_p == 0:
        return ([()] if mode in (MODE_FIND, MODE_COLLECT) else []), 1, 0, False
    if n_p > n_h:
        return [], 0, 0, False

    cdef int words = (n_h + 63) >> 6
    cdef int pwords = (n_p + 63) >> 6
    cdef long long lim = -1 if limit is None else <long long>limit
    cdef bint dominating = mode == MODE_FIND_DOMINATING or mode == MODE_COUNT_DOMINATING
    cdef bint counting = mode == MODE_COUNT or mode == MODE_COUNT_DOMINATING
    cdef bint finding = mode == MODE_FIND or mode == MODE_FIND_DOMINATING

    cdef unsigned long long *host = <unsigned long long *>malloc(n_h * words * 8)
    cdef unsigned long long *base = <unsigned long long *>malloc(n_p * words * 8)
    cdef unsigned long long *pat = <unsigned long long *>malloc(n_p * pwords * 8)
    cdef unsigned long long *cand = <unsigned long long *>malloc(n_p * words * 8)
    cdef unsigned long long *used = <unsigned long long *>malloc((n_p + 1) * words * 8)
    cdef int *assign = <int *>malloc(n_p * sizeof(int))
    cdef int *ordr = <int *>malloc(n_p * sizeof(int))
    if not (host and base and pat and cand and used and assign and ordr):
        if host: free(host)
        if base: free(base)
        if pat: free(pat)
        if cand: free(cand)
        if used: free(used)
        if assign: free(assign)
        if ordr: free(ordr)
        raise MemoryError()

    cdef int i, k, w, v
    cdef unsigned long long word
    cdef long long count = 0
    cdef long long expansions = 0
    cdef bint exceeded = False
    cdef bint stop = False
    embeddings = []

    try:
        for i in range(n_h):
            _pack(host_masks[i], host + i * words, words)
        for i in range(n_p):
            _pack(base_masks[i], base + i * words, words)
            _pack(pattern_masks[i], pat + i * pwords, pwords)
            ordr[i] = <int>order[i]
        memset(used, 0, words * 8)

        k = 0
        _fill(cand, base, host, pat, used, ordr, assign, k, words, pwords)
        while k >= 0 and not stop:
            if counting and not dominating and k == n_p - 1:
                # Leaf shortcut: every remaining candidate completes a copy.
                for w in range(words):
                    word = cand[k * words + w]
                    count += SW_POPCOUNT(word)
                    expansions += SW_POPCOUNT(word)
                    cand[k * words + w] = 0
                if expansions > budget:
                    exceeded = True
                    break
                k -= 1
                continue
            v = -1
            for w in range(words):
                word = cand[k * words + w]
                if word:
                    v = (w << 6) + SW_CTZ(word)
                    cand[k * words + w] = word & (word - 1)
                    break
            if v < 0:
                k -= 1
                continue
            expansions += 1
            if expansions > budget:
                exceeded = True
                break
            assign[k] = v
            for w in range(words):
                used[(k + 1) * words + w] = used[k * words + w]
            used[(k + 1) * words + (v >> 6)] |= 1ULL << (<unsigned long long>(v & 63))
            if k == n_p - 1:
                if dominating and not _dominates(host, used + (k + 1) * words, n_h, words):
                    continue
                count += 1
                if not counting:
                    emb = [0] * n_p
                    for i in range(n_p):
                        emb[ordr[i]] = assign[i]
                    embeddings.append(tuple(emb))
                if finding or (mode == MODE_COLLECT and lim >= 0 and count >= lim):
                    stop = True
            else:
                k += 1
                _fill(cand, base, host, pat, used, ordr, assign, k, words, pwords)
        return embeddings, count, expansions, exceeded
    finally:
        free(host)
        free(base)
        free(pat)
        free(cand)
        free(used)
        free(assign)
        free(ordr)
