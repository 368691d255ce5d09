# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled backend for the embedding search.

Mirror of circfam._purekernel: identical candidate order, pruning rules and
node accounting. Domains are bitmaps over the candidate-subset list, packed
into 64-bit words. Fixed-size limits (checked by the caller): at most 4096
candidate subsets, ground sets up to 64 elements, order up to 16.
"""

from libc.stdlib cimport calloc, free
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


cdef double _monotonic() noexcept:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9

BACKEND_NAME = "compiled"

STATUS_WITNESS = 0
STATUS_NONEXISTENT = 1
STATUS_INCONCLUSIVE = 2

cdef int MAX_N = 16

ctypedef unsigned long long u64


cdef struct Ctx:
    int n
    int nsub
    int words
    long long budget          # -1 = unlimited
    long long nodes
    double deadline           # absolute monotonic seconds; <0 = none
    bint sym_labels
    bint sym_cyclic
    u64 *subsets              # [nsub] element masks
    u64 *target               # [n] target row masks (bit j = column j)
    u64 *inter                # [nsub * words] subsets intersecting each subset
    u64 *doms                 # [(n+1) * n * words] domain stack per depth
    unsigned char *used       # [nsub]
    int *cols                 # [n]
    # matching scratch (stamped so no per-call clearing is needed)
    int *owner                # [nsub] row currently owning each subset
    long long *owner_stamp    # [nsub]
    long long *visit_stamp    # [nsub]
    long long match_calls
    long long aug_calls
    int *match_row            # [n]


cdef bint _try_row(Ctx *ctx, int i, u64 *dom) noexcept:
    cdef int w, b, s
    cdef u64 word
    for w in range(ctx.words):
        word = dom[i * ctx.words + w]
        while word:
            b = __builtin_ctzll(word)
            word &= word - 1
            s = (w << 6) | b
            if ctx.visit_stamp[s] == ctx.aug_calls:
                continue
            ctx.visit_stamp[s] = ctx.aug_calls
            if ctx.owner_stamp[s] != ctx.match_calls:
                ctx.owner_stamp[s] = ctx.match_calls
                ctx.owner[s] = i
                ctx.match_row[i] = s
                return True
            if _try_row(ctx, ctx.owner[s], dom):
                ctx.owner[s] = i
                ctx.match_row[i] = s
                return True
    return False


cdef bint _perfect_matching(Ctx *ctx, u64 *dom) noexcept:
    """Kuhn augmentation row by row; fails fast on the first unmatched row."""
    cdef int i
    ctx.match_calls += 1
    for i in range(ctx.n):
        ctx.match_row[i] = -1
    for i in range(ctx.n):
        ctx.aug_calls += 1
        if not _try_row(ctx, i, dom):
            return False
    return True


cdef int _apply_column(Ctx *ctx, int j, int sidx, u64 *src, u64 *dst) noexcept:
    """Filter every row domain by the intersect/disjoint constraint of column j."""
    cdef int i, w
    cdef u64 d, any_bits
    cdef u64 *good = ctx.inter + sidx * ctx.words
    cdef bint want
    for i in range(ctx.n):
        want = (ctx.target[i] >> j) & 1
        any_bits = 0
        for w in range(ctx.words):
            if want:
                d = src[i * ctx.words + w] & good[w]
            else:
                d = src[i * ctx.words + w] & ~good[w]
            dst[i * ctx.words + w] = d
            any_bits |= d
        if any_bits == 0:
            return 0
    return 1


cdef int _dfs(Ctx *ctx, int j, int u) noexcept:
    cdef int sidx, nu, match_gate, status
    cdef u64 mask, high, base_mask
    cdef u64 *doms_here = ctx.doms + j * ctx.n * ctx.words
    cdef u64 *doms_next = ctx.doms + (j + 1) * ctx.n * ctx.words
    if j == ctx.n:
        if _perfect_matching(ctx, doms_here):
            return STATUS_WITNESS
        return STATUS_NONEXISTENT
    match_gate = ctx.n // 2
    base_mask = 0
    if ctx.sym_cyclic and j > 0:
        base_mask = ctx.subsets[ctx.cols[0]]
    for sidx in range(ctx.nsub):
        if ctx.used[sidx]:
            continue
        mask = ctx.subsets[sidx]
        if ctx.sym_cyclic and j > 0 and mask < base_mask:
            continue
        if ctx.sym_labels:
            high = mask >> u
            if high & (high + 1):
                continue
            nu = u + __builtin_popcountll(high)
        else:
            nu = u
        ctx.nodes += 1
        if ctx.budget >= 0 and ctx.nodes > ctx.budget:
            return STATUS_INCONCLUSIVE
        if ctx.deadline >= 0 and (ctx.nodes & 4095) == 0 and _monotonic() > ctx.deadline:
            return STATUS_INCONCLUSIVE
        if not _apply_column(ctx, j, sidx, doms_here, doms_next):
            continue
        if j + 1 >= match_gate and not _perfect_matching(ctx, doms_next):
            continue
        ctx.cols[j] = sidx
        ctx.used[sidx] = 1
        status = _dfs(ctx, j + 1, nu)
        ctx.used[sidx] = 0
        if status != STATUS_NONEXISTENT:
            return status
    return STATUS_NONEXISTENT


cdef void _release(Ctx *ctx) noexcept:
    free(ctx.subsets)
    free(ctx.target)
    free(ctx.inter)
    free(ctx.doms)
    free(ctx.used)
    free(ctx.cols)
    free(ctx.owner)
    free(ctx.owner_stamp)
    free(ctx.visit_stamp)
    free(ctx.match_row)


def run_search(
    int n,
    int t,
    int k,
    target_rows,
    subsets,
    prefix,
    budget,
    bint sym_labels,
    bint sym_cyclic,
    deadline=None,
):
    """Same contract as circfam._purekernel.run_search."""
    cdef int nsub = len(subsets)
    cdef int words, i, j, s, s2, w, u_free, status, plen
    cdef u64 used_elems, full
    cdef long long nodes
    cdef Ctx ctx

    if nsub < n:
        return STATUS_NONEXISTENT, 0, None, None
    if n > MAX_N:
        raise ValueError("order exceeds the compiled kernel limit")

    words = (nsub + 63) >> 6
    ctx.n = n
    ctx.nsub = nsub
    ctx.words = words
    ctx.budget = -1 if budget is None else <long long> budget
    ctx.nodes = 0
    ctx.deadline = -1.0 if deadline is None else <double> deadline
    ctx.sym_labels = sym_labels
    ctx.sym_cyclic = sym_cyclic
    ctx.match_calls = 0
    ctx.aug_calls = 0

    ctx.subsets = <u64 *> calloc(nsub, sizeof(u64))
    ctx.target = <u64 *> calloc(n, sizeof(u64))
    ctx.inter = <u64 *> calloc(nsub * words, sizeof(u64))
    ctx.doms = <u64 *> calloc((n + 1) * n * words, sizeof(u64))
    ctx.used = <unsigned char *> calloc(nsub, 1)
    ctx.cols = <int *> calloc(n, sizeof(int))
    ctx.owner = <int *> calloc(nsub, sizeof(int))
    ctx.owner_stamp = <long long *> calloc(nsub, sizeof(long long))
    ctx.visit_stamp = <long long *> calloc(nsub, sizeof(long long))
    ctx.match_row = <int *> calloc(n, sizeof(int))
    if (ctx.subsets == NULL or ctx.target == NULL or ctx.inter == NULL
            or ctx.doms == NULL or ctx.used == NULL or ctx.cols == NULL
            or ctx.owner == NULL or ctx.owner_stamp == NULL
            or ctx.visit_stamp == NULL or ctx.match_row == NULL):
        _release(&ctx)
        raise MemoryError()

    try:
        for s in range(nsub):
            ctx.subsets[s] = <u64> subsets[s]
            ctx.owner_stamp[s] = -1
            ctx.visit_stamp[s] = -1
        for i in range(n):
            ctx.target[i] = <u64> target_rows[i]
        for s in range(nsub):
            for s2 in range(nsub):
                if ctx.subsets[s] & ctx.subsets[s2]:
                    ctx.inter[s * words + (s2 >> 6)] |= (<u64> 1) << (s2 & 63)

        # root domains: every subset is a candidate for every row
        full = <u64> 0xFFFFFFFFFFFFFFFF
        for i in range(n):
            for w in range(words):
                ctx.doms[i * words + w] = full
            if nsub & 63:
                ctx.doms[i * words + words - 1] = ((<u64> 1) << (nsub & 63)) - 1

        plen = len(prefix)
        used_elems = 0
        for j in range(plen):
            s = prefix[j]
            if not _apply_column(&ctx, j, s,
                                 ctx.doms + j * n * words,
                                 ctx.doms + (j + 1) * n * words):
                return STATUS_NONEXISTENT, 0, None, None
            ctx.cols[j] = s
            ctx.used[s] = 1
            used_elems |= ctx.subsets[s]

        u_free = 0
        while used_elems:
            u_free += 1
            used_elems >>= 1

        status = _dfs(&ctx, plen, u_free)
        nodes = ctx.nodes
        if status == STATUS_WITNESS:
            return status, nodes, [ctx.cols[j] for j in range(n)], [ctx.match_row[i] for i in range(n)]
        return status, nodes, None, None
    finally:
        _release(&ctx)
