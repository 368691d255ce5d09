"""Pure-Python backend for the embedding search.

Mirrors circfam._speedups: identical candidate order, pruning rules and node
accounting, so the two backends are interchangeable. Domains are bitmaps over
the list of candidate subsets, packed into Python integers.

Column members are assigned first (positions 0..n-1); every assignment
filters, for each row, the set of subsets still compatible with the target
pattern. Once all columns are placed the rows reduce to finding a perfect
matching between row positions and the surviving subsets.
"""

from __future__ import annotations

import time

BACKEND_NAME = "pure"

STATUS_WITNESS = 0
STATUS_NONEXISTENT = 1
STATUS_INCONCLUSIVE = 2

# Run the matching-based feasibility prune once this many columns are placed.
MATCH_PRUNE_DEPTH_FRACTION = 2  # prune when assigned >= n // 2


def _perfect_matching(domains: list[int], n: int) -> list[int] | None:
    """Assign each row a distinct subset index from its domain (Kuhn).

    Returns the assignment, or None when no perfect matching exists. The
    iteration order is fixed, so the result is deterministic.
    """
    owner: dict[int, int] = {}
    match_row = [-1] * n

    def try_row(i: int, visited: set[int]) -> bool:
        d = domains[i]
        while d:
            low = d & -d
            d ^= low
            s = low.bit_length() - 1
            if s in visited:
                continue
            visited.add(s)
            if s not in owner or try_row(owner[s], visited):
                owner[s] = i
                match_row[i] = s
                return True
        return False

    for i in range(n):
        if not try_row(i, set()):
            return None
    return match_row


def run_search(
    n: int,
    t: int,
    k: int,
    target_rows: list[int],
    subsets: list[int],
    prefix: list[int],
    budget: int | None,
    sym_labels: bool,
    sym_cyclic: bool,
    deadline: float | None = None,
) -> tuple[int, int, list[int] | None, list[int] | None]:
    """Exhaustive backtracking for families realizing the target matrix.

    ``subsets`` lists all candidate t-subset bitmasks of [k] in increasing
    mask order; ``target_rows[i]`` has bit j set iff row i must intersect
    column j. ``prefix`` pre-assigns the first columns (used to hand subtrees
    to workers). ``deadline`` is an absolute time.monotonic() value, checked
    every 4096 nodes. Returns (status, nodes, column subset indices, row
    subset indices); nodes counts attempted column assignments.
    """
    nsub = len(subsets)
    if nsub < n:
        return STATUS_NONEXISTENT, 0, None, None
    full_dom = (1 << nsub) - 1

    elem_map = [0] * k
    for idx, s in enumerate(subsets):
        rest = s
        while rest:
            low = rest & -rest
            elem_map[low.bit_length() - 1] |= 1 << idx
            rest ^= low
    inter = []
    for s in subsets:
        acc = 0
        rest = s
        while rest:
            low = rest & -rest
            acc |= elem_map[low.bit_length() - 1]
            rest ^= low
        inter.append(acc)

    match_gate = n // MATCH_PRUNE_DEPTH_FRACTION
    nodes = 0
    cols: list[int] = []
    used = 0
    used_elems = 0

    def apply_column(doms: list[int], j: int, sidx: int) -> list[int] | None:
        good = inter[sidx]
        out = []
        for i in range(n):
            if (target_rows[i] >> j) & 1:
                d = doms[i] & good
            else:
                d = doms[i] & ~good
            if d == 0:
                return None
            out.append(d)
        return out

    doms = [full_dom] * n
    for j, sidx in enumerate(prefix):
        nd = apply_column(doms, j, sidx)
        if nd is None:
            return STATUS_NONEXISTENT, 0, None, None
        doms = nd
        cols.append(sidx)
        used |= 1 << sidx
        used_elems |= subsets[sidx]

    u_free = used_elems.bit_length()  # canonical prefixes use elements 1..u

    def dfs(j: int, doms: list[int], u: int) -> tuple[int, list[int] | None, list[int] | None]:
        nonlocal nodes, used
        if j == n:
            rows = _perfect_matching(doms, n)
            if rows is not None:
                return STATUS_WITNESS, list(cols), rows
            return STATUS_NONEXISTENT, None, None
        base_mask = subsets[cols[0]] if (sym_cyclic and cols) else -1
        for sidx in range(nsub):
            if (used >> sidx) & 1:
                continue
            mask = subsets[sidx]
            if sym_cyclic and j > 0 and mask < base_mask:
                continue
            if sym_labels:
                high = mask >> u
                if high & (high + 1):
                    continue
                nu = u + high.bit_count()
            else:
                nu = u
            nodes += 1
            if budget is not None and nodes > budget:
                return STATUS_INCONCLUSIVE, None, None
            if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
                return STATUS_INCONCLUSIVE, None, None
            nd = apply_column(doms, j, sidx)
            if nd is None:
                continue
            if j + 1 >= match_gate and _perfect_matching(nd, n) is None:
                continue
            cols.append(sidx)
            used |= 1 << sidx
            status, wc, wr = dfs(j + 1, nd, nu)
            cols.pop()
            used &= ~(1 << sidx)
            if status != STATUS_NONEXISTENT:
                return status, wc, wr
        return STATUS_NONEXISTENT, None, None

    status, wcols, wrows = dfs(len(prefix), doms, u_free)
    return status, nodes, wcols, wrows
