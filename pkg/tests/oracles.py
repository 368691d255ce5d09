"""Definition-level brute-force oracles, kept independent of the library code
paths they cross-check."""

from itertools import combinations

from circfam.boolmat import BoolMatrix


def bool_product_oracle(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Triple-loop Boolean product straight from the definition."""
    bits = []
    for r in range(a.rows):
        row = []
        for c in range(b.cols):
            row.append(
                1 if any(a.entry(r, m) and b.entry(m, c) for m in range(a.cols)) else 0
            )
        bits.append(row)
    return BoolMatrix.from_bits(bits)


def intersection_oracle(row_sets, col_sets) -> BoolMatrix:
    """Intersection matrix computed on Python sets of elements."""
    bits = [
        [1 if set(rs) & set(cs) else 0 for cs in col_sets] for rs in row_sets
    ]
    return BoolMatrix.from_bits(bits)


def isolation_oracle(host: BoolMatrix, positions) -> bool:
    """Isolation-set definition re-checked entry by entry."""
    if any(host.entry(r, c) != 1 for r, c in positions):
        return False
    rows = [r for r, _ in positions]
    cols = [c for _, c in positions]
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        return False
    for (r1, c1), (r2, c2) in combinations(positions, 2):
        if (
            host.entry(r1, c1)
            and host.entry(r1, c2)
            and host.entry(r2, c1)
            and host.entry(r2, c2)
        ):
            return False
    return True


def max_isolation_oracle(host: BoolMatrix) -> int:
    """Exact maximum isolation set by enumerating every subset of ones."""
    ones = [
        (r, c) for r in range(host.rows) for c in range(host.cols) if host.entry(r, c)
    ]
    best = 0
    for size in range(1, min(host.rows, host.cols) + 1):
        found = False
        for subset in combinations(ones, size):
            if isolation_oracle(host, subset):
                found = True
                break
        if found:
            best = size
        else:
            break
    return best


def embedding_oracle(k: int, t: int, target: BoolMatrix) -> bool:
    """Brute-force embedding decision: try every ordered choice of distinct
    column members, then extend rows one at a time. No symmetry reduction, no
    propagation; usable only for tiny instances."""
    from itertools import permutations

    subsets = [frozenset(c) for c in combinations(range(1, k + 1), t)]
    n = target.rows

    def extend_rows(cols, rows):
        i = len(rows)
        if i == n:
            return True
        for cand in subsets:
            if cand in rows:
                continue
            if all(
                bool(cand & cols[j]) == bool(target.entry(i, j)) for j in range(n)
            ):
                if extend_rows(cols, rows + [cand]):
                    return True
        return False

    return any(extend_rows(cols, []) for cols in permutations(subsets, n))


def max_all_one_sum_oracle(m: BoolMatrix) -> int:
    """Largest i + j over all-one i x j submatrices, by row-subset enumeration."""
    best = 0
    for size in range(1, m.rows + 1):
        for rows in combinations(range(m.rows), size):
            common = sum(
                1
                for c in range(m.cols)
                if all(m.entry(r, c) for r in rows)
            )
            if common:
                best = max(best, size + common)
    return best
