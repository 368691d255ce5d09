"""Verifiers and bound checkers: isolation sets, decomposition audits, caps.

An isolation set (ones with pairwise distinct rows and columns, no two inside
an all-one 2x2 minor) lower-bounds the Boolean rank of its host. Exact rank
computation is out of scope; this module provides the isolation lower bound
via branch and bound, structural audits of Boolean decompositions of C(p, q),
and the two closed-form caps used to gate the search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .boolmat import (
    BoolMatrix,
    CirculantSpec,
    bool_product,
    circulant,
    is_cyclic_variant,
    rotate_rows,
)
from .errors import (
    DimensionError,
    NotADecompositionError,
    OrderCapError,
    ParameterRangeError,
)
from .families import FamilyPair, intersection_matrix

ALL_ONE_ORDER_CAP = 14


@dataclass(frozen=True)
class IsolationSet:
    """(row, col) positions certifying a Boolean-rank lower bound."""

    positions: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.positions)


def is_isolation_set(host: BoolMatrix, s: IsolationSet) -> bool:
    """All positions are ones, rows and columns pairwise distinct, and no two
    positions span an all-one 2x2 minor."""
    for r, c in s.positions:
        if not (0 <= r < host.rows and 0 <= c < host.cols):
            raise DimensionError(f"position ({r}, {c}) outside {host.rows}x{host.cols}")
    pos = s.positions
    if any(host.entry(r, c) != 1 for r, c in pos):
        return False
    if len({r for r, _ in pos}) != len(pos) or len({c for _, c in pos}) != len(pos):
        return False
    for i in range(len(pos)):
        r1, c1 = pos[i]
        for r2, c2 in pos[i + 1 :]:
            if host.entry(r1, c2) and host.entry(r2, c1):
                return False
    return True


@dataclass(frozen=True)
class IsolationSearchResult:
    size: int
    exhausted: bool
    nodes: int
    positions: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "positions": [list(p) for p in self.positions],
        }


def max_isolation_lower_bound(
    host: BoolMatrix, budget: int | None = None
) -> IsolationSearchResult:
    """Branch-and-bound for the largest isolation set.

    Returns the best set found within the node budget; ``exhausted`` is True
    when the tree was fully explored, making the size exact. Usable exactly
    for hosts up to order ~20.
    """
    ones = [
        (r, c) for r in range(host.rows) for c in range(host.cols) if host.entry(r, c)
    ]
    total = len(ones)
    best: list[tuple[tuple[int, int], ...]] = [()]
    nodes = 0
    out_of_budget = False

    def compatible(r: int, c: int, chosen: list[tuple[int, int]]) -> bool:
        for r2, c2 in chosen:
            if r == r2 or c == c2:
                return False
            if host.entry(r, c2) and host.entry(r2, c):
                return False
        return True

    def extend(idx: int, chosen: list[tuple[int, int]]) -> None:
        nonlocal nodes, out_of_budget
        if len(chosen) > len(best[0]):
            best[0] = tuple(chosen)
        rows_left = {r for r, _ in ones[idx:] if all(r != r2 for r2, _ in chosen)}
        cols_left = {c for _, c in ones[idx:] if all(c != c2 for _, c2 in chosen)}
        if len(chosen) + min(len(rows_left), len(cols_left)) <= len(best[0]):
            return
        for i in range(idx, total):
            if out_of_budget:
                return
            nodes += 1
            if budget is not None and nodes > budget:
                out_of_budget = True
                return
            r, c = ones[i]
            if compatible(r, c, chosen):
                chosen.append((r, c))
                extend(i + 1, chosen)
                chosen.pop()
                if len(chosen) + min(len(rows_left), len(cols_left)) <= len(best[0]):
                    return

    if total:
        extend(0, [])
    return IsolationSearchResult(
        size=len(best[0]),
        exhausted=not out_of_budget,
        nodes=nodes,
        positions=best[0],
    )


def max_all_one_dims(m: BoolMatrix, stop_above: int | None = None) -> int:
    """Largest i + j over all-one i x j submatrices (0 when the matrix has no ones).

    Depth-first over row sets in increasing order, carrying the AND of the
    chosen rows' column masks; a branch dies as soon as the shared columns
    vanish or cannot beat the running maximum. ``stop_above`` short-circuits
    once a sum exceeding it is found.
    """
    best = 0

    def walk(next_row: int, count: int, common: int) -> None:
        nonlocal best
        width = common.bit_count()
        if count and width and count + width > best:
            best = count + width
        if stop_above is not None and best > stop_above:
            return
        for r in range(next_row, m.rows):
            # even taking every remaining row cannot beat the current best
            if count + (m.rows - r) + width <= best:
                break
            nc = common & m.masks[r]
            if nc:
                walk(r + 1, count + 1, nc)
                if stop_above is not None and best > stop_above:
                    return

    walk(0, 0, (1 << m.cols) - 1)
    return best


def all_one_submatrix_check(spec: CirculantSpec) -> bool:
    """Every all-one i x j submatrix of circulant(spec) satisfies i + j <= p + 1."""
    if spec.p < 1 or spec.q < 1:
        raise ParameterRangeError(f"need p, q > 0, got ({spec.p}, {spec.q})")
    if spec.n > ALL_ONE_ORDER_CAP:
        raise OrderCapError(f"order {spec.n} exceeds the cap {ALL_ONE_ORDER_CAP}")
    return max_all_one_dims(circulant(spec), stop_above=spec.p + 1) <= spec.p + 1


@dataclass(frozen=True)
class DecompositionAudit:
    """Per-index weights of a Boolean decomposition X * Y of C(p, q)."""

    r: int
    weights: tuple[tuple[int, int], ...]  # (|x_i|, |y_i|) for each inner index
    total_ones: int
    violations: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "total_ones": self.total_ones,
            "violations": list(self.violations),
            "exhausted": True,  # the audit always enumerates every index
        }


def audit_decomposition(
    x: BoolMatrix, y: BoolMatrix, spec: CirculantSpec, shift: int = 0
) -> DecompositionAudit:
    """Check the structural facts about decompositions X * Y = C(p, q).

    Requires bool_product(x, y) to equal the declared rotation of
    circulant(spec). Audited properties (columns x_i of X, rows y_i of Y):

      1. |x_i| > p forces y_i = 0, and symmetrically;
      2. |x_i|, |y_i| > 0 forces |x_i| + |y_i| <= p + 1;
      3. when q >= p - 1, at least n indices have both weights positive;
      4. when q >= p - 1, the total number of ones is at most (p+1)n + (r-n)n.
    """
    n = spec.n
    if x.rows != n or y.cols != n or x.cols != y.rows:
        raise DimensionError(
            f"expected {n}xr times rx{n} factors, got {x.rows}x{x.cols} and {y.rows}x{y.cols}"
        )
    expected = rotate_rows(circulant(spec), shift)
    if bool_product(x, y) != expected:
        raise NotADecompositionError(
            f"product does not equal C({spec.p},{spec.q}) at shift {shift}"
        )
    r = x.cols
    p = spec.p
    weights = tuple((x.col_ones(i), y.row_ones(i)) for i in range(r))
    violations = []
    active = 0
    for i, (wx, wy) in enumerate(weights):
        if wx > p and wy > 0:
            violations.append(f"index {i}: |x|={wx} > p but |y|={wy} > 0")
        if wy > p and wx > 0:
            violations.append(f"index {i}: |y|={wy} > p but |x|={wx} > 0")
        if wx > 0 and wy > 0:
            active += 1
            if wx + wy > p + 1:
                violations.append(f"index {i}: |x|+|y| = {wx + wy} > p+1 = {p + 1}")
    total = sum(wx + wy for wx, wy in weights)
    if spec.q >= p - 1:
        if active < n:
            violations.append(f"only {active} indices have both weights positive, need {n}")
        cap = (p + 1) * n + (r - n) * n
        if total > cap:
            violations.append(f"total ones {total} exceeds ({p}+1)*{n} + (r-n)*{n} = {cap}")
    return DecompositionAudit(r=r, weights=weights, total_ones=total, violations=tuple(violations))


def audit_pair_decomposition(
    pair: FamilyPair, spec: CirculantSpec, shift: int = 0
) -> DecompositionAudit:
    """Audit the characteristic-vector factors of a family pair.

    X stacks the row members as rows, Y the column members as columns; their
    Boolean product is the intersection matrix, so any verified pair yields a
    decomposition with inner dimension k.
    """
    x = pair.rows.as_row_matrix()
    y = pair.cols.as_row_matrix().transpose()
    return audit_decomposition(x, y, spec, shift)


def check_q_cap(
    pair: FamilyPair, spec: CirculantSpec, witness_k: int | None = None
) -> bool:
    """Cross-check the proven cap q <= k - 2t + 1 against a verified embedding.

    Refuses to judge (raises) unless the pair actually realizes a rotation of
    C(p, q) and the parameters sit in the proven range 1 <= p <= 2t - 1 with
    q >= p - 1. A verified certificate returning False here would falsify the
    implementation. ``witness_k`` defaults to the number of distinct elements
    the pair actually uses.
    """
    ok, _ = is_cyclic_variant(intersection_matrix(pair), spec)
    if not ok:
        raise NotADecompositionError(
            "certificate does not realize the claimed circulant; refusing to judge"
        )
    t = pair.t
    if not 1 <= spec.p <= 2 * t - 1:
        raise ParameterRangeError(
            f"p={spec.p} outside the proven range 1 <= p <= 2t-1 = {2 * t - 1}"
        )
    if spec.q < spec.p - 1:
        raise ParameterRangeError(
            f"q={spec.q} < p-1 = {spec.p - 1}: outside the proven range"
        )
    k = pair.used_elements() if witness_k is None else witness_k
    return spec.q <= k - 2 * t + 1


def frankl_kalai_cap(t: int, q: int) -> int:
    """Hard cap on the order n of any C(p, q) inside the t-subset intersection
    matrix: n <= binom(2t, t) + q - 1, i.e. p <= binom(2t, t) - 1."""
    if t < 1 or q < 1:
        raise ParameterRangeError(f"need t >= 1 and q >= 1, got t={t}, q={q}")
    return comb(2 * t, t) + q - 1
