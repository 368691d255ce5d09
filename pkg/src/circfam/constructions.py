"""Constructive realizations of C(p, q) as an intersection matrix.

Each construction returns a ConstructionReport whose family pair has been
verified against the intersection-matrix oracle. The four methods cover
disjoint parameter regimes:

  small_p        1 <= p <= 2t-1, ground set of q + 2t - 1 elements
  mid_p          2t <= p <= t^2, circulant factor pair over p + q elements
  blowup         p = q * (binom(2t/q, t/q) - 1) for q dividing t
  recursive_q2   q = 2, p = 2^t + 2^(t-2) - 2, doubling recursion
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from itertools import combinations

from .boolmat import BoolMatrix, CirculantSpec, bool_product, circulant, is_cyclic_variant
from .errors import DivisibilityError, ParameterRangeError
from .families import (
    FamilyPair,
    SetFamily,
    family_from_matrix_cols,
    family_from_matrix_rows,
    intersection_matrix,
)
from . import base_fixture

METHODS = ("small_p", "mid_p", "blowup", "recursive_q2")


@dataclass(frozen=True)
class ConstructionReport:
    """A verified realization certificate plus its provenance trace."""

    pair: FamilyPair
    spec: CirculantSpec
    shift: int
    k_used: int
    method: str
    trace: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        ok, shift = is_cyclic_variant(intersection_matrix(self.pair), self.spec)
        if not ok or shift != self.shift:
            raise AssertionError(
                f"{self.method} pair does not realize C({self.spec.p},{self.spec.q}) "
                f"at shift {self.shift} (found {shift})"
            )
        if self.k_used > self.pair.rows.k:
            raise AssertionError("k_used exceeds the family ground set")
        if not (self.pair.rows.is_distinct() and self.pair.cols.is_distinct()):
            raise AssertionError(f"{self.method} produced duplicate members")


def circulant_factor_identity(i: int, j: int, z: int) -> tuple[BoolMatrix, BoolMatrix, BoolMatrix]:
    """The product identity C(i, z-i) * C(j, z-j) = C(i+j-1, z-i-j+1).

    Returns the two factors and their Boolean product.
    """
    if i < 1 or j < 1:
        raise ParameterRangeError(f"need i, j >= 1, got i={i}, j={j}")
    if i + j - 1 > z:
        raise ParameterRangeError(f"need i + j - 1 <= z, got {i}+{j}-1 > {z}")
    a = circulant(CirculantSpec(i, z - i))
    b = circulant(CirculantSpec(j, z - j))
    return a, b, bool_product(a, b)


def construct_small_p(t: int, p: int, q: int, k: int) -> ConstructionReport:
    """Realize C(p, q) for 1 <= p <= 2t-1 over a ground set of q + 2t - 1 elements.

    Factors C(p, q) = C(i, n-i) * C(j, n-j) with i + j - 1 = p, then pads the
    circulant factors with all-zero / all-one blocks to make every row of X
    and every column of Y a t-set. The split is fixed to i = min(t, p) for
    reproducible certificates.
    """
    if t < 1:
        raise ParameterRangeError(f"need t >= 1, got t={t}")
    if k < 2 * t:
        raise ParameterRangeError(f"need k >= 2t, got k={k} < {2 * t}")
    if not 1 <= p <= 2 * t - 1:
        raise ParameterRangeError(f"need 1 <= p <= 2t-1 = {2 * t - 1}, got p={p}")
    if not 1 <= q <= k - 2 * t + 1:
        raise ParameterRangeError(
            f"need 1 <= q <= k-2t+1 = {k - 2 * t + 1}, got q={q}"
        )
    i = min(t, p)
    j = p + 1 - i
    n = p + q
    x = circulant(CirculantSpec(i, n - i))
    if t - j:
        x = x.hstack(BoolMatrix.all_zero(n, t - j))
    if t - i:
        x = x.hstack(BoolMatrix.all_one(n, t - i))
    y = circulant(CirculantSpec(j, n - j))
    if t - j:
        y = y.vstack(BoolMatrix.all_one(t - j, n))
    if t - i:
        y = y.vstack(BoolMatrix.all_zero(t - i, n))
    k_used = n + (t - j) + (t - i)  # = q + 2t - 1
    rows = family_from_matrix_rows(x, t).with_ground(k)
    cols = family_from_matrix_cols(y, t).with_ground(k)
    return ConstructionReport(
        pair=FamilyPair(rows, cols),
        spec=CirculantSpec(p, q),
        shift=0,
        k_used=k_used,
        method="small_p",
        trace={"i": i, "j": j, "factor_x": x, "factor_y": y},
    )


def mid_p_first_row(t: int, p: int, q: int) -> tuple[tuple[int, ...], int, int]:
    """First row of the X factor used by construct_mid_p, with (l1, l2).

    l1 = p // t and l2 = p % t; the row interleaves l1 - 1 copies of the
    length-t marker block (0,...,0,1) between the leading q zeros and a
    trailing run of ones (plus a final short block when l2 > 0).
    """
    l1, l2 = divmod(p, t)
    z = (0,) * (t - 1) + (1,)
    if l2 == 0:
        x1 = (0,) * q + z * (l1 - 1) + (0,) * (l1 - 1) + (1,) * (t - l1 + 1)
    else:
        x1 = (0,) * q + z * (l1 - 1) + (0,) * l1 + (1,) * (t - l1) + (0,) * (l2 - 1) + (1,)
    assert len(x1) == p + q and sum(x1) == t
    return x1, l1, l2


def _circulant_from_first_row(first_row: tuple[int, ...]) -> BoolMatrix:
    """Circulant whose row r is the first row shifted r positions to the right."""
    n = len(first_row)
    masks = []
    for r in range(n):
        m = 0
        for c in range(n):
            if first_row[(c - r) % n]:
                m |= 1 << c
        masks.append(m)
    return BoolMatrix(n, n, tuple(masks))


def construct_mid_p(t: int, p: int, q: int) -> ConstructionReport:
    """Realize C(p, q) for 2t <= p <= t^2 with two circulant t-uniform families.

    Y is the circulant generated by t consecutive ones; X spreads its t ones
    so that each one meets a distinct window of t consecutive columns of Y.
    The product is the rotation of C(p, q) whose first row is q zeros followed
    by p ones, recorded as shift n - 1.
    """
    if t < 2:
        raise ParameterRangeError(f"need t >= 2, got t={t}")
    if not 2 * t <= p <= t * t:
        raise ParameterRangeError(f"need 2t <= p <= t^2, i.e. {2 * t} <= p <= {t * t}, got p={p}")
    if q < 1:
        raise ParameterRangeError(f"need q > 0, got q={q}")
    n = p + q
    x1, l1, l2 = mid_p_first_row(t, p, q)
    x = _circulant_from_first_row(x1)
    y = circulant(CirculantSpec(t, n - t))
    rows = family_from_matrix_rows(x, t)
    cols = family_from_matrix_cols(y, t)
    return ConstructionReport(
        pair=FamilyPair(rows, cols),
        spec=CirculantSpec(p, q),
        shift=n - 1,
        k_used=n,
        method="mid_p",
        trace={"l1": l1, "l2": l2, "x1": x1, "factor_x": x, "factor_y": y},
    )


def construct_blowup(t: int, q: int) -> ConstructionReport:
    """Realize C(p, q) with p = q * (binom(2t/q, t/q) - 1), for q dividing t.

    The order-qN matrix (N = binom(2t/q, t/q)) splits by row residue mod q
    into q blowups of the crown-graph pattern on all (t/q)-subsets of a
    private 2t/q-element universe; columns take the union of one complement
    block per universe, rows pad their block with t - t/q shared fillers.
    """
    if q < 1:
        raise ParameterRangeError(f"need q > 0, got q={q}")
    if t < q:
        raise ParameterRangeError(f"need t >= q, got t={t} < q={q}")
    if t % q:
        raise DivisibilityError(f"need q to divide t, got t={t}, q={q}")
    m = t // q
    size = comb(2 * m, m)
    order = q * size
    p = q * (size - 1)
    k_used = 2 * m * q + (t - m)  # = 3t - t/q
    filler = 0
    for e in range(2 * m * q, k_used):
        filler |= 1 << e

    # blocks[i][b]: the b-th m-subset of universe i (elements shifted by 2m*i)
    base_blocks = [
        sum(1 << e for e in combo) for combo in combinations(range(2 * m), m)
    ]
    universe_full = (1 << (2 * m)) - 1
    row_masks = []
    col_masks = []
    for r in range(order):
        i, jj = r % q, r // q
        row_masks.append((base_blocks[jj] << (2 * m * i)) | filler)
    for c in range(order):
        acc = 0
        for i in range(q):
            b = ((c - i) % order) // q
            acc |= (universe_full ^ base_blocks[b]) << (2 * m * i)
        col_masks.append(acc)

    rows = SetFamily.from_masks(row_masks, k_used, t)
    cols = SetFamily.from_masks(col_masks, k_used, t)
    return ConstructionReport(
        pair=FamilyPair(rows, cols),
        spec=CirculantSpec(p, q),
        shift=order - 1,
        k_used=k_used,
        method="blowup",
        trace={"block_size": m, "blocks_per_universe": size},
    )


def recursive_q2_order(t: int) -> int:
    return 2**t + 2 ** (t - 2)


def construct_recursive_q2(t: int) -> ConstructionReport:
    """Realize C(p, 2) with p = 2^t + 2^(t-2) - 2 by doubling a frozen base pair.

    Each level swaps the two marker elements throughout a copy of the previous
    pair, appends two fresh elements c, d, and stitches the copies so the new
    intersection matrix is the order-doubled band. Markers at every level obey
    the placement discipline checked by marker_positions().
    """
    if t < 3:
        raise ParameterRangeError(f"need t >= 3, got t={t}")
    base = base_fixture.load_base()
    f_masks = list(base.row_masks)
    g_masks = list(base.col_masks)
    a_bit = 1 << (base.a - 1)
    b_bit = 1 << (base.b - 1)
    k = base.k
    for _ in range(4, t + 1):
        c_bit = 1 << k
        d_bit = 1 << (k + 1)
        k += 2

        def swap(mask: int) -> int:
            ab = ((mask & a_bit) != 0, (mask & b_bit) != 0)
            mask &= ~(a_bit | b_bit)
            if ab[0]:
                mask |= b_bit
            if ab[1]:
                mask |= a_bit
            return mask

        f_swapped = [swap(m) for m in f_masks]
        g_swapped = [swap(m) for m in g_masks]
        f_masks = (
            [m | d_bit for m in f_masks[:-1]]
            + [f_masks[-1] | a_bit]
            + [m | c_bit for m in f_swapped[:-1]]
            + [f_swapped[-1] | b_bit]
        )
        g_masks = [m | c_bit for m in g_masks] + [m | d_bit for m in g_swapped]
        a_bit, b_bit = c_bit, d_bit

    p = recursive_q2_order(t) - 2
    n = p + 2
    rows = SetFamily.from_masks(f_masks, k, t)
    cols = SetFamily.from_masks(g_masks, k, t)
    return ConstructionReport(
        pair=FamilyPair(rows, cols),
        spec=CirculantSpec(p, 2),
        shift=n - 1,
        k_used=k,
        method="recursive_q2",
        trace={"a": a_bit.bit_length(), "b": b_bit.bit_length()},
    )


def marker_positions(report: ConstructionReport) -> dict:
    """Index sets (1-based) where the recursive_q2 markers actually occur.

    The construction promises: marker a in columns 1..h and rows h+1..n-1,
    marker b in columns h+1..n and rows 1..h-1, and neither in any other
    member (h = n/2).
    """
    if report.method != "recursive_q2":
        raise ParameterRangeError("marker audit only applies to recursive_q2 reports")
    a_bit = 1 << (report.trace["a"] - 1)
    b_bit = 1 << (report.trace["b"] - 1)
    rows = report.pair.rows.masks()
    cols = report.pair.cols.masks()
    return {
        "a_rows": tuple(i + 1 for i, m in enumerate(rows) if m & a_bit),
        "a_cols": tuple(i + 1 for i, m in enumerate(cols) if m & a_bit),
        "b_rows": tuple(i + 1 for i, m in enumerate(rows) if m & b_bit),
        "b_cols": tuple(i + 1 for i, m in enumerate(cols) if m & b_bit),
    }


def construct(method: str, t: int, p: int | None = None, q: int | None = None,
              k: int | None = None) -> ConstructionReport:
    """Dispatch by method tag; validates that required parameters are present."""
    if method == "small_p":
        if p is None or q is None or k is None:
            raise ParameterRangeError("small_p needs t, p, q and k")
        return construct_small_p(t, p, q, k)
    if method == "mid_p":
        if p is None or q is None:
            raise ParameterRangeError("mid_p needs t, p and q")
        return construct_mid_p(t, p, q)
    if method == "blowup":
        if q is None:
            raise ParameterRangeError("blowup needs t and q")
        return construct_blowup(t, q)
    if method == "recursive_q2":
        return construct_recursive_q2(t)
    raise ParameterRangeError(f"unknown method {method!r}; expected one of {METHODS}")
