"""Frozen order-10 base pair for the q = 2 doubling construction.

The t = 3 base (two 3-uniform families of size 10 whose intersection matrix
is the rotated C(8, 2) band, with marker elements a = 8 and b = 9 placed as
the recursion requires) is not derivable by formula; it is found once by the
constrained search below and shipped as package data.

Regenerate with:  python -m circfam.base_fixture [--write]
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations

from .boolmat import CirculantSpec, circulant, rotate_rows

_DATA_NAME = "recursive_q2_base_t3.json"

BASE_T = 3
BASE_K = 9
BASE_A = 8
BASE_B = 9
_N = 10
_FREE = 7  # elements 1..7 are unconstrained; 8 and 9 are the markers

# 1-based member indices that must contain each marker (h = n/2 = 5):
#   a in columns 1..5 and rows 6..9;  b in columns 6..10 and rows 1..4.
_A_BIT = 1 << (BASE_A - 1)
_B_BIT = 1 << (BASE_B - 1)
_COL_MARK = [_A_BIT] * 5 + [_B_BIT] * 5
_ROW_MARK = [_B_BIT] * 4 + [0] + [_A_BIT] * 4 + [0]


@dataclass(frozen=True)
class BaseFixture:
    k: int
    t: int
    a: int
    b: int
    row_masks: tuple[int, ...]
    col_masks: tuple[int, ...]


def target_matrix():
    """The order-10 band whose row r has zeros exactly at columns r, r+1 (mod 10)."""
    return rotate_rows(circulant(CirculantSpec(8, 2)), 9)


def load_base() -> BaseFixture:
    text = resources.files(__package__).joinpath("data").joinpath(_DATA_NAME).read_text()
    doc = json.loads(text)
    to_mask = lambda elems: sum(1 << (e - 1) for e in elems)
    return BaseFixture(
        k=doc["k"],
        t=doc["t"],
        a=doc["a"],
        b=doc["b"],
        row_masks=tuple(to_mask(el) for el in doc["rows"]),
        col_masks=tuple(to_mask(el) for el in doc["cols"]),
    )


def _mask_elements(mask: int) -> list[int]:
    return [e + 1 for e in range(BASE_K) if (mask >> e) & 1]


def regenerate() -> dict:
    """Search for the base pair under the marker and band constraints.

    Columns are assigned first with forward checking against the row domains;
    relabeling symmetry of the seven free elements is broken by first-use
    order. Deterministic: always returns the same fixture.
    """
    t_rows = target_matrix().masks
    pairs = [m1 | m2 for m1, m2 in combinations([1 << e for e in range(_FREE)], 2)]
    triples = [
        m1 | m2 | m3
        for m1, m2, m3 in combinations([1 << e for e in range(_FREE)], 3)
    ]
    row_domains = [
        [mark | part for part in (pairs if mark else triples)] for mark in _ROW_MARK
    ]

    cols: list[int] = []
    used_masks: set[int] = set()

    def assign_rows(domains: list[list[int]], i: int, chosen: list[int]) -> list[int] | None:
        if i == _N:
            return chosen
        for mask in domains[i]:
            if mask in used_masks or mask in chosen:
                continue
            got = assign_rows(domains, i + 1, chosen + [mask])
            if got is not None:
                return got
        return None

    def assign_cols(domains: list[list[int]], j: int, used_free: int) -> list[int] | None:
        if j == _N:
            return assign_rows(domains, 0, [])
        for part in pairs:
            high = part >> used_free
            if high & (high + 1):  # new free elements must be the next unused ones
                continue
            col = _COL_MARK[j] | part
            if col in used_masks:
                continue
            narrowed = []
            ok = True
            for i in range(_N):
                want = (t_rows[i] >> j) & 1
                dom = [m for m in domains[i] if bool(m & col) == want]
                if not dom:
                    ok = False
                    break
                narrowed.append(dom)
            if not ok:
                continue
            cols.append(col)
            used_masks.add(col)
            got = assign_cols(narrowed, j + 1, used_free + high.bit_count())
            if got is not None:
                return got
            used_masks.discard(col)
            cols.pop()
        return None

    rows = assign_cols(row_domains, 0, 0)
    if rows is None:
        raise RuntimeError("base-pair search exhausted without a solution")

    # Independent re-check: intersection matrix must equal the band exactly.
    for i in range(_N):
        got = sum(((rows[i] & cols[j]) != 0) << j for j in range(_N))
        if got != t_rows[i]:
            raise RuntimeError(f"regenerated base fails verification at row {i}")

    return {
        "t": BASE_T,
        "k": BASE_K,
        "p": 8,
        "q": 2,
        "a": BASE_A,
        "b": BASE_B,
        "rows": [_mask_elements(m) for m in rows],
        "cols": [_mask_elements(m) for m in cols],
    }


def main(argv: list[str] | None = None) -> int:
    import argparse
    import os

    parser = argparse.ArgumentParser(
        description="Regenerate the frozen t=3 base pair for the q=2 doubling construction."
    )
    parser.add_argument(
        "--write",
        action="store_true",
        help="overwrite the package data file instead of printing to stdout",
    )
    args = parser.parse_args(argv)
    doc = regenerate()
    text = json.dumps(doc, indent=2) + "\n"
    if args.write:
        path = os.path.join(os.path.dirname(__file__), "data", _DATA_NAME)
        with open(path, "w") as fh:
            fh.write(text)
        print(f"wrote {path}")
    else:
        print(text, end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
