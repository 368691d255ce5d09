"""t-uniform set families over [k] and the intersection-matrix oracle.

Members are bitmasks over a 1-based ground set {1, ..., k}: element e is bit
e - 1. Families are ordered lists; the realizations below depend on member
order, so equality of families is positional.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass

from .boolmat import BoolMatrix, CirculantSpec
from .errors import CertificateError, DimensionError, InvalidSpecError, UniformityError


@dataclass(frozen=True)
class Subset:
    """A subset of {1, ..., k} stored as a bitmask (element e is bit e - 1)."""

    mask: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidSpecError(f"ground set size must be positive, got {self.k}")
        if self.mask < 0 or self.mask >> self.k:
            raise InvalidSpecError(f"mask has elements outside [1, {self.k}]")

    @classmethod
    def from_elements(cls, elements, k: int) -> "Subset":
        mask = 0
        for e in elements:
            if not 1 <= e <= k:
                raise InvalidSpecError(f"element {e} outside [1, {k}]")
            mask |= 1 << (e - 1)
        return cls(mask, k)

    def elements(self) -> tuple[int, ...]:
        return tuple(
            e + 1 for e in range(self.k) if (self.mask >> e) & 1
        )

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def intersects(self, other: "Subset") -> bool:
        return bool(self.mask & other.mask)

    def with_ground(self, k: int) -> "Subset":
        """The same elements over a larger ground set."""
        if k < self.k:
            raise InvalidSpecError("cannot shrink the ground set")
        return Subset(self.mask, k)


@dataclass(frozen=True)
class SetFamily:
    """Ordered list of t-subsets of [k]; duplicates are permitted."""

    k: int
    t: int
    members: tuple[Subset, ...]

    def __post_init__(self) -> None:
        for i, m in enumerate(self.members):
            if m.k != self.k:
                raise DimensionError(
                    f"member {i} lives over [{m.k}], family over [{self.k}]"
                )
            if m.size != self.t:
                raise UniformityError(
                    f"member {i} has {m.size} elements, expected {self.t}"
                )

    @classmethod
    def from_element_lists(cls, lists, k: int, t: int) -> "SetFamily":
        return cls(k, t, tuple(Subset.from_elements(el, k) for el in lists))

    @classmethod
    def from_masks(cls, masks, k: int, t: int) -> "SetFamily":
        return cls(k, t, tuple(Subset(m, k) for m in masks))

    def __len__(self) -> int:
        return len(self.members)

    def masks(self) -> tuple[int, ...]:
        return tuple(m.mask for m in self.members)

    def element_lists(self) -> list[list[int]]:
        return [list(m.elements()) for m in self.members]

    def is_distinct(self) -> bool:
        masks = self.masks()
        return len(set(masks)) == len(masks)

    def same_members(self, other: "SetFamily") -> bool:
        """Order-insensitive comparison (families are ordered; equality is not)."""
        return (
            self.k == other.k
            and self.t == other.t
            and sorted(self.masks()) == sorted(other.masks())
        )

    def used_elements(self) -> int:
        """Number of distinct ground elements appearing in some member."""
        acc = 0
        for m in self.members:
            acc |= m.mask
        return acc.bit_count()

    def as_row_matrix(self) -> BoolMatrix:
        """Members stacked as characteristic row vectors (len x k)."""
        if not self.members:
            raise InvalidSpecError("cannot build a matrix from an empty family")
        return BoolMatrix(len(self.members), self.k, self.masks())

    def with_ground(self, k: int) -> "SetFamily":
        return SetFamily(k, self.t, tuple(m.with_ground(k) for m in self.members))


@dataclass(frozen=True)
class FamilyPair:
    """Row and column families claimed to realize a target matrix."""

    rows: SetFamily
    cols: SetFamily

    def __post_init__(self) -> None:
        if self.rows.k != self.cols.k:
            raise DimensionError(
                f"ground sets differ: rows over [{self.rows.k}], cols over [{self.cols.k}]"
            )
        if self.rows.t != self.cols.t:
            raise DimensionError(
                f"uniformities differ: rows {self.rows.t}, cols {self.cols.t}"
            )

    @property
    def k(self) -> int:
        return self.rows.k

    @property
    def t(self) -> int:
        return self.rows.t

    def used_elements(self) -> int:
        acc = 0
        for m in self.rows.members + self.cols.members:
            acc |= m.mask
        return acc.bit_count()


def intersection_matrix(pair: FamilyPair) -> BoolMatrix:
    """Entry (i, j) = 1 iff row member i and column member j intersect."""
    if pair.rows.k != pair.cols.k:
        raise DimensionError("mismatched ground sets")
    if not pair.rows.members or not pair.cols.members:
        raise InvalidSpecError("both families must be nonempty")
    col_masks = pair.cols.masks()
    out = []
    for rm in pair.rows.masks():
        acc = 0
        for j, cm in enumerate(col_masks):
            if rm & cm:
                acc |= 1 << j
        out.append(acc)
    return BoolMatrix(len(out), len(col_masks), tuple(out))


def family_from_matrix_rows(x: BoolMatrix, t: int) -> SetFamily:
    """Read the rows of a 0/1 matrix as the characteristic vectors of a family.

    Every row must have exactly t ones; the ground set is [x.cols].
    """
    for r in range(x.rows):
        w = x.row_ones(r)
        if w != t:
            raise UniformityError(f"row {r} has {w} ones, expected {t}")
    return SetFamily.from_masks(x.masks, x.cols, t)


def family_from_matrix_cols(y: BoolMatrix, t: int) -> SetFamily:
    """Columns of a 0/1 matrix as a family (each column must have t ones)."""
    return family_from_matrix_rows(y.transpose(), t)


def is_q_almost_cross_intersecting(pair: FamilyPair, q: int) -> bool:
    """Does every row and column of the intersection matrix have exactly q zeros?"""
    if len(pair.rows) != len(pair.cols):
        raise DimensionError("families must have equal size")
    m = intersection_matrix(pair)
    return all(m.cols - m.row_ones(r) == q for r in range(m.rows)) and all(
        m.rows - m.col_ones(c) == q for c in range(m.cols)
    )


# -- certificate files -------------------------------------------------------

_CERT_KEYS = ("k", "t", "p", "q", "shift", "rows", "cols")


def pair_to_document(pair: FamilyPair, spec: CirculantSpec, shift: int) -> dict:
    """The JSON certificate consumed and produced by all CLI commands."""
    return {
        "k": pair.k,
        "t": pair.t,
        "p": spec.p,
        "q": spec.q,
        "shift": shift,
        "rows": pair.rows.element_lists(),
        "cols": pair.cols.element_lists(),
    }


def pair_from_document(doc: dict) -> tuple[FamilyPair, CirculantSpec, int]:
    if not isinstance(doc, dict):
        raise CertificateError("certificate must be a JSON object")
    for key in _CERT_KEYS:
        if key not in doc:
            raise CertificateError(f"certificate is missing key {key!r}")
    try:
        k, t, p, q, shift = (int(doc[key]) for key in ("k", "t", "p", "q", "shift"))
        rows = SetFamily.from_element_lists(doc["rows"], k, t)
        cols = SetFamily.from_element_lists(doc["cols"], k, t)
    except (TypeError, ValueError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc
    return FamilyPair(rows, cols), CirculantSpec(p, q), shift


def write_certificate(path: str, pair: FamilyPair, spec: CirculantSpec, shift: int) -> None:
    """Atomic write (temp file + rename) so interrupted runs never leave partial files."""
    doc = pair_to_document(pair, spec, shift)
    write_json_atomic(path, doc)


def write_json_atomic(path: str, doc) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_certificate(path: str) -> tuple[FamilyPair, CirculantSpec, int]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CertificateError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}"
        ) from exc
    return pair_from_document(doc)
