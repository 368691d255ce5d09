"""Boolean matrix algebra and the banded circulant family C(p, q).

Matrices are immutable and row-packed: row r is a Python integer whose bit c
is the entry in column c, so the Boolean product reduces to word-parallel
OR/AND on machine words.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, InvalidSpecError


@dataclass(frozen=True)
class BoolMatrix:
    """Dense 0/1 matrix with Boolean (OR of ANDs) semantics.

    ``masks[r]`` packs row r; bit c holds entry (r, c). Instances are
    immutable values and safe to share between threads.
    """

    rows: int
    cols: int
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise InvalidSpecError(
                f"matrix must have at least one row and column, got {self.rows}x{self.cols}"
            )
        if len(self.masks) != self.rows:
            raise InvalidSpecError(
                f"expected {self.rows} row masks, got {len(self.masks)}"
            )
        limit = 1 << self.cols
        for r, m in enumerate(self.masks):
            if m < 0 or m >= limit:
                raise InvalidSpecError(f"row {r} has bits outside column range")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_bits(cls, bits: list[list[int]]) -> "BoolMatrix":
        """Build from a list of 0/1 rows."""
        rows = len(bits)
        cols = len(bits[0]) if rows else 0
        masks = []
        for row in bits:
            if len(row) != cols:
                raise InvalidSpecError("ragged row lengths")
            m = 0
            for c, v in enumerate(row):
                if v not in (0, 1):
                    raise InvalidSpecError(f"entry {v!r} is not 0 or 1")
                m |= v << c
            masks.append(m)
        return cls(rows, cols, tuple(masks))

    @classmethod
    def from_masks(cls, masks: list[int], cols: int) -> "BoolMatrix":
        return cls(len(masks), cols, tuple(masks))

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, n, tuple(1 << r for r in range(n)))

    @classmethod
    def all_one(cls, rows: int, cols: int) -> "BoolMatrix":
        full = (1 << cols) - 1
        return cls(rows, cols, (full,) * rows)

    @classmethod
    def all_zero(cls, rows: int, cols: int) -> "BoolMatrix":
        return cls(rows, cols, (0,) * rows)

    # -- element access ----------------------------------------------------

    def entry(self, r: int, c: int) -> int:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise DimensionError(f"position ({r}, {c}) outside {self.rows}x{self.cols}")
        return (self.masks[r] >> c) & 1

    def row_mask(self, r: int) -> int:
        return self.masks[r]

    def col_mask(self, c: int) -> int:
        """Column c packed as an integer; bit r holds entry (r, c)."""
        m = 0
        for r in range(self.rows):
            m |= ((self.masks[r] >> c) & 1) << r
        return m

    def row_ones(self, r: int) -> int:
        return self.masks[r].bit_count()

    def col_ones(self, c: int) -> int:
        return self.col_mask(c).bit_count()

    # -- structure ---------------------------------------------------------

    def transpose(self) -> "BoolMatrix":
        return BoolMatrix(
            self.cols, self.rows, tuple(self.col_mask(c) for c in range(self.cols))
        )

    def hstack(self, other: "BoolMatrix") -> "BoolMatrix":
        if other.rows != self.rows:
            raise DimensionError("hstack requires equal row counts")
        masks = tuple(
            self.masks[r] | (other.masks[r] << self.cols) for r in range(self.rows)
        )
        return BoolMatrix(self.rows, self.cols + other.cols, masks)

    def vstack(self, other: "BoolMatrix") -> "BoolMatrix":
        if other.cols != self.cols:
            raise DimensionError("vstack requires equal column counts")
        return BoolMatrix(self.rows + other.rows, self.cols, self.masks + other.masks)

    def submatrix(self, row_idx: list[int], col_idx: list[int]) -> "BoolMatrix":
        """Rows and columns in the given order (repeats allowed)."""
        masks = []
        for r in row_idx:
            src = self.masks[r]
            m = 0
            for pos, c in enumerate(col_idx):
                m |= ((src >> c) & 1) << pos
            masks.append(m)
        return BoolMatrix(len(row_idx), len(col_idx), tuple(masks))

    # -- text formats --------------------------------------------------------

    def to_text(self) -> str:
        """One line per row, characters '0'/'1', no separators."""
        return "\n".join(
            "".join("1" if (m >> c) & 1 else "0" for c in range(self.cols))
            for m in self.masks
        )

    @classmethod
    def from_text(cls, text: str) -> "BoolMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln]
        if not lines:
            raise InvalidSpecError("empty matrix text")
        bits = []
        for ln in lines:
            if set(ln) - {"0", "1"}:
                raise InvalidSpecError(f"invalid characters in row {ln!r}")
            bits.append([int(ch) for ch in ln])
        return cls.from_bits(bits)

    def to_pbm(self) -> str:
        header = f"P1\n{self.cols} {self.rows}\n"
        body = "\n".join(
            " ".join("1" if (m >> c) & 1 else "0" for c in range(self.cols))
            for m in self.masks
        )
        return header + body + "\n"

    @classmethod
    def from_pbm(cls, text: str) -> "BoolMatrix":
        tokens: list[str] = []
        for line in text.splitlines():
            line = line.split("#", 1)[0]
            tokens.extend(line.split())
        if not tokens or tokens[0] != "P1":
            raise InvalidSpecError("not a plain PBM (P1) document")
        try:
            cols, rows = int(tokens[1]), int(tokens[2])
            bits = [int(tok) for tok in tokens[3:]]
        except (IndexError, ValueError) as exc:
            raise InvalidSpecError("malformed PBM header or payload") from exc
        if len(bits) != rows * cols or set(bits) - {0, 1}:
            raise InvalidSpecError("PBM payload does not match declared size")
        return cls.from_bits([bits[r * cols : (r + 1) * cols] for r in range(rows)])


@dataclass(frozen=True)
class CirculantSpec:
    """Parameters of the circulant whose generator column is p ones then q zeros."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise InvalidSpecError(f"p and q must be nonnegative, got ({self.p}, {self.q})")
        if self.p + self.q < 1:
            raise InvalidSpecError("order p + q must be at least 1")

    @property
    def n(self) -> int:
        return self.p + self.q

    def generator(self) -> tuple[int, ...]:
        return (1,) * self.p + (0,) * self.q


def circulant(spec: CirculantSpec) -> BoolMatrix:
    """The order-n circulant with first column p ones then q zeros.

    Entry (r, c) is generator[(r - c) mod n]; each row is the previous row
    shifted one position to the right cyclically.
    """
    n = spec.n
    row0 = 0
    for c in range(n):
        if (0 - c) % n < spec.p:
            row0 |= 1 << c
    masks = [row0]
    full = (1 << n) - 1
    for _ in range(n - 1):
        prev = masks[-1]
        masks.append(((prev << 1) | (prev >> (n - 1))) & full)
    return BoolMatrix(n, n, tuple(masks))


def bool_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Boolean matrix product: entry (r, c) = OR over m of a(r,m) AND b(m,c)."""
    if a.cols != b.rows:
        raise DimensionError(
            f"inner dimensions differ: {a.rows}x{a.cols} times {b.rows}x{b.cols}"
        )
    masks = []
    for r in range(a.rows):
        acc = 0
        rest = a.masks[r]
        while rest:
            low = rest & -rest
            acc |= b.masks[low.bit_length() - 1]
            rest ^= low
        masks.append(acc)
    return BoolMatrix(a.rows, b.cols, tuple(masks))


def rotate_rows(m: BoolMatrix, shift: int) -> BoolMatrix:
    """Row r of the result is row (r + shift) mod n of the input (square only)."""
    if m.rows != m.cols:
        raise DimensionError(f"rotate_rows needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    return BoolMatrix(n, n, tuple(m.masks[(r + shift) % n] for r in range(n)))


def is_cyclic_variant(a: BoolMatrix, spec: CirculantSpec) -> tuple[bool, int | None]:
    """Is ``a`` a row rotation of circulant(spec)?

    Returns (True, shift) with a == rotate_rows(circulant(spec), shift) for the
    smallest such shift, else (False, None). Normalizes between the different
    first-row conventions the constructions use.
    """
    n = spec.n
    if a.rows != n or a.cols != n:
        return False, None
    target = circulant(spec)
    for shift in range(n):
        if all(a.masks[r] == target.masks[(r + shift) % n] for r in range(n)):
            return True, shift
    return False, None
