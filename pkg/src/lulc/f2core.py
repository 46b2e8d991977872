"""Linear algebra over F2 on int-packed bit vectors.

Position j (1-based, as in every external format) lives in bit j-1 of the
packed integer, so Python's arbitrary-width ints give word-parallel XOR/AND.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

MAX_SPAN_DIM = 24


class DimensionError(ValueError):
    pass


class CapacityError(ValueError):
    pass


def parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True, slots=True)
class BitVec:
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0 or self.bits < 0 or self.bits >> self.n:
            raise DimensionError(f"bits {self.bits:#x} do not fit in length {self.n}")

    @classmethod
    def from_str(cls, s: str) -> BitVec:
        """Parse '0'/'1' text with position 1 leftmost."""
        s = s.strip()
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a bit string: {s!r}")
        return cls(len(s), sum(1 << j for j, ch in enumerate(s) if ch == "1"))

    @classmethod
    def from_bits(cls, seq: Sequence[int]) -> BitVec:
        return cls(len(seq), sum((b & 1) << j for j, b in enumerate(seq)))

    @classmethod
    def from_positions(cls, n: int, positions) -> BitVec:
        bits = 0
        for j in positions:
            if not 1 <= j <= n:
                raise DimensionError(f"position {j} outside 1..{n}")
            bits |= 1 << (j - 1)
        return cls(n, bits)

    def __getitem__(self, j: int) -> int:
        """Bit at 1-based position j."""
        if not 1 <= j <= self.n:
            raise IndexError(j)
        return (self.bits >> (j - 1)) & 1

    def __len__(self):
        return self.n

    def __iter__(self) -> Iterator[int]:
        return (((self.bits >> j) & 1) for j in range(self.n))

    def __xor__(self, other: BitVec) -> BitVec:
        _check_len(self, other)
        return BitVec(self.n, self.bits ^ other.bits)

    __add__ = __xor__

    def __and__(self, other: BitVec) -> BitVec:
        _check_len(self, other)
        return BitVec(self.n, self.bits & other.bits)

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def support(self) -> list[int]:
        return [j + 1 for j in range(self.n) if (self.bits >> j) & 1]

    def to_str(self) -> str:
        return "".join(str(b) for b in self)

    def __str__(self):
        return self.to_str()


def _check_len(u: BitVec, v: BitVec) -> None:
    if u.n != v.n:
        raise DimensionError(f"length mismatch: {u.n} vs {v.n}")


def f2_dot(u: BitVec, v: BitVec) -> int:
    _check_len(u, v)
    return parity(u.bits & v.bits)


@dataclass(frozen=True, slots=True)
class BitMatrix:
    """Dense F2 matrix stored as a tuple of packed rows."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise DimensionError("row count does not match nrows")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise DimensionError("row wider than ncols")

    @classmethod
    def from_vecs(cls, vecs: Sequence[BitVec], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            if not vecs:
                raise DimensionError("cannot infer width of an empty matrix")
            ncols = vecs[0].n
        for v in vecs:
            if v.n != ncols:
                raise DimensionError("ragged rows")
        return cls(len(vecs), ncols, tuple(v.bits for v in vecs))

    @classmethod
    def from_strs(cls, strs: Sequence[str]) -> BitMatrix:
        return cls.from_vecs([BitVec.from_str(s) for s in strs])

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls.from_vecs([BitVec.from_bits(r) for r in rows], ncols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << j for j in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    def row(self, i: int) -> BitVec:
        """Row at 1-based index i."""
        return BitVec(self.ncols, self.rows[i - 1])

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i - 1] >> (j - 1)) & 1

    def column(self, j: int) -> BitVec:
        return BitVec(self.nrows, sum(((r >> (j - 1)) & 1) << i for i, r in enumerate(self.rows)))

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.ncols, self.nrows, tuple(self.column(j).bits for j in range(1, self.ncols + 1)))

    def mul_vec(self, v: BitVec) -> BitVec:
        if v.n != self.ncols:
            raise DimensionError(f"vector length {v.n} != ncols {self.ncols}")
        return BitVec(self.nrows, sum(parity(r & v.bits) << i for i, r in enumerate(self.rows)))

    def rank(self) -> int:
        return rank_rows(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]


def rank_rows(rows: Sequence[int]) -> int:
    return len(_echelon(list(rows)))


def _echelon(rows: list[int]) -> list[int]:
    """Reduced basis keyed on lowest set bit; returns the nonzero basis rows."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r & (b & -b):
                r ^= b
        if r:
            low = r & -r
            basis = [b ^ r if b & low else b for b in basis]
            basis.append(r)
    return basis


@dataclass(frozen=True, slots=True)
class Subspace:
    n: int
    basis: tuple[int, ...]

    def __post_init__(self):
        for b in self.basis:
            if b < 0 or b >> self.n:
                raise DimensionError("basis vector wider than ambient dimension")
        if rank_rows(self.basis) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def from_vecs(cls, vecs: Sequence[BitVec], n: int | None = None) -> Subspace:
        if n is None:
            n = vecs[0].n
        if any(v.n != n for v in vecs):
            raise DimensionError("basis vectors of mixed length")
        return cls(n, tuple(v.bits for v in vecs))

    @classmethod
    def from_strs(cls, strs: Sequence[str]) -> Subspace:
        return cls.from_vecs([BitVec.from_str(s) for s in strs])

    @classmethod
    def spanned_by(cls, n: int, vecs: Sequence[int]) -> Subspace:
        """Subspace spanned by possibly dependent packed vectors."""
        return cls(n, tuple(sorted(_echelon(list(vecs)))))

    @property
    def d(self) -> int:
        return len(self.basis)

    def basis_vecs(self) -> list[BitVec]:
        return [BitVec(self.n, b) for b in self.basis]

    def matrix(self) -> BitMatrix:
        return BitMatrix(self.d, self.n, self.basis)

    def contains(self, v: BitVec | int) -> bool:
        bits = v.bits if isinstance(v, BitVec) else v
        return rank_rows(self.basis + (bits,)) == self.d

    def span_bits(self) -> list[int]:
        """Packed span elements, index h = sum h_k 2^(k-1)."""
        if self.d > MAX_SPAN_DIM:
            raise CapacityError(f"span of dimension {self.d} exceeds {MAX_SPAN_DIM}")
        out = [0]
        for b in self.basis:
            out += [x ^ b for x in out]
        return out


def enumerate_span(s: Subspace) -> list[tuple[BitVec, BitVec]]:
    """All (h, x^h) pairs with x^h = sum_k h_k xi^k, h increasing as an integer."""
    return [(BitVec(s.d, h), BitVec(s.n, x)) for h, x in enumerate(s.span_bits())]


def kernel(m: BitMatrix) -> Subspace:
    """Basis of {y : m y = 0}."""
    # Echelon form with pivots; free columns give one kernel vector each.
    pivots: dict[int, int] = {}  # pivot column -> reduced row
    for r in m.rows:
        for col, prow in pivots.items():
            if (r >> col) & 1:
                r ^= prow
        if r:
            col = (r & -r).bit_length() - 1
            for c, prow in list(pivots.items()):
                if (prow >> col) & 1:
                    pivots[c] = prow ^ r
            pivots[col] = r
    basis = []
    for free in range(m.ncols):
        if free in pivots:
            continue
        y = 1 << free
        for col, prow in pivots.items():
            if (prow >> free) & 1:
                y |= 1 << col
        basis.append(y)
    return Subspace(m.ncols, tuple(basis))


def solve_f2(a: BitMatrix, b: BitVec) -> tuple[BitVec, Subspace] | None:
    """Solve a x = b; returns (particular, nullspace) or None if inconsistent."""
    if b.n != a.nrows:
        raise DimensionError(f"rhs length {b.n} != rows {a.nrows}")
    aug_bit = 1 << a.ncols
    rows = [r | (aug_bit if (b.bits >> i) & 1 else 0) for i, r in enumerate(a.rows)]
    pivots: dict[int, int] = {}
    for r in rows:
        for col, prow in pivots.items():
            if (r >> col) & 1:
                r ^= prow
        if not r:
            continue
        if r == aug_bit:
            return None
        col = (r & -r).bit_length() - 1
        for c, prow in list(pivots.items()):
            if (prow >> col) & 1:
                pivots[c] = prow ^ r
        pivots[col] = r
    x = 0
    for col, prow in pivots.items():
        if prow & aug_bit:
            x |= 1 << col
    return BitVec(a.ncols, x), kernel(a)
