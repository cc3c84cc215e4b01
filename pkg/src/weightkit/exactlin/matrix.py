"""Dense exact matrices over Z, Z/n and Q.

Entries are stored row-major as a tuple of tuples and never mutated;
all operations return fresh matrices.  Problem sizes in this package
stay small (ranks up to a few dozen), so density is deliberate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .rings import QQ, Ring, RingMismatch, ZZ, same_ring


class DimensionMismatch(Exception):
    pass


class NotSquare(Exception):
    pass


class Matrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, entries: Sequence[Sequence], rows: int | None = None,
                 cols: int | None = None):
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        norm = ring.normalize
        data = []
        for r in entries:
            row = tuple(norm(x) for x in r)
            if len(row) != cols:
                raise DimensionMismatch("ragged rows")
            data.append(row)
        if len(data) != rows:
            raise DimensionMismatch("row count mismatch")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(data))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Matrix is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zeros(ring: Ring, rows: int, cols: int) -> "Matrix":
        z = ring.zero
        return Matrix(ring, [[z] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def identity(ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return Matrix(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @staticmethod
    def diagonal(ring: Ring, diag: Sequence) -> "Matrix":
        n = len(diag)
        z = ring.zero
        return Matrix(ring, [[diag[i] if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(ring: Ring, columns: Sequence[Sequence], ambient: int | None = None) -> "Matrix":
        if not columns:
            if ambient is None:
                raise DimensionMismatch("empty column list needs explicit ambient size")
            return Matrix.zeros(ring, ambient, 0)
        rows = len(columns[0])
        return Matrix(ring, [[columns[j][i] for j in range(len(columns))] for i in range(rows)],
                      rows, len(columns))

    # -- basic access ------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(x == z for row in self.entries for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.shape == other.shape and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.scalar_str(x) for x in row) for row in self.entries)
        return f"Matrix({self.ring}, {self.rows}x{self.cols}, [{body}])"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        same_ring(self.ring, other.ring)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.ring, [[a + b for a, b in zip(r1, r2)]
                                  for r1, r2 in zip(self.entries, other.entries)],
                      self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        same_ring(self.ring, other.ring)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.ring, [[a - b for a, b in zip(r1, r2)]
                                  for r1, r2 in zip(self.entries, other.entries)],
                      self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, [[-a for a in row] for row in self.entries],
                      self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        return Matrix(self.ring, [[c * a for a in row] for row in self.entries],
                      self.rows, self.cols)

    def __mul__(self, other: "Matrix") -> "Matrix":
        same_ring(self.ring, other.ring)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} * {other.shape}")
        ot = other.transpose().entries
        return Matrix(self.ring,
                      [[sum(a * b for a, b in zip(row, col)) for col in ot]
                       for row in self.entries],
                      self.rows, other.cols)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product, returning a plain tuple of scalars."""
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length")
        norm = self.ring.normalize
        return tuple(norm(sum(a * x for a, x in zip(row, vec))) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, [[self.entries[i][j] for i in range(self.rows)]
                                  for j in range(self.cols)], self.cols, self.rows)

    def map(self, f: Callable) -> "Matrix":
        return Matrix(self.ring, [[f(x) for x in row] for row in self.entries],
                      self.rows, self.cols)

    # -- block assembly ----------------------------------------------------

    def hstack(self, other: "Matrix") -> "Matrix":
        same_ring(self.ring, other.ring)
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row counts")
        return Matrix(self.ring, [r1 + r2 for r1, r2 in zip(self.entries, other.entries)],
                      self.rows, self.cols + other.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        same_ring(self.ring, other.ring)
        if self.cols != other.cols:
            raise DimensionMismatch("vstack col counts")
        return Matrix(self.ring, list(self.entries) + list(other.entries),
                      self.rows + other.rows, self.cols)

    @staticmethod
    def block(rows_of_blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        strips = []
        for row in rows_of_blocks:
            strip = row[0]
            for b in row[1:]:
                strip = strip.hstack(b)
            strips.append(strip)
        out = strips[0]
        for s in strips[1:]:
            out = out.vstack(s)
        return out

    @staticmethod
    def block_diag(blocks: Sequence["Matrix"], ring: Ring | None = None) -> "Matrix":
        if not blocks:
            if ring is None:
                raise DimensionMismatch("empty block_diag needs a ring")
            return Matrix.zeros(ring, 0, 0)
        ring = blocks[0].ring
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[ring.zero] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return Matrix(ring, out, rows, cols)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows = list(rows)
        cols = list(cols)
        return Matrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows],
                      len(rows), len(cols))

    # -- ring changes --------------------------------------------------------

    def change_ring(self, ring: Ring) -> "Matrix":
        return Matrix(ring, self.entries, self.rows, self.cols)

    def lift_to_Z(self) -> "Matrix":
        """Integer lift: residues as-is for Z/n, denominators cleared for Q."""
        if self.ring == QQ:
            den = 1
            for row in self.entries:
                for x in row:
                    den = den * x.denominator // _gcd(den, x.denominator)
            return Matrix(ZZ, [[int(x * den) for x in row] for row in self.entries],
                          self.rows, self.cols)
        return Matrix(ZZ, self.entries, self.rows, self.cols)

    # -- determinant (exact) -------------------------------------------------

    def det(self):
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise NotSquare(f"{self.shape}")
        n = self.rows
        if n == 0:
            return self.ring.one
        if self.ring == QQ:
            a = [[Fraction(x) for x in row] for row in self.entries]
            det = Fraction(1)
            for k in range(n):
                piv = next((i for i in range(k, n) if a[i][k] != 0), None)
                if piv is None:
                    return Fraction(0)
                if piv != k:
                    a[k], a[piv] = a[piv], a[k]
                    det = -det
                det *= a[k][k]
                inv = 1 / a[k][k]
                for i in range(k + 1, n):
                    f = a[i][k] * inv
                    if f:
                        a[i] = [x - f * y for x, y in zip(a[i], a[k])]
            return det
        # integer (or lifted Z/n) Bareiss
        a = [[int(x) for x in row] for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                return self.ring.normalize(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return self.ring.normalize(sign * a[n - 1][n - 1])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)
