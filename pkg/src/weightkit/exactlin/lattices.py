"""Integer lattices (subgroups of Z^n) with canonical Hermite bases.

The canonical representative of a lattice is its column Hermite basis,
so two lattices are equal iff their ``basis`` matrices are equal.
Filtration steps, kernels and images throughout the package are carried
as Lattice values.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

from .matrix import DimensionMismatch, Matrix
from .normalforms import column_hermite, kernel_columns_Z
from .rings import ZZ


class Lattice:
    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank: int, basis: Matrix, canonical: bool = False):
        if basis.rows != ambient_rank:
            raise DimensionMismatch("basis rows != ambient rank")
        if not canonical:
            h = column_hermite(basis)
            cols = [j for j in range(h.cols) if any(h[i, j] != 0 for i in range(h.rows))]
            basis = h.submatrix(range(h.rows), cols)
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, *a):
        raise AttributeError("Lattice is immutable")

    @staticmethod
    def from_columns(ambient_rank: int, columns: Sequence[Sequence]) -> "Lattice":
        return Lattice(ambient_rank, Matrix.from_columns(ZZ, list(columns), ambient_rank))

    @staticmethod
    def full(n: int) -> "Lattice":
        return Lattice(n, Matrix.identity(ZZ, n), canonical=True)

    @staticmethod
    def zero(n: int) -> "Lattice":
        return Lattice(n, Matrix.zeros(ZZ, n, 0), canonical=True)

    @property
    def rank(self) -> int:
        return self.basis.cols

    def is_zero(self) -> bool:
        return self.rank == 0

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.ambient_rank == other.ambient_rank
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return f"Lattice(rank {self.rank} in Z^{self.ambient_rank})"

    # -- membership ---------------------------------------------------------

    def coordinates(self, vec: Sequence[int]):
        """Coordinates of vec in the Hermite basis, or None if outside."""
        v = [int(x) for x in vec]
        if len(v) != self.ambient_rank:
            raise DimensionMismatch("vector length")
        b = self.basis
        coords = [0] * b.cols
        # column Hermite basis: pivots at increasing rows, forward substitute
        col = 0
        pivots = []
        for j in range(b.cols):
            i = next(i for i in range(b.rows) if b[i, j] != 0)
            pivots.append(i)
        for j in range(b.cols):
            i = pivots[j]
            if v[i] % b[i, j] != 0:
                return None
            q = v[i] // b[i, j]
            coords[j] = q
            if q:
                for r in range(b.rows):
                    v[r] -= q * b[r, j]
        if any(v):
            return None
        return coords

    def contains_vector(self, vec: Sequence[int]) -> bool:
        return self.coordinates(vec) is not None

    def contains(self, other: "Lattice") -> bool:
        return all(self.contains_vector(other.basis.column(j)) for j in range(other.basis.cols))

    # -- arithmetic -----------------------------------------------------------

    def add(self, other: "Lattice") -> "Lattice":
        if self.ambient_rank != other.ambient_rank:
            raise DimensionMismatch("ambient ranks differ")
        return Lattice(self.ambient_rank, self.basis.hstack(other.basis))

    def intersect(self, other: "Lattice") -> "Lattice":
        if self.ambient_rank != other.ambient_rank:
            raise DimensionMismatch("ambient ranks differ")
        if self.is_zero() or other.is_zero():
            return Lattice.zero(self.ambient_rank)
        stacked = self.basis.hstack(other.basis.scale(-1))
        ker = kernel_columns_Z(stacked)
        cols = []
        for k in ker:
            u = k[:self.basis.cols]
            cols.append(self.basis.apply(u))
        return Lattice.from_columns(self.ambient_rank, cols)

    def preimage(self, a: Matrix) -> "Lattice":
        """{x : a*x in self}; a maps Z^cols -> Z^ambient_rank."""
        if a.rows != self.ambient_rank:
            raise DimensionMismatch("map target != ambient rank")
        if self.is_zero():
            return Lattice(a.cols, Matrix.from_columns(ZZ, kernel_columns_Z(a), a.cols))
        stacked = a.hstack(self.basis.scale(-1))
        ker = kernel_columns_Z(stacked)
        cols = [k[:a.cols] for k in ker]
        return Lattice.from_columns(a.cols, cols)

    def image(self, a: Matrix) -> "Lattice":
        """a(self); a maps Z^ambient_rank -> Z^rows."""
        if a.cols != self.ambient_rank:
            raise DimensionMismatch("map source != ambient rank")
        return Lattice(a.rows, a * self.basis)

    def scaled(self, c: int) -> "Lattice":
        return Lattice(self.ambient_rank, self.basis.scale(c))

    def saturation(self) -> "Lattice":
        """(self tensor Q) intersected with Z^n: the smallest saturated overlattice."""
        if self.is_zero():
            return self
        # rows orthogonal to the basis cut out exactly the rational span
        ortho = kernel_columns_Z(self.basis.transpose())
        if not ortho:
            return Lattice.full(self.ambient_rank)
        cut = Matrix(ZZ, [list(r) for r in ortho], len(ortho), self.ambient_rank)
        return Lattice(self.ambient_rank,
                       Matrix.from_columns(ZZ, kernel_columns_Z(cut), self.ambient_rank))


def lattice_intersect(l1: Lattice, l2: Lattice) -> Lattice:
    return l1.intersect(l2)


def lattice_sum(l1: Lattice, l2: Lattice) -> Lattice:
    return l1.add(l2)


def lattice_preimage(a: Matrix, l: Lattice) -> Lattice:
    return l.preimage(a)
