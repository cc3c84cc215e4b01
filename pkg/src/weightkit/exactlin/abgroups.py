"""Finitely generated abelian groups presented as lattice subquotients.

An FGAbGroup is built from lattices N >= D inside some Z^n and stores

* the invariant data (free rank + divisibility chain of torsion factors),
* a lift basis sending abstract generators to ambient vectors,
* a projection turning any ambient vector of N into generator coordinates.

Generator order is free generators first, then torsion generators in
increasing invariant-factor order, matching the canonical printed form
``Z^r (+) Z/d1 (+) Z/d2 ...``.

Group homomorphisms are integer matrices in generator coordinates with a
well-definedness certificate; images, kernels and exactness questions
reduce to lattice computations in coordinate space.
"""

from __future__ import annotations

from typing import Sequence

from .lattices import Lattice
from .matrix import DimensionMismatch, Matrix
from .normalforms import smith_normal_form
from .rings import ZZ


class FGAbGroup:
    __slots__ = ("free_rank", "torsion", "lift_basis", "_num_basis", "_coord_map",
                 "ambient_rank")

    def __init__(self, free_rank: int, torsion: tuple, lift_basis: Matrix,
                 num_basis: Matrix, coord_map: Matrix):
        object.__setattr__(self, "free_rank", free_rank)
        object.__setattr__(self, "torsion", tuple(torsion))
        object.__setattr__(self, "lift_basis", lift_basis)
        object.__setattr__(self, "_num_basis", num_basis)
        object.__setattr__(self, "_coord_map", coord_map)
        object.__setattr__(self, "ambient_rank", lift_basis.rows)

    def __setattr__(self, *a):
        raise AttributeError("FGAbGroup is immutable")

    # -- construction ---------------------------------------------------------

    @staticmethod
    def subquotient(num: Lattice, den: Lattice) -> "FGAbGroup":
        """The group num/den for lattices den <= num inside Z^n."""
        if num.ambient_rank != den.ambient_rank:
            raise DimensionMismatch("ambient ranks differ")
        if not num.contains(den):
            raise ValueError("denominator lattice not contained in numerator")
        n = num.ambient_rank
        U = num.basis  # n x g0
        g0 = U.cols
        # denominator in numerator coordinates
        rel_cols = []
        for j in range(den.basis.cols):
            c = num.coordinates(den.basis.column(j))
            rel_cols.append(tuple(c))
        R = Matrix.from_columns(ZZ, rel_cols, g0)
        snf = smith_normal_form(R)
        # generators: columns of U * u^{-1}; relation i has order s_i
        uinv = _unimodular_inverse(snf.u)
        gens = U * uinv  # n x g0
        diag = [snf.s[i, i] if i < snf.s.cols else 0 for i in range(g0)]
        free_idx = [i for i in range(g0) if diag[i] == 0]
        tors_idx = [i for i in range(g0) if diag[i] > 1]
        keep = free_idx + tors_idx
        torsion = tuple(diag[i] for i in tors_idx)
        lift = gens.submatrix(range(n), keep)
        # coordinates: y = u * (U \ v), then select kept indices
        coord = snf.u.submatrix(keep, range(g0))
        return FGAbGroup(len(free_idx), torsion, lift, U, coord)

    @staticmethod
    def from_cokernel(rel: Matrix) -> "FGAbGroup":
        """Z^rows / im(rel)."""
        n = rel.rows
        return FGAbGroup.subquotient(Lattice.full(n), Lattice(n, rel))

    @staticmethod
    def zero() -> "FGAbGroup":
        return FGAbGroup.subquotient(Lattice.zero(0), Lattice.zero(0))

    @staticmethod
    def free(rank: int) -> "FGAbGroup":
        return FGAbGroup.subquotient(Lattice.full(rank), Lattice.zero(rank))

    # -- structure --------------------------------------------------------------

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    def invariants(self) -> tuple:
        return (self.free_rank, self.torsion)

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_isomorphic(self, other: "FGAbGroup") -> bool:
        return self.invariants() == other.invariants()

    def order(self):
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __repr__(self):
        return f"FGAbGroup({self})"

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    # -- coordinates -----------------------------------------------------------

    def reduce(self, coords: Sequence[int]) -> tuple:
        """Normalize generator coordinates (torsion entries mod their order)."""
        out = list(int(c) for c in coords)
        for k, d in enumerate(self.torsion):
            out[self.free_rank + k] %= d
        return tuple(out)

    def project(self, vec: Sequence[int]) -> tuple:
        """Generator coordinates of an ambient vector lying in the numerator."""
        lat = Lattice(self.ambient_rank, self._num_basis, canonical=True)
        c = lat.coordinates(vec)
        if c is None:
            raise ValueError("vector outside the numerator lattice")
        return self.reduce(self._coord_map.apply(c))

    def lift(self, coords: Sequence[int]) -> tuple:
        """An ambient representative of the element with these coordinates."""
        return self.lift_basis.apply(list(coords))

    def relation_lattice(self) -> Lattice:
        """Coordinate vectors that are zero in the group."""
        cols = []
        for k, d in enumerate(self.torsion):
            e = [0] * self.ngens
            e[self.free_rank + k] = d
            cols.append(tuple(e))
        return Lattice.from_columns(self.ngens, cols)

    def elements(self):
        """All elements (finite groups only), as coordinate tuples."""
        if self.free_rank:
            raise ValueError("infinite group")
        coords = [()]
        for d in self.torsion:
            coords = [c + (v,) for c in coords for v in range(d)]
        return coords


def _unimodular_inverse(u: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = u.rows
    aug = u.hstack(Matrix.identity(ZZ, n))
    from .normalforms import row_hermite
    h = row_hermite(aug)
    # hermite of [u | I] is [I | u^{-1}] up to signs since |det u| = 1
    left = h.submatrix(range(n), range(n))
    right = h.submatrix(range(n), range(n, 2 * n))
    rows = []
    for i in range(n):
        if left[i, i] == 1:
            rows.append(right.row(i))
        elif left[i, i] == -1:
            rows.append(tuple(-x for x in right.row(i)))
        else:  # pragma: no cover - u not unimodular
            raise ValueError("matrix is not unimodular")
    return Matrix(ZZ, rows, n, n)


class GroupHom:
    """Homomorphism between FGAbGroups as a matrix in generator coordinates."""

    __slots__ = ("src", "tgt", "mat")

    def __init__(self, src: FGAbGroup, tgt: FGAbGroup, mat: Matrix, check: bool = True):
        if mat.shape != (tgt.ngens, src.ngens):
            raise DimensionMismatch("hom matrix shape")
        if check and not _well_defined(src, tgt, mat):
            raise ValueError("matrix does not respect the relations")
        self.src = src
        self.tgt = tgt
        self.mat = mat

    @staticmethod
    def from_ambient(src: FGAbGroup, tgt: FGAbGroup, amb: Matrix) -> "GroupHom":
        """Induced map from an ambient linear map sending numerator into numerator."""
        cols = []
        for j in range(src.ngens):
            v = amb.apply(src.lift([1 if i == j else 0 for i in range(src.ngens)]))
            cols.append(tgt.project(v))
        return GroupHom(src, tgt, Matrix.from_columns(ZZ, cols, tgt.ngens))

    @staticmethod
    def identity(g: FGAbGroup) -> "GroupHom":
        return GroupHom(g, g, Matrix.identity(ZZ, g.ngens), check=False)

    @staticmethod
    def zero(src: FGAbGroup, tgt: FGAbGroup) -> "GroupHom":
        return GroupHom(src, tgt, Matrix.zeros(ZZ, tgt.ngens, src.ngens), check=False)

    def __call__(self, coords: Sequence[int]) -> tuple:
        return self.tgt.reduce(self.mat.apply(list(coords)))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self o other."""
        if other.tgt.invariants() != self.src.invariants():
            raise DimensionMismatch("composition mismatch")
        return GroupHom(other.src, self.tgt, self.mat * other.mat, check=False)

    def add(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.src, self.tgt, self.mat + other.mat, check=False)

    def neg(self) -> "GroupHom":
        return GroupHom(self.src, self.tgt, -self.mat, check=False)

    # -- lattices in target / source coordinate space -------------------------

    def image_lattice(self) -> Lattice:
        return Lattice(self.tgt.ngens, self.mat).add(self.tgt.relation_lattice())

    def kernel_lattice(self) -> Lattice:
        return self.tgt.relation_lattice().preimage(self.mat)

    def image_group(self) -> tuple:
        """(subgroup I, inclusion I -> tgt)."""
        num = self.image_lattice()
        den = self.tgt.relation_lattice()
        grp = FGAbGroup.subquotient(num, den)
        incl = GroupHom(grp, self.tgt, grp.lift_basis, check=False)
        return grp, incl

    def kernel_group(self) -> tuple:
        """(subgroup K, inclusion K -> src)."""
        num = self.kernel_lattice()
        den = self.src.relation_lattice()
        grp = FGAbGroup.subquotient(num, den)
        incl = GroupHom(grp, self.src, grp.lift_basis, check=False)
        return grp, incl

    def is_zero_hom(self) -> bool:
        rel = self.tgt.relation_lattice()
        return all(rel.contains_vector(self.mat.column(j)) for j in range(self.mat.cols))

    def is_isomorphism(self) -> bool:
        if not self.image_lattice().contains(Lattice.full(self.tgt.ngens)):
            return False
        ker = self.kernel_lattice()
        return ker == self.src.relation_lattice()


def _well_defined(src: FGAbGroup, tgt: FGAbGroup, mat: Matrix) -> bool:
    rel = tgt.relation_lattice()
    for k, d in enumerate(src.torsion):
        col = [d * mat[i, src.free_rank + k] for i in range(tgt.ngens)]
        if not rel.contains_vector(col):
            return False
    return True


def homology_at(f: GroupHom, g: GroupHom) -> FGAbGroup:
    """ker(g)/im(f) for composable maps A -f-> B -g-> C with g o f = 0."""
    ker = g.kernel_lattice()
    im = f.image_lattice()
    return FGAbGroup.subquotient(ker, im)


def exact_at(f: GroupHom, g: GroupHom) -> bool:
    """im(f) == ker(g) at the middle group."""
    return f.image_lattice() == g.kernel_lattice()
