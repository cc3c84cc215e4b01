"""Exact linear algebra over Z, Z/n and Q: the substrate for everything else."""

from .rings import QQ, Ring, RingMismatch, WrongRing, ZZ, Zmod, ring_from_str, same_ring
from .matrix import DimensionMismatch, Matrix, NotSquare
from .normalforms import (SmithForm, column_hermite, howell_form, kernel_columns_Z,
                          row_hermite, smith_normal_form)
from .lattices import Lattice, lattice_intersect, lattice_preimage, lattice_sum
from .linsolve import kernel_lattice, solve
from .abgroups import FGAbGroup, GroupHom, exact_at, homology_at
from .charpoly import char_rev_poly


def cokernel_group(a: Matrix) -> FGAbGroup:
    """Z^rows / im(a) for an integer matrix, with lift and projection maps."""
    if a.ring != ZZ:
        raise WrongRing("cokernel presentation requires ring = Integers")
    return FGAbGroup.from_cokernel(a)


__all__ = [
    "Ring", "ZZ", "QQ", "Zmod", "ring_from_str", "same_ring",
    "WrongRing", "RingMismatch", "DimensionMismatch", "NotSquare",
    "Matrix", "SmithForm", "smith_normal_form", "row_hermite", "column_hermite",
    "howell_form", "kernel_columns_Z",
    "Lattice", "lattice_intersect", "lattice_sum", "lattice_preimage",
    "solve", "kernel_lattice", "cokernel_group",
    "FGAbGroup", "GroupHom", "exact_at", "homology_at",
    "char_rev_poly",
]
