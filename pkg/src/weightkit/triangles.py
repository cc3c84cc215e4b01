"""Candidate triangles and certified distinguishedness in K^b.

A triangle U -a-> V -b-> W -c-> U[1] is distinguished iff it is
isomorphic to the cone triangle of a.  Given a null-homotopy h of b o a,
the componentwise map phi = [h, b]: cone(a) -> W is a chain map, and the
triangle is distinguished iff phi is a homotopy equivalence with
c o phi homotopic to the canonical projection cone(a) -> U[1].  All
three conditions are exact linear solves, and the witnesses are kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complexes import (ChainMap, Complex, Homotopy, Matrix, cone, homotopic,
                        is_homotopy_equivalence, is_null_homotopic, shift)


@dataclass
class Triangle:
    """U -a-> V -b-> W -c-> U[1]."""
    a: ChainMap
    b: ChainMap
    c: ChainMap

    def __post_init__(self):
        if self.a.target != self.b.source or self.b.target != self.c.source:
            raise ValueError("triangle maps do not chain")
        if self.c.target != shift(self.a.source, 1):
            raise ValueError("third map must land in U[1]")

    @property
    def u(self) -> Complex:
        return self.a.source

    @property
    def v(self) -> Complex:
        return self.a.target

    @property
    def w(self) -> Complex:
        return self.b.target


@dataclass
class TriangleWitness:
    """Everything needed to certify a triangle distinguished."""
    null_homotopy: Homotopy          # witnesses b o a ~ 0
    comparison: ChainMap             # phi: cone(a) -> W
    inverse: ChainMap                # psi: W -> cone(a)
    inv_left: Homotopy               # psi phi ~ id
    inv_right: Homotopy              # phi psi ~ id
    proj_homotopy: Homotopy          # c o phi ~ proj


def cone_triangle(f: ChainMap) -> Triangle:
    c, inc, proj = cone(f)
    return Triangle(f, inc, proj)


def comparison_map(tri: Triangle, h: Homotopy) -> ChainMap:
    """phi = [h, b]: cone(a) -> W built from a null-homotopy of b o a."""
    cn, _, _ = cone(tri.a)
    w = tri.w
    comps = {}
    for i in cn.degrees():
        if w.rank(i) == 0 or cn.rank(i) == 0:
            continue
        left = h.component(i + 1)            # U^(i+1) -> W^i
        right = tri.b.component(i)           # V^i -> W^i
        comps[i] = Matrix.block([[left, right]])
    return ChainMap(cn, w, comps)


def verify_distinguished(tri: Triangle, h: Optional[Homotopy] = None) -> Optional[TriangleWitness]:
    """Certify that tri is distinguished, or return None.

    The null-homotopy of b o a may be supplied (constructions know it);
    otherwise one is searched for.  Note the search commits to one h, so
    a None result for an exotic h choice is possible in principle; the
    constructions in this package always pass their canonical witness.
    """
    if h is None:
        h = is_null_homotopic(tri.b.compose(tri.a))
        if h is None:
            return None
    elif not tri.b.compose(tri.a).sub(h.boundary()).is_zero_map():
        raise ValueError("supplied homotopy does not witness b o a = 0")
    phi = comparison_map(tri, h)
    eq = is_homotopy_equivalence(phi)
    if eq is None:
        return None
    psi, s, t = eq
    cn, _, proj = cone(tri.a)
    ph = homotopic(tri.c.compose(phi), proj)
    if ph is None:
        return None
    return TriangleWitness(h, phi, psi, s, t, ph)


def rotate(tri: Triangle) -> Triangle:
    """V -b-> W -c-> U[1] -(-a[1])-> V[1]."""
    return Triangle(tri.b, tri.c, tri.a.shift(1).scale(-1))
