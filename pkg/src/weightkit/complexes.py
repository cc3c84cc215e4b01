"""Bounded cochain complexes of finite free modules and their morphism calculus.

Complexes are cohomological (differentials raise degree by one) and
bounded by construction, so every homotopy/ideal-membership question is
a finite exact linear system.  Sign conventions, fixed once and recorded
as normative:

* ``shift(x, n)`` multiplies the differential by (-1)^n,
* ``cone(f)`` has differential [[-d_X, 0], [f, d_Y]].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactlin import (FGAbGroup, Lattice, Matrix, QQ, Ring, WrongRing, ZZ,
                       kernel_lattice, same_ring, solve)


class InvalidChainMap(Exception):
    pass


class Complex:
    """A bounded complex: per-degree ranks and differentials d^i with d^2 = 0."""

    __slots__ = ("ring", "min_deg", "max_deg", "ranks", "diffs")

    def __init__(self, ring: Ring, min_deg: int, ranks: list, diffs: list):
        # trim zero ranks at both ends so the window is canonical
        ranks = list(ranks)
        diffs = list(diffs)
        while ranks and ranks[0] == 0:
            ranks.pop(0)
            if diffs:
                diffs.pop(0)
            min_deg += 1
        while ranks and ranks[-1] == 0:
            ranks.pop()
            if diffs:
                diffs.pop()
        if not ranks:
            min_deg = 0
        if len(diffs) != max(0, len(ranks) - 1):
            raise ValueError("need exactly one differential per adjacent degree pair")
        for k, d in enumerate(diffs):
            if d.ring != ring:
                raise WrongRing("differential over the wrong ring")
            if d.shape != (ranks[k + 1], ranks[k]):
                raise ValueError(f"differential {k} has shape {d.shape}, "
                                 f"expected {(ranks[k + 1], ranks[k])}")
        for k in range(len(diffs) - 1):
            if not (diffs[k + 1] * diffs[k]).is_zero():
                raise ValueError(f"d^2 != 0 at degree {min_deg + k}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "min_deg", min_deg)
        object.__setattr__(self, "max_deg", min_deg + len(ranks) - 1)
        object.__setattr__(self, "ranks", tuple(ranks))
        object.__setattr__(self, "diffs", tuple(diffs))

    def __setattr__(self, *a):
        raise AttributeError("Complex is immutable")

    # -- access ------------------------------------------------------------

    def rank(self, i: int) -> int:
        if self.is_zero() or i < self.min_deg or i > self.max_deg:
            return 0
        return self.ranks[i - self.min_deg]

    def diff(self, i: int) -> Matrix:
        """d^i: degree i -> degree i+1 (zero matrix outside the window)."""
        if not self.is_zero() and self.min_deg <= i < self.max_deg:
            return self.diffs[i - self.min_deg]
        return Matrix.zeros(self.ring, self.rank(i + 1), self.rank(i))

    def degrees(self):
        if self.is_zero():
            return range(0)
        return range(self.min_deg, self.max_deg + 1)

    def is_zero(self) -> bool:
        return not self.ranks

    def support(self) -> tuple:
        return (self.min_deg, self.max_deg) if not self.is_zero() else (0, -1)

    def total_rank(self) -> int:
        return sum(self.ranks)

    def __eq__(self, other):
        return (isinstance(other, Complex) and self.ring == other.ring
                and self.min_deg == other.min_deg and self.ranks == other.ranks
                and self.diffs == other.diffs)

    def __hash__(self):
        return hash((self.ring, self.min_deg, self.ranks, self.diffs))

    def __repr__(self):
        if self.is_zero():
            return f"Complex({self.ring}, 0)"
        return f"Complex({self.ring}, degrees [{self.min_deg},{self.max_deg}], ranks {list(self.ranks)})"

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero(ring: Ring) -> "Complex":
        return Complex(ring, 0, [], [])

    @staticmethod
    def concentrated(ring: Ring, degree: int, rank: int) -> "Complex":
        return Complex(ring, degree, [rank], [])

    @staticmethod
    def from_diffs(ring: Ring, min_deg: int, diffs: list) -> "Complex":
        """Build from a chain of differentials d^min_deg, d^(min_deg+1), ..."""
        if not diffs:
            raise ValueError("use concentrated() for one-term complexes")
        ranks = [diffs[0].cols] + [d.rows for d in diffs]
        return Complex(ring, min_deg, ranks, diffs)

    def change_ring(self, ring: Ring) -> "Complex":
        return Complex(ring, self.min_deg, list(self.ranks),
                       [d.change_ring(ring) for d in self.diffs])


class ChainMap:
    """Degreewise components f^i with d_Y f = f d_X."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: Complex, target: Complex, components: dict, check: bool = True):
        same_ring(source.ring, target.ring)
        comps = {}
        for i, mtx in components.items():
            if mtx.shape != (target.rank(i), source.rank(i)):
                raise InvalidChainMap(f"component {i} has shape {mtx.shape}, "
                                      f"expected {(target.rank(i), source.rank(i))}")
            if not mtx.is_zero():
                comps[i] = mtx
        self.source = source
        self.target = target
        self.components = comps
        if check and not self._commutes():
            raise InvalidChainMap("components do not commute with the differentials")

    def _commutes(self) -> bool:
        lo = min(self.source.min_deg, self.target.min_deg) - 1 \
            if not (self.source.is_zero() or self.target.is_zero()) else 0
        hi = max(self.source.max_deg, self.target.max_deg) + 1 \
            if not (self.source.is_zero() or self.target.is_zero()) else 0
        for i in range(lo, hi):
            lhs = self.target.diff(i) * self.component(i)
            rhs = self.component(i + 1) * self.source.diff(i)
            if lhs != rhs:
                return False
        return True

    def component(self, i: int) -> Matrix:
        if i in self.components:
            return self.components[i]
        return Matrix.zeros(self.source.ring, self.target.rank(i), self.source.rank(i))

    @staticmethod
    def zero(source: Complex, target: Complex) -> "ChainMap":
        return ChainMap(source, target, {}, check=False)

    @staticmethod
    def identity(x: Complex) -> "ChainMap":
        return ChainMap(x, x, {i: Matrix.identity(x.ring, x.rank(i))
                                for i in x.degrees() if x.rank(i)}, check=False)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self o other."""
        if other.target != self.source:
            raise InvalidChainMap("composition mismatch")
        comps = {}
        for i in set(self.components) & set(other.components):
            comps[i] = self.components[i] * other.components[i]
        return ChainMap(other.source, self.target, comps, check=False)

    def add(self, other: "ChainMap") -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise InvalidChainMap("sum mismatch")
        comps = {}
        for i in set(self.components) | set(other.components):
            comps[i] = self.component(i) + other.component(i)
        return ChainMap(self.source, self.target, comps, check=False)

    def sub(self, other: "ChainMap") -> "ChainMap":
        return self.add(other.scale(-1))

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {i: m.scale(c) for i, m in self.components.items()}, check=False)

    def shift(self, n: int) -> "ChainMap":
        return ChainMap(shift(self.source, n), shift(self.target, n),
                        {i - n: m for i, m in self.components.items()}, check=False)

    def is_zero_map(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return (isinstance(other, ChainMap) and self.source == other.source
                and self.target == other.target and self.components == other.components)

    def __repr__(self):
        degs = sorted(self.components)
        return f"ChainMap({self.source!r} -> {self.target!r}, nonzero degrees {degs})"


@dataclass
class Homotopy:
    """Degree -1 maps s^i: X^i -> Y^(i-1); the identity witnessed is up to callers."""
    source: Complex
    target: Complex
    components: dict

    def component(self, i: int) -> Matrix:
        if i in self.components:
            return self.components[i]
        return Matrix.zeros(self.source.ring, self.target.rank(i - 1), self.source.rank(i))

    def boundary(self) -> ChainMap:
        """The chain map d_Y s + s d_X."""
        comps = {}
        lo, hi = _joint_window(self.source, self.target)
        for i in range(lo, hi + 1):
            m = self.target.diff(i - 1) * self.component(i) \
                + self.component(i + 1) * self.source.diff(i)
            comps[i] = m
        return ChainMap(self.source, self.target, comps, check=False)


def _joint_window(x: Complex, y: Complex) -> tuple:
    los = [c.min_deg for c in (x, y) if not c.is_zero()]
    his = [c.max_deg for c in (x, y) if not c.is_zero()]
    if not los:
        return (0, -1)
    return (min(los) - 1, max(his) + 1)


# -- elementary operations -----------------------------------------------------


def shift(x: Complex, n: int) -> "Complex":
    """(X[n])^i = X^(i+n), differential scaled by (-1)^n."""
    if x.is_zero() or n == 0:
        return x
    sgn = 1 if n % 2 == 0 else -1
    return Complex(x.ring, x.min_deg - n, list(x.ranks),
                   [d.scale(sgn) for d in x.diffs])


def direct_sum(x: Complex, y: Complex) -> Complex:
    same_ring(x.ring, y.ring)
    if x.is_zero():
        return y
    if y.is_zero():
        return x
    lo = min(x.min_deg, y.min_deg)
    hi = max(x.max_deg, y.max_deg)
    ranks = [x.rank(i) + y.rank(i) for i in range(lo, hi + 1)]
    diffs = [Matrix.block_diag([x.diff(i), y.diff(i)]) for i in range(lo, hi)]
    return Complex(x.ring, lo, ranks, diffs)


def sum_inclusion(x: Complex, y: Complex, which: int) -> ChainMap:
    """Canonical inclusion of x (which=0) or y (which=1) into x (+) y."""
    s = direct_sum(x, y)
    part = x if which == 0 else y
    comps = {}
    for i in part.degrees():
        rows = []
        off = 0 if which == 0 else x.rank(i)
        for r in range(s.rank(i)):
            rows.append([1 if r == off + c else 0 for c in range(part.rank(i))])
        comps[i] = Matrix(s.ring, rows, s.rank(i), part.rank(i))
    return ChainMap(part, s, comps)


def cone(f: ChainMap) -> tuple:
    """Mapping cone with its canonical maps.

    Returns (cone, inc: target -> cone, proj: cone -> source[1]).
    cone^i = X^(i+1) (+) Y^i with differential [[-d_X, 0], [f, d_Y]].
    """
    x, y = f.source, f.target
    ring = x.ring
    xs = shift(x, 1)
    if xs.is_zero() and y.is_zero():
        c = Complex.zero(ring)
        return c, ChainMap.zero(y, c), ChainMap.zero(c, xs)
    lo = min([d for d in (xs.min_deg if not xs.is_zero() else None,
                          y.min_deg if not y.is_zero() else None) if d is not None])
    hi = max([d for d in (xs.max_deg if not xs.is_zero() else None,
                          y.max_deg if not y.is_zero() else None) if d is not None])
    ranks = [x.rank(i + 1) + y.rank(i) for i in range(lo, hi + 1)]
    diffs = []
    for i in range(lo, hi):
        blocks = [[x.diff(i + 1).scale(-1), Matrix.zeros(ring, x.rank(i + 2), y.rank(i))],
                  [f.component(i + 1), y.diff(i)]]
        diffs.append(Matrix.block(blocks))
    c = Complex(ring, lo, ranks, diffs)
    inc = {}
    proj = {}
    for i in range(lo, hi + 1):
        xr, yr = x.rank(i + 1), y.rank(i)
        inc[i] = Matrix.block([[Matrix.zeros(ring, xr, yr)], [Matrix.identity(ring, yr)]]) \
            if xr + yr else Matrix.zeros(ring, 0, yr)
        proj[i] = Matrix.block([[Matrix.identity(ring, xr), Matrix.zeros(ring, xr, yr)]]) \
            if xr + yr else Matrix.zeros(ring, xr, 0)
    return c, ChainMap(y, c, inc), ChainMap(c, xs, proj)


def cone_null_homotopy(f: ChainMap) -> Homotopy:
    """Explicit witness that target -> cone(f) kills f: s = (id_X, 0)."""
    x = f.source
    c, _, _ = cone(f)
    ring = x.ring
    comps = {}
    for i in x.degrees():
        xr = x.rank(i)
        blocks = [[Matrix.identity(ring, xr)],
                  [Matrix.zeros(ring, f.target.rank(i - 1), xr)]]
        comps[i] = Matrix.block(blocks)
    return Homotopy(x, c, comps)


def stupid_trunc_le(x: Complex, k: int) -> Complex:
    """Keep degrees <= k (a quotient complex of x)."""
    if x.is_zero() or k >= x.max_deg:
        return x
    if k < x.min_deg:
        return Complex.zero(x.ring)
    keep = k - x.min_deg + 1
    return Complex(x.ring, x.min_deg, list(x.ranks[:keep]), list(x.diffs[:keep - 1]))


def stupid_trunc_ge(x: Complex, k: int) -> Complex:
    """Keep degrees >= k (a subcomplex of x)."""
    if x.is_zero() or k <= x.min_deg:
        return x
    if k > x.max_deg:
        return Complex.zero(x.ring)
    drop = k - x.min_deg
    return Complex(x.ring, k, list(x.ranks[drop:]), list(x.diffs[drop:]))


def trunc_le_projection(x: Complex, k: int) -> ChainMap:
    a = stupid_trunc_le(x, k)
    comps = {i: Matrix.identity(x.ring, x.rank(i)) for i in a.degrees()}
    return ChainMap(x, a, comps, check=False)


def trunc_ge_inclusion(x: Complex, k: int) -> ChainMap:
    b = stupid_trunc_ge(x, k)
    comps = {i: Matrix.identity(x.ring, x.rank(i)) for i in b.degrees()}
    return ChainMap(b, x, comps, check=False)


# -- homology ------------------------------------------------------------------


def homology(x: Complex, n: int) -> FGAbGroup:
    """ker(d^n)/im(d^(n-1)) over Z, with lift and projection maps."""
    if x.ring != ZZ:
        raise WrongRing("homology presentation requires ring = Integers")
    r = x.rank(n)
    ker = kernel_lattice(x.diff(n))
    im = Lattice(r, x.diff(n - 1)) if x.rank(n - 1) else Lattice.zero(r)
    return FGAbGroup.subquotient(ker, im)


def homology_mod(x: Complex, n: int, m: int) -> FGAbGroup:
    """H^n(x (x) Z/m) for an integer complex: cycles mod m over boundaries."""
    if x.ring != ZZ:
        raise WrongRing("mod-m homology requires an integer complex")
    r = x.rank(n)
    ker = Lattice.full(x.rank(n + 1)).scaled(m).preimage(x.diff(n))  # {v : d v = 0 mod m}
    im = Lattice(r, x.diff(n - 1)).add(Lattice.full(r).scaled(m))
    return FGAbGroup.subquotient(ker, im)


def all_homology(x: Complex) -> dict:
    return {n: homology(x, n) for n in x.degrees()}


# -- homotopy decisions -----------------------------------------------------------


def _flatten_maps(shapes, mats):
    """Stack a family of matrices (one per key) into one long column vector."""
    out = []
    for key in shapes:
        m = mats[key]
        for row in m.entries:
            out.extend(row)
    return out


def _homotopy_shapes(x: Complex, y: Complex) -> list:
    lo, hi = _joint_window(x, y)
    return [(i, y.rank(i - 1), x.rank(i)) for i in range(lo, hi + 2)
            if y.rank(i - 1) and x.rank(i)]


def _map_shapes(x: Complex, y: Complex) -> list:
    lo, hi = _joint_window(x, y)
    return [(i, y.rank(i), x.rank(i)) for i in range(lo, hi + 1)
            if y.rank(i) and x.rank(i)]


class _LinearSystem:
    """Sparse assembler for 'sum of linear images of unknown matrices = rhs'."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.unknowns = []       # (name, rows, cols)
        self.offsets = {}
        self.size = 0
        self.rows = []           # list of dict col_index -> coeff
        self.rhs = []

    def add_unknown(self, name, rows, cols):
        self.offsets[name] = self.size
        self.unknowns.append((name, rows, cols))
        self.size += rows * cols

    def unknown_shape(self, name):
        for n, r, c in self.unknowns:
            if n == name:
                return r, c
        raise KeyError(name)

    def add_equation_block(self, terms, rhs: Matrix):
        """One matrix equation sum_k L_k * U_k * R_k = rhs.

        terms: list of (left: Matrix|None, name, right: Matrix|None); None
        means identity of the appropriate size.
        """
        er, ec = rhs.shape
        for i in range(er):
            for j in range(ec):
                row = {}
                for left, name, right in terms:
                    ur, uc = self.unknown_shape(name)
                    off = self.offsets[name]
                    for a in range(ur):
                        la = left[i, a] if left is not None else (self.ring.one if i == a else self.ring.zero)
                        if la == self.ring.zero:
                            continue
                        for b in range(uc):
                            rb = right[b, j] if right is not None else (self.ring.one if b == j else self.ring.zero)
                            if rb == self.ring.zero:
                                continue
                            idx = off + a * uc + b
                            row[idx] = row.get(idx, self.ring.zero) + la * rb
                self.rows.append(row)
                self.rhs.append(rhs[i, j])

    def solve(self):
        if self.size == 0:
            if any(x != self.ring.zero for x in self.rhs):
                return None
            return {}
        mat = Matrix(self.ring,
                     [[row.get(j, self.ring.zero) for j in range(self.size)]
                      for row in self.rows],
                     len(self.rows), self.size)
        rhs = Matrix(self.ring, [[x] for x in self.rhs], len(self.rhs), 1)
        sol = solve(mat, rhs)
        if sol is None:
            return None
        out = {}
        for name, r, c in self.unknowns:
            off = self.offsets[name]
            out[name] = Matrix(self.ring,
                               [[sol[off + a * c + b, 0] for b in range(c)]
                                for a in range(r)], r, c)
        return out


def is_null_homotopic(f: ChainMap) -> Optional[Homotopy]:
    """A homotopy s with f = d_Y s + s d_X, or None; exact over Z, Z/n, Q."""
    x, y = f.source, f.target
    ring = x.ring
    sysm = _LinearSystem(ring)
    hshapes = _homotopy_shapes(x, y)
    for (i, r, c) in hshapes:
        sysm.add_unknown(("s", i), r, c)
    lo, hi = _joint_window(x, y)
    for i in range(lo, hi + 1):
        if not (y.rank(i) and x.rank(i)):
            if not f.component(i).is_zero():
                return None
            continue
        terms = []
        if y.rank(i - 1) and x.rank(i):
            terms.append((y.diff(i - 1), ("s", i), None))
        if y.rank(i) and x.rank(i + 1):
            terms.append((None, ("s", i + 1), x.diff(i)))
        terms = [t for t in terms if t[1] in sysm.offsets]
        sysm.add_equation_block(terms, f.component(i))
    sol = sysm.solve()
    if sol is None:
        return None
    comps = {i: sol[("s", i)] for (i, _, _) in hshapes}
    return Homotopy(x, y, comps)


def homotopic(f: ChainMap, g: ChainMap) -> Optional[Homotopy]:
    return is_null_homotopic(f.sub(g))


def in_ideal_z(f: ChainMap) -> Optional[tuple]:
    """Membership of [f] in the square-zero ideal Z(X, Y).

    Z consists of the maps expressible as s d_X + d_Y t; the decision is a
    single linear system, and membership depends only on the homotopy
    class (null homotopies d_Y h + h d_X are themselves of this shape).
    Returns (s, t) as Homotopy-shaped witnesses, or None.
    """
    x, y = f.source, f.target
    ring = x.ring
    sysm = _LinearSystem(ring)
    hshapes = _homotopy_shapes(x, y)
    for (i, r, c) in hshapes:
        sysm.add_unknown(("s", i), r, c)
        sysm.add_unknown(("t", i), r, c)
    lo, hi = _joint_window(x, y)
    for i in range(lo, hi + 1):
        if not (y.rank(i) and x.rank(i)):
            if not f.component(i).is_zero():
                return None
            continue
        terms = []
        if y.rank(i) and x.rank(i + 1):
            terms.append((None, ("s", i + 1), x.diff(i)))
        if y.rank(i - 1) and x.rank(i):
            terms.append((y.diff(i - 1), ("t", i), None))
        terms = [t for t in terms if t[1] in sysm.offsets]
        sysm.add_equation_block(terms, f.component(i))
    sol = sysm.solve()
    if sol is None:
        return None
    s = Homotopy(x, y, {i: sol[("s", i)] for (i, _, _) in hshapes})
    t = Homotopy(x, y, {i: sol[("t", i)] for (i, _, _) in hshapes})
    return s, t


def is_homotopy_equivalence(f: ChainMap) -> Optional[tuple]:
    """(g, s, t) with g f - id = d s + s d and f g - id = d t + t d, or None."""
    x, y = f.source, f.target
    ring = x.ring
    sysm = _LinearSystem(ring)
    for (i, r, c) in _map_shapes(y, x):
        sysm.add_unknown(("g", i), r, c)
    for (i, r, c) in _homotopy_shapes(x, x):
        sysm.add_unknown(("s", i), r, c)
    for (i, r, c) in _homotopy_shapes(y, y):
        sysm.add_unknown(("t", i), r, c)
    lo, hi = _joint_window(x, y)
    idx = Matrix.identity
    for i in range(lo, hi + 1):
        # chain map condition: d_X g - g d_Y = 0
        terms = []
        if ("g", i) in sysm.offsets:
            terms.append((x.diff(i), ("g", i), None))
        if ("g", i + 1) in sysm.offsets:
            terms.append((None, ("g", i + 1), y.diff(i).scale(-1)))
        if terms:
            sysm.add_equation_block(terms, Matrix.zeros(ring, x.rank(i + 1), y.rank(i)))
        # g f - (d s + s d) = id_X
        terms = []
        if ("g", i) in sysm.offsets:
            terms.append((None, ("g", i), f.component(i)))
        if ("s", i) in sysm.offsets:
            terms.append((x.diff(i - 1).scale(-1), ("s", i), None))
        if ("s", i + 1) in sysm.offsets:
            terms.append((None, ("s", i + 1), x.diff(i).scale(-1)))
        if terms or x.rank(i):
            sysm.add_equation_block(terms, idx(ring, x.rank(i)))
        # f g - (d t + t d) = id_Y
        terms = []
        if ("g", i) in sysm.offsets:
            terms.append((f.component(i), ("g", i), None))
        if ("t", i) in sysm.offsets:
            terms.append((y.diff(i - 1).scale(-1), ("t", i), None))
        if ("t", i + 1) in sysm.offsets:
            terms.append((None, ("t", i + 1), y.diff(i).scale(-1)))
        if terms or y.rank(i):
            sysm.add_equation_block(terms, idx(ring, y.rank(i)))
    sol = sysm.solve()
    if sol is None:
        return None
    g = ChainMap(y, x, {i: sol[("g", i)] for (i, _, _) in _map_shapes(y, x)}, check=False)
    s = Homotopy(x, x, {i: sol[("s", i)] for (i, _, _) in _homotopy_shapes(x, x)})
    t = Homotopy(y, y, {i: sol[("t", i)] for (i, _, _) in _homotopy_shapes(y, y)})
    return g, s, t


def is_contractible(x: Complex) -> Optional[Homotopy]:
    return is_null_homotopic(ChainMap.identity(x))


# -- Hom groups in K^b ----------------------------------------------------------


class KHomGroup:
    """Hom_{K^b}(X, Y) with representatives and a class-of solver.

    The group is presented as (chain maps)/(null-homotopic maps), both
    realized as integer lattices in the flattened component space.  Over
    Z/n the lattices carry the integer lifts (containing n * everything);
    over Q the null-homotopic lattice is saturated, so the quotient is
    the free group of the right dimension and coordinates are rational.
    """

    __slots__ = ("source", "target", "group", "_shapes", "_cm_lattice", "_nh_lattice")

    def __init__(self, source: Complex, target: Complex):
        ring = same_ring(source.ring, target.ring)
        self.source = source
        self.target = target
        self._shapes = _map_shapes(source, target)
        cm = chain_map_lattice(source, target)
        nh = null_homotopic_lattice(source, target)
        if ring == QQ:
            nh = nh.saturation()
        self._cm_lattice = cm
        self._nh_lattice = nh
        self.group = FGAbGroup.subquotient(cm, nh)

    @property
    def invariants(self):
        return self.group.invariants()

    def representatives(self) -> list:
        out = []
        for j in range(self.group.ngens):
            coords = [1 if k == j else 0 for k in range(self.group.ngens)]
            out.append(self.lift(coords))
        return out

    def lift(self, coords) -> ChainMap:
        flat = self.group.lift(coords)
        return self._unflatten(flat)

    def class_of(self, f: ChainMap):
        """Coordinates of [f] in the group (rational over Q)."""
        if f.source != self.source or f.target != self.target:
            raise InvalidChainMap("wrong source or target")
        flat = _flatten_for(self._shapes,
                            {i: f.component(i) for (i, _, _) in self._shapes})
        if self.source.ring == QQ:
            den = 1
            from fractions import Fraction
            for v in flat:
                fr = Fraction(v)
                den = den * fr.denominator // _igcd(den, fr.denominator)
            coords = self.group.project([int(Fraction(v) * den) for v in flat])
            return tuple(Fraction(c, den) for c in coords)
        return self.group.project([int(v) for v in flat])

    def is_zero_class(self, f: ChainMap) -> bool:
        c = self.class_of(f)
        return all(v == 0 for v in c)

    def _unflatten(self, flat) -> ChainMap:
        ring = self.source.ring
        comps = {}
        off = 0
        for (i, r, c) in self._shapes:
            comps[i] = Matrix(ring, [[flat[off + a * c + b] for b in range(c)]
                                     for a in range(r)], r, c)
            off += r * c
        return ChainMap(self.source, self.target, comps, check=False)


def chain_map_lattice(source: Complex, target: Complex) -> Lattice:
    """Integer lattice of chain maps in the flattened component space."""
    ring = same_ring(source.ring, target.ring)
    shapes = _map_shapes(source, target)
    total = sum(r * c for (_, r, c) in shapes)
    mod = ring.n if ring.kind == "Zmod" else 0
    rows = []
    lo, hi = _joint_window(source, target)
    colof = {}
    off = 0
    for (i, r, c) in shapes:
        colof[i] = off
        off += r * c
    for i in range(lo, hi + 1):
        er, ec = target.rank(i + 1), source.rank(i)
        if er == 0 or ec == 0:
            continue
        dY = target.diff(i)
        dX = source.diff(i)
        for a in range(er):
            for b in range(ec):
                row = [ring.zero] * total
                if i in colof:
                    c_ = source.rank(i)
                    for k in range(target.rank(i)):
                        if dY[a, k] != ring.zero:
                            row[colof[i] + k * c_ + b] += dY[a, k]
                if i + 1 in colof:
                    c_ = source.rank(i + 1)
                    for k in range(c_):
                        if dX[k, b] != ring.zero:
                            row[colof[i + 1] + a * c_ + k] -= dX[k, b]
                if any(x != ring.zero for x in row):
                    rows.append(row)
    if not rows:
        return Lattice.full(total)
    if ring == QQ:
        rows = [_clear_denominators(row) for row in rows]
    cm_mat = Matrix(ZZ, [[int(x) for x in row] for row in rows], len(rows), total)
    if mod:
        return Lattice.full(len(rows)).scaled(mod).preimage(cm_mat)
    return kernel_lattice(cm_mat)


def null_homotopic_lattice(source: Complex, target: Complex) -> Lattice:
    """Lattice spanned by boundaries d s + s d of basis homotopies."""
    ring = same_ring(source.ring, target.ring)
    shapes = _map_shapes(source, target)
    total = sum(r * c for (_, r, c) in shapes)
    mod = ring.n if ring.kind == "Zmod" else 0
    nh_cols = []
    for (j, r, c) in _homotopy_shapes(source, target):
        dy = target.diff(j - 1)
        dx = source.diff(j - 1)
        for a in range(r):
            for b in range(c):
                comp_j = {
                    # degree j component: d_Y^(j-1) e
                    j: Matrix(ring, [[dy[p, a] if q == b else ring.zero
                                      for q in range(source.rank(j))]
                                     for p in range(target.rank(j))],
                              target.rank(j), source.rank(j)),
                    # degree j-1 component: e d_X^(j-1)
                    j - 1: Matrix(ring, [[dx[b, q] if p == a else ring.zero
                                          for q in range(source.rank(j - 1))]
                                         for p in range(target.rank(j - 1))],
                                  target.rank(j - 1), source.rank(j - 1)),
                }
                col = _flatten_for(shapes, comp_j)
                if ring == QQ:
                    col = _clear_denominators(col)
                nh_cols.append(tuple(int(v) for v in col))
    nh = Lattice.from_columns(total, nh_cols) if nh_cols else Lattice.zero(total)
    if mod:
        nh = nh.add(Lattice.full(total).scaled(mod))
    return nh


def _flatten_for(shapes, comps: dict) -> tuple:
    out = []
    for (i, r, c) in shapes:
        m = comps.get(i)
        if m is None:
            out.extend([0] * (r * c))
        else:
            for row in m.entries:
                out.extend(row)
    return tuple(out)


def _clear_denominators(vec):
    from fractions import Fraction
    den = 1
    for v in vec:
        f = Fraction(v)
        den = den * f.denominator // _igcd(den, f.denominator)
    return tuple(int(Fraction(v) * den) for v in vec)


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def hom_group_k(x: Complex, y: Complex) -> KHomGroup:
    """Hom_{K^b}(X, Y) as a presented group over Z, Z/n or Q."""
    return KHomGroup(x, y)
