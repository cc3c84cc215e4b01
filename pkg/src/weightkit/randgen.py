"""Seeded random generators for complexes, maps and filtrations.

All property runs in the package draw from these, so a fixed seed
reproduces every suite byte-for-byte.
"""

from __future__ import annotations

import random

from .complexes import (ChainMap, Complex, Homotopy, _homotopy_shapes, _map_shapes,
                        direct_sum, is_null_homotopic)
from .exactlin import Lattice, Matrix, Ring, ZZ, kernel_lattice


def rand_matrix(rng: random.Random, ring: Ring, rows: int, cols: int, bound: int = 3) -> Matrix:
    return Matrix(ring, [[rng.randint(-bound, bound) for _ in range(cols)]
                         for _ in range(rows)], rows, cols)


def rand_complex(rng: random.Random, ring: Ring = ZZ, max_rank: int = 3,
                 min_deg: int = -2, max_deg: int = 2, bound: int = 2) -> Complex:
    """A random bounded complex: d^2 = 0 arranged by sampling d^(i+1) from
    the kernel of right-multiplication by d^i."""
    lo = rng.randint(min_deg, max_deg)
    hi = rng.randint(lo, max_deg)
    ranks = [rng.randint(0, max_rank) for _ in range(hi - lo + 1)]
    diffs = []
    prev = None
    for k in range(len(ranks) - 1):
        r_out, r_in = ranks[k + 1], ranks[k]
        if prev is None or prev.cols == 0 or prev.rows == 0:
            d = rand_matrix(rng, ring, r_out, r_in, bound)
        else:
            # need d * prev = 0: rows of d lie in the left kernel of prev
            lk = kernel_lattice(prev.transpose())
            basis = lk.basis  # columns span {w : prev^T w = 0}
            rows = []
            for _ in range(r_out):
                w = [0] * prev.rows
                for j in range(basis.cols):
                    c = rng.randint(-1, 1)
                    if c:
                        w = [a + c * b for a, b in zip(w, basis.column(j))]
                rows.append(w)
            d = Matrix(ring, rows, r_out, r_in) if r_in else Matrix.zeros(ring, r_out, 0)
        diffs.append(d)
        prev = d
    return Complex(ring, lo, ranks, diffs)


def rand_chain_map(rng: random.Random, x: Complex, y: Complex, bound: int = 2) -> ChainMap:
    """A random chain map x -> y: a lattice point of the chain-map system."""
    from .complexes import Matrix as _M, _map_shapes as _ms, chain_map_lattice
    basis = chain_map_lattice(x, y).basis
    total = basis.rows
    flat = [0] * total
    for j in range(basis.cols):
        c = rng.randint(-bound, bound)
        if c:
            flat = [a + c * b for a, b in zip(flat, basis.column(j))]
    comps = {}
    off = 0
    for (i, r, c) in _ms(x, y):
        comps[i] = _M(x.ring, [[flat[off + a * c + b] for b in range(c)]
                               for a in range(r)], r, c)
        off += r * c
    return ChainMap(x, y, comps)


def rand_null_homotopic(rng: random.Random, x: Complex, y: Complex, bound: int = 2) -> ChainMap:
    """d s + s d for a random homotopy-shaped s."""
    comps = {}
    for (i, r, c) in _homotopy_shapes(x, y):
        comps[i] = rand_matrix(rng, x.ring, r, c, bound)
    return Homotopy(x, y, comps).boundary()


def rand_z_ideal_map(rng: random.Random, x: Complex, y: Complex, bound: int = 2) -> ChainMap:
    """A random element s d_X + d_Y t of the ideal Z(x, y).

    A pair (s, t) yields a chain map iff d_Y (s - t) d_X = 0, so we draw
    u = s - t from the kernel of that linear condition and add the
    boundary of a random t (null-homotopic, hence in Z).
    """
    ring = x.ring
    hshapes = _homotopy_shapes(x, y)
    total = sum(r * c for (_, r, c) in hshapes)
    offs = {}
    off = 0
    for (i, r, c) in hshapes:
        offs[i] = off
        off += r * c
    rows = []
    lo = min([d for d in [x.min_deg if not x.is_zero() else None,
                          y.min_deg if not y.is_zero() else None] if d is not None],
             default=0)
    hi = max([d for d in [x.max_deg if not x.is_zero() else None,
                          y.max_deg if not y.is_zero() else None] if d is not None],
             default=0)
    for i in range(lo - 1, hi + 1):
        er, ec = y.rank(i + 1), x.rank(i)
        if er == 0 or ec == 0 or (i + 1) not in offs:
            continue
        dy = y.diff(i)       # Y^i -> Y^(i+1)
        dx = x.diff(i)       # X^i -> X^(i+1)
        r, c = y.rank(i), x.rank(i + 1)
        for a in range(er):
            for b in range(ec):
                row = [0] * total
                for p in range(r):
                    if dy[a, p] == 0:
                        continue
                    for q in range(c):
                        if dx[q, b] == 0:
                            continue
                        row[offs[i + 1] + p * c + q] += int(dy[a, p]) * int(dx[q, b])
                if any(row):
                    rows.append(row)
    if rows:
        mat = Matrix(ZZ, rows, len(rows), total)
        if ring.kind == "Zmod":
            lat = Lattice.full(len(rows)).scaled(ring.n).preimage(mat)
        else:
            lat = kernel_lattice(mat)
    else:
        lat = Lattice.full(total)
    flat = [0] * total
    for j in range(lat.basis.cols):
        cc = rng.randint(-bound, bound)
        if cc:
            flat = [a + cc * b for a, b in zip(flat, lat.basis.column(j))]
    u = {}
    for (i, r, c) in hshapes:
        base = offs[i]
        u[i] = Matrix(ring, [[flat[base + p * c + q] for q in range(c)]
                             for p in range(r)], r, c)
    # u o d_X part
    comps = {}
    for (i, r, c) in hshapes:
        if y.rank(i - 1) and x.rank(i - 1):
            m = u[i] * x.diff(i - 1)
            if not m.is_zero():
                comps[i - 1] = comps.get(i - 1, Matrix.zeros(ring, y.rank(i - 1),
                                                             x.rank(i - 1))) + m
    g = ChainMap(x, y, comps)
    # plus a random boundary (null-homotopic maps lie in Z with s = t)
    t = Homotopy(x, y, {i: rand_matrix(rng, ring, r, c, bound)
                        for (i, r, c) in hshapes})
    return g.add(t.boundary())


def rand_contractible(rng: random.Random, ring: Ring = ZZ, pieces: int = 2,
                      max_rank: int = 2, min_deg: int = -2, max_deg: int = 2) -> Complex:
    """A direct sum of cones of identity maps: contractible by construction."""
    from .complexes import cone
    out = Complex.zero(ring)
    for _ in range(pieces):
        d = rng.randint(min_deg, max_deg)
        r = rng.randint(1, max_rank)
        one = Complex.concentrated(ring, d, r)
        out = direct_sum(out, cone(ChainMap.identity(one))[0])
    return out


def rand_commuting_endos(rng: random.Random, f: ChainMap, bound: int = 2):
    """(u, v) with u an endo of f.source, v of f.target and v f = f u exactly.

    Sampled from the kernel lattice of the joint linear system (integer
    complexes only).
    """
    x, y = f.source, f.target
    ring = x.ring
    xs = _map_shapes(x, x)
    ys = _map_shapes(y, y)
    cols = {}
    off = 0
    for key, shapes in (("u", xs), ("v", ys)):
        for (i, r, c) in shapes:
            cols[(key, i)] = off
            off += r * c
    total = off
    rows = []
    lo = min([d for d in [x.min_deg if not x.is_zero() else None,
                          y.min_deg if not y.is_zero() else None] if d is not None],
             default=0)
    hi = max([d for d in [x.max_deg if not x.is_zero() else None,
                          y.max_deg if not y.is_zero() else None] if d is not None],
             default=0)

    def add_rows(er, ec, terms):
        """terms: list of (left, key, right, (ur, uc)); constraint sum = 0."""
        if er == 0 or ec == 0:
            return
        for a in range(er):
            for b in range(ec):
                row = [0] * total
                for (left, key, right, (ur, uc)) in terms:
                    if key not in cols:
                        continue
                    base = cols[key]
                    for p in range(ur):
                        la = left[a, p] if left is not None else (1 if a == p else 0)
                        if la == 0:
                            continue
                        for q in range(uc):
                            rb = right[q, b] if right is not None else (1 if q == b else 0)
                            if rb == 0:
                                continue
                            row[base + p * uc + q] += int(la) * int(rb)
                if any(row):
                    rows.append(row)

    for i in range(lo, hi + 1):
        # chain-map conditions d u - u d = 0 and d v - v d = 0
        add_rows(x.rank(i + 1), x.rank(i),
                 [(x.diff(i), ("u", i), None, (x.rank(i), x.rank(i))),
                  (None, ("u", i + 1), x.diff(i).scale(-1), (x.rank(i + 1), x.rank(i + 1)))])
        add_rows(y.rank(i + 1), y.rank(i),
                 [(y.diff(i), ("v", i), None, (y.rank(i), y.rank(i))),
                  (None, ("v", i + 1), y.diff(i).scale(-1), (y.rank(i + 1), y.rank(i + 1)))])
        # exact commutation v f - f u = 0
        add_rows(y.rank(i), x.rank(i),
                 [(None, ("v", i), f.component(i), (y.rank(i), y.rank(i))),
                  (f.component(i).scale(-1), ("u", i), None, (x.rank(i), x.rank(i)))])
    mat = Matrix(ZZ, rows, len(rows), total) if rows else Matrix.zeros(ZZ, 0, total)
    lat = kernel_lattice(mat) if rows else Lattice.full(total)
    flat = [0] * total
    for j in range(lat.basis.cols):
        c = rng.randint(-bound, bound)
        if c:
            flat = [p + c * q for p, q in zip(flat, lat.basis.column(j))]

    def unflat(key, shapes, cpx):
        comps = {}
        for (i, r, c) in shapes:
            base = cols[(key, i)]
            comps[i] = Matrix(ring, [[flat[base + p * c + q] for q in range(c)]
                                     for p in range(r)], r, c)
        return ChainMap(cpx, cpx, comps, check=False)

    return unflat("u", xs, x), unflat("v", ys, y)
