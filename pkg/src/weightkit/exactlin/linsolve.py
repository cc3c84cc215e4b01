"""Exact linear solving and kernels over Z, Z/n and Q.

Decisions are exact: ``solve`` returns a witness when a solution exists
and None when provably none does.
"""

from __future__ import annotations

from fractions import Fraction

from .lattices import Lattice
from .matrix import DimensionMismatch, Matrix
from .normalforms import column_hermite, kernel_columns_Z
from .rings import QQ, Ring, RingMismatch, ZZ, Zmod


def solve(a: Matrix, b: Matrix):
    """A matrix x with a*x = b over the common ring, or None."""
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if a.rows != b.rows:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    if a.ring == ZZ:
        return _solve_Z(a, b)
    if a.ring == QQ:
        return _solve_Q(a, b)
    return _solve_Zmod(a, b)


def _solve_Z(a: Matrix, b: Matrix):
    h, v = column_hermite(a, transform=True)  # a * v = h
    # pivot row of each nonzero column of h, strictly increasing
    pivots = []
    for j in range(h.cols):
        i = next((i for i in range(h.rows) if h[i, j] != 0), None)
        if i is None:
            break
        pivots.append(i)
    npiv = len(pivots)
    ys = []
    for k in range(b.cols):
        bc = list(b.column(k))
        y = [0] * h.cols
        for j in range(npiv):
            i = pivots[j]
            r = bc[i]
            if r % h[i, j] != 0:
                return None
            q = r // h[i, j]
            y[j] = q
            if q:
                for rr in range(h.rows):
                    bc[rr] -= q * h[rr, j]
        if any(bc):
            return None
        ys.append(tuple(y))
    yv = Matrix.from_columns(ZZ, ys, h.cols)
    return v * yv


def _solve_Q(a: Matrix, b: Matrix):
    m, n = a.rows, a.cols
    aug = [[Fraction(a[i, j]) for j in range(n)] + [Fraction(b[i, k]) for k in range(b.cols)]
           for i in range(m)]
    pivots = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if aug[i][j] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][j]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(j)
        r += 1
    for i in range(r, m):
        if any(aug[i][n:]):
            return None
    x = [[Fraction(0)] * b.cols for _ in range(n)]
    for row, j in enumerate(pivots):
        for k in range(b.cols):
            x[j][k] = aug[row][n + k]
    return Matrix(QQ, x, n, b.cols)


def _solve_Zmod(a: Matrix, b: Matrix):
    n = a.ring.n
    az = a.lift_to_Z()
    bz = b.lift_to_Z()
    aug = az.hstack(Matrix.identity(ZZ, a.rows).scale(n))
    x = _solve_Z(aug, bz)
    if x is None:
        return None
    top = x.submatrix(range(a.cols), range(x.cols))
    return top.change_ring(a.ring)


def kernel_lattice(a: Matrix) -> Lattice:
    """Basis of {x : a*x = 0}.

    Over Z the result is saturated (the full kernel, not a finite-index
    sublattice).  Over Q the saturated integer lattice encodes the kernel
    subspace.  Over Z/n the integer lift {x : a*x = 0 mod n} (which
    contains n*Z^cols) is returned.
    """
    if a.ring == ZZ:
        return Lattice(a.cols, Matrix.from_columns(ZZ, kernel_columns_Z(a), a.cols))
    if a.ring == QQ:
        az = Matrix(ZZ, [_clear_row(row) for row in a.entries], a.rows, a.cols) \
            if a.rows else Matrix.zeros(ZZ, 0, a.cols)
        return Lattice(a.cols, Matrix.from_columns(ZZ, kernel_columns_Z(az), a.cols))
    n = a.ring.n
    az = a.lift_to_Z()
    stacked = az.hstack(Matrix.identity(ZZ, a.rows).scale(-n))
    ker = kernel_columns_Z(stacked)
    cols = [k[:a.cols] for k in ker]
    return Lattice.from_columns(a.cols, cols)


def _clear_row(row):
    den = 1
    for x in row:
        f = Fraction(x)
        g = _gcd(den, f.denominator)
        den = den * f.denominator // g
    return [int(Fraction(x) * den) for x in row]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def matrix_over(ring: Ring, rows) -> Matrix:
    return Matrix(ring, rows)
