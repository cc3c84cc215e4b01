"""Certified normal forms: Smith over Z, Hermite over Z, Howell over Z/n.

Pivoting is deterministic throughout (smallest nonzero absolute value,
ties broken by lowest (row, col)); identical input always yields the
identical certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .matrix import Matrix
from .rings import Ring, WrongRing, ZZ


def _xgcd(a: int, b: int):
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b), g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class SmithForm:
    u: Matrix
    s: Matrix
    v: Matrix
    invariant_factors: tuple

    def verify(self, a: Matrix) -> bool:
        """Check u*a*v == s, |det u| = |det v| = 1, diagonality and the chain."""
        if self.u * a * self.v != self.s:
            return False
        if abs(self.u.det()) != 1 or abs(self.v.det()) != 1:
            return False
        s = self.s
        for i in range(s.rows):
            for j in range(s.cols):
                if i != j and s[i, j] != 0:
                    return False
        diag = [s[i, i] for i in range(min(s.rows, s.cols))]
        nonzero = [d for d in diag if d != 0]
        if tuple(nonzero) != self.invariant_factors:
            return False
        if any(d < 0 for d in diag):
            return False
        if any(d == 0 for d in diag[:len(nonzero)]):
            return False
        for a_, b_ in zip(nonzero, nonzero[1:]):
            if b_ % a_ != 0:
                return False
        return True


def smith_normal_form(a: Matrix) -> SmithForm:
    """Smith normal form with unimodular transforms: u*a*v = s."""
    if a.ring != ZZ:
        raise WrongRing("Smith normal form requires ring = Integers")
    m, n = a.rows, a.cols
    s = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        if i != k:
            s[i], s[k] = s[k], s[i]
            u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        if j != k:
            for r in range(m):
                s[r][j], s[r][k] = s[r][k], s[r][j]
            for r in range(n):
                v[r][j], v[r][k] = v[r][k], v[r][j]

    def combine_rows(t, i):
        """Unimodular 2x2 on rows t, i making s[i][t] = 0, s[t][t] = gcd."""
        a, b = s[t][t], s[i][t]
        if b % a == 0:
            q = b // a
            s[i] = [x - q * y for x, y in zip(s[i], s[t])]
            u[i] = [x - q * y for x, y in zip(u[i], u[t])]
            return
        g, x, y = _xgcd(a, b)
        p, q = a // g, b // g
        s[t], s[i] = ([x * c + y * d for c, d in zip(s[t], s[i])],
                      [-q * c + p * d for c, d in zip(s[t], s[i])])
        u[t], u[i] = ([x * c + y * d for c, d in zip(u[t], u[i])],
                      [-q * c + p * d for c, d in zip(u[t], u[i])])

    def combine_cols(t, j):
        a, b = s[t][t], s[t][j]
        if b % a == 0:
            q = b // a
            for r in range(m):
                s[r][j] -= q * s[r][t]
            for r in range(n):
                v[r][j] -= q * v[r][t]
            return
        g, x, y = _xgcd(a, b)
        p, q = a // g, b // g
        for r in range(m):
            s[r][t], s[r][j] = x * s[r][t] + y * s[r][j], -q * s[r][t] + p * s[r][j]
        for r in range(n):
            v[r][t], v[r][j] = x * v[r][t] + y * v[r][j], -q * v[r][t] + p * v[r][j]

    t = 0
    while t < m and t < n:
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # alternate gcd passes on column t and row t; the pivot value
            # divides its predecessor each pass, so this stabilizes fast
            while True:
                for i in range(t + 1, m):
                    if s[i][t] != 0:
                        combine_rows(t, i)
                for j in range(t + 1, n):
                    if s[t][j] != 0:
                        combine_cols(t, j)
                if all(s[i][t] == 0 for i in range(t + 1, m)) \
                        and all(s[t][j] == 0 for j in range(t + 1, n)):
                    break
            # enforce divisibility of the remaining block by the pivot;
            # adding an offending row makes the next pass shrink the pivot
            # to a proper divisor, so this terminates
            p = s[t][t]
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            s[t] = [x + y for x, y in zip(s[t], s[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]
        t += 1
    for i in range(min(m, n)):
        if s[i][i] < 0:
            s[i] = [-x for x in s[i]]
            u[i] = [-x for x in u[i]]
    factors = tuple(s[i][i] for i in range(min(m, n)) if s[i][i] != 0)
    return SmithForm(Matrix(ZZ, u, m, m), Matrix(ZZ, s, m, n), Matrix(ZZ, v, n, n), factors)


def _nearest_quot(a: int, b: int) -> int:
    """Quotient minimizing |a - q*b| (deterministic tie toward floor)."""
    q, r = divmod(a, b)
    # python floor division leaves r with the sign of b, so |r| shrinks
    # below |b|/2 by bumping q in both sign cases
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def row_hermite(a: Matrix, transform: bool = False):
    """Row Hermite normal form over Z.

    Pivot entries positive, entries above a pivot reduced into [0, pivot),
    zero rows last.  With ``transform=True`` also returns unimodular u with
    u*a = h.
    """
    if a.ring != ZZ:
        raise WrongRing("Hermite form requires ring = Integers")
    m, n = a.rows, a.cols
    h = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transform else None
    r = 0
    for j in range(n):
        # clear below position (r, j) via extended gcd combinations
        piv = None
        for i in range(r, m):
            if h[i][j] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            h[r], h[piv] = h[piv], h[r]
            if transform:
                u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m):
            if h[i][j] == 0:
                continue
            g, x, y = _xgcd(h[r][j], h[i][j])
            p, q = h[r][j] // g, h[i][j] // g
            h[r], h[i] = ([x * a_ + y * b_ for a_, b_ in zip(h[r], h[i])],
                          [-q * a_ + p * b_ for a_, b_ in zip(h[r], h[i])])
            if transform:
                u[r], u[i] = ([x * a_ + y * b_ for a_, b_ in zip(u[r], u[i])],
                              [-q * a_ + p * b_ for a_, b_ in zip(u[r], u[i])])
        if h[r][j] < 0:
            h[r] = [-x for x in h[r]]
            if transform:
                u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][j] // h[r][j]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                if transform:
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
        if r == m:
            break
    hm = Matrix(ZZ, h, m, n)
    if transform:
        return hm, Matrix(ZZ, u, m, m)
    return hm


def column_hermite(a: Matrix, transform: bool = False):
    """Column Hermite form (transpose convention of :func:`row_hermite`)."""
    if transform:
        h, u = row_hermite(a.transpose(), transform=True)
        return h.transpose(), u.transpose()
    return row_hermite(a.transpose()).transpose()


def kernel_columns_Z(a: Matrix) -> list:
    """Saturated basis of {x in Z^cols : a*x = 0}, as column vectors."""
    if a.ring != ZZ:
        raise WrongRing("integer kernel requires ring = Integers")
    h, u = row_hermite(a.transpose(), transform=True)
    # rows of u corresponding to zero rows of h span the kernel of a
    out = []
    for i in range(h.rows):
        if all(x == 0 for x in h.row(i)):
            out.append(u.row(i))
    return [tuple(c) for c in out]


def _unit_lifting(a: int, n: int) -> int:
    """A unit u mod n with u*a = gcd(a, n) mod n."""
    a %= n
    if a == 0:
        return 1
    d = gcd(a, n)
    step = n // d
    if step == 1:
        return 1
    # write a = d*e; e is invertible mod n/d, and some lift of e^{-1}
    # by multiples of n/d is a unit mod n
    _, x, _ = _xgcd(a // d, step)
    u = x % step
    while gcd(u, n) != 1:
        u += step
    return u % n


def howell_form(a: Matrix) -> Matrix:
    """Canonical Howell form of the row span of ``a`` over Z/n.

    Two matrices over Z/n have equal row spans iff their Howell forms
    agree on the nonzero rows.  The output keeps the input's row count
    when the Howell basis fits (padding with zero rows); a larger basis
    (possible over Z/n) is returned in full.
    """
    if a.ring.kind != "Zmod":
        raise WrongRing("Howell form requires ring = IntegersMod(n)")
    n = a.ring.n
    cols = a.cols
    rows: list = []  # echelon rows, pivot column strictly increasing

    def insert(vec):
        vec = [x % n for x in vec]
        for j in range(cols):
            if vec[j] == 0:
                continue
            slot = None
            for idx, (pj, r) in enumerate(rows):
                if pj == j:
                    slot = idx
                    break
            if slot is None:
                rows.append((j, vec))
                rows.sort(key=lambda t: t[0])
                return vec
            pj, r = rows[slot]
            g, x, y = _xgcd(r[j], vec[j])
            p, q = r[j] // g, vec[j] // g
            new_r = [(x * s + y * t) % n for s, t in zip(r, vec)]
            vec = [(-q * s + p * t) % n for s, t in zip(r, vec)]
            rows[slot] = (j, new_r)
        return None

    for row in a.entries:
        insert(list(row))
    # Howell closure: annihilator multiples of each pivot row must lie in
    # the span of the later rows; inserting them achieves that.
    changed = True
    while changed:
        changed = False
        for pj, r in list(rows):
            d = gcd(r[pj], n)
            t = n // d
            ann = [(t * x) % n for x in r]
            if any(ann):
                if insert(ann) is not None:
                    changed = True
    # normalize: unit-scale pivots to divisors of n, reduce above pivots
    rows.sort(key=lambda t: t[0])
    for idx, (pj, r) in enumerate(rows):
        u = _unit_lifting(r[pj], n)
        rows[idx] = (pj, [(u * x) % n for x in r])
    for idx in range(len(rows) - 1, -1, -1):
        pj, r = rows[idx]
        d = r[pj]
        for k in range(idx):
            _, rk = rows[k]
            q = rk[pj] // d
            if q:
                rows[k] = (rows[k][0], [(x - q * y) % n for x, y in zip(rk, r)])
    out = [r for _, r in rows if any(r)]
    while len(out) < a.rows:
        out.append([0] * cols)
    return Matrix(a.ring, out, max(len(out), a.rows) if out else a.rows, cols)
