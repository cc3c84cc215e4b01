"""Reversed characteristic polynomials det(1 - a*t), exactly."""

from __future__ import annotations

from fractions import Fraction

from .matrix import Matrix, NotSquare
from .rings import QQ


def char_rev_poly(a: Matrix) -> tuple:
    """Coefficients (ascending in t) of det(1 - a*t); constant term 1.

    Uses Faddeev-LeVerrier over Q, so the input may be over Z or Q.
    """
    if not a.is_square():
        raise NotSquare(f"{a.shape}")
    n = a.rows
    if n == 0:
        return (Fraction(1),)
    aq = a.change_ring(QQ)
    ident = Matrix.identity(QQ, n)
    m = ident
    cs = [Fraction(1)]
    for k in range(1, n + 1):
        am = aq * m
        c = -_trace(am) / k
        cs.append(c)
        m = am + ident.scale(c)
    # det(lambda*I - a) = sum cs[k] lambda^(n-k); det(1 - a t) = sum cs[k] t^k
    return tuple(cs)


def _trace(m: Matrix) -> Fraction:
    return sum((m[i, i] for i in range(m.rows)), Fraction(0))
