"""Ground rings for exact matrix computations: Z, Z/n and Q.

Scalars are plain Python ints (Z, Z/n; residues kept in [0, n)) or
``fractions.Fraction`` (Q, automatically in lowest terms).  No floating
point appears anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class WrongRing(Exception):
    """An operation received a matrix over an unsupported ring."""


class RingMismatch(Exception):
    """Two operands live over different rings."""


@dataclass(frozen=True)
class Ring:
    kind: str  # "Z", "Q" or "Zmod"
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zmod"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zmod" and self.n < 2:
            raise ValueError("IntegersMod requires modulus >= 2")
        if self.kind != "Zmod" and self.n != 0:
            raise ValueError("modulus only makes sense for Zmod")

    # -- scalar arithmetic ------------------------------------------------

    def normalize(self, x):
        if self.kind == "Z":
            return int(x)
        if self.kind == "Zmod":
            return int(x) % self.n
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def mul(self, a, b):
        return self.normalize(a * b)

    def neg(self, a):
        return self.normalize(-a)

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def scalar_str(self, x) -> str:
        if self.kind == "Q":
            f = Fraction(x)
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        return str(x)

    def scalar_from_str(self, s: str):
        if self.kind == "Q":
            return Fraction(s)
        return self.normalize(int(s))

    def __str__(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "Q":
            return "Q"
        return f"Z/{self.n}"


ZZ = Ring("Z")
QQ = Ring("Q")


def Zmod(n: int) -> Ring:
    return Ring("Zmod", n)


def ring_from_str(s: str) -> Ring:
    if s == "Z":
        return ZZ
    if s == "Q":
        return QQ
    if s.startswith("Z/"):
        return Zmod(int(s[2:]))
    raise ValueError(f"unknown ring {s!r}")


def same_ring(*rings: Ring) -> Ring:
    first = rings[0]
    for r in rings[1:]:
        if r != first:
            raise RingMismatch(f"{first} vs {r}")
    return first
