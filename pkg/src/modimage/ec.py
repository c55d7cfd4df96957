"""Elliptic curves over Q in long and short Weierstrass form.

Provides the standard invariants, quadratic twists and the exact twist
test, naive point counting mod p, odd division polynomials, and
chord-and-tangent arithmetic on rational points. All computations are in
exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .exactmath import is_cube, is_square
from .polyq import Poly

Rat = Union[int, Fraction]


class SingularCurveError(ValueError):
    """Raised when the requested Weierstrass equation has discriminant 0."""


class BadReduction(ValueError):
    """Raised when point counting is requested at a prime of bad reduction."""


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __init__(self, a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat):
        for name, v in zip(("a1", "a2", "a3", "a4", "a6"),
                           (a1, a2, a3, a4, a6)):
            object.__setattr__(self, name, _fr(v))
        if self.discriminant() == 0:
            raise SingularCurveError("discriminant is zero")

    def b_invariants(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = (a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3
              - a4 * a4)
        return b2, b4, b6, b8

    def c_invariants(self) -> Tuple[Fraction, Fraction]:
        b2, b4, b6, _ = self.b_invariants()
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        return c4, c6

    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants()
        return (-b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6
                + 9 * b2 * b4 * b6)

    def j_invariant(self) -> Fraction:
        c4, _ = self.c_invariants()
        return c4 ** 3 / self.discriminant()

    def invariants(self):
        """(c4, c6, discriminant, j)."""
        c4, c6 = self.c_invariants()
        return c4, c6, self.discriminant(), self.j_invariant()

    def a_invariants(self) -> Tuple[Fraction, Fraction, Fraction, Fraction,
                                    Fraction]:
        """(a1, a2, a3, a4, a6)."""
        return self.a1, self.a2, self.a3, self.a4, self.a6

    def rhs(self, x: Rat) -> Fraction:
        x = _fr(x)
        return x ** 3 + self.a2 * x * x + self.a4 * x + self.a6

    def contains(self, x: Rat, y: Rat) -> bool:
        x, y = _fr(x), _fr(y)
        return y * y + self.a1 * x * y + self.a3 * y == self.rhs(x)

    def __repr__(self):
        return (f"WeierstrassCurve({self.a1}, {self.a2}, {self.a3}, "
                f"{self.a4}, {self.a6})")


@dataclass(frozen=True)
class ShortCurve:
    """y^2 = x^3 + A x + B over Q."""

    A: Fraction
    B: Fraction

    def __init__(self, A: Rat, B: Rat):
        object.__setattr__(self, "A", _fr(A))
        object.__setattr__(self, "B", _fr(B))
        if 4 * self.A ** 3 + 27 * self.B ** 2 == 0:
            raise SingularCurveError("discriminant is zero")

    def to_long(self) -> WeierstrassCurve:
        return WeierstrassCurve(0, 0, 0, self.A, self.B)

    def j_invariant(self) -> Fraction:
        return self.to_long().j_invariant()

    def __repr__(self):
        return f"ShortCurve({self.A}, {self.B})"


def short_model(E: WeierstrassCurve) -> ShortCurve:
    """The standard short model y^2 = x^3 - 27 c4 x - 54 c6, isomorphic to
    E over Q (complete the square, then scale by 6)."""
    c4, c6 = E.c_invariants()
    return ShortCurve(-27 * c4, -54 * c6)


def quadratic_twist(E: ShortCurve, d: Rat) -> ShortCurve:
    """The twist of y^2 = x^3 + Ax + B by d: y^2 = x^3 + d^2 A x + d^3 B."""
    d = _fr(d)
    if d == 0:
        raise ValueError("twist by 0")
    return ShortCurve(d * d * E.A, d ** 3 * E.B)


def _as_short(E) -> ShortCurve:
    if isinstance(E, ShortCurve):
        return E
    if isinstance(E, WeierstrassCurve):
        return short_model(E)
    raise TypeError(f"not a curve: {E!r}")


def twist_test(E, Eprime, d: Rat) -> bool:
    """Whether Eprime is isomorphic over Q to the quadratic twist of E by d.

    Requires j(E) = j(Eprime). Away from j = 0 and j = 1728 the twisting
    scalar between the short models is c = (B' A)/(B A'), and the answer is
    whether c*d is a square. For j = 0 only d = 1 is supported (same
    quadratic-twist orbit, decided by whether B'/B is a cube); other
    combinations raise ValueError.
    """
    a = _as_short(E)
    b = _as_short(Eprime)
    d = _fr(d)
    if a.j_invariant() != b.j_invariant():
        raise ValueError("twist test requires equal j-invariants")
    j = a.j_invariant()
    if j != 0 and j != 1728:
        c = (b.B * a.A) / (a.B * b.A)
        return is_square(c * d)
    if j == 0 and d == 1:
        return is_cube(b.B / a.B)
    raise ValueError("twist test at j = 0 or 1728 only supports the "
                     "same-orbit form (j = 0, d = 1)")


# --- point counting --------------------------------------------------------

def integral_model(E: WeierstrassCurve) -> Tuple[WeierstrassCurve, int]:
    """Scale (x, y) -> (u^2 x, u^3 y) with u the lcm of the coefficient
    denominators, giving integer a-invariants. Returns (curve, u)."""
    u = 1
    for v in (E.a1, E.a2, E.a3, E.a4, E.a6):
        u = math.lcm(u, v.denominator)
    return WeierstrassCurve(E.a1 * u, E.a2 * u ** 2, E.a3 * u ** 3,
                            E.a4 * u ** 4, E.a6 * u ** 6), u


def ap(E, p: int) -> int:
    """Trace of Frobenius a_p = p + 1 - #E(F_p) by direct counting on an
    integral model. Raises BadReduction when p divides its discriminant.

    For odd p the count is p + 1 + sum over x of the quadratic character
    of 4x^3 + b2 x^2 + 2 b4 x + b6 (complete the square in y); p = 2 is a
    four-point brute force.
    """
    if isinstance(E, ShortCurve):
        E = E.to_long()
    M, _ = integral_model(E)
    disc = int(M.discriminant())
    if disc % p == 0:
        raise BadReduction(f"p = {p} divides the discriminant")
    a1, a2, a3, a4, a6 = (int(M.a1), int(M.a2), int(M.a3), int(M.a4),
                          int(M.a6))
    if p == 2:
        count = 1
        for x in (0, 1):
            for y in (0, 1):
                if (y * y + a1 * x * y + a3 * y
                        - (x ** 3 + a2 * x * x + a4 * x + a6)) % 2 == 0:
                    count += 1
        return 2 + 1 - count
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    char = bytearray(p)  # quadratic character + 1: chi(v) = char[v] - 1
    char[0] = 1
    for v in range(1, p):
        char[v * v % p] = 2
    total = 0
    for x in range(p):
        g = (((4 * x + b2) * x + 2 * b4) * x + b6) % p
        total += char[g] - 1
    return -total


# --- division polynomials --------------------------------------------------

def division_polynomial(E, n: int) -> Poly:
    """The odd division polynomial psi_n in x for n odd >= 3, of degree
    (n^2 - 1)/2, whose roots are the x-coordinates of the nonzero n-torsion.

    Uses the recurrences in the b-invariants, writing psi_m = f_m for m odd
    and psi_m = f_m * psi_2 for m even, where psi_2^2 = 4x^3 + b2 x^2 +
    2 b4 x + b6.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("defined for odd n >= 3")
    if isinstance(E, ShortCurve):
        E = E.to_long()
    b2, b4, b6, b8 = E.b_invariants()
    x = Poly.var()
    B = 4 * x ** 3 + b2 * x ** 2 + 2 * b4 * x + b6
    base = {
        0: Poly(),
        1: Poly.const(1),
        2: Poly.const(1),
        3: 3 * x ** 4 + b2 * x ** 3 + 3 * b4 * x ** 2 + 3 * b6 * x + b8,
        4: (2 * x ** 6 + b2 * x ** 5 + 5 * b4 * x ** 4 + 10 * b6 * x ** 3
            + 10 * b8 * x ** 2 + (b2 * b8 - b4 * b6) * x
            + (b4 * b8 - b6 * b6)),
    }
    memo = dict(base)

    def f(m: int) -> Poly:
        if m in memo:
            return memo[m]
        if m % 2 == 1:
            k = (m - 1) // 2
            if k % 2 == 0:
                val = f(k + 2) * f(k) ** 3 * B ** 2 - f(k - 1) * f(k + 1) ** 3
            else:
                val = f(k + 2) * f(k) ** 3 - f(k - 1) * f(k + 1) ** 3 * B ** 2
        else:
            k = m // 2
            val = f(k) * (f(k + 2) * f(k - 1) ** 2 - f(k - 2) * f(k + 1) ** 2)
        memo[m] = val
        return val

    out = f(n)
    expected = (n * n - 1) // 2
    if out.degree != expected:
        raise ArithmeticError(f"psi_{n} degree {out.degree} != {expected}")
    return out


# --- rational points -------------------------------------------------------

@dataclass(frozen=True)
class PointQ:
    """A rational point on a long Weierstrass curve; x = y = None is the
    point at infinity."""

    curve: WeierstrassCurve
    x: Optional[Fraction]
    y: Optional[Fraction]

    def __init__(self, curve: WeierstrassCurve, x=None, y=None):
        object.__setattr__(self, "curve", curve)
        if x is None and y is None:
            object.__setattr__(self, "x", None)
            object.__setattr__(self, "y", None)
            return
        x, y = _fr(x), _fr(y)
        if not curve.contains(x, y):
            raise ValueError(f"({x}, {y}) is not on the curve")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "PointQ":
        if self.is_infinity():
            return self
        E = self.curve
        return PointQ(E, self.x, -self.y - E.a1 * self.x - E.a3)

    def __add__(self, other: "PointQ") -> "PointQ":
        if self.curve != other.curve:
            raise ValueError("points on different curves")
        if self.is_infinity():
            return other
        if other.is_infinity():
            return self
        E = self.curve
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2 and (y1 + y2 + E.a1 * x2 + E.a3) == 0:
            return PointQ(E)
        if x1 == x2:
            lam = ((3 * x1 * x1 + 2 * E.a2 * x1 + E.a4 - E.a1 * y1)
                   / (2 * y1 + E.a1 * x1 + E.a3))
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + E.a1 * lam - E.a2 - x1 - x2
        y3 = -(lam + E.a1) * x3 - nu - E.a3
        return PointQ(E, x3, y3)

    def __repr__(self):
        if self.is_infinity():
            return "PointQ(infinity)"
        return f"PointQ({self.x}, {self.y})"


def scalar_mul(P: PointQ, k: int) -> PointQ:
    """k * P by double and add."""
    if k < 0:
        return scalar_mul(-P, -k)
    acc = PointQ(P.curve)
    addend = P
    while k:
        if k & 1:
            acc = acc + addend
        addend = addend + addend
        k >>= 1
    return acc
