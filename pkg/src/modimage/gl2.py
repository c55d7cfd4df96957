"""Subgroups of GL2 over a prime field, by explicit enumeration.

Matrices are immutable 2x2 arrays over F_l with nonzero determinant.
Subgroups are generated sets closed under multiplication, eagerly
enumerated (intended for l <= 13 plus a few named groups at larger l,
where the orders stay in the tens of thousands).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Tuple


def gl2_order(l: int) -> int:
    """|GL2(F_l)| = (l^2 - 1)(l^2 - l)."""
    return (l * l - 1) * (l * l - l)


def sl2_order(l: int) -> int:
    return gl2_order(l) // (l - 1)


class Mat2:
    """Invertible 2x2 matrix over F_l."""

    __slots__ = ("a", "b", "c", "d", "l")

    def __init__(self, a: int, b: int, c: int, d: int, l: int):
        a %= l
        b %= l
        c %= l
        d %= l
        if (a * d - b * c) % l == 0:
            raise ValueError(f"singular matrix [{a},{b};{c},{d}] mod {l}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "l", l)

    def __setattr__(self, *args):
        raise AttributeError("Mat2 is immutable")

    @staticmethod
    def identity(l: int) -> "Mat2":
        return Mat2(1, 0, 0, 1, l)

    def __mul__(self, other: "Mat2") -> "Mat2":
        l = self.l
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d, l)

    def inverse(self) -> "Mat2":
        l = self.l
        inv_det = pow(self.det(), -1, l)
        return Mat2(self.d * inv_det, -self.b * inv_det,
                    -self.c * inv_det, self.a * inv_det, l)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d, self.l)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.l

    def trace(self) -> int:
        return (self.a + self.d) % self.l

    def tuple(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return (isinstance(other, Mat2) and self.l == other.l
                and self.tuple() == other.tuple())

    def __hash__(self):
        return hash((self.tuple(), self.l))

    def __repr__(self):
        return f"[{self.a},{self.b};{self.c},{self.d}]"


def epsilon(l: int) -> int:
    """The fixed non-square used for the non-split torus: -1 when
    l = 3 mod 4, otherwise the smallest non-residue >= 2."""
    if l == 2:
        raise ValueError("no non-split torus convention at l = 2")
    if l % 4 == 3:
        return l - 1
    e = 2
    while pow(e, (l - 1) // 2, l) == 1:
        e += 1
    return e


def primitive_root(l: int) -> int:
    """Smallest generator of the cyclic group F_l^*."""
    if l == 2:
        return 1
    fac = _prime_divisors(l - 1)
    g = 2
    while True:
        if all(pow(g, (l - 1) // q, l) != 1 for q in fac):
            return g
        g += 1


def _prime_divisors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def span(generators: Iterable[Mat2], l: int) -> frozenset:
    """Closure of the generators under multiplication (the generated
    subgroup; inverses come for free in a finite group)."""
    gens = list(generators)
    elements = {Mat2.identity(l)}
    frontier = [Mat2.identity(l)]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                prod = m * g
                if prod not in elements:
                    elements.add(prod)
                    new.append(prod)
        frontier = new
    return frozenset(elements)


@dataclass(frozen=True)
class Invariants:
    order: int
    index: int
    det_is_full: bool
    has_minus_i: bool
    fingerprints: frozenset  # set of (trace, det) pairs


class Subgroup:
    """A subgroup of GL2(F_l) given by generators, with its elements
    enumerated eagerly at construction."""

    __slots__ = ("l", "generators", "elements", "label")

    def __init__(self, l: int, generators: Iterable[Mat2], label: str = ""):
        gens = tuple(generators)
        for g in gens:
            if g.l != l:
                raise ValueError("generator over the wrong field")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "elements", span(gens, l))
        object.__setattr__(self, "label", label)

    def __setattr__(self, *args):
        raise AttributeError("Subgroup is immutable")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return gl2_order(self.l) // self.order

    def __contains__(self, m: Mat2) -> bool:
        return m in self.elements

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.l == other.l
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.l, self.elements))

    def invariants(self) -> Invariants:
        l = self.l
        minus_i = Mat2(-1, 0, 0, -1, l)
        dets = {m.det() for m in self.elements}
        return Invariants(
            order=self.order,
            index=self.index,
            det_is_full=(len(dets) == l - 1),
            has_minus_i=minus_i in self.elements,
            fingerprints=frozenset((m.trace(), m.det()) for m in self.elements),
        )

    def __repr__(self):
        name = self.label or "subgroup"
        return f"<{name} of GL2(F_{self.l}), order {self.order}>"


def is_applicable(G: Subgroup) -> bool:
    """Whether G can be the mod-l image of a curve over Q that is not
    yet accounted for: proper, containing -I, with surjective determinant,
    and containing a trace-zero element of determinant -1. At l = 2 the
    -I condition holds automatically since -I = I."""
    inv = G.invariants()
    if inv.index <= 1:
        return False
    if not inv.has_minus_i:
        return False
    if not inv.det_is_full:
        return False
    l = G.l
    return any(m.trace() == 0 and m.det() == (l - 1) % l for m in G.elements)


def enumerate_gl2(l: int):
    """Iterate over all of GL2(F_l). Quadratic in l^2; fine for l <= 13."""
    for a in range(l):
        for b in range(l):
            for c in range(l):
                for d in range(l):
                    if (a * d - b * c) % l != 0:
                        yield Mat2(a, b, c, d, l)


def is_conjugate(G: Subgroup, H: Subgroup) -> Tuple[bool, Optional[Mat2]]:
    """Decide conjugacy in GL2(F_l), returning a witness M with
    M G M^-1 = H when one exists.

    Fast rejection by order and fingerprint set; then a search over the
    full group, checking that each generator of G lands in H (equal orders
    then force equality). Intended for l <= 13.
    """
    if G.l != H.l:
        raise ValueError("subgroups of different ambient groups")
    if G.order != H.order:
        return False, None
    gi, hi = G.invariants(), H.invariants()
    if gi.fingerprints != hi.fingerprints:
        return False, None
    gens = G.generators if G.generators else tuple(G.elements)
    for m in enumerate_gl2(G.l):
        m_inv = m.inverse()
        if all((m * g * m_inv) in H.elements for g in gens):
            return True, m
    return False, None


# --- the named subgroups ---------------------------------------------------

def cartan_split(l: int, label: str = "") -> Subgroup:
    """Diagonal matrices."""
    g = primitive_root(l)
    return Subgroup(l, [Mat2(g, 0, 0, 1, l), Mat2(1, 0, 0, g, l)],
                    label or f"{l}.Cs")


def cartan_nonsplit(l: int, label: str = "") -> Subgroup:
    """Matrices [a, b*eps; b, a], the image of F_{l^2}^* acting on itself."""
    e = epsilon(l)
    gen = _nonsplit_generator(l, e)
    return Subgroup(l, [gen], label or f"{l}.Cns")


@lru_cache(maxsize=None)
def _nonsplit_generator(l: int, e: int) -> Mat2:
    # An element a + b*sqrt(eps) generating F_{l^2}^*, searched in order.
    target = l * l - 1
    for a in range(l):
        for b in range(1, l):
            if (a * a - e * b * b) % l == 0:
                continue
            m = Mat2(a, b * e % l, b, a, l)
            if _order(m) == target:
                return m
    raise ArithmeticError("no generator found; not a prime field?")


def _order(m: Mat2) -> int:
    k = 1
    acc = m
    ident = Mat2.identity(m.l)
    while acc != ident:
        acc = acc * m
        k += 1
    return k


def normalizer_split(l: int, label: str = "") -> Subgroup:
    G = cartan_split(l)
    gens = list(G.generators) + [Mat2(0, 1, 1, 0, l)]
    return Subgroup(l, gens, label or f"{l}.Ns")


def normalizer_nonsplit(l: int, label: str = "") -> Subgroup:
    G = cartan_nonsplit(l)
    gens = list(G.generators) + [Mat2(1, 0, 0, -1, l)]
    return Subgroup(l, gens, label or f"{l}.Nns")


def borel(l: int, label: str = "") -> Subgroup:
    g = primitive_root(l)
    return Subgroup(l, [Mat2(g, 0, 0, 1, l), Mat2(1, 0, 0, g, l),
                        Mat2(1, 1, 0, 1, l)], label or f"{l}.B")


def full_gl2(l: int, label: str = "") -> Subgroup:
    g = primitive_root(l)
    return Subgroup(l, [Mat2(g, 0, 0, 1, l), Mat2(1, 1, 0, 1, l),
                        Mat2(0, 1, 1, 0, l)] if l > 2 else
                    [Mat2(1, 1, 0, 1, l), Mat2(0, 1, 1, 0, l)],
                    label or "GL2")


def octahedral_normalizer(l: int, label: str = "") -> Subgroup:
    """The subgroup of order 24(l-1) whose projective image is the
    octahedral group S4, built from a quaternion pair i, j with
    i^2 = j^2 = -I and ij = -ji, the 3-cycle I+i+j+ij, the 4-fold
    element I+i, and all scalars. Its determinants are onto exactly
    when l = 3 or 5 mod 8."""
    if l < 3:
        raise ValueError("needs an odd prime")
    a, b = _sum_of_squares_minus_one(l)
    i = Mat2(0, -1, 1, 0, l)
    j = Mat2(a, b, b, -a, l)
    k = i * j
    sigma = _mat_sum([Mat2.identity(l), i, j, k], l)
    four = _mat_sum([Mat2.identity(l), i], l)
    g = primitive_root(l)
    scal = Mat2(g, 0, 0, g, l)
    return Subgroup(l, [i, j, sigma, four, scal], label or f"{l}.S4")


def _mat_sum(ms, l: int) -> Mat2:
    a = sum(m.a for m in ms)
    b = sum(m.b for m in ms)
    c = sum(m.c for m in ms)
    d = sum(m.d for m in ms)
    return Mat2(a, b, c, d, l)


def _sum_of_squares_minus_one(l: int) -> Tuple[int, int]:
    for a in range(l):
        need = (-1 - a * a) % l
        for b in range(l):
            if b * b % l == need:
                return a, b
    raise ArithmeticError("unreachable for odd l")


# --- fingerprint membership without enumeration ----------------------------

def _is_residue(x: int, l: int) -> bool:
    x %= l
    if x == 0:
        return True
    return pow(x, (l - 1) // 2, l) == 1


def fingerprint_in_borel(t: int, d: int, l: int) -> bool:
    """Whether some upper-triangular matrix has this (trace, det): the
    characteristic polynomial must split over F_l."""
    disc = (t * t - 4 * d) % l
    return _is_residue(disc, l)


def fingerprint_in_split_normalizer(t: int, d: int, l: int) -> bool:
    """Torus part needs a split characteristic polynomial; the outer coset
    consists of trace-zero matrices of arbitrary determinant."""
    if t % l == 0:
        return True
    return _is_residue((t * t - 4 * d) % l, l)


def fingerprint_in_nonsplit_normalizer(t: int, d: int, l: int) -> bool:
    """Torus elements have non-split or scalar characteristic polynomial;
    the outer coset is trace-zero."""
    if t % l == 0:
        return True
    disc = (t * t - 4 * d) % l
    if disc == 0:
        return True
    return not _is_residue(disc, l)


def fingerprint_in_octahedral(t: int, d: int, l: int) -> bool:
    """Projectively octahedral elements satisfy t^2/d in {0, 1, 2, 4}."""
    u = t * t * pow(d, -1, l) % l
    return u in (0, 1, 2 % l, 4 % l)
