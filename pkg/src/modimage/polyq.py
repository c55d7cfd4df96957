"""Dense univariate polynomials and rational functions over Q.

Polynomials are immutable dense coefficient tuples (index = degree) of
Fractions with no stale leading zeros. Rational functions are kept in the
canonical form gcd(num, den) = 1 with monic denominator, so equality is
plain field-by-field comparison.

rational_roots finds all rational roots of a polynomial by reducing to a
squarefree integer polynomial, picking a prime of good reduction, Newton
lifting the mod-p roots to a large prime power, and applying rational
reconstruction; every candidate is verified by exact substitution, and
completeness follows from the root bounds used to size the lift.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Union

from .exactmath import is_probable_prime

Rat = Union[int, Fraction]


class Infinity:
    """The point at infinity of the projective j-line (pole values)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinity"


INFINITY = Infinity()


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Dense univariate polynomial over Q. Immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rat] = ()):
        cs = [_fr(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def const(c: Rat) -> "Poly":
        return Poly([c])

    @staticmethod
    def var() -> "Poly":
        return Poly([0, 1])

    @staticmethod
    def monomial(c: Rat, n: int) -> "Poly":
        return Poly([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 by convention."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] - other[i] for i in range(n)])

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Poly; use RatFunc")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Poly([c / other for c in self.coeffs])
        if isinstance(other, (Poly, RatFunc)):
            return RatFunc(self, Poly.const(1)) / other
        return NotImplemented

    def __rtruediv__(self, other):
        return _coerce_ratfunc(other) / RatFunc(self, Poly.const(1))

    def divmod(self, other: "Poly"):
        """Exact long division over Q: self = q*other + r, deg r < deg other."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        lead = other.leading()
        dg = other.degree
        while len(rem) - 1 >= dg and rem:
            c = rem[-1] / lead
            k = len(rem) - 1 - dg
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(q), Poly(rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x: Rat) -> Fraction:
        """Horner evaluation at a rational point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_poly(self, inner: "Poly") -> "Poly":
        """Polynomial composition self(inner(t))."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.const(c)
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly([c / lead for c in self.coeffs])

    def content_and_primitive(self):
        """Return (c, P) with self = c * P, P having coprime integer
        coefficients and positive leading coefficient."""
        if self.is_zero():
            return Fraction(0), Poly()
        den = math.lcm(*[c.denominator for c in self.coeffs])
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        prim = Poly([v // g for v in ints])
        return Fraction(g, den), prim

    def int_coeffs(self) -> list:
        """Coefficients as ints; raises if any is non-integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError("polynomial has non-integer coefficients")
            out.append(c.numerator)
        return out

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _coerce_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return NotImplemented


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over Q.

    Runs a primitive pseudo-remainder sequence on the primitive integer
    parts. Plain fraction Euclid squares its coefficient sizes at every
    step, which is hopeless already around degree 30; stripping the
    content after each pseudo-division keeps the numbers near the size
    of the inputs' subresultants.
    """
    if f.is_zero():
        return f if g.is_zero() else g.monic()
    if g.is_zero():
        return f.monic()
    _, a = f.content_and_primitive()
    _, b = g.content_and_primitive()
    if a.degree < b.degree:
        a, b = b, a
    while True:
        if b.is_zero():
            return a.monic()
        if b.degree == 0:
            return Poly([Fraction(1)])
        scale = b.leading() ** (a.degree - b.degree + 1)
        r = (Poly.const(scale) * a) % b
        if not r.is_zero():
            _, r = r.content_and_primitive()
        a, b = b, r


def exact_divide(f: Poly, g: Poly) -> Optional[Poly]:
    """Return f/g when g divides f exactly, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    q, r = f.divmod(g)
    if r.is_zero():
        return q
    return None


def poly_sqrt(f: Poly) -> Optional[Poly]:
    """Return g with g*g == f when f is a perfect square over Q, else None."""
    if f.is_zero():
        return Poly()
    if f.degree % 2 != 0:
        return None
    from .exactmath import is_square
    lead = f.leading()
    if not is_square(lead):
        return None
    n = f.degree // 2
    lead_rt = Fraction(math.isqrt(lead.numerator), math.isqrt(lead.denominator))
    # Build the root from the top coefficient down: the x^(n+k) coefficient
    # of g*g determines g's x^k coefficient once higher ones are known.
    g = [Fraction(0)] * (n + 1)
    g[n] = lead_rt
    for k in range(n - 1, -1, -1):
        s = Fraction(0)
        for i in range(k + 1, n):
            j = n + k - i
            if k < j <= n:
                s += g[i] * g[j]
        g[k] = (f[n + k] - s) / (2 * lead_rt)
    cand = Poly(g)
    if cand * cand == f:
        return cand
    return None


class RatFunc:
    """Rational function over Q in canonical form: num/den coprime, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        num = _coerce_poly(num)
        den = Poly.const(1) if den is None else _coerce_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", Poly())
            object.__setattr__(self, "den", Poly.const(1))
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lead = den.leading()
        if lead != 1:
            num = num / lead
            den = den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def var() -> "RatFunc":
        return RatFunc(Poly.var())

    @staticmethod
    def const(c: Rat) -> "RatFunc":
        return RatFunc(Poly.const(c))

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0]

    @property
    def degree(self) -> int:
        """Degree as a map P^1 -> P^1."""
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __rsub__(self, other):
        return _coerce_ratfunc(other) - self

    def __mul__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_ratfunc(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def __repr__(self):
        if self.den == Poly.const(1):
            return f"RatFunc({format_poly(self.num)!r})"
        return f"RatFunc({format_poly(self.num)!r}, {format_poly(self.den)!r})"


def _coerce_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc(Poly.const(x))
    return NotImplemented


def compose(outer: RatFunc, inner: RatFunc) -> RatFunc:
    """Composition outer(inner(t)) of rational maps of the projective line.

    Uses the homogenized substitution: with inner = p/q and d the mapping
    degree of outer, each of outer's num and den becomes
    sum_i c_i p^i q^(d-i), and the common q^d cancels. Raises
    ZeroDivisionError if the resulting denominator is identically zero
    (inner constant at a pole of outer).
    """
    outer = _coerce_ratfunc(outer)
    inner = _coerce_ratfunc(inner)
    p, q = inner.num, inner.den
    d = max(outer.num.degree, outer.den.degree, 0)
    ppow = [Poly.const(1)]
    qpow = [Poly.const(1)]
    for _ in range(d):
        ppow.append(ppow[-1] * p)
        qpow.append(qpow[-1] * q)

    def homog(f: Poly) -> Poly:
        acc = Poly()
        for i in range(f.degree + 1):
            c = f[i]
            if c != 0:
                acc = acc + c * ppow[i] * qpow[d - i]
        return acc

    num = homog(outer.num)
    den = homog(outer.den)
    if den.is_zero():
        raise ZeroDivisionError("composition lands at a pole everywhere")
    return RatFunc(num, den)


def evaluate(f: RatFunc, x):
    """Value of f at x as a Fraction, or INFINITY at a pole. Accepts
    x = INFINITY and returns the limit there (ratio of leading terms)."""
    f = _coerce_ratfunc(f)
    if x is INFINITY:
        dn, dd = f.num.degree, f.den.degree
        if dn > dd:
            return INFINITY
        if dn < dd:
            return Fraction(0)
        return f.num.leading() / f.den.leading()
    n = f.num.evaluate(x)
    d = f.den.evaluate(x)
    if d == 0:
        if n == 0:
            raise ArithmeticError("0/0 after canonicalization; broken invariant")
        return INFINITY
    return n / d


# --- rational root finding -------------------------------------------------

def rational_roots(f: Poly) -> set:
    """All rational roots of f, found by Hensel lifting.

    The polynomial is reduced to its squarefree part with integer coprime
    coefficients; a prime p of squarefree reduction not dividing the leading
    coefficient is chosen; the roots mod p are Newton lifted, doubling the
    precision until the modulus exceeds twice the product of the numerator
    and denominator bounds; rational reconstruction proposes candidates and
    each is verified by exact substitution into f. Roots at t = 0 are split
    off first so the constant term is nonzero.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has every root")
    roots = set()
    cs = list(f.coeffs)
    shift = 0
    while cs and cs[0] == 0:
        cs.pop(0)
        shift += 1
    if shift:
        roots.add(Fraction(0))
    g = Poly(cs)
    if g.degree < 1:
        return roots
    _, prim = g.content_and_primitive()
    sqf = _squarefree_part(prim)
    ints = sqf.int_coeffs()
    an = abs(ints[-1])
    height = max(abs(c) for c in ints)
    # Any root u/v in lowest terms has v | a_n and |u/v| <= 1 + H/|a_n|,
    # so |u| <= |a_n| + H and |v| <= |a_n|.
    bound_u = an + height
    bound_v = an
    p = _good_prime(ints)
    residues = _roots_mod_p(ints, p)
    if not residues:
        return roots
    target = 2 * bound_u * bound_v + 1
    lifted, modulus = _newton_lift(ints, residues, p, target)
    for r in lifted:
        cand = _rational_reconstruct(r, modulus, bound_u, bound_v)
        if cand is None:
            continue
        if g.evaluate(cand) == 0:
            roots.add(cand)
    return roots


def _squarefree_part(f: Poly) -> Poly:
    """Squarefree part of a primitive integer polynomial, again primitive."""
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return f
    _, prim = (f // g).content_and_primitive()
    return prim


def _good_prime(ints: list) -> int:
    """Smallest prime p with p not dividing the leading coefficient and the
    reduction mod p squarefree."""
    p = 2
    while True:
        if is_probable_prime(p) and ints[-1] % p != 0:
            fp = [c % p for c in ints]
            dfp = [(i * c) % p for i, c in enumerate(ints)][1:]
            if _gcd_mod_p_is_one(fp, dfp, p):
                return p
        p += 1
        if p > 100000:
            raise ArithmeticError("no prime of squarefree reduction found")


def _gcd_mod_p_is_one(a: list, b: list, p: int) -> bool:
    a = _trim(a)
    b = _trim(b)
    while b:
        a, b = b, _poly_mod_mod_p(a, b, p)
    return len(a) == 1


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod_mod_p(a: list, b: list, p: int) -> list:
    a = a[:]
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        off = len(a) - len(b)
        for i in range(len(b)):
            a[off + i] = (a[off + i] - c * b[i]) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _roots_mod_p(ints: list, p: int) -> list:
    out = []
    for r in range(p):
        acc = 0
        for c in reversed(ints):
            acc = (acc * r + c) % p
        if acc == 0:
            out.append(r)
    return out


def _newton_lift(ints: list, residues: list, p: int, target: int):
    """Lift simple roots mod p to roots mod p^(2^m) >= target."""
    modulus = p
    roots = list(residues)
    while modulus < target:
        modulus = modulus * modulus
        new_roots = []
        for r in roots:
            fr = _eval_mod(ints, r, modulus)
            dfr = _eval_mod([i * c for i, c in enumerate(ints)][1:], r, modulus)
            r2 = (r - fr * pow(dfr, -1, modulus)) % modulus
            new_roots.append(r2)
        roots = new_roots
    return roots, modulus


def _eval_mod(ints: list, x: int, m: int) -> int:
    acc = 0
    for c in reversed(ints):
        acc = (acc * x + c) % m
    return acc


def _rational_reconstruct(x: int, m: int, bound_u: int, bound_v: int):
    """Find u/v with u = v*x mod m, |u| <= bound_u, 0 < v <= bound_v."""
    r0, r1 = m, x % m
    t0, t1 = 0, 1
    while r1 > bound_u:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound_v:
        return None
    if math.gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


# --- printing and parsing --------------------------------------------------

def format_rat(x: Rat) -> str:
    x = _fr(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    s = s.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"malformed rational {s!r}") from e


def format_poly(f: Poly, var: str = "t") -> str:
    """Render as 'c_n*t^n + ... + c_0', highest degree first."""
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            term = format_rat(c)
        elif i == 1:
            term = f"{format_rat(c)}*{var}"
        else:
            term = f"{format_rat(c)}*{var}^{i}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


def parse_poly(s: str, var: str = "t") -> Poly:
    """Parse the format produced by format_poly (plus harmless variants like
    a bare 't^2' or '-t')."""
    s = s.strip().replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    # Split into signed terms at + and - that are not inside a fraction.
    terms = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "+-*^/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    coeffs: dict = {}
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError("malformed polynomial term")
        if var in term:
            head, _, tail = term.partition(var)
            if head.endswith("*"):
                head = head[:-1]
            coef = parse_rat(head) if head else Fraction(1)
            if tail.startswith("^"):
                exp = int(tail[1:])
            elif tail == "":
                exp = 1
            else:
                raise ValueError(f"malformed polynomial term {term!r}")
        else:
            coef = parse_rat(term)
            exp = 0
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + sign * coef
    n = max(coeffs) if coeffs else 0
    return Poly([coeffs.get(i, Fraction(0)) for i in range(n + 1)])
