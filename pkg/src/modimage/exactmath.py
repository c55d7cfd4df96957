"""Exact integer and rational arithmetic predicates.

Everything operates on Python ints and fractions.Fraction, so all results
are exact. No floating point is used anywhere in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]

# Witnesses making Miller-Rabin deterministic for n < 3.3 * 10**24; for
# larger n the same set is a strong probable-prime test, which is all the
# factor() contract promises.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test (deterministic below 3.3e24)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def icbrt(n: int) -> int:
    """Floor of the real cube root of n >= 0, computed with integer Newton."""
    if n < 0:
        raise ValueError("icbrt requires n >= 0")
    if n == 0:
        return 0
    x = 1 << -(-n.bit_length() // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def _int_is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _int_is_cube(n: int) -> bool:
    m = abs(n)
    r = icbrt(m)
    return r * r * r == m


def is_square(x: Rat) -> bool:
    """True iff x is the square of a rational number."""
    x = Fraction(x)
    return _int_is_square(x.numerator) and _int_is_square(x.denominator)


def is_cube(x: Rat) -> bool:
    """True iff x is the cube of a rational number."""
    x = Fraction(x)
    return _int_is_cube(x.numerator) and _int_is_cube(x.denominator)


def is_fourth_power(x: Rat) -> bool:
    """True iff x is a fourth power of a rational number."""
    x = Fraction(x)
    if x < 0:
        return False
    n4 = math.isqrt(x.numerator)
    d4 = math.isqrt(x.denominator)
    return (n4 * n4 == x.numerator and d4 * d4 == x.denominator
            and _int_is_square(n4) and _int_is_square(d4))


def legendre(a: Rat, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p.

    a may be a rational whose denominator is prime to p; the symbol is then
    (num/p)*(den/p), consistent with a mod p being den^-1 * num.
    """
    if p < 3 or p % 2 == 0 or not is_probable_prime(p):
        raise ValueError("legendre requires an odd prime modulus")
    a = Fraction(a)
    if a.denominator % p == 0:
        raise ValueError("denominator not invertible mod p")
    n = (a.numerator * pow(a.denominator, -1, p)) % p
    if n == 0:
        return 0
    s = pow(n, (p - 1) // 2, p)
    return 1 if s == 1 else -1


@dataclass(frozen=True)
class Incomplete:
    """Partial factorization: trial division plus a primality check on the
    cofactor did not finish. `factors` holds what was found, `cofactor` the
    remaining composite (or unproven) part."""

    factors: dict
    cofactor: int


def factor(n: int, trial_bound: int = 10 ** 6):
    """Factor |n| into primes by trial division up to trial_bound.

    Returns {prime: exponent} when the factorization completes, where the
    cofactor left after trial division is either 1 or passes a primality
    test. Otherwise returns Incomplete carrying the partial factorization
    and the unfactored cofactor.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    m = abs(n)
    factors: dict = {}
    for p in _trial_primes(trial_bound):
        if p * p > m:
            break
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    if m == 1:
        return factors
    if m <= trial_bound or is_probable_prime(m):
        factors[m] = factors.get(m, 0) + 1
        return factors
    return Incomplete(factors, m)


def _trial_primes(bound: int):
    """Yield 2, 3, 5, ... up to bound (simple incremental wheel)."""
    if bound >= 2:
        yield 2
    if bound >= 3:
        yield 3
    p = 5
    step = 2
    while p <= bound:
        yield p
        p += step
        step = 6 - step


def primes_up_to(bound: int) -> list:
    """All primes <= bound, by a sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytes((bound - i * i) // i + 1)
    return [i for i, v in enumerate(sieve) if v]


def squarefree_kernel(n: int, trial_bound: int = 10 ** 6):
    """Squarefree part of n (same sign), or Incomplete if factoring fails."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    fac = factor(n, trial_bound)
    if isinstance(fac, Incomplete):
        return fac
    k = 1
    for p, e in fac.items():
        if e % 2 == 1:
            k *= p
    return k if n > 0 else -k
