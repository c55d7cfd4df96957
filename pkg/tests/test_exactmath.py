"""Tests for the integer and rational helpers."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from modimage.exactmath import (
    Incomplete,
    factor,
    is_cube,
    is_fourth_power,
    is_probable_prime,
    is_square,
    legendre,
    primes_up_to,
    squarefree_kernel,
)
from oracles import naive_is_square, squares_mod


def test_primality_small():
    primes = {p for p in range(2, 200) if is_probable_prime(p)}
    assert primes == set(primes_up_to(199))
    assert not is_probable_prime(1)
    assert not is_probable_prime(561)  # Carmichael
    assert is_probable_prime(2 ** 61 - 1)


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []


def test_factor_basic():
    # factors the absolute value; callers track the sign themselves
    assert factor(1) == {}
    assert factor(-12) == {2: 2, 3: 1}
    assert factor(2450) == {2: 1, 5: 2, 7: 2}
    assert factor(2 ** 10 * 3 ** 4) == {2: 10, 3: 4}


def test_factor_incomplete():
    # 2^80 + 1 has no prime factor below 1000, so with that trial bound
    # the cofactor must come back unfactored.
    got = factor(2 ** 80 + 1, trial_bound=1000)
    assert isinstance(got, Incomplete)
    assert got.cofactor > 1
    assert not is_probable_prime(got.cofactor)
    rebuilt = got.cofactor
    for p, e in got.factors.items():
        rebuilt *= p ** e
    assert rebuilt == 2 ** 80 + 1


@given(st.integers(min_value=2, max_value=10 ** 6))
def test_factor_multiplies_back(n):
    fac = factor(n)
    prod = 1
    for p, e in fac.items():
        assert is_probable_prime(p)
        prod *= p ** e
    assert prod == n


@given(st.integers(min_value=-1000, max_value=1000))
def test_is_square_matches_naive(n):
    assert is_square(n) == naive_is_square(n)


@given(st.integers(min_value=-50, max_value=50))
def test_recognises_perfect_powers(n):
    assert is_square(n * n)
    assert is_cube(n ** 3)
    assert is_fourth_power(n ** 4)
    if n not in (-1, 0, 1):
        assert not is_cube(n ** 3 + 1) or n ** 3 + 1 in (0, 1, -1)


def test_powers_on_fractions():
    assert is_square(Fraction(9, 16))
    assert not is_square(Fraction(9, 17))
    assert is_cube(Fraction(-27, 8))
    assert not is_cube(Fraction(27, 10))
    assert is_fourth_power(Fraction(16, 81))
    assert not is_square(Fraction(-9, 16))


def test_legendre_by_enumeration():
    for p in (3, 5, 7, 11, 13, 17):
        sq = squares_mod(p)
        for a in range(1, p):
            expected = 1 if a in sq else -1
            assert legendre(a, p) == expected
        assert legendre(0, p) == 0
        assert legendre(p, p) == 0


def test_legendre_rational_arguments():
    # (1/2 | 7) agrees with (2|7)^-1 = (2|7) since values are +-1.
    assert legendre(Fraction(1, 2), 7) == legendre(2, 7)
    assert legendre(Fraction(-3, 5), 7) == legendre(-3, 7) * legendre(5, 7)
    with pytest.raises(ValueError):
        legendre(Fraction(1, 7), 7)
    with pytest.raises(ValueError):
        legendre(1, 4)


@given(
    st.integers(min_value=-200, max_value=200),
    st.integers(min_value=-200, max_value=200),
    st.sampled_from([3, 5, 7, 11, 13, 17, 19]),
)
def test_legendre_multiplicative(a, b, p):
    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_squarefree_kernel():
    assert squarefree_kernel(1) == 1
    assert squarefree_kernel(-1) == -1
    assert squarefree_kernel(12) == 3
    assert squarefree_kernel(-75) == -3
    assert squarefree_kernel(2 ** 19 * 5 ** 8 * 7 ** 4) == 2


@given(st.integers(min_value=1, max_value=10 ** 5))
def test_squarefree_kernel_structure(n):
    k = squarefree_kernel(n)
    assert k > 0
    assert n % k == 0
    assert is_square(n // k)
    for p, e in factor(k).items():
        assert e == 1
