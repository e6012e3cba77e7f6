"""Exact binomial services against independent oracles."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jtensor.binomial import (
    IntegralityError,
    binom,
    binom_mod,
    binom_unit_mod,
    binom_valuation,
    binomial_matrix_det,
    binomial_matrix_det_mod,
    digit_sum,
    is_prime,
)

PRIMES = (2, 3, 5, 7, 11, 13)


def falling_product(n: int, k: int) -> int:
    # independent oracle: prod_{t<k} (n - t) / k!
    num = 1
    for t in range(k):
        num *= n - t
    q, r = divmod(num, math.factorial(k))
    assert r == 0
    return q


def exact_valuation(x: int, p: int) -> int:
    assert x != 0
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def test_binom_frozen_values():
    assert binom(15, 7) == falling_product(15, 7) == 6435
    assert binom(0, 0) == 1
    assert binom(5, 9) == 0
    assert binom(5, -1) == 0
    with pytest.raises(ValueError):
        binom(-1, 0)


@given(st.integers(0, 120), st.integers(-5, 125))
def test_binom_pascal_and_symmetry(n, k):
    assert binom(n + 1, k) == binom(n, k) + binom(n, k - 1)
    if 0 <= k <= n:
        assert binom(n, k) == binom(n, n - k)


@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from(PRIMES))
def test_binom_mod_matches_exact(n, k, p):
    assert binom_mod(n, k, p) == binom(n, k) % p


@given(st.integers(0, 300), st.integers(0, 300), st.sampled_from(PRIMES))
def test_valuation_and_unit_reconstruct(n, k, p):
    if k > n:
        return
    c = binom(n, k)
    v = binom_valuation(n, k, p)
    assert v == exact_valuation(c, p)
    v2, u = binom_unit_mod(n, k, p)
    assert v2 == v
    assert u == (c // p**v) % p


def test_digit_sum():
    assert digit_sum(0, 7) == 0
    assert digit_sum(15, 7) == 3
    assert digit_sum(2**10 - 1, 2) == 10


def test_is_prime():
    known = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for n in range(2, 32):
        assert is_prime(n) == (n in known)
    assert not is_prime(1)
    assert not is_prime(0)
    assert is_prime(2**31 - 1)
    assert not is_prime(2**31 - 3)


def naive_banded_det(a: int, b: int, k: int) -> int:
    # independent oracle: Leibniz expansion of the k x k matrix C(a, b + j - i)
    import itertools

    total = 0
    for perm in itertools.permutations(range(k)):
        sign = 1
        for x in range(k):
            for y in range(x + 1, k):
                if perm[x] > perm[y]:
                    sign = -sign
        prod = 1
        for i in range(k):
            prod *= binom(a, b + perm[i] - i)
        total += sign * prod
    return total


def test_banded_det_matches_leibniz_oracle():
    for a in range(0, 9):
        for b in range(0, 9):
            for k in range(1, 5):
                assert binomial_matrix_det(a, b, k) == naive_banded_det(a, b, k)


def test_banded_det_integral_full_range():
    for a in range(0, 31):
        for b in range(0, 31):
            for k in (1, 2, 3, 5, 8, 12):
                binomial_matrix_det(a, b, k)  # raises IntegralityError if fractional


def test_banded_det_mod_matches_exact():
    for a in range(0, 31, 3):
        for b in range(0, 31, 3):
            for k in (1, 2, 5, 9, 12):
                d = binomial_matrix_det(a, b, k)
                for p in PRIMES:
                    v, u = binomial_matrix_det_mod(a, b, k, p)
                    if d == 0:
                        assert v == math.inf and u == 0
                    else:
                        assert v == exact_valuation(d, p)
                        assert u == (d // p**v) % p


def test_banded_det_trivial_cases():
    assert binomial_matrix_det(9, 0, 4) == 1
    assert binomial_matrix_det_mod(9, 0, 4, 3) == (0, 1)
    v, _ = binomial_matrix_det_mod(2, 1, 1, 2)
    assert v == 1  # C(2, 1) = 2
    with pytest.raises(ValueError):
        binomial_matrix_det(-1, 0, 1)
    with pytest.raises(ValueError):
        binomial_matrix_det(3, 3, 0)


def test_banded_det_fraction_route_agrees():
    # same product accumulated the slow way, kept as an explicit cross-check
    for a, b, k in ((15, 7, 5), (12, 4, 7), (20, 10, 6)):
        d = Fraction(1)
        for t in range(k):
            d *= Fraction(binom(a + t, b), binom(b + t, b))
        assert d == binomial_matrix_det(a, b, k)


@settings(max_examples=60)
@given(st.integers(0, 40), st.integers(0, 40), st.integers(1, 8), st.sampled_from(PRIMES))
def test_banded_det_mod_random(a, b, k, p):
    d = binomial_matrix_det(a, b, k)
    v, u = binomial_matrix_det_mod(a, b, k, p)
    if d == 0:
        assert u == 0
    else:
        assert v == exact_valuation(d, p) and u == (d // p**v) % p
