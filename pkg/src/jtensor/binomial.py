"""Binomial coefficient services: exact values, mod-p values, p-adic data.

Everything here is exact. Big integers are plain Python ints, rationals are
fractions.Fraction. The mod-p routines (digit-by-digit value, carry-count
valuation, unit part) never build the big integer they describe.
"""

from __future__ import annotations

import math
from fractions import Fraction


class IntegralityError(ArithmeticError):
    """A quantity that is integral by construction came out fractional."""


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _SMALL_PRIMES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def binom(n: int, k: int) -> int:
    """C(n, k) exactly, 0 outside 0 <= k <= n. Requires n >= 0."""
    if n < 0:
        raise ValueError("binom requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def binom_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas digits; p must be prime."""
    if n < 0:
        raise ValueError("binom_mod requires n >= 0")
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        out = out * math.comb(nd, kd) % p
        n //= p
        k //= p
    return out


def digit_sum(n: int, p: int) -> int:
    """Sum of the base-p digits of n >= 0."""
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def binom_valuation(n: int, k: int, p: int) -> int:
    """v_p(C(n, k)) as the number of base-p carries in k + (n - k)."""
    if not 0 <= k <= n:
        raise ValueError("binom_valuation requires 0 <= k <= n")
    return (digit_sum(k, p) + digit_sum(n - k, p) - digit_sum(n, p)) // (p - 1)


def _fact_mod(d: int, p: int) -> int:
    out = 1
    for t in range(2, d + 1):
        out = out * t % p
    return out


def binom_unit_mod(n: int, k: int, p: int) -> tuple[int, int]:
    """(v, u) with C(n, k) = p^v * U and u = U mod p, via digit factorials.

    Uses the classical congruence U = (-1)^v * prod_j n_j! / (k_j! r_j!)
    mod p over the base-p digits of n, k and r = n - k.
    """
    if not 0 <= k <= n:
        raise ValueError("binom_unit_mod requires 0 <= k <= n")
    v = binom_valuation(n, k, p)
    r = n - k
    u = 1
    while n or k or r:
        u = u * _fact_mod(n % p, p) % p
        u = u * pow(_fact_mod(k % p, p) * _fact_mod(r % p, p) % p, -1, p) % p
        n //= p
        k //= p
        r //= p
    if v % 2:
        u = (p - u) % p
    return v, u


def binomial_matrix_det(a: int, b: int, k: int) -> int:
    """Exact determinant of the k x k matrix with (i, j) entry C(a, b + j - i).

    Closed form: prod_{t=0}^{k-1} C(a + t, b) / C(b + t, b). The product is
    always an integer; a fractional result raises IntegralityError.
    """
    if a < 0 or b < 0 or k < 1:
        raise ValueError("binomial_matrix_det requires a, b >= 0 and k >= 1")
    d = Fraction(1)
    for t in range(k):
        d *= Fraction(binom(a + t, b), binom(b + t, b))
    if d.denominator != 1:
        raise IntegralityError(f"det for (a={a}, b={b}, k={k}) is not integral")
    return d.numerator


def binomial_matrix_det_mod(a: int, b: int, k: int, p: int) -> tuple[int | float, int]:
    """(valuation, unit) of the banded binomial determinant mod prime p.

    Computed factor by factor from digit data, without big integers. When
    b > a the determinant is exactly 0 and (inf, 0) is returned.
    """
    if a < 0 or b < 0 or k < 1:
        raise ValueError("binomial_matrix_det_mod requires a, b >= 0 and k >= 1")
    if b > a:
        return math.inf, 0
    v, u = 0, 1
    for t in range(k):
        v1, u1 = binom_unit_mod(a + t, b, p)
        v2, u2 = binom_unit_mod(b + t, b, p)
        v += v1 - v2
        u = u * u1 % p * pow(u2, -1, p) % p
    if v < 0:
        raise IntegralityError(f"negative valuation for (a={a}, b={b}, k={k}, p={p})")
    return v, u
