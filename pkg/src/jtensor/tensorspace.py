"""Diagonal-basis model of V_m (x) V_n for a cyclic p-group generator g.

V_k is the k-dimensional indecomposable on which g acts as a single Jordan
block. The tensor product splits as a vector space into diagonals D_k spanned
by the twisted products v_{i,j} with i + j = k + 1, where 1 <= i <= m indexes
the V_m factor and 1 <= j <= n the V_n factor. g - 1 maps D_k into D_{k-1} by

    (g - 1) v_{i,j} = v_{i-1,j} + v_{i,j-1}    (terms off the grid vanish),

so powers of g - 1 have banded binomial matrices between diagonals. All
vectors here are coefficient tuples over the ordered basis of one diagonal,
rows ascending (basis_of). Coefficients are canonical residues mod p.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .binomial import binom_mod, is_prime
from .gfp import FpMatrix


@dataclass(frozen=True)
class Params:
    """Problem instance: prime p and Jordan block sizes 1 <= m <= n."""

    p: int
    m: int
    n: int

    def __post_init__(self) -> None:
        if not 2 <= self.p < 2**31:
            raise ValueError("p must satisfy 2 <= p < 2^31")
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if not 1 <= self.m <= self.n:
            raise ValueError("sizes must satisfy 1 <= m <= n")

    @property
    def dim(self) -> int:
        return self.m * self.n

    @property
    def min_group_exponent(self) -> int:
        """Smallest a with p^a >= n, the group order needed for V_n to exist."""
        a, q = 1, self.p
        while q < self.n:
            a += 1
            q *= self.p
        return a


@dataclass(frozen=True)
class DiagVector:
    """Vector supported on diagonal D_k, as coefficients over basis_of(k)."""

    k: int
    coeffs: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def diag_dim(params: Params, k: int) -> int:
    """Dimension of D_k; 0 outside 1 <= k <= m + n - 1."""
    if k < 1 or k > params.m + params.n - 1:
        return 0
    return min(k, params.m) - max(1, k + 1 - params.n) + 1


def basis_of(params: Params, k: int) -> tuple[tuple[int, int], ...]:
    """Ordered basis of D_k as (i, j) index pairs, i ascending."""
    if not 1 <= k <= params.m + params.n - 1:
        raise ValueError(f"diagonal index {k} out of range")
    lo = max(1, k + 1 - params.n)
    hi = min(k, params.m)
    return tuple((i, k + 1 - i) for i in range(lo, hi + 1))


def zero_vector(params: Params, k: int) -> DiagVector:
    return DiagVector(k, (0,) * diag_dim(params, k))


def socle_vector(params: Params, i: int) -> DiagVector:
    """The alternating-sign socle generator x_i on D_i, 1 <= i <= m."""
    if not 1 <= i <= params.m:
        raise ValueError(f"socle index {i} out of range 1..{params.m}")
    return DiagVector(i, tuple(1 if j % 2 == 0 else params.p - 1 for j in range(i)))


def vector_terms(params: Params, v: DiagVector) -> list[tuple[int, int, int]]:
    """Nonzero terms of v as (i, j, coefficient) triples in basis order."""
    if diag_dim(params, v.k) == 0:
        return []
    pairs = basis_of(params, v.k)
    if len(v.coeffs) != len(pairs):
        raise ValueError(f"coefficient count {len(v.coeffs)} does not match D_{v.k}")
    return [(i, j, c) for (i, j), c in zip(pairs, v.coeffs) if c]


def from_terms(params: Params, k: int, terms) -> DiagVector:
    """Build a DiagVector from (i, j, coefficient) triples on diagonal k."""
    pairs = basis_of(params, k)
    index = {pair: t for t, pair in enumerate(pairs)}
    coeffs = [0] * len(pairs)
    seen = set()
    for i, j, c in terms:
        if (i, j) not in index:
            raise ValueError(f"position ({i}, {j}) is not on diagonal {k}")
        if (i, j) in seen:
            raise ValueError(f"duplicate position ({i}, {j})")
        if not 0 <= c < params.p:
            raise ValueError(f"coefficient {c} out of range mod {params.p}")
        seen.add((i, j))
        coeffs[index[(i, j)]] = c
    return DiagVector(k, tuple(coeffs))


def power_matrix(params: Params, s: int, r: int) -> FpMatrix:
    """Matrix of (g - 1)^(s - r) from D_s to D_r over the ordered bases.

    The (i, j) entry is C(s - r, lo_s - lo_r + j - i) mod p, where lo_s and
    lo_r are the least row indices on the two diagonals.
    """
    top = params.m + params.n - 1
    if not 1 <= r < s <= top:
        raise ValueError(f"need 1 <= r < s <= {top}, got r={r}, s={s}")
    lo_s = max(1, s + 1 - params.n)
    lo_r = max(1, r + 1 - params.n)
    rows = diag_dim(params, r)
    cols = diag_dim(params, s)
    e = s - r
    off = lo_s - lo_r
    a = np.zeros((rows, cols), dtype=np.int64)
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            a[i - 1, j - 1] = binom_mod(e, off + j - i, params.p)
    return FpMatrix(params.p, a)


def square_power_matrix(params: Params, k: int) -> FpMatrix:
    """The k x k matrix of (g - 1)^(m+n-2k) from D_{m+n-k} to D_k, 1 <= k <= m.

    Its determinant mod p decides whether k is a block right-endpoint. For
    k = m = n the power is zero and the matrix is the identity.
    """
    if not 1 <= k <= params.m:
        raise ValueError(f"k = {k} out of range 1..{params.m}")
    if params.m + params.n - k == k:
        return FpMatrix.identity(params.p, k)
    return power_matrix(params, params.m + params.n - k, k)


def binomial_toeplitz(r: int, s: int, p: int) -> FpMatrix:
    """r x r upper triangular matrix with (i, j) entry C(s, j - i) mod p."""
    if r < 1 or s < 1:
        raise ValueError("binomial_toeplitz requires r, s >= 1")
    a = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        for j in range(i, r):
            a[i, j] = binom_mod(s, j - i, p)
    return FpMatrix(p, a)


def binomial_toeplitz_inverse(r: int, s: int, p: int) -> FpMatrix:
    """Inverse of binomial_toeplitz: (i, j) entry (-1)^(j-i) C(s-1+j-i, s-1)."""
    if r < 1 or s < 1:
        raise ValueError("binomial_toeplitz_inverse requires r, s >= 1")
    a = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        for j in range(i, r):
            c = binom_mod(s - 1 + j - i, s - 1, p)
            a[i, j] = c if (j - i) % 2 == 0 else (p - c) % p
    return FpMatrix(p, a)


def retraction_matrix(params: Params, a: int, b: int) -> FpMatrix:
    """Left inverse of (g - 1)^(b-a-1) from D_{m+n-a-1} to D_{m+n-b}.

    Shape (a+1) x b: zero columns followed by binomial_toeplitz_inverse of
    size a+1 with parameter b-a-1. Requires 0 <= a, a + 1 < b <= m.
    """
    if a < 0 or not a + 1 < b <= params.m:
        raise ValueError(f"need 0 <= a and a + 1 < b <= m, got a={a}, b={b}")
    out = np.zeros((a + 1, b), dtype=np.int64)
    out[:, b - a - 1 :] = binomial_toeplitz_inverse(a + 1, b - a - 1, params.p).a
    return FpMatrix(params.p, out)


def _push(params: Params, v: DiagVector, moves) -> DiagVector:
    k = v.k
    if diag_dim(params, k) == 0:
        return zero_vector(params, k - 1)
    pairs = basis_of(params, k)
    if len(v.coeffs) != len(pairs):
        raise ValueError(f"coefficient count {len(v.coeffs)} does not match D_{k}")
    if diag_dim(params, k - 1) == 0:
        return zero_vector(params, k - 1)
    lo = max(1, k - params.n)  # least row index on D_{k-1}
    out = [0] * diag_dim(params, k - 1)
    for (i, j), c in zip(pairs, v.coeffs):
        if c == 0:
            continue
        for di, dj in moves:
            ii, jj = i - di, j - dj
            if 1 <= ii <= params.m and 1 <= jj <= params.n:
                t = ii - lo
                out[t] = (out[t] + c) % params.p
    return DiagVector(k - 1, tuple(out))


def apply_nilpotent(params: Params, v: DiagVector) -> DiagVector:
    """Apply g - 1, mapping D_k to D_{k-1}."""
    return _push(params, v, ((1, 0), (0, 1)))


def shift_row(params: Params, v: DiagVector) -> DiagVector:
    """Apply the row shift h1: v_{i,j} -> v_{i-1,j}."""
    return _push(params, v, ((1, 0),))


def shift_col(params: Params, v: DiagVector) -> DiagVector:
    """Apply the column shift h2: v_{i,j} -> v_{i,j-1}, so g - 1 = h1 + h2."""
    return _push(params, v, ((0, 1),))
