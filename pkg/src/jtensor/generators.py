"""Explicit generators for the indecomposable summands of V_m (x) V_n.

One generator y_i per summand, i = 1..m, each given on a single diagonal. A
block [a+1, b] of equal dimensions gets its generators in three ways:

  singleton (a + 1 = b): solve the square banded system directly,
  leader (a + 1 < b): retract the singleton-style solution up to D_{m+n-a-1},
  shifted (a + 2 <= i <= b): signed row shifts of the leader.

The square systems are inverted by a closed-form adjugate with proven-integral
entries, evaluated over exact rationals and reduced mod p at the end. An
all-mod-p evaluation is impossible in general because the formula divides by
binomials that can vanish mod p. Gaussian elimination stays available as an
independent route and is never consulted here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .binomial import IntegralityError, binom, binomial_matrix_det, binomial_matrix_det_mod
from .gfp import FpMatrix
from .tensorspace import (
    DiagVector,
    Params,
    retraction_matrix,
    shift_row,
    socle_vector,
    square_power_matrix,
)
from .decomp import Decomposition, decompose

CASE_SINGLETON = "leading-singleton"
CASE_LEADER = "leading-block"
CASE_SHIFTED = "shifted"


def _adjugate_entry(d: Fraction, a: int, b: int, k: int, i: int, j: int) -> int:
    # integer accumulation; the single division at the end must be exact
    total = 0
    for ell in range(1, j + 1):
        c1 = binom(a + k - 1, ell - 1)
        c2 = 1 if ell == j else binom(a + j - ell - 1, j - ell)
        if c1 == 0 or c2 == 0:
            continue
        prod = 1
        for r in range(1, k + 1):
            if r != i:
                prod *= ell - b - r
        term = c1 * c2 * prod
        total += term if (ell + j) % 2 == 0 else -term
    den = 1
    for r in range(1, k + 1):
        if r != i:
            den *= i - r
    z = d * Fraction(total, binom(a + k - 1, b + i - 1) * den)
    if z.denominator != 1:
        raise IntegralityError(f"adjugate entry ({i}, {j}) for (a={a}, b={b}, k={k}) not integral")
    return z.numerator


def adjugate_entry(a: int, b: int, k: int, i: int, j: int) -> int:
    """Exact (i, j) entry of the adjugate of the k x k matrix C(a, b + j - i).

    Closed form, no elimination. Requires b <= a so the formula's binomial
    denominators are nonzero; production parameters always satisfy this.
    """
    if not (0 <= b <= a and 1 <= i <= k and 1 <= j <= k):
        raise ValueError("adjugate_entry requires 0 <= b <= a and 1 <= i, j <= k")
    return _adjugate_entry(Fraction(binomial_matrix_det(a, b, k)), a, b, k, i, j)


def adjugate_matrix(a: int, b: int, k: int) -> list[list[int]]:
    """Exact adjugate as nested lists, sharing one determinant computation."""
    if not 0 <= b <= a:
        raise ValueError("adjugate_matrix requires 0 <= b <= a")
    d = Fraction(binomial_matrix_det(a, b, k))
    return [[_adjugate_entry(d, a, b, k, i, j) for j in range(1, k + 1)] for i in range(1, k + 1)]


@dataclass(frozen=True)
class ClosedFormInverse:
    """det unit and adjugate mod p of one square banded binomial matrix."""

    k: int
    det_unit: int
    adjugate: FpMatrix

    def inverse_matrix(self) -> FpMatrix:
        return self.adjugate.scale(pow(self.det_unit, -1, self.adjugate.p))


def closed_form_inverse(params: Params, k: int) -> ClosedFormInverse:
    """Inverse data for the square system at endpoint k, without elimination.

    Rejects k whose determinant vanishes mod p (k is then not an endpoint).
    """
    if not 1 <= k <= params.m:
        raise ValueError(f"k = {k} out of range 1..{params.m}")
    a = params.m + params.n - 2 * k
    b = params.m - k
    v, unit = binomial_matrix_det_mod(a, b, k, params.p)
    if v != 0:
        raise ValueError(f"determinant at k = {k} vanishes mod {params.p} (valuation {v})")
    adj = FpMatrix(params.p, adjugate_matrix(a, b, k))
    return ClosedFormInverse(k, unit, adj)


def singleton_generator(params: Params, b: int) -> DiagVector:
    """Generator on D_{m+n-b} hitting the socle x_b under the longest power."""
    inv = closed_form_inverse(params, b).inverse_matrix()
    coeffs = inv.apply(socle_vector(params, b).coeffs)
    return DiagVector(params.m + params.n - b, coeffs)


def leader_generator(params: Params, a: int, b: int) -> DiagVector:
    """Generator on D_{m+n-a-1} for the first index of a block [a+1, b]."""
    w = singleton_generator(params, b)
    coeffs = retraction_matrix(params, a, b).apply(w.coeffs)
    return DiagVector(params.m + params.n - a - 1, coeffs)


def shifted_generator(params: Params, leader: DiagVector, a: int, i: int) -> DiagVector:
    """Generator for index i in a + 2 .. b: signed leader prefix, zero-padded.

    Equal to (-1)^(i-a-1) h1^(i-a-1) applied to the leader, which on these
    diagonals just prepends the leader coefficients and pads with zeros.
    """
    if i < a + 2:
        raise ValueError("shifted_generator requires i >= a + 2")
    if len(leader.coeffs) != a + 1:
        raise ValueError("leader has wrong dimension for this block")
    sign = 1 if (i - a - 1) % 2 == 0 else params.p - 1
    coeffs = tuple(sign * c % params.p for c in leader.coeffs) + (0,) * (i - a - 1)
    return DiagVector(params.m + params.n - i, coeffs)


@dataclass(frozen=True)
class Generator:
    """One summand generator: its index, vector, dimension, socle target, case."""

    index: int
    vector: DiagVector
    dim: int
    socle_index: int
    case: str


def build_generators(params: Params, decomposition: Decomposition | None = None) -> tuple[Generator, ...]:
    """Generators y_1 .. y_m for all summands, block by block.

    Index i gets dimension dims[i-1] and socle target a + b + 1 - i within
    its block; the socle targets are a permutation of 1..m.
    """
    dec = decomposition if decomposition is not None else decompose(params)
    out: list[Generator] = []
    for blk in dec.blocks:
        a, b = blk.a, blk.b
        if a + 1 == b:
            vec = singleton_generator(params, b)
            out.append(Generator(b, vec, blk.dim, a + 1, CASE_SINGLETON))
            continue
        leader = leader_generator(params, a, b)
        out.append(Generator(a + 1, leader, blk.dim, b, CASE_LEADER))
        for i in range(a + 2, b + 1):
            vec = shifted_generator(params, leader, a, i)
            out.append(Generator(i, vec, blk.dim, a + b + 1 - i, CASE_SHIFTED))
    out.sort(key=lambda g: g.index)
    return tuple(out)


def check_shift_relation(params: Params, gens: tuple[Generator, ...]) -> bool:
    """h1 sends y_i to -y_{i+1} inside every non-singleton block."""
    by_index = {g.index: g for g in gens}
    for g in gens:
        if g.case == CASE_SINGLETON:
            continue
        nxt = by_index.get(g.index + 1)
        if nxt is None or nxt.case != CASE_SHIFTED:
            continue
        shifted = shift_row(params, g.vector)
        neg = DiagVector(nxt.vector.k, tuple((params.p - c) % params.p for c in nxt.vector.coeffs))
        if shifted != neg:
            return False
    return True


__all__ = [
    "CASE_SINGLETON",
    "CASE_LEADER",
    "CASE_SHIFTED",
    "ClosedFormInverse",
    "Generator",
    "adjugate_entry",
    "adjugate_matrix",
    "build_generators",
    "check_shift_relation",
    "closed_form_inverse",
    "leader_generator",
    "shifted_generator",
    "singleton_generator",
]
