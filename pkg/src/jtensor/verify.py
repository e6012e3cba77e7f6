"""Brute-force verification in the full m*n-dimensional standard model.

Nothing here trusts the diagonal-basis theory beyond the change of basis
itself: g - 1 is built directly from the two Jordan blocks, generators are
expanded to the standard tensor basis, and cyclic dimensions and the direct
sum condition are checked by rank computations. verify_all reports, it never
throws, so audits of wrong inputs stay informative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .binomial import binom_mod
from .decomp import Decomposition
from .gfp import FpMatrix, _matmul_mod
from .generators import Generator
from .tensorspace import DiagVector, Params, apply_nilpotent, basis_of, diag_dim, socle_vector

DEFAULT_SIZE_GUARD = 4096


def expand_to_standard(params: Params, v: DiagVector) -> np.ndarray:
    """Coefficients of v over the standard basis u_i (x) w_j, row-major.

    The diagonal basis vector v_{i,j} expands as sum_t C(n-i, t) u_i (x) w_{j-t}.
    """
    m, n, p = params.m, params.n, params.p
    out = np.zeros(m * n, dtype=np.int64)
    if diag_dim(params, v.k) == 0:
        return out
    pairs = basis_of(params, v.k)
    if len(v.coeffs) != len(pairs):
        raise ValueError(f"coefficient count {len(v.coeffs)} does not match D_{v.k}")
    for (i, j), c in zip(pairs, v.coeffs):
        if c == 0:
            continue
        for t in range(j):
            w = binom_mod(n - i, t, p)
            if w:
                pos = (i - 1) * n + (j - t - 1)
                out[pos] = (out[pos] + c * w) % p
    return out


def nilpotent_full_matrix(params: Params) -> FpMatrix:
    """Matrix of g - 1 on the standard basis, built as J_m (x) J_n - I."""
    jm = np.eye(params.m, dtype=np.int64) + np.eye(params.m, k=1, dtype=np.int64)
    jn = np.eye(params.n, dtype=np.int64) + np.eye(params.n, k=1, dtype=np.int64)
    full = np.kron(jm, jn) - np.eye(params.dim, dtype=np.int64)
    return FpMatrix(params.p, full)


def diagonal_basis_matrix(params: Params) -> FpMatrix:
    """Change of basis with columns expand_to_standard(v_{i,j}); must be invertible."""
    cols = []
    for k in range(1, params.m + params.n):
        for t in range(diag_dim(params, k)):
            e = [0] * diag_dim(params, k)
            e[t] = 1
            cols.append(expand_to_standard(params, DiagVector(k, tuple(e))))
    return FpMatrix(params.p, np.stack(cols, axis=1))


def _krylov(n_arr: np.ndarray, y: np.ndarray, p: int) -> list[np.ndarray]:
    vecs = []
    cur = y % p
    while cur.any():
        vecs.append(cur)
        cur = _matmul_mod(n_arr, cur, p)
    return vecs


def cyclic_dim(params: Params, y: np.ndarray) -> int:
    """Dimension of the cyclic submodule generated by a standard-basis vector.

    Rank of the Krylov matrix of g - 1 on y; for nilpotent operators this is
    the number of nonzero iterates.
    """
    vecs = _krylov(nilpotent_full_matrix(params).a, np.asarray(y, dtype=np.int64), params.p)
    if not vecs:
        return 0
    return FpMatrix(params.p, np.stack(vecs)).rank()


@dataclass(frozen=True)
class GeneratorCheck:
    """Outcome of the per-summand checks; cyclic_dim is None when skipped."""

    index: int
    dim: int
    socle_ok: bool
    nilpotent_ok: bool
    cyclic_dim: int | None


@dataclass(frozen=True)
class VerifyReport:
    """Aggregate verification outcome. total_ok means every check passed."""

    checks: tuple[GeneratorCheck, ...]
    direct_sum_rank: int | None
    full_model_skipped: bool
    notes: tuple[str, ...]
    total_ok: bool


def _diag_checks(params: Params, gen: Generator, lam: int) -> tuple[bool, bool]:
    expected_k = params.m + params.n - gen.index
    if gen.vector.k != expected_k or len(gen.vector.coeffs) != diag_dim(params, expected_k):
        return False, False
    target = params.m + params.n + 1 - gen.index - lam
    if not 1 <= target <= params.m:
        return False, False
    w = gen.vector
    for _ in range(lam - 1):
        w = apply_nilpotent(params, w)
    socle_ok = w == socle_vector(params, target)
    nil_ok = apply_nilpotent(params, w).is_zero
    return socle_ok, nil_ok


def verify_all(
    params: Params,
    decomposition: Decomposition,
    generators: tuple[Generator, ...],
    size_guard: int = DEFAULT_SIZE_GUARD,
) -> VerifyReport:
    """Check every generator and the global direct sum; never raises.

    Per generator: the socle equation (g-1)^(dim-1) y_i = x_target with
    target = m + n + 1 - i - dim, nilpotency one step further, and (in the
    full model) cyclic dimension equal to dim. Globally: the union of Krylov
    iterates must have rank m * n. Full-model checks are skipped above the
    size guard and the report says so.
    """
    m, p = params.m, params.p
    ok = True
    notes: list[str] = []
    dims = decomposition.dims
    if len(dims) != m:
        ok = False
        notes.append(f"expected {m} dimensions, got {len(dims)}")
    if sum(dims) != params.dim:
        ok = False
        notes.append(f"dimensions sum to {sum(dims)}, expected {params.dim}")
    if sorted(g.index for g in generators) != list(range(1, m + 1)):
        ok = False
        notes.append("generator indices are not exactly 1..m")

    skip_full = params.dim > size_guard
    if skip_full:
        notes.append(f"full-model checks skipped: m * n = {params.dim} > guard {size_guard}")
        n_arr = None
    else:
        n_arr = nilpotent_full_matrix(params).a

    checks: list[GeneratorCheck] = []
    krylov_stack: list[np.ndarray] = []
    for gen in generators:
        lam = dims[gen.index - 1] if 1 <= gen.index <= len(dims) else -1
        if lam < 1 or gen.dim != lam:
            checks.append(GeneratorCheck(gen.index, gen.dim, False, False, None))
            ok = False
            continue
        socle_ok, nil_ok = _diag_checks(params, gen, lam)
        cyc: int | None = None
        if n_arr is not None:
            try:
                y = expand_to_standard(params, gen.vector)
                vecs = _krylov(n_arr, y, p)
                krylov_stack.extend(vecs)
                cyc = FpMatrix(p, np.stack(vecs)).rank() if vecs else 0
            except ValueError:
                cyc = 0
            if cyc != lam:
                ok = False
        if not (socle_ok and nil_ok):
            ok = False
        checks.append(GeneratorCheck(gen.index, lam, socle_ok, nil_ok, cyc))

    direct_sum_rank: int | None = None
    if n_arr is not None:
        direct_sum_rank = FpMatrix(p, np.stack(krylov_stack)).rank() if krylov_stack else 0
        if direct_sum_rank != params.dim:
            ok = False

    return VerifyReport(tuple(checks), direct_sum_rank, skip_full, tuple(notes), ok)
