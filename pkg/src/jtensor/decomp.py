"""Indecomposable decomposition of V_m (x) V_n as a multiset of dimensions.

Two independent routes produce the same answer. The production route reads
block right-endpoints off determinants of banded binomial matrices, via their
p-adic valuations, without any elimination. The oracle route computes the
Jordan type of the full nilpotent operator g - 1 from its rank profile.
"""

from __future__ import annotations

from dataclasses import dataclass

from .binomial import binomial_matrix_det_mod
from .tensorspace import Params


class SizeGuardExceeded(ValueError):
    """Full-model computation refused because m * n exceeds the size guard."""


@dataclass(frozen=True)
class Block:
    """Run of equal summand dimensions covering indices a+1 .. b."""

    a: int
    b: int
    dim: int


@dataclass(frozen=True)
class Decomposition:
    """Non-increasing summand dimensions and their constant-value runs."""

    dims: tuple[int, ...]
    blocks: tuple[Block, ...]


def leading_endpoints(params: Params) -> tuple[int, ...]:
    """All k in 1..m whose banded binomial determinant is nonzero mod p.

    These are exactly the block right-endpoints; m is always among them.
    """
    out = []
    for k in range(1, params.m + 1):
        a = params.m + params.n - 2 * k
        v, _ = binomial_matrix_det_mod(a, params.m - k, k, params.p)
        if v == 0:
            out.append(k)
    if not out or out[-1] != params.m:
        raise AssertionError("endpoint criterion lost the final endpoint m")
    return tuple(out)


def decomposition_from_endpoints(params: Params, endpoints) -> Decomposition:
    """Rebuild the dimension multiset from a right-endpoint set."""
    eps = tuple(endpoints)
    if not eps:
        raise ValueError("endpoint set is empty")
    if list(eps) != sorted(set(eps)) or eps[0] < 1 or eps[-1] != params.m:
        raise ValueError(f"endpoints must be strictly increasing in 1..m ending at m, got {eps}")
    blocks = []
    dims = []
    prev = 0
    for b in eps:
        dim = params.m + params.n - prev - b
        blocks.append(Block(prev, b, dim))
        dims.extend([dim] * (b - prev))
        prev = b
    if sum(dims) != params.dim:
        raise ValueError(f"endpoints {eps} sum to {sum(dims)}, expected {params.dim}")
    if any(dims[t] < dims[t + 1] for t in range(len(dims) - 1)):
        raise AssertionError("dimension list is not non-increasing")
    return Decomposition(tuple(dims), tuple(blocks))


def decompose(params: Params) -> Decomposition:
    """Decomposition of V_m (x) V_n over F_p, by the determinant criterion."""
    return decomposition_from_endpoints(params, leading_endpoints(params))


def _blocks_from_dims(dims: list[int]) -> tuple[Block, ...]:
    blocks = []
    start = 0
    while start < len(dims):
        end = start
        while end + 1 < len(dims) and dims[end + 1] == dims[start]:
            end += 1
        blocks.append(Block(start, end + 1, dims[start]))
        start = end + 1
    return tuple(blocks)


def decomposition_from_rank_profile(params: Params, size_guard: int = 4096) -> Decomposition:
    """Jordan type of g - 1 on the full m*n-dimensional module, from ranks.

    Independent oracle: the number of summands of dimension >= t equals
    rank (g-1)^(t-1) - rank (g-1)^t. Cost grows with (m*n)^3, hence the guard.
    """
    if params.dim > size_guard:
        raise SizeGuardExceeded(f"m * n = {params.dim} exceeds size guard {size_guard}")
    from .verify import nilpotent_full_matrix

    n_op = nilpotent_full_matrix(params)
    ranks = [params.dim]
    power = n_op
    while True:
        r = power.rank()
        ranks.append(r)
        if r == 0:
            break
        power = power.mul(n_op)
    dims: list[int] = []
    for t in range(1, len(ranks)):
        at_least_t = ranks[t - 1] - ranks[t]
        at_least_next = ranks[t] - ranks[t + 1] if t + 1 < len(ranks) else 0
        dims.extend([t] * (at_least_t - at_least_next))
    dims.sort(reverse=True)
    if sum(dims) != params.dim:
        raise AssertionError("rank profile does not partition the dimension")
    return Decomposition(tuple(dims), _blocks_from_dims(dims))
