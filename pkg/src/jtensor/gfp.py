"""Dense exact linear algebra over the prime field F_p.

Matrices carry their modulus and are immutable after construction. Storage is
int64 with entries reduced to [0, p); every product is chunked so that
intermediate sums never overflow for any p below 2^31. Elimination uses plain
Gaussian elimination with the first nonzero pivot in each column, which is
exact over a field, so there is no pivoting strategy to tune.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

_INT64_MAX = 2**63 - 1


class SingularMatrixError(ValueError):
    """Inverse requested for a matrix without one."""


class NoSolutionError(ValueError):
    """Linear system is inconsistent."""


class NonUniqueSolutionError(ValueError):
    """Linear system is consistent but underdetermined."""


def _matmul_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    # chunk the inner dimension so each partial sum stays below 2^63
    inner = x.shape[-1]
    chunk = max(1, _INT64_MAX // max(1, (p - 1) ** 2))
    if inner <= chunk:
        return (x @ y) % p
    out = np.zeros(x.shape[:-1] + y.shape[1:], dtype=np.int64)
    for lo in range(0, inner, chunk):
        out = (out + x[..., lo : lo + chunk] @ y[lo : lo + chunk]) % p
    return out


def _echelon(a: np.ndarray, p: int, pivot_cols: int, reduced: bool) -> tuple[int, list[int], list[int], int]:
    """In-place elimination; returns (rank, pivot columns, pivot values, swaps)."""
    rows = a.shape[0]
    r = 0
    swaps = 0
    piv_cols: list[int] = []
    piv_vals: list[int] = []
    for c in range(pivot_cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
            swaps += 1
        pval = int(a[r, c])
        piv_cols.append(c)
        piv_vals.append(pval)
        a[r] = a[r] * pow(pval, -1, p) % p
        if reduced:
            f = a[:, c].copy()
            f[r] = 0
        else:
            f = np.zeros(rows, dtype=np.int64)
            f[r + 1 :] = a[r + 1 :, c]
        a[:] = (a - f[:, None] * a[r][None, :]) % p
        r += 1
    return r, piv_cols, piv_vals, swaps


class FpMatrix:
    """Immutable dense matrix over F_p."""

    __slots__ = ("p", "a")

    def __init__(self, p: int, entries) -> None:
        if not 2 <= p < 2**31:
            raise ValueError("p must satisfy 2 <= p < 2^31")
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("FpMatrix entries must be two-dimensional")
        arr = arr % p
        arr.flags.writeable = False
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "a", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FpMatrix is immutable")

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.a.shape == other.a.shape and bool(np.array_equal(self.a, other.a))

    __hash__ = None

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.a.shape})"

    def _check_mod(self, other: "FpMatrix") -> None:
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")

    def mul(self, other: "FpMatrix") -> "FpMatrix":
        """Matrix product over F_p."""
        self._check_mod(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        return FpMatrix(self.p, _matmul_mod(self.a, other.a, self.p))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        return self.mul(other)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.p, self.a * (c % self.p))

    def apply(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product; returns canonical residues."""
        vec = np.asarray(list(coeffs), dtype=np.int64) % self.p
        if vec.shape != (self.cols,):
            raise ValueError(f"vector length {vec.shape} does not match {self.cols} columns")
        out = _matmul_mod(self.a, vec, self.p)
        return tuple(int(x) for x in out)

    def rank(self) -> int:
        work = self.a.copy()
        r, _, _, _ = _echelon(work, self.p, self.cols, reduced=False)
        return r

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("det requires a square matrix")
        work = self.a.copy()
        r, _, piv_vals, swaps = _echelon(work, self.p, self.cols, reduced=False)
        if r < self.cols:
            return 0
        d = 1
        for v in piv_vals:
            d = d * v % self.p
        if swaps % 2:
            d = (self.p - d) % self.p
        return d

    def inv(self) -> "FpMatrix":
        if self.rows != self.cols:
            raise ValueError("inv requires a square matrix")
        n = self.cols
        aug = np.hstack([self.a, np.eye(n, dtype=np.int64)])
        r, _, _, _ = _echelon(aug, self.p, n, reduced=True)
        if r < n:
            raise SingularMatrixError(f"matrix of rank {r} < {n} has no inverse")
        return FpMatrix(self.p, aug[:, n:])

    def solve(self, rhs: Sequence[int]) -> tuple[int, ...]:
        """Unique solution of A x = rhs, else NoSolutionError / NonUniqueSolutionError."""
        vec = np.asarray(list(rhs), dtype=np.int64) % self.p
        if vec.shape != (self.rows,):
            raise ValueError(f"rhs length {vec.shape} does not match {self.rows} rows")
        aug = np.hstack([self.a, vec[:, None]])
        r, piv_cols, _, _ = _echelon(aug, self.p, self.cols, reduced=True)
        if np.any(aug[r:, -1]):
            raise NoSolutionError("inconsistent system")
        if r < self.cols:
            raise NonUniqueSolutionError(f"solution space has dimension {self.cols - r}")
        x = np.zeros(self.cols, dtype=np.int64)
        for row, c in enumerate(piv_cols):
            x[c] = aug[row, -1]
        return tuple(int(v) for v in x)
