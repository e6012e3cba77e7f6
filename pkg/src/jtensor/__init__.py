"""Exact decomposition of V_m (x) V_n for modular cyclic groups.

Library surface: Params fixes an instance (prime p, block sizes m <= n),
decompose gives the summand dimensions, build_generators gives one explicit
generator per summand, verify_all certifies everything brute force in the
full m*n-dimensional model.
"""

__version__ = "0.1.0"

from .tensorspace import DiagVector, Params
from .decomp import (
    Block,
    Decomposition,
    SizeGuardExceeded,
    decompose,
    decomposition_from_endpoints,
    decomposition_from_rank_profile,
    leading_endpoints,
)
from .generators import Generator, build_generators
from .verify import VerifyReport, verify_all

__all__ = [
    "Block",
    "Decomposition",
    "DiagVector",
    "Generator",
    "Params",
    "SizeGuardExceeded",
    "VerifyReport",
    "__version__",
    "build_generators",
    "decompose",
    "decomposition_from_endpoints",
    "decomposition_from_rank_profile",
    "leading_endpoints",
    "verify_all",
]
