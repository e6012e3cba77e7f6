"""Built-in smoke test against two frozen reference instances.

The expected values below were computed once, cross-checked through both the
closed-form route and Gaussian elimination, and frozen. Every selfcheck run
re-derives them from scratch; any drift in any module fails the gate.
"""

from __future__ import annotations

from .decomp import decompose, decomposition_from_rank_profile, leading_endpoints
from .generators import build_generators, closed_form_inverse
from .tensorspace import Params, socle_vector, square_power_matrix
from .verify import verify_all

BIG = Params(7, 12, 13)
SMALL = Params(5, 6, 9)

BIG_LAMBDA = (21, 21, 21, 21, 16, 14, 12, 7, 7, 7, 7, 2)
BIG_ENDPOINTS = (4, 5, 6, 7, 11, 12)

INV_K5 = (
    (4, 3, 4, 3, 4),
    (0, 4, 3, 4, 3),
    (0, 0, 4, 3, 4),
    (0, 0, 0, 4, 3),
    (0, 0, 0, 0, 4),
)

INV_K11 = (
    (3, 6, 1, 4, 0, 1, 0, 4, 1, 6, 3),
    (1, 4, 0, 1, 0, 4, 1, 6, 3, 0, 6),
    (3, 5, 4, 6, 0, 6, 4, 5, 2, 3, 1),
    (6, 3, 1, 3, 0, 4, 6, 5, 5, 6, 4),
    (0, 0, 0, 0, 0, 1, 4, 6, 4, 1, 0),
    (0, 0, 0, 0, 0, 0, 1, 4, 6, 4, 1),
    (1, 4, 6, 4, 1, 0, 0, 0, 0, 0, 0),
    (4, 2, 3, 2, 4, 0, 0, 3, 6, 1, 4),
    (6, 3, 1, 3, 6, 0, 0, 1, 4, 0, 1),
    (4, 2, 3, 2, 4, 0, 0, 3, 5, 4, 6),
    (1, 4, 6, 4, 1, 0, 0, 6, 3, 1, 3),
)

GEN_Y5 = (6, 5, 5, 6, 4)
SOLVE_K11 = (1, 3, 3, 1, 0, 0, 0, 6, 4, 4, 6)
GEN_Y8 = (1, 0, 0, 0, 0, 0, 0, 6)
GEN_Y9 = (6, 0, 0, 0, 0, 0, 0, 1, 0)
GEN_Y10 = (1, 0, 0, 0, 0, 0, 0, 6, 0, 0)
GEN_Y11 = (6, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0)

SMALL_LAMBDA = (14, 10, 10, 10, 6, 4)
SMALL_ENDPOINTS = (1, 4, 5, 6)
SMALL_SOCLE = (1, 4, 3, 2, 5, 6)


def _checks():
    yield "dimensions 7 | 12x13", lambda: decompose(BIG).dims == BIG_LAMBDA
    yield "endpoints 7 | 12x13", lambda: leading_endpoints(BIG) == BIG_ENDPOINTS

    def inv_pair(k, frozen):
        closed = closed_form_inverse(BIG, k).inverse_matrix()
        gauss = square_power_matrix(BIG, k).inv()
        want = [list(r) for r in frozen]
        return closed.a.tolist() == want and gauss.a.tolist() == want

    yield "closed-form and elimination inverse, k=5", lambda: inv_pair(5, INV_K5)
    yield "closed-form and elimination inverse, k=11", lambda: inv_pair(11, INV_K11)

    def gen_coeffs():
        by_index = {g.index: g.vector.coeffs for g in build_generators(BIG)}
        return (
            by_index[5] == GEN_Y5
            and by_index[8] == GEN_Y8
            and by_index[9] == GEN_Y9
            and by_index[10] == GEN_Y10
            and by_index[11] == GEN_Y11
        )

    yield "frozen generator coefficients 7 | 12x13", gen_coeffs

    def solve11():
        inv = closed_form_inverse(BIG, 11).inverse_matrix()
        return inv.apply(socle_vector(BIG, 11).coeffs) == SOLVE_K11

    yield "square-system solution at k=11", solve11

    def verified(params):
        dec = decompose(params)
        report = verify_all(params, dec, build_generators(params, dec))
        return report.total_ok

    yield "full verification 7 | 12x13", lambda: verified(BIG)

    yield "dimensions 5 | 6x9", lambda: decompose(SMALL).dims == SMALL_LAMBDA
    yield "endpoints 5 | 6x9", lambda: leading_endpoints(SMALL) == SMALL_ENDPOINTS

    def socle_targets():
        gens = build_generators(SMALL)
        return tuple(g.socle_index for g in gens) == SMALL_SOCLE

    yield "socle targets 5 | 6x9", socle_targets
    yield "full verification 5 | 6x9", lambda: verified(SMALL)

    def oracle(params):
        return decomposition_from_rank_profile(params).dims == decompose(params).dims

    yield "rank-profile oracle 5 | 6x9", lambda: oracle(SMALL)
    yield "rank-profile oracle 7 | 12x13", lambda: oracle(BIG)


def run_selfcheck() -> list[tuple[str, bool]]:
    """Evaluate every reference check; a crash counts as a failure."""
    results = []
    for label, fn in _checks():
        try:
            ok = bool(fn())
        except Exception:
            ok = False
        results.append((label, ok))
    return results
