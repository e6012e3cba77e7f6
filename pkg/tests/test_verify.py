"""Full-model verification layer: expansion, Krylov ranks, audit reports."""

import dataclasses
import random

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from jtensor.decomp import Decomposition, decompose
from jtensor.generators import build_generators
from jtensor.selfcheck import BIG, SMALL
from jtensor.tensorspace import DiagVector, Params, apply_nilpotent, diag_dim, socle_vector
from jtensor.verify import (
    cyclic_dim,
    diagonal_basis_matrix,
    expand_to_standard,
    nilpotent_full_matrix,
    verify_all,
)

PRIMES = (2, 3, 5, 7)


@st.composite
def params_st(draw, max_n=8):
    p = draw(st.sampled_from(PRIMES))
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, n))
    return Params(p, m, n)


@st.composite
def diag_vector_st(draw):
    params = draw(params_st())
    k = draw(st.integers(1, params.m + params.n - 1))
    d = diag_dim(params, k)
    coeffs = tuple(draw(st.integers(0, params.p - 1)) for _ in range(d))
    return params, DiagVector(k, coeffs)


def test_expand_hand_case():
    params = Params(2, 2, 2)
    assert list(expand_to_standard(params, DiagVector(1, (1,)))) == [1, 0, 0, 0]
    # v_{1,2} = u_1 (x) w_2 + u_1 (x) w_1, v_{2,1} = u_2 (x) w_1
    assert list(expand_to_standard(params, DiagVector(2, (1, 0)))) == [1, 1, 0, 0]
    assert list(expand_to_standard(params, DiagVector(2, (0, 1)))) == [0, 0, 1, 0]


@settings(max_examples=80, deadline=None)
@given(diag_vector_st())
def test_expand_commutes_with_nilpotent(pv):
    # the change of basis intertwines the diagonal-model action with g - 1
    params, v = pv
    lhs = expand_to_standard(params, apply_nilpotent(params, v))
    n_arr = nilpotent_full_matrix(params).a
    rhs = (n_arr @ expand_to_standard(params, v)) % params.p
    assert np.array_equal(lhs, rhs)


@settings(max_examples=40, deadline=None)
@given(params_st(max_n=6))
def test_diagonal_basis_is_invertible(params):
    assert diagonal_basis_matrix(params).rank() == params.dim


def test_socle_vectors_are_cyclic_of_dim_one():
    params = Params(5, 3, 4)
    for i in range(1, params.m + 1):
        y = expand_to_standard(params, socle_vector(params, i))
        assert cyclic_dim(params, y) == 1


@settings(max_examples=30, deadline=None)
@given(params_st(max_n=7))
def test_verify_all_passes_on_correct_output(params):
    dec = decompose(params)
    report = verify_all(params, dec, build_generators(params, dec))
    assert report.total_ok
    assert not report.full_model_skipped
    assert report.direct_sum_rank == params.dim
    assert all(c.socle_ok and c.nilpotent_ok for c in report.checks)
    assert [c.cyclic_dim for c in report.checks] == list(dec.dims)


def test_verify_all_passes_on_reference_instances():
    for params in (BIG, SMALL):
        dec = decompose(params)
        report = verify_all(params, dec, build_generators(params, dec))
        assert report.total_ok and report.direct_sum_rank == params.dim


def _mutated(gen, pos, p):
    coeffs = list(gen.vector.coeffs)
    coeffs[pos] = (coeffs[pos] + 1) % p
    return dataclasses.replace(gen, vector=DiagVector(gen.vector.k, tuple(coeffs)))


def test_single_coefficient_mutations_are_caught():
    # every coefficient position on the small instance, a sample on the big one
    for params, sample in ((SMALL, None), (BIG, 15)):
        dec = decompose(params)
        gens = build_generators(params, dec)
        spots = [(gi, pos) for gi, g in enumerate(gens) for pos in range(len(g.vector.coeffs))]
        if sample is not None:
            spots = random.Random(0).sample(spots, sample)
        for gi, pos in spots:
            bad = list(gens)
            bad[gi] = _mutated(gens[gi], pos, params.p)
            assert not verify_all(params, dec, tuple(bad)).total_ok


def test_wrong_dimension_vector_is_caught():
    params = SMALL
    dec = decompose(params)
    gens = build_generators(params, dec)
    dims = list(dec.dims)
    dims[0] += 1
    dims[1] -= 1
    report = verify_all(params, Decomposition(tuple(dims), dec.blocks), gens)
    assert not report.total_ok


def test_size_guard_skips_full_model_checks():
    params = SMALL
    dec = decompose(params)
    report = verify_all(params, dec, build_generators(params, dec), size_guard=1)
    assert report.total_ok
    assert report.full_model_skipped
    assert report.direct_sum_rank is None
    assert all(c.cyclic_dim is None for c in report.checks)
    assert any("skipped" in note for note in report.notes)


def test_verify_all_never_raises_on_garbage():
    params = Params(3, 2, 3)
    dec = decompose(params)
    gens = build_generators(params, dec)
    # wrong diagonal index, wrong coefficient count, missing and duplicated indices
    bad_vec = dataclasses.replace(gens[0], vector=DiagVector(1, (1,)))
    report = verify_all(params, dec, (bad_vec, gens[1]))
    assert not report.total_ok
    report = verify_all(params, dec, (gens[0],))
    assert not report.total_ok and "1..m" in " ".join(report.notes)
    report = verify_all(params, dec, (gens[0], gens[0]))
    assert not report.total_ok
    report = verify_all(params, Decomposition((6,), dec.blocks), gens)
    assert not report.total_ok
