import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import block_matrix, expm_survival
from thermozeno.blocks import BlockIndex, build_block, survival_probability_block
from thermozeno.errors import CutoffOverflow, DimensionOverflow, DomainError
from thermozeno.model import ModelParams, Tolerances, validate
from thermozeno.multimode import (MultiBlockIndex, MultimodeSpec, build_multiblock,
                                  estimate_block_count, populations_multiblock, sparsity_pattern,
                                  survival_probability_multiblock, thermal_survival,
                                  thermal_survival_1xq)
from thermozeno.thermal import mode_weights, survival_curve, uniform_times


def resonant_spec(modes_12, modes_23, T=0.0):
    w3 = 0.0
    w2 = w3 + modes_23[0][0]
    return MultimodeSpec((w2 + modes_12[0][0], w2, w3), modes_12, modes_23, T)


@pytest.mark.parametrize("delta", [0.0, 0.8])
@pytest.mark.parametrize("n", [(0, 0), (3, 1), (7, 12)])
def test_single_mode_reduces_to_three_level(delta, n):
    mode = "detuned" if delta else "resonant"
    params = validate(ModelParams.from_frequencies(5.0, 1.5, 0.7, 1.9, delta), mode)
    spec = MultimodeSpec(params.omega_levels, [(5.0, 0.7)], [(1.5, 1.9)])
    multi = build_multiblock(spec, MultiBlockIndex((n[0],), (n[1],)))
    block = build_block(params, BlockIndex(*n))
    np.testing.assert_allclose(multi.matrix, block.matrix(), atol=1e-15)
    t = uniform_times(30, 301)
    np.testing.assert_allclose(survival_probability_multiblock(multi, t),
                               survival_probability_block(block, t), atol=1e-12)


def test_one_by_three_structure():
    spec = resonant_spec([(4.0, 1.2)], [(1.0, 0.3), (1.0, -0.5), (1.0, 0.9)])
    blk = build_multiblock(spec, MultiBlockIndex((2,), (0, 0, 0)))
    h = blk.matrix
    assert h.shape == (5, 5)
    assert h[0, 1] == pytest.approx(1.2 * math.sqrt(3))
    np.testing.assert_allclose(h[1, 2:], [0.3, -0.5, 0.9])
    np.testing.assert_allclose(h[0, 2:], 0.0)
    np.testing.assert_allclose(np.diag(h), 0.0, atol=1e-15)


@settings(max_examples=50, deadline=None)
@given(p=st.integers(1, 4), q=st.integers(1, 4), seed=st.integers(0, 2**31))
def test_dimension_and_sparsity(p, q, seed):
    rng = np.random.default_rng(seed)
    spec = MultimodeSpec((3.0, 1.0, 0.0),
                         [(float(f), float(g)) for f, g in rng.uniform(0.1, 5, (p, 2))],
                         [(float(f), float(g)) for f, g in rng.uniform(0.1, 5, (q, 2))])
    idx = MultiBlockIndex(tuple(rng.integers(0, 5, p)), tuple(rng.integers(0, 5, q)))
    blk = build_multiblock(spec, idx)
    assert blk.dim == spec.dim == 1 + p + p * q
    assert not np.any(blk.matrix[~sparsity_pattern(p, q)])
    np.testing.assert_array_equal(blk.matrix, blk.matrix.T)


def test_dimension_cap():
    spec = MultimodeSpec((2.0, 1.0, 0.0), [(1.0, 1.0)] * 10, [(1.0, 1.0)] * 10)
    with pytest.raises(DimensionOverflow):
        build_multiblock(spec, MultiBlockIndex((0,) * 10, (0,) * 10), max_dim=100)


def test_bright_mode_example():
    # beta = (3, 4), alpha = 1 -> collective coupling 5
    spec = resonant_spec([(3.0, 1.0)], [(1.0, 3.0), (1.0, 4.0)])
    blk = build_multiblock(spec, MultiBlockIndex((0,), (0, 0)))
    t = uniform_times(10, 500)
    ref = expm_survival(block_matrix(1.0, 5.0), t)
    np.testing.assert_allclose(survival_probability_multiblock(blk, t), ref, atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(q=st.integers(2, 6), m=st.integers(0, 6), n=st.integers(0, 6), seed=st.integers(0, 2**31))
def test_bright_mode_equivalence(q, m, n, seed):
    rng = np.random.default_rng(seed)
    g23 = rng.uniform(-2, 2, q)
    g12 = float(rng.uniform(0.1, 2))
    spec = resonant_spec([(2.0, g12)], [(0.7, float(g)) for g in g23])
    blk = build_multiblock(spec, MultiBlockIndex((n,), (m,) * q))
    b_eff = math.sqrt(np.sum(g23 ** 2) * (m + 1))
    t = uniform_times(20, 200)
    ref = expm_survival(block_matrix(g12 * math.sqrt(n + 1), b_eff), t)
    np.testing.assert_allclose(survival_probability_multiblock(blk, t), ref, atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(p=st.integers(1, 3), q=st.integers(1, 3), seed=st.integers(0, 2**31))
def test_unitarity(p, q, seed):
    rng = np.random.default_rng(seed)
    spec = MultimodeSpec(tuple(np.sort(rng.uniform(0, 10, 3))[::-1]),
                         [(float(f), float(g)) for f, g in rng.uniform(0.1, 5, (p, 2))],
                         [(float(f), float(g)) for f, g in rng.uniform(0.1, 5, (q, 2))])
    blk = build_multiblock(spec, MultiBlockIndex(tuple(rng.integers(0, 9, p)),
                                                 tuple(rng.integers(0, 9, q))))
    pops = populations_multiblock(blk, uniform_times(50, 300))
    np.testing.assert_allclose(pops.sum(axis=1), 1.0, atol=1e-9)


def test_trivial_cases():
    spec = resonant_spec([(2.0, 0.0)], [(1.0, 1.0), (1.0, 2.0)])
    blk = build_multiblock(spec, MultiBlockIndex((1,), (2, 0)))
    np.testing.assert_allclose(survival_probability_multiblock(blk, uniform_times(10, 50)), 1.0,
                               atol=1e-14)
    spec = resonant_spec([(2.0, 1.0)], [(1.0, 1.0), (1.0, 2.0)])
    blk = build_multiblock(spec, MultiBlockIndex((1,), (2, 0)))
    assert survival_probability_multiblock(blk, 0.0) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("T", [0.0, 2.0, 50.0])
def test_q1_thermal_is_bitwise_three_level(T):
    params = validate(ModelParams.from_frequencies(10.0, 1.0, 1.0, 1.0, temperature=T))
    spec = MultimodeSpec(params.omega_levels, [(10.0, 1.0)], [(1.0, 1.0)], T)
    t = uniform_times(20, 200)
    a = thermal_survival_1xq(spec, t)
    b = survival_curve(params, t)
    assert a.p1.tobytes() == b.p1.tobytes()


@pytest.mark.parametrize("delta", [0.0, 0.5])
def test_q1_dense_path_agrees(delta):
    mode = "detuned" if delta else "resonant"
    params = validate(ModelParams.from_frequencies(3.0, 1.0, 0.8, 1.2, delta, 5.0), mode)
    spec = MultimodeSpec(params.omega_levels, [(3.0, 0.8)], [(1.0, 1.2)], 5.0)
    t = uniform_times(15, 150)
    tol = Tolerances(tail_mass=1e-6)
    dense = thermal_survival_1xq(spec, t, tol, dense=True)
    np.testing.assert_allclose(dense.p1, survival_curve(params, t, tol).p1, atol=1e-12)


def test_zero_temperature_single_block():
    spec = resonant_spec([(3.0, 1.0)], [(1.0, 0.6), (1.5, 0.8)])
    t = uniform_times(10, 100)
    curve = thermal_survival_1xq(spec, t)
    blk = build_multiblock(spec, MultiBlockIndex((0,), (0, 0)))
    np.testing.assert_allclose(curve.p1, survival_probability_multiblock(blk, t), atol=1e-13)


def brute_multimode(spec, t, cutoffs):
    freqs = [f for f, _ in spec.modes_12 + spec.modes_23]
    ws = [mode_weights(f, spec.temperature, c) for f, c in zip(freqs, cutoffs)]
    total = np.zeros(len(t))
    for occ in itertools.product(*(range(c + 1) for c in cutoffs)):
        w = math.prod(w_i[o] for w_i, o in zip(ws, occ))
        idx = MultiBlockIndex(occ[:spec.p], occ[spec.p:])
        total += w * survival_probability_multiblock(build_multiblock(spec, idx), t)
    return total


@pytest.mark.parametrize("p,q", [(1, 2), (2, 1), (2, 2)])
def test_thermal_sum_matches_brute_force(p, q):
    spec = MultimodeSpec((4.0, 1.5, 0.0), [(2.5, 0.9), (3.0, 0.4)][:p],
                         [(1.5, 1.1), (1.0, 0.5)][:q], 1.5)
    t = uniform_times(10, 60)
    curve = thermal_survival(spec, t, Tolerances(tail_mass=1e-4), allow_general=True)
    ref = brute_multimode(spec, t, curve.metadata["cutoffs"])
    np.testing.assert_allclose(curve.p1, ref, atol=1e-12)


def test_general_p_is_gated():
    spec = MultimodeSpec((4.0, 1.5, 0.0), [(2.5, 0.9), (3.0, 0.4)], [(1.5, 1.1)], 1.0)
    with pytest.raises(DomainError):
        thermal_survival(spec, uniform_times(1, 3))
    with pytest.raises(DomainError):
        thermal_survival_1xq(spec, uniform_times(1, 3))


def test_block_count_cap():
    spec = resonant_spec([(1.0, 1.0)], [(1.0, 0.5), (1.0, 0.5)], T=100.0)
    tol = Tolerances(tail_mass=1e-6, max_blocks=1000)
    assert estimate_block_count(spec, tol) > 1000
    with pytest.raises(CutoffOverflow):
        thermal_survival_1xq(spec, uniform_times(1, 3), tol)


def test_slow_modes_hinder_decay():
    # |g12|^2 equal to the summed |g23|^2; slow 2-3 modes are more populated at high T
    g = 1 / math.sqrt(2)
    t = uniform_times(20, 200)
    tol = Tolerances(tail_mass=1e-3)
    slow = thermal_survival_1xq(resonant_spec([(10.0, 1.0)], [(1.0, g), (1.0, g)], 20.0), t, tol)
    fast = thermal_survival_1xq(resonant_spec([(10.0, 1.0)], [(10.0, g), (10.0, g)], 20.0), t, tol)
    assert slow.minimum() > fast.minimum() + 0.1
