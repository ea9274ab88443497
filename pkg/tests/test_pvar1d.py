"""Cyclic p-variation in one dimension: exact DP against brute force."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvarlab import (
    CyclicPartition,
    Exponent,
    Grid1,
    gen_sine,
    gen_tent_scaled,
    omega_p_functional,
    pvar_cyclic,
    pvar_oracle,
    pvar_sum,
)

P_VALUES = (1.0, 1.5, 2.0, 3.0)


def _random_grid(seed: int, n_max: int = 10) -> Grid1:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, n_max + 1))
    return Grid1(rng.normal(size=n))


class TestBasics:
    def test_constant_has_zero_variation(self):
        g = Grid1(np.full(7, 3.25))
        for p in P_VALUES:
            assert pvar_cyclic(g, Exponent(p))[0] == 0.0

    def test_arc_indicator(self):
        g = Grid1(np.array([0.0, 1.0, 1.0, 0.0, 0.0, 0.0]))
        for p in P_VALUES:
            assert pvar_cyclic(g, Exponent(p))[0] == pytest.approx(2.0 ** (1.0 / p))

    def test_partition_validation(self):
        with pytest.raises(ValueError):
            CyclicPartition((3, 1))
        CyclicPartition((0, 4)).validate(6)
        with pytest.raises(ValueError):
            CyclicPartition((0, 7)).validate(6)

    def test_sine_optimum_at_extrema(self):
        g = gen_sine(1, 32)
        value, part = pvar_cyclic(g, Exponent(2.0))
        assert value == pytest.approx(2.0 * np.sqrt(2.0))
        assert set(part.indices) == {8, 24}

    @pytest.mark.parametrize("p", P_VALUES)
    @pytest.mark.parametrize("n", (1, 2, 4))
    def test_tent_closed_form(self, p, n):
        g = gen_tent_scaled(n, 32)
        value, _ = pvar_cyclic(g, Exponent(p))
        assert value == pytest.approx(2.0 ** (1.0 / p - 1.0) * n ** (1.0 / p), abs=1e-12)


class TestAgainstOracle:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from(P_VALUES))
    def test_matches_oracle_bitwise(self, seed, p):
        g = _random_grid(seed)
        pe = Exponent(p)
        assert pvar_cyclic(g, pe)[0] == pvar_oracle(g, pe)

    def test_oracle_size_limit(self):
        g = Grid1(np.zeros(19))
        with pytest.raises(ValueError):
            pvar_oracle(g, Exponent(2.0))


class TestInvariants:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from(P_VALUES))
    def test_dominates_every_partition(self, seed, p):
        g = _random_grid(seed)
        pe = Exponent(p)
        best, _ = pvar_cyclic(g, pe)
        rng = np.random.default_rng(seed + 1)
        for _ in range(5):
            k = int(rng.integers(1, g.n + 1))
            idx = tuple(sorted(rng.choice(g.n, size=k, replace=False).tolist()))
            assert pvar_sum(g, CyclicPartition(idx), pe) <= best + 1e-12

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from(P_VALUES), st.integers(1, 9))
    def test_rotation_invariance(self, seed, p, shift):
        g = _random_grid(seed)
        pe = Exponent(p)
        rolled = Grid1(np.roll(g.samples, shift))
        assert pvar_cyclic(rolled, pe)[0] == pytest.approx(pvar_cyclic(g, pe)[0], abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(
        st.integers(0, 10**6),
        st.sampled_from(P_VALUES),
        st.floats(-3.0, 3.0, allow_nan=False),
    )
    def test_homogeneity_and_shift(self, seed, p, c):
        g = _random_grid(seed)
        pe = Exponent(p)
        base, _ = pvar_cyclic(g, pe)
        scaled, _ = pvar_cyclic(Grid1(c * g.samples + 1.0), pe)
        assert scaled == pytest.approx(abs(c) * base, abs=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_decreasing_in_p(self, seed):
        g = _random_grid(seed)
        values = [pvar_cyclic(g, Exponent(p))[0] for p in (1.0, 1.5, 2.0, 3.0)]
        for lo, hi in zip(values[1:], values[:-1]):
            assert lo <= hi + 1e-12

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from(P_VALUES))
    def test_omega_functional_pairwise_mean(self, seed, p):
        g = _random_grid(seed)
        a = g.samples
        d = np.abs(a[:, None] - a[None, :]) ** p
        expect = float(np.mean(d)) ** (1.0 / p)
        assert omega_p_functional(g, Exponent(p)) == pytest.approx(expect, abs=1e-12)
