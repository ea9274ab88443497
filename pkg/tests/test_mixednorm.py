"""Section-variation profiles and the mixed-norm functional."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvarlab import (
    Exponent,
    Grid2,
    gen_product,
    gen_series_f,
    gen_sine,
    gen_staircase,
    gen_tent_scaled,
    phi_profile,
    psi_profile,
    pvar_cyclic,
    section_lipschitz_check,
    vitali_finest,
    w_p,
    w_p_estimate_check,
)

P_VALUES = (1.0, 1.5, 2.0, 3.0)


def _random_field(seed: int, side: int = 8) -> Grid2:
    return Grid2(np.random.default_rng(seed).normal(size=(side, side)))


class TestProfiles:
    @pytest.mark.parametrize("p", (1.0, 2.0))
    def test_separable_profiles_scale_with_factor(self, p):
        g = gen_sine(1, 8)
        h = gen_tent_scaled(1, 8)
        f = gen_product(g, h)
        pe = Exponent(p)
        vh = pvar_cyclic(h, pe)[0]
        vg = pvar_cyclic(g, pe)[0]
        phi = phi_profile(f, pe).values.samples
        psi = psi_profile(f, pe).values.samples
        assert np.allclose(phi, np.abs(g.samples) * vh, atol=1e-12)
        assert np.allclose(psi, np.abs(h.samples) * vg, atol=1e-12)

    def test_profile_axes(self):
        f = _random_field(0)
        pe = Exponent(2.0)
        assert phi_profile(f, pe).axis == "x"
        assert psi_profile(f, pe).axis == "y"
        assert phi_profile(f, pe).values.n == f.m


class TestWp:
    def test_constant_rows_and_columns_vanish(self):
        f = gen_product(gen_sine(1, 8), gen_sine(1, 8))
        # |g| * v_p(h) has the same profile shape in both coordinates
        assert w_p(f, Exponent(2.0)) > 0.0
        flat = Grid2(np.full((6, 6), 2.0))
        assert w_p(flat, Exponent(2.0)) == 0.0

    @pytest.mark.parametrize("p", (1.0, 2.0, 3.0))
    def test_staircase_profiles_dip_at_degenerate_sections(self, p):
        """One grid section per axis of the staircase is constant (the x = 1/N
        row samples no point of its zero region; the y = 1 column is the
        constant section of the underlying function), so each profile has a
        single dip to zero and W_p is resolution-independent but nonzero."""
        pe = Exponent(p)
        for n in (8, 16):
            f = gen_staircase(n)
            phi = phi_profile(f, pe).values.samples
            psi = psi_profile(f, pe).values.samples
            section_var = 2.0 ** (1.0 / p)
            assert phi[1] == 0.0 and psi[0] == 0.0
            assert np.allclose(np.delete(phi, 1), section_var, atol=1e-12)
            assert np.allclose(np.delete(psi, 0), section_var, atol=1e-12)
            assert w_p(f, pe) == pytest.approx(2.0 * 4.0 ** (1.0 / p), abs=1e-12)

    def test_series_profile_growth(self):
        pe = Exponent(2.0)
        amps = []
        for M in (2, 4):
            f = gen_series_f(M, pe, 128)
            phi = phi_profile(f, pe).values.samples
            amp = float(np.max(phi))
            amps.append(amp)
            vprofile = pvar_cyclic(phi_profile(f, pe).values, pe)[0]
            assert vprofile >= 0.9 * amp * (2 * M) ** 0.5
        # the bump amplitude is independent of the truncation order
        assert amps[0] == pytest.approx(amps[1], abs=1e-12)

    def test_series_vitali_stays_bounded(self):
        pe = Exponent(2.0)
        v4 = vitali_finest(gen_series_f(4, pe, 64), pe)
        v5 = vitali_finest(gen_series_f(5, pe, 128), pe)
        assert v5 <= 1.05 * v4


class TestChecks:
    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from(P_VALUES))
    def test_section_lipschitz(self, seed, p):
        r = section_lipschitz_check(_random_field(seed), Exponent(p))
        assert r["margin"] >= -1e-12

    @settings(max_examples=8, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from((1.5, 2.0, 8.0)))
    def test_estimate_ratio_finite(self, seed, p):
        r = w_p_estimate_check(_random_field(seed, side=12), Exponent(p))
        assert not r["skip"]
        assert 0.0 <= r["a_obs"] < 50.0

    def test_estimate_rejects_p1(self):
        with pytest.raises(ValueError):
            w_p_estimate_check(_random_field(0), Exponent(1.0))

    def test_estimate_flags_degenerate_bracket(self):
        flat = Grid2(np.zeros((4, 4)))
        assert w_p_estimate_check(flat, Exponent(2.0))["skip"]
