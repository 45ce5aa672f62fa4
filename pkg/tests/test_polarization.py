"""Tests for the spin-2 polarisation utilities."""

import numpy as np
import pytest

from oracles import spin_harmonic
from spinwav.exceptions import DimensionError, ParameterError
from spinwav.harmonics.sht import HarmonicCoeffs, lm_index
from spinwav.processing.polarization import (PHYSICAL, TILDE, EBPair, StokesQU, eb_to_qu,
                                             eb_wavelet_connection, lowered_family, qu_to_eb,
                                             spin_lower_harmonic, spin_raise_harmonic, tilde_factor)
from spinwav.wavelets.transform import analyze


def delta(L, s, ell, m, value=1.0):
    values = np.zeros(L * L, dtype=complex)
    values[lm_index(ell, m)] = value
    return HarmonicCoeffs(L, s, values)


def random_qu(L, rng):
    return StokesQU(HarmonicCoeffs.random(L, 2, rng), HarmonicCoeffs.random(L, -2, rng))


def real_pair(L, rng, e=True, b=True):
    """E and B of a real polarisation field."""
    zero = HarmonicCoeffs.zeros(L, 0)
    E = HarmonicCoeffs.random(L, 0, rng, real=True) if e else zero
    B = HarmonicCoeffs.random(L, 0, rng, real=True) if b else zero
    return EBPair(E, B)


class TestStokes:
    """Tests for qu_to_eb and eb_to_qu."""

    def test_pure_e(self):
        qu = StokesQU(delta(8, 2, 2, 0, -1.0), delta(8, -2, 2, 0, -1.0))
        eb = qu_to_eb(qu)
        assert eb.E[2, 0] == pytest.approx(1.0)
        assert np.all(eb.B.values == 0)

    def test_pure_b(self):
        qu = StokesQU(delta(8, 2, 2, 0, -1j), delta(8, -2, 2, 0, 1j))
        eb = qu_to_eb(qu)
        assert eb.B[2, 0] == pytest.approx(1.0)
        assert np.all(eb.E.values == 0)

    def test_roundtrip(self, rng):
        qu = random_qu(12, rng)
        back = eb_to_qu(qu_to_eb(qu))
        np.testing.assert_allclose(back.plus.values, qu.plus.values, atol=1e-12)
        np.testing.assert_allclose(back.minus.values, qu.minus.values, atol=1e-12)

    def test_roundtrip_tilde(self, rng):
        qu = random_qu(12, rng)
        eb = qu_to_eb(qu, variant=TILDE)
        assert eb.variant == TILDE
        back = eb_to_qu(eb)
        np.testing.assert_allclose(back.plus.values, qu.plus.values, atol=1e-12)

    def test_roundtrip_reverse(self, rng):
        eb = real_pair(10, rng)
        back = qu_to_eb(eb_to_qu(eb))
        low = 4
        np.testing.assert_allclose(back.E.values[low:], eb.E.values[low:], atol=1e-12)
        np.testing.assert_allclose(back.B.values[low:], eb.B.values[low:], atol=1e-12)
        assert np.all(back.E.values[:low] == 0)

    def test_parity_swap(self, rng):
        qu = random_qu(10, rng)
        eb = qu_to_eb(qu)
        swapped = qu_to_eb(StokesQU(HarmonicCoeffs(10, 2, qu.minus.values),
                                    HarmonicCoeffs(10, -2, qu.plus.values)))
        np.testing.assert_allclose(swapped.E.values, eb.E.values, atol=1e-15)
        np.testing.assert_allclose(swapped.B.values, -eb.B.values, atol=1e-15)

    def test_tilde_factor(self):
        factor = tilde_factor(5)
        np.testing.assert_allclose(factor, [0, 0, np.sqrt(24), np.sqrt(120), np.sqrt(360)])

    def test_tilde_conversion(self, rng):
        eb = real_pair(10, rng)
        tilde = eb.to_tilde()
        assert tilde.E[3, 1] == pytest.approx(np.sqrt(120) * eb.E[3, 1])
        assert tilde.to_tilde() is tilde
        assert eb.to_physical() is eb
        np.testing.assert_allclose(tilde.to_physical().B.values[4:], eb.B.values[4:], atol=1e-14)

    def test_invalid(self, rng):
        with pytest.raises(ParameterError):
            StokesQU(HarmonicCoeffs.zeros(8, 2), HarmonicCoeffs.zeros(8, 2))
        with pytest.raises(DimensionError):
            StokesQU(HarmonicCoeffs.zeros(8, 2), HarmonicCoeffs.zeros(9, -2))
        with pytest.raises(ParameterError):
            EBPair(HarmonicCoeffs.zeros(8, 0), HarmonicCoeffs.zeros(8, 0), variant="other")


class TestSpinOperators:
    """Tests for spin_lower_harmonic and spin_raise_harmonic."""

    def test_twice_lowered_delta(self):
        lowered = spin_lower_harmonic(delta(6, 2, 2, 0), times=2)
        assert lowered.s == 0
        assert lowered[2, 0] == pytest.approx(np.sqrt(24), rel=1e-15)

    def test_identity(self, rng):
        coeffs = HarmonicCoeffs.random(8, 1, rng)
        assert spin_lower_harmonic(coeffs, times=0) is coeffs

    def test_low_rows_vanish(self):
        values = np.zeros(36, dtype=complex)
        values[lm_index(1, -1):lm_index(1, 1) + 1] = [1.0, 2.0, 3.0]
        coeffs = HarmonicCoeffs(6, 0, values)
        assert np.all(spin_raise_harmonic(coeffs, times=2).values == 0)
        lowered = spin_lower_harmonic(HarmonicCoeffs(6, 2, coeffs.values), times=2)
        assert np.all(lowered.values == 0)

    def test_raise_then_lower(self, rng):
        coeffs = HarmonicCoeffs.random(10, 0, rng)
        there_and_back = spin_lower_harmonic(spin_raise_harmonic(coeffs, 2), 2)
        # eth^2 then ebar^2 multiplies by (l+2)!/(l-2)!
        expected = coeffs.to_matrix() * (tilde_factor(10) ** 2)[:, None]
        np.testing.assert_allclose(there_and_back.to_matrix(), expected, atol=1e-9)

    def test_negative_times(self, rng):
        with pytest.raises(ParameterError):
            spin_lower_harmonic(HarmonicCoeffs.zeros(4, 0), times=-1)

    def test_finite_difference(self, rng):
        """ebar eta = -(d_theta eta + s cot(theta) eta - i csc(theta) d_phi eta)."""
        L, s = 5, 2
        coeffs = HarmonicCoeffs.random(L, s, rng)
        lowered = spin_lower_harmonic(coeffs)

        def field(c, spin, theta, phi):
            return sum(c[ell, m] * spin_harmonic(ell, m, spin, theta, phi)
                       for ell in range(abs(spin), L) for m in range(-ell, ell + 1))

        h = 1e-5
        for theta, phi in [(0.7, 1.9), (2.1, 4.4), (1.3, 0.2)]:
            eta = field(coeffs, s, theta, phi)
            d_theta = (field(coeffs, s, theta + h, phi) - field(coeffs, s, theta - h, phi)) / (2 * h)
            d_phi = (field(coeffs, s, theta, phi + h) - field(coeffs, s, theta, phi - h)) / (2 * h)
            numeric = -(d_theta + s * eta / np.tan(theta) - 1j * d_phi / np.sin(theta))
            assert field(lowered, s - 1, theta, phi) == pytest.approx(numeric, abs=1e-7)


class TestWaveletConnection:
    """Tests for lowered_family and eb_wavelet_connection."""

    def test_lowered_family(self, family_factory):
        family = family_factory(16, N=3, s=2)
        lowered = lowered_family(family)
        assert lowered.s == 0
        assert np.all(lowered.psi[:, :2] == 0)
        np.testing.assert_allclose(lowered.psi[:, 5] * np.sqrt(4 * 5 * 6 * 7), family.psi[:, 5])
        with pytest.raises(ParameterError):
            lowered_family(family_factory(16, N=3, s=0))

    def test_raised_twice_is_spin_two_wavelet(self, family_factory):
        L, N, n, j = 16, 3, 0, 2
        family = family_factory(L, N=N, s=2)
        lowered = lowered_family(family)
        ells = np.repeat(np.arange(L), 2 * np.arange(L) + 1)
        ms = np.arange(L * L) - ells * ells - ells
        on_order = ms == n
        scalar = HarmonicCoeffs(L, 0, np.where(on_order, lowered.wavelet(j)[ells, n + N - 1], 0))
        raised = spin_raise_harmonic(scalar, times=2)
        expected = np.where(on_order & (ells >= 2), family.wavelet(j)[ells, n + N - 1], 0)
        assert raised.s == 2
        np.testing.assert_allclose(raised.values, expected, atol=1e-14)

    @pytest.mark.parametrize("L, N", [(16, 1), (16, 3), (32, 1), (32, 3)])
    def test_two_paths(self, family_factory, L, N):
        rng = np.random.default_rng(L + N)
        family = family_factory(L, N=N, s=2)
        eb = real_pair(L, rng)
        e_maps, b_maps = eb_wavelet_connection(eb_to_qu(eb), family)

        tilde = eb.to_tilde()
        scalar = lowered_family(family)
        e_direct = analyze(tilde.E, scalar)
        b_direct = analyze(tilde.B, scalar)
        for j in family.scales:
            k = j - family.params.J0
            assert np.max(np.abs(e_maps[k].samples - e_direct.scale(j).samples)) < 1e-8
            assert np.max(np.abs(b_maps[k].samples - b_direct.scale(j).samples)) < 1e-8

    def test_pure_e(self, family_factory, rng):
        family = family_factory(32, N=3, s=2)
        e_maps, b_maps = eb_wavelet_connection(eb_to_qu(real_pair(32, rng, b=False)), family)
        assert max(np.max(np.abs(m.samples)) for m in b_maps) < 1e-10
        assert max(np.max(np.abs(m.samples)) for m in e_maps) > 1e-3

    def test_pure_b(self, family_factory, rng):
        family = family_factory(32, N=3, s=2)
        e_maps, b_maps = eb_wavelet_connection(eb_to_qu(real_pair(32, rng, e=False)), family)
        assert max(np.max(np.abs(m.samples)) for m in e_maps) < 1e-10
        assert max(np.max(np.abs(m.samples)) for m in b_maps) > 1e-3

    def test_needs_spin_two(self, family_factory):
        family = family_factory(16, N=3, s=0)
        qu = StokesQU(HarmonicCoeffs.zeros(16, 2), HarmonicCoeffs.zeros(16, -2))
        with pytest.raises(ParameterError):
            eb_wavelet_connection(qu, family)
