"""Tests for the directional component."""

import numpy as np
import pytest

from spinwav.exceptions import ParameterError
from spinwav.wavelets.directionality import directionality
from spinwav.wavelets.family import WaveletParams


def zeta(L, N):
    return directionality(WaveletParams(L=L, N=N))


class TestDirectionality:
    """Tests for directionality."""

    def test_axisymmetric(self):
        z = zeta(16, 1)
        assert z.values.shape == (16, 1)
        np.testing.assert_array_equal(z.values[:, 0], 1.0)

    def test_two_orders(self):
        z = zeta(16, 2)
        assert z[0, 0] == 0 and z[0, 1] == 0
        for ell in range(1, 16):
            assert z[ell, 1] == pytest.approx(1j * np.sqrt(0.5), abs=1e-15)
            assert z[ell, -1] == pytest.approx(1j * np.sqrt(0.5), abs=1e-15)
            assert z[ell, 0] == 0

    @pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 8])
    def test_unit_energy(self, N):
        z = zeta(32, N)
        energy = np.sum(np.abs(z.values) ** 2, axis=1)
        populated = energy > 0
        np.testing.assert_allclose(energy[populated], 1.0, atol=1e-14)
        assert np.all(populated[1:])

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    def test_parity(self, N):
        z = zeta(20, N)
        ms = np.arange(-(N - 1), N)
        assert np.all(z.values[:, (N + ms) % 2 == 0] == 0)
        np.testing.assert_array_equal(z.orders(), ms[(N + ms) % 2 == 1])

    @pytest.mark.parametrize("N", [3, 5])
    def test_low_degrees_use_available_orders(self, N):
        z = zeta(12, N)
        # l = 2 supports only |m| <= 2 when N = 5
        assert np.all(z.values[2, np.abs(np.arange(-(N - 1), N)) > 2] == 0)

    @pytest.mark.parametrize("N", [1, 2, 3, 4, 6])
    def test_symmetry(self, N):
        z = zeta(24, N)
        np.testing.assert_allclose(z.values[:, ::-1], (-1) ** (N - 1) * np.conj(z.values), atol=1e-15)

    def test_phase(self):
        assert np.all(zeta(10, 3).values.imag == 0)
        assert np.all(zeta(10, 4).values.real == 0)

    def test_out_of_band(self):
        assert zeta(8, 2)[4, 3] == 0j

    def test_invalid(self):
        class Params:
            L, N = 4, 0
        with pytest.raises(ParameterError):
            directionality(Params())
