"""Tests for the Wigner transforms on SO(3)."""

import time

import numpy as np
import pytest

from oracles import naive_inverse_wigner
from spinwav.exceptions import DimensionError
from spinwav.harmonics.grid import build_rotation_grid
from spinwav.harmonics.so3 import (RotationMap, WignerCoeffs, forward_wigner, inverse_wigner,
                                   wigner_mask)


def real_coeffs(L, N, rng):
    """Coefficients of a real-valued function on SO(3)."""
    samples = inverse_wigner(WignerCoeffs.random(L, N, rng)).samples
    grid = build_rotation_grid(L, N)
    return forward_wigner(RotationMap(grid, samples.real))


class TestWignerCoeffs:
    """Tests for the coefficient container."""

    def test_mask(self):
        mask = wigner_mask(4, 3)
        assert mask.shape == (5, 4, 7)
        # l = 1, n = 2 is outside the index set
        assert not mask[2 + 2, 1, 3]
        assert mask[1 + 2, 2, -2 + 3]
        assert np.count_nonzero(mask) == sum((2 * l + 1) * (2 * min(l, 2) + 1) for l in range(4))

    def test_entries_outside_zeroed(self, rng):
        coeffs = WignerCoeffs.random(5, 3, rng)
        assert np.all(coeffs.values[~wigner_mask(5, 3)] == 0)

    def test_wrong_shape(self):
        with pytest.raises(DimensionError):
            WignerCoeffs(4, 2, np.zeros((3, 4, 6)))

    def test_read_only(self, rng):
        coeffs = WignerCoeffs.random(4, 2, rng)
        with pytest.raises(ValueError):
            coeffs.values[1, 0, 3] = 1.0
        rotation_map = inverse_wigner(coeffs)
        with pytest.raises(ValueError):
            rotation_map.samples[...] = 0.0


class TestInverseWigner:
    """Tests for inverse_wigner."""

    def test_constant(self):
        values = np.zeros((3, 6, 11), dtype=complex)
        values[1, 0, 5] = 8 * np.pi ** 2
        coeffs = WignerCoeffs(6, 2, values)
        samples = inverse_wigner(coeffs).samples
        np.testing.assert_allclose(samples, 1.0, atol=1e-13)

    def test_single_order_shape(self, rng):
        samples = inverse_wigner(WignerCoeffs.random(7, 1, rng)).samples
        assert samples.shape == (1, 7, 13)

    def test_n_order_phase_in_gamma(self, rng):
        L, N = 6, 3
        values = np.zeros((2 * N - 1, L, 2 * L - 1), dtype=complex)
        values[1 + N - 1] = WignerCoeffs.random(L, N, rng).values[1 + N - 1]
        coeffs = WignerCoeffs(L, N, values)
        samples = inverse_wigner(coeffs).samples
        gammas = build_rotation_grid(L, N).gammas
        expected = samples[0][None] * np.exp(1j * gammas)[:, None, None]
        np.testing.assert_allclose(samples, expected, atol=1e-13)

    def test_naive_sum(self, rng):
        L, N = 8, 3
        coeffs = WignerCoeffs.random(L, N, rng)
        rotation_map = inverse_wigner(coeffs)
        grid = rotation_map.grid
        for c, b, a in [(0, 0, 0), (2, 3, 7), (4, 7, 14), (1, 5, 2)]:
            expected = naive_inverse_wigner(
                coeffs.values, L, N, grid.alphas[a], grid.betas[b], grid.gammas[c]
            )
            assert rotation_map.samples[c, b, a] == pytest.approx(expected, abs=1e-12)

    def test_single_coefficient(self):
        L, N = 5, 2
        values = np.zeros((2 * N - 1, L, 2 * L - 1), dtype=complex)
        values[-1 + N - 1, 2, 1 + L - 1] = 1.0
        coeffs = WignerCoeffs(L, N, values)
        rotation_map = inverse_wigner(coeffs)
        grid = rotation_map.grid
        c, b, a = 2, 1, 6
        expected = naive_inverse_wigner(
            coeffs.values, L, N, grid.alphas[a], grid.betas[b], grid.gammas[c]
        )
        assert rotation_map.samples[c, b, a] == pytest.approx(expected, abs=1e-14)

    def test_grid_mismatch(self):
        with pytest.raises(DimensionError):
            inverse_wigner(WignerCoeffs.zeros(5, 2), build_rotation_grid(5, 3))


class TestForwardWigner:
    """Tests for forward_wigner."""

    @pytest.mark.parametrize("L, N", [(1, 1), (5, 5), (16, 1), (32, 4)])
    def test_roundtrip(self, rng, L, N):
        coeffs = WignerCoeffs.random(L, N, rng)
        back = forward_wigner(inverse_wigner(coeffs))
        assert np.max(np.abs(back.values - coeffs.values)) < 1e-11

    @pytest.mark.slow
    def test_cubic_cost(self, rng):
        """forward + inverse at fixed N costs O(L^3)."""
        best = {}
        for L in (64, 128):
            coeffs = WignerCoeffs.random(L, 3, rng)
            forward_wigner(inverse_wigner(coeffs))
            times = []
            for _ in range(3):
                start = time.perf_counter()
                forward_wigner(inverse_wigner(coeffs))
                times.append(time.perf_counter() - start)
            best[L] = min(times)
        assert 4 <= best[128] / best[64] <= 16

    def test_parseval(self, rng):
        coeffs = WignerCoeffs.random(12, 4, rng)
        assert inverse_wigner(coeffs).energy() == pytest.approx(coeffs.energy(), rel=1e-11)

    def test_subset_of_orders(self, rng):
        L, N = 8, 3
        coeffs = WignerCoeffs.random(L, N, rng)
        back = forward_wigner(inverse_wigner(coeffs), orders=[0, 2])
        assert np.all(back.values[-1 + N - 1] == 0)
        np.testing.assert_allclose(back.values[2 + N - 1], coeffs.values[2 + N - 1], atol=1e-12)

    def test_real_symmetry(self, rng):
        L, N = 7, 3
        coeffs = real_coeffs(L, N, rng)
        for ell in range(L):
            for m in range(-ell, ell + 1):
                for n in range(-min(ell, N - 1), min(ell, N - 1) + 1):
                    expected = (-1) ** (m + n) * np.conj(coeffs[ell, m, n])
                    assert coeffs[ell, -m, -n] == pytest.approx(expected, abs=1e-12)

    def test_real_flag(self, rng):
        L, N = 9, 4
        coeffs = real_coeffs(L, N, rng)
        full = inverse_wigner(coeffs)
        fast = inverse_wigner(coeffs, real=True)
        np.testing.assert_allclose(fast.samples, full.samples, atol=1e-12)
        samples = RotationMap(full.grid, full.samples.real)
        np.testing.assert_allclose(
            forward_wigner(samples, real=True).values, forward_wigner(samples).values, atol=1e-12
        )

    def test_workers(self, rng):
        coeffs = WignerCoeffs.random(12, 4, rng)
        serial = inverse_wigner(coeffs)
        threaded = inverse_wigner(coeffs, workers=4)
        np.testing.assert_allclose(threaded.samples, serial.samples, atol=1e-14)
        np.testing.assert_allclose(
            forward_wigner(serial, workers=3).values, forward_wigner(serial).values, atol=1e-14
        )
