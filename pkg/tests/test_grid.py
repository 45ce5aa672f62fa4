"""Tests for the quadrature grids."""

import numpy as np
import pytest

from oracles import spin_harmonic
from spinwav.exceptions import ParameterError
from spinwav.harmonics.grid import build_grid, build_rotation_grid


class TestSphereGrid:
    """Tests for build_grid."""

    def test_single_node(self):
        grid = build_grid(1)
        assert grid.thetas.size == 1
        assert grid.weights[0] == pytest.approx(2.0, abs=1e-15)
        assert grid.n_phi == 1

    @pytest.mark.parametrize("L", [1, 2, 7, 32, 129])
    def test_weights_sum_to_two(self, L):
        assert np.sum(build_grid(L).weights) == pytest.approx(2.0, abs=1e-14)

    def test_layout(self):
        grid = build_grid(9)
        assert grid.shape == (9, 17)
        assert np.all(np.diff(grid.thetas) > 0)
        assert 0 < grid.thetas[0] and grid.thetas[-1] < np.pi
        np.testing.assert_allclose(grid.phis, 2 * np.pi * np.arange(17) / 17)

    def test_orthonormality_on_grid(self):
        """Quadrature of |Y_20|^2 on the L=16 grid is one."""
        grid = build_grid(16)
        values = np.array([[spin_harmonic(2, 0, 0, t, p) for p in grid.phis] for t in grid.thetas])
        integral = (2 * np.pi / grid.n_phi) * np.sum(grid.weights[:, None] * np.abs(values) ** 2)
        assert integral == pytest.approx(1.0, abs=1e-12)

    def test_deterministic(self):
        assert build_grid(12) is build_grid(12)

    def test_invalid(self):
        with pytest.raises(ParameterError):
            build_grid(0)


class TestRotationGrid:
    """Tests for build_rotation_grid."""

    def test_sizes(self):
        grid = build_rotation_grid(8, 3)
        assert grid.shape == (5, 8, 15)
        assert grid.size == 5 * 8 * 15
        np.testing.assert_allclose(grid.betas, build_grid(8).thetas)

    @pytest.mark.parametrize("L, N", [(4, 0), (4, 5), (0, 1)])
    def test_invalid(self, L, N):
        with pytest.raises(ParameterError):
            build_rotation_grid(L, N)
