"""Tests for the Wigner d-function recursion."""

import math

import numpy as np
import pytest
from scipy.special import gammaln, lpmv

from oracles import wigner_d_oracle
from spinwav.exceptions import DomainError
from spinwav.harmonics.wigner import iter_wigner_d, wigner_d_slice


class TestWignerSlice:
    """Tests for wigner_d_slice against closed forms and oracles."""

    def test_identity_rotation(self):
        """d^l_m0(0) = delta_m0."""
        table = wigner_d_slice(4, 0.0, 0)
        for ell in range(5):
            expected = np.zeros(2 * ell + 1)
            expected[ell] = 1.0
            np.testing.assert_allclose(table.row(ell), expected, atol=1e-15)

    def test_degree_one(self):
        """d^1_00(beta) = cos(beta)."""
        for beta in np.linspace(0, np.pi, 7):
            assert wigner_d_slice(1, beta, 0)(1, 0) == pytest.approx(math.cos(beta), abs=1e-15)

    def test_factorial_oracle(self):
        """All m and n at beta = pi/3 match the explicit sum for l <= 8."""
        beta = np.pi / 3
        for n in range(-8, 9):
            table = wigner_d_slice(8, beta, n)
            for ell in range(abs(n), 9):
                for m in range(-ell, ell + 1):
                    assert table(ell, m) == pytest.approx(
                        wigner_d_oracle(ell, m, n, beta), abs=5e-14
                    )

    def test_spec_point(self):
        """(l_max=8, beta=pi/3, n=2) within relative 1e-12 of the oracle."""
        table = wigner_d_slice(8, np.pi / 3, 2)
        for ell in range(2, 9):
            for m in range(-ell, ell + 1):
                expected = wigner_d_oracle(ell, m, 2, np.pi / 3)
                if abs(expected) > 1e-8:
                    assert abs(table(ell, m) - expected) <= 1e-12 * abs(expected)

    def test_rows_below_order_are_zero(self):
        table = wigner_d_slice(6, 1.0, 3)
        assert np.all(table.values[:3] == 0)

    @pytest.mark.parametrize("beta", [0.05, 0.9, 1.7, 3.1])
    def test_legendre_relation(self, beta):
        """d^l_m0 = sqrt((l-m)!/(l+m)!) P_l^m(cos beta) up to l = 64."""
        table = wigner_d_slice(64, beta, 0)
        for ell in (10, 33, 64):
            for m in (0, 1, 5, 10):
                ratio = np.exp(0.5 * (gammaln(ell - m + 1) - gammaln(ell + m + 1)))
                expected = ratio * lpmv(m, ell, np.cos(beta))
                assert table(ell, m) == pytest.approx(expected, abs=1e-11)

    @pytest.mark.parametrize("beta", [0.3, 1.2, 2.8])
    def test_orthogonality(self, beta):
        """sum_m d^l_mn d^l_mn' = delta_nn' at l = 64."""
        ell = 64
        rows = {n: wigner_d_slice(ell, beta, n).row(ell) for n in (-7, 0, 2, 7)}
        for n, row in rows.items():
            for n2, row2 in rows.items():
                expected = 1.0 if n == n2 else 0.0
                assert np.dot(row, row2) == pytest.approx(expected, abs=1e-12)

    def test_bounded(self):
        table = wigner_d_slice(40, 2.2, -5)
        assert np.max(np.abs(table.values)) <= 1 + 1e-12

    def test_high_degree_stays_normalised(self):
        """Renormalisation keeps the recursion finite and unitary at l = 1024."""
        ell_max = 1024
        betas = np.array([1e-3, 0.4, np.pi / 2, 3.0])
        last = None
        for ell, d in iter_wigner_d(ell_max, betas, 3):
            last = d
        assert np.all(np.isfinite(last))
        np.testing.assert_allclose(np.sum(last ** 2, axis=1), 1.0, atol=1e-9)

    def test_out_of_range_beta(self):
        with pytest.raises(DomainError):
            wigner_d_slice(4, -0.5, 0)
        with pytest.raises(DomainError):
            wigner_d_slice(4, 4.0, 0)

    @pytest.mark.parametrize("beta", [np.nan, np.inf, -np.inf])
    def test_non_finite_beta(self, beta):
        with pytest.raises(DomainError):
            wigner_d_slice(3, beta, 0)
        with pytest.raises(DomainError):
            list(iter_wigner_d(3, np.array([0.5, beta]), 1))

    def test_out_of_range_order(self):
        with pytest.raises(DomainError):
            wigner_d_slice(3, 0.5, 4)


class TestIterWignerD:
    """Tests for the streaming recursion over many angles."""

    def test_matches_single_angle(self):
        betas = np.array([0.1, 1.0, 2.5])
        stacked = dict(iter_wigner_d(10, betas, -2))
        for i, beta in enumerate(betas):
            table = wigner_d_slice(10, beta, -2)
            for ell in range(2, 11):
                np.testing.assert_allclose(stacked[ell][i], table.values[ell], atol=1e-15)

    def test_yields_from_order(self):
        degrees = [ell for ell, _ in iter_wigner_d(5, 0.3, -3)]
        assert degrees == [3, 4, 5]
