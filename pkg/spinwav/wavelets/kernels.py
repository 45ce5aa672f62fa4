"""
Scale-discretised harmonic kernels.

k_alpha(t) is the normalised integral of s_alpha(t')^2 / t' from t to 1, where
s_alpha is the compact bump exp(-1/(1-t^2)) stretched onto [1/alpha, 1]. It is
1 below 1/alpha, 0 above 1 and smooth in between. Wavelet kernels are
square roots of differences of k_alpha on neighbouring dilations, so the
squared kernels telescope.
"""

import logging
import numpy as np

from dataclasses import dataclass, field
from functools import lru_cache
from scipy.integrate import quad

from ..exceptions import DomainError, ParameterError

logger = logging.getLogger(__name__)

# Quadrature tolerances
QUAD_EPSABS = 1.0e-14
QUAD_EPSREL = 1.0e-13
QUAD_LIMIT = 200


def schwartz_s(t):
    """
    Compact Schwartz bump s(t) = exp(-1/(1-t^2)) on (-1, 1), zero elsewhere.

    Accepts scalars or arrays.
    """
    t = np.asarray(t, dtype=float)
    flat = np.atleast_1d(t)
    out = np.zeros_like(flat)
    inside = np.abs(flat) < 1
    out[inside] = np.exp(-1.0 / (1.0 - flat[inside] ** 2))
    if t.ndim == 0:
        return float(out[0])
    return out.reshape(t.shape)


def schwartz_s_alpha(t, alpha: float):
    """s(t) mapped so its support is [1/alpha, 1]."""
    return schwartz_s(2 * alpha / (alpha - 1) * (np.asarray(t, dtype=float) - 1 / alpha) - 1)


def _integrand(t: float, alpha: float) -> float:
    return schwartz_s_alpha(t, alpha) ** 2 / t


@lru_cache(maxsize=None)
def _k_normalisation(alpha: float) -> float:
    value, _ = quad(_integrand, 1 / alpha, 1, args=(alpha,),
                    epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    return value


@lru_cache(maxsize=None)
def _k_alpha_cached(t: float, alpha: float) -> float:
    if t <= 1 / alpha:
        return 1.0
    if t >= 1:
        return 0.0
    value, _ = quad(_integrand, t, 1, args=(alpha,),
                    epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    return value / _k_normalisation(alpha)


def k_alpha(t: float, alpha: float) -> float:
    """
    Smoothly decreasing function, 1 for t <= 1/alpha and 0 for t >= 1.

    Args:
        t: Argument, t >= 0
        alpha: Dilation parameter, alpha > 1

    Returns:
        float: k_alpha(t) in [0, 1]

    Raises:
        ParameterError: If alpha <= 1
        DomainError: If t < 0
    """
    if not alpha > 1:
        raise ParameterError(f"Dilation parameter must exceed 1, got alpha={alpha}.")
    if t < 0:
        raise DomainError(f"k_alpha is defined for t >= 0, got t={t}.")
    return _k_alpha_cached(float(t), float(alpha))


def max_scale(L: int, alpha: float) -> int:
    """Smallest J with alpha^J >= L - 1 (0 when L <= 2)."""
    J = 0
    while alpha ** J < L - 1:
        J += 1
    return J


def _lattice_k(L: int, alpha: float, j: int) -> np.ndarray:
    """k_alpha(l / alpha^j) for l < L."""
    dilation = alpha ** j
    return np.array([_k_alpha_cached(ell / dilation, float(alpha)) for ell in range(L)])


def kernel(j: int, ell: int, params) -> float:
    """
    Wavelet kernel kappa^(j)(l) = sqrt(k_alpha(l/alpha^(j+1)) - k_alpha(l/alpha^j)).

    Args:
        j: Scale, J0 <= j <= J
        ell: Degree, 0 <= l < L
        params: WaveletParams

    Raises:
        ParameterError: If the scale or degree is out of range
    """
    if j < params.J0 or j > params.J:
        raise ParameterError(f"Scale j={j} outside [{params.J0}, {params.J}].")
    if ell < 0 or ell >= params.L:
        raise ParameterError(f"Degree l={ell} outside [0, {params.L}).")
    alpha = float(params.alpha)
    upper = _k_alpha_cached(ell / alpha ** (j + 1), alpha)
    lower = _k_alpha_cached(ell / alpha ** j, alpha)
    return float(np.sqrt(max(upper - lower, 0.0)))


@dataclass(frozen=True, eq=False)
class KernelTable:
    """
    Kernel values on the integer degree lattice.

    Attributes:
        J0: Minimum scale
        J: Maximum scale
        wavelet: (J - J0 + 1, L) array, wavelet[j - J0, l] = kappa^(j)(l)
        scaling: (L,) array sqrt(k_alpha(l / alpha^J0))
    """
    J0: int
    J: int
    wavelet: np.ndarray = field(repr=False)
    scaling: np.ndarray = field(repr=False)

    def __getitem__(self, j: int) -> np.ndarray:
        return self.wavelet[j - self.J0]

    def tiling(self) -> np.ndarray:
        """Columns (l, scaling^2, kappa^(J0)^2, ..., kappa^(J)^2, sum)."""
        L = self.scaling.size
        squares = np.vstack([self.scaling ** 2, self.wavelet ** 2])
        return np.column_stack([np.arange(L), squares.T, squares.sum(axis=0)])


def kernel_table(params) -> KernelTable:
    """
    Tabulate every wavelet kernel and the scaling kernel for params.

    The same k_alpha(l / alpha^j) values are shared by neighbouring scales.
    """
    L, alpha, J0, J = params.L, float(params.alpha), params.J0, params.J
    k = {j: _lattice_k(L, alpha, j) for j in range(J0, J + 2)}
    wavelet = np.vstack([
        np.sqrt(np.maximum(k[j + 1] - k[j], 0.0)) for j in range(J0, J + 1)
    ])
    scaling = np.sqrt(k[J0])
    logger.debug("Kernel table L=%d alpha=%g scales %d..%d", L, alpha, J0, J)
    return KernelTable(J0=J0, J=J, wavelet=wavelet, scaling=scaling)
