"""
Sampling grids on the sphere and on the rotation group.

Colatitudes (and the Euler angle beta) are Gauss-Legendre nodes in cos(theta);
longitudes (and alpha, gamma) are equiangular. With L nodes in theta and 2L-1
in phi the quadrature integrates products of two band-limited spin signals
exactly.
"""

import numpy as np

from dataclasses import dataclass, field
from functools import lru_cache

from ..exceptions import ParameterError


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """
    Gauss-Legendre x equiangular grid on the sphere.

    Attributes:
        L: Band-limit the grid is exact for
        thetas: Colatitude nodes in ascending order, shape (L,)
        weights: Quadrature weights in cos(theta), summing to 2
        n_phi: Number of equiangular longitudes
    """
    L: int
    thetas: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    n_phi: int

    @property
    def phis(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_phi) / self.n_phi

    @property
    def shape(self):
        return (self.thetas.size, self.n_phi)

    def descriptor(self) -> dict:
        return {
            "type": "gauss-legendre",
            "n_theta": int(self.thetas.size),
            "n_phi": int(self.n_phi),
        }


@dataclass(frozen=True, eq=False)
class RotationGrid:
    """
    Separable grid on SO(3): equiangular alpha and gamma, Gauss-Legendre beta.

    Attributes:
        L: Band-limit in ell
        N: Azimuthal band-limit in n
        alphas: 2L-1 equiangular nodes in [0, 2pi)
        betas: L Gauss-Legendre colatitude nodes
        weights: Quadrature weights for betas
        gammas: 2N-1 equiangular nodes in [0, 2pi)
    """
    L: int
    N: int
    alphas: np.ndarray = field(repr=False)
    betas: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    gammas: np.ndarray = field(repr=False)

    @property
    def shape(self):
        """Sample array shape, axis order (gamma, beta, alpha)."""
        return (self.gammas.size, self.betas.size, self.alphas.size)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def sphere_grid(self) -> SphereGrid:
        """The (beta, alpha) cross-section as a sphere grid."""
        return build_grid(self.L)

    def descriptor(self) -> dict:
        return {
            "type": "gauss-legendre-so3",
            "n_alpha": int(self.alphas.size),
            "n_beta": int(self.betas.size),
            "n_gamma": int(self.gammas.size),
        }


@lru_cache(maxsize=32)
def _gauss_legendre(L: int):
    x, w = np.polynomial.legendre.leggauss(L)
    # Ascending theta is descending cos(theta)
    thetas = np.arccos(x[::-1])
    weights = w[::-1].copy()
    thetas.setflags(write=False)
    weights.setflags(write=False)
    return thetas, weights


@lru_cache(maxsize=32)
def build_grid(L: int) -> SphereGrid:
    """
    Build the quadrature grid for band-limit L.

    Args:
        L: Band-limit, L >= 1

    Returns:
        SphereGrid with L colatitudes and 2L-1 longitudes

    Raises:
        ParameterError: If L < 1
    """
    if L < 1:
        raise ParameterError(f"Band-limit must be positive, got L={L}.")
    thetas, weights = _gauss_legendre(L)
    return SphereGrid(L=L, thetas=thetas, weights=weights, n_phi=2 * L - 1)


@lru_cache(maxsize=32)
def build_rotation_grid(L: int, N: int) -> RotationGrid:
    """
    Build the SO(3) grid for band-limits (L, N).

    Raises:
        ParameterError: Unless 1 <= N <= L
    """
    if L < 1:
        raise ParameterError(f"Band-limit must be positive, got L={L}.")
    if N < 1 or N > L:
        raise ParameterError(f"Azimuthal band-limit must satisfy 1 <= N <= L, got N={N}.")
    betas, weights = _gauss_legendre(L)
    n_alpha = 2 * L - 1
    n_gamma = 2 * N - 1
    return RotationGrid(
        L=L,
        N=N,
        alphas=2 * np.pi * np.arange(n_alpha) / n_alpha,
        betas=betas,
        weights=weights,
        gammas=2 * np.pi * np.arange(n_gamma) / n_gamma,
    )
