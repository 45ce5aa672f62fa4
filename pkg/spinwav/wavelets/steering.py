"""
Steering of directional wavelet coefficients.

The wavelet orders n share the parity of N - 1 and satisfy |n| < N, so the
coefficients at any orientation gamma are a weighted sum of N basis slices
at gamma_g = g pi / N, with weights z(gamma - gamma_g) and
z(x) = (1/N) sum_n e^{i n x}.
"""

import numpy as np

from dataclasses import dataclass, field

from .transform import WaveletCoefficients
from ..harmonics.grid import build_grid
from ..harmonics.sht import SphereMap
from ..exceptions import ParameterError


def steering_orders(N: int) -> np.ndarray:
    """The N orders n in (-N, N) with N + n odd."""
    return np.arange(-(N - 1), N, 2)


@dataclass(frozen=True, eq=False)
class SteeringWeights:
    """
    Interpolation weights for one target orientation.

    Attributes:
        N: Azimuthal band-limit
        gamma: Target orientation
        orientations: Basis orientations gamma_g = g pi / N
        weights: z(gamma - gamma_g) per basis orientation
    """
    N: int
    gamma: float
    orientations: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)


def steering_weights(N: int, gamma: float) -> SteeringWeights:
    """
    Weights that steer the N basis orientations to gamma.

    Raises:
        ParameterError: If N < 1
    """
    if N < 1:
        raise ParameterError(f"Azimuthal band-limit must be positive, got N={N}.")
    orientations = np.pi * np.arange(N) / N
    ns = steering_orders(N)
    offsets = gamma - orientations
    z = np.exp(1j * ns[None, :] * offsets[:, None]).mean(axis=1)
    return SteeringWeights(N=N, gamma=float(gamma), orientations=orientations, weights=z.real)


def _slice_at(samples: np.ndarray, gammas: np.ndarray) -> np.ndarray:
    """
    Fourier-interpolate (n_gamma, ...) samples to arbitrary orientations.
    """
    n_gamma = samples.shape[0]
    half = (n_gamma - 1) // 2
    coeffs = np.fft.fft(samples, axis=0) / n_gamma
    ns = np.arange(-half, half + 1)
    coeffs = coeffs[ns % n_gamma]
    phases = np.exp(1j * np.outer(gammas, ns))
    return np.tensordot(phases, coeffs, axes=(1, 0))


def basis_slices(w: WaveletCoefficients, j: int) -> np.ndarray:
    """
    Coefficients of scale j at the N basis orientations.

    Returns:
        (N, n_beta, n_alpha) array
    """
    N = w.params.N
    return _slice_at(w.scale(j).samples, np.pi * np.arange(N) / N)


def steer(w: WaveletCoefficients, j: int, gamma: float) -> SphereMap:
    """
    Wavelet coefficients of scale j at continuous orientation gamma.

    Args:
        w: WaveletCoefficients
        j: Scale
        gamma: Orientation in [0, 2pi)

    Returns:
        SphereMap on the (beta, alpha) grid of the scale, spin 0

    Raises:
        ParameterError: If j is out of range
    """
    rotation_map = w.scale(j)
    weights = steering_weights(w.params.N, gamma)
    basis = basis_slices(w, j)
    samples = np.tensordot(weights.weights, basis, axes=(0, 0))
    return SphereMap(grid=build_grid(rotation_map.L), s=0, samples=samples)
