"""
Directional spin wavelet families.

psi^(j)_ln = sqrt((2l+1)/(8pi^2)) kappa^(j)(l) zeta_ln
Phi_l      = sqrt((2l+1)/(4pi)) sqrt(k_alpha(l / alpha^J0))

The harmonic values are built independently of the spin number, so the
admissibility identity holds for every degree l < L.
"""

import logging
import math
import numpy as np

from dataclasses import dataclass, field, replace
from typing import List, Optional

from .directionality import Directionality, directionality
from .kernels import KernelTable, kernel_table, max_scale
from ..harmonics.sht import EulerAngles, HarmonicCoeffs, rotate_harmonics
from ..exceptions import ParameterError

logger = logging.getLogger(__name__)

# Default parameters
DEFAULT_ALPHA = 2.0
DEFAULT_J0 = 0
DEFAULT_N = 1
EIGHT_PI2 = 8 * np.pi ** 2
FOUR_PI = 4 * np.pi


@dataclass(frozen=True)
class WaveletParams:
    """
    Parameters of a wavelet family.

    Attributes:
        L: Band-limit
        alpha: Dilation parameter, alpha > 1
        J0: Minimum scale, 0 <= J0 <= J
        N: Azimuthal band-limit of the directionality, 1 <= N <= L
        s: Spin number, |s| < L
    """
    L: int
    alpha: float = DEFAULT_ALPHA
    J0: int = DEFAULT_J0
    N: int = DEFAULT_N
    s: int = 0

    def __post_init__(self):
        if self.L < 1:
            raise ParameterError(f"Band-limit must be positive, got L={self.L}.")
        if not self.alpha > 1:
            raise ParameterError(f"Dilation parameter must exceed 1, got alpha={self.alpha}.")
        if self.N < 1 or self.N > self.L:
            raise ParameterError(f"Azimuthal band-limit must satisfy 1 <= N <= L, got N={self.N}.")
        if abs(self.s) >= self.L:
            raise ParameterError(f"Spin |s|={abs(self.s)} must be below L={self.L}.")
        if self.J0 < 0 or self.J0 > self.J:
            raise ParameterError(f"Minimum scale J0={self.J0} outside [0, {self.J}].")

    @property
    def J(self) -> int:
        """Maximum scale, the smallest J with alpha^J >= L - 1."""
        return max_scale(self.L, self.alpha)

    @property
    def scales(self) -> range:
        return range(self.J0, self.J + 1)

    def band_limit(self, j: int) -> int:
        """Multiresolution band-limit of scale j, min(ceil(alpha^(j+1)), L)."""
        return min(math.ceil(self.alpha ** (j + 1)), self.L)

    def scaling_band_limit(self) -> int:
        return min(math.ceil(self.alpha ** self.J0), self.L)

    def nband(self, j: int) -> int:
        """Azimuthal band-limit of scale j at multiresolution, min(N, L_j)."""
        return min(self.N, self.band_limit(j))

    def to_dict(self) -> dict:
        return {"L": self.L, "alpha": self.alpha, "J0": self.J0, "N": self.N, "s": self.s}


@dataclass(frozen=True, eq=False)
class WaveletFamily:
    """
    Wavelet and scaling harmonic coefficients for one parameter set.

    Attributes:
        params: WaveletParams
        kernels: KernelTable
        zeta: Directionality
        psi: Complex (J - J0 + 1, L, 2N-1) array, psi[j - J0, l, n + N - 1]
        phi: Real (L,) array of scaling coefficients Phi_l0
    """
    params: WaveletParams
    kernels: KernelTable = field(repr=False)
    zeta: Directionality = field(repr=False)
    psi: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)

    @property
    def L(self) -> int:
        return self.params.L

    @property
    def N(self) -> int:
        return self.params.N

    @property
    def s(self) -> int:
        return self.params.s

    @property
    def scales(self) -> range:
        return self.params.scales

    def wavelet(self, j: int) -> np.ndarray:
        """(L, 2N-1) harmonic coefficients of scale j."""
        if j not in self.scales:
            raise ParameterError(f"Scale j={j} outside [{self.params.J0}, {self.params.J}].")
        return self.psi[j - self.params.J0]

    def wavelet_orders(self, j: int) -> List[int]:
        """Orders n with a non-zero wavelet coefficient at scale j."""
        ns = np.arange(-(self.N - 1), self.N)
        return [int(n) for n in ns[np.any(self.wavelet(j) != 0, axis=0)]]

    def wavelet_harmonics(self, j: int) -> HarmonicCoeffs:
        """Scale j wavelet as a spin-0 coefficient container."""
        L, N = self.L, self.N
        matrix = np.zeros((L, 2 * L - 1), dtype=complex)
        matrix[:, L - N:L + N - 1] = self.wavelet(j)
        return HarmonicCoeffs.from_matrix(matrix, s=0)

    def rotated(self, gamma: float) -> "WaveletFamily":
        """
        Family of wavelets rotated about their own axis by gamma.

        Rotations by (0, 0, gamma) keep the azimuthal band-limit.
        """
        L, N = self.L, self.N
        psi = np.empty_like(self.psi)
        for j in self.scales:
            rotated = rotate_harmonics(self.wavelet_harmonics(j), EulerAngles(0.0, 0.0, gamma))
            psi[j - self.params.J0] = rotated.to_matrix()[:, L - N:L + N - 1]
        return replace(self, psi=psi)


def build_family(params: WaveletParams) -> WaveletFamily:
    """
    Construct the wavelet family for params.

    Args:
        params: WaveletParams

    Returns:
        WaveletFamily
    """
    kernels = kernel_table(params)
    zeta = directionality(params)
    ells = np.arange(params.L)
    psi_norm = np.sqrt((2 * ells + 1) / EIGHT_PI2)
    psi = kernels.wavelet[:, :, None] * (psi_norm[:, None] * zeta.values)[None, :, :]
    phi = np.sqrt((2 * ells + 1) / FOUR_PI) * kernels.scaling
    logger.info(
        "Wavelet family L=%d alpha=%g J0=%d J=%d N=%d s=%d",
        params.L, params.alpha, params.J0, params.J, params.N, params.s
    )
    return WaveletFamily(params=params, kernels=kernels, zeta=zeta, psi=psi, phi=phi)


def admissibility_sum(family: WaveletFamily, exclude: Optional[int] = None) -> np.ndarray:
    """
    Per-degree left-hand side of the resolution of the identity.

    (4pi/(2l+1)) |Phi_l|^2 + (8pi^2/(2l+1)) sum_{j,n} |psi^(j)_ln|^2

    Args:
        family: WaveletFamily
        exclude: Optional scale left out of the sum
    """
    ells = np.arange(family.L)
    total = FOUR_PI / (2 * ells + 1) * np.abs(family.phi) ** 2
    for j in family.scales:
        if j == exclude:
            continue
        energy = np.sum(np.abs(family.wavelet(j)) ** 2, axis=1)
        total = total + EIGHT_PI2 / (2 * ells + 1) * energy
    return total


def check_admissibility(family: WaveletFamily) -> float:
    """Maximum over l of |identity sum - 1|."""
    return float(np.max(np.abs(admissibility_sum(family) - 1.0)))


def tiling(family: WaveletFamily) -> np.ndarray:
    """
    Harmonic tiling rows (l, scaling^2, kappa^(J0)^2, ..., kappa^(J)^2, sum).
    """
    return family.kernels.tiling()
