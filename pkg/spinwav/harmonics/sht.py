"""
Spin spherical harmonic transforms.

Conventions: sY_lm(theta, phi) = (-1)^s sqrt((2l+1)/4pi) e^{i m phi} d^l_{m,-s}(theta),
with the Condon-Shortley phase carried by the Wigner d-functions. Coefficients
are stored flat with index l^2 + l + m.
"""

import numpy as np

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from scipy.spatial.transform import Rotation

from .grid import SphereGrid, build_grid
from .wigner import iter_wigner_d
from ..exceptions import DimensionError, DomainError, ParameterError

FOUR_PI = 4 * np.pi


def lm_index(ell: int, m: int) -> int:
    """Flat index of (ell, m) in a triangular coefficient array."""
    return ell * ell + ell + m


def harmonic_norm(L: int) -> np.ndarray:
    """sqrt((2l+1)/4pi) for l < L."""
    ells = np.arange(L)
    return np.sqrt((2 * ells + 1) / FOUR_PI)


@dataclass(frozen=True, eq=False)
class HarmonicCoeffs:
    """
    Spin spherical harmonic coefficients of a band-limited signal.

    Entries with ell < |s| are forced to zero on construction.

    Attributes:
        L: Band-limit
        s: Spin number
        values: Complex array of length L^2, index ell^2 + ell + m
    """
    L: int
    s: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.L < 1:
            raise ParameterError(f"Band-limit must be positive, got L={self.L}.")
        values = np.array(self.values, dtype=complex).reshape(-1)
        if values.size != self.L * self.L:
            raise DimensionError(
                f"Expected {self.L * self.L} coefficients for L={self.L}, got {values.size}."
            )
        values[:min(abs(self.s), self.L) ** 2] = 0.0
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, L: int, s: int = 0) -> "HarmonicCoeffs":
        return cls(L, s, np.zeros(L * L, dtype=complex))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, s: int = 0) -> "HarmonicCoeffs":
        """Build from an (L, 2L-1) array indexed [ell, m + L - 1]."""
        L = matrix.shape[0]
        if matrix.shape != (L, 2 * L - 1):
            raise DimensionError(f"Matrix shape {matrix.shape} is not (L, 2L-1).")
        ells, ms = _triangle(L)
        return cls(L, s, matrix[ells, ms + L - 1])

    @classmethod
    def random(
        cls,
        L: int,
        s: int = 0,
        rng: Optional[np.random.Generator] = None,
        real: bool = False
    ) -> "HarmonicCoeffs":
        """
        Coefficients with real and imaginary parts uniform in [-1, 1].

        Args:
            L: Band-limit
            s: Spin number
            rng: Random generator, a fresh default_rng() when omitted
            real: Impose f_{l,-m} = (-1)^m conj(f_lm) so the signal is
                real-valued (spin 0 only)

        Raises:
            ParameterError: If real is requested for a non-zero spin
        """
        rng = np.random.default_rng() if rng is None else rng
        values = rng.uniform(-1, 1, L * L) + 1j * rng.uniform(-1, 1, L * L)
        coeffs = cls(L, s, values)
        if real:
            if s != 0:
                raise ParameterError("Real-valued signals require spin 0.")
            coeffs = coeffs.real_part()
        return coeffs

    def to_matrix(self) -> np.ndarray:
        """(L, 2L-1) array indexed [ell, m + L - 1], zero where |m| > ell."""
        L = self.L
        matrix = np.zeros((L, 2 * L - 1), dtype=complex)
        ells, ms = _triangle(L)
        matrix[ells, ms + L - 1] = self.values
        return matrix

    def __getitem__(self, lm):
        ell, m = lm
        if ell < 0 or ell >= self.L or abs(m) > ell:
            raise DomainError(f"(ell={ell}, m={m}) outside band-limit {self.L}.")
        return self.values[lm_index(ell, m)]

    def truncate(self, L: int) -> "HarmonicCoeffs":
        """Coefficients restricted (L <= self.L) or zero-padded (L > self.L)."""
        values = np.zeros(L * L, dtype=complex)
        keep = min(L, self.L) ** 2
        values[:keep] = self.values[:keep]
        return HarmonicCoeffs(L, self.s, values)

    def real_part(self) -> "HarmonicCoeffs":
        """Spin-0 coefficients of Re f."""
        matrix = self.to_matrix()
        ms = np.arange(-(self.L - 1), self.L)
        mirrored = ((-1.0) ** np.abs(ms))[None, :] * np.conj(matrix[:, ::-1])
        return HarmonicCoeffs.from_matrix(0.5 * (matrix + mirrored), s=self.s)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def _check_compatible(self, other: "HarmonicCoeffs") -> None:
        if other.L != self.L or other.s != self.s:
            raise DimensionError(
                f"Incompatible coefficients (L={self.L}, s={self.s}) and "
                f"(L={other.L}, s={other.s})."
            )

    def __add__(self, other: "HarmonicCoeffs") -> "HarmonicCoeffs":
        self._check_compatible(other)
        return HarmonicCoeffs(self.L, self.s, self.values + other.values)

    def __sub__(self, other: "HarmonicCoeffs") -> "HarmonicCoeffs":
        self._check_compatible(other)
        return HarmonicCoeffs(self.L, self.s, self.values - other.values)

    def __mul__(self, scalar) -> "HarmonicCoeffs":
        return HarmonicCoeffs(self.L, self.s, self.values * scalar)

    __rmul__ = __mul__


def _triangle(L: int):
    ells = np.repeat(np.arange(L), 2 * np.arange(L) + 1)
    ms = np.arange(L * L) - ells * ells - ells
    return ells, ms


@dataclass(frozen=True, eq=False)
class SphereMap:
    """
    Samples of a spin signal on a SphereGrid, axis order (theta, phi).
    """
    grid: SphereGrid
    s: int
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        samples = np.array(self.samples, dtype=complex)
        if samples.shape != self.grid.shape:
            raise DimensionError(
                f"Samples of shape {samples.shape} do not match grid {self.grid.shape}."
            )
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def L(self) -> int:
        return self.grid.L

    def energy(self) -> float:
        """Quadrature of |f|^2 over the sphere."""
        dphi = 2 * np.pi / self.grid.n_phi
        return float(dphi * np.sum(self.grid.weights[:, None] * np.abs(self.samples) ** 2))


class EulerAngles(NamedTuple):
    """zyz Euler angles (alpha, beta, gamma) in radians."""
    alpha: float
    beta: float
    gamma: float


def compose_rotations(first: EulerAngles, second: EulerAngles) -> EulerAngles:
    """
    Euler angles of R(first) R(second), i.e. rotate by second and then by first.
    """
    r1 = Rotation.from_euler("ZYZ", list(first))
    r2 = Rotation.from_euler("ZYZ", list(second))
    alpha, beta, gamma = (r1 * r2).as_euler("ZYZ")
    return EulerAngles(alpha % (2 * np.pi), beta, gamma % (2 * np.pi))


def _m_columns(L: int, n_phi: int) -> np.ndarray:
    """FFT column of each order m = -(L-1)..L-1."""
    return np.arange(-(L - 1), L) % n_phi


def _check_spin(L: int, s: int) -> None:
    if abs(s) >= L:
        raise DomainError(f"Spin |s|={abs(s)} must be below the band-limit L={L}.")


def inverse_sht(coeffs: HarmonicCoeffs, grid: Optional[SphereGrid] = None) -> SphereMap:
    """
    Evaluate sum_lm sf_lm sY_lm on the grid nodes.

    Args:
        coeffs: Spin harmonic coefficients
        grid: Target grid, build_grid(coeffs.L) when omitted

    Returns:
        SphereMap of spin coeffs.s

    Raises:
        DimensionError: If the grid band-limit differs from coeffs.L
        DomainError: If |s| >= L
    """
    L, s = coeffs.L, coeffs.s
    grid = build_grid(L) if grid is None else grid
    if grid.L != L:
        raise DimensionError(f"Grid band-limit {grid.L} does not match L={L}.")
    _check_spin(L, s)

    matrix = coeffs.to_matrix() * (((-1.0) ** s) * harmonic_norm(L))[:, None]
    fm = np.zeros((grid.thetas.size, 2 * L - 1), dtype=complex)
    for ell, d in iter_wigner_d(L - 1, grid.thetas, -s):
        fm += d * matrix[ell][None, :]

    spectrum = np.zeros(grid.shape, dtype=complex)
    spectrum[:, _m_columns(L, grid.n_phi)] = fm
    samples = np.fft.ifft(spectrum, axis=1) * grid.n_phi
    return SphereMap(grid=grid, s=s, samples=samples)


def forward_sht(sphere_map: SphereMap) -> HarmonicCoeffs:
    """
    Project a sampled spin signal onto the spin harmonics.

    Exact for band-limited input.

    Raises:
        DimensionError: If the map was not sampled on build_grid(L)
        DomainError: If |s| >= L
    """
    grid = sphere_map.grid
    L, s = grid.L, sphere_map.s
    if grid.thetas.size != L or grid.n_phi < 2 * L - 1:
        raise DimensionError(f"Map is not sampled on the band-limit {L} grid.")
    _check_spin(L, s)

    spectrum = np.fft.fft(sphere_map.samples, axis=1) * (2 * np.pi / grid.n_phi)
    fm = spectrum[:, _m_columns(L, grid.n_phi)] * grid.weights[:, None]

    matrix = np.zeros((L, 2 * L - 1), dtype=complex)
    for ell, d in iter_wigner_d(L - 1, grid.thetas, -s):
        matrix[ell] = np.einsum("tm,tm->m", d, fm)
    matrix *= (((-1.0) ** s) * harmonic_norm(L))[:, None]
    return HarmonicCoeffs.from_matrix(matrix, s=s)


def rotate_harmonics(coeffs: HarmonicCoeffs, rho: EulerAngles) -> HarmonicCoeffs:
    """
    Rotate a signal in harmonic space: (R f)_lm = sum_n D^l_mn(rho) f_ln.

    Args:
        coeffs: Coefficients of the signal
        rho: zyz Euler angles

    Returns:
        Coefficients of the rotated signal, same spin
    """
    L = coeffs.L
    alpha, beta, gamma = rho
    matrix = coeffs.to_matrix()
    out = np.zeros_like(matrix)
    for n in range(-(L - 1), L):
        column = matrix[:, n + L - 1]
        if not np.any(column):
            continue
        phase = np.exp(-1j * n * gamma)
        for ell, d in iter_wigner_d(L - 1, beta, n):
            out[ell] += d[0] * (phase * column[ell])
    ms = np.arange(-(L - 1), L)
    out *= np.exp(-1j * ms * alpha)[None, :]
    return HarmonicCoeffs.from_matrix(out, s=coeffs.s)
