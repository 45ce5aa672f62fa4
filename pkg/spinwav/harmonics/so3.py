"""
Wigner transforms on the rotation group.

f(alpha, beta, gamma) = sum_lmn (2l+1)/(8pi^2) f^l_mn D^l*_mn(alpha, beta, gamma),
D^l_mn = e^{-i m alpha} d^l_mn(beta) e^{-i n gamma}.

Both directions factor into a 2-d FFT over (gamma, alpha) and, per order n,
a beta projection driven by the d-function recursion. The internal ``_stack``
routines process a batch of functions sharing the same grid so that one
recursion serves several wavelet scales.
"""

import logging
import numpy as np
import concurrent.futures

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Any

from .grid import RotationGrid, build_rotation_grid
from .wigner import iter_wigner_d
from ..exceptions import DimensionError

logger = logging.getLogger(__name__)

# Default parameters
DEFAULT_WORKERS = 1
EIGHT_PI2 = 8 * np.pi ** 2


def wigner_mask(L: int, N: int) -> np.ndarray:
    """Boolean (2N-1, L, 2L-1) mask of the index set |m| <= l, |n| <= min(l, N-1)."""
    ns = np.arange(-(N - 1), N)[:, None, None]
    ells = np.arange(L)[None, :, None]
    ms = np.arange(-(L - 1), L)[None, None, :]
    return (np.abs(ms) <= ells) & (np.abs(ns) <= ells)


@dataclass(frozen=True, eq=False)
class WignerCoeffs:
    """
    Wigner coefficients f^l_mn of a band-limited function on SO(3).

    Attributes:
        L: Band-limit in l
        N: Azimuthal band-limit in n
        values: Complex array (2N-1, L, 2L-1) indexed [n + N - 1, l, m + L - 1];
            entries outside the index set are zeroed on construction
    """
    L: int
    N: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        shape = (2 * self.N - 1, self.L, 2 * self.L - 1)
        if values.shape != shape:
            raise DimensionError(f"Wigner values of shape {values.shape}, expected {shape}.")
        values[~wigner_mask(self.L, self.N)] = 0.0
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, L: int, N: int) -> "WignerCoeffs":
        return cls(L, N, np.zeros((2 * N - 1, L, 2 * L - 1), dtype=complex))

    @classmethod
    def random(cls, L: int, N: int, rng: Optional[np.random.Generator] = None) -> "WignerCoeffs":
        """Coefficients with real and imaginary parts uniform in [-1, 1]."""
        rng = np.random.default_rng() if rng is None else rng
        shape = (2 * N - 1, L, 2 * L - 1)
        return cls(L, N, rng.uniform(-1, 1, shape) + 1j * rng.uniform(-1, 1, shape))

    def __getitem__(self, lmn):
        ell, m, n = lmn
        return self.values[n + self.N - 1, ell, m + self.L - 1]

    def energy(self) -> float:
        """sum (2l+1)/(8pi^2) |f^l_mn|^2, the L2 norm of the function squared."""
        ells = np.arange(self.L)
        norm = (2 * ells + 1) / EIGHT_PI2
        return float(np.sum(norm[None, :, None] * np.abs(self.values) ** 2))


@dataclass(frozen=True, eq=False)
class RotationMap:
    """
    Samples of a function on a RotationGrid, axis order (gamma, beta, alpha).
    """
    grid: RotationGrid
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

    @property
    def N(self) -> int:
        return self.grid.N

    def energy(self) -> float:
        """Quadrature of |f|^2 over SO(3)."""
        grid = self.grid
        cell = (2 * np.pi / grid.alphas.size) * (2 * np.pi / grid.gammas.size)
        return float(cell * np.sum(grid.weights[None, :, None] * np.abs(self.samples) ** 2))


def _run_slices(job, orders: List[int], workers: int) -> None:
    """Run job(n) for every order, on a thread pool when workers > 1."""
    if workers <= 1 or len(orders) <= 1:
        for n in orders:
            job(n)
        return
    logger.debug("Running %d slices on %d threads", len(orders), workers)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(job, n): n for n in orders}
        for future in concurrent.futures.as_completed(futures):
            future.result()


def _inverse_stack(
    values: np.ndarray,
    L: int,
    N: int,
    betas: np.ndarray,
    **kwargs: Any
) -> np.ndarray:
    """
    Inverse Wigner transform of a batch.

    Args:
        values: (B, 2N-1, L, 2L-1) Wigner coefficients
        L, N: Band-limits
        betas: Gauss-Legendre beta nodes
        **kwargs: Additional options
            - workers: Int, threads over n-slices
            - real: Bool, input is conjugate symmetric so only n >= 0 is evaluated

    Returns:
        (B, 2N-1, L, 2L-1) samples, axis order (gamma, beta, alpha)
    """
    workers = kwargs.get("workers", DEFAULT_WORKERS)
    real = kwargs.get("real", False)

    batch = values.shape[0]
    n_alpha, n_gamma = 2 * L - 1, 2 * N - 1
    norm = (2 * np.arange(L) + 1) / EIGHT_PI2
    spectrum = np.zeros((batch, n_gamma, betas.size, n_alpha), dtype=complex)
    m_cols = np.arange(-(L - 1), L) % n_alpha

    orders = [n for n in range(-(N - 1), N) if not (real and n < 0)]
    orders = [n for n in orders if np.any(values[:, n + N - 1])]

    def job(n):
        coeffs = values[:, n + N - 1] * norm[None, :, None]
        acc = np.zeros((batch, betas.size, 2 * L - 1), dtype=complex)
        for ell, d in iter_wigner_d(L - 1, betas, n):
            acc += d[None, :, :] * coeffs[:, ell, None, :]
        spectrum[:, n % n_gamma][:, :, m_cols] = acc
        if real and n > 0:
            # slice(-n)[beta, -m] = conj(slice(n)[beta, m])
            spectrum[:, (-n) % n_gamma][:, :, m_cols] = np.conj(acc[:, :, ::-1])

    _run_slices(job, orders, workers)
    return np.fft.ifft2(spectrum, axes=(1, 3)) * (n_gamma * n_alpha)


def _forward_stack(
    samples: np.ndarray,
    L: int,
    N: int,
    betas: np.ndarray,
    weights: np.ndarray,
    orders: Optional[Iterable[int]] = None,
    **kwargs: Any
) -> np.ndarray:
    """
    Forward Wigner transform of a batch.

    Args:
        samples: (B, 2N-1, L, 2L-1) samples, axis order (gamma, beta, alpha)
        L, N: Band-limits
        betas, weights: Gauss-Legendre beta nodes and weights
        orders: Orders n to compute, all |n| < N when omitted
        **kwargs: Additional options
            - workers: Int, threads over n-slices
            - real: Bool, samples are real so only n >= 0 is projected

    Returns:
        (B, 2N-1, L, 2L-1) Wigner coefficients
    """
    workers = kwargs.get("workers", DEFAULT_WORKERS)
    real = kwargs.get("real", False)

    batch = samples.shape[0]
    n_alpha, n_gamma = 2 * L - 1, 2 * N - 1
    spectrum = np.fft.fft2(samples, axes=(1, 3)) * ((2 * np.pi) ** 2 / (n_alpha * n_gamma))
    m_cols = np.arange(-(L - 1), L) % n_alpha
    values = np.zeros((batch, n_gamma, L, 2 * L - 1), dtype=complex)

    wanted = set(range(-(N - 1), N) if orders is None else orders)
    computed = sorted(n for n in wanted if not (real and n < 0 and -n in wanted))

    def job(n):
        projected = spectrum[:, n % n_gamma][:, :, m_cols] * weights[None, :, None]
        for ell, d in iter_wigner_d(L - 1, betas, n):
            values[:, n + N - 1, ell] = np.einsum("tm,btm->bm", d, projected)

    _run_slices(job, computed, workers)

    if real:
        # f^l_{-m,-n} = (-1)^(m+n) conj(f^l_mn)
        ms = np.arange(-(L - 1), L)
        for n in computed:
            if n > 0 and -n in wanted:
                sign = (-1.0) ** ((ms + n) % 2)
                values[:, -n + N - 1] = sign[None, None, :] * np.conj(values[:, n + N - 1, :, ::-1])
    return values


def inverse_wigner(
    coeffs: WignerCoeffs,
    grid: Optional[RotationGrid] = None,
    **kwargs: Any
) -> RotationMap:
    """
    Sample the Wigner series of coeffs on the SO(3) grid.

    Args:
        coeffs: Wigner coefficients
        grid: Target grid, build_rotation_grid(L, N) when omitted
        **kwargs: Additional options
            - workers: Int, threads over n-slices
            - real: Bool, coefficients satisfy the real-function symmetry

    Raises:
        DimensionError: If coeffs and grid band-limits differ
    """
    grid = build_rotation_grid(coeffs.L, coeffs.N) if grid is None else grid
    if (grid.L, grid.N) != (coeffs.L, coeffs.N):
        raise DimensionError(
            f"Grid (L={grid.L}, N={grid.N}) does not match coefficients "
            f"(L={coeffs.L}, N={coeffs.N})."
        )
    samples = _inverse_stack(coeffs.values[None], grid.L, grid.N, grid.betas, **kwargs)
    return RotationMap(grid=grid, samples=samples[0])


def forward_wigner(
    rotation_map: RotationMap,
    orders: Optional[Iterable[int]] = None,
    **kwargs: Any
) -> WignerCoeffs:
    """
    Project samples on SO(3) onto the Wigner D-functions.

    Exact for band-limited input.

    Args:
        rotation_map: Samples on a RotationGrid
        orders: Orders n to compute; the rest are left at zero
        **kwargs: Additional options
            - workers: Int, threads over n-slices
            - real: Bool, samples are real-valued

    Returns:
        WignerCoeffs with f^l_mn = <f, D^l*_mn>
    """
    grid = rotation_map.grid
    values = _forward_stack(
        rotation_map.samples[None], grid.L, grid.N, grid.betas, grid.weights,
        orders=orders, **kwargs
    )
    return WignerCoeffs(grid.L, grid.N, values[0])
