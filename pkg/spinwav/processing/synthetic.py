"""
Deterministic synthetic test signals.

A signal is a sum of elongated bumps: each bump is a Gaussian profile in l
with a few even azimuthal orders, rotated to a random position and
orientation in harmonic space.
"""

import logging
import numpy as np

from typing import Optional, Sequence

from ..harmonics.sht import EulerAngles, HarmonicCoeffs, rotate_harmonics
from ..exceptions import ParameterError

logger = logging.getLogger(__name__)

# Default parameters
DEFAULT_BUMPS = 12
DEFAULT_WIDTH = 0.15
DEFAULT_ORDERS = {0: 1.0, 2: 0.6, -2: 0.6}


def bump_template(
    L: int,
    s: int,
    width: float,
    orders: Optional[dict] = None
) -> HarmonicCoeffs:
    """
    Bump centred on the north pole with profile exp(-l(l+1) (width/2)^2).

    Args:
        L: Band-limit
        s: Spin number
        width: Angular width in radians
        orders: Mapping m -> weight of the azimuthal orders
    """
    orders = DEFAULT_ORDERS if orders is None else orders
    matrix = np.zeros((L, 2 * L - 1), dtype=complex)
    ells = np.arange(L)
    profile = np.exp(-ells * (ells + 1) * (width / 2) ** 2)
    for m, weight in orders.items():
        if abs(m) >= L:
            continue
        rows = ells >= abs(m)
        matrix[rows, m + L - 1] = weight * profile[rows]
    return HarmonicCoeffs.from_matrix(matrix, s=s)


def synthetic_signal(
    L: int,
    s: int = 2,
    seed: Optional[int] = 0,
    bumps: int = DEFAULT_BUMPS,
    width: float = DEFAULT_WIDTH,
    orders: Optional[dict] = None,
    amplitudes: Optional[Sequence[float]] = None
) -> HarmonicCoeffs:
    """
    Sum of randomly placed and oriented bumps, reproducible from the seed.

    Args:
        L: Band-limit
        s: Spin number, |s| < L
        seed: Seed for numpy's default_rng
        bumps: Number of bumps
        width: Angular width of each bump in radians
        orders: Azimuthal orders of the template, see bump_template
        amplitudes: Optional amplitude per bump, uniform in [0.5, 1.5] otherwise

    Raises:
        ParameterError: If |s| >= L or bumps < 1
    """
    if abs(s) >= L:
        raise ParameterError(f"Spin |s|={abs(s)} must be below L={L}.")
    if bumps < 1:
        raise ParameterError(f"At least one bump is needed, got {bumps}.")
    rng = np.random.default_rng(seed)
    template = bump_template(L, s, width, orders)
    if amplitudes is None:
        amplitudes = rng.uniform(0.5, 1.5, bumps)

    signal = HarmonicCoeffs.zeros(L, s)
    for amplitude in amplitudes[:bumps]:
        rho = EulerAngles(
            alpha=rng.uniform(0, 2 * np.pi),
            beta=np.arccos(rng.uniform(-1, 1)),
            gamma=rng.uniform(0, 2 * np.pi),
        )
        signal = signal + rotate_harmonics(template, rho) * float(amplitude)
    logger.debug("Synthetic signal L=%d s=%d with %d bumps", L, s, bumps)
    return signal
