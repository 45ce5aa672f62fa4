"""
Directional component of the wavelets.

zeta_lm = eta * upsilon * sqrt(binom(p, (p - m)/2) / 2^p) with
eta = 1 (N - 1 even) or i (N - 1 odd), upsilon = 1 when N + m is odd and 0
otherwise, and p = min(N - 1, l - (1 + (-1)^(N+l))/2). Each populated degree
carries N (or fewer, for l < N - 1) orders of the same parity as N - 1 and
is normalised to unit energy.
"""

import numpy as np

from dataclasses import dataclass, field
from scipy.special import comb

from ..exceptions import ParameterError


@dataclass(frozen=True, eq=False)
class Directionality:
    """
    Directional harmonic coefficients.

    Attributes:
        N: Azimuthal band-limit
        values: Complex (L, 2N-1) array, values[l, m + N - 1] = zeta_lm
    """
    N: int
    values: np.ndarray = field(repr=False)

    @property
    def L(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, lm) -> complex:
        ell, m = lm
        if abs(m) >= self.N:
            return 0j
        return self.values[ell, m + self.N - 1]

    def orders(self) -> np.ndarray:
        """Orders m that can be non-zero: |m| < N with N + m odd."""
        ms = np.arange(-(self.N - 1), self.N)
        return ms[(self.N + ms) % 2 == 1]


def directionality(params) -> Directionality:
    """
    Build zeta for params.L and params.N.

    Raises:
        ParameterError: If N < 1
    """
    L, N = params.L, params.N
    if N < 1:
        raise ParameterError(f"Azimuthal band-limit must be positive, got N={N}.")

    eta = 1.0 if (N - 1) % 2 == 0 else 1j
    ms = np.arange(-(N - 1), N)
    upsilon = (N + ms) % 2 == 1
    values = np.zeros((L, 2 * N - 1), dtype=complex)
    for ell in range(L):
        p = min(N - 1, ell - (1 + (-1) ** (N + ell)) // 2)
        if p < 0:
            continue
        keep = upsilon & (np.abs(ms) <= p)
        values[ell, keep] = eta * np.sqrt(comb(p, (p - ms[keep]) // 2) / 2.0 ** p)
    return Directionality(N=N, values=values)
