"""
Spin-2 polarisation utilities.

Harmonic relations between the spin +-2 Stokes combinations and the parity
even and odd scalars:

    +2a_lm = -(E_lm + i B_lm),   -2a_lm = -(E_lm - i B_lm)

The derivative-weighted scalars carry the factor sqrt((l+2)!/(l-2)!):
E~_lm = F_l E_lm, B~_lm = F_l B_lm. Spin raising and lowering act on
coefficients as

    ebar sY_lm = -sqrt((l+s)(l-s+1)) (s-1)Y_lm
    eth  sY_lm =  sqrt((l-s)(l+s+1)) (s+1)Y_lm
"""

import logging
import numpy as np

from dataclasses import dataclass, replace
from typing import Any, List, Tuple

from ..harmonics.sht import HarmonicCoeffs
from ..harmonics.so3 import RotationMap
from ..wavelets.family import WaveletFamily
from ..wavelets.transform import analyze
from ..exceptions import DimensionError, ParameterError

logger = logging.getLogger(__name__)

PHYSICAL = "physical"
TILDE = "tilde"


def tilde_factor(L: int) -> np.ndarray:
    """sqrt((l+2)!/(l-2)!) for l < L, zero for l < 2."""
    ells = np.arange(L, dtype=float)
    factor = np.zeros(L)
    high = ells >= 2
    factor[high] = np.sqrt((ells[high] - 1) * ells[high] * (ells[high] + 1) * (ells[high] + 2))
    return factor


def _scale_rows(coeffs: HarmonicCoeffs, row_factor: np.ndarray, s: int) -> HarmonicCoeffs:
    matrix = coeffs.to_matrix() * row_factor[:, None]
    return HarmonicCoeffs.from_matrix(matrix, s=s)


@dataclass(frozen=True, eq=False)
class StokesQU:
    """
    Harmonic coefficients of Q + iU (spin +2) and Q - iU (spin -2).
    """
    plus: HarmonicCoeffs
    minus: HarmonicCoeffs

    def __post_init__(self):
        if self.plus.s != 2 or self.minus.s != -2:
            raise ParameterError(
                f"Expected spins (+2, -2), got ({self.plus.s}, {self.minus.s})."
            )
        if self.plus.L != self.minus.L:
            raise DimensionError(
                f"Band-limits differ: {self.plus.L} and {self.minus.L}."
            )

    @property
    def L(self) -> int:
        return self.plus.L


@dataclass(frozen=True, eq=False)
class EBPair:
    """
    Parity even and odd scalar coefficients.

    Attributes:
        E: Spin-0 coefficients
        B: Spin-0 coefficients
        variant: "physical" for (E, B), "tilde" for (E~, B~)
    """
    E: HarmonicCoeffs
    B: HarmonicCoeffs
    variant: str = PHYSICAL

    def __post_init__(self):
        if self.variant not in (PHYSICAL, TILDE):
            raise ParameterError(f"Unknown variant '{self.variant}'.")
        if self.E.L != self.B.L:
            raise DimensionError(f"Band-limits differ: {self.E.L} and {self.B.L}.")

    @property
    def L(self) -> int:
        return self.E.L

    def to_tilde(self) -> "EBPair":
        if self.variant == TILDE:
            return self
        factor = tilde_factor(self.L)
        return EBPair(_scale_rows(self.E, factor, 0), _scale_rows(self.B, factor, 0), TILDE)

    def to_physical(self) -> "EBPair":
        if self.variant == PHYSICAL:
            return self
        factor = tilde_factor(self.L)
        inverse = np.zeros_like(factor)
        inverse[factor > 0] = 1.0 / factor[factor > 0]
        return EBPair(_scale_rows(self.E, inverse, 0), _scale_rows(self.B, inverse, 0), PHYSICAL)


def qu_to_eb(qu: StokesQU, variant: str = PHYSICAL) -> EBPair:
    """
    E_lm = -(+2a_lm + -2a_lm)/2, B_lm = i(+2a_lm - -2a_lm)/2.

    Args:
        qu: StokesQU
        variant: "physical" or "tilde" for the derivative-weighted pair
    """
    plus, minus = qu.plus.values, qu.minus.values
    low = min(2, qu.L) ** 2
    e = -(plus + minus) / 2
    b = 1j * (plus - minus) / 2
    e[:low] = 0.0
    b[:low] = 0.0
    pair = EBPair(HarmonicCoeffs(qu.L, 0, e), HarmonicCoeffs(qu.L, 0, b), PHYSICAL)
    return pair.to_tilde() if variant == TILDE else pair


def eb_to_qu(eb: EBPair) -> StokesQU:
    """Inverse of qu_to_eb: +2a = -(E + iB), -2a = -(E - iB)."""
    physical = eb.to_physical()
    e, b = physical.E.values, physical.B.values
    return StokesQU(
        plus=HarmonicCoeffs(eb.L, 2, -(e + 1j * b)),
        minus=HarmonicCoeffs(eb.L, -2, -(e - 1j * b)),
    )


def spin_lower_harmonic(coeffs: HarmonicCoeffs, times: int = 1) -> HarmonicCoeffs:
    """
    Apply the spin lowering operator ebar `times` times in harmonic space.

    Rows with l below the new |s| vanish.

    Raises:
        ParameterError: If times is negative
    """
    if times < 0:
        raise ParameterError(f"Number of applications must be non-negative, got {times}.")
    ells = np.arange(coeffs.L, dtype=float)
    out = coeffs
    for _ in range(times):
        s = out.s
        factor = -np.sqrt(np.maximum((ells + s) * (ells - s + 1), 0.0))
        out = _scale_rows(out, factor, s - 1)
    return out


def spin_raise_harmonic(coeffs: HarmonicCoeffs, times: int = 1) -> HarmonicCoeffs:
    """
    Apply the spin raising operator eth `times` times in harmonic space.

    Raises:
        ParameterError: If times is negative
    """
    if times < 0:
        raise ParameterError(f"Number of applications must be non-negative, got {times}.")
    ells = np.arange(coeffs.L, dtype=float)
    out = coeffs
    for _ in range(times):
        s = out.s
        factor = np.sqrt(np.maximum((ells - s) * (ells + s + 1), 0.0))
        out = _scale_rows(out, factor, s + 1)
    return out


def lowered_family(family: WaveletFamily) -> WaveletFamily:
    """
    Scalar family whose twice spin-raised wavelets are the spin-2 wavelets.

    Its coefficients are psi_ln / sqrt((l+2)!/(l-2)!), zero for l < 2, so
    eth^2 maps it back onto psi. It analyses the derivative-weighted
    scalars E~ and B~, not the physical E and B.

    Raises:
        ParameterError: If the family is not spin 2
    """
    if family.s != 2:
        raise ParameterError(f"Spin lowering connects spin-2 families, got s={family.s}.")
    factor = tilde_factor(family.L)
    inverse = np.zeros_like(factor)
    inverse[factor > 0] = 1.0 / factor[factor > 0]
    psi = family.psi * inverse[None, :, None]
    return replace(family, params=replace(family.params, s=0), psi=psi)


def eb_wavelet_connection(
    qu: StokesQU,
    family: WaveletFamily,
    **kwargs: Any
) -> Tuple[List[RotationMap], List[RotationMap]]:
    """
    Scalar E~ and B~ wavelet coefficients from the spin-2 transform.

    W_E~ = -Re W_{+2(Q+iU)}, W_B~ = -Im W_{+2(Q+iU)}, per scale. They equal the
    scalar transforms of E~ and B~ with lowered_family(family).

    Args:
        qu: StokesQU of a real polarisation field
        family: Spin-2 WaveletFamily
        **kwargs: Passed on to analyze

    Returns:
        Tuple (e_maps, b_maps) of per-scale RotationMap lists

    Raises:
        ParameterError: If the family is not spin 2
    """
    if family.s != 2:
        raise ParameterError(f"The E/B connection needs a spin-2 family, got s={family.s}.")
    w = analyze(qu.plus, family, **kwargs)
    e_maps = [RotationMap(grid=m.grid, samples=-m.samples.real) for m in w.scales]
    b_maps = [RotationMap(grid=m.grid, samples=-m.samples.imag) for m in w.scales]
    logger.debug("E/B connection over %d scales", len(e_maps))
    return e_maps, b_maps
