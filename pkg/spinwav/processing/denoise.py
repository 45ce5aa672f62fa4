"""
Hard-thresholding wavelet denoiser for spin signals.

White noise with per-coefficient standard deviation sigma maps to wavelet
coefficients of scale j with standard deviation
sigma_j = sigma * sqrt(sum_{l >= |s|, n} |psi^(j)_ln|^2). Coefficients with
|W| < 3 sigma_j are zeroed; scaling coefficients are kept.
"""

import logging
import numpy as np
import pywt

from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

from ..harmonics.sht import HarmonicCoeffs
from ..harmonics.so3 import RotationMap
from ..wavelets.family import WaveletFamily
from ..wavelets.transform import WaveletCoefficients, analyze, synthesize
from ..exceptions import DimensionError, ParameterError

logger = logging.getLogger(__name__)

# Default parameters
DEFAULT_THRESHOLD_FACTOR = 3.0
DEFAULT_MULTIRES = True


@dataclass(frozen=True)
class NoiseModel:
    """
    White Gaussian noise in harmonic space.

    Attributes:
        sigma: Standard deviation of each complex harmonic coefficient
    """
    sigma: float

    def __post_init__(self):
        if self.sigma < 0:
            raise ParameterError(f"Noise level must be non-negative, got sigma={self.sigma}.")


@dataclass(frozen=True, eq=False)
class ThresholdPlan:
    """
    Per-scale noise levels and thresholds.

    Attributes:
        scales: Scale indices J0..J
        sigmas: Noise standard deviation of the wavelet coefficients per scale
        thresholds: Hard thresholds per scale
    """
    scales: List[int]
    sigmas: np.ndarray = field(repr=False)
    thresholds: np.ndarray = field(repr=False)

    def threshold(self, j: int) -> float:
        return float(self.thresholds[self.scales.index(j)])

    def to_dict(self) -> dict:
        return {
            "scales": list(self.scales),
            "sigmas": [float(x) for x in self.sigmas],
            "thresholds": [float(x) for x in self.thresholds],
        }


def snr(x: HarmonicCoeffs, y: HarmonicCoeffs) -> float:
    """
    Signal-to-noise ratio of y against the clean signal x, in decibels.

    Returns:
        float: 10 log10(||x||^2 / ||y - x||^2), +inf when y equals x

    Raises:
        DimensionError: If (L, s) differ
    """
    if (x.L, x.s) != (y.L, y.s):
        raise DimensionError(f"Cannot compare (L={x.L}, s={x.s}) with (L={y.L}, s={y.s}).")
    residual = (y - x).energy()
    if residual == 0:
        return float("inf")
    return float(10 * np.log10(x.energy() / residual))


def noise_sigma_per_scale(
    family: WaveletFamily,
    sigma: float,
    factor: float = DEFAULT_THRESHOLD_FACTOR
) -> ThresholdPlan:
    """
    Noise level of the wavelet coefficients of each scale.

    Args:
        family: WaveletFamily
        sigma: Harmonic noise standard deviation
        factor: Threshold in units of the scale noise level

    Returns:
        ThresholdPlan with thresholds factor * sigma_j
    """
    NoiseModel(sigma)
    low = min(abs(family.s), family.L)
    scales = list(family.scales)
    sigmas = np.array([
        sigma * np.sqrt(np.sum(np.abs(family.wavelet(j)[low:]) ** 2)) for j in scales
    ])
    return ThresholdPlan(scales=scales, sigmas=sigmas, thresholds=factor * sigmas)


def hard_threshold(
    w: WaveletCoefficients,
    plan: ThresholdPlan
) -> Tuple[WaveletCoefficients, List[int]]:
    """
    Zero wavelet coefficients whose magnitude is below the scale threshold.

    Returns:
        Tuple (thresholded coefficients, surviving coefficient count per scale)
    """
    scales = []
    survivors = []
    for j, rotation_map in zip(w.params.scales, w.scales):
        t = plan.threshold(j)
        kept = pywt.threshold(rotation_map.samples, t, mode="hard")
        scales.append(RotationMap(grid=rotation_map.grid, samples=kept))
        survivors.append(int(np.count_nonzero(np.abs(rotation_map.samples) >= t)))
    return w.replace_scales(scales), survivors


@dataclass(frozen=True, eq=False)
class DenoiseResult:
    """
    Denoised harmonics with the plan and survivor counts that produced them.
    """
    coeffs: HarmonicCoeffs
    plan: ThresholdPlan
    survivors: List[int]
    totals: List[int]

    def to_dict(self) -> dict:
        report = self.plan.to_dict()
        report["survivors"] = list(self.survivors)
        report["totals"] = list(self.totals)
        return report


def denoise_with_report(
    y: HarmonicCoeffs,
    family: WaveletFamily,
    model: NoiseModel,
    **kwargs: Any
) -> DenoiseResult:
    """
    Denoise y and keep the threshold bookkeeping.

    Args:
        y: Noisy harmonic coefficients
        family: WaveletFamily with the same L and s
        model: NoiseModel
        **kwargs: Additional options
            - multires: Bool, threshold multiresolution coefficients (default True)
            - workers: Int, threads over n-slices
    """
    multires = kwargs.pop("multires", DEFAULT_MULTIRES)
    plan = noise_sigma_per_scale(family, model.sigma)
    w = analyze(y, family, multires=multires, **kwargs)
    kept, survivors = hard_threshold(w, plan)
    totals = [m.samples.size for m in w.scales]
    coeffs = synthesize(kept, family, **kwargs)
    logger.info(
        "Denoised with sigma=%g: %d of %d wavelet coefficients kept",
        model.sigma, sum(survivors), sum(totals)
    )
    return DenoiseResult(coeffs=coeffs, plan=plan, survivors=survivors, totals=totals)


def denoise(
    y: HarmonicCoeffs,
    family: WaveletFamily,
    model: NoiseModel,
    **kwargs: Any
) -> HarmonicCoeffs:
    """
    Hard-threshold denoising: synthesize(threshold(analyze(y))).
    """
    return denoise_with_report(y, family, model, **kwargs).coeffs


def add_noise(
    x: HarmonicCoeffs,
    snr_db: float,
    seed: Optional[int] = None
) -> Tuple[HarmonicCoeffs, NoiseModel]:
    """
    Add white complex Gaussian noise so that snr(x, y) equals snr_db exactly.

    Args:
        x: Clean coefficients
        snr_db: Target input SNR in decibels
        seed: Seed for numpy's default_rng

    Returns:
        Tuple (noisy coefficients, NoiseModel with the nominal sigma)
    """
    rng = np.random.default_rng(seed)
    size = x.L * x.L
    noise = HarmonicCoeffs(
        x.L, x.s,
        (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)
    )
    target = x.energy() / 10 ** (snr_db / 10)
    noise = noise * np.sqrt(target / noise.energy())
    count = size - min(abs(x.s), x.L) ** 2
    return x + noise, NoiseModel(sigma=float(np.sqrt(target / count)))
