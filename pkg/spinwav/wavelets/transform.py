"""
Directional spin wavelet analysis and synthesis.

Analysis forms the Wigner coefficients
    W^l_mn = 8pi^2/(2l+1) f_lm conj(psi^(j)_ln)
for every scale and samples them on SO(3); the scaling coefficients are the
spin-0 map with harmonics sqrt(4pi/(2l+1)) f_lm Phi_l. Synthesis projects the
samples back and sums f_lm = sum_jn W^l_mn psi_ln + sqrt(4pi/(2l+1)) W^Phi_lm Phi_l.

Scales sharing the same (L_j, N_j) are processed as one batch so that the
d-function recursion is run once per group.
"""

import logging
import time
import numpy as np

from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from .family import WaveletFamily, WaveletParams
from ..harmonics.grid import build_grid, build_rotation_grid
from ..harmonics.sht import HarmonicCoeffs, SphereMap, forward_sht, inverse_sht
from ..harmonics.so3 import RotationMap, _forward_stack, _inverse_stack
from ..exceptions import DimensionError, ParameterError

logger = logging.getLogger(__name__)

EIGHT_PI2 = 8 * np.pi ** 2
FOUR_PI = 4 * np.pi


@dataclass(frozen=True, eq=False)
class WaveletCoefficients:
    """
    Wavelet and scaling coefficients of one signal.

    Attributes:
        params: WaveletParams of the analysing family
        scales: RotationMap per scale j = J0..J, possibly at reduced band-limit
        scaling: Spin-0 SphereMap of scaling coefficients
        multires: Whether scales are carried at their own band-limits
    """
    params: WaveletParams
    scales: List[RotationMap] = field(repr=False)
    scaling: SphereMap = field(repr=False)
    multires: bool = False

    def scale(self, j: int) -> RotationMap:
        if j not in self.params.scales:
            raise ParameterError(f"Scale j={j} outside [{self.params.J0}, {self.params.J}].")
        return self.scales[j - self.params.J0]

    def energy(self) -> float:
        """Quadrature energy of all wavelet and scaling coefficients."""
        return sum(w.energy() for w in self.scales) + self.scaling.energy()

    def replace_scales(self, scales: List[RotationMap]) -> "WaveletCoefficients":
        return WaveletCoefficients(self.params, list(scales), self.scaling, self.multires)


def _scale_limits(params: WaveletParams, multires: bool) -> Dict[int, Tuple[int, int]]:
    if not multires:
        return {j: (params.L, params.N) for j in params.scales}
    return {j: (params.band_limit(j), params.nband(j)) for j in params.scales}


def _group_scales(limits: Dict[int, Tuple[int, int]]) -> "OrderedDict[Tuple[int, int], List[int]]":
    groups = OrderedDict()
    for j, key in limits.items():
        groups.setdefault(key, []).append(j)
    return groups


def _check_signal(f: HarmonicCoeffs, family: WaveletFamily) -> None:
    if f.L != family.L:
        raise DimensionError(f"Signal band-limit {f.L} does not match family L={family.L}.")
    if f.s != family.s:
        raise ParameterError(f"Signal spin {f.s} does not match family spin {family.s}.")


def _restrict(family: WaveletFamily, j: int, Lj: int, Nj: int) -> np.ndarray:
    N = family.N
    return family.wavelet(j)[:Lj, N - Nj:N + Nj - 1]


def _analyze(f: HarmonicCoeffs, family: WaveletFamily, multires: bool, **kwargs: Any) -> WaveletCoefficients:
    real = kwargs.get("real", False)
    if real and f.s != 0:
        raise ParameterError("The real-signal path requires spin 0.")
    _check_signal(f, family)
    params = family.params
    L = params.L
    matrix = f.to_matrix()
    start = time.perf_counter()

    limits = _scale_limits(params, multires)
    scales: Dict[int, RotationMap] = {}
    for (Lj, Nj), group in _group_scales(limits).items():
        ells = np.arange(Lj)
        fm = matrix[:Lj, L - Lj:L + Lj - 1] * (EIGHT_PI2 / (2 * ells + 1))[:, None]
        values = np.stack([
            np.einsum("lm,ln->nlm", fm, np.conj(_restrict(family, j, Lj, Nj)))
            for j in group
        ])
        grid = build_rotation_grid(Lj, Nj)
        samples = _inverse_stack(values, Lj, Nj, grid.betas, **kwargs)
        for j, sample in zip(group, samples):
            scales[j] = RotationMap(grid=grid, samples=sample)
        logger.debug("Analysed scales %s at L=%d N=%d", group, Lj, Nj)

    L_phi = params.scaling_band_limit() if multires else L
    ells = np.arange(L_phi)
    scaling_matrix = matrix[:L_phi, L - L_phi:L + L_phi - 1] \
        * (np.sqrt(FOUR_PI / (2 * ells + 1)) * family.phi[:L_phi])[:, None]
    scaling = inverse_sht(HarmonicCoeffs.from_matrix(scaling_matrix, s=0), build_grid(L_phi))

    logger.debug("Analysis took %.3f s", time.perf_counter() - start)
    return WaveletCoefficients(
        params=params,
        scales=[scales[j] for j in params.scales],
        scaling=scaling,
        multires=multires,
    )


def analyze(f: HarmonicCoeffs, family: WaveletFamily, **kwargs: Any) -> WaveletCoefficients:
    """
    Wavelet and scaling coefficients of f at full resolution.

    Args:
        f: Spin-s harmonic coefficients, same L and s as the family
        family: WaveletFamily
        **kwargs: Additional options
            - multires: Bool, carry scales at reduced band-limits
            - workers: Int, threads over n-slices
            - real: Bool, f is a real spin-0 signal

    Returns:
        WaveletCoefficients

    Raises:
        DimensionError: If the band-limits differ
        ParameterError: If the spins differ
    """
    multires = kwargs.pop("multires", False)
    return _analyze(f, family, multires, **kwargs)


def analyze_multires(f: HarmonicCoeffs, family: WaveletFamily, **kwargs: Any) -> WaveletCoefficients:
    """
    Wavelet analysis with scale j carried at L_j = min(ceil(alpha^(j+1)), L).

    Scales whose L_j is below N carry N_j = L_j orientations.
    """
    kwargs.pop("multires", None)
    return _analyze(f, family, True, **kwargs)


def synthesize(w: WaveletCoefficients, family: WaveletFamily, **kwargs: Any) -> HarmonicCoeffs:
    """
    Reconstruct the signal harmonics from wavelet and scaling coefficients.

    Args:
        w: WaveletCoefficients from analyze or analyze_multires with this family
        family: WaveletFamily
        **kwargs: Additional options
            - workers: Int, threads over n-slices
            - real: Bool, coefficients of a real spin-0 signal

    Raises:
        DimensionError: If w does not have the layout the family produces
        ParameterError: If w was analysed with different wavelet parameters
    """
    params = family.params
    L = params.L
    limits = _scale_limits(params, w.multires)
    if len(w.scales) != len(limits):
        raise DimensionError(f"Expected {len(limits)} scales, got {len(w.scales)}.")
    for j, (Lj, Nj) in limits.items():
        grid = w.scale(j).grid
        if (grid.L, grid.N) != (Lj, Nj):
            raise DimensionError(
                f"Scale {j} sampled at (L={grid.L}, N={grid.N}), expected (L={Lj}, N={Nj})."
            )
    if w.params != params:
        raise ParameterError(f"Coefficients analysed with {w.params}, family has {params}.")

    out = np.zeros((L, 2 * L - 1), dtype=complex)
    for (Lj, Nj), group in _group_scales(limits).items():
        grid = build_rotation_grid(Lj, Nj)
        psi = np.stack([_restrict(family, j, Lj, Nj) for j in group])
        orders = [n for n in range(-(Nj - 1), Nj) if np.any(psi[:, :, n + Nj - 1])]
        samples = np.stack([w.scale(j).samples for j in group])
        values = _forward_stack(samples, Lj, Nj, grid.betas, grid.weights, orders=orders, **kwargs)
        out[:Lj, L - Lj:L + Lj - 1] += np.einsum("bnlm,bln->lm", values, psi)

    scaling = forward_sht(w.scaling)
    L_phi = scaling.L
    if L_phi > L:
        raise DimensionError(f"Scaling band-limit {L_phi} exceeds L={L}.")
    ells = np.arange(L_phi)
    out[:L_phi, L - L_phi:L + L_phi - 1] += scaling.to_matrix() \
        * (np.sqrt(FOUR_PI / (2 * ells + 1)) * family.phi[:L_phi])[:, None]
    return HarmonicCoeffs.from_matrix(out, s=params.s)
