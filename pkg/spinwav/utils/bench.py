"""
Accuracy and timing harness for the wavelet round trip.

Each trial draws harmonic coefficients with real and imaginary parts uniform
in [-1, 1], runs analysis followed by synthesis and records the maximum
absolute coefficient error and the wall-clock time. Timings are averaged
over trials.
"""

import logging
import time
import numpy as np

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from ..harmonics.sht import HarmonicCoeffs
from ..wavelets.family import WaveletParams, build_family
from ..wavelets.transform import analyze, synthesize
from ..exceptions import ParameterError

logger = logging.getLogger(__name__)

# Default parameters
DEFAULT_TRIALS = 10
DEFAULT_SEED = 0


@dataclass
class BenchEntry:
    """
    Round-trip results for one parameter set.

    Attributes:
        L: Band-limit
        multires: Whether multiresolution analysis was used
        errors: Maximum absolute harmonic error per trial
        times: Round-trip wall-clock seconds per trial
        energy_errors: Relative energy identity residual per trial
    """
    L: int
    multires: bool
    errors: List[float] = field(default_factory=list)
    times: List[float] = field(default_factory=list)
    energy_errors: List[float] = field(default_factory=list)

    @property
    def trials(self) -> int:
        return len(self.errors)

    @property
    def mean_error(self) -> float:
        return float(np.mean(self.errors))

    @property
    def max_error(self) -> float:
        return float(np.max(self.errors))

    @property
    def mean_time(self) -> float:
        return float(np.mean(self.times))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "L": self.L,
            "multires": self.multires,
            "trials": self.trials,
            "errors": list(self.errors),
            "energy_errors": list(self.energy_errors),
            "times": list(self.times),
            "mean_error": self.mean_error,
            "max_error": self.max_error,
            "mean_time": self.mean_time,
        }


@dataclass
class BenchReport:
    """
    Collection of round-trip results with the parameters that produced them.
    """
    params: Dict[str, Any]
    entries: List[BenchEntry] = field(default_factory=list)

    def entry(self, L: int, multires: bool = False) -> Optional[BenchEntry]:
        for item in self.entries:
            if item.L == L and item.multires == multires:
                return item
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {"params": dict(self.params), "entries": [e.to_dict() for e in self.entries]}


def roundtrip_entry(
    params: WaveletParams,
    trials: int = DEFAULT_TRIALS,
    seed: Optional[int] = DEFAULT_SEED,
    multires: bool = False,
    **kwargs: Any
) -> BenchEntry:
    """
    Run `trials` random round trips for params.

    Raises:
        ParameterError: If trials < 1
    """
    if trials < 1:
        raise ParameterError(f"At least one trial is needed, got trials={trials}.")
    family = build_family(params)
    rng = np.random.default_rng(seed)
    entry = BenchEntry(L=params.L, multires=multires)
    for trial in range(trials):
        f = HarmonicCoeffs.random(params.L, params.s, rng)
        start = time.perf_counter()
        w = analyze(f, family, multires=multires, **kwargs)
        g = synthesize(w, family, **kwargs)
        entry.times.append(time.perf_counter() - start)
        entry.errors.append(float(np.max(np.abs(g.values - f.values))))
        entry.energy_errors.append(abs(w.energy() - f.energy()) / f.energy())
        logger.debug("L=%d trial %d error %.3e", params.L, trial, entry.errors[-1])
    return entry


def run_roundtrip(
    L: int,
    s: int,
    N: int,
    alpha: float,
    J0: int,
    trials: int = DEFAULT_TRIALS,
    seed: Optional[int] = DEFAULT_SEED,
    multires: bool = False,
    **kwargs: Any
) -> BenchReport:
    """Round-trip accuracy report for a single band-limit."""
    params = WaveletParams(L=L, alpha=alpha, J0=J0, N=N, s=s)
    report = BenchReport(params={**params.to_dict(), "trials": trials, "seed": seed})
    report.entries.append(roundtrip_entry(params, trials, seed, multires, **kwargs))
    return report


def run_bench(
    Ls: Sequence[int],
    s: int,
    N: int,
    alpha: float,
    J0: int,
    trials: int = DEFAULT_TRIALS,
    seed: Optional[int] = DEFAULT_SEED,
    **kwargs: Any
) -> BenchReport:
    """
    Timing sweep over band-limits, full resolution against multiresolution.
    """
    report = BenchReport(params={"s": s, "N": N, "alpha": alpha, "J0": J0,
                                 "trials": trials, "seed": seed, "L": list(Ls)})
    for L in Ls:
        params = WaveletParams(L=L, alpha=alpha, J0=J0, N=N, s=s)
        for multires in (False, True):
            entry = roundtrip_entry(params, trials, seed, multires, **kwargs)
            report.entries.append(entry)
            logger.info(
                "L=%d multires=%s mean error %.3e mean time %.3f s",
                L, multires, entry.mean_error, entry.mean_time
            )
    return report
