"""
Wigner d-functions by three-term recursion in the degree.

The recursion runs upward in ell at fixed second order n, for every first
order m and every requested angle at once. Seeds are the closed-form values at
ell0 = max(|m|, |n|), computed in log space so that tiny seeds near the poles
do not underflow. Mantissas carry a per-entry log scale and are renormalised
whenever they grow past ``BIG``.
"""

import numpy as np

from dataclasses import dataclass
from typing import Iterator, Tuple
from scipy.special import gammaln

from ..exceptions import DomainError

BIG = 1.0e100
LOG_BIG = np.log(BIG)
ANGLE_TOL = 1.0e-12


def _pow_log(power: np.ndarray, log_x: np.ndarray) -> np.ndarray:
    """Return power * log_x with 0 * log(0) taken as 0."""
    with np.errstate(invalid="ignore"):
        out = power * log_x
    return np.where(power == 0, 0.0, out)


def _check_betas(betas) -> np.ndarray:
    betas = np.atleast_1d(np.asarray(betas, dtype=float))
    if betas.ndim != 1:
        raise DomainError("Angles must be a scalar or a 1-d array.")
    if not np.all(np.isfinite(betas)):
        raise DomainError("Angle beta must be finite.")
    if np.any(betas < -ANGLE_TOL) or np.any(betas > np.pi + ANGLE_TOL):
        raise DomainError("Angle beta must lie in [0, pi].")
    return np.clip(betas, 0.0, np.pi)


def _seed_log_values(
    ell_max: int,
    n: int,
    log_cos: np.ndarray,
    log_sin: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Closed-form d^{ell0}_{mn} for every m, as sign and log magnitude.

    Args:
        ell_max: Maximum degree, fixes the m range [-ell_max, ell_max]
        n: Second order
        log_cos: log cos(beta/2), shape (nb, 1)
        log_sin: log sin(beta/2), shape (nb, 1)

    Returns:
        Tuple (ell0, sign, log_mag) with ell0 and sign of shape (M,) and
        log_mag of shape (nb, M)
    """
    ms = np.arange(-ell_max, ell_max + 1)
    ell0 = np.maximum(np.abs(ms), abs(n))

    m_major = np.abs(ms) >= abs(n)
    # Powers of cos and sin, index k of the binomial and overall sign
    a = np.where(
        m_major,
        np.where(ms >= 0, ell0 + n, ell0 - n),
        np.where(n > 0, ell0 + ms, ell0 - ms)
    )
    b = np.where(
        m_major,
        np.where(ms >= 0, ell0 - n, ell0 + n),
        np.where(n > 0, ell0 - ms, ell0 + ms)
    )
    k = np.where(m_major, n, ms)
    odd = np.where(
        m_major,
        np.where(ms >= 0, ell0 - n, 0),
        np.where(n > 0, 0, ms + ell0)
    )
    sign = np.where(odd % 2 == 0, 1.0, -1.0)

    log_c = 0.5 * (
        gammaln(2 * ell0 + 1) - gammaln(ell0 + k + 1) - gammaln(ell0 - k + 1)
    )
    log_mag = log_c[None, :] + _pow_log(a[None, :], log_cos) \
        + _pow_log(b[None, :], log_sin)
    return ell0, sign, log_mag


def iter_wigner_d(
    ell_max: int,
    betas,
    n: int
) -> Iterator[Tuple[int, np.ndarray]]:
    """
    Iterate d^ell_{mn}(beta) over ell = |n|, ..., ell_max.

    Args:
        ell_max: Maximum degree
        betas: Angle or 1-d array of angles in [0, pi]
        n: Fixed second order, |n| <= ell_max

    Yields:
        Tuple (ell, d) where d has shape (len(betas), 2*ell_max + 1) and
        d[:, m + ell_max] = d^ell_{mn}(beta); entries with |m| > ell are zero

    Raises:
        DomainError: If an angle is outside [0, pi] or |n| > ell_max
    """
    if ell_max < 0:
        raise DomainError("ell_max must be non-negative.")
    if abs(n) > ell_max:
        raise DomainError(f"Order n={n} exceeds ell_max={ell_max}.")
    betas = _check_betas(betas)

    with np.errstate(divide="ignore"):
        log_cos = np.log(np.cos(betas / 2))[:, None]
        log_sin = np.log(np.sin(betas / 2))[:, None]
    cos_b = np.cos(betas)[:, None]

    ms = np.arange(-ell_max, ell_max + 1)
    ell0, sign, log_mag = _seed_log_values(ell_max, n, log_cos, log_sin)

    shape = (betas.size, ms.size)
    cur = np.zeros(shape)
    prev = np.zeros(shape)
    log_scale = np.zeros(shape)
    scale = np.ones(shape)

    for ell in range(abs(n), ell_max + 1):
        if ell > abs(n):
            lo = ell - 1
            active = ell0 <= lo
            ma = ms[active].astype(float)
            denom = np.sqrt(((lo + 1) ** 2 - ma ** 2) * ((lo + 1) ** 2 - n ** 2))
            c1 = (lo + 1) * (2 * lo + 1) / denom
            if lo > 0:
                shift = ma * n / (lo * (lo + 1))
                c2 = (lo + 1) * np.sqrt((lo ** 2 - ma ** 2) * (lo ** 2 - n ** 2)) \
                    / (lo * denom)
            else:
                shift = np.zeros_like(ma)
                c2 = np.zeros_like(ma)
            nxt = c1 * (cos_b - shift) * cur[:, active] - c2 * prev[:, active]
            prev[:, active] = cur[:, active]
            cur[:, active] = nxt

        refresh = False
        seeds = ell0 == ell
        if np.any(seeds):
            seed_log = log_mag[:, seeds]
            finite = np.isfinite(seed_log)
            cur[:, seeds] = np.where(finite, sign[seeds], 0.0)
            prev[:, seeds] = 0.0
            log_scale[:, seeds] = np.where(finite, seed_log, 0.0)
            refresh = True

        big = np.abs(cur) > BIG
        if np.any(big):
            cur[big] /= BIG
            prev[big] /= BIG
            log_scale[big] += LOG_BIG
            refresh = True

        if refresh:
            scale = np.exp(log_scale)
        yield ell, cur * scale


@dataclass(frozen=True, eq=False)
class WignerDTable:
    """
    Table of d^ell_{mn}(beta) at one angle and one second order n.

    Attributes:
        ell_max: Maximum degree
        beta: Angle in [0, pi]
        n: Second order
        values: Array (ell_max + 1, 2*ell_max + 1), values[ell, m + ell_max]
    """
    ell_max: int
    beta: float
    n: int
    values: np.ndarray

    def __call__(self, ell: int, m: int) -> float:
        if ell < 0 or ell > self.ell_max or abs(m) > ell:
            raise DomainError(f"(ell={ell}, m={m}) outside the table.")
        return float(self.values[ell, m + self.ell_max])

    def row(self, ell: int) -> np.ndarray:
        """Values for |m| <= ell, ordered m = -ell..ell."""
        return self.values[ell, self.ell_max - ell:self.ell_max + ell + 1]


def wigner_d_slice(ell_max: int, beta: float, n: int) -> WignerDTable:
    """
    Compute d^ell_{mn}(beta) for 0 <= ell <= ell_max, |m| <= ell, fixed n.

    Rows with ell < |n| are zero.

    Raises:
        DomainError: If beta is outside [0, pi] or |n| > ell_max
    """
    values = np.zeros((ell_max + 1, 2 * ell_max + 1))
    for ell, d in iter_wigner_d(ell_max, beta, n):
        values[ell] = d[0]
    return WignerDTable(ell_max=ell_max, beta=float(beta), n=n, values=values)
