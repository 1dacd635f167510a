"""Single-hop finite-blocklength primitives.

Normal-approximation coding rate and block error probability for a complex
quasi-static channel, plus the Gaussian Q-function pair they are built on.
All SNRs are linear scale; dB conversion happens at the CLI boundary only.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import erfc, erfcinv

LOG2E = float(np.log2(np.e))

__all__ = [
    "FblParams",
    "shannon_capacity",
    "dispersion",
    "q_function",
    "q_inverse",
    "fbl_rate",
    "fbl_error",
]


@dataclass(frozen=True)
class FblParams:
    """Per-hop blocklength and target block error probability.

    m below 100 is rejected: the normal approximation is only trusted for
    blocklengths of at least 100 symbols.
    """

    m: int
    eps_th: float

    def __post_init__(self):
        if self.m < 100:
            raise ValueError(f"blocklength m must be >= 100, got {self.m}")
        if not 0.0 < self.eps_th <= 0.5:
            raise ValueError(f"eps_th must be in (0, 0.5], got {self.eps_th}")


def shannon_capacity(snr):
    """Capacity log2(1 + snr) of a complex channel, in bits per channel use."""
    snr = np.asarray(snr, dtype=float)
    if np.any(snr < 0):
        raise ValueError("snr must be >= 0")
    return np.log2(1.0 + snr)[()]


def dispersion(snr):
    """Channel dispersion of the complex channel: (1 - (1+snr)^-2) * log2(e)^2."""
    snr = np.asarray(snr, dtype=float)
    if np.any(snr < 0):
        raise ValueError("snr must be >= 0")
    return ((1.0 - 1.0 / (1.0 + snr) ** 2) * LOG2E**2)[()]


def q_function(w):
    """Upper tail of the standard normal distribution."""
    w = np.asarray(w, dtype=float)
    return (0.5 * erfc(w / np.sqrt(2.0)))[()]


def q_inverse(eps):
    """Inverse of q_function; eps must lie strictly inside (0, 1)."""
    eps = np.asarray(eps, dtype=float)
    if np.any(eps <= 0.0) or np.any(eps >= 1.0):
        raise ValueError("eps must be in (0, 1)")
    return (np.sqrt(2.0) * erfcinv(2.0 * eps))[()]


def fbl_rate(snr, eps, m):
    """Normal-approximation coding rate for block error target eps.

    Negative approximation values are clipped to 0: no positive rate is
    supportable there and a scheduler never picks negative rates.
    """
    snr = np.asarray(snr, dtype=float)
    r = shannon_capacity(snr) - np.sqrt(dispersion(snr) / m) * q_inverse(eps)
    return np.maximum(r, 0.0)[()]


def fbl_error(snr, rate, m):
    """Normal-approximation block error probability at a scheduled rate.

    A zero-SNR channel has zero capacity and zero dispersion; any positive
    rate then fails with probability 1, while rate 0 always succeeds.
    """
    snr = np.asarray(snr, dtype=float)
    rate = np.asarray(rate, dtype=float)
    if np.any(snr < 0):
        raise ValueError("snr must be >= 0")
    if np.any(rate < 0):
        raise ValueError("rate must be >= 0")
    snr_b, rate_b = np.broadcast_arrays(snr, rate)
    out = np.where(rate_b > 0.0, 1.0, 0.0)
    pos = snr_b > 0.0
    if np.any(pos):
        s = snr_b[pos]
        z = (shannon_capacity(s) - rate_b[pos]) / np.sqrt(dispersion(s) / m)
        out = np.array(out, dtype=float)
        out[pos] = q_function(z)
    return out[()]
