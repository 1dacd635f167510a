"""Outdated-CSI Rayleigh fading model for one relay hop.

The channel seen by a data block is tied to an earlier CSI sample through a
first-order Gaussian innovation: h = rho * h_sampled + sqrt(1 - rho^2) * e.
This module provides the correlation coefficient from Doppler geometry, the
conditional density of the instantaneous SNR given the outdated SNR, joint
sampling of (outdated, instantaneous) SNR pairs, and the urban path-loss
budget used to derive average SNRs from deployment geometry.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import i0e, j0

from .errors import ConfigurationError

__all__ = [
    "LinkModel",
    "FrameCSI",
    "ChannelRealization",
    "DopplerGeometry",
    "rho_from_doppler",
    "conditional_pdf",
    "conditional_tail_mass",
    "sample_pair",
    "median_snr",
    "cost231_path_loss_db",
    "path_loss_snr",
]


@dataclass(frozen=True)
class LinkModel:
    """Average SNR (linear) and outdated-CSI correlation of one hop.

    link_index is 1 for the backhaul (source-to-relay) hop and 2 for the
    relaying (relay-to-destination) hop. rho = 1 would collapse the
    conditional density to a point mass and is rejected.
    """

    avg_snr: float
    rho: float
    link_index: int = 1

    def __post_init__(self):
        if self.avg_snr <= 0:
            raise ConfigurationError(f"avg_snr must be > 0, got {self.avg_snr}")
        if not 0.0 <= self.rho < 1.0:
            raise ConfigurationError(f"rho must be in [0, 1), got {self.rho}")
        if self.link_index not in (1, 2):
            raise ConfigurationError("link_index must be 1 or 2")

    @property
    def rho2(self) -> float:
        return self.rho * self.rho

    @property
    def innovation_scale(self) -> float:
        """Mean of the innovation part of the conditional SNR: avg_snr * (1 - rho^2)."""
        return self.avg_snr * (1.0 - self.rho2)


@dataclass(frozen=True)
class FrameCSI:
    """Outdated SNRs (linear) visible to the source for one frame."""

    outdated_snr_1: float
    outdated_snr_2: float

    def __post_init__(self):
        if self.outdated_snr_1 < 0 or self.outdated_snr_2 < 0:
            raise ConfigurationError("outdated SNRs must be >= 0")


@dataclass(frozen=True)
class ChannelRealization:
    """Instantaneous SNRs of the data block, with the innovation draws kept
    so any frame can be replayed."""

    snr_1: float
    snr_2: float
    innovation_1: complex
    innovation_2: complex


@dataclass(frozen=True)
class DopplerGeometry:
    """Frame timing and normalized Doppler frequencies (cycles per symbol).

    The CSI sample ages by n symbols before the backhaul phase and by n + m
    symbols before the relaying phase; n > m reflects an initialization part
    much longer than one transmission phase.
    """

    n: int
    m: int
    f_sr: float
    f_rd: float

    def __post_init__(self):
        if not self.n > self.m > 0:
            raise ConfigurationError(f"need n > m > 0, got n={self.n}, m={self.m}")
        if self.f_sr < 0 or self.f_rd < 0:
            raise ConfigurationError("Doppler frequencies must be >= 0")


def rho_from_doppler(geom: DopplerGeometry) -> tuple[float, float]:
    """Correlation coefficients J0(2*pi*f*delay) for the two hops.

    A value outside (0, 1) breaks the correlation model (zero or negative
    correlation, or a deterministic channel) and is rejected.
    """
    rho_1 = float(j0(2.0 * np.pi * geom.f_sr * geom.n))
    rho_2 = float(j0(2.0 * np.pi * geom.f_rd * (geom.n + geom.m)))
    for name, rho in (("backhaul", rho_1), ("relaying", rho_2)):
        if rho <= 0.0:
            raise ConfigurationError(
                f"{name} correlation {rho:.6g} <= 0: Doppler-delay product too large"
            )
        if rho >= 1.0:
            raise ConfigurationError(
                f"{name} correlation is 1: zero Doppler leaves the CSI never outdated"
            )
    return rho_1, rho_2


def conditional_pdf(snr, outdated_snr, link: LinkModel):
    """Density of the instantaneous SNR given the outdated SNR.

    Scaled noncentral-chi-square(2) law. Evaluated with the exponentially
    scaled Bessel function so the combined exponent is
    -(sqrt(snr) - rho*sqrt(outdated))^2 / scale and nothing overflows even
    for Bessel arguments of order 1e6.
    """
    snr = np.asarray(snr, dtype=float)
    if np.any(snr < 0) or outdated_snr < 0:
        raise ValueError("SNRs must be >= 0")
    s = link.innovation_scale
    bessel_arg = 2.0 * link.rho * np.sqrt(snr * outdated_snr) / s
    exponent = -((np.sqrt(snr) - link.rho * np.sqrt(outdated_snr)) ** 2) / s
    return (np.exp(exponent) * i0e(bessel_arg) / s)[()]


def conditional_tail_mass(snr_cutoff, outdated_snr, link: LinkModel):
    """P(instantaneous SNR > cutoff | outdated SNR), via the noncentral
    chi-square survival function. Used to certify quadrature truncation."""
    from scipy.stats import ncx2

    s = link.innovation_scale
    return float(
        ncx2.sf(2.0 * snr_cutoff / s, 2, 2.0 * link.rho2 * outdated_snr / s)
    )


def sample_pair(link: LinkModel, rng: np.random.Generator, size=None):
    """Draw (outdated SNR, instantaneous SNR) jointly for independent frames.

    The sampled coefficient and the innovation are independent CN(0, 1);
    both marginal SNRs are exponential with mean avg_snr.
    """
    shape = () if size is None else (size,)
    h_hat = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    innov = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    h = link.rho * h_hat + np.sqrt(1.0 - link.rho2) * innov
    outdated = link.avg_snr * np.abs(h_hat) ** 2
    instantaneous = link.avg_snr * np.abs(h) ** 2
    return outdated[()], instantaneous[()]


def sample_conditional(outdated_snr, link: LinkModel, rng: np.random.Generator, size=None):
    """Draw instantaneous SNRs given a fixed outdated SNR.

    The sampled coefficient magnitude is pinned to sqrt(outdated/avg) with a
    uniform phase, which the innovation makes irrelevant.
    """
    shape = () if size is None else (size,)
    mag = np.sqrt(outdated_snr / link.avg_snr)
    phase = rng.uniform(0.0, 2.0 * np.pi, shape)
    h_hat = mag * np.exp(1j * phase)
    innov = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    h = link.rho * h_hat + np.sqrt(1.0 - link.rho2) * innov
    return (link.avg_snr * np.abs(h) ** 2)[()]


def median_snr(outdated_snr, link: LinkModel):
    """Median of the conditional instantaneous SNR, rho^2 * outdated_snr.

    This is the median of the conditional channel coefficient squared and
    scaled; it slightly understates the exact SNR median of the full
    noncentral law, which is the approximation adopted throughout.
    """
    if outdated_snr < 0:
        raise ValueError("outdated_snr must be >= 0")
    return link.rho2 * outdated_snr


def cost231_path_loss_db(
    distance_m, freq_hz, base_height_m: float = 30.0, mobile_height_m: float = 1.5
):
    """COST-231 Hata urban path loss in dB (medium-city correction).

    The formula's nominal validity starts at 1 km; sub-kilometer distances
    are handled by extrapolating the log-distance slope.
    """
    distance_m = np.asarray(distance_m, dtype=float)
    if np.any(distance_m <= 0):
        raise ValueError("distance must be > 0")
    f_mhz = freq_hz / 1e6
    if not 1500.0 <= f_mhz <= 2000.0:
        raise ConfigurationError(
            f"COST-231 Hata is defined for 1500-2000 MHz, got {f_mhz:.0f} MHz"
        )
    d_km = distance_m / 1000.0
    a_hm = (1.1 * np.log10(f_mhz) - 0.7) * mobile_height_m - (
        1.56 * np.log10(f_mhz) - 0.8
    )
    pl = (
        46.3
        + 33.9 * np.log10(f_mhz)
        - 13.82 * np.log10(base_height_m)
        - a_hm
        + (44.9 - 6.55 * np.log10(base_height_m)) * np.log10(d_km)
    )
    return pl[()]


def path_loss_snr(distance_m, freq_hz, tx_power_dbm, noise_dbm):
    """Linear average SNR from the urban path-loss budget."""
    pl = cost231_path_loss_db(distance_m, freq_hz)
    return 10.0 ** ((tx_power_dbm - pl - noise_dbm) / 10.0)
