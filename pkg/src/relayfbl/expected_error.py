"""Expected per-hop block error given the outdated SNR.

The scheduler's objective repeatedly needs the block error probability
averaged over the conditional fading law. Two routes are provided: an
adaptive quadrature of the one-dimensional SNR integral (the closed-form
Q-function makes the inner tail integral analytic) and a Monte Carlo
estimator used as an independent oracle. A vectorized fixed-node evaluator
serves the batch optimizers, where millions of (outdated SNR, rate) pairs
must be averaged at once.
"""
from __future__ import annotations

import numpy as np
from scipy.special import erfc, i0e

from . import fbl
from .channel import LinkModel, conditional_pdf, conditional_tail_mass, sample_conditional
from .quadrature import QuadratureSpec, adaptive_quadrature

__all__ = [
    "QuadratureSpec",
    "truncation_upper",
    "expected_link_error",
    "mc_link_error",
    "overall_relay_error",
    "BatchLinkError",
]

DEFAULT_QUADRATURE = QuadratureSpec()


def truncation_upper(outdated_snr, link: LinkModel, tail_cutoff_sigma):
    """Finite upper limit for the conditional-SNR integrals.

    Center plus a multiple of the noncentral-chi-square spread; the discarded
    mass is certified separately against the survival function.
    """
    s = link.innovation_scale
    spread = 2.0 * link.rho * np.sqrt(np.asarray(outdated_snr) * s) + s
    return (link.rho2 * np.asarray(outdated_snr) + tail_cutoff_sigma * spread)[()]


def expected_link_error(
    outdated_snr,
    rate,
    link: LinkModel,
    m,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
):
    """Block error probability averaged over the conditional fading law.

    Nondecreasing in the rate; 0 at rate 0 (up to truncated tail mass).
    Raises AccuracyError if the adaptive quadrature cannot meet `spec`.
    """
    if rate <= 0.0:
        return 0.0
    upper = float(truncation_upper(outdated_snr, link, spec.tail_cutoff_sigma))
    tail = conditional_tail_mass(upper, outdated_snr, link)
    if tail > spec.abs_tol:
        upper = float(truncation_upper(outdated_snr, link, 2.0 * spec.tail_cutoff_sigma))
        tail = conditional_tail_mass(upper, outdated_snr, link)
    assert tail <= max(spec.abs_tol, 1e-10), "truncated tail mass not negligible"

    def integrand(snr):
        return conditional_pdf(snr, outdated_snr, link) * fbl.fbl_error(snr, rate, m)

    # Split where capacity equals the rate: center of the Q transition.
    snr_at_rate = 2.0**rate - 1.0
    points = (snr_at_rate,) if snr_at_rate < upper else ()
    value = adaptive_quadrature(integrand, 0.0, upper, spec, points=points)
    # The discarded tail only lowers the estimate, and by at most `tail`.
    return float(min(max(value, 0.0), 1.0))


def mc_link_error(outdated_snr, rate, link: LinkModel, m, n_samples, rng):
    """Monte Carlo oracle for expected_link_error.

    Draws instantaneous SNRs from the conditional law and averages the block
    error probability. Returns (estimate, standard error).
    """
    if n_samples < 10_000:
        raise ValueError("n_samples must be >= 10000")
    snr = sample_conditional(outdated_snr, link, rng, size=int(n_samples))
    errs = np.asarray(fbl.fbl_error(snr, rate, m), dtype=float)
    est = float(errs.mean())
    std_err = float(errs.std(ddof=1) / np.sqrt(n_samples))
    return est, std_err


def overall_relay_error(eps_1, eps_2):
    """End-to-end failure probability of the two-hop chain."""
    eps_1 = np.asarray(eps_1, dtype=float)
    eps_2 = np.asarray(eps_2, dtype=float)
    if np.any((eps_1 < 0) | (eps_1 > 1)) or np.any((eps_2 < 0) | (eps_2 > 1)):
        raise ValueError("error probabilities must be in [0, 1]")
    return (eps_1 + eps_2 - eps_1 * eps_2)[()]


class BatchLinkError:
    """Fixed-node conditional-error evaluator over many frames at once.

    Precomputes, per outdated-SNR row, Gauss-Legendre nodes on the truncated
    conditional support together with the conditional density, capacity and
    dispersion at those nodes. Each subsequent rate evaluation then costs a
    single erfc sweep, which is what makes bisection and golden-section over
    rates affordable for millions of frames.
    """

    def __init__(self, outdated_snr, link: LinkModel, m, n_nodes: int = 160,
                 tail_cutoff_sigma: float = 12.0):
        outdated_snr = np.atleast_1d(np.asarray(outdated_snr, dtype=float))
        x, w = np.polynomial.legendre.leggauss(n_nodes)
        upper = truncation_upper(outdated_snr, link, tail_cutoff_sigma)
        # Map [-1, 1] onto [0, upper] row by row.
        half = 0.5 * np.atleast_1d(upper)[:, None]
        nodes = half * (x[None, :] + 1.0)
        s = link.innovation_scale
        bessel_arg = 2.0 * link.rho * np.sqrt(nodes * outdated_snr[:, None]) / s
        exponent = -((np.sqrt(nodes) - link.rho * np.sqrt(outdated_snr[:, None])) ** 2) / s
        pdf = np.exp(exponent) * i0e(bessel_arg) / s
        self._pdf_w = pdf * (w[None, :] * half)
        self._capacity = np.log2(1.0 + nodes)
        self._inv_sqrt_vm = 1.0 / np.sqrt(fbl.dispersion(nodes) / m)
        self.norm = self._pdf_w.sum(axis=1)  # ~1 minus truncated tail

    def error_at(self, rate):
        """Expected block error for a per-row rate array (or scalar)."""
        rate = np.asarray(rate, dtype=float)
        z = (self._capacity - rate[..., None]) * self._inv_sqrt_vm
        eps = 0.5 * erfc(z / np.sqrt(2.0))
        out = np.einsum("ij,ij->i", self._pdf_w, eps)
        return np.clip(out, 0.0, 1.0)
