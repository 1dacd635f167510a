"""Per-frame relay throughput objective.

A frame delivers its scheduled rate end to end only if both hops decode, and
each packet occupies two transmission phases, hence the factor 1/2. The rate
is set from the bottleneck of the weighted outdated SNRs; the weights live in
(0, rho_k^2] per hop.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import fbl
from .channel import FrameCSI, LinkModel
from .expected_error import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    expected_link_error,
    overall_relay_error,
)

__all__ = ["ScheduleDecision", "FrameThroughput", "schedule_rate", "frame_throughput",
           "throughput_at_rate"]


@dataclass(frozen=True)
class ScheduleDecision:
    """Weights chosen for one frame and the coding rate they imply.

    bottleneck is the hop whose weighted outdated SNR fixed the rate
    (1 on ties).
    """

    weight_1: float
    weight_2: float
    rate: float
    bottleneck: int


@dataclass(frozen=True)
class FrameThroughput:
    """Expected throughput of one frame and its error-budget breakdown."""

    mu: float
    eps_bar_1: float
    eps_bar_2: float
    eps_bar_relay: float


def schedule_rate(
    csi: FrameCSI,
    weight_1: float,
    weight_2: float,
    links: tuple[LinkModel, LinkModel],
    params: fbl.FblParams,
) -> ScheduleDecision:
    """Rate selection from the bottleneck weighted outdated SNR."""
    link_1, link_2 = links
    if not 0.0 < weight_1 <= link_1.rho2:
        raise ValueError(f"weight_1 must be in (0, {link_1.rho2}], got {weight_1}")
    if not 0.0 < weight_2 <= link_2.rho2:
        raise ValueError(f"weight_2 must be in (0, {link_2.rho2}], got {weight_2}")
    target_1 = weight_1 * csi.outdated_snr_1
    target_2 = weight_2 * csi.outdated_snr_2
    bottleneck = 1 if target_1 <= target_2 else 2
    rate = float(fbl.fbl_rate(min(target_1, target_2), params.eps_th, params.m))
    return ScheduleDecision(weight_1, weight_2, rate, bottleneck)


def throughput_at_rate(
    csi: FrameCSI,
    rate: float,
    links: tuple[LinkModel, LinkModel],
    params: fbl.FblParams,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> FrameThroughput:
    """Expected frame throughput rate * (1 - combined expected error) / 2."""
    link_1, link_2 = links
    eps_1 = expected_link_error(csi.outdated_snr_1, rate, link_1, params.m, spec)
    eps_2 = expected_link_error(csi.outdated_snr_2, rate, link_2, params.m, spec)
    eps_relay = float(overall_relay_error(eps_1, eps_2))
    return FrameThroughput(rate * (1.0 - eps_relay) / 2.0, eps_1, eps_2, eps_relay)


def frame_throughput(
    csi: FrameCSI,
    decision: ScheduleDecision,
    links: tuple[LinkModel, LinkModel],
    params: fbl.FblParams,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> FrameThroughput:
    return throughput_at_rate(csi, decision.rate, links, params, spec)
