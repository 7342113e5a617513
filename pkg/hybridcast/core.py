"""Scheme constants shared by the region calculators and the transceivers.

All functions are pure and operate on the immutable models in
``hybridcast.models``.
"""

import logging
import math

from .errors import DegeneratePowerSplitError
from .models import ChannelSpec, PowerSplit, SchemeParams, SourceSpec

_logger = logging.getLogger(__name__)


def target_variance(source: SourceSpec, correlated_mode: bool) -> float:
    """Variance of the lattice-coded payload (S1, or V when correlated)."""
    if correlated_mode:
        return source.sigma2 * (1.0 - source.rho ** 2)
    return source.sigma2


def derive_scheme_params(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
    correlated_mode: bool = False,
    *,
    inflation: float = 1.0,
) -> SchemeParams:
    """Derive the hybrid transceiver constants for a power split.

    P' is chosen so the correct-decoding condition
    target + P'N1 / (alpha^2 P' + N1) <= P' holds with equality, then
    multiplied by ``inflation``. alpha is re-derived from the final P'
    so the coded branch always carries exactly alpha1 * P.

    Args:
        source: Source law.
        channel: Broadcast channel.
        split: Power split; alpha1 must be positive.
        correlated_mode: Code the innovation V = S1 - rho * S2 instead
            of S1.
        inflation: Factor kappa >= 1 applied to P'.

    Returns:
        SchemeParams: Transmitter and receiver constants.

    Raises:
        DegeneratePowerSplitError: If alpha1 = 0, where P' diverges, or if
            alpha1 is small enough that P' overflows.
        ValueError: If inflation < 1.
    """

    if split.alpha1 == 0:
        raise DegeneratePowerSplitError(
            "P' is undefined at alpha1 = 0; use the region calculators "
            "for the all-uncoded endpoint",
            alpha1=split.alpha1,
        )
    if not inflation >= 1.0:
        raise ValueError(f"inflation must be >= 1, got {inflation}")

    target = target_variance(source, correlated_mode)
    coded_power = split.alpha1 * channel.power
    p_prime = inflation * target * (coded_power + channel.n1) / coded_power
    alpha = math.sqrt(coded_power / p_prime)
    gamma = math.sqrt((1.0 - split.alpha1) * channel.power / source.sigma2)
    if not (math.isfinite(p_prime) and alpha > 0.0):
        raise DegeneratePowerSplitError(
            f"alpha1={split.alpha1} is too small for a finite P' "
            f"(got P'={p_prime})",
            alpha1=split.alpha1,
        )
    delta = alpha * p_prime / (alpha ** 2 * p_prime + channel.n1)

    _logger.debug(
        f"Scheme params at alpha1={split.alpha1}: P'={p_prime}, "
        f"alpha={alpha}, gamma={gamma}, delta={delta}"
    )

    return SchemeParams(
        alpha1=split.alpha1,
        p_prime=p_prime,
        alpha=alpha,
        gamma=gamma,
        delta=delta,
        beta=-delta,
        target_variance=target,
        correlated=correlated_mode,
        inflation=inflation,
    )


def effective_noise_variance(
    params: SchemeParams,
    channel: ChannelSpec,
) -> float:
    """Variance of W1 after MMSE scaling, P'N1 / (alpha^2 P' + N1)."""
    return params.p_prime * channel.n1 / (params.coded_power + channel.n1)


def corrdec_slack(params: SchemeParams, channel: ChannelSpec) -> float:
    """Margin in the correct-decoding condition, zero for kappa = 1."""
    return params.p_prime - (
        params.target_variance + effective_noise_variance(params, channel)
    )


def w12_variance(params: SchemeParams, channel: ChannelSpec) -> float:
    """Variance of W12 = (alpha X1 + Z1) / gamma.

    Raises:
        DegeneratePowerSplitError: If gamma = 0 (alpha1 = 1).
    """
    if params.gamma == 0:
        raise DegeneratePowerSplitError(
            "W12 is undefined without an uncoded branch",
            alpha1=params.alpha1,
        )
    return (params.coded_power + channel.n1) / params.gamma ** 2


def mmse_gain(signal_variance: float, noise_variance: float) -> float:
    """Linear MMSE gain for estimating a signal from signal + noise."""
    return signal_variance / (signal_variance + noise_variance)


def shared_d2(
    source: SourceSpec,
    channel: ChannelSpec,
    alpha1: float,
) -> float:
    """D2 common to every scheme: Receiver 2 treats the coded part as noise."""
    snr2 = (1.0 - alpha1) * channel.power / (
        alpha1 * channel.power + channel.n2
    )
    return source.sigma2 / (1.0 + snr2)


def cross_moment_residual(params: SchemeParams, channel: ChannelSpec) -> float:
    """Relative residual of (delta alpha - 1) alpha P' + delta N1.

    Zero up to rounding for the MMSE front-end scaling, which is what
    makes W11 and W12 uncorrelated.
    """
    residual = (
        (params.delta * params.alpha - 1.0) * params.alpha * params.p_prime
        + params.delta * channel.n1
    )
    scale = max(params.alpha * params.p_prime, params.delta * channel.n1)
    return abs(residual) / scale
