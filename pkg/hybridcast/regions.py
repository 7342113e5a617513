"""Closed-form distortion regions of the broadcast schemes.

Each region is the union over alpha1 in [0, 1] of the quadrants dominated
by a frontier point. Only the frontier is represented: comparisons are
made at matched alpha1, which is the same as matched d2 because every
scheme shares one increasing d2(alpha1).
"""

import logging
import math
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from .core import shared_d2
from .enums import Scheme, Verdict
from .errors import InvalidParamsError
from .models import (
    ChannelSpec,
    ComparisonReport,
    ComparisonRow,
    CurvePoint,
    DistortionPair,
    PowerSplit,
    RegionCurve,
    SchemeRecord,
    SourceSpec,
    ThresholdRow,
)

_logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 201
TIE_TOLERANCE = 1e-9

PointFunction = Callable[[SourceSpec, ChannelSpec, PowerSplit], DistortionPair]


def _require_independent(source: SourceSpec, scheme: Scheme) -> None:
    if source.rho != 0:
        raise InvalidParamsError(
            f"{scheme.value} is only defined for independent sources",
            field_errors={"rho": f"must be 0, got {source.rho}"},
        )


def _coded_snr_term(channel: ChannelSpec, alpha1: float) -> float:
    """1 + alpha1 P / N1."""
    return 1.0 + alpha1 * channel.power / channel.n1


def _uncoded_snr_term(
    channel: ChannelSpec, alpha1: float, noise: float
) -> float:
    """1 + (1 - alpha1) P / (alpha1 P + noise)."""
    return 1.0 + (1.0 - alpha1) * channel.power / (
        alpha1 * channel.power + noise
    )


def outer_bound_point(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
) -> DistortionPair:
    """Frontier point of the outer bound.

    For rho > 0 the d1 coordinate bounds the conditional distortion D1|2,
    i.e. with S2 also available at Receiver 1. At rho = 0 it is the plain
    D1 bound for independent sources.
    """

    a = split.alpha1
    d1 = source.sigma2 * (1.0 - source.rho ** 2) / _coded_snr_term(channel, a)
    return DistortionPair(
        d1=d1,
        d2=shared_d2(source, channel, a),
        conditional=source.rho > 0,
    )


def hybrid_independent_point(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
) -> DistortionPair:
    """Hybrid scheme for independent sources; meets the outer bound.

    Raises:
        InvalidParamsError: If rho != 0.
    """

    _require_independent(source, Scheme.HYBRID_INDEPENDENT)
    a = split.alpha1
    return DistortionPair(
        d1=source.sigma2 / _coded_snr_term(channel, a),
        d2=shared_d2(source, channel, a),
    )


def uncoded_point(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
) -> DistortionPair:
    """Uncoded linear combination; Receiver 1 sees S2 as extra noise.

    Raises:
        InvalidParamsError: If rho != 0.
    """

    _require_independent(source, Scheme.UNCODED)
    a = split.alpha1
    snr1 = a * channel.power / ((1.0 - a) * channel.power + channel.n1)
    return DistortionPair(
        d1=source.sigma2 / (1.0 + snr1),
        d2=shared_d2(source, channel, a),
    )


def hybrid_correlated_point(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
) -> DistortionPair:
    """Hybrid scheme coding V and sending S2 uncoded, any rho in [0, 1)."""

    a = split.alpha1
    innovation = source.innovation_variance / _coded_snr_term(channel, a)
    side = source.rho ** 2 * source.sigma2 / _uncoded_snr_term(
        channel, a, channel.n1
    )
    return DistortionPair(
        d1=innovation + side,
        d2=shared_d2(source, channel, a),
    )


def separation_a_point(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
) -> DistortionPair:
    """Separate coding that ignores the correlation."""

    a = split.alpha1
    return DistortionPair(
        d1=source.sigma2 / _coded_snr_term(channel, a),
        d2=shared_d2(source, channel, a),
    )


def separation_b_point(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
) -> DistortionPair:
    """Separate coding of V and S2; Receiver 1 decodes S2 like Receiver 2."""

    a = split.alpha1
    innovation = source.innovation_variance / _coded_snr_term(channel, a)
    side = source.rho ** 2 * source.sigma2 / _uncoded_snr_term(
        channel, a, channel.n2
    )
    return DistortionPair(
        d1=innovation + side,
        d2=shared_d2(source, channel, a),
    )


POINT_FUNCTIONS: Dict[Scheme, PointFunction] = {
    Scheme.OUTER_BOUND: outer_bound_point,
    Scheme.HYBRID_INDEPENDENT: hybrid_independent_point,
    Scheme.UNCODED: uncoded_point,
    Scheme.HYBRID_CORRELATED: hybrid_correlated_point,
    Scheme.SEPARATION_A: separation_a_point,
    Scheme.SEPARATION_B: separation_b_point,
}


def scheme_point(
    scheme: Scheme,
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
) -> DistortionPair:
    """Evaluate a scheme's frontier point at ``split``."""
    return POINT_FUNCTIONS[Scheme(scheme)](source, channel, split)


def applicable_schemes(source: SourceSpec) -> List[Scheme]:
    """Schemes defined for this source law, in display order."""
    return [
        scheme for scheme in Scheme
        if source.independent or not scheme.independent_only
    ]


def snr_threshold(split: PowerSplit) -> float:
    """SNR below which hybrid beats Scheme A on d1: (1 - 2 a) / a^2.

    Returns ``math.inf`` at alpha1 = 0. Values <= 0 (alpha1 >= 1/2) mean
    hybrid never beats Scheme A at that split.
    """

    a = split.alpha1
    if a == 0:
        return math.inf
    return (1.0 - 2.0 * a) / a ** 2


def default_grid(points: int = DEFAULT_GRID_POINTS) -> List[float]:
    """Uniform alpha1 grid on [0, 1] including both endpoints."""
    if points < 2:
        raise ValueError("grid needs at least 2 points")
    grid = np.linspace(0.0, 1.0, points)
    return [float(a) for a in grid]


def _validate_grid(grid: Sequence[float]) -> List[float]:
    values = [float(a) for a in grid]
    if not values:
        raise InvalidParamsError(
            "alpha1 grid is empty", field_errors={"grid": "empty"}
        )
    if any(not 0.0 <= a <= 1.0 for a in values):
        raise InvalidParamsError(
            "alpha1 grid must lie in [0, 1]",
            field_errors={"grid": "values outside [0, 1]"},
        )
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InvalidParamsError(
            "alpha1 grid must be strictly increasing",
            field_errors={"grid": "not strictly increasing"},
        )
    return values


def sweep_frontier(
    scheme: Scheme,
    source: SourceSpec,
    channel: ChannelSpec,
    grid: Sequence[float],
) -> RegionCurve:
    """Sample a scheme's frontier on an alpha1 grid.

    Raises:
        InvalidParamsError: If the grid is empty, leaves [0, 1], or is
            not strictly increasing, or the scheme rejects the source.
    """

    scheme = Scheme(scheme)
    points = [
        CurvePoint(
            alpha1=a,
            pair=scheme_point(scheme, source, channel, PowerSplit(alpha1=a)),
        )
        for a in _validate_grid(grid)
    ]
    curve = RegionCurve(scheme=scheme, points=points)
    if not curve.is_monotone:
        _logger.warning(
            f"{scheme.value} frontier is not monotone on this grid "
            f"(rho={source.rho}); d1 rises with alpha1 somewhere"
        )
    return curve


def hybrid_vs_a(
    hybrid_d1: float,
    scheme_a_d1: float,
    tie_tolerance: float = TIE_TOLERANCE,
) -> Verdict:
    """Which of hybrid and Scheme A attains smaller d1."""
    scale = max(abs(hybrid_d1), abs(scheme_a_d1))
    if scale == 0 or abs(hybrid_d1 - scheme_a_d1) <= tie_tolerance * scale:
        return Verdict.TIE
    return Verdict.HYBRID if hybrid_d1 < scheme_a_d1 else Verdict.SCHEME_A


def _near_threshold(
    p_over_n1: float, threshold: float, tie_tolerance: float
) -> bool:
    if math.isinf(threshold):
        return False
    scale = max(abs(p_over_n1), abs(threshold), 1.0)
    return abs(p_over_n1 - threshold) <= tie_tolerance * scale


def _prediction(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
    verdict: Verdict,
    tie_tolerance: float,
) -> Tuple[bool, bool]:
    """Predicted hybrid win and whether ``verdict`` is consistent with it.

    The d1 gap between hybrid and Scheme A is rho^2 times a factor whose
    sign is that of threshold - P/N1, so at rho = 0 they always tie.
    """

    threshold = snr_threshold(split)
    p_over_n1 = channel.snr1
    predicted = source.rho > 0 and p_over_n1 < threshold
    if verdict is Verdict.TIE:
        agrees = True
    elif _near_threshold(p_over_n1, threshold, tie_tolerance):
        agrees = True
    else:
        agrees = (verdict is Verdict.HYBRID) == predicted
    return predicted, agrees


def compare_schemes(
    source: SourceSpec,
    channel: ChannelSpec,
    grid: Sequence[float],
    tie_tolerance: float = TIE_TOLERANCE,
) -> ComparisonReport:
    """Compare every applicable scheme at each alpha1 in ``grid``.

    Returns:
        ComparisonReport: Per-alpha1 records, the achievable schemes with
            smallest d1, the hybrid vs. Scheme A verdict and whether it
            agrees with the SNR threshold prediction.
    """

    values = _validate_grid(grid)
    schemes = applicable_schemes(source)
    rows = []
    for a in values:
        split = PowerSplit(alpha1=a)
        records = [
            SchemeRecord(
                scheme=s, pair=scheme_point(s, source, channel, split)
            )
            for s in schemes
        ]

        achievable = [r for r in records if r.scheme.achievable]
        best_d1 = min(r.pair.d1 for r in achievable)
        best = [
            r.scheme for r in achievable
            if r.pair.d1 - best_d1 <= tie_tolerance * best_d1
        ]

        hybrid = next(
            r for r in records if r.scheme is Scheme.HYBRID_CORRELATED
        )
        scheme_a = next(
            r for r in records if r.scheme is Scheme.SEPARATION_A
        )
        verdict = hybrid_vs_a(hybrid.pair.d1, scheme_a.pair.d1, tie_tolerance)
        predicted, agrees = _prediction(
            source, channel, split, verdict, tie_tolerance
        )
        threshold = snr_threshold(split)

        rows.append(ComparisonRow(
            alpha1=a,
            records=records,
            best_schemes=best,
            hybrid_vs_a=verdict,
            threshold=None if math.isinf(threshold) else threshold,
            predicted_hybrid_wins=predicted,
            agrees=agrees,
        ))

    report = ComparisonReport(alpha1_grid=values, rows=rows)
    if not report.all_agree:
        _logger.error("Threshold prediction disagrees with closed forms")
    return report


def threshold_report(
    source: SourceSpec,
    channel: ChannelSpec,
    grid: Sequence[float],
    tie_tolerance: float = TIE_TOLERANCE,
) -> List[ThresholdRow]:
    """Check the SNR threshold prediction against the closed forms."""

    rows = []
    for a in _validate_grid(grid):
        split = PowerSplit(alpha1=a)
        hybrid = hybrid_correlated_point(source, channel, split)
        scheme_a = separation_a_point(source, channel, split)
        verdict = hybrid_vs_a(hybrid.d1, scheme_a.d1, tie_tolerance)
        predicted, agrees = _prediction(
            source, channel, split, verdict, tie_tolerance
        )
        threshold = snr_threshold(split)
        rows.append(ThresholdRow(
            alpha1=a,
            threshold=None if math.isinf(threshold) else threshold,
            p_over_n1=channel.snr1,
            hybrid_beats_a_predicted=predicted,
            hybrid_beats_a_observed=verdict is Verdict.HYBRID,
            verdict=verdict,
            agrees=agrees,
        ))
    return rows
