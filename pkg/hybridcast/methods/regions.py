"""Region operations - scheme points, frontier sweeps, comparisons."""

import logging
from typing import List, Optional, Sequence

from ..enums import Scheme
from ..errors import ConsistencyError, InvalidParamsError
from ..models import (
    ChannelSpec,
    ComparisonReport,
    DistortionPair,
    PowerSplit,
    RegionCurve,
    SchemeRecord,
    SourceSpec,
    ThresholdRow,
)
from ..regions import (
    applicable_schemes,
    compare_schemes,
    default_grid,
    scheme_point,
    sweep_frontier,
    threshold_report,
)

_logger = logging.getLogger(__name__)


class RegionMethods:
    """Evaluate the closed-form distortion regions."""

    def __init__(self, engine):
        """Initialize with engine reference.

        Args:
            engine: Main HybridCastEngine instance.
        """

        self._engine = engine


    def _grid(self, grid: Optional[Sequence[float]]) -> List[float]:
        if grid is None:
            return default_grid(self._engine.config.grid_points)
        return list(grid)


    def point(
        self,
        scheme: Scheme,
        source: SourceSpec,
        channel: ChannelSpec,
        split: PowerSplit,
    ) -> DistortionPair:
        """Frontier point of one scheme.

        Args:
            scheme (Scheme): Scheme to evaluate.
            source (SourceSpec): Source law.
            channel (ChannelSpec): Broadcast channel.
            split (PowerSplit): Power split.

        Returns:
            DistortionPair: (d1, d2) at the split. Endpoints alpha1 = 0
                and 1 return the limit points.

        Raises:
            InvalidParamsError: If the scheme needs independent sources
                and rho > 0.
        """

        return scheme_point(scheme, source, channel, split)


    def region(
        self,
        source: SourceSpec,
        channel: ChannelSpec,
        split: PowerSplit,
        schemes: Optional[Sequence[Scheme]] = None,
    ) -> List[SchemeRecord]:
        """Points of several schemes at one power split.

        Args:
            source (SourceSpec): Source law.
            channel (ChannelSpec): Broadcast channel.
            split (PowerSplit): Power split.
            schemes (Optional[Sequence[Scheme]]): Schemes to evaluate.
                Defaults to every scheme defined for the source.

        Returns:
            List[SchemeRecord]: One record per scheme, in the given order.
        """

        selected = self._select(source, schemes)
        return [
            SchemeRecord(
                scheme=s, pair=scheme_point(s, source, channel, split)
            )
            for s in selected
        ]


    def sweep(
        self,
        source: SourceSpec,
        channel: ChannelSpec,
        schemes: Optional[Sequence[Scheme]] = None,
        grid: Optional[Sequence[float]] = None,
    ) -> List[RegionCurve]:
        """Sample frontiers on an alpha1 grid.

        Args:
            source (SourceSpec): Source law.
            channel (ChannelSpec): Broadcast channel.
            schemes (Optional[Sequence[Scheme]]): Schemes to sweep.
                Defaults to every scheme defined for the source.
            grid (Optional[Sequence[float]]): Strictly increasing alpha1
                values in [0, 1]. Defaults to a uniform grid of
                ``config.grid_points`` points.

        Returns:
            List[RegionCurve]: One curve per scheme.
        """

        values = self._grid(grid)
        selected = self._select(source, schemes)
        _logger.debug(
            f"Sweeping {len(selected)} schemes over {len(values)} points"
        )
        return [sweep_frontier(s, source, channel, values) for s in selected]


    def compare(
        self,
        source: SourceSpec,
        channel: ChannelSpec,
        grid: Optional[Sequence[float]] = None,
    ) -> ComparisonReport:
        """Compare all applicable schemes at matched alpha1.

        Returns:
            ComparisonReport: Records, best schemes and hybrid vs.
                Scheme A verdicts per grid point.
        """

        return compare_schemes(
            source,
            channel,
            self._grid(grid),
            tie_tolerance=self._engine.config.tie_tolerance,
        )


    def threshold(
        self,
        source: SourceSpec,
        channel: ChannelSpec,
        grid: Optional[Sequence[float]] = None,
        strict: bool = True,
    ) -> List[ThresholdRow]:
        """SNR threshold analysis of hybrid vs. Scheme A.

        Args:
            source (SourceSpec): Source law.
            channel (ChannelSpec): Broadcast channel.
            grid (Optional[Sequence[float]]): alpha1 values.
            strict (bool): Raise when a prediction disagrees with the
                closed forms instead of only flagging the row.

        Returns:
            List[ThresholdRow]: One row per grid point.

        Raises:
            ConsistencyError: If strict and any row disagrees.
        """

        rows = threshold_report(
            source,
            channel,
            self._grid(grid),
            tie_tolerance=self._engine.config.tie_tolerance,
        )
        bad = [r.alpha1 for r in rows if not r.agrees]
        if bad:
            _logger.error(f"Threshold prediction fails at alpha1={bad}")
            if strict:
                raise ConsistencyError(
                    "threshold prediction disagrees with the closed forms",
                    details={"alpha1": bad},
                )
        return rows


    @staticmethod
    def _select(
        source: SourceSpec,
        schemes: Optional[Sequence[Scheme]],
    ) -> List[Scheme]:
        if schemes is None:
            return applicable_schemes(source)
        selected = [Scheme(s) for s in schemes]
        rejected = [
            s.value for s in selected
            if s.independent_only and not source.independent
        ]
        if rejected:
            raise InvalidParamsError(
                "schemes need independent sources",
                field_errors={"schemes": f"{rejected} require rho = 0"},
            )
        return selected
