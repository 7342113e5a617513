"""Simulation operations - Monte Carlo runs and effective noise checks."""

import logging
from typing import Optional

from ..config import SimConfig
from ..core import derive_scheme_params
from ..enums import ConsistencyStatus
from ..models import (
    ChannelSpec,
    EffectiveNoiseStats,
    PowerSplit,
    SimResult,
    SourceSpec,
)
from ..simulate import (
    consistency_verdict,
    measure_effective_noise,
    run_simulation,
)

_logger = logging.getLogger(__name__)


class SimulationMethods:
    """Run the transceivers in Monte Carlo simulation."""

    def __init__(self, engine):
        """Initialize with engine reference.

        Args:
            engine: Main HybridCastEngine instance.
        """

        self._engine = engine


    def run(
        self,
        source: SourceSpec,
        channel: ChannelSpec,
        split: PowerSplit,
        config: Optional[SimConfig] = None,
    ) -> SimResult:
        """Simulate the transceiver selected by ``config.mode``.

        Trials run on the engine's worker pool unless ``config.workers``
        asks for a pool of its own. Either way the result is identical.

        Args:
            source (SourceSpec): Source law.
            channel (ChannelSpec): Broadcast channel.
            split (PowerSplit): Power split.
            config (Optional[SimConfig]): Run settings. Defaults to
                SimConfig().

        Returns:
            SimResult: Empirical moments with standard errors next to the
                analytic pair.

        Raises:
            DegeneratePowerSplitError: Hybrid mode at alpha1 in {0, 1}.
            InvalidParamsError: Uncoded mode with rho > 0.
        """

        config = config or SimConfig()
        executor = None
        if config.workers == 1:
            executor = self._engine._ensure_executor()
        return run_simulation(source, channel, split, config, executor)


    def verdict(self, result: SimResult) -> ConsistencyStatus:
        """PASS/FAIL at the engine's consistency band."""
        return consistency_verdict(
            result, self._engine.config.consistency_bands
        )


    def effective_noise(
        self,
        source: SourceSpec,
        channel: ChannelSpec,
        split: PowerSplit,
        config: Optional[SimConfig] = None,
    ) -> EffectiveNoiseStats:
        """Measure W11 and W12 for the hybrid scheme at ``split``.

        Correlated mode is used when rho > 0.

        Raises:
            DegeneratePowerSplitError: If alpha1 is 0 or 1.
        """

        config = config or SimConfig()
        params = derive_scheme_params(
            source, channel, split, source.rho > 0,
            inflation=config.inflation,
        )
        stats = measure_effective_noise(
            params, source, channel, config, self._engine._ensure_executor()
        )
        _logger.info(
            f"Effective noise: var(W11)={stats.w11_variance.value:.6f} "
            f"(analytic {stats.analytic_w11_variance:.6f}), "
            f"E[W11 W12]={stats.cross_correlation.value:.3e}"
        )
        return stats
