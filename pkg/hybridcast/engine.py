import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from .config import EngineConfig
from .methods import RegionMethods, SimulationMethods

_logger = logging.getLogger(__name__)


class HybridCastEngine:
    """Entry point for region computations and transceiver simulations.

    The engine owns the configuration, optional logging setup and a
    lazily created thread pool shared by Monte Carlo runs.

    The engine is organized into functional methods:
        - regions: Closed-form points, sweeps, comparisons, thresholds
        - simulation: Monte Carlo runs and effective noise measurement

    Attributes:
        config (EngineConfig): Engine settings.
        workers (int): Size of the shared worker pool.
        regions (RegionMethods): Closed-form region methods.
        simulation (SimulationMethods): Monte Carlo methods.
    """

    def __init__(
        self,
        config: Optional[EngineConfig] = None,
        workers: Optional[int] = None,
    ):
        """Initializes the HybridCastEngine.

        Args:
            config: EngineConfig instance with all settings.
            workers: Thread count for trials. Overrides config.workers.
        """
        if config is None:
            config = EngineConfig()

        self.config = config
        self.workers = workers if workers is not None else config.workers
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

        if config.enable_logging:
            logging.basicConfig(
                level=getattr(logging, config.log_level.upper()),
                format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            )

        self._executor: Optional[ThreadPoolExecutor] = None

        self.regions = RegionMethods(self)
        self.simulation = SimulationMethods(self)

    def _ensure_executor(self) -> Optional[ThreadPoolExecutor]:
        """Returns the shared pool, or None when running single-threaded."""
        if self.workers == 1:
            return None
        if self._executor is None:
            self._executor = ThreadPoolExecutor(
                max_workers=self.workers,
                thread_name_prefix="hybridcast",
            )
            _logger.debug(f"Started worker pool with {self.workers} threads")
        return self._executor

    def close(self) -> None:
        """Shuts down the worker pool if one was started."""
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None
            _logger.debug("Worker pool shut down")

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
