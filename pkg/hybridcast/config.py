"""Simulation and engine configuration."""

import os
from dataclasses import dataclass, field, fields
from typing import Any, Dict, Union

from .enums import LatticeMode, SimMode

OUTPUT_DIR_ENV = "HYBRIDCAST_OUTPUT_DIR"


@dataclass(frozen=True)
class SimConfig:
    """Configuration for a Monte Carlo transceiver run.

    Attributes:
        blocklength: Coordinates per trial (the blocklength n). One fresh
            dither is drawn per block.
        trials: Number of independent blocks.
        seed: Root seed. Trial i draws from the i-th child of
            ``SeedSequence(seed)``, so results do not depend on how trials
            are scheduled.
        mode: Transceiver to simulate.
        lattice_mode: IDEAL resolves Receiver 1's modulo reduction without
            aliasing; PHYSICAL runs the true mod-lattice chain.
        inflation: Factor kappa >= 1 multiplying P' in PHYSICAL mode.
            Larger values lower the overload rate at the cost of a slack
            correct-decoding condition. Must be 1 in IDEAL mode.
        workers: Number of threads used for trials. Never changes the
            result.
    """

    blocklength: int = 1000
    trials: int = 100
    seed: int = 0
    mode: SimMode = SimMode.HYBRID
    lattice_mode: LatticeMode = LatticeMode.IDEAL
    inflation: float = 1.0
    workers: int = 1

    def __post_init__(self):
        """Validate configuration parameters after initialization.

        Raises:
            ValueError: If any parameter is invalid.
        """
        object.__setattr__(self, "mode", SimMode(self.mode))
        object.__setattr__(
            self, "lattice_mode", LatticeMode(self.lattice_mode)
        )

        if self.blocklength < 1:
            raise ValueError("blocklength must be >= 1")

        if self.trials < 1:
            raise ValueError("trials must be >= 1")

        if self.seed < 0:
            raise ValueError("seed must be >= 0")

        if self.workers < 1:
            raise ValueError("workers must be >= 1")

        if not self.inflation >= 1.0:
            raise ValueError("inflation must be >= 1")

        if (
            self.lattice_mode is LatticeMode.IDEAL
            and self.inflation != 1.0
        ):
            raise ValueError("inflation only applies in physical mode")

    @property
    def coordinates(self) -> int:
        return self.blocklength * self.trials

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> "SimConfig":
        """Create configuration from dictionary.

        Unknown keys are ignored, so a SimResult's echoed config can be
        fed back in directly.

        Args:
            config_dict: Dictionary with configuration parameters.

        Returns:
            SimConfig instance.
        """
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in config_dict.items() if k in names})

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to a JSON-friendly dictionary."""
        return {
            "blocklength": self.blocklength,
            "trials": self.trials,
            "seed": self.seed,
            "mode": self.mode.value,
            "lattice_mode": self.lattice_mode.value,
            "inflation": self.inflation,
            "workers": self.workers,
        }


def _default_output_dir() -> str:
    return os.environ.get(OUTPUT_DIR_ENV, ".")


@dataclass
class EngineConfig:
    """Configuration for HybridCastEngine.

    Attributes:
        workers: Default thread count for Monte Carlo trials.
        enable_logging: Whether to configure logging output. If False the
            library emits nothing unless the caller configures logging.
        log_level: Logging level used when enable_logging is True. Valid
            values: 'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'.
        output_dir: Directory for relative output paths. Defaults to the
            HYBRIDCAST_OUTPUT_DIR environment variable, else '.'.
        grid_points: Points in the default alpha1 grid on [0, 1].
        tie_tolerance: Relative d1 difference below which two schemes tie.
        consistency_bands: Standard errors allowed between empirical and
            analytic distortions before a run is marked FAIL.
    """

    workers: int = 1
    enable_logging: bool = False
    log_level: str = "INFO"
    output_dir: str = field(default_factory=_default_output_dir)
    grid_points: int = 201
    tie_tolerance: float = 1e-9
    consistency_bands: float = 4.0

    def __post_init__(self):
        """Validate configuration parameters after initialization.

        Raises:
            ValueError: If any parameter is invalid.
        """
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

        if self.grid_points < 2:
            raise ValueError("grid_points must be >= 2")

        if not 0 <= self.tie_tolerance < 1:
            raise ValueError("tie_tolerance must be in [0, 1)")

        if self.consistency_bands <= 0:
            raise ValueError("consistency_bands must be > 0")

        if not self.output_dir:
            raise ValueError("output_dir cannot be empty")

        valid_levels = {'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'}
        if self.log_level.upper() not in valid_levels:
            raise ValueError(
                f"log_level must be one of {valid_levels}, "
                f"got '{self.log_level}'"
            )

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> "EngineConfig":
        """Create configuration from dictionary.

        Useful for loading configuration from JSON files.

        Args:
            config_dict: Dictionary with configuration parameters.

        Returns:
            EngineConfig instance.
        """
        return cls(**{
            k: v for k, v in config_dict.items()
            if k in cls.__dataclass_fields__
        })

    def to_dict(self) -> Dict[str, Union[int, float, bool, str]]:
        """Convert configuration to dictionary."""
        return {
            "workers": self.workers,
            "enable_logging": self.enable_logging,
            "log_level": self.log_level,
            "output_dir": self.output_dir,
            "grid_points": self.grid_points,
            "tie_tolerance": self.tie_tolerance,
            "consistency_bands": self.consistency_bands,
        }
