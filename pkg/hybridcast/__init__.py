"""hybridcast.

Distortion regions of hybrid, uncoded and separation-based schemes for
correlated Gaussian sources over a degraded Gaussian broadcast channel,
with a Monte Carlo dithered modulo-lattice transceiver to check them.
"""

__version__ = "1.0.0"
__author__ = "hybridcast developers"
__license__ = "MIT"

from .config import EngineConfig, SimConfig
from .engine import HybridCastEngine
from .enums import (
    Command,
    ConsistencyStatus,
    LatticeMode,
    OutputFormat,
    Scheme,
    SimMode,
    Verdict,
)
from .errors import (
    ConsistencyError,
    DegeneratePowerSplitError,
    DimensionMismatchError,
    HybridCastError,
    InvalidParamsError,
    from_validation_error,
)
from .lattice import Lattice
from .models import (
    # Inputs
    ChannelSpec,
    PowerSplit,
    SourceSpec,
    # Derived constants
    SchemeParams,
    # Closed-form results
    ComparisonReport,
    ComparisonRow,
    CurvePoint,
    DistortionPair,
    RegionCurve,
    SchemeRecord,
    ThresholdRow,
    # Simulation results
    EffectiveNoiseStats,
    Estimate,
    SimResult,
)

__all__ = [
    # Version info
    "__version__",

    # Main engine
    "HybridCastEngine",

    # Configuration
    "EngineConfig",
    "SimConfig",

    # Exceptions
    "HybridCastError",
    "InvalidParamsError",
    "DegeneratePowerSplitError",
    "DimensionMismatchError",
    "ConsistencyError",
    "from_validation_error",

    # Enums
    "Scheme",
    "Verdict",
    "SimMode",
    "LatticeMode",
    "ConsistencyStatus",
    "OutputFormat",
    "Command",

    # Input models
    "SourceSpec",
    "ChannelSpec",
    "PowerSplit",
    "SchemeParams",

    # Result models
    "DistortionPair",
    "CurvePoint",
    "RegionCurve",
    "SchemeRecord",
    "ComparisonRow",
    "ComparisonReport",
    "ThresholdRow",
    "Estimate",
    "EffectiveNoiseStats",
    "SimResult",

    # Lattice
    "Lattice",
]
