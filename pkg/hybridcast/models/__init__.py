"""Data models package.

This package contains all Pydantic data models used for parameter
validation and result serialization, organized by role:

- specs: inputs (source law, broadcast channel, power split)
- params: derived transceiver constants
- results: closed-form distortion pairs, frontiers and comparisons
- simulation: Monte Carlo estimates and run results

Usage:
    from hybridcast.models import SourceSpec, ChannelSpec, PowerSplit
    from hybridcast.models import DistortionPair, SimResult
"""

from .params import SchemeParams
from .results import (
    ComparisonReport,
    ComparisonRow,
    CurvePoint,
    DistortionPair,
    RegionCurve,
    SchemeRecord,
    ThresholdRow,
)
from .simulation import EffectiveNoiseStats, Estimate, SimResult
from .specs import ChannelSpec, PowerSplit, SourceSpec

__all__ = [
    # Inputs
    "SourceSpec",
    "ChannelSpec",
    "PowerSplit",
    # Derived constants
    "SchemeParams",
    # Closed-form results
    "DistortionPair",
    "CurvePoint",
    "RegionCurve",
    "SchemeRecord",
    "ComparisonRow",
    "ComparisonReport",
    "ThresholdRow",
    # Simulation results
    "Estimate",
    "EffectiveNoiseStats",
    "SimResult",
]
