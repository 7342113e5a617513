"""Engine methods package.

This package groups the operations exposed by HybridCastEngine:

- regions: closed-form scheme points, frontier sweeps, comparisons and
  the SNR threshold analysis
- simulation: Monte Carlo transceiver runs and effective noise checks

Usage:
    from hybridcast.methods import RegionMethods, SimulationMethods
"""

from .regions import RegionMethods
from .simulation import SimulationMethods

__all__ = [
    "RegionMethods",
    "SimulationMethods",
]
