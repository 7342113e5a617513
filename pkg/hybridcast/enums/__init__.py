"""Enums package for hybridcast.

This package contains all enumeration types used throughout hybridcast:

- schemes: transmission schemes and comparison verdicts
- simulation: transceiver and lattice modes, consistency status
- output: CLI commands and output formats

Usage:
    from hybridcast.enums import Scheme, LatticeMode
"""

from .output import Command, OutputFormat
from .schemes import Scheme, Verdict
from .simulation import ConsistencyStatus, LatticeMode, SimMode


__all__ = [
    "Scheme",
    "Verdict",
    "SimMode",
    "LatticeMode",
    "ConsistencyStatus",
    "OutputFormat",
    "Command",
]
