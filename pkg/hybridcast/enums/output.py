"""Command-line output enumerations."""

from enum import Enum


class OutputFormat(str, Enum):
    """Serialization format for emitted tables.

    Attributes:
        CSV: Header row, comma separated, LF line endings.
        JSON: UTF-8 object with a version field.
    """

    CSV = "csv"
    JSON = "json"


class Command(str, Enum):
    """CLI subcommands."""

    REGION = "region"
    SWEEP = "sweep"
    COMPARE = "compare"
    THRESHOLD = "threshold"
    SIMULATE = "simulate"
