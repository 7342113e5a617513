"""Monte Carlo simulation enumerations."""

from enum import Enum


class SimMode(str, Enum):
    """Transceiver to simulate.

    Attributes:
        HYBRID: Superposition of the lattice-coded branch and uncoded S2.
            Runs in correlated mode when the source has rho > 0.
        UNCODED: Linear combination of S1 and S2.
    """

    HYBRID = "hybrid"
    UNCODED = "uncoded"


class LatticeMode(str, Enum):
    """How Receiver 1 resolves the modulo-lattice reduction.

    Attributes:
        IDEAL: Alias-free algebraic value, as for a good lattice.
        PHYSICAL: True mod-lattice chain on the scaled integer lattice.
    """

    IDEAL = "ideal"
    PHYSICAL = "physical"


class ConsistencyStatus(str, Enum):
    """Result of the Monte Carlo vs. closed-form band check."""

    PASS = "PASS"
    FAIL = "FAIL"
