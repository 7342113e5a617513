"""Transmission scheme enumerations."""

from enum import Enum


class Scheme(str, Enum):
    """Schemes whose distortion regions can be computed.

    Attributes:
        OUTER_BOUND: Converse bound (conditional on S2 when rho > 0).
        HYBRID_INDEPENDENT: Hybrid lattice scheme for independent sources.
        UNCODED: Linear combination of both sources, sent uncoded.
        HYBRID_CORRELATED: Hybrid lattice scheme on the innovation V.
        SEPARATION_A: Separate coding treating the sources as independent.
        SEPARATION_B: Separate coding of V and S2, Receiver 1 decodes both.
    """

    OUTER_BOUND = "OuterBound"
    HYBRID_INDEPENDENT = "HybridIndependent"
    UNCODED = "Uncoded"
    HYBRID_CORRELATED = "HybridCorrelated"
    SEPARATION_A = "SeparationA"
    SEPARATION_B = "SeparationB"

    @property
    def independent_only(self) -> bool:
        """Whether the scheme is only defined for rho = 0."""
        return self in (Scheme.HYBRID_INDEPENDENT, Scheme.UNCODED)

    @property
    def achievable(self) -> bool:
        """Whether the scheme is an actual code rather than a bound."""
        return self is not Scheme.OUTER_BOUND

    @classmethod
    def parse(cls, name: str) -> "Scheme":
        """Look up a scheme by value or by a short CLI alias."""
        aliases = {
            "outer": cls.OUTER_BOUND,
            "hybrid": cls.HYBRID_INDEPENDENT,
            "uncoded": cls.UNCODED,
            "correlated": cls.HYBRID_CORRELATED,
            "a": cls.SEPARATION_A,
            "b": cls.SEPARATION_B,
        }
        key = name.strip()
        if key.lower() in aliases:
            return aliases[key.lower()]
        for member in cls:
            if member.value.lower() == key.lower():
                return member
        raise ValueError(f"Unknown scheme '{name}'")


class Verdict(str, Enum):
    """Outcome of the hybrid vs. Scheme A comparison at one alpha1.

    Attributes:
        HYBRID: Hybrid attains strictly smaller d1.
        SCHEME_A: Scheme A attains strictly smaller d1.
        TIE: Relative difference below the tie tolerance.
    """

    HYBRID = "HYBRID"
    SCHEME_A = "SCHEME_A"
    TIE = "TIE"
