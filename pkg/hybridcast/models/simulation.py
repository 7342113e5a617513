"""Monte Carlo result models."""

from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..enums import LatticeMode, SimMode
from .results import DistortionPair


class Estimate(BaseModel):
    """Sample mean with its 1-sigma standard error.

    Attributes:
        value (float): Sample mean.
        stderr (float): Standard error of the mean.
    """

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., allow_inf_nan=False)
    stderr: float = Field(..., ge=0, allow_inf_nan=False)

    def within(self, target: float, bands: float) -> bool:
        """Whether ``target`` lies within ``bands`` standard errors."""
        return abs(self.value - target) <= bands * self.stderr


class EffectiveNoiseStats(BaseModel):
    """Empirical moments of the effective noise terms at Receiver 1.

    Attributes:
        w11_variance (Estimate): Second moment of W11.
        w12_variance (Estimate): Second moment of W12.
        cross_correlation (Estimate): Mean of W11 * W12.
        s2_term_max (float): Largest magnitude of the S2 leakage term
            gamma * (delta + beta) * s2, zero when beta = -delta.
        analytic_w11_variance (float): Closed-form variance of W11.
        analytic_w12_variance (float): Closed-form variance of W12.
        coordinates (int): Number of scalar samples.
    """

    model_config = ConfigDict(frozen=True)

    w11_variance: Estimate
    w12_variance: Estimate
    cross_correlation: Estimate
    s2_term_max: float = Field(..., ge=0)
    analytic_w11_variance: float
    analytic_w12_variance: float
    coordinates: int = Field(..., ge=1)


class SimResult(BaseModel):
    """Outcome of a Monte Carlo transceiver run.

    Attributes:
        mode (SimMode): Transceiver simulated.
        correlated (bool): Whether the hybrid encoder coded V.
        lattice_mode (LatticeMode): Receiver 1 modulo handling.
        inflation (float): Lattice inflation factor kappa.
        coordinates (int): trials * blocklength.
        empirical_d1 (Estimate): MSE on S1.
        empirical_d2 (Estimate): MSE on S2.
        empirical_power (Estimate): Mean of X^2.
        w_variance (Optional[Estimate]): Second moment of W11.
        w12_variance (Optional[Estimate]): Second moment of W12.
        w_cross_correlation (Optional[Estimate]): Mean of W11 * W12.
        x1_s2_cross (Optional[Estimate]): Mean of X1 * S2.
        overload_rate (float): Fraction of coordinates where the
            modulo reduction at Receiver 1 aliased.
        analytic (DistortionPair): Matching closed-form pair.
        config (Dict[str, Any]): The SimConfig that produced the run.
    """

    model_config = ConfigDict(frozen=True)

    mode: SimMode
    correlated: bool = False
    lattice_mode: LatticeMode
    inflation: float = Field(1.0, ge=1)
    coordinates: int = Field(..., ge=1)
    empirical_d1: Estimate
    empirical_d2: Estimate
    empirical_power: Estimate
    w_variance: Optional[Estimate] = None
    w12_variance: Optional[Estimate] = None
    w_cross_correlation: Optional[Estimate] = None
    x1_s2_cross: Optional[Estimate] = None
    overload_rate: float = Field(0.0, ge=0, le=1)
    analytic: DistortionPair
    config: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_ideal_has_no_overload(self) -> "SimResult":
        if self.lattice_mode is LatticeMode.IDEAL and self.overload_rate != 0:
            raise ValueError("overload_rate must be 0 in ideal mode")
        return self

    @property
    def d1_gap(self) -> float:
        """Empirical minus analytic d1."""
        return self.empirical_d1.value - self.analytic.d1

    @property
    def d2_gap(self) -> float:
        return self.empirical_d2.value - self.analytic.d2
