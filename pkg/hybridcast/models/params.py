"""Derived transmitter and receiver constants."""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SchemeParams(BaseModel):
    """Constants of the hybrid transceiver for one power split.

    Built by ``core.derive_scheme_params``; not meant to be filled in by
    hand.

    Attributes:
        alpha1 (float): Power fraction of the coded branch, in (0, 1].
        p_prime (float): Lattice second moment P'.
        alpha (float): Coded-branch scaling, alpha^2 * P' = alpha1 * P.
        gamma (float): Uncoded-branch scaling, gamma^2 * sigma2 =
            (1 - alpha1) * P.
        delta (float): Receiver front-end scaling.
        beta (float): Transmitter pre-subtraction coefficient, -delta.
        target_variance (float): Variance of the lattice-coded payload
            (sigma2, or sigma2 * (1 - rho^2) in correlated mode).
        correlated (bool): Whether the payload is the innovation V.
        inflation (float): Factor kappa applied to P'.
    """

    model_config = ConfigDict(frozen=True)

    alpha1: float = Field(..., gt=0, le=1)
    p_prime: float = Field(..., gt=0)
    alpha: float = Field(..., gt=0)
    gamma: float = Field(..., ge=0)
    delta: float = Field(..., gt=0)
    beta: float
    target_variance: float = Field(..., gt=0)
    correlated: bool = False
    inflation: float = Field(1.0, ge=1)

    @model_validator(mode="after")
    def check_pre_subtraction(self) -> "SchemeParams":
        if self.beta != -self.delta:
            raise ValueError("beta must equal -delta")
        return self

    @property
    def coded_power(self) -> float:
        """Power of the coded branch, alpha^2 * P'."""
        return self.alpha ** 2 * self.p_prime

    @property
    def lattice_scale(self) -> float:
        """Cell width of the scaled integer lattice with moment P'."""
        return math.sqrt(12.0 * self.p_prime)
