"""Source, channel and power-split input models."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class SourceSpec(BaseModel):
    """Bivariate Gaussian source law.

    Both components have variance ``sigma2`` and correlation ``rho``.
    Negative correlation is rejected; negate one source instead.

    Attributes:
        sigma2 (float): Variance of each source component.
        rho (float): Correlation coefficient in [0, 1).
    """

    model_config = ConfigDict(frozen=True)

    sigma2: float = Field(..., gt=0, allow_inf_nan=False)
    rho: float = Field(0.0, ge=0, lt=1, allow_inf_nan=False)

    @property
    def independent(self) -> bool:
        return self.rho == 0

    @property
    def innovation_variance(self) -> float:
        """Variance of V in S1 = rho * S2 + V."""
        return self.sigma2 * (1.0 - self.rho ** 2)

    @property
    def covariance(self) -> np.ndarray:
        """The 2x2 covariance matrix of (S1, S2)."""
        off = self.rho * self.sigma2
        return np.array([[self.sigma2, off], [off, self.sigma2]])


class ChannelSpec(BaseModel):
    """Physically degraded Gaussian broadcast channel.

    Attributes:
        power (float): Average input power budget P.
        n1 (float): Noise variance at Receiver 1.
        n2 (float): Noise variance at Receiver 2, strictly above n1.
    """

    model_config = ConfigDict(frozen=True)

    power: float = Field(..., gt=0, allow_inf_nan=False)
    n1: float = Field(..., gt=0, allow_inf_nan=False)
    n2: float = Field(..., gt=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def check_degraded(self) -> "ChannelSpec":
        """Validate the degradedness assumption.

        Raises:
            ValueError: If n2 <= n1.
        """

        if self.n2 <= self.n1:
            raise ValueError(
                f"channel must be degraded: n2 ({self.n2}) must exceed "
                f"n1 ({self.n1})"
            )
        return self

    @property
    def snr1(self) -> float:
        """P / N1."""
        return self.power / self.n1


class PowerSplit(BaseModel):
    """Fraction of power given to the coded / first-source branch.

    Attributes:
        alpha1 (float): Power fraction in [0, 1].
    """

    model_config = ConfigDict(frozen=True)

    alpha1: float = Field(..., ge=0, le=1, allow_inf_nan=False)

    @property
    def at_endpoint(self) -> bool:
        return self.alpha1 in (0.0, 1.0)
