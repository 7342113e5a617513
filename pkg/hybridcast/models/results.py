"""Closed-form region and comparison result models."""

import math
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..enums import Scheme, Verdict

# d2 agreement across schemes at a common alpha1, in units of ulp(d2)
SHARED_D2_ULPS = 4


class DistortionPair(BaseModel):
    """Mean squared errors at the two receivers.

    Attributes:
        d1 (float): MSE on source 1. When ``conditional`` is set this is
            the conditional distortion D1|2 (Receiver 1 also knows S2).
        d2 (float): MSE on source 2.
        conditional (bool): Marks d1 as D1|2.
    """

    model_config = ConfigDict(frozen=True)

    d1: float = Field(..., ge=0, allow_inf_nan=False)
    d2: float = Field(..., ge=0, allow_inf_nan=False)
    conditional: bool = False


class CurvePoint(BaseModel):
    """One sample of a frontier.

    Attributes:
        alpha1 (float): Power split.
        pair (DistortionPair): Distortions at that split.
    """

    model_config = ConfigDict(frozen=True)

    alpha1: float = Field(..., ge=0, le=1)
    pair: DistortionPair


class RegionCurve(BaseModel):
    """Frontier of a scheme's distortion region sampled on an alpha1 grid.

    Attributes:
        scheme (Scheme): Scheme the curve belongs to.
        points (List[CurvePoint]): Samples in strictly increasing alpha1.
    """

    model_config = ConfigDict(frozen=True)

    scheme: Scheme
    points: List[CurvePoint] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_grid_order(self) -> "RegionCurve":
        alphas = [p.alpha1 for p in self.points]
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise ValueError("alpha1 values must be strictly increasing")
        return self

    @property
    def alpha1_grid(self) -> List[float]:
        return [p.alpha1 for p in self.points]

    @property
    def d2_monotone(self) -> bool:
        """d2 is non-decreasing in alpha1."""
        d2 = [p.pair.d2 for p in self.points]
        return all(b >= a for a, b in zip(d2, d2[1:]))

    @property
    def d1_monotone(self) -> bool:
        """d1 is non-increasing in alpha1."""
        d1 = [p.pair.d1 for p in self.points]
        return all(b <= a for a, b in zip(d1, d1[1:]))

    @property
    def is_monotone(self) -> bool:
        """Whether the sample has the usual trade-off frontier shape."""
        return self.d1_monotone and self.d2_monotone


class SchemeRecord(BaseModel):
    """A scheme's distortion pair at one alpha1."""

    model_config = ConfigDict(frozen=True)

    scheme: Scheme
    pair: DistortionPair


class ComparisonRow(BaseModel):
    """All scheme pairs at a single alpha1 and the dominance verdicts.

    Attributes:
        alpha1 (float): Power split.
        records (List[SchemeRecord]): One record per applicable scheme.
        best_schemes (List[Scheme]): Achievable schemes attaining the
            smallest d1, ties included.
        hybrid_vs_a (Verdict): Hybrid (correlated) vs. Scheme A on d1.
        threshold (Optional[float]): (1 - 2 alpha1) / alpha1^2, None at
            alpha1 = 0.
        predicted_hybrid_wins (bool): rho > 0 and P/N1 < threshold.
        agrees (bool): Whether ``hybrid_vs_a`` matches the prediction.
    """

    model_config = ConfigDict(frozen=True)

    alpha1: float = Field(..., ge=0, le=1)
    records: List[SchemeRecord] = Field(..., min_length=1)
    best_schemes: List[Scheme]
    hybrid_vs_a: Verdict
    threshold: Optional[float] = None
    predicted_hybrid_wins: bool
    agrees: bool

    @model_validator(mode="after")
    def check_shared_d2(self) -> "ComparisonRow":
        d2 = [r.pair.d2 for r in self.records]
        spread = max(d2) - min(d2)
        if spread > SHARED_D2_ULPS * math.ulp(max(d2)):
            raise ValueError(
                f"d2 disagrees across schemes at alpha1={self.alpha1}: "
                f"spread {spread}"
            )
        return self

    def pair_for(self, scheme: Scheme) -> Optional[DistortionPair]:
        for record in self.records:
            if record.scheme is scheme:
                return record.pair
        return None


class ComparisonReport(BaseModel):
    """Scheme comparison over an alpha1 grid.

    Attributes:
        alpha1_grid (List[float]): The grid, strictly increasing.
        rows (List[ComparisonRow]): One row per grid point.
    """

    model_config = ConfigDict(frozen=True)

    alpha1_grid: List[float]
    rows: List[ComparisonRow]

    @model_validator(mode="after")
    def check_rows_match_grid(self) -> "ComparisonReport":
        if [r.alpha1 for r in self.rows] != list(self.alpha1_grid):
            raise ValueError("rows must follow alpha1_grid")
        return self

    @property
    def all_agree(self) -> bool:
        return all(r.agrees for r in self.rows)


class ThresholdRow(BaseModel):
    """Threshold analysis at one alpha1.

    Attributes:
        alpha1 (float): Power split.
        threshold (Optional[float]): (1 - 2 alpha1) / alpha1^2; None
            stands for +inf at alpha1 = 0.
        p_over_n1 (float): Channel SNR at Receiver 1.
        hybrid_beats_a_predicted (bool): Prediction from the threshold.
        hybrid_beats_a_observed (bool): Observed from the closed forms.
        verdict (Verdict): Observed verdict, TIE included.
        agrees (bool): Prediction and observation are consistent.
    """

    model_config = ConfigDict(frozen=True)

    alpha1: float = Field(..., ge=0, le=1)
    threshold: Optional[float] = None
    p_over_n1: float
    hybrid_beats_a_predicted: bool
    hybrid_beats_a_observed: bool
    verdict: Verdict
    agrees: bool
