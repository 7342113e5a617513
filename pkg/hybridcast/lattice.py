"""Dithered modulo-lattice machinery on the scaled integer lattice s*Z^n.

The quantizer rounds each coordinate half-to-even. The fundamental cell
is the half-open box [-s/2, s/2)^n; ``mod_lattice`` folds the s/2 tie
back to -s/2 so every reduced vector lies in that cell.
"""

import logging
import math
from typing import NamedTuple, Optional, Tuple

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats

from .errors import DimensionMismatchError, InvalidParamsError

_logger = logging.getLogger(__name__)

Vector = npt.NDArray[np.float64]


class Lattice(BaseModel):
    """Scaled integer lattice s*Z^n.

    Attributes:
        dimension (int): Lattice dimension n.
        scale (float): Per-axis cell width s.
    """

    model_config = ConfigDict(frozen=True)

    dimension: int = Field(..., ge=1)
    scale: float = Field(..., gt=0, allow_inf_nan=False)

    @property
    def second_moment(self) -> float:
        """Per-dimension second moment of the cell, s^2 / 12."""
        return self.scale ** 2 / 12.0

    @property
    def half_width(self) -> float:
        return self.scale / 2.0


class UniformityCheck(NamedTuple):
    """Kolmogorov-Smirnov check of (x + U) mod lattice against uniform.

    Attributes:
        statistic: Largest per-coordinate KS distance.
        pvalue: Smallest per-coordinate p-value.
    """

    statistic: float
    pvalue: float


def _as_vector(lattice: Lattice, x: npt.ArrayLike) -> Vector:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0 or arr.shape[-1] != lattice.dimension:
        actual = 1 if arr.ndim == 0 else arr.shape[-1]
        raise DimensionMismatchError(
            "vector length does not match lattice dimension",
            expected=lattice.dimension,
            actual=actual,
        )
    return arr


def quantize(lattice: Lattice, x: npt.ArrayLike) -> Vector:
    """Nearest lattice point, s * round(x / s) per coordinate.

    Accepts a single vector of length n or a batch with last axis n.

    Raises:
        DimensionMismatchError: If the last axis is not n.
    """
    arr = _as_vector(lattice, x)
    return lattice.scale * np.round(arr / lattice.scale)


def _reduce(lattice: Lattice, arr: Vector) -> Tuple[Vector, Vector]:
    """Split ``arr`` into (lattice point, residual in the half-open cell)."""
    s = lattice.scale
    point = s * np.round(arr / s)
    residual = arr - point
    upper = residual >= lattice.half_width
    lower = residual < -lattice.half_width
    residual = np.where(upper, residual - s, residual)
    residual = np.where(lower, residual + s, residual)
    point = np.where(upper, point + s, point)
    point = np.where(lower, point - s, point)
    return point, residual


def mod_lattice(lattice: Lattice, x: npt.ArrayLike) -> Vector:
    """Reduce ``x`` into the fundamental cell [-s/2, s/2)^n.

    Raises:
        DimensionMismatchError: If the last axis is not n.
    """
    return _reduce(lattice, _as_vector(lattice, x))[1]


def lattice_point(lattice: Lattice, x: npt.ArrayLike) -> Vector:
    """The lattice point removed by ``mod_lattice``.

    Equal to ``quantize`` except on cell boundaries, where the half-open
    convention picks the other neighbour.
    """
    return _reduce(lattice, _as_vector(lattice, x))[0]


def sample_dither(
    lattice: Lattice,
    rng: np.random.Generator,
    blocks: Optional[int] = None,
) -> Vector:
    """Draw a dither uniform on the fundamental cell.

    Args:
        lattice: The lattice.
        rng: Generator owned by the caller; the draw is deterministic
            given its state.
        blocks: If given, draw that many dithers as rows of a matrix.

    Returns:
        Vector of shape (n,) or (blocks, n).
    """
    shape = (lattice.dimension,) if blocks is None else (
        blocks, lattice.dimension
    )
    u = (rng.random(shape) - 0.5) * lattice.scale
    return np.where(u >= lattice.half_width, -lattice.half_width, u)


def scale_for_power(dimension: int, p_prime: float) -> Lattice:
    """Lattice whose second moment equals ``p_prime``.

    Raises:
        InvalidParamsError: If p_prime <= 0 or dimension < 1.
    """
    if not p_prime > 0 or math.isinf(p_prime):
        raise InvalidParamsError(
            "lattice second moment must be positive and finite",
            field_errors={"p_prime": f"got {p_prime}"},
        )
    if dimension < 1:
        raise InvalidParamsError(
            "lattice dimension must be >= 1",
            field_errors={"dimension": f"got {dimension}"},
        )
    return Lattice(dimension=dimension, scale=math.sqrt(12.0 * p_prime))


def dither_uniformity(
    lattice: Lattice,
    x: npt.ArrayLike,
    rng: np.random.Generator,
    samples: int = 100_000,
) -> UniformityCheck:
    """Test that (x + U) mod lattice is uniform on the cell for fixed x.

    This is what makes the coded branch independent of the payload and
    of the pre-subtracted interference.
    """
    arr = _as_vector(lattice, x)
    dithers = sample_dither(lattice, rng, blocks=samples)
    reduced = mod_lattice(lattice, arr + dithers)

    statistic, pvalue = 0.0, 1.0
    for j in range(lattice.dimension):
        result = stats.kstest(
            reduced[:, j],
            "uniform",
            args=(-lattice.half_width, lattice.scale),
        )
        statistic = max(statistic, float(result.statistic))
        pvalue = min(pvalue, float(result.pvalue))

    _logger.debug(
        f"Dither uniformity over {samples} samples: KS={statistic:.5f}"
    )
    return UniformityCheck(statistic=statistic, pvalue=pvalue)
