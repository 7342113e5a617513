"""Monte Carlo simulation of the hybrid and uncoded transceivers.

Every trial is one block of ``blocklength`` coordinates with a fresh
dither. Trial ``i`` draws from the ``i``-th child of
``SeedSequence(seed)`` and returns per-quantity sums; the sums are
combined with ``math.fsum`` in trial order, so results are bitwise
identical whatever the number of workers.
"""

import logging
import math
from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import numpy.typing as npt

from .config import SimConfig
from .core import (
    derive_scheme_params,
    effective_noise_variance,
    mmse_gain,
    w12_variance,
)
from .enums import ConsistencyStatus, LatticeMode, SimMode
from .errors import DegeneratePowerSplitError, DimensionMismatchError
from .lattice import (
    Lattice,
    lattice_point,
    mod_lattice,
    sample_dither,
    scale_for_power,
)
from .models import (
    ChannelSpec,
    EffectiveNoiseStats,
    Estimate,
    PowerSplit,
    SchemeParams,
    SimResult,
    SourceSpec,
)
from .regions import (
    hybrid_correlated_point,
    hybrid_independent_point,
    uncoded_point,
)

_logger = logging.getLogger(__name__)

Vector = npt.NDArray[np.float64]
# quantity name -> (sum, sum of squares); "overload" holds (count, count)
TrialSums = Dict[str, Tuple[float, float]]


@dataclass(frozen=True)
class TrialRecord:
    """All signals of one simulated block.

    Attributes:
        s1, s2, v: Sources, with s1 = rho * s2 + v.
        x1: Coded branch (None for uncoded transmission).
        x: Channel input.
        y1, y2: Receiver observations, y_k = x + z_k.
        r11: Receiver 1 observation of the payload after the modulo step.
        r12: Receiver 1 observation of s2, y1 / gamma.
        shat1, shat2: Estimates.
    """

    s1: Vector
    s2: Vector
    v: Vector
    x1: Optional[Vector]
    x: Vector
    y1: Vector
    y2: Vector
    r11: Optional[Vector]
    r12: Optional[Vector]
    shat1: Vector
    shat2: Vector


def _check_length(name: str, arr: Vector, n: int) -> None:
    if arr.shape[-1] != n:
        raise DimensionMismatchError(
            f"{name} does not match the block length",
            expected=n,
            actual=arr.shape[-1],
        )


def gen_sources(
    source: SourceSpec,
    n: int,
    rng: np.random.Generator,
) -> Tuple[Vector, Vector, Vector]:
    """Draw n i.i.d. source pairs.

    Returns:
        (s1, s2, v) with s2 ~ N(0, sigma2), v ~ N(0, sigma2 (1 - rho^2))
        independent and s1 = rho * s2 + v.
    """
    s2 = math.sqrt(source.sigma2) * rng.standard_normal(n)
    v = math.sqrt(source.innovation_variance) * rng.standard_normal(n)
    s1 = source.rho * s2 + v
    return s1, s2, v


def encode_hybrid(
    params: SchemeParams,
    lattice: Lattice,
    dither: Vector,
    payload: Vector,
    s2: Vector,
) -> Tuple[Vector, Vector]:
    """Hybrid encoder.

    x1 = [payload + beta * gamma * s2 + dither] mod lattice, and the
    channel input superposes x = alpha * x1 + gamma * s2. The payload is
    s1 for independent sources and v in correlated mode.

    Raises:
        DimensionMismatchError: If a vector is not of lattice dimension.
    """
    for name, arr in (("payload", payload), ("s2", s2), ("dither", dither)):
        _check_length(name, np.asarray(arr), lattice.dimension)

    x1 = mod_lattice(
        lattice, payload + params.beta * params.gamma * s2 + dither
    )
    x = params.alpha * x1 + params.gamma * s2
    return x1, x


def decode_receiver1(
    params: SchemeParams,
    source: SourceSpec,
    channel: ChannelSpec,
    lattice: Lattice,
    dither: Vector,
    y1: Vector,
    lattice_mode: LatticeMode,
    transmit_point: Optional[Vector] = None,
) -> Tuple[Vector, Optional[Vector], Vector]:
    """Receiver 1 of the hybrid scheme.

    r11 = [delta * y1 - dither] mod lattice = payload + W11 when no
    aliasing occurs. In IDEAL mode the lattice point removed at the
    transmitter (``transmit_point``) is added back instead, giving the
    alias-free value exactly.

    Independent mode estimates s1 from r11 alone. Correlated mode adds
    the LMMSE term in r12 = y1 / gamma = s2 + W12; W11 and W12 are
    uncorrelated so the two gains are computed separately. At gamma = 0
    the r12 term is dropped.

    Returns:
        (r11, r12, shat1); r12 is None when gamma = 0.

    Raises:
        DimensionMismatchError: If y1 or dither is not of lattice
            dimension.
        ValueError: If IDEAL mode is requested without transmit_point.
    """
    _check_length("y1", np.asarray(y1), lattice.dimension)
    _check_length("dither", np.asarray(dither), lattice.dimension)

    front = params.delta * y1 - dither
    if LatticeMode(lattice_mode) is LatticeMode.IDEAL:
        if transmit_point is None:
            raise ValueError("ideal mode needs the transmitter lattice point")
        r11 = front + transmit_point
    else:
        r11 = mod_lattice(lattice, front)

    gain11 = mmse_gain(
        params.target_variance, effective_noise_variance(params, channel)
    )
    shat1 = gain11 * r11

    r12 = None
    if params.gamma > 0:
        r12 = y1 / params.gamma
        if params.correlated:
            gain12 = source.rho * mmse_gain(
                source.sigma2, w12_variance(params, channel)
            )
            shat1 = shat1 + gain12 * r12
    return r11, r12, shat1


def decode_receiver2(
    params: SchemeParams,
    source: SourceSpec,
    channel: ChannelSpec,
    y2: Vector,
) -> Vector:
    """Receiver 2 LMMSE estimate, treating the coded branch as noise."""
    return params.gamma * source.sigma2 / (channel.power + channel.n2) * y2


def _sums(**quantities: Vector) -> TrialSums:
    return {
        name: (float(np.sum(q)), float(np.sum(q * q)))
        for name, q in quantities.items()
    }


def simulate_hybrid_block(
    source: SourceSpec,
    channel: ChannelSpec,
    params: SchemeParams,
    lattice: Lattice,
    lattice_mode: LatticeMode,
    rng: np.random.Generator,
) -> Tuple[TrialRecord, Vector, Vector]:
    """Run one block through the hybrid transceiver.

    Returns:
        (record, w11, overload) where w11 is the algebraic effective
        noise and overload flags coordinates where the modulo reduction
        at Receiver 1 aliased.
    """
    n = lattice.dimension
    s1, s2, v = gen_sources(source, n, rng)
    dither = sample_dither(lattice, rng)
    z1 = math.sqrt(channel.n1) * rng.standard_normal(n)
    z2 = math.sqrt(channel.n2) * rng.standard_normal(n)

    payload = v if params.correlated else s1
    pre = payload + params.beta * params.gamma * s2 + dither
    x1, x = encode_hybrid(params, lattice, dither, payload, s2)
    point = lattice_point(lattice, pre)
    y1 = x + z1
    y2 = x + z2

    r11, r12, shat1 = decode_receiver1(
        params, source, channel, lattice, dither, y1, lattice_mode,
        transmit_point=point,
    )
    shat2 = decode_receiver2(params, source, channel, y2)

    w11 = (
        params.gamma * (params.delta + params.beta) * s2
        + (params.delta * params.alpha - 1.0) * x1
        + params.delta * z1
    )
    alias_free = params.delta * y1 - dither + point
    overload = lattice_point(lattice, alias_free) != 0

    record = TrialRecord(
        s1=s1, s2=s2, v=v, x1=x1, x=x, y1=y1, y2=y2,
        r11=r11, r12=r12, shat1=shat1, shat2=shat2,
    )
    return record, w11, overload


def _hybrid_trial(
    source: SourceSpec,
    channel: ChannelSpec,
    params: SchemeParams,
    lattice: Lattice,
    lattice_mode: LatticeMode,
    seed: np.random.SeedSequence,
) -> TrialSums:
    rng = np.random.default_rng(seed)
    rec, w11, overload = simulate_hybrid_block(
        source, channel, params, lattice, lattice_mode, rng
    )
    quantities = {
        "e1": (rec.shat1 - rec.s1) ** 2,
        "e2": (rec.shat2 - rec.s2) ** 2,
        "power": rec.x ** 2,
        "w11": w11 ** 2,
        "x1s2": rec.x1 * rec.s2,
    }
    if params.gamma > 0:
        w12 = (params.alpha * rec.x1 + (rec.y1 - rec.x)) / params.gamma
        quantities["w12"] = w12 ** 2
        quantities["cross"] = w11 * w12
    sums = _sums(**quantities)
    count = float(np.count_nonzero(overload))
    sums["overload"] = (count, count)
    return sums


def _uncoded_trial(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
    n: int,
    seed: np.random.SeedSequence,
) -> TrialSums:
    rng = np.random.default_rng(seed)
    s1, s2, _ = gen_sources(source, n, rng)
    z1 = math.sqrt(channel.n1) * rng.standard_normal(n)
    z2 = math.sqrt(channel.n2) * rng.standard_normal(n)

    p1 = split.alpha1 * channel.power
    p2 = (1.0 - split.alpha1) * channel.power
    x = math.sqrt(p1 / source.sigma2) * s1 + math.sqrt(p2 / source.sigma2) * s2
    y1 = x + z1
    y2 = x + z2

    shat1 = math.sqrt(p1 * source.sigma2) / (channel.power + channel.n1) * y1
    shat2 = math.sqrt(p2 * source.sigma2) / (channel.power + channel.n2) * y2
    return _sums(
        e1=(shat1 - s1) ** 2,
        e2=(shat2 - s2) ** 2,
        power=x ** 2,
    )


def _run_trials(
    trial: Callable[[np.random.SeedSequence], TrialSums],
    config: SimConfig,
    executor: Optional[Executor] = None,
) -> Dict[str, Tuple[float, float]]:
    """Run all trials and combine their sums in trial order."""
    children = np.random.SeedSequence(config.seed).spawn(config.trials)

    if executor is not None:
        results: List[TrialSums] = list(executor.map(trial, children))
    elif config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(trial, children))
    else:
        results = [trial(child) for child in children]

    combined = {}
    for name in results[0]:
        combined[name] = (
            math.fsum(r[name][0] for r in results),
            math.fsum(r[name][1] for r in results),
        )
    return combined


def _estimate(sums: Tuple[float, float], count: int) -> Estimate:
    """Mean and standard error from a sum and a sum of squares."""
    total, total_sq = sums
    mean = total / count
    if count < 2:
        return Estimate(value=mean, stderr=0.0)
    variance = max((total_sq - count * mean * mean) / (count - 1), 0.0)
    return Estimate(value=mean, stderr=math.sqrt(variance / count))


def _echo(config: SimConfig) -> Dict[str, object]:
    """SimConfig as recorded in a SimResult; workers never affect it."""
    echoed = config.to_dict()
    echoed.pop("workers")
    return echoed


def run_hybrid(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
    config: SimConfig,
    executor: Optional[Executor] = None,
) -> SimResult:
    """Simulate the hybrid transceiver.

    Correlated mode (coding V) is used whenever rho > 0. In IDEAL mode the
    empirical distortions converge to the closed forms; PHYSICAL mode
    additionally reports the overload rate of the scaled integer lattice
    inflated by ``config.inflation``.

    Raises:
        DegeneratePowerSplitError: If alpha1 is 0 or 1.
    """
    if split.at_endpoint:
        raise DegeneratePowerSplitError(
            "hybrid transceiver needs 0 < alpha1 < 1",
            alpha1=split.alpha1,
        )

    correlated = source.rho > 0
    lattice_mode = config.lattice_mode
    params = derive_scheme_params(
        source, channel, split, correlated, inflation=config.inflation
    )
    lattice = scale_for_power(config.blocklength, params.p_prime)
    analytic = (
        hybrid_correlated_point(source, channel, split) if correlated
        else hybrid_independent_point(source, channel, split)
    )
    _logger.debug(
        f"Hybrid run: alpha1={split.alpha1}, correlated={correlated}, "
        f"mode={lattice_mode.value}, P'={params.p_prime}, "
        f"scale={lattice.scale}"
    )

    trial = partial(
        _hybrid_trial, source, channel, params, lattice, lattice_mode
    )
    sums = _run_trials(trial, config, executor)
    count = config.coordinates

    overload_rate = 0.0
    if lattice_mode is LatticeMode.PHYSICAL:
        overload_rate = sums["overload"][0] / count
        if overload_rate > 0:
            _logger.warning(
                f"Modulo overload on {overload_rate:.4%} of coordinates "
                f"(inflation={config.inflation})"
            )

    result = SimResult(
        mode=SimMode.HYBRID,
        correlated=correlated,
        lattice_mode=lattice_mode,
        inflation=config.inflation,
        coordinates=count,
        empirical_d1=_estimate(sums["e1"], count),
        empirical_d2=_estimate(sums["e2"], count),
        empirical_power=_estimate(sums["power"], count),
        w_variance=_estimate(sums["w11"], count),
        w12_variance=_estimate(sums["w12"], count),
        w_cross_correlation=_estimate(sums["cross"], count),
        x1_s2_cross=_estimate(sums["x1s2"], count),
        overload_rate=overload_rate,
        analytic=analytic,
        config=_echo(config),
    )
    _logger.info(
        f"Hybrid run done: d1={result.empirical_d1.value:.6f} "
        f"(analytic {analytic.d1:.6f}), d2={result.empirical_d2.value:.6f} "
        f"(analytic {analytic.d2:.6f})"
    )
    return result


def run_uncoded(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
    config: SimConfig,
    executor: Optional[Executor] = None,
) -> SimResult:
    """Simulate uncoded transmission of a linear combination of S1, S2.

    Raises:
        InvalidParamsError: If rho != 0.
    """
    analytic = uncoded_point(source, channel, split)

    trial = partial(
        _uncoded_trial, source, channel, split, config.blocklength
    )
    sums = _run_trials(trial, config, executor)
    count = config.coordinates

    result = SimResult(
        mode=SimMode.UNCODED,
        lattice_mode=config.lattice_mode,
        inflation=config.inflation,
        coordinates=count,
        empirical_d1=_estimate(sums["e1"], count),
        empirical_d2=_estimate(sums["e2"], count),
        empirical_power=_estimate(sums["power"], count),
        analytic=analytic,
        config=_echo(config),
    )
    _logger.info(
        f"Uncoded run done: d1={result.empirical_d1.value:.6f} "
        f"(analytic {analytic.d1:.6f})"
    )
    return result


def run_simulation(
    source: SourceSpec,
    channel: ChannelSpec,
    split: PowerSplit,
    config: SimConfig,
    executor: Optional[Executor] = None,
) -> SimResult:
    """Dispatch on ``config.mode``."""
    if config.mode is SimMode.UNCODED:
        return run_uncoded(source, channel, split, config, executor)
    return run_hybrid(source, channel, split, config, executor)


def _noise_trial(
    source: SourceSpec,
    channel: ChannelSpec,
    params: SchemeParams,
    lattice: Lattice,
    seed: np.random.SeedSequence,
) -> TrialSums:
    rng = np.random.default_rng(seed)
    n = lattice.dimension
    s1, s2, v = gen_sources(source, n, rng)
    dither = sample_dither(lattice, rng)
    z1 = math.sqrt(channel.n1) * rng.standard_normal(n)

    payload = v if params.correlated else s1
    x1, _ = encode_hybrid(params, lattice, dither, payload, s2)

    leak = params.gamma * (params.delta + params.beta) * s2
    w11 = leak + (params.delta * params.alpha - 1.0) * x1 + params.delta * z1
    w12 = (params.alpha * x1 + z1) / params.gamma

    sums = _sums(w11=w11 ** 2, w12=w12 ** 2, cross=w11 * w12)
    leak_max = float(np.max(np.abs(leak)))
    sums["leak"] = (leak_max, leak_max)
    return sums


def measure_effective_noise(
    params: SchemeParams,
    source: SourceSpec,
    channel: ChannelSpec,
    config: SimConfig,
    executor: Optional[Executor] = None,
) -> EffectiveNoiseStats:
    """Empirical moments of W11 and W12, computed without the modulo step.

    W11 = gamma (delta + beta) s2 + (delta alpha - 1) x1 + delta z1 and
    W12 = (alpha x1 + z1) / gamma.

    Raises:
        DegeneratePowerSplitError: If gamma = 0.
    """
    if params.gamma == 0:
        raise DegeneratePowerSplitError(
            "W12 is undefined without an uncoded branch",
            alpha1=params.alpha1,
        )
    lattice = scale_for_power(config.blocklength, params.p_prime)
    trial = partial(_noise_trial, source, channel, params, lattice)

    children = np.random.SeedSequence(config.seed).spawn(config.trials)
    if executor is not None:
        results = list(executor.map(trial, children))
    else:
        results = [trial(child) for child in children]

    sums = {
        name: (
            math.fsum(r[name][0] for r in results),
            math.fsum(r[name][1] for r in results),
        )
        for name in ("w11", "w12", "cross")
    }
    count = config.coordinates
    return EffectiveNoiseStats(
        w11_variance=_estimate(sums["w11"], count),
        w12_variance=_estimate(sums["w12"], count),
        cross_correlation=_estimate(sums["cross"], count),
        s2_term_max=max(r["leak"][0] for r in results),
        analytic_w11_variance=effective_noise_variance(params, channel),
        analytic_w12_variance=w12_variance(params, channel),
        coordinates=count,
    )


def consistency_verdict(
    result: SimResult,
    bands: float = 4.0,
) -> ConsistencyStatus:
    """PASS when d1 and d2 lie within ``bands`` standard errors."""
    ok = (
        result.empirical_d1.within(result.analytic.d1, bands)
        and result.empirical_d2.within(result.analytic.d2, bands)
    )
    if not ok:
        _logger.error(
            f"Empirical distortions outside {bands} standard errors: "
            f"d1 gap {result.d1_gap:.3e}, d2 gap {result.d2_gap:.3e}"
        )
    return ConsistencyStatus.PASS if ok else ConsistencyStatus.FAIL
