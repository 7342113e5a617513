from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from hybridcast import (
    ConsistencyStatus,
    DegeneratePowerSplitError,
    DimensionMismatchError,
    DistortionPair,
    Estimate,
    InvalidParamsError,
    LatticeMode,
    PowerSplit,
    SimConfig,
    SimMode,
    SimResult,
    SourceSpec,
)
from hybridcast.core import derive_scheme_params
from hybridcast.lattice import Lattice, lattice_point, scale_for_power
from hybridcast.simulate import (
    consistency_verdict,
    decode_receiver1,
    decode_receiver2,
    encode_hybrid,
    gen_sources,
    measure_effective_noise,
    run_hybrid,
    run_uncoded,
)

BANDS = 4.0


def _config(**overrides) -> SimConfig:
    settings = {"blocklength": 1000, "trials": 200, "seed": 7}
    settings.update(overrides)
    return SimConfig(**settings)


class TestGenSources:
    def test_independent(self, desk_source):
        s1, s2, v = gen_sources(desk_source, 1000, np.random.default_rng(0))
        np.testing.assert_array_equal(s1, v)

    def test_correlation(self):
        source = SourceSpec(sigma2=1.0, rho=0.5)
        s1, s2, _ = gen_sources(source, 1_000_000, np.random.default_rng(1))
        assert np.corrcoef(s1, s2)[0, 1] == pytest.approx(0.5, abs=0.003)

    def test_variance(self):
        source = SourceSpec(sigma2=2.0, rho=0.3)
        s1, s2, _ = gen_sources(source, 1_000_000, np.random.default_rng(2))
        assert np.var(s1) == pytest.approx(2.0, rel=0.01)
        assert np.var(s2) == pytest.approx(2.0, rel=0.01)


class TestEncoder:
    def test_modulo_is_identity_inside_cell(self, desk_source, desk_channel):
        params = derive_scheme_params(
            desk_source, desk_channel, PowerSplit(alpha1=1.0)
        )
        lattice = scale_for_power(3, params.p_prime)
        payload = np.array([0.1, -0.4, 0.9])
        x1, x = encode_hybrid(
            params, lattice, np.zeros(3), payload, np.ones(3)
        )
        np.testing.assert_array_equal(x1, payload)
        np.testing.assert_allclose(x, params.alpha * payload)

    def test_lattice_point_maps_to_zero(self, desk_source, desk_channel):
        params = derive_scheme_params(
            desk_source, desk_channel, PowerSplit(alpha1=1.0)
        )
        lattice = Lattice(dimension=2, scale=params.lattice_scale)
        payload = np.array([lattice.scale, -2.0 * lattice.scale])
        x1, _ = encode_hybrid(params, lattice, np.zeros(2), payload,
                              np.zeros(2))
        np.testing.assert_allclose(x1, 0.0, atol=1e-12)

    def test_dimension_mismatch(self, desk_source, desk_channel, half_split):
        params = derive_scheme_params(desk_source, desk_channel, half_split)
        lattice = scale_for_power(4, params.p_prime)
        with pytest.raises(DimensionMismatchError):
            encode_hybrid(
                params, lattice, np.zeros(4), np.zeros(3), np.zeros(4)
            )


class TestDecoders:
    def test_noiseless_residual(self, desk_source, desk_channel, half_split):
        params = derive_scheme_params(desk_source, desk_channel, half_split)
        lattice = scale_for_power(50_000, params.p_prime)
        rng = np.random.default_rng(4)
        s1, s2, _ = gen_sources(desk_source, lattice.dimension, rng)
        dither = (rng.random(lattice.dimension) - 0.5) * lattice.scale

        pre = s1 + params.beta * params.gamma * s2 + dither
        x1, x = encode_hybrid(params, lattice, dither, s1, s2)
        r11, r12, _ = decode_receiver1(
            params, desk_source, desk_channel, lattice, dither, x,
            LatticeMode.IDEAL, transmit_point=lattice_point(lattice, pre),
        )

        residual = (params.delta * params.alpha - 1.0) * x1
        np.testing.assert_allclose(r11, s1 + residual, atol=1e-9)
        expected = (params.delta * params.alpha - 1.0) ** 2 * params.p_prime
        assert np.var(r11 - s1) == pytest.approx(expected, rel=0.03)
        np.testing.assert_allclose(r12, x / params.gamma)

    def test_ideal_needs_transmit_point(self, desk_source, desk_channel,
                                        half_split):
        params = derive_scheme_params(desk_source, desk_channel, half_split)
        lattice = scale_for_power(2, params.p_prime)
        with pytest.raises(ValueError):
            decode_receiver1(
                params, desk_source, desk_channel, lattice, np.zeros(2),
                np.zeros(2), LatticeMode.IDEAL,
            )

    def test_correlated_without_uncoded_branch(self, correlated_source,
                                               desk_channel):
        params = derive_scheme_params(
            correlated_source, desk_channel, PowerSplit(alpha1=1.0),
            correlated_mode=True,
        )
        lattice = scale_for_power(3, params.p_prime)
        y1 = np.array([0.2, -0.1, 0.4])
        r11, r12, shat1 = decode_receiver1(
            params, correlated_source, desk_channel, lattice, np.zeros(3),
            y1, LatticeMode.PHYSICAL,
        )
        assert r12 is None
        np.testing.assert_allclose(r11, params.delta * y1)
        assert shat1.shape == (3,)

    def test_receiver2_silent_without_uncoded_branch(self, desk_source,
                                                     desk_channel):
        params = derive_scheme_params(
            desk_source, desk_channel, PowerSplit(alpha1=1.0)
        )
        shat2 = decode_receiver2(
            params, desk_source, desk_channel, np.array([1.0, -3.0])
        )
        np.testing.assert_array_equal(shat2, 0.0)


class TestRunUncoded:
    def test_desk(self, desk_source, desk_channel, half_split):
        result = run_uncoded(desk_source, desk_channel, half_split, _config())

        assert result.mode is SimMode.UNCODED
        assert result.coordinates == 200_000
        assert result.empirical_d1.within(0.75, BANDS)
        assert result.empirical_d2.within(5.0 / 6.0, BANDS)
        assert result.empirical_power.within(1.0, BANDS)
        assert result.w_variance is None
        assert consistency_verdict(result) is ConsistencyStatus.PASS

    def test_endpoint(self, desk_source, desk_channel):
        result = run_uncoded(
            desk_source, desk_channel, PowerSplit(alpha1=1.0), _config()
        )
        assert result.empirical_d1.within(0.5, BANDS)
        assert result.empirical_d2.within(1.0, BANDS)

    def test_rejects_correlated(self, correlated_source, desk_channel,
                                half_split):
        with pytest.raises(InvalidParamsError):
            run_uncoded(
                correlated_source, desk_channel, half_split, _config()
            )

    def test_deterministic(self, desk_source, desk_channel, half_split):
        config = _config(trials=20)
        first = run_uncoded(desk_source, desk_channel, half_split, config)
        second = run_uncoded(desk_source, desk_channel, half_split, config)
        assert first == second


class TestRunHybrid:
    def test_independent_ideal(self, desk_source, desk_channel, half_split):
        result = run_hybrid(desk_source, desk_channel, half_split, _config())

        assert not result.correlated
        assert result.overload_rate == 0.0
        assert result.analytic.d1 == pytest.approx(2.0 / 3.0)
        assert result.empirical_d1.within(2.0 / 3.0, BANDS)
        assert result.empirical_d2.within(5.0 / 6.0, BANDS)
        assert result.empirical_power.within(1.0, BANDS)
        assert result.x1_s2_cross.within(0.0, BANDS)
        assert result.w_cross_correlation.within(0.0, BANDS)
        assert consistency_verdict(result) is ConsistencyStatus.PASS

    def test_correlated_ideal(self, correlated_source, desk_channel):
        result = run_hybrid(
            correlated_source, desk_channel, PowerSplit(alpha1=0.2),
            _config(),
        )

        assert result.correlated
        assert result.analytic.d1 == pytest.approx(0.775)
        assert result.empirical_d1.within(0.775, BANDS)
        assert result.empirical_d2.within(2.2 / 3.0, BANDS)
        assert result.empirical_power.within(1.0, BANDS)
        assert result.x1_s2_cross.within(0.0, BANDS)

    @pytest.mark.parametrize("alpha1", [0.0, 1.0])
    def test_endpoints_are_degenerate(self, alpha1, desk_source,
                                      desk_channel):
        with pytest.raises(DegeneratePowerSplitError):
            run_hybrid(
                desk_source, desk_channel, PowerSplit(alpha1=alpha1),
                _config(trials=1),
            )

    def test_inflation_lowers_overload_and_gap(self, desk_source,
                                               desk_channel, half_split):
        rates, gaps = [], []
        for kappa in (1.0, 2.0, 4.0):
            config = _config(
                lattice_mode=LatticeMode.PHYSICAL, inflation=kappa
            )
            result = run_hybrid(desk_source, desk_channel, half_split, config)
            assert result.inflation == kappa
            rates.append(result.overload_rate)
            gaps.append(abs(result.d1_gap))

        assert rates[0] > 0.0
        assert rates[0] >= rates[1] >= rates[2]
        assert rates[2] < rates[0]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_deterministic_across_workers(self, correlated_source,
                                          desk_channel):
        split = PowerSplit(alpha1=0.3)
        serial = run_hybrid(
            correlated_source, desk_channel, split, _config(trials=30)
        )
        threaded = run_hybrid(
            correlated_source, desk_channel, split,
            _config(trials=30, workers=4),
        )
        with ThreadPoolExecutor(max_workers=3) as pool:
            pooled = run_hybrid(
                correlated_source, desk_channel, split, _config(trials=30),
                executor=pool,
            )
        assert serial == threaded == pooled
        assert "workers" not in serial.config


class TestEffectiveNoise:
    def test_independent_desk(self, desk_source, desk_channel, half_split):
        params = derive_scheme_params(desk_source, desk_channel, half_split)
        stats = measure_effective_noise(
            params, desk_source, desk_channel, _config(trials=1000)
        )

        assert stats.coordinates == 1_000_000
        assert stats.analytic_w11_variance == pytest.approx(2.0)
        assert stats.w11_variance.value == pytest.approx(2.0, rel=0.01)
        assert stats.w12_variance.value == pytest.approx(3.0, rel=0.01)
        assert stats.cross_correlation.within(0.0, BANDS)
        assert stats.s2_term_max == 0.0

    def test_correlated(self, correlated_source, desk_channel):
        split = PowerSplit(alpha1=0.2)
        params = derive_scheme_params(
            correlated_source, desk_channel, split, correlated_mode=True
        )
        stats = measure_effective_noise(
            params, correlated_source, desk_channel, _config()
        )
        # sigma2 (1 - rho^2) N1 / (alpha1 P)
        assert stats.analytic_w11_variance == pytest.approx(3.75)
        assert stats.w11_variance.within(3.75, BANDS)
        assert stats.w12_variance.within(1.5, BANDS)
        assert stats.cross_correlation.within(0.0, BANDS)

    def test_needs_uncoded_branch(self, desk_source, desk_channel):
        params = derive_scheme_params(
            desk_source, desk_channel, PowerSplit(alpha1=1.0)
        )
        with pytest.raises(DegeneratePowerSplitError):
            measure_effective_noise(
                params, desk_source, desk_channel, _config(trials=1)
            )


def test_consistency_verdict_flags_gap():
    result = SimResult(
        mode=SimMode.HYBRID,
        lattice_mode=LatticeMode.IDEAL,
        coordinates=1000,
        empirical_d1=Estimate(value=0.70, stderr=0.001),
        empirical_d2=Estimate(value=0.8333, stderr=0.001),
        empirical_power=Estimate(value=1.0, stderr=0.001),
        analytic=DistortionPair(d1=2.0 / 3.0, d2=5.0 / 6.0),
    )
    assert consistency_verdict(result) is ConsistencyStatus.FAIL
    assert consistency_verdict(result, bands=50.0) is ConsistencyStatus.PASS
    assert result.d1_gap == pytest.approx(0.70 - 2.0 / 3.0)
