import pytest

from hybridcast import (
    ConsistencyError,
    EngineConfig,
    HybridCastEngine,
    InvalidParamsError,
    PowerSplit,
    Scheme,
    SimConfig,
    ThresholdRow,
    Verdict,
)
from hybridcast.methods import regions as region_methods


class TestRegionMethods:
    def test_point(self, engine, desk_source, desk_channel, half_split):
        pair = engine.regions.point(
            Scheme.UNCODED, desk_source, desk_channel, half_split
        )
        assert pair.d1 == pytest.approx(0.75)

    def test_region_defaults_to_applicable(self, engine, correlated_source,
                                           desk_channel, half_split):
        records = engine.regions.region(
            correlated_source, desk_channel, half_split
        )
        assert [r.scheme for r in records] == [
            Scheme.OUTER_BOUND,
            Scheme.HYBRID_CORRELATED,
            Scheme.SEPARATION_A,
            Scheme.SEPARATION_B,
        ]

    def test_region_rejects_independent_only(self, engine, correlated_source,
                                             desk_channel, half_split):
        with pytest.raises(InvalidParamsError):
            engine.regions.region(
                correlated_source, desk_channel, half_split,
                [Scheme.UNCODED],
            )

    def test_sweep_uses_configured_grid(self, desk_source, desk_channel):
        with HybridCastEngine(EngineConfig(grid_points=11)) as engine:
            curves = engine.regions.sweep(
                desk_source, desk_channel, [Scheme.OUTER_BOUND]
            )
        assert len(curves) == 1
        assert len(curves[0].points) == 11

    def test_compare(self, engine, correlated_source, desk_channel):
        report = engine.regions.compare(
            correlated_source, desk_channel, [0.2, 0.5]
        )
        assert report.all_agree

    def test_threshold_strict(self, engine, correlated_source, desk_channel,
                              monkeypatch):
        bad = ThresholdRow(
            alpha1=0.2,
            threshold=15.0,
            p_over_n1=1.0,
            hybrid_beats_a_predicted=True,
            hybrid_beats_a_observed=False,
            verdict=Verdict.SCHEME_A,
            agrees=False,
        )
        monkeypatch.setattr(
            region_methods, "threshold_report", lambda *a, **k: [bad]
        )

        with pytest.raises(ConsistencyError) as exc:
            engine.regions.threshold(correlated_source, desk_channel, [0.2])
        assert exc.value.details["alpha1"] == [0.2]

        rows = engine.regions.threshold(
            correlated_source, desk_channel, [0.2], strict=False
        )
        assert rows == [bad]


class TestSimulationMethods:
    def test_pool_does_not_change_result(self, desk_source, desk_channel,
                                         half_split):
        config = SimConfig(blocklength=500, trials=12, seed=3)
        with HybridCastEngine() as serial:
            a = serial.simulation.run(
                desk_source, desk_channel, half_split, config
            )
        with HybridCastEngine(workers=3) as pooled:
            b = pooled.simulation.run(
                desk_source, desk_channel, half_split, config
            )
            assert pooled._executor is not None
        assert a == b
        assert pooled._executor is None

    def test_verdict_and_noise(self, engine, correlated_source,
                               desk_channel):
        split = PowerSplit(alpha1=0.2)
        config = SimConfig(blocklength=1000, trials=100, seed=1)
        result = engine.simulation.run(
            correlated_source, desk_channel, split, config
        )
        assert engine.simulation.verdict(result).value == "PASS"

        stats = engine.simulation.effective_noise(
            correlated_source, desk_channel, split, config
        )
        assert stats.w11_variance.within(stats.analytic_w11_variance, 4.0)

    def test_invalid_workers(self):
        with pytest.raises(ValueError):
            HybridCastEngine(workers=0)
