import csv
import io
import json

import pytest

from hybridcast import ComparisonReport, RegionCurve, SimResult
from hybridcast.cli import gnuplot_script, main, render_csv
from hybridcast.config import OUTPUT_DIR_ENV
from hybridcast.enums import Scheme

DESK = ["--sigma2", "1", "--power", "1", "--n1", "1", "--n2", "2"]


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestRegion:
    def test_desk_rows(self, capsys):
        code, out, _ = _run(
            capsys, "region", *DESK, "--rho", "0", "--alpha1", "0.5"
        )
        assert code == 0
        rows = {r["scheme"]: r for r in _rows(out)}
        assert len(rows) == 6
        hybrid = rows["HybridIndependent"]
        assert float(hybrid["d1"]) == pytest.approx(0.666667, abs=1e-6)
        assert float(hybrid["d2"]) == pytest.approx(0.833333, abs=1e-6)
        assert hybrid["conditional"] == "false"
        assert float(rows["Uncoded"]["d1"]) == pytest.approx(0.75)

    def test_full_precision(self, capsys):
        _, out, _ = _run(capsys, "region", *DESK, "--alpha1", "0.5")
        hybrid = next(
            r for r in _rows(out) if r["scheme"] == "HybridIndependent"
        )
        assert hybrid["d1"] == format(1.0 / 1.5, ".17g")
        assert "\r\n" not in out

    def test_not_degraded(self, capsys):
        code, out, err = _run(
            capsys, "region", "--n1", "1", "--n2", "0.5", "--alpha1", "0.5"
        )
        assert code == 2
        assert out == ""
        assert "degraded" in err

    def test_bad_correlation(self, capsys):
        code, _, err = _run(
            capsys, "region", *DESK, "--rho", "1.2", "--alpha1", "0.5"
        )
        assert code == 2
        assert "rho" in err

    def test_endpoint(self, capsys):
        code, out, err = _run(capsys, "region", *DESK, "--alpha1", "0")
        assert code == 0
        assert err == ""
        rows = _rows(out)
        assert len(rows) == 6
        assert all(float(r["alpha1"]) == 0.0 for r in rows)

    def test_independent_scheme_with_correlated_source(self, capsys):
        code, _, err = _run(
            capsys, "region", *DESK, "--rho", "0.5", "--alpha1", "0.5",
            "--schemes", "uncoded",
        )
        assert code == 2
        assert "independent" in err

    def test_json(self, capsys):
        code, out, _ = _run(
            capsys, "region", *DESK, "--alpha1", "0.5", "--format", "json"
        )
        assert code == 0
        envelope = json.loads(out)
        assert envelope["version"] == 1
        assert envelope["command"] == "region"
        assert len(envelope["result"]["records"]) == 6


class TestSweep:
    def test_two_schemes(self, capsys):
        code, out, _ = _run(
            capsys, "sweep", *DESK, "--schemes", "hybrid,uncoded",
            "--grid", "201",
        )
        assert code == 0
        rows = _rows(out)
        assert len(rows) == 402
        for scheme in ("HybridIndependent", "Uncoded"):
            curve = [r for r in rows if r["scheme"] == scheme]
            alphas = [float(r["alpha1"]) for r in curve]
            d1 = [float(r["d1"]) for r in curve]
            d2 = [float(r["d2"]) for r in curve]
            assert alphas[0] == 0.0 and alphas[-1] == 1.0
            assert all(b <= a for a, b in zip(d1, d1[1:]))
            assert all(b >= a for a, b in zip(d2, d2[1:]))

    def test_all_correlated(self, capsys):
        code, out, _ = _run(
            capsys, "sweep", *DESK, "--rho", "0.5", "--grid", "11"
        )
        assert code == 0
        schemes = {r["scheme"] for r in _rows(out)}
        assert schemes == {
            "OuterBound", "HybridCorrelated", "SeparationA", "SeparationB"
        }

    def test_hybrid_alias_follows_rho(self, capsys):
        _, out, _ = _run(
            capsys, "sweep", *DESK, "--rho", "0.5", "--grid", "5",
            "--schemes", "hybrid",
        )
        assert {r["scheme"] for r in _rows(out)} == {"HybridCorrelated"}

    def test_gnuplot_under_output_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
        code, out, _ = _run(
            capsys, "sweep", *DESK, "--grid", "11", "--output",
            "frontier.csv", "--gnuplot",
        )
        assert code == 0
        assert out == ""
        data = tmp_path / "frontier.csv"
        script = tmp_path / "frontier.gp"
        assert len(_rows(data.read_text())) == 6 * 11
        text = script.read_text()
        assert "'frontier.csv'" in text
        assert '"HybridIndependent"' in text

    def test_gnuplot_needs_output(self, capsys):
        code, _, err = _run(capsys, "sweep", *DESK, "--gnuplot")
        assert code == 2
        assert "--output" in err

    def test_json_curves_validate(self, capsys):
        code, out, _ = _run(
            capsys, "sweep", *DESK, "--rho", "0.5", "--grid", "11",
            "--format", "json",
        )
        assert code == 0
        curves = [
            RegionCurve.model_validate(c)
            for c in json.loads(out)["result"]
        ]
        assert len(curves) == 4
        assert all(len(c.points) == 11 for c in curves)

    def test_unknown_scheme(self, capsys):
        code, _, err = _run(capsys, "sweep", *DESK, "--schemes", "magic")
        assert code == 2
        assert "magic" in err


class TestCompareAndThreshold:
    def test_compare(self, capsys):
        code, out, _ = _run(
            capsys, "compare", *DESK, "--rho", "0.5", "--grid", "6"
        )
        assert code == 0
        rows = [r for r in _rows(out) if r["alpha1"] == "0.20000000000000001"]
        best = {r["scheme"] for r in rows if r["best"] == "true"}
        assert best == {"HybridCorrelated"}
        assert {r["hybrid_vs_a"] for r in rows} == {"HYBRID"}

    def test_compare_json_validates(self, capsys):
        code, out, _ = _run(
            capsys, "compare", *DESK, "--rho", "0.5", "--grid", "6",
            "--format", "json",
        )
        assert code == 0
        report = ComparisonReport.model_validate(json.loads(out)["result"])
        assert len(report.rows) == 6
        assert report.rows[0].threshold is None
        assert report.all_agree

    def test_threshold_desk(self, capsys):
        code, out, _ = _run(
            capsys, "threshold", *DESK, "--rho", "0.5", "--grid", "6"
        )
        assert code == 0
        rows = {float(r["alpha1"]): r for r in _rows(out)}
        assert rows[0.2]["hybrid_beats_a_predicted"] == "true"
        assert rows[0.2]["hybrid_beats_a_observed"] == "true"
        assert rows[1.0]["hybrid_beats_a_predicted"] == "false"
        assert rows[1.0]["hybrid_beats_a_observed"] == "false"
        assert rows[0.0]["threshold"] == ""
        assert all(r["agrees"] == "true" for r in rows.values())

    def test_threshold_midpoint(self, capsys):
        _, out, _ = _run(
            capsys, "threshold", *DESK, "--rho", "0.5", "--grid", "3"
        )
        mid = _rows(out)[1]
        assert float(mid["alpha1"]) == 0.5
        assert mid["hybrid_beats_a_predicted"] == "false"
        assert mid["hybrid_beats_a_observed"] == "false"

    def test_threshold_independent(self, capsys):
        code, out, _ = _run(capsys, "threshold", *DESK, "--grid", "11")
        assert code == 0
        rows = _rows(out)
        assert all(r["verdict"] == "TIE" for r in rows)
        assert all(r["hybrid_beats_a_observed"] == "false" for r in rows)


class TestSimulate:
    ARGS = [
        "simulate", *DESK, "--alpha1", "0.5", "--trials", "50",
        "--blocklength", "1000", "--seed", "7",
    ]

    def test_ideal_passes(self, capsys):
        code, out, _ = _run(capsys, *self.ARGS)
        assert code == 0
        envelope = json.loads(out)
        assert envelope["command"] == "simulate"
        result = envelope["result"]
        assert result["verdict"] == "PASS"
        assert result["overload_rate"] == 0.0
        assert result["analytic"]["d1"] == pytest.approx(2.0 / 3.0)

    def test_json_round_trip(self, capsys):
        _, out, _ = _run(capsys, *self.ARGS)
        payload = json.loads(out)["result"]
        payload.pop("verdict")
        result = SimResult.model_validate(payload)
        assert result.coordinates == 50_000

    def test_byte_identical(self, capsys):
        _, first, _ = _run(capsys, *self.ARGS)
        _, second, _ = _run(capsys, *self.ARGS)
        _, threaded, _ = _run(capsys, *self.ARGS, "--workers", "4")
        assert first == second == threaded

    def test_physical_inflation(self, capsys):
        rates = []
        for kappa in ("1", "4"):
            code, out, _ = _run(
                capsys, *self.ARGS, "--lattice", "physical",
                "--inflation", kappa,
            )
            assert code == 0
            rates.append(json.loads(out)["result"]["overload_rate"])
        assert rates[1] < rates[0]

    def test_uncoded_csv(self, capsys):
        code, out, _ = _run(
            capsys, *self.ARGS, "--mode", "uncoded", "--format", "csv"
        )
        assert code == 0
        rows = {r["quantity"]: r for r in _rows(out)}
        assert float(rows["d1"]["analytic"]) == pytest.approx(0.75)
        assert rows["verdict"]["value"] == "PASS"

    def test_inflation_in_ideal_mode(self, capsys):
        code, _, err = _run(capsys, *self.ARGS, "--inflation", "2")
        assert code == 2
        assert "inflation" in err

    def test_degenerate_split(self, capsys):
        code, _, err = _run(
            capsys, "simulate", *DESK, "--alpha1", "1", "--trials", "1"
        )
        assert code == 2
        assert "alpha1" in err

    def test_vanishing_split(self, capsys):
        code, out, err = _run(
            capsys, "simulate", *DESK, "--alpha1", "1e-310", "--trials", "1",
            "--blocklength", "10",
        )
        assert code == 2
        assert out == ""
        assert "alpha1" in err

    def test_uncoded_rejects_correlated(self, capsys):
        code, _, _ = _run(
            capsys, "simulate", *DESK, "--mode", "uncoded", "--rho", "0.5"
        )
        assert code == 2


def test_render_csv_cells():
    text = render_csv(
        ["a", "b", "c", "d"], [[0.1, True, None, Scheme.UNCODED]]
    )
    assert text == "a,b,c,d\n0.10000000000000001,true,,Uncoded\n"


def test_gnuplot_script_lists_schemes():
    text = gnuplot_script("f.csv", [Scheme.OUTER_BOUND, Scheme.UNCODED])
    assert text.count("with lines") == 2
    assert text.startswith('set datafile separator ","')
