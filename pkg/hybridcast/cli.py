"""Command-line frontend.

Commands emit CSV (header row, LF line endings, floats with 17
significant digits) or a JSON envelope ``{"version", "command",
"result"}``. Exit codes: 0 success, 1 internal consistency failure
(Ideal-mode Monte Carlo outside its band, or a threshold prediction
disagreeing with the closed forms), 2 invalid input.
"""

import argparse
import csv
import io
import json
import logging
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    model_validator,
)

from . import __version__
from .config import EngineConfig, SimConfig
from .engine import HybridCastEngine
from .enums import (
    Command,
    ConsistencyStatus,
    LatticeMode,
    OutputFormat,
    Scheme,
    SimMode,
)
from .errors import (
    ConsistencyError,
    HybridCastError,
    from_validation_error,
)
from .models import ChannelSpec, PowerSplit, SourceSpec
from .regions import DEFAULT_GRID_POINTS, default_grid

_logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_INVALID = 2

REGION_COLUMNS = ["scheme", "alpha1", "d1", "d2", "conditional"]
COMPARE_COLUMNS = [
    "alpha1", "scheme", "d1", "d2", "conditional", "best",
    "hybrid_vs_a", "threshold", "agrees",
]
THRESHOLD_COLUMNS = [
    "alpha1", "threshold", "p_over_n1", "hybrid_beats_a_predicted",
    "hybrid_beats_a_observed", "verdict", "agrees",
]
SIMULATE_COLUMNS = ["quantity", "value", "stderr", "analytic"]


class RunSpec(BaseModel):
    """A fully validated CLI invocation.

    Attributes:
        command (Command): Subcommand to run.
        source (SourceSpec): Source law.
        channel (ChannelSpec): Broadcast channel.
        split (Optional[PowerSplit]): Power split for region and
            simulate.
        schemes (Optional[List[Scheme]]): Selected schemes; None means
            every scheme defined for the source.
        grid_points (int): Points in the alpha1 grid.
        output_format (OutputFormat): csv or json.
        output (Optional[str]): Output path, None for standard output.
        gnuplot (bool): Also write a plotting script next to the output.
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    source: SourceSpec
    channel: ChannelSpec
    split: Optional[PowerSplit] = None
    schemes: Optional[List[Scheme]] = None
    grid_points: int = Field(DEFAULT_GRID_POINTS, ge=2)
    output_format: OutputFormat = OutputFormat.CSV
    output: Optional[str] = None
    gnuplot: bool = False

    @model_validator(mode="after")
    def check_command_inputs(self) -> "RunSpec":
        if (
            self.command in (Command.REGION, Command.SIMULATE)
            and self.split is None
        ):
            raise ValueError(f"{self.command.value} needs --alpha1")
        if self.gnuplot:
            if self.command is not Command.SWEEP:
                raise ValueError("--gnuplot only applies to sweep")
            if (
                self.output is None
                or self.output_format is not OutputFormat.CSV
            ):
                raise ValueError("--gnuplot needs --output with csv format")
        return self


class Emission(NamedTuple):
    """Rendered command result.

    Attributes:
        columns: CSV header.
        rows: CSV rows.
        payload: JSON-able result.
        exit_code: Process exit status.
    """

    columns: List[str]
    rows: List[List[Any]]
    payload: Any
    exit_code: int = EXIT_OK


def _parse_schemes(
    text: Optional[str], rho: float
) -> Optional[List[Scheme]]:
    if text is None or text.strip().lower() == "all":
        return None
    schemes = []
    for name in text.split(","):
        scheme = Scheme.parse(name)
        # "hybrid" means the correlated construction once rho > 0
        if scheme is Scheme.HYBRID_INDEPENDENT and rho > 0:
            scheme = Scheme.HYBRID_CORRELATED
        if scheme not in schemes:
            schemes.append(scheme)
    return schemes


def build_run_spec(args: argparse.Namespace) -> RunSpec:
    """Validate parsed arguments into a RunSpec.

    Raises:
        ValidationError: If a parameter violates a model invariant.
        ValueError: If a scheme name is unknown.
    """
    command = Command(args.command)
    default_format = (
        OutputFormat.JSON if command is Command.SIMULATE else OutputFormat.CSV
    )
    alpha1 = getattr(args, "alpha1", None)
    return RunSpec(
        command=command,
        source={"sigma2": args.sigma2, "rho": args.rho},
        channel={"power": args.power, "n1": args.n1, "n2": args.n2},
        split=None if alpha1 is None else {"alpha1": alpha1},
        schemes=_parse_schemes(getattr(args, "schemes", None), args.rho),
        grid_points=getattr(args, "grid", DEFAULT_GRID_POINTS),
        output_format=args.format or default_format,
        output=args.output,
        gnuplot=getattr(args, "gnuplot", False),
    )


def build_sim_config(args: argparse.Namespace) -> SimConfig:
    """SimConfig from the simulate flags.

    Raises:
        ValueError: If a setting is out of range.
    """
    return SimConfig(
        blocklength=args.blocklength,
        trials=args.trials,
        seed=args.seed,
        mode=SimMode(args.mode),
        lattice_mode=LatticeMode(args.lattice),
        inflation=args.inflation,
        workers=args.workers,
    )


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def render_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_cell(v) for v in row])
    return buffer.getvalue()


def render_json(command: Command, payload: Any) -> str:
    envelope = {
        "version": SCHEMA_VERSION,
        "command": command.value,
        "result": payload,
    }
    return json.dumps(envelope, indent=2, ensure_ascii=False) + "\n"


def cmd_region(
    engine: HybridCastEngine,
    spec: RunSpec,
    sim_config: Optional[SimConfig] = None,
) -> Emission:
    """One row per scheme at the given alpha1."""
    records = engine.regions.region(
        spec.source, spec.channel, spec.split, spec.schemes
    )
    a = spec.split.alpha1
    rows = [
        [r.scheme, a, r.pair.d1, r.pair.d2, r.pair.conditional]
        for r in records
    ]
    payload = {
        "alpha1": a,
        "records": [r.model_dump(mode="json") for r in records],
    }
    return Emission(REGION_COLUMNS, rows, payload)


def cmd_sweep(
    engine: HybridCastEngine,
    spec: RunSpec,
    sim_config: Optional[SimConfig] = None,
) -> Emission:
    """Frontier samples of each selected scheme, scheme-major."""
    curves = engine.regions.sweep(
        spec.source,
        spec.channel,
        spec.schemes,
        default_grid(spec.grid_points),
    )
    rows = [
        [c.scheme, p.alpha1, p.pair.d1, p.pair.d2, p.pair.conditional]
        for c in curves
        for p in c.points
    ]
    payload = [c.model_dump(mode="json") for c in curves]
    return Emission(REGION_COLUMNS, rows, payload)


def cmd_compare(
    engine: HybridCastEngine,
    spec: RunSpec,
    sim_config: Optional[SimConfig] = None,
) -> Emission:
    """All schemes at each grid point with dominance verdicts."""
    report = engine.regions.compare(
        spec.source, spec.channel, default_grid(spec.grid_points)
    )
    rows = [
        [
            row.alpha1, rec.scheme, rec.pair.d1, rec.pair.d2,
            rec.pair.conditional, rec.scheme in row.best_schemes,
            row.hybrid_vs_a, row.threshold, row.agrees,
        ]
        for row in report.rows
        for rec in row.records
    ]
    code = EXIT_OK if report.all_agree else EXIT_INCONSISTENT
    return Emission(
        COMPARE_COLUMNS, rows, report.model_dump(mode="json"), code
    )


def cmd_threshold(
    engine: HybridCastEngine,
    spec: RunSpec,
    sim_config: Optional[SimConfig] = None,
) -> Emission:
    """Predicted vs. observed hybrid wins over Scheme A."""
    report = engine.regions.threshold(
        spec.source,
        spec.channel,
        default_grid(spec.grid_points),
        strict=False,
    )
    rows = [
        [
            r.alpha1, r.threshold, r.p_over_n1, r.hybrid_beats_a_predicted,
            r.hybrid_beats_a_observed, r.verdict, r.agrees,
        ]
        for r in report
    ]
    code = (
        EXIT_OK if all(r.agrees for r in report) else EXIT_INCONSISTENT
    )
    payload = [r.model_dump(mode="json") for r in report]
    return Emission(THRESHOLD_COLUMNS, rows, payload, code)


def cmd_simulate(
    engine: HybridCastEngine,
    spec: RunSpec,
    sim_config: Optional[SimConfig] = None,
) -> Emission:
    """Monte Carlo run with the consistency verdict."""
    result = engine.simulation.run(
        spec.source, spec.channel, spec.split, sim_config
    )
    verdict = engine.simulation.verdict(result)

    rows = [
        ["d1", result.empirical_d1.value, result.empirical_d1.stderr,
         result.analytic.d1],
        ["d2", result.empirical_d2.value, result.empirical_d2.stderr,
         result.analytic.d2],
        ["power", result.empirical_power.value,
         result.empirical_power.stderr, spec.channel.power],
    ]
    for name, estimate in (
        ("w11_variance", result.w_variance),
        ("w12_variance", result.w12_variance),
        ("w11_w12_cross", result.w_cross_correlation),
        ("x1_s2_cross", result.x1_s2_cross),
    ):
        if estimate is not None:
            rows.append([name, estimate.value, estimate.stderr, None])
    rows.append(["overload_rate", result.overload_rate, None, None])
    rows.append(["verdict", verdict, None, None])

    payload = {"verdict": verdict.value, **result.model_dump(mode="json")}
    code = EXIT_OK
    if (
        verdict is ConsistencyStatus.FAIL
        and result.lattice_mode is LatticeMode.IDEAL
    ):
        code = EXIT_INCONSISTENT
    return Emission(SIMULATE_COLUMNS, rows, payload, code)


COMMANDS: Dict[Command, Callable[..., Emission]] = {
    Command.REGION: cmd_region,
    Command.SWEEP: cmd_sweep,
    Command.COMPARE: cmd_compare,
    Command.THRESHOLD: cmd_threshold,
    Command.SIMULATE: cmd_simulate,
}


def resolve_output(path: str, output_dir: str) -> Path:
    """Relative paths resolve under ``output_dir``."""
    resolved = Path(path)
    if not resolved.is_absolute():
        resolved = Path(output_dir) / resolved
    return resolved


def gnuplot_script(data_name: str, schemes: Sequence[Scheme]) -> str:
    """Plot each scheme's (d1, d2) frontier from a sweep CSV."""
    lines = [
        'set datafile separator ","',
        'set xlabel "D1"',
        'set ylabel "D2"',
        "set key top right",
    ]
    plots = [
        f"'{data_name}' every ::1 using "
        f'(strcol(1) eq "{s.value}" ? $3 : 1/0):4 '
        f'with lines title "{s.value}"'
        for s in schemes
    ]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def _write(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    _logger.info(f"Wrote {path}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("source and channel")
    group.add_argument("--sigma2", type=float, default=1.0,
                       help="source variance (default: 1)")
    group.add_argument("--rho", type=float, default=0.0,
                       help="source correlation in [0, 1) (default: 0)")
    group.add_argument("--power", type=float, default=1.0,
                       help="channel input power P (default: 1)")
    group.add_argument("--n1", type=float, default=1.0,
                       help="noise variance at Receiver 1 (default: 1)")
    group.add_argument("--n2", type=float, default=2.0,
                       help="noise variance at Receiver 2 (default: 2)")

    out = parser.add_argument_group("output")
    out.add_argument("--format", choices=[f.value for f in OutputFormat],
                     default=None, help="csv or json")
    out.add_argument("--output", default=None,
                     help="output file; relative paths resolve under "
                          "$HYBRIDCAST_OUTPUT_DIR (default: stdout)")
    out.add_argument("-v", "--verbose", action="store_true",
                     help="log progress to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybridcast",
        description="Distortion regions and transceiver simulation for "
                    "correlated Gaussian sources over a degraded Gaussian "
                    "broadcast channel.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    region = sub.add_parser("region", help="scheme points at one alpha1")
    _add_common(region)
    region.add_argument("--alpha1", type=float, required=True)
    region.add_argument("--schemes", default="all",
                        help="comma separated schemes, or 'all'")

    sweep = sub.add_parser("sweep", help="frontiers over an alpha1 grid")
    _add_common(sweep)
    sweep.add_argument("--schemes", default="all",
                       help="comma separated schemes, or 'all'")
    sweep.add_argument("--grid", type=int, default=DEFAULT_GRID_POINTS,
                       help="grid points on [0, 1] (default: 201)")
    sweep.add_argument("--gnuplot", action="store_true",
                       help="write a .gp script next to the CSV output")

    for name, text in (
        ("compare", "compare every scheme at matched alpha1"),
        ("threshold", "check the SNR threshold for hybrid vs. Scheme A"),
    ):
        cmd = sub.add_parser(name, help=text)
        _add_common(cmd)
        cmd.add_argument("--grid", type=int, default=DEFAULT_GRID_POINTS,
                         help="grid points on [0, 1] (default: 201)")

    sim = sub.add_parser("simulate", help="Monte Carlo transceiver run")
    _add_common(sim)
    sim.add_argument("--alpha1", type=float, default=0.5)
    sim.add_argument("--mode", choices=[m.value for m in SimMode],
                     default=SimMode.HYBRID.value)
    sim.add_argument("--lattice", choices=[m.value for m in LatticeMode],
                     default=LatticeMode.IDEAL.value)
    sim.add_argument("--inflation", type=float, default=1.0,
                     help="lattice inflation kappa >= 1 (physical only)")
    sim.add_argument("--trials", type=int, default=100)
    sim.add_argument("--blocklength", type=int, default=1000)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--workers", type=int, default=1,
                     help="threads for trials; never changes the output")
    return parser


def _fail(message: str) -> int:
    sys.stderr.write(f"hybridcast: error: {message}\n")
    return EXIT_INVALID


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return the exit status."""
    args = build_parser().parse_args(argv)

    try:
        engine_config = EngineConfig(
            enable_logging=args.verbose,
            log_level="INFO",
        )
        spec = build_run_spec(args)
        sim_config = (
            build_sim_config(args) if spec.command is Command.SIMULATE
            else None
        )
    except ValidationError as e:
        return _fail(str(from_validation_error(e)))
    except ValueError as e:
        return _fail(str(e))

    with HybridCastEngine(engine_config) as engine:
        try:
            emission = COMMANDS[spec.command](engine, spec, sim_config)
        except ConsistencyError as e:
            sys.stderr.write(f"hybridcast: inconsistent: {e}\n")
            return EXIT_INCONSISTENT
        except HybridCastError as e:
            return _fail(str(e))
        except ValidationError as e:
            return _fail(str(from_validation_error(e)))

        if spec.output_format is OutputFormat.JSON:
            text = render_json(spec.command, emission.payload)
        else:
            text = render_csv(emission.columns, emission.rows)

        path = None
        if spec.output is not None:
            path = resolve_output(spec.output, engine.config.output_dir)
        _write(text, path)

        if spec.gnuplot:
            schemes = list(dict.fromkeys(row[0] for row in emission.rows))
            _write(
                gnuplot_script(path.name, schemes), path.with_suffix(".gp")
            )

    if emission.exit_code == EXIT_INCONSISTENT:
        sys.stderr.write(
            "hybridcast: inconsistent: result disagrees with its "
            "closed-form prediction\n"
        )
    return emission.exit_code
