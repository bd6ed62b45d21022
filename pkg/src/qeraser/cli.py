"""Command-line front end reproducing the experiment protocol end to end.

Subcommands:

* ``sweep``        - run one configuration over a theta grid, emit per-theta
  CSV (one file per ancilla subensemble), scalar JSON and a raw counts file.
* ``delay-series`` - one sweep per delay value, plus a V(t_delay) table.
* ``transpile``    - lower a circuit JSON onto a coupling graph.
* ``analyze``      - rebuild reports from a previously written counts file.
* ``preset``       - named one-command reproductions of the published runs.

Configuration is a single JSON document; every flag overrides its config
field.  The seed resolution order is ``--seed``, config, the
``ERASER_SEED`` environment variable, then 0.  All outputs are
byte-identical for identical (config, seed), regardless of worker count.

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import analysis, rng
from .analysis import EraserReport, build_report
from .circuit import DEFAULT_DT, Circuit, DurationTable
from .engine import CountsTable, run_shots
from .experiments import BUILDER_NAMES, EraserConfig, build
from .noise import NoiseModel, QubitNoiseParams
from .transpile import CouplingGraph, transpile

TWO_PI = 2.0 * math.pi
_OPEN_SEED_TAG = 999331  # decorrelates the open-configuration companion run

_BUILDER_CHOICE = {
    "simple": "none",
    "two_recorder": "none",
    "random2": "two_option",
    "random4": "four_option",
}


class ConfigError(ValueError):
    """Invalid configuration; mapped to exit code 2."""


@dataclass
class ExperimentConfig:
    builder: str = "two_recorder"
    phi: float | tuple[float, float] = math.pi / 2
    closed_configuration: bool = True
    t_delay: int = 0
    layout: str = "abstract"
    num_shots: int = 5000
    seed: int = 0
    grid_start: float = 0.0
    grid_stop: float = TWO_PI
    grid_step: float = 0.1 * math.pi
    noise: dict = field(default_factory=dict)
    num_workers: int = 1
    output_prefix: str = "eraser_run"

    def __post_init__(self) -> None:
        if self.builder not in _BUILDER_CHOICE:
            raise ConfigError(f"unknown builder {self.builder!r}; choose from {BUILDER_NAMES}")
        if self.grid_step <= 0:
            raise ConfigError("theta grid step must be > 0")
        if self.grid_stop < self.grid_start:
            raise ConfigError("theta grid stop must be >= start")
        if self.num_shots < 1:
            raise ConfigError("num_shots must be >= 1")
        if isinstance(self.phi, list):
            self.phi = tuple(self.phi)

    @property
    def random_choice(self) -> str:
        return _BUILDER_CHOICE[self.builder]

    def thetas(self) -> list[float]:
        out = []
        k = 0
        while True:
            theta = self.grid_start + k * self.grid_step
            if theta > self.grid_stop + 1e-9:
                return out
            out.append(theta)
            k += 1

    def eraser_config(self, theta: float, *, closed: bool | None = None) -> EraserConfig:
        return EraserConfig(
            theta=theta,
            phi=self.phi,
            closed_configuration=self.closed_configuration if closed is None else closed,
            random_choice=self.random_choice,
            t_delay=self.t_delay,
            layout=self.layout,
        )

    def to_json_dict(self) -> dict:
        return {
            "builder": self.builder,
            "phi": list(self.phi) if isinstance(self.phi, tuple) else self.phi,
            "closed_configuration": self.closed_configuration,
            "t_delay": self.t_delay,
            "layout": self.layout,
            "num_shots": self.num_shots,
            "seed": self.seed,
            "grid_start": self.grid_start,
            "grid_stop": self.grid_stop,
            "grid_step": self.grid_step,
            "noise": self.noise,
            "num_workers": self.num_workers,
            "output_prefix": self.output_prefix,
        }

    def canonical_dict(self) -> dict:
        """The experiment's identity: everything that can change results.

        Worker count and output paths are execution details and excluded,
        so reruns are byte-identical regardless of parallelism.
        """
        doc = self.to_json_dict()
        doc.pop("num_workers")
        doc.pop("output_prefix")
        return doc

    def config_hash(self) -> str:
        canon = json.dumps(self.canonical_dict(), sort_keys=True)
        return hashlib.sha256(canon.encode()).hexdigest()[:12]


def parse_angle(text: str) -> float:
    """Angles as floats or pi expressions: '0.5', 'pi', 'pi/2', '0.25pi', '2pi'."""
    text = text.strip().lower().replace(" ", "")
    try:
        return float(text)
    except ValueError:
        pass
    m = re.fullmatch(r"(-?\d*\.?\d*)\*?pi(?:/(\d+\.?\d*))?", text)
    if not m:
        raise ConfigError(f"cannot parse angle {text!r}")
    coef = float(m.group(1)) if m.group(1) not in ("", "-") else (-1.0 if m.group(1) == "-" else 1.0)
    div = float(m.group(2)) if m.group(2) else 1.0
    return coef * math.pi / div


def build_noise_model(config: ExperimentConfig, circuit: Circuit) -> NoiseModel | None:
    """Noise block keyed by wire label: {"x": {"t1_us": ..., "t2_us": ...,
    "readout_flip_01": ..., "readout_flip_10": ...}, ...}."""
    if not config.noise:
        return None
    block = dict(config.noise)
    delays_only = bool(block.pop("during_delays_only", True))
    per_wire: dict[int, QubitNoiseParams] = {}
    for label, entry in block.items():
        if label not in circuit.wire_labels:
            raise ConfigError(f"noise block names unknown wire {label!r}")
        wire = circuit.wire_labels.index(label)
        per_wire[wire] = QubitNoiseParams(
            t1=float(entry.get("t1_us", math.inf)) * 1e-6,
            t2=float(entry.get("t2_us", math.inf)) * 1e-6,
            readout_flip=(
                float(entry.get("readout_flip_01", 0.0)),
                float(entry.get("readout_flip_10", 0.0)),
            ),
        )
    return NoiseModel.from_dict(
        per_wire, circuit.num_qubits, apply_during_delays_only=delays_only
    )


def _as_two_recorder_counts(counts: CountsTable) -> CountsTable:
    """Map the single-recorder table (s, i) onto (s, x, y) with y fixed to 1.

    In the single-recorder circuit D_i plays exactly the role of the
    recorder pair: i = 1 corresponds to 1x1y and i = 0 to 0x1y, and no
    leakage channel exists.
    """
    if counts.clbit_labels != ("s", "i"):
        return counts
    remapped = {f"{k[0]}{k[1]}1": v for k, v in counts.counts.items()}
    return CountsTable(remapped, counts.total_shots, ("s", "x", "y"))


@dataclass
class SweepResult:
    reports: dict[str, EraserReport]
    files: list[Path]
    per_theta_counts: dict[float, CountsTable]
    open_counts: CountsTable


def _split_tables(counts: CountsTable, anc_labels: list[str]) -> dict[str, dict[str, float]]:
    if not anc_labels:
        return {"": counts.counts}
    return analysis.split_by(counts, anc_labels)


def run_sweep(config: ExperimentConfig, *, write: bool = True) -> SweepResult:
    """Execute the theta grid and assemble per-subensemble reports.

    The scalar D/p_succ block comes from an open-configuration companion
    run at theta = 0 with the same shots and noise (the fringes need the
    closed circuit, the which-way guess the open one).
    """
    thetas = config.thetas()
    if not thetas:
        raise ConfigError("empty theta grid")
    probe = build(config.builder, config.eraser_config(thetas[0]))
    noise = build_noise_model(config, probe)

    per_theta: dict[float, CountsTable] = {}
    for k, theta in enumerate(thetas):
        circ = build(config.builder, config.eraser_config(theta))
        res = run_shots(
            circ,
            noise,
            num_shots=config.num_shots,
            seed=rng.derive_seed(config.seed, k),
            num_workers=config.num_workers,
        )
        per_theta[theta] = res.counts

    open_circ = build(config.builder, config.eraser_config(0.0, closed=False))
    open_counts = run_shots(
        open_circ,
        noise,
        num_shots=config.num_shots,
        seed=rng.derive_seed(config.seed, _OPEN_SEED_TAG),
        num_workers=config.num_workers,
    ).counts

    reports = reports_from_counts(
        per_theta, open_counts, config.random_choice, config.phi, config.config_hash()
    )

    files: list[Path] = []
    if write:
        prefix = Path(config.output_prefix)
        if prefix.parent != Path("."):
            prefix.parent.mkdir(parents=True, exist_ok=True)
        for key, report in reports.items():
            stem = f"{prefix}" if key == "" else f"{prefix}_a{key}"
            csv_path = Path(f"{stem}.csv")
            report.write_csv(csv_path)
            json_path = Path(f"{stem}_scalars.json")
            json_path.write_text(report.scalars_json() + "\n")
            files.extend([csv_path, json_path])
        counts_path = Path(f"{prefix}_counts.json")
        counts_path.write_text(_counts_file_text(config, thetas, per_theta, open_counts))
        files.append(counts_path)
    return SweepResult(reports, files, per_theta, open_counts)


def reports_from_counts(
    per_theta: dict[float, CountsTable],
    open_counts: CountsTable | None,
    random_choice: str,
    phi,
    config_hash: str,
) -> dict[str, EraserReport]:
    anc_labels = {"none": [], "two_option": ["a"], "four_option": ["a1", "a2"]}[random_choice]
    per_theta = {t: _as_two_recorder_counts(c) for t, c in per_theta.items()}
    if open_counts is not None:
        open_counts = _as_two_recorder_counts(open_counts)
    sample = next(iter(per_theta.values()))
    sub_labels = analysis.remaining_labels(sample.clbit_labels, anc_labels)

    phis = effective_phis_for(random_choice, phi)
    open_split = _split_tables(open_counts, anc_labels) if open_counts is not None else {}
    reports: dict[str, EraserReport] = {}
    for key in sorted(phis):
        tables: dict[float, tuple] = {}
        for theta, counts in per_theta.items():
            split = _split_tables(counts, anc_labels)
            if key in split and sum(split[key].values()) > 0:
                tables[theta] = (split[key], sub_labels)
        if not tables:
            continue
        wrapped = {t: _Weights(*pair) for t, pair in tables.items()}
        open_table = None
        if key in open_split and sum(open_split[key].values()) > 0:
            open_table = _Weights(open_split[key], sub_labels)
        reports[key] = build_report(
            wrapped,
            phi=phis[key],
            config_hash=config_hash,
            open_counts=open_table,
        )
    return reports


def effective_phis_for(random_choice: str, phi) -> dict[str, float]:
    if random_choice == "none":
        return {"": float(phi)}
    if random_choice == "two_option":
        return {"0": 0.0, "1": float(phi)}
    phi1, phi2 = phi
    return {"00": 0.0, "10": float(phi1), "01": float(phi2), "11": float(phi1) + float(phi2)}


class _Weights:
    """Adapter giving plain weight dicts the counts-table duck type."""

    def __init__(self, weights: dict[str, float], labels: tuple[str, ...]):
        self.counts = weights
        self.clbit_labels = labels


def _counts_file_text(
    config: ExperimentConfig,
    thetas: list[float],
    per_theta: dict[float, CountsTable],
    open_counts: CountsTable,
) -> str:
    doc = {
        "format_version": 1,
        "config": config.canonical_dict(),
        "config_hash": config.config_hash(),
        "clbit_labels": list(next(iter(per_theta.values())).clbit_labels),
        "entries": [
            {"theta": t, **per_theta[t].to_json_dict()} for t in thetas
        ],
        "open_entry": {"theta": 0.0, **open_counts.to_json_dict()},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run_delay_series(config: ExperimentConfig, t_delays: list[int]) -> list[Path]:
    """One sweep per delay; emits V(t_delay) per subensemble on top."""
    rows = []
    files: list[Path] = []
    for t in t_delays:
        sub = replace(config, t_delay=int(t), output_prefix=f"{config.output_prefix}_t{int(t)}")
        result = run_sweep(sub)
        files.extend(result.files)
        for key in sorted(result.reports):
            rep = result.reports[key]
            rows.append(
                {
                    "t_delay_dt": int(t),
                    "t_delay_us": int(t) * DEFAULT_DT * 1e6,
                    "subensemble": key,
                    "V_11": rep.scalars.V_11,
                    "V_01": rep.scalars.V_01,
                }
            )
    path = Path(f"{config.output_prefix}_delay_series.csv")
    with open(path, "w", newline="") as fh:
        fh.write("t_delay_dt,t_delay_us,subensemble,V_11,V_01\n")
        for row in rows:
            fh.write(
                f"{row['t_delay_dt']},{row['t_delay_us']!r},{row['subensemble']},"
                f"{_cell(row['V_11'])},{_cell(row['V_01'])}\n"
            )
    files.append(path)
    return files


def _cell(value) -> str:
    return "" if value is None else repr(value)


def run_analyze(counts_file: str, output_prefix: str) -> list[Path]:
    """Rebuild CSV/JSON reports from a counts file written by ``sweep``."""
    doc = json.loads(Path(counts_file).read_text())
    if doc.get("format_version") != 1:
        raise ConfigError(f"unsupported counts file version {doc.get('format_version')!r}")
    cfg = doc["config"]
    per_theta = {
        float(entry["theta"]): CountsTable.from_json_dict(entry)
        for entry in doc["entries"]
    }
    open_counts = (
        CountsTable.from_json_dict(doc["open_entry"]) if doc.get("open_entry") else None
    )
    random_choice = _BUILDER_CHOICE[cfg["builder"]]
    phi = tuple(cfg["phi"]) if isinstance(cfg["phi"], list) else cfg["phi"]
    reports = reports_from_counts(per_theta, open_counts, random_choice, phi, doc["config_hash"])
    files = []
    prefix = Path(output_prefix)
    if prefix.parent != Path("."):
        prefix.parent.mkdir(parents=True, exist_ok=True)
    for key, report in reports.items():
        stem = f"{prefix}" if key == "" else f"{prefix}_a{key}"
        csv_path = Path(f"{stem}.csv")
        report.write_csv(csv_path)
        json_path = Path(f"{stem}_scalars.json")
        json_path.write_text(report.scalars_json() + "\n")
        files.extend([csv_path, json_path])
    return files


def run_transpile(circuit_file: str, coupling_file: str, layout: str | None, output: str) -> list[Path]:
    circ = Circuit.from_json(Path(circuit_file).read_text())
    coupling = CouplingGraph.from_json_dict(json.loads(Path(coupling_file).read_text()))
    initial = None
    if layout:
        initial = [int(tok) for tok in layout.split(",")]
    result = transpile(circ, coupling, initial, DurationTable())
    doc = result.circuit.to_json_dict()
    doc["initial_layout"] = {str(k): v for k, v in sorted(result.initial_layout.items())}
    doc["final_layout"] = {str(k): v for k, v in sorted(result.final_layout.items())}
    doc["swap_count"] = result.swap_count
    out_json = Path(output)
    out_json.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    out_sched = Path(str(output) + ".schedule.txt")
    out_sched.write_text(result.schedule.format_table() + "\n")
    return [out_json, out_sched]


# ---------------------------------------------------------------------------
# Presets: one command per published figure/run
# ---------------------------------------------------------------------------

PRESETS: dict[str, dict] = {
    # Two-option random choice with mid-circuit signal readout and delays.
    "fig9_left": {"builder": "random2", "phi": math.pi / 2, "t_delay": 0, "layout": "ibm_mapped", "num_shots": 5000},
    "fig9_right": {"builder": "random2", "phi": math.pi / 4, "t_delay": 0, "layout": "ibm_mapped", "num_shots": 5000},
    "fig10_left": {"builder": "random2", "phi": math.pi / 2, "t_delay": 5000, "layout": "ibm_mapped", "num_shots": 5000},
    "fig10_right": {"builder": "random2", "phi": math.pi / 4, "t_delay": 5000, "layout": "ibm_mapped", "num_shots": 5000},
    "fig11_left": {"builder": "random2", "phi": math.pi / 2, "t_delay": 25000, "layout": "ibm_mapped", "num_shots": 5000},
    "fig11_right": {"builder": "random2", "phi": math.pi / 4, "t_delay": 25000, "layout": "ibm_mapped", "num_shots": 5000},
    "fig12_left": {"builder": "random2", "phi": math.pi / 2, "t_delay": 40000, "layout": "ibm_mapped", "num_shots": 5000},
    "fig12_right": {"builder": "random2", "phi": math.pi / 4, "t_delay": 40000, "layout": "ibm_mapped", "num_shots": 5000},
    # Two-option random choice, all-to-all wiring, simultaneous readout.
    "ionq_random2_phi90": {"builder": "random2", "phi": math.pi / 2, "layout": "ionq_mapped", "num_shots": 2000},
    "ionq_random2_phi45": {"builder": "random2", "phi": math.pi / 4, "layout": "ionq_mapped", "num_shots": 2000},
    # Preset-phi baselines without the random choice.
    "fig13_phi0": {"builder": "two_recorder", "phi": 0.0, "num_shots": 10000},
    "fig13_phi45": {"builder": "two_recorder", "phi": math.pi / 4, "num_shots": 10000},
    "fig13_phi90": {"builder": "two_recorder", "phi": math.pi / 2, "num_shots": 10000},
    "fig14_phi0": {"builder": "two_recorder", "phi": 0.0, "layout": "ionq_mapped", "num_shots": 1000},
    "fig14_phi45": {"builder": "two_recorder", "phi": math.pi / 4, "layout": "ionq_mapped", "num_shots": 1000},
    "fig14_phi90": {"builder": "two_recorder", "phi": math.pi / 2, "layout": "ionq_mapped", "num_shots": 1000},
    # Four-option random choice over {0, pi/6, pi/3, pi/2}.
    "ibm4_t0": {"builder": "random4", "phi": [math.pi / 6, math.pi / 3], "layout": "ibm_mapped", "num_shots": 8192},
    "ibm4_t5000": {"builder": "random4", "phi": [math.pi / 6, math.pi / 3], "t_delay": 5000, "layout": "ibm_mapped", "num_shots": 8192},
    "ibm4_t25000": {"builder": "random4", "phi": [math.pi / 6, math.pi / 3], "t_delay": 25000, "layout": "ibm_mapped", "num_shots": 8192},
    "ibm4_t40000": {"builder": "random4", "phi": [math.pi / 6, math.pi / 3], "t_delay": 40000, "layout": "ibm_mapped", "num_shots": 8192},
    "ionq4": {"builder": "random4", "phi": [math.pi / 6, math.pi / 3], "layout": "ionq_mapped", "num_shots": 6000},
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _resolve_seed(flag_seed, config_seed) -> int:
    if flag_seed is not None:
        return int(flag_seed)
    if config_seed is not None:
        return int(config_seed)
    env = os.environ.get("ERASER_SEED")
    if env is not None:
        return int(env)
    return 0


def _config_from_args(args) -> ExperimentConfig:
    raw: dict = {}
    if args.config:
        raw = json.loads(Path(args.config).read_text())
    flag_seed = getattr(args, "seed", None)
    config_seed = raw.pop("seed", None)
    overrides = {
        "builder": getattr(args, "builder", None),
        "phi": parse_angle(args.phi) if getattr(args, "phi", None) else None,
        "t_delay": getattr(args, "t_delay", None),
        "layout": getattr(args, "layout", None),
        "num_shots": getattr(args, "shots", None),
        "grid_start": parse_angle(args.theta_start) if getattr(args, "theta_start", None) else None,
        "grid_stop": parse_angle(args.theta_stop) if getattr(args, "theta_stop", None) else None,
        "grid_step": parse_angle(args.theta_step) if getattr(args, "theta_step", None) else None,
        "num_workers": getattr(args, "workers", None),
        "output_prefix": getattr(args, "out", None),
    }
    for key, value in overrides.items():
        if value is not None:
            raw[key] = value
    if getattr(args, "open_config", False):
        raw["closed_configuration"] = False
    if getattr(args, "noise", None):
        raw["noise"] = json.loads(Path(args.noise).read_text())
    raw["seed"] = _resolve_seed(flag_seed, config_seed)
    try:
        return ExperimentConfig(**raw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override its fields")
    p.add_argument("--builder", choices=sorted(_BUILDER_CHOICE))
    p.add_argument("--phi", help="erasure angle, e.g. 'pi/2' or 0.7853")
    p.add_argument("--t-delay", dest="t_delay", type=int, help="delay in dt cycles")
    p.add_argument("--layout", choices=["abstract", "ibm_mapped", "ionq_mapped"])
    p.add_argument("--shots", type=int, help="shots per theta grid point")
    p.add_argument("--seed", type=int, help="64-bit seed (env ERASER_SEED as fallback)")
    p.add_argument("--theta-start", help="grid start angle (default 0)")
    p.add_argument("--theta-stop", help="grid stop angle (default 2pi)")
    p.add_argument("--theta-step", help="grid step (default 0.1pi)")
    p.add_argument("--open", dest="open_config", action="store_true", help="open configuration (drop the recombining H)")
    p.add_argument("--noise", help="JSON file with the per-wire noise block")
    p.add_argument("--workers", type=int, help="shot worker count (never changes results)")
    p.add_argument("--out", help="output path prefix")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeraser",
        description="Delayed-choice quantum eraser simulation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="theta sweep at a fixed configuration")
    _add_common_flags(p_sweep)

    p_delay = sub.add_parser("delay-series", help="sweeps over a list of delay times")
    _add_common_flags(p_delay)
    p_delay.add_argument(
        "--delays",
        default="0,5000,25000,40000",
        help="comma-separated delays in dt (default: 0,5000,25000,40000)",
    )

    p_trans = sub.add_parser("transpile", help="lower a circuit file onto a coupling graph")
    p_trans.add_argument("circuit", help="circuit JSON file")
    p_trans.add_argument("coupling", help="coupling graph JSON file {num_qubits, edges}")
    p_trans.add_argument("--layout", help="comma-separated physical qubit per wire")
    p_trans.add_argument("--out", default="transpiled.json", help="output JSON path")

    p_an = sub.add_parser("analyze", help="counts file -> CSV/JSON report")
    p_an.add_argument("counts", help="counts JSON written by sweep")
    p_an.add_argument("--out", default="analyzed", help="output path prefix")

    p_pre = sub.add_parser("preset", help="run a named reproduction of a published figure")
    p_pre.add_argument("name", nargs="?", help="preset name (omit with --list)")
    p_pre.add_argument("--list", action="store_true", help="list available presets")
    p_pre.add_argument("--seed", type=int)
    p_pre.add_argument("--shots", type=int, help="override the preset's shot count")
    p_pre.add_argument("--out", help="output path prefix (default: the preset name)")
    p_pre.add_argument("--workers", type=int)
    p_pre.add_argument("--noise", help="JSON file with the per-wire noise block")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            config = _config_from_args(args)
            result = run_sweep(config)
            for path in result.files:
                print(path)
        elif args.command == "delay-series":
            config = _config_from_args(args)
            delays = [int(tok) for tok in args.delays.split(",") if tok.strip()]
            if not delays:
                raise ConfigError("empty delay list")
            for path in run_delay_series(config, delays):
                print(path)
        elif args.command == "transpile":
            for path in run_transpile(args.circuit, args.coupling, args.layout, args.out):
                print(path)
        elif args.command == "analyze":
            for path in run_analyze(args.counts, args.out):
                print(path)
        elif args.command == "preset":
            if args.list or args.name is None:
                for name in sorted(PRESETS):
                    spec = PRESETS[name]
                    print(f"{name}: {json.dumps(spec, sort_keys=True)}")
                return 0
            if args.name not in PRESETS:
                raise ConfigError(f"unknown preset {args.name!r}; try 'preset --list'")
            raw = dict(PRESETS[args.name])
            raw["output_prefix"] = args.out or args.name
            if args.shots:
                raw["num_shots"] = args.shots
            if args.workers:
                raw["num_workers"] = args.workers
            if args.noise:
                raw["noise"] = json.loads(Path(args.noise).read_text())
            raw["seed"] = _resolve_seed(args.seed, None)
            result = run_sweep(ExperimentConfig(**raw))
            for path in result.files:
                print(path)
        return 0
    except (ConfigError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failures
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
