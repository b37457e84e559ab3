"""``per`` command line: run one method, benchmark several, or synthesize data.

Exit codes: 0 success, 2 configuration error, 3 ingestion error, 4 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .equality import SCHEMES
from .errors import IngestionError, InvalidPairError
from .evaluation import (
    CHECKPOINTS,
    Budget,
    run_experiment,
    summary_row,
    write_curve_csv,
    write_summary_csv,
)
from .ingestion import DatasetSpec, id_maps, load_ground_truth, load_profiles
from .matching import MATCHERS
from .methods import METHOD_PARAMS, METHODS, MethodParams, build_emitter
from .synth import SynthConfig, synthesize, write_dataset

EXIT_OK, EXIT_CONFIG, EXIT_INGEST, EXIT_RUNTIME = 0, 2, 3, 4

DEFAULTS = {
    "format": None,
    "id_column": None,
    "gt_header": False,
    "matcher": "none",
    "w_max": 20,
    "l_min": 2,
    "k_max": 10,
    "purge_ratio": 0.10,
    "filter_ratio": 0.80,
    "scheme": "arcs",
    "budget": 20.0,
    "out": None,
    "summary": None,
    "curves_dir": None,
    "dataset_name": None,
    "no_timing": False,
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    methods: list[str]
    dataset: list[Path]
    gt: Path
    matcher: str = "none"
    params: MethodParams = field(default_factory=MethodParams)
    budget: Budget = field(default_factory=lambda: Budget(20.0))
    format: str | None = None
    id_column: str | None = None
    gt_header: bool = False
    out: Path | None = None
    summary: Path | None = None
    curves_dir: Path | None = None
    dataset_name: str = ""
    timing: bool = True

    def validate(self, explicit: set[str] = frozenset()) -> None:
        if not self.methods:
            raise ConfigError("no method given")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}; expected one of {', '.join(METHODS)}")
        if len(self.methods) == 1:
            allowed = METHOD_PARAMS[self.methods[0]]
            stray = sorted(p for p in explicit if p in _TUNABLE and p not in allowed)
            if stray:
                raise ConfigError(f"{self.methods[0]} does not take {', '.join(stray)}")
        if not 1 <= len(self.dataset) <= 2:
            raise ConfigError("--dataset takes one file (dirty) or two files (clean-clean)")
        if self.matcher not in MATCHERS:
            raise ConfigError(f"unknown matcher {self.matcher!r}")
        p = self.params
        if p.w_max < 1 or p.l_min < 1 or p.k_max < 1:
            raise ConfigError("w_max, l_min and k_max must be at least 1")
        for name in ("purge_ratio", "filter_ratio"):
            r = getattr(p, name)
            if r is not None and not 0 < r <= 1:
                raise ConfigError(f"{name} must lie in (0, 1]")
        if p.scheme not in SCHEMES:
            raise ConfigError(f"unknown weighting scheme {p.scheme!r}")
        if self.format not in (None, "csv", "jsonl"):
            raise ConfigError(f"unknown format {self.format!r}")


_TUNABLE = {"w_max", "l_min", "k_max", "purge_ratio", "filter_ratio", "scheme"}


_OFF = "none"


def _ratio(text: str):
    if text.lower() in ("none", "off"):
        return _OFF
    return float(text)


def _budget(text: str):
    if text.lower() in ("none", "inf", "unlimited"):
        return _OFF
    return float(text)


def _off(value):
    return None if value == _OFF else value


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file supplying any flag; flags win")
    p.add_argument("--dataset", nargs="+", type=Path, help="profile file, or two files for clean-clean")
    p.add_argument("--gt", type=Path, help="ground-truth CSV of external id pairs")
    p.add_argument("--gt-header", action="store_true", default=None, help="ground-truth CSV has a header row")
    p.add_argument("--format", help="csv or jsonl (default: by extension)")
    p.add_argument("--id-column", help="column/field holding external ids (default: row index)")
    p.add_argument("--matcher", help="jaccard, edit or none (default none)")
    p.add_argument("--w-max", type=int, help="GS-PSN maximum window (default 20)")
    p.add_argument("--l-min", type=int, help="SA-PSAB minimum suffix length (default 2)")
    p.add_argument("--k-max", type=int, help="PPS comparisons per profile (default 10)")
    p.add_argument("--purge-ratio", type=_ratio, help="Block Purging ratio, or 'none' (default 0.10)")
    p.add_argument("--filter-ratio", type=_ratio, help="Block Filtering ratio, or 'none' (default 0.80)")
    p.add_argument("--scheme", help="edge weighting for PBS/PPS: arcs or cbs (default arcs)")
    p.add_argument("--budget", type=_budget, help="stop at this ec*, or 'none' (default 20)")
    p.add_argument("--summary", type=Path, help="summary CSV path")
    p.add_argument("--dataset-name", help="label for the summary (default: dataset file stem)")
    p.add_argument("--no-timing", action="store_true", default=None, help="write zero timings (byte-stable output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="per", description="Schema-agnostic progressive entity resolution")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one method and record its recall curve")
    run.add_argument("--method")
    run.add_argument("--out", type=Path, help="curve CSV path")
    _add_run_flags(run)

    bench = sub.add_parser("bench", help="run several methods on one dataset")
    bench.add_argument("--methods", nargs="*", help="method names (space or comma separated)")
    bench.add_argument("--curves-dir", type=Path, help="write <method>.csv curves here")
    _add_run_flags(bench)

    synth = sub.add_parser("synth", help="generate a synthetic dataset with planted duplicates")
    synth.add_argument("--n", type=int, default=1000)
    synth.add_argument("--dup-rate", type=float, default=0.1)
    synth.add_argument("--noise", type=float, default=0.3)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--clean-clean", action="store_true")
    synth.add_argument("--out-dir", type=Path, default=Path("."))
    synth.add_argument("--stem", default="synth")
    return parser


def _merge(args: argparse.Namespace, methods: list[str]) -> tuple[RunConfig, set[str]]:
    file_values = {}
    if args.config is not None:
        try:
            file_values = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ConfigError("config file must hold a JSON object")
        file_values = {k.replace("-", "_"): v for k, v in file_values.items()}

    explicit = set()

    def pick(name):
        value = getattr(args, name, None)
        if value is not None:
            explicit.add(name)
            return value
        if name in file_values:
            explicit.add(name)
            return file_values[name]
        return DEFAULTS.get(name)

    if not methods:
        raw = file_values.get("methods", file_values.get("method", []))
        methods = [raw] if isinstance(raw, str) else list(raw)
    dataset = pick("dataset")
    gt = pick("gt")
    if not dataset:
        raise ConfigError("--dataset is required")
    if gt is None:
        raise ConfigError("--gt is required")
    dataset = [dataset] if isinstance(dataset, (str, Path)) else dataset
    try:
        params = MethodParams(
            w_max=int(pick("w_max")),
            l_min=int(pick("l_min")),
            k_max=int(pick("k_max")),
            purge_ratio=_off(pick("purge_ratio")),
            filter_ratio=_off(pick("filter_ratio")),
            scheme=pick("scheme"),
        )
        budget = Budget(_off(pick("budget")))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    paths = [Path(p) for p in dataset]
    out = pick("out")
    summary = pick("summary")
    curves = pick("curves_dir")
    cfg = RunConfig(
        methods=methods,
        dataset=paths,
        gt=Path(gt),
        matcher=pick("matcher"),
        params=params,
        budget=budget,
        format=pick("format"),
        id_column=pick("id_column"),
        gt_header=bool(pick("gt_header")),
        out=Path(out) if out else None,
        summary=Path(summary) if summary else None,
        curves_dir=Path(curves) if curves else None,
        dataset_name=pick("dataset_name") or paths[0].stem,
        timing=not pick("no_timing"),
    )
    return cfg, explicit


def _load(cfg: RunConfig):
    spec = DatasetSpec(tuple(cfg.dataset), cfg.format, cfg.id_column)
    collection = load_profiles(spec)
    gt = load_ground_truth(cfg.gt, id_maps(collection), collection.mode, collection.split, cfg.gt_header)
    return collection, gt


def _execute(cfg: RunConfig) -> list[list]:
    try:
        collection, gt = _load(cfg)
    except (IngestionError, InvalidPairError, OSError, UnicodeDecodeError) as exc:
        raise _Exit(EXIT_INGEST, f"ingestion error: {exc}") from exc
    matcher = MATCHERS[cfg.matcher]
    rows = []
    for method in cfg.methods:
        try:
            emitter = build_emitter(method, collection, cfg.params)
            curve = run_experiment(emitter, gt, matcher, cfg.budget)
        except Exception as exc:
            raise _Exit(EXIT_RUNTIME, f"{method}: runtime error: {exc}") from exc
        row = summary_row(method, cfg.dataset_name, curve, cfg.timing)
        rows.append(row)
        aucs = " ".join(f"auc*@{c}={float(v):.4f}" for c, v in zip(CHECKPOINTS, row[3:]))
        print(
            f"{method} {cfg.dataset_name} emitted={len(curve)} recall={curve.final_recall:.4f} "
            f"init_ms={curve.init_time_ns / 1e6:.2f} {aucs}"
        )
        target = cfg.out if len(cfg.methods) == 1 and cfg.out else None
        if cfg.curves_dir is not None:
            cfg.curves_dir.mkdir(parents=True, exist_ok=True)
            target = cfg.curves_dir / f"{method}.csv"
        if target is not None:
            write_curve_csv(curve, target, cfg.timing)
    if cfg.summary is not None:
        write_summary_csv(rows, cfg.summary)
    return rows


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def cmd_run(args) -> int:
    methods = [args.method] if args.method else []
    cfg, explicit = _merge(args, methods)
    if len(cfg.methods) != 1:
        raise ConfigError("run takes exactly one --method")
    cfg.validate(explicit)
    _execute(cfg)
    return EXIT_OK


def cmd_bench(args) -> int:
    methods = [m for item in (args.methods or []) for m in item.split(",") if m]
    cfg, _ = _merge(args, methods)
    cfg.validate()
    _execute(cfg)
    return EXIT_OK


def cmd_synth(args) -> int:
    cfg = SynthConfig(args.n, args.dup_rate, args.noise, args.seed, args.clean_clean)
    try:
        cfg.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    coll, gt = synthesize(cfg)
    paths = write_dataset(coll, gt, args.out_dir, args.stem)
    print(f"wrote {len(coll)} profiles and {gt.size} matches: " + ", ".join(str(p) for p in paths))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"run": cmd_run, "bench": cmd_bench, "synth": cmd_synth}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"per: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _Exit as exc:
        print(f"per: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
