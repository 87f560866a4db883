"""Command-line interface: draw sketches, evaluate bounds, run experiments.

Output is a single JSON document (default) or CSV, written to stdout unless
--output is given.  Every run echoes its numeric configuration under
"config" and carries "schema": 1.  Exit codes: 0 when everything passed, 1
when an experiment criterion failed, 2 on usage errors or invalid
dimensions.
"""

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass

from . import bounds as bounds_mod
from . import experiments as exp_mod
from .linalg import random_orthonormal, singular_values
from .srht import apply_to_matrix, draw_srht

SCHEMA_VERSION = 1

EXPERIMENT_NAMES = ("embedding", "rownorm", "flatten", "coupon", "chernoff", "mgf")

# Dimension defaults per experiment; `experiment embedding` with no flags runs
# the headline desk-scale configuration.
_EXPERIMENT_DEFAULTS = {
    "embedding": {"n": 65536, "k": 16},
    "rownorm": {"n": 4096, "k": 16},
    "flatten": {"n": 1024},
    "coupon": {"k": 8},
    "chernoff": {"n": 16, "k": 2, "ell": 6},
    "mgf": {"n": 8, "k": 2, "ell": 3},
}

_DEFAULT_DELTAS = tuple(round(0.1 * i, 1) for i in range(1, 10))
_DEFAULT_THETAS = (0.5, 1.0, 2.0)
_DEFAULT_COUPON_ELLS = (8, 12, 17, 24)


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    experiment_name: str = ""
    n: int = 0
    k: int = 0
    ell: int = 0
    trials: int = 200
    seed: int = 0
    format: str = "json"
    output_path: str = ""
    exhaustive: bool = False
    iota: float = 0.25
    c_const: float = 1.0
    C_const: float = 1.0
    beta: float = 0.0
    deltas: tuple = _DEFAULT_DELTAS
    thetas: tuple = _DEFAULT_THETAS
    ells: tuple = _DEFAULT_COUPON_ELLS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srhtlab",
        description="Subsampled randomized Hadamard transform toolkit",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", dest="output_path", default="", help="file path (default stdout)")

    p_sketch = sub.add_parser("sketch", help="draw an operator, sketch a random orthonormal basis")
    p_sketch.add_argument("--n", type=int, required=True, help="ambient dimension, power of two")
    p_sketch.add_argument("--l", dest="ell", type=int, required=True, help="sketch size")
    p_sketch.add_argument("--k", type=int, required=True, help="basis columns")
    add_common(p_sketch)

    p_bounds = sub.add_parser("bounds", help="evaluate every bound formula for (k, n)")
    p_bounds.add_argument("--k", type=int, required=True)
    p_bounds.add_argument("--n", type=int, required=True)
    p_bounds.add_argument("--iota", type=float, default=0.25)
    p_bounds.add_argument("--c", dest="c_const", type=float, default=1.0)
    p_bounds.add_argument("--bigC", dest="C_const", type=float, default=1.0)
    p_bounds.add_argument("--beta", type=float, default=0.0, help="row-norm beta (default: k)")
    add_common(p_bounds)

    p_exp = sub.add_parser("experiment", help="run a validation experiment")
    p_exp.add_argument("experiment_name", choices=EXPERIMENT_NAMES)
    p_exp.add_argument("--n", type=int, default=0)
    p_exp.add_argument("--k", type=int, default=0)
    p_exp.add_argument("--l", dest="ell", type=int, default=0)
    p_exp.add_argument("--trials", type=int, default=200)
    p_exp.add_argument("--exhaustive", action="store_true")
    p_exp.add_argument("--beta", type=float, default=0.0, help="row-norm beta (default: k)")
    p_exp.add_argument("--deltas", type=float, nargs="+", default=list(_DEFAULT_DELTAS))
    p_exp.add_argument("--thetas", type=float, nargs="+", default=list(_DEFAULT_THETAS))
    p_exp.add_argument("--ells", type=int, nargs="+", default=list(_DEFAULT_COUPON_ELLS))
    add_common(p_exp)
    return parser


def _parse(argv) -> CliConfig:
    ns = _build_parser().parse_args(argv)
    fields = {f.name for f in dataclasses.fields(CliConfig)}
    values = {k: v for k, v in vars(ns).items() if k in fields}
    for name in ("deltas", "thetas", "ells"):
        if name in values and values[name] is not None:
            values[name] = tuple(values[name])
    return CliConfig(**values)


def _emit(text: str, config: CliConfig) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _config_echo(config: CliConfig) -> dict:
    echo = dataclasses.asdict(config)
    for name in ("deltas", "thetas", "ells"):
        echo[name] = list(echo[name])
    return echo


def _matrix_record(a) -> dict:
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": a.tolist()}


def _matrix_csv_block(a) -> str:
    lines = [f"{a.shape[0]},{a.shape[1]}"]
    for row in a:
        lines.append(",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def _run_sketch(config: CliConfig) -> int:
    op = draw_srht(config.n, config.ell, (config.seed, 1, 0, 0))
    basis = random_orthonormal(config.n, config.k, (config.seed, 0, 0, 0))
    sketch = apply_to_matrix(op, basis)
    spectrum = singular_values(sketch)
    if config.format == "json":
        doc = {
            "schema": SCHEMA_VERSION,
            "config": _config_echo(config),
            "operator": {"n": op.n, "l": op.ell, "seed": op.seed},
            "sketch": _matrix_record(sketch),
            "singular_values": spectrum.tolist(),
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True), config)
    else:
        text = _matrix_csv_block(sketch) + _matrix_csv_block(spectrum.reshape(1, -1))
        _emit(text, config)
    return 0


def _run_bounds(config: CliConfig) -> int:
    k, n = config.k, config.n
    beta = config.beta if config.beta > 0 else float(k)
    report = {
        "schema": SCHEMA_VERSION,
        "config": _config_echo(config),
        "embedding": dataclasses.asdict(bounds_mod.embedding_sample_size(k, n)),
        "large_sample": dataclasses.asdict(
            bounds_mod.large_sample_size(
                k, n, bounds_mod.LargeSampleParams(config.iota, config.c_const, config.C_const)
            )
        ),
        "row_norm": {
            "beta": beta,
            **dataclasses.asdict(bounds_mod.row_norm_bound(n, k, beta)),
        },
        "row_sampling_failure": {
            "alpha": 4.0,
            "delta": 5.0 / 6.0,
            "eta": 7.0 / 6.0,
            "value": bounds_mod.row_sampling_failure_bound(k, 4.0, 5.0 / 6.0, 7.0 / 6.0)
            if k >= 2
            else None,
        },
    }
    if config.format == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True), config)
    else:
        lines = ["key,value"]

        def flatten(prefix, obj):
            if isinstance(obj, dict):
                for key, val in sorted(obj.items()):
                    flatten(f"{prefix}.{key}" if prefix else key, val)
            elif isinstance(obj, list):
                lines.append(f"{prefix},\"{obj}\"")
            else:
                lines.append(f"{prefix},{obj}")

        flatten("", report)
        _emit("\n".join(lines) + "\n", config)
    return 0


def _run_experiment(config: CliConfig) -> int:
    name = config.experiment_name
    defaults = _EXPERIMENT_DEFAULTS[name]
    n = config.n or defaults.get("n", 0)
    k = config.k or defaults.get("k", 0)
    ell = config.ell or defaults.get("ell", 0)
    beta = config.beta if config.beta > 0 else float(k)
    mode = "exhaustive" if config.exhaustive else "monte_carlo"
    if name == "embedding":
        summaries = [
            exp_mod.run_embedding_trials(
                n, k, ell=ell or None, trials=config.trials, seed=config.seed
            )
        ]
    elif name == "rownorm":
        summaries = [
            exp_mod.run_row_norm_trials(n, k, beta, trials=config.trials, seed=config.seed)
        ]
    elif name == "flatten":
        summaries = [exp_mod.run_flattening_trials(n, trials=config.trials, seed=config.seed)]
    elif name == "coupon":
        summaries = exp_mod.run_coupon_trials(
            k, config.ells, trials=config.trials, seed=config.seed
        )
    elif name == "chernoff":
        summaries = exp_mod.run_chernoff_validation(
            n, k, ell, config.deltas, seed=config.seed, mode=mode, trials=config.trials
        )
    else:
        summaries = exp_mod.run_mgf_domination(
            n, k, ell, config.thetas, seed=config.seed, mode=mode, trials=config.trials
        )
    if config.format == "json":
        doc = {
            "schema": SCHEMA_VERSION,
            "config": _config_echo(config),
            "summaries": [s.to_record() for s in summaries],
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True), config)
    else:
        _emit(exp_mod.summaries_to_csv(summaries), config)
    return 0 if all(s.passed for s in summaries) else 1


def main(argv=None) -> int:
    try:
        config = _parse(argv)
    except SystemExit as exc:
        code = exc.code
        if code in (0, None):
            return 0
        return 2
    try:
        if config.subcommand == "sketch":
            return _run_sketch(config)
        if config.subcommand == "bounds":
            return _run_bounds(config)
        return _run_experiment(config)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"srhtlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
