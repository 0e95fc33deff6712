"""Command-line entry point.

Configuration comes from an optional JSON file (--config) overlaid by
command-line flags; flags win. Every run writes a manifest.json echoing the
fully resolved configuration into the output directory, and re-running from
that manifest reproduces the CSV payloads byte for byte. Machine-readable
numbers are printed with 17 significant digits; human tables are rounded.

Exit codes: 0 success, 2 experiment verdict "fail", 3 "inconclusive",
1 malformed configuration or runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import complexity as cx
from . import ensembles, experiments, geometry, moments, qmath, seeding
from .graphs import ArchitectureError, chain_edges

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3

_VERDICT_EXIT = {"pass": EXIT_OK, "fail": EXIT_FAIL,
                 "inconclusive": EXIT_INCONCLUSIVE}


class ConfigError(ValueError):
    pass


def _g(x) -> str:
    """Machine-file float format: 17 significant digits."""
    return f"{float(x):.17g}"


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return _g(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "" if value is None else str(value)


def _write_csv(path, fieldnames, rows):
    lines = [",".join(fieldnames)]
    for row in rows:
        lines.append(",".join(_cell(row.get(f)) for f in fieldnames))
    Path(path).write_text("\n".join(lines) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    return obj


# ---------------------------------------------------------------------------
# Parameter schemas

def _floats(s):
    if isinstance(s, (list, tuple)):
        return [float(v) for v in s]
    return [float(v) for v in str(s).split(",") if v != ""]


def _int(s) -> int:
    value = float(s)
    if value != int(value):
        raise ConfigError(f"expected an integer, got {s!r}")
    return int(value)


def _opt_float(s):
    return None if s is None or s == "" else float(s)


_ARCH_PARAMS = {
    "kind": (str, "rqc1d"),
    "n": (_int, 1),
    "q": (_int, 2),
    "graph": (str, "chain"),
    "gateset": (str, ""),
    "dt": (float, ensembles.DEFAULT_SLH_DT),
}

_BOUND_FIELDS = ("n", "q", "eps", "gamma", "alpha", "beta", "delta", "delta1",
                 "delta2", "k", "gateset_size", "c_loc", "c1", "c2",
                 "gamma_sk", "a_sk", "m", "r", "r1", "r2", "tau", "tau_s",
                 "tau_slh", "lam", "kappa", "t")

COMMAND_PARAMS = {
    "vol": {
        "space": (str, "state"),
        "d": (_int, 2),
        "eps": (_floats, [0.5]),
        "samples": (_int, 100_000),
    },
    "gap": {
        "n": (_int, 2),
        "q": (_int, 2),
        "k": (_int, 1),
        "graph": (str, "chain"),
        "points": (None, None),
    },
    "walk": {
        **_ARCH_PARAMS,
        "t_max": (float, 100),
        "record": (str, "summary"),
        "eps": (_floats, []),
        "r_max": (_int, 6),
        "complexity_gateset": (str, ""),
    },
    "complexity": {
        "gateset": (str, "ht"),
        "eps": (_floats, [0.3]),
        "r_max": (_int, 6),
        "mode": (str, "exact_dedup"),
        "radius": (_opt_float, None),
        "random_targets": (_int, 0),
        "word_targets": (str, ""),
        "node_budget": (_int, cx.DEFAULT_NODE_BUDGET),
    },
    "recur": {
        **_ARCH_PARAMS,
        "eps": (float, 0.5),
        "r1": (_int, 3),
        "r2": (_int, 0),
        "t_max": (_int, 5000),
        "n_realizations": (_int, 200),
        "tau_block": (_int, 1),
        "vol_samples": (_int, 200_000),
        "complexity_gateset": (str, ""),
        "complexity_r_max": (_int, 6),
        "bound_inputs": (None, None),
    },
    "equid-cert": {
        **_ARCH_PARAMS,
        "t": (_int, 1),
        "eps": (float, 0.3),
        "alpha": (float, 0.9),
        "beta": (float, 1.1),
        "centers": (_int, 6),
        "samples": (_int, 10_000),
        "space": (str, "state"),
        "mc_reference_samples": (_int, 200_000),
    },
    "slh-stability": {
        "n": (_int, 2),
        "q": (_int, 2),
        "graph": (str, "chain"),
        "dt": (float, ensembles.DEFAULT_SLH_DT),
        "s": (float, 0.5),
        "x_grid": (_floats, [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]),
        "n_realizations": (_int, 10_000),
    },
    "bounds": {
        "formula": (str, ""),
        "model": (str, "rqc1d"),
        "space": (str, "unitary"),
        "d": (_int, 0),
        **{f: (_opt_float, None) for f in _BOUND_FIELDS},
    },
}

_TOP_KEYS = {"command", "parameters", "master_seed", "output_dir", "workers",
             "schema_version"}


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    parameters: dict
    master_seed: int
    output_dir: str
    workers: int

    def __post_init__(self):
        if self.workers < 1:
            raise ConfigError("workers must be a positive integer")
        if not -(2 ** 63) <= self.master_seed < 2 ** 64:
            raise ConfigError("master_seed must fit in 64 bits")

    def manifest(self) -> dict:
        return {
            "schema_version": experiments.SCHEMA_VERSION,
            "command": self.command,
            "parameters": _jsonable(self.parameters),
            "master_seed": self.master_seed,
            "output_dir": self.output_dir,
            "workers": self.workers,
        }


def _coerce(command: str, key: str, value):
    spec = COMMAND_PARAMS[command]
    if key not in spec:
        raise ConfigError(f"unknown parameter {key!r} for command {command!r}")
    parser = spec[key][0]
    if parser is None or value is None:
        return value
    return parser(value)


def resolve_config(command: str, cli_params: dict, config_path: str | None,
                   master_seed, output_dir, workers) -> RunConfig:
    params = {key: default for key, (_p, default) in COMMAND_PARAMS[command].items()}
    file_seed = file_dir = file_workers = None
    if config_path:
        try:
            payload = json.loads(Path(config_path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"{config_path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
        if not isinstance(payload, dict):
            raise ConfigError(f"{config_path}: top level must be an object")
        unknown = set(payload) - _TOP_KEYS
        if unknown:
            raise ConfigError(f"{config_path}: unknown keys {sorted(unknown)}")
        if "command" in payload and payload["command"] != command:
            raise ConfigError(
                f"{config_path}: config is for command {payload['command']!r}, "
                f"not {command!r}")
        for key, value in (payload.get("parameters") or {}).items():
            params[key] = _coerce(command, key, value)
        file_seed = payload.get("master_seed")
        file_dir = payload.get("output_dir")
        file_workers = payload.get("workers")
    for key, value in cli_params.items():
        if value is not None:
            params[key] = _coerce(command, key, value)
    return RunConfig(
        command=command,
        parameters=params,
        master_seed=int(master_seed if master_seed is not None
                        else (file_seed if file_seed is not None else 0)),
        output_dir=str(output_dir if output_dir is not None
                       else (file_dir if file_dir is not None else ".")),
        workers=int(workers if workers is not None
                    else (file_workers if file_workers is not None else 1)),
    )


# ---------------------------------------------------------------------------
# Architecture construction helpers

def _parse_graph(n: int, text: str):
    if text in ("", "chain"):
        return chain_edges(n)
    if text == "complete":
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    if text == "ring":
        return chain_edges(n) + ([(0, n - 1)] if n > 2 else [])
    edges = []
    for part in text.split(";"):
        a, b = part.split("-")
        edges.append((int(a), int(b)))
    return edges


def _load_gateset(name: str) -> ensembles.GateSet:
    if name in ensembles.GATESET_BUILTINS:
        return ensembles.builtin_gateset(name)
    if Path(name).exists():
        return ensembles.load_gateset(name)
    raise ConfigError(f"gate set {name!r} is neither a builtin "
                      f"({sorted(ensembles.GATESET_BUILTINS)}) nor a file")


def _build_arch(p: dict) -> ensembles.CircuitArchitecture:
    kind = p["kind"]
    n, q = p["n"], p["q"]
    gateset = _load_gateset(p["gateset"]) if p.get("gateset") else None
    graph = () if (kind == "rqc1d" or n == 1) else _parse_graph(n, p.get("graph", "chain"))
    kwargs = {"kind": kind, "n": n, "q": q, "graph": tuple(graph)}
    if kind == "grqc_gateset":
        if gateset is None:
            raise ConfigError("grqc_gateset needs --gateset")
        kwargs["gateset"] = gateset
    if kind == "slh":
        kwargs["slh_dt"] = p.get("dt", ensembles.DEFAULT_SLH_DT)
    return ensembles.CircuitArchitecture(**kwargs)


# ---------------------------------------------------------------------------
# Command implementations

def _cmd_vol(cfg: RunConfig, out: Path) -> int:
    p = cfg.parameters
    space, d, samples = p["space"], p["d"], p["samples"]

    def run_cell(item):
        idx, eps = item
        rng = seeding.substream(cfg.master_seed, f"vol:{space}:{d}:{eps:.17g}", idx)
        return geometry.mc_ball_volume(space, d, eps, samples, rng)

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        cells = list(pool.map(run_cell, enumerate(p["eps"])))
    rows = []
    for mc in cells:
        exact = geometry.vol_state_ball(d, min(mc.eps, 1.0)) if space == "state" else None
        rows.append({"space": mc.space, "d": mc.d, "eps": mc.eps,
                     "n_samples": mc.n_samples, "hits": mc.hits,
                     "estimate": mc.estimate, "ci_low": mc.ci_low,
                     "ci_high": mc.ci_high, "exact": exact})
    _write_csv(out / "vol_sweep.csv",
               ["space", "d", "eps", "n_samples", "hits", "estimate",
                "ci_low", "ci_high", "exact"], rows)
    for row in rows:
        exact = "" if row["exact"] is None else f"  exact {row['exact']:.6g}"
        print(f"{space} d={d} eps={row['eps']:g}: estimate {row['estimate']:.6g} "
              f"CI [{row['ci_low']:.6g}, {row['ci_high']:.6g}]{exact}")
    return EXIT_OK


def _cmd_gap(cfg: RunConfig, out: Path) -> int:
    p = cfg.parameters
    if p.get("points"):
        for pt in p["points"]:
            if not isinstance(pt, dict) or not {"n", "q", "k"} <= set(pt):
                raise ConfigError(
                    "each gap point must be an object with keys n, q, k "
                    "and optional graph_id, edges")
        points = [(pt["n"], pt["q"], pt["k"], pt.get("graph_id", "custom"),
                   [tuple(e) for e in pt["edges"]] if pt.get("edges")
                   else chain_edges(pt["n"]))
                  for pt in p["points"]]
    else:
        points = [(p["n"], p["q"], p["k"], p["graph"],
                   _parse_graph(p["n"], p["graph"]))]

    def run_point(point):
        return moments.gap_sweep_rows([point])[0]

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        rows = list(pool.map(run_point, points))
    _write_csv(out / "gap_sweep.csv",
               ["n", "q", "k", "graph_id", "edges", "gap", "expander_norm",
                "method"], rows)
    for row in rows:
        print(f"n={row['n']} q={row['q']} k={row['k']} {row['graph_id']}: "
              f"gap {row['gap']:.6g} expander_norm {row['expander_norm']:.6g} "
              f"({row['method']})")
    return EXIT_OK


def _cmd_walk(cfg: RunConfig, out: Path) -> int:
    p = cfg.parameters
    arch = _build_arch(p)
    eps_list = p["eps"]
    complexity_fn = None
    if eps_list:
        gs_name = p["complexity_gateset"] or p["gateset"]
        if not gs_name:
            raise ConfigError("complexity columns need --complexity-gateset "
                              "(or a gate-set walk)")
        table = cx.WordTable(_load_gateset(gs_name), p["r_max"])
        complexity_fn = lambda mat, eps: table.complexity_unitary(mat, eps).value
    rng = seeding.substream(cfg.master_seed, "walk")
    trace = ensembles.walk(arch, p["t_max"], rng, record=p["record"],
                           eps_list=eps_list, complexity_fn=complexity_fn,
                           seed=cfg.master_seed)
    rows = ensembles.trace_csv_rows(trace)
    fields = ["t", "dist_to_id"] + [f"complexity_eps_{e:g}" for e in eps_list]
    _write_csv(out / "trace.csv", fields, rows)
    print(f"walk {arch.kind} n={arch.n} q={arch.q}: {len(rows) - 1} steps, "
          f"final distance {trace.dist_to_id[-1]:.6g}")
    return EXIT_OK


def _cmd_complexity(cfg: RunConfig, out: Path) -> int:
    p = cfg.parameters
    gateset = _load_gateset(p["gateset"])
    dim = gateset.q ** gateset.locality
    targets = []
    if p["word_targets"]:
        for spec in p["word_targets"].split(";"):
            indices = [int(v) for v in spec.split(",") if v != ""]
            targets.append((f"word_{spec}", cx.make_word(gateset, indices).matrix))
    for i in range(p["random_targets"]):
        rng = seeding.substream(cfg.master_seed, "complexity:target", i)
        targets.append((f"haar_{i}", qmath.haar_unitary(dim, rng).entries))
    if not targets:
        raise ConfigError("no targets: set --random-targets or --word-targets")
    entries = []
    for target_id, mat in targets:
        for eps in p["eps"]:
            res = cx.complexity_unitary(mat, gateset, eps, p["r_max"],
                                        p["mode"], p["radius"], p["node_budget"])
            entries.append((target_id, res))
    rows = cx.complexity_csv_rows(entries)
    _write_csv(out / "complexity_sweep.csv",
               ["target_id", "eps", "value", "witness_length", "mode",
                "truncated"], rows)
    for row in rows:
        print(f"{row['target_id']} eps={row['eps']:g}: {row['value']}")
    return EXIT_OK


def _cmd_recur(cfg: RunConfig, out: Path) -> int:
    p = cfg.parameters
    arch = _build_arch(p)
    bound_inputs = None
    if p.get("bound_inputs"):
        bound_inputs = moments.BoundInputs(**{
            k: v for k, v in p["bound_inputs"].items()})
    gs = _load_gateset(p["complexity_gateset"]) if p["complexity_gateset"] else None
    rng = seeding.substream(cfg.master_seed, "recur")
    report = experiments.run_recurrence(
        arch, p["eps"], p["r1"], p["r2"], p["t_max"], p["n_realizations"],
        p["tau_block"], rng, complexity_gateset=gs,
        complexity_r_max=p["complexity_r_max"], bound_inputs=bound_inputs,
        vol_samples=p["vol_samples"], seed=cfg.master_seed)
    experiments.write_json(out / "recurrence.json", _jsonable(report.summary()))
    fields, rows = report.csv_rows()
    _write_csv(out / "recurrence_detail.csv", fields, rows)
    mean = report.mean_blocks
    print(f"recurrence: mean blocks {'-' if mean is None else f'{mean:.4g}'} "
          f"(1/vol {1.0 / report.vol_reference.estimate:.4g}), "
          f"censored {report.censored}/{report.n_realizations}")
    return EXIT_OK


def _cmd_equid(cfg: RunConfig, out: Path) -> int:
    p = cfg.parameters
    arch = _build_arch(p)
    rng = seeding.substream(cfg.master_seed, "equid-cert")
    cert = experiments.certify_equidistribution(
        arch, p["t"], p["eps"], p["alpha"], p["beta"], p["centers"],
        p["samples"], rng, space=p["space"],
        mc_reference_samples=p["mc_reference_samples"], seed=cfg.master_seed)
    experiments.write_json(out / "equid_certificate.json",
                           _jsonable(cert.summary()))
    fields, rows = cert.csv_rows()
    _write_csv(out / "equid_cells.csv", fields, rows)
    print(f"equidistribution at t={p['t']}, eps={p['eps']:g}, "
          f"(alpha, beta)=({p['alpha']:g}, {p['beta']:g}): {cert.verdict}"
          + (f" ({cert.guidance})" if cert.guidance else ""))
    return _VERDICT_EXIT[cert.verdict]


def _cmd_slh(cfg: RunConfig, out: Path) -> int:
    p = cfg.parameters
    arch = ensembles.CircuitArchitecture(
        kind="slh", n=p["n"], q=p["q"],
        graph=tuple(_parse_graph(p["n"], p["graph"])), slh_dt=p["dt"])
    rng = seeding.substream(cfg.master_seed, "slh-stability")
    report = experiments.slh_stability_test(arch, p["s"], p["x_grid"],
                                            p["n_realizations"], rng,
                                            seed=cfg.master_seed)
    experiments.write_json(out / "slh_stability.json", _jsonable(report.summary()))
    fields, rows = report.csv_rows()
    _write_csv(out / "slh_stability.csv", fields, rows)
    print(f"slh stability on [0, {p['s']:g}] (m={report.m}): {report.verdict}, "
          f"unitarity defect {report.unitarity_defect:.3g}")
    return _VERDICT_EXIT[report.verdict]


_SPECIAL_FORMULAS = ("equid_gap_threshold", "equid_time", "sk_upper")


def _cmd_bounds(cfg: RunConfig, out: Path) -> int:
    p = cfg.parameters
    formula = p["formula"]
    if not formula:
        raise ConfigError("bounds needs --formula")
    known = sorted(set(moments.FORMULA_NAMES) | set(_SPECIAL_FORMULAS))
    if formula not in known:
        raise ConfigError(f"unknown formula {formula!r}; choose from {known}")
    field_kwargs = {}
    for f in _BOUND_FIELDS:
        if p.get(f) is None:
            continue
        value = p[f]
        if f in ("n", "q", "k", "m", "r1", "r2", "gateset_size", "t"):
            value = _int(value)
        field_kwargs[f] = value
    if formula == "equid_gap_threshold":
        results = {"threshold": moments.equid_gap_threshold(
            p["d"], field_kwargs["eps"], field_kwargs["gamma"], p["space"])}
    elif formula == "sk_upper":
        results = {"upper_bound": moments.sk_upper_bound(
            p["d"], field_kwargs["eps"],
            field_kwargs.get("a_sk", 1.0), field_kwargs.get("gamma_sk", 2.0),
            p["space"])}
    elif formula == "equid_time":
        results = moments.equid_time_bounds(moments.BoundInputs(**field_kwargs),
                                            p["model"])
    else:
        results = moments.design_depth_formulas(moments.BoundInputs(**field_kwargs),
                                                formula)
    if not isinstance(results, dict):
        results = {formula: results}
    experiments.write_json(out / "bounds.json", _jsonable(
        {"schema_version": experiments.SCHEMA_VERSION, "formula": formula,
         "results": results}))
    for key, value in results.items():
        print(f"{key} = " + ("none" if value is None else _g(value)))
    return EXIT_OK


_DISPATCH = {
    "vol": _cmd_vol,
    "gap": _cmd_gap,
    "walk": _cmd_walk,
    "complexity": _cmd_complexity,
    "recur": _cmd_recur,
    "equid-cert": _cmd_equid,
    "slh-stability": _cmd_slh,
    "bounds": _cmd_bounds,
}


def dispatch(cfg: RunConfig) -> int:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    experiments.write_json(out / "manifest.json", cfg.manifest())
    return _DISPATCH[cfg.command](cfg, out)


# ---------------------------------------------------------------------------
# Argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="complexity-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    for command, spec in COMMAND_PARAMS.items():
        cp = sub.add_parser(command)
        cp.add_argument("--config", default=None)
        cp.add_argument("--master-seed", default=None)
        cp.add_argument("--output-dir", default=None)
        cp.add_argument("--workers", default=None)
        for key, (parser_fn, _default) in spec.items():
            if parser_fn is None:
                continue
            cp.add_argument("--" + key.replace("_", "-"), dest=key, default=None)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    try:
        if not argv:
            parser.print_usage(sys.stderr)
            return EXIT_ERROR
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_ERROR
        cli_params = {key: getattr(args, key)
                      for key in COMMAND_PARAMS[args.command]
                      if hasattr(args, key)}
        cfg = resolve_config(args.command, cli_params, args.config,
                             args.master_seed, args.output_dir, args.workers)
        return dispatch(cfg)
    except (ConfigError, ArchitectureError, ensembles.GateSetError,
            moments.CapacityError, qmath.InvalidDimensionError,
            qmath.DimensionMismatchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
