"""Command-line front end for reproducible bat-algorithm experiments.

Subcommands::

    batopt optimize          one engine run -> trace.csv + summary.json
    batopt bench-suite       all nine benchmarks x S seeds -> traces + aggregate.csv
    batopt stability-region  (l, m) grid verdicts -> region.csv
    batopt dynamic-trace     reduced-system trajectory -> trajectory.csv + summary.json
    batopt hitprob           hit-probability curve over replicas -> curve.csv + summary.json

Every experiment writes a manifest.json with all resolved parameters; the
manifest doubles as a config file, so re-running the same subcommand with
``--config manifest.json`` reproduces the CSV outputs byte for byte.
Precedence is CLI flags over config-file values over built-in defaults.
Exit codes: 0 success, 2 validation failure, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from cmath import phase
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .benchmarks import ObjectiveSpec, get_spec, list_suite
from .convergence import ConvergenceTarget, check_monotone, estimate_hit_probability
from .dynamics import (
    DynamicParams,
    RegionRaster,
    first_convergence_iteration,
    iterate_trajectory,
    rasterize_rows,
    region_verdict,
    _grid_axis,
)
from .engine import BaParams, RunTrace, run

SUBCOMMANDS = ("optimize", "bench-suite", "stability-region", "dynamic-trace", "hitprob")

ENGINE_KEYS = {
    "objective", "dimension", "seeds", "m", "l",
    "f_min", "f_max", "omega", "alpha", "gamma", "A0", "r0",
    "n", "t_max", "v_clamp", "seed",
}
DYNAMICS_KEYS = {"l", "m", "p", "x0", "v0", "k_max", "l_min", "l_max", "m_min", "m_max", "step"}
TARGET_KEYS = {"theta", "epsilon", "M", "replicas"}
OUTPUT_KEYS = {"out", "jobs"}

_INT_FIELDS = {"dimension", "seeds", "n", "t_max", "seed", "k_max", "replicas", "jobs"}


class ValidationError(ValueError):
    pass


def _as_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    if isinstance(value, float):
        if not value.is_integer():
            raise ValidationError(f"{name} must be an integer, got {value!r}")
        value = int(value)
    return value


def _engine_defaults() -> dict:
    base = BaParams()
    return {
        "objective": "Sphere",
        "dimension": 30,
        "seeds": 20,
        "f_min": base.f_min,
        "f_max": base.f_max,
        "omega": base.omega,
        "alpha": base.alpha,
        "gamma": base.gamma,
        "A0": base.A0,
        "r0": base.r0,
        "n": base.n,
        "t_max": base.t_max,
        "v_clamp": base.v_clamp,
        "seed": base.seed,
    }


def _dynamics_defaults() -> dict:
    return {
        "l": 0.5, "m": 2.0, "p": 1.0, "x0": 0.0, "v0": 0.0, "k_max": 500,
        "l_min": -2.0, "l_max": 2.0, "m_min": -1.0, "m_max": 5.0, "step": 0.01,
    }


def _target_defaults() -> dict:
    return {"theta": 0.0, "epsilon": 1e-2, "M": None, "replicas": 200}


def _output_defaults() -> dict:
    return {"out": ".", "jobs": 1}


def _merge_engine(resolved: dict, layer: dict) -> None:
    # m/l are shorthands for the frequency scale and inertia weight; explicit
    # f_min/f_max/omega in the same layer win over the shorthands
    expanded = {}
    if layer.get("m") is not None:
        m = float(layer["m"])
        expanded["f_min"], expanded["f_max"] = min(0.0, m), max(0.0, m)
    if layer.get("l") is not None:
        expanded["omega"] = float(layer["l"])
    for key, value in layer.items():
        if key in ("m", "l") or value is None:
            continue
        expanded[key] = value
    resolved.update(expanded)


def _merge_plain(resolved: dict, layer: dict) -> None:
    resolved.update({k: v for k, v in layer.items() if v is not None})


@dataclass
class ExperimentConfig:
    """Fully resolved parameter bundle for one subcommand invocation."""

    subcommand: str
    engine: dict = field(default_factory=dict)
    dynamics: dict = field(default_factory=dict)
    target: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    def ba_params(self) -> BaParams:
        e = self.engine
        return BaParams(
            f_min=float(e["f_min"]),
            f_max=float(e["f_max"]),
            omega=float(e["omega"]),
            alpha=float(e["alpha"]),
            gamma=float(e["gamma"]),
            A0=float(e["A0"]),
            r0=float(e["r0"]),
            n=e["n"],
            t_max=e["t_max"],
            v_clamp=None if e["v_clamp"] is None else float(e["v_clamp"]),
            seed=e["seed"],
        )

    def objective(self) -> ObjectiveSpec:
        return get_spec(self.engine["objective"], dimension=self.engine["dimension"])

    def convergence_target(self) -> ConvergenceTarget:
        t = self.target
        return ConvergenceTarget(
            theta=float(t["theta"]),
            epsilon=float(t["epsilon"]),
            M=None if t["M"] is None else float(t["M"]),
        )

    def dynamic_params(self) -> DynamicParams:
        d = self.dynamics
        return DynamicParams(l=float(d["l"]), m=float(d["m"]), p=float(d["p"]))

    def manifest(self) -> dict:
        sections = {
            "optimize": ("engine", "output"),
            "bench-suite": ("engine", "output"),
            "hitprob": ("engine", "target", "output"),
            "stability-region": ("dynamics", "output"),
            "dynamic-trace": ("dynamics", "output"),
        }[self.subcommand]
        doc = {"subcommand": self.subcommand}
        for name in sections:
            doc[name] = dict(getattr(self, name))
        return doc


def load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError(f"config {path} must be a JSON object")
    allowed = {"subcommand", "engine", "dynamics", "target", "output"}
    unknown = set(doc) - allowed
    if unknown:
        raise ValidationError(f"unknown config sections: {sorted(unknown)}")
    for name, keys in (
        ("engine", ENGINE_KEYS),
        ("dynamics", DYNAMICS_KEYS),
        ("target", TARGET_KEYS),
        ("output", OUTPUT_KEYS),
    ):
        section = doc.get(name, {})
        if not isinstance(section, dict):
            raise ValidationError(f"config section {name!r} must be a JSON object")
        unknown = set(section) - keys
        if unknown:
            raise ValidationError(f"unknown keys in config section {name!r}: {sorted(unknown)}")
    return doc


def build_config(subcommand: str, args: argparse.Namespace) -> ExperimentConfig:
    """Resolve defaults < config file < CLI flags into one validated bundle."""
    file_doc = load_config_file(args.config) if args.config else {}
    if file_doc.get("subcommand") not in (None, subcommand):
        raise ValidationError(
            f"config was written for {file_doc['subcommand']!r}, not {subcommand!r}"
        )

    engine = _engine_defaults()
    _merge_engine(engine, file_doc.get("engine", {}))
    _merge_engine(engine, _cli_engine_layer(subcommand, args))

    dynamics = _dynamics_defaults()
    _merge_plain(dynamics, file_doc.get("dynamics", {}))
    _merge_plain(dynamics, _cli_dynamics_layer(subcommand, args))

    target = _target_defaults()
    _merge_plain(target, file_doc.get("target", {}))
    _merge_plain(target, _cli_target_layer(args))
    # M is the only key where null is meaningful; propagate it exactly
    if "M" in file_doc.get("target", {}):
        target["M"] = file_doc["target"]["M"]

    output = _output_defaults()
    _merge_plain(output, file_doc.get("output", {}))
    _merge_plain(output, {"out": args.out, "jobs": args.jobs})

    config = ExperimentConfig(
        subcommand=subcommand, engine=engine, dynamics=dynamics, target=target, output=output
    )
    _validate(config)
    return config


def _cli_engine_layer(subcommand: str, args: argparse.Namespace) -> dict:
    if subcommand in ("optimize", "bench-suite", "hitprob"):
        keys = ("objective", "dimension", "seeds", "m", "l", "f_min", "f_max",
                "omega", "alpha", "gamma", "seed", "n", "t_max")
    else:
        keys = ("seed",)
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def _cli_dynamics_layer(subcommand: str, args: argparse.Namespace) -> dict:
    # --l/--m mean DynamicParams only on dynamic-trace; on engine subcommands
    # they are frequency/inertia shorthands handled by the engine layer
    if subcommand == "dynamic-trace":
        keys = ("l", "m", "p", "x0", "v0", "k_max")
    elif subcommand == "stability-region":
        keys = ("l_min", "l_max", "m_min", "m_max", "step")
    else:
        return {}
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def _cli_target_layer(args: argparse.Namespace) -> dict:
    keys = ("theta", "epsilon", "replicas")
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def _validate(config: ExperimentConfig) -> None:
    for section, names in (
        (config.engine, ENGINE_KEYS),
        (config.dynamics, DYNAMICS_KEYS),
        (config.target, TARGET_KEYS),
        (config.output, OUTPUT_KEYS),
    ):
        for key in set(section) & _INT_FIELDS:
            if section[key] is not None:
                section[key] = _as_int(key, section[key])

    sub = config.subcommand
    try:
        if sub in ("optimize", "bench-suite", "hitprob"):
            config.ba_params()
            if config.engine["dimension"] < 1:
                raise ValidationError(f"dimension must be >= 1, got {config.engine['dimension']}")
            if sub != "bench-suite":
                config.objective()
            if config.engine["seeds"] < 1:
                raise ValidationError(f"seeds must be >= 1, got {config.engine['seeds']}")
        if sub == "hitprob":
            config.convergence_target()
            if config.target["replicas"] < 1:
                raise ValidationError(f"replicas must be >= 1, got {config.target['replicas']}")
        if sub == "dynamic-trace":
            config.dynamic_params()
            if config.dynamics["k_max"] < 1:
                raise ValidationError(f"k_max must be >= 1, got {config.dynamics['k_max']}")
            for key in ("x0", "v0"):
                if not math.isfinite(float(config.dynamics[key])):
                    raise ValidationError(f"{key} must be finite")
        if sub == "stability-region":
            d = config.dynamics
            if float(d["step"]) <= 0.0:
                raise ValidationError(f"step must be > 0, got {d['step']}")
            if not d["l_min"] < d["l_max"] or not d["m_min"] < d["m_max"]:
                raise ValidationError("degenerate raster window")
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc

    if config.output["jobs"] < 1:
        raise ValidationError(f"jobs must be >= 1, got {config.output['jobs']}")


def _prepare_out_dir(config: ExperimentConfig) -> str:
    out = config.output["out"]
    try:
        os.makedirs(out, exist_ok=True)
    except OSError as exc:
        raise ValidationError(f"cannot create output directory {out}: {exc}") from exc
    if not os.access(out, os.W_OK):
        raise ValidationError(f"output directory {out} is not writable")
    return out


def _write_json(path: str, doc: dict) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_manifest(config: ExperimentConfig, out: str) -> None:
    _write_json(os.path.join(out, "manifest.json"), config.manifest())


# ---------------------------------------------------------------------------
# subcommand implementations


def cmd_optimize(config: ExperimentConfig) -> int:
    out = _prepare_out_dir(config)
    _write_manifest(config, out)
    spec = config.objective()
    params = config.ba_params()

    started = time.perf_counter()
    trace = run(spec, params)
    elapsed = time.perf_counter() - started

    trace.to_csv(os.path.join(out, "trace.csv"))
    summary = {
        "objective": spec.name,
        "dimension": spec.dimension,
        "seed": params.seed,
        "iterations": params.t_max,
        "final_best_fitness": float(trace.best_fitness[-1]),
        "best_position": [float(v) for v in trace.final_swarm.best_position],
        "wall_time_s": elapsed,
    }
    _write_json(os.path.join(out, "summary.json"), summary)
    print(f"optimize: {spec.name} D={spec.dimension} seed={params.seed} "
          f"final best {trace.best_fitness[-1]:.6g} -> {out}/trace.csv")
    return 0


def _bench_run(args) -> tuple[str, int, RunTrace]:
    name, dimension, params = args
    spec = get_spec(name, dimension=dimension)
    return name, params.seed, run(spec, params)


def cmd_bench_suite(config: ExperimentConfig) -> int:
    out = _prepare_out_dir(config)
    _write_manifest(config, out)
    params = config.ba_params()
    dimension = config.engine["dimension"]
    seeds = config.engine["seeds"]
    jobs = config.output["jobs"]

    work = [
        (spec.name, dimension, replace(params, seed=params.seed + offset))
        for spec in list_suite(dimension)
        for offset in range(seeds)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_bench_run, work))
    else:
        results = [_bench_run(w) for w in work]

    finals: dict[str, list[float]] = {}
    improvements: dict[str, list[float]] = {}
    for name, seed, trace in results:
        mono = check_monotone(trace)
        if not mono.passed:
            raise RuntimeError(
                f"best-fitness monotonicity violated for {name} seed {seed} "
                f"at iteration {mono.first_violation}"
            )
        trace.to_csv(os.path.join(out, f"trace_{name.lower()}_seed{seed}.csv"))
        first, last = float(trace.best_fitness[0]), float(trace.best_fitness[-1])
        finals.setdefault(name, []).append(last)
        if last == 0.0:
            improvements.setdefault(name, []).append(math.inf if first > 0.0 else 1.0)
        else:
            improvements.setdefault(name, []).append(first / last)

    aggregate_path = os.path.join(out, "aggregate.csv")
    with open(aggregate_path, "w", newline="") as fh:
        fh.write("function,median_final_best,median_improvement\n")
        for spec in list_suite(dimension):
            med_final = float(np.median(finals[spec.name]))
            med_impr = float(np.median(improvements[spec.name]))
            fh.write(f"{spec.name},{med_final!r},{med_impr!r}\n")
            print(f"bench-suite: {spec.name:10s} median final {med_final:.6g} "
                  f"median improvement {med_impr:.6g}")
    print(f"bench-suite: wrote {len(results)} traces and {aggregate_path}")
    return 0


def cmd_stability_region(config: ExperimentConfig) -> int:
    out = _prepare_out_dir(config)
    _write_manifest(config, out)
    d = config.dynamics
    step = float(d["step"])
    l_values = _grid_axis(float(d["l_min"]), float(d["l_max"]), step)
    m_values = _grid_axis(float(d["m_min"]), float(d["m_max"]), step)
    jobs = config.output["jobs"]

    if jobs > 1:
        blocks = [
            (l_values[start : start + 64], m_values)
            for start in range(0, len(l_values), 64)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_raster_block, blocks))
        codes = np.vstack([p[0] for p in parts])
        radii = np.vstack([p[1] for p in parts])
    else:
        codes, radii = rasterize_rows(l_values, m_values)

    raster = RegionRaster(
        l_values=l_values, m_values=m_values, verdict_codes=codes, spectral_radius=radii
    )
    path = os.path.join(out, "region.csv")
    raster.to_csv(path)
    n_stable = int(np.sum(codes == 0))
    print(f"stability-region: {codes.size} cells ({n_stable} stable) -> {path}")
    return 0


def _raster_block(args):
    l_slice, m_values = args
    return rasterize_rows(l_slice, m_values)


def cmd_dynamic_trace(config: ExperimentConfig) -> int:
    out = _prepare_out_dir(config)
    _write_manifest(config, out)
    d = config.dynamics
    params = config.dynamic_params()
    traj = iterate_trajectory(params, float(d["x0"]), float(d["v0"]), d["k_max"])
    traj.to_csv(os.path.join(out, "trajectory.csv"))

    report = region_verdict(params.l, params.m)
    k_conv = first_convergence_iteration(traj)
    summary = {
        "l": params.l,
        "m": params.m,
        "p": params.p,
        "x0": float(d["x0"]),
        "v0": float(d["v0"]),
        "k_max": d["k_max"],
        "eigenvalues": [
            {"re": lam.real, "im": lam.imag, "magnitude": abs(lam), "phase": phase(lam)}
            for lam in report.eigenvalues
        ],
        "spectral_radius": report.spectral_radius,
        "verdict": report.verdict,
        "diverged": traj.diverged,
        "converged": k_conv is not None,
        "convergence_iteration": k_conv,
    }
    _write_json(os.path.join(out, "summary.json"), summary)
    state = ("diverged" if traj.diverged
             else f"converged at k={k_conv}" if k_conv is not None
             else "no convergence within budget")
    print(f"dynamic-trace: l={params.l} m={params.m} verdict={report.verdict} ({state})")
    return 0


def cmd_hitprob(config: ExperimentConfig) -> int:
    out = _prepare_out_dir(config)
    _write_manifest(config, out)
    spec = config.objective()
    params = config.ba_params()
    target = config.convergence_target()
    replicas = config.target["replicas"]
    jobs = config.output["jobs"]

    curve = estimate_hit_probability(spec, params, target, replicas, jobs=jobs)
    curve.to_csv(os.path.join(out, "curve.csv"))
    summary = {"objective": spec.name, "dimension": spec.dimension, "seed": params.seed}
    summary.update(curve.summary())
    _write_json(os.path.join(out, "summary.json"), summary)
    med = curve.median_first_hit()
    print(f"hitprob: {spec.name} D={spec.dimension} replicas={replicas} "
          f"epsilon={target.epsilon} theta={target.theta} "
          f"final fraction {curve.final_fraction:.3f} "
          f"median first hit {'never' if med is None else med}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON config file (manifests work too)")
    parser.add_argument("--out", metavar="DIR", help="output directory (default: current)")
    parser.add_argument("--seed", type=int, help="base random seed")
    parser.add_argument("--jobs", type=int, help="worker processes for fan-out subcommands")


def _add_engine_flags(parser: argparse.ArgumentParser, with_objective: bool = True) -> None:
    if with_objective:
        parser.add_argument("--objective", help="benchmark name (case-insensitive)")
    parser.add_argument("--dimension", type=int, help="problem dimensionality")
    parser.add_argument("--n", type=int, help="population size")
    parser.add_argument("--t-max", dest="t_max", type=int, help="iteration budget")
    parser.add_argument("--m", type=float,
                        help="frequency scale: sets the frequency range [min(0,m), max(0,m)]")
    parser.add_argument("--l", type=float, help="inertia weight shorthand (sets omega)")
    parser.add_argument("--alpha", type=float, help="loudness decay factor in (0,1)")
    parser.add_argument("--gamma", type=float, help="pulse-rate saturation rate > 0")
    parser.add_argument("--f-min", dest="f_min", type=float, help="minimum frequency")
    parser.add_argument("--f-max", dest="f_max", type=float, help="maximum frequency")
    parser.add_argument("--omega", type=float, help="inertia weight")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="batopt",
        description="Bat-algorithm experiments: runs, benchmarks, stability maps, hit curves.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("optimize", help="single engine run")
    _add_common(p)
    _add_engine_flags(p)

    p = sub.add_parser("bench-suite", help="all nine benchmarks over several seeds")
    _add_common(p)
    _add_engine_flags(p, with_objective=False)
    p.add_argument("--seeds", type=int, help="number of seeds per benchmark")

    p = sub.add_parser("stability-region", help="rasterize the (l, m) stability region")
    _add_common(p)
    p.add_argument("--l-min", dest="l_min", type=float, help="window lower l")
    p.add_argument("--l-max", dest="l_max", type=float, help="window upper l")
    p.add_argument("--m-min", dest="m_min", type=float, help="window lower m")
    p.add_argument("--m-max", dest="m_max", type=float, help="window upper m")
    p.add_argument("--step", type=float, help="grid step")

    p = sub.add_parser("dynamic-trace", help="iterate the reduced dynamical system")
    _add_common(p)
    p.add_argument("--l", type=float, help="velocity weight")
    p.add_argument("--m", type=float, help="constant frequency")
    p.add_argument("--p", type=float, help="attraction point")
    p.add_argument("--x0", type=float, help="initial position")
    p.add_argument("--v0", type=float, help="initial velocity")
    p.add_argument("--k-max", dest="k_max", type=int, help="iteration budget")

    p = sub.add_parser("hitprob", help="hit-probability curve over replicas")
    _add_common(p)
    _add_engine_flags(p)
    p.add_argument("--epsilon", type=float, help="near-optimal band above theta")
    p.add_argument("--theta", type=float, help="essential infimum of the objective")
    p.add_argument("--replicas", type=int, help="number of independent replicas")

    return parser


_DISPATCH = {
    "optimize": cmd_optimize,
    "bench-suite": cmd_bench_suite,
    "stability-region": cmd_stability_region,
    "dynamic-trace": cmd_dynamic_trace,
    "hitprob": cmd_hitprob,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = build_config(args.subcommand, args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _DISPATCH[args.subcommand](config)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - uniform runtime failure exit code
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
