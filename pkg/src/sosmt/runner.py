"""Command-line harness: single runs, batches, parameter sweeps, metric recomputation.

Every file written here is a deterministic function of the configuration
and seeds (no timestamps, fixed row order, floats as shortest round-trip
decimals), so repeating a command reproduces its outputs byte for byte.
"""

from __future__ import annotations

import argparse
import configparser
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .algorithms import ALGORITHMS, AlgorithmConfig, RunResult, run_algorithm
from .analysis import Table, export_decision_view, export_objective_view, fmt, write_text_atomic
from .core import Individual, ParetoArchive, SetOfParetoSets
from .metrics import bounds_from_runs, metric_report, rmmd_matrix, task_hypervolumes
from .problems import SUITE_NAMES, ConfigurationError, ProblemSuite, encode_native, get_suite, sweep_suite

log = logging.getLogger("sosmt")

DEFAULT_RMMD_SUITES = ("EO3", "IM1")


@dataclass
class ExperimentConfig:
    suites: list[str] = field(default_factory=lambda: list(SUITE_NAMES))
    algorithms: list[str] = field(default_factory=lambda: list(ALGORITHMS))
    algorithm: AlgorithmConfig = field(default_factory=AlgorithmConfig)
    overrides: dict = field(default_factory=dict)  # suite -> {task: {param: value}}
    runs: int = 20
    base_seed: int = 0
    out: str = "results"
    workers: int = 1
    rmmd_suites: list[str] = field(default_factory=lambda: list(DEFAULT_RMMD_SUITES))
    rmmd_algorithm: str = "mo-mfea"
    sweep_suite: str = "EO3"
    sweep_param: str = "P"
    sweep_values: list[float] = field(default_factory=lambda: [6000.0, 7000.0, 8000.0])
    sweep_task: str = "Task1"
    sweep_vars: list[int] = field(default_factory=lambda: [0, 1])

    def validate(self):
        if self.runs < 1:
            raise ConfigurationError("runs must be >= 1")
        for s in self.suites:
            if s.upper() not in SUITE_NAMES:
                raise ConfigurationError(f"unknown suite {s!r}; valid: {', '.join(SUITE_NAMES)}")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ConfigurationError(f"unknown algorithm {a!r}; valid: {', '.join(ALGORITHMS)}")
        self.algorithm.validate()
        return self

    def suite(self, name) -> ProblemSuite:
        return get_suite(name, self.overrides.get(name.upper()))


# ---------------------------------------------------------------------------
# configuration files


def _split(text):
    return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]


def _num(text):
    v = float(text)
    return int(v) if v.is_integer() and "." not in text and "e" not in text.lower() else v


def load_config(path, base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Read an INI-style configuration on top of ``base`` (defaults if omitted)."""
    cp = configparser.ConfigParser()
    cp.optionxform = str  # keep parameter symbols case-sensitive
    with open(path) as fh:
        cp.read_file(fh)
    return config_from_parser(cp, base)


def config_from_parser(cp: configparser.ConfigParser, base=None) -> ExperimentConfig:
    cfg = base or ExperimentConfig()
    if cp.has_section("experiment"):
        s = cp["experiment"]
        if "suites" in s:
            cfg.suites = [x.upper() for x in _split(s["suites"])]
        if "algorithms" in s:
            cfg.algorithms = _split(s["algorithms"])
        cfg.runs = s.getint("runs", cfg.runs)
        cfg.base_seed = s.getint("seed", cfg.base_seed)
        cfg.out = s.get("out", cfg.out)
        cfg.workers = s.getint("workers", cfg.workers)
        if "rmmd_suites" in s:
            cfg.rmmd_suites = [x.upper() for x in _split(s["rmmd_suites"])]
        cfg.rmmd_algorithm = s.get("rmmd_algorithm", cfg.rmmd_algorithm)
    if cp.has_section("algorithm"):
        s = cp["algorithm"]
        changes = {}
        for f in fields(AlgorithmConfig):
            if f.name in s and f.name != "operators":
                raw = s[f.name]
                changes[f.name] = s.getboolean(f.name) if f.name == "log_generations" else _num(raw)
        cfg.algorithm = replace(cfg.algorithm, **changes)
    if cp.has_section("operators"):
        s = cp["operators"]
        ops = {k: float(v) for k, v in s.items() if k in ("eta_c", "eta_m", "p_c", "p_m")}
        cfg.algorithm = replace(cfg.algorithm, operators=replace(cfg.algorithm.operators, **ops))
    if cp.has_section("overrides"):
        for key, value in cp["overrides"].items():
            parts = key.split(".")
            if len(parts) != 3:
                raise ConfigurationError(f"override keys look like SUITE.TaskN.PARAM, got {key!r}")
            suite, task, param = parts
            cfg.overrides.setdefault(suite.upper(), {}).setdefault(task, {})[param] = float(value)
    if cp.has_section("sweep"):
        s = cp["sweep"]
        cfg.sweep_suite = s.get("suite", cfg.sweep_suite).upper()
        cfg.sweep_param = s.get("param", cfg.sweep_param)
        if "values" in s:
            cfg.sweep_values = [float(v) for v in _split(s["values"])]
        cfg.sweep_task = s.get("task", cfg.sweep_task)
        if "vars" in s:
            cfg.sweep_vars = [_var_index(v) for v in _split(s["vars"])]
    return cfg


def _var_index(name):
    name = name.strip().lower()
    if not (name.startswith("x") and name[1:].isdigit()):
        raise ConfigurationError(f"decision variables are named x1, x2, ...; got {name!r}")
    return int(name[1:]) - 1


def dump_config(cfg: ExperimentConfig) -> str:
    cp = configparser.ConfigParser()
    cp.optionxform = str
    cp["experiment"] = {
        "suites": ", ".join(cfg.suites),
        "algorithms": ", ".join(cfg.algorithms),
        "runs": str(cfg.runs),
        "seed": str(cfg.base_seed),
        "rmmd_suites": ", ".join(cfg.rmmd_suites),
        "rmmd_algorithm": cfg.rmmd_algorithm,
    }
    a = cfg.algorithm
    cp["algorithm"] = {
        f.name: str(getattr(a, f.name))
        for f in fields(AlgorithmConfig)
        if f.name not in ("operators", "archive_capacity", "log_generations")
    }
    if a.archive_capacity is not None:
        cp["algorithm"]["archive_capacity"] = str(a.archive_capacity)
    cp["operators"] = {k: fmt(getattr(a.operators, k)) for k in ("eta_c", "eta_m", "p_c")}
    if a.operators.p_m is not None:
        cp["operators"]["p_m"] = fmt(a.operators.p_m)
    cp["overrides"] = {
        f"{suite}.{task}.{param}": fmt(v)
        for suite, tasks in sorted(cfg.overrides.items())
        for task, params in sorted(tasks.items(), key=lambda kv: str(kv[0]))
        for param, v in sorted(params.items())
    }
    cp["sweep"] = {
        "suite": cfg.sweep_suite,
        "param": cfg.sweep_param,
        "values": ", ".join(fmt(v) for v in cfg.sweep_values),
        "task": str(cfg.sweep_task),
        "vars": ", ".join(f"x{v + 1}" for v in cfg.sweep_vars),
    }
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# archive files


def archive_table(arch: ParetoArchive, task_id: int) -> Table:
    d = arch.members[0].native.shape[0] if arch.members else 0
    cols = ["task"] + [f"x{i + 1}" for i in range(d)] + ["f1", "f2"]
    rows = [(task_id, *map(float, ind.native), *map(float, ind.objectives)) for ind in arch.members]
    return Table(cols, rows)


def write_run_dir(directory, result: RunResult, suite: ProblemSuite, extra_metrics=True):
    directory = Path(directory)
    for k, arch in enumerate(result.sos):
        archive_table(arch, k + 1).write(directory / f"archive_task{k + 1}.csv")
    export_decision_view(result.sos, suite).write(directory / "decision_view.csv")
    export_objective_view(result.sos).write(directory / "objective_view.csv")
    if extra_metrics:
        bounds = bounds_from_runs([result], provenance="this run")
        rep = metric_report(result.sos, bounds, with_rmmd=True, task_names=suite.task_names)
        payload = {
            "suite": suite.name,
            "algorithm": result.algorithm,
            "seed": result.seed,
            "evals_used": result.evals_used,
            "generations": result.generations,
            "normalization": rep.bounds.provenance,
            "ideal": rep.bounds.ideal.tolist(),
            "nadir": rep.bounds.nadir.tolist(),
            "reference": list(rep.reference),
            "hv": rep.hv,
            "chv": rep.chv,
            "rmmd_directed": rep.rmmd.tolist(),
            "rmmd_symmetric": rep.rmmd_symmetric.tolist(),
            "d_rand": rep.d_rand.tolist(),
        }
        write_text_atomic(directory / "metrics.json", json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_archives(directory, suite: ProblemSuite) -> SetOfParetoSets:
    """Rebuild a set of Pareto sets from ``archive_task*.csv`` files."""
    directory = Path(directory)
    archives = []
    for k, task in enumerate(suite):
        table = Table.read(directory / f"archive_task{k + 1}.csv")
        arch = ParetoArchive(k, capacity=max(len(table), 1))
        d = len(table.columns) - 3
        for row in table.rows:
            x = np.array(row[1 : 1 + d], dtype=np.float64)
            f = np.array(row[1 + d :], dtype=np.float64)
            arch.insert(Individual(encode_native(x, task, suite.d_max), x, f, k))
        archives.append(arch)
    return SetOfParetoSets(archives)


def rmmd_table(M, names) -> Table:
    return Table(["task"] + list(names), [(n, *map(float, row)) for n, row in zip(names, M)])


# ---------------------------------------------------------------------------
# run


def cli_run(cfg: ExperimentConfig, suite_name: str, algo: str, seed: int, out=None) -> RunResult:
    suite = cfg.suite(suite_name)
    if algo not in ALGORITHMS:
        raise ConfigurationError(f"unknown algorithm {algo!r}; valid: {', '.join(ALGORITHMS)}")
    result = run_algorithm(algo, suite, replace(cfg.algorithm, seed=seed), seed)
    directory = Path(out or cfg.out) / suite.name / algo / f"seed_{seed}"
    write_run_dir(directory, result, suite)
    log.info("%s/%s seed %d: %.2fs, %d generations -> %s", suite.name, algo, seed, result.wall_time, result.generations, directory)
    return result


# ---------------------------------------------------------------------------
# batch


@dataclass
class BatchSummary:
    suites: list[str]
    algorithms: list[str]
    chv: dict  # (suite, algo) -> list of per-run CHV (None for failed runs)
    bounds: dict  # suite -> NormalizationBounds
    rmmd: dict = field(default_factory=dict)  # suite -> (directed, symmetric)
    rmmd_runs: dict = field(default_factory=dict)  # suite -> list of symmetric matrices
    failures: list = field(default_factory=list)
    timing: float = 0.0
    task_hv: dict = field(default_factory=dict)

    def values(self, suite, algo):
        return [v for v in self.chv[(suite, algo)] if v is not None]

    def mean(self, suite, algo):
        v = self.values(suite, algo)
        return float(np.mean(v)) if v else float("nan")

    def std(self, suite, algo):
        v = self.values(suite, algo)
        return float(np.std(v, ddof=1)) if len(v) > 1 else 0.0

    def complete(self, suite, algo):
        return all(v is not None for v in self.chv[(suite, algo)])

    def best(self, suite):
        return max(self.algorithms, key=lambda a: self.mean(suite, a))


def _job(args):
    suite_name, overrides, algo, cfg, run_idx, seed = args
    try:
        suite = get_suite(suite_name, overrides)
        return suite_name, algo, run_idx, seed, run_algorithm(algo, suite, replace(cfg, seed=seed), seed), None
    except Exception as exc:  # recorded per run; the batch carries on
        return suite_name, algo, run_idx, seed, None, f"{type(exc).__name__}: {exc}"


def cli_batch(cfg: ExperimentConfig, out=None, write=True) -> BatchSummary:
    cfg.validate()
    out = Path(out or cfg.out)
    t0 = time.perf_counter()
    jobs = [
        (s.upper(), cfg.overrides.get(s.upper()), a, cfg.algorithm, i, cfg.base_seed + i)
        for s in cfg.suites
        for a in cfg.algorithms
        for i in range(cfg.runs)
    ]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_job, jobs, chunksize=1))
    else:
        outcomes = []
        for j in jobs:
            outcomes.append(_job(j))
            log.debug("done %s/%s run %d", j[0], j[2], j[4])

    results = {}
    failures = []
    for suite_name, algo, i, seed, res, err in outcomes:
        results[(suite_name, algo, i)] = res
        if err:
            failures.append((suite_name, algo, i, seed, err))
            log.warning("%s/%s run %d failed: %s", suite_name, algo, i, err)

    suites = [s.upper() for s in cfg.suites]
    summary = BatchSummary(suites, list(cfg.algorithms), {}, {}, failures=failures)
    for s in suites:
        ok = [r for (ss, _, _), r in results.items() if ss == s and r is not None]
        if not ok:
            continue
        summary.bounds[s] = bounds_from_runs(ok, provenance=f"pooled final sets of {len(ok)} runs in batch")
        for a in cfg.algorithms:
            vals, hvs = [], []
            for i in range(cfg.runs):
                r = results[(s, a, i)]
                if r is None:
                    vals.append(None)
                    hvs.append(None)
                    continue
                hv = task_hypervolumes(r.sos, summary.bounds[s])
                hvs.append(hv)
                vals.append(float(sum(hv)))
            summary.chv[(s, a)] = vals
            summary.task_hv[(s, a)] = hvs
        if s in cfg.rmmd_suites and cfg.rmmd_algorithm in cfg.algorithms:
            mats = [
                rmmd_matrix(results[(s, cfg.rmmd_algorithm, i)].sos.unified_sets())
                for i in range(cfg.runs)
                if results[(s, cfg.rmmd_algorithm, i)] is not None
            ]
            if mats:
                summary.rmmd[s] = (np.mean([m[0] for m in mats], axis=0), np.mean([m[1] for m in mats], axis=0))
                summary.rmmd_runs[s] = [m[1] for m in mats]
    for s in suites:
        for a in cfg.algorithms:
            summary.chv.setdefault((s, a), [None] * cfg.runs)
            summary.task_hv.setdefault((s, a), [None] * cfg.runs)
    summary.timing = time.perf_counter() - t0

    if write:
        _write_batch(out, cfg, summary, results)
    log.info("batch of %d runs finished in %.1fs", len(jobs), summary.timing)
    return summary


def _write_batch(out, cfg, summary, results):
    write_text_atomic(out / "batch.ini", dump_config(cfg))
    for (s, a, i), r in sorted(results.items()):
        if r is not None:
            write_run_dir(out / s / a / f"run_{i:03d}", r, cfg.suite(s), extra_metrics=False)

    Table(
        ["suite", "algo", "chv_mean", "chv_std"],
        [(s, a, summary.mean(s, a), summary.std(s, a)) for s in summary.suites for a in summary.algorithms],
    ).write(out / "summary.csv")

    K = max((len(b.ideal) for b in summary.bounds.values()), default=0)
    rows = []
    for s in summary.suites:
        for a in summary.algorithms:
            for i, (v, hv) in enumerate(zip(summary.chv[(s, a)], summary.task_hv[(s, a)])):
                if v is None:
                    rows.append((s, a, i, cfg.base_seed + i, "nan", *(["nan"] * K)))
                else:
                    rows.append((s, a, i, cfg.base_seed + i, v, *hv, *(["nan"] * (K - len(hv)))))
    Table(["suite", "algo", "run", "seed", "chv"] + [f"hv_task{k + 1}" for k in range(K)], rows).write(out / "chv_runs.csv")

    brows = []
    for s, b in summary.bounds.items():
        for k in range(len(b.ideal)):
            brows.append((s, k + 1, *b.ideal[k], *b.nadir[k]))
    Table(["suite", "task", "ideal_f1", "ideal_f2", "nadir_f1", "nadir_f2"], brows).write(out / "bounds.csv")

    for s, (directed, sym) in summary.rmmd.items():
        names = cfg.suite(s).task_names
        rmmd_table(directed, names).write(out / f"rmmd_{s}_directed.csv")
        rmmd_table(sym, names).write(out / f"rmmd_{s}_symmetric.csv")

    if summary.failures:
        Table(["suite", "algo", "run", "seed", "error"], summary.failures).write(out / "failures.csv")

    write_text_atomic(out / "table.txt", format_table(summary))


def format_table(summary: BatchSummary) -> str:
    lines = ["CHV mean +- sample std (* = best in row, ! = incomplete cell)"]
    lines.append("suite  " + "".join(f"{a:>22}" for a in summary.algorithms))
    for s in summary.suites:
        best = summary.best(s)
        cells = []
        for a in summary.algorithms:
            mark = ("*" if a == best else " ") + ("!" if not summary.complete(s, a) else " ")
            cells.append(f"{summary.mean(s, a):.4f}+-{summary.std(s, a):.4f}{mark}".rjust(22))
        lines.append(f"{s:<7}" + "".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# sweep


@dataclass
class SweepSummary:
    values: list[float]
    var_names: list[str]
    means: np.ndarray  # (runs, tasks, vars)
    seeds: list[int]

    def nondecreasing(self) -> np.ndarray:
        """Per run and variable: are task means non-decreasing along the grid?"""
        return np.all(np.diff(self.means, axis=1) >= 0, axis=1)


def cli_sweep(cfg: ExperimentConfig, algo="mo-mfea2", out=None, write=True) -> SweepSummary:
    if not cfg.sweep_values:
        raise ConfigurationError("sweep needs a nonempty parameter grid")
    out = Path(out or cfg.out)
    suite0 = sweep_suite(cfg.sweep_suite, cfg.sweep_param, cfg.sweep_values, cfg.sweep_task)
    means, seeds = [], []
    for i in range(cfg.runs):
        seed = cfg.base_seed + i
        suite = sweep_suite(cfg.sweep_suite, cfg.sweep_param, cfg.sweep_values, cfg.sweep_task)
        r = run_algorithm(algo, suite, replace(cfg.algorithm, seed=seed), seed)
        means.append([arch.native()[:, cfg.sweep_vars].mean(axis=0) for arch in r.sos])
        seeds.append(seed)
        if write:
            write_run_dir(out / suite.name / algo / f"run_{i:03d}", r, suite, extra_metrics=False)
    names = [f"x{v + 1}" for v in cfg.sweep_vars]
    summ = SweepSummary(list(cfg.sweep_values), names, np.array(means), seeds)
    if write:
        base = out / suite0.name
        rows = [
            (i, seeds[i], k + 1, cfg.sweep_values[k], *summ.means[i, k])
            for i in range(len(seeds))
            for k in range(len(cfg.sweep_values))
        ]
        Table(["run", "seed", "task", cfg.sweep_param] + [f"mean_{n}" for n in names], rows).write(base / "trend.csv")
        avg = summ.means.mean(axis=0)
        Table([cfg.sweep_param] + [f"mean_{n}" for n in names], [(v, *avg[k]) for k, v in enumerate(cfg.sweep_values)]).write(
            base / "trend_summary.csv"
        )
        flags = summ.nondecreasing()
        Table(
            ["run", "seed"] + [f"{n}_nondecreasing" for n in names],
            [(i, seeds[i], *map(int, flags[i])) for i in range(len(seeds))],
        ).write(base / "monotone.csv")
    return summ


# ---------------------------------------------------------------------------
# metrics recomputation


POLICIES = ("pooled", "per-algorithm", "per-run")


def cli_metrics(batch_dir, policy="pooled") -> Table:
    """Recompute CHV for stored batch archives under a normalization policy.

    ``pooled`` pools every algorithm and run of a suite (the batch default),
    ``per-algorithm`` pools runs of one algorithm only, ``per-run`` uses
    each run's own final sets.
    """
    if policy not in POLICIES:
        raise ConfigurationError(f"unknown policy {policy!r}; valid: {', '.join(POLICIES)}")
    batch_dir = Path(batch_dir)
    cfg = load_config(batch_dir / "batch.ini")
    rows = []
    for s in cfg.suites:
        suite = cfg.suite(s)
        stored = {}
        for a in cfg.algorithms:
            for i in range(cfg.runs):
                d = batch_dir / suite.name / a / f"run_{i:03d}"
                if (d / "archive_task1.csv").exists():
                    stored[(a, i)] = read_archives(d, suite)
        if not stored:
            continue
        pooled = bounds_from_runs(stored.values(), provenance="pooled")
        for a in cfg.algorithms:
            mine = [sos for (aa, _), sos in stored.items() if aa == a]
            alg_bounds = bounds_from_runs(mine, provenance="per-algorithm") if mine else None
            for i in range(cfg.runs):
                sos = stored.get((a, i))
                if sos is None:
                    continue
                if policy == "pooled":
                    b = pooled
                elif policy == "per-algorithm":
                    b = alg_bounds
                else:
                    b = bounds_from_runs([sos], provenance="per-run")
                hv = task_hypervolumes(sos, b)
                rows.append((suite.name, a, i, cfg.base_seed + i, float(sum(hv)), *hv))
    K = max((len(r) - 5 for r in rows), default=0)
    table = Table(["suite", "algo", "run", "seed", "chv"] + [f"hv_task{k + 1}" for k in range(K)], rows)
    table.write(batch_dir / f"metrics_{policy}.csv")
    return table


# ---------------------------------------------------------------------------
# entry point


def build_parser():
    p = argparse.ArgumentParser(prog="sosmt", description="Sets of Pareto sets via evolutionary multitasking.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, runs=True):
        sp.add_argument("--config", help="INI configuration file")
        sp.add_argument("--seed", type=int, help="seed (run) or base seed (batch, sweep)")
        sp.add_argument("--out", help="output directory")
        if runs:
            sp.add_argument("--runs", type=int)
            sp.add_argument("--workers", type=int)
        sp.add_argument("--evals", type=int, help="evaluation budget per task")
        sp.add_argument("--pop", type=int, help="population size per task")

    sp = sub.add_parser("run", help="one (suite, algorithm, seed) run")
    common(sp, runs=False)
    sp.add_argument("--suite", required=True)
    sp.add_argument("--algo", required=True)

    sp = sub.add_parser("batch", help="runs x algorithms x suites with pooled CHV")
    common(sp)
    sp.add_argument("--suite", help="comma-separated suites (default: all)")
    sp.add_argument("--algo", help="comma-separated algorithms (default: all)")

    sp = sub.add_parser("sweep", help="one task per value of a setting parameter")
    common(sp)
    sp.add_argument("--suite", help="base suite (default EO3)")
    sp.add_argument("--algo", default="mo-mfea2")
    sp.add_argument("--param")
    sp.add_argument("--values", help="comma-separated grid")
    sp.add_argument("--task", help="base task supplying the other parameters (default Task1)")
    sp.add_argument("--vars", help="decision variables to average (default x1,x2)")

    sp = sub.add_parser("metrics", help="recompute CHV of a stored batch")
    sp.add_argument("--dir", required=True, help="batch output directory")
    sp.add_argument("--policy", default="pooled", choices=POLICIES)

    sub.add_parser("list", help="list suites and algorithms")
    return p


def _apply_flags(cfg, args):
    if getattr(args, "seed", None) is not None:
        cfg.base_seed = args.seed
    if getattr(args, "out", None):
        cfg.out = args.out
    if getattr(args, "runs", None) is not None:
        cfg.runs = args.runs
    if getattr(args, "workers", None) is not None:
        cfg.workers = args.workers
    if getattr(args, "evals", None) is not None:
        cfg.algorithm = replace(cfg.algorithm, max_evals_per_task=args.evals)
    if getattr(args, "pop", None) is not None:
        cfg.algorithm = replace(cfg.algorithm, pop_per_task=args.pop)
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(message)s")
    try:
        if args.command == "list":
            print("suites:     " + " ".join(SUITE_NAMES))
            print("algorithms: " + " ".join(ALGORITHMS))
            return 0
        if args.command == "metrics":
            table = cli_metrics(args.dir, args.policy)
            sys.stdout.write(table.to_csv())
            return 0

        cfg = load_config(args.config) if args.config else ExperimentConfig()
        _apply_flags(cfg, args)
        if args.command == "run":
            cfg.algorithm.validate()
            r = cli_run(cfg, args.suite, args.algo, cfg.base_seed)
            print(f"{r.suite} {r.algorithm} seed={r.seed} evals={r.evals_used} archives={[len(a) for a in r.sos]}")
        elif args.command == "batch":
            if args.suite:
                cfg.suites = [s.upper() for s in _split(args.suite)]
            if args.algo:
                cfg.algorithms = _split(args.algo)
            summary = cli_batch(cfg)
            sys.stdout.write(format_table(summary))
            print(f"wall time {summary.timing:.1f}s", file=sys.stderr)
        elif args.command == "sweep":
            if args.suite:
                cfg.sweep_suite = args.suite.upper()
            if args.param:
                cfg.sweep_param = args.param
            if args.values is not None:
                cfg.sweep_values = [float(v) for v in _split(args.values)]
            if args.task:
                cfg.sweep_task = args.task
            if args.vars:
                cfg.sweep_vars = [_var_index(v) for v in _split(args.vars)]
            if args.algo not in ALGORITHMS:
                raise ConfigurationError(f"unknown algorithm {args.algo!r}; valid: {', '.join(ALGORITHMS)}")
            summ = cli_sweep(cfg, args.algo)
            avg = summ.means.mean(axis=0)
            for v, row in zip(summ.values, avg):
                print(f"{cfg.sweep_param}={v:g} " + " ".join(f"mean_{n}={m:.4f}" for n, m in zip(summ.var_names, row)))
            flags = summ.nondecreasing().all(axis=1)
            print(f"non-decreasing in all variables: {int(flags.sum())}/{len(flags)} runs")
    except ConfigurationError as exc:
        parser.error(str(exc))
    except OSError as exc:
        print(f"sosmt: I/O error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
