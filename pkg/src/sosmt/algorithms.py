"""Single-task and multitask multiobjective optimizers.

``nsga2``     independent NSGA-II per task (baseline)
``mo-mfea``   multifactorial EA, implicit transfer through a scalar rmp
``mo-mfea2``  same skeleton with a pairwise rmp matrix re-learned every generation
``emt-et``    per-task NSGA-II populations exchanging elites explicitly

Random-number layout
--------------------
Each run owns independent streams keyed by ``(seed, role, task)``:
``init`` (initial population), ``mate`` (tournaments, crossover and
mutation) and one shared ``transfer`` stream for everything that only
exists because of knowledge transfer. Task ``k`` consumes its ``init`` and
``mate`` streams identically in every algorithm, so MO-MFEA with
``rmp=0`` and EMT-ET with ``transfer_count=0`` reproduce the NSGA-II
baseline bit for bit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import Individual, ParetoArchive, SetOfParetoSets
from .problems import ConfigurationError, ProblemSuite, TaskDefinition, evaluate_batch
from .variation import OperatorConfig, polynomial_mutation, sbx_crossover

ALGORITHMS = ("nsga2", "mo-mfea", "mo-mfea2", "emt-et")

_INIT, _MATE, _TRANSFER = 0, 1, 2


@dataclass
class AlgorithmConfig:
    pop_per_task: int = 50
    max_evals_per_task: int = 10000
    rmp: float = 0.3
    transfer_count: int = 10
    transfer_interval: int = 1
    operators: OperatorConfig = field(default_factory=OperatorConfig)
    seed: int = 0
    archive_capacity: int | None = None
    rmp_grid: int = 101
    log_generations: bool = False

    def validate(self):
        if self.pop_per_task < 2 or self.pop_per_task % 2:
            raise ConfigurationError("pop_per_task must be a positive even number")
        if self.max_evals_per_task < self.pop_per_task:
            raise ConfigurationError(
                f"budget {self.max_evals_per_task} is smaller than the initial population {self.pop_per_task}"
            )
        if not 0.0 <= self.rmp <= 1.0:
            raise ConfigurationError(f"rmp must be in [0, 1], got {self.rmp}")
        if self.transfer_count < 0 or self.transfer_count > self.pop_per_task:
            raise ConfigurationError("transfer_count must be in [0, pop_per_task]")
        if self.transfer_interval < 1:
            raise ConfigurationError("transfer_interval must be >= 1")
        if self.rmp_grid < 2:
            raise ConfigurationError("rmp_grid needs at least two points")
        return self


class TaskStreams:
    """The ``init`` and ``mate`` generators of one task."""

    def __init__(self, seed: int, task_index: int = 0):
        self.init = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_INIT, task_index)))
        self.mate = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_MATE, task_index)))


def transfer_stream(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_TRANSFER,)))


@dataclass
class RunResult:
    algorithm: str
    suite: str
    seed: int
    sos: SetOfParetoSets
    evals_used: list[int]
    generations: int
    wall_time: float
    generation_log: list = field(default_factory=list)
    rmp_history: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# per-task population state


class _TaskState:
    def __init__(self, task: TaskDefinition, index: int, cfg: AlgorithmConfig, streams: TaskStreams, d_max: int):
        self.task = task
        self.index = index
        self.cfg = cfg
        self.streams = streams
        self.used = 0
        U = streams.init.random((cfg.pop_per_task, d_max))
        self.X, self.N, self.F = self._evaluate(U)
        self.rank, self.crowd = rank_and_crowding(self.F)

    @property
    def remaining(self):
        return self.cfg.max_evals_per_task - self.used

    def _evaluate(self, U):
        N, F = evaluate_batch(self.task, U)
        self.used += U.shape[0]
        return U, N, F

    def evaluate_within_budget(self, U):
        U = U[: max(self.remaining, 0)]
        if U.shape[0] == 0:
            return None
        return self._evaluate(U)

    def survive(self, batches):
        """Elitist truncation of parents + evaluated ``batches`` back to pop size."""
        parts = [(self.X, self.N, self.F)] + [b for b in batches if b is not None]
        X = np.concatenate([p[0] for p in parts])
        N = np.concatenate([p[1] for p in parts])
        F = np.concatenate([p[2] for p in parts])
        keep, rank, crowd = environmental_selection(F, self.cfg.pop_per_task)
        self.X, self.N, self.F = X[keep], N[keep], F[keep]
        self.rank, self.crowd = rank, crowd

    def tournament(self, n, rng):
        return binary_tournament(self.rank, self.crowd, n, rng)

    def elites(self, count):
        order = np.lexsort((-self.crowd, self.rank))
        return order[:count]

    def archive(self, capacity):
        arch = ParetoArchive(self.index, capacity)
        for i in np.flatnonzero(self.rank == 0):
            arch.insert(Individual(self.X[i].copy(), self.N[i].copy(), self.F[i].copy(), self.index))
        return arch


def rank_and_crowding(F):
    ranks = kernels.nondominated_ranks(F)
    crowd = np.zeros(F.shape[0])
    for k in range(int(ranks.max()) + 1 if ranks.size else 0):
        idx = np.flatnonzero(ranks == k)
        crowd[idx] = kernels.crowding_distance(F[idx])
    return ranks, crowd


def environmental_selection(F, n_keep):
    """Indices (in pool order) of the ``n_keep`` survivors plus their rank and crowding.

    Whole fronts are taken in order; the first front that does not fit is
    truncated by descending crowding distance, earlier pool position first
    on ties.
    """
    ranks, crowd = rank_and_crowding(F)
    chosen = []
    for k in range(int(ranks.max()) + 1):
        idx = np.flatnonzero(ranks == k)
        room = n_keep - len(chosen)
        if idx.size <= room:
            chosen.extend(idx.tolist())
        else:
            order = np.argsort(-crowd[idx], kind="stable")
            chosen.extend(idx[order[:room]].tolist())
        if len(chosen) >= n_keep:
            break
    keep = np.sort(np.array(chosen, dtype=np.int64))
    return keep, ranks[keep], crowd[keep]


def binary_tournament(rank, crowd, n, rng):
    """``n`` winners of binary tournaments on (rank asc, crowding desc); coin flip on exact ties."""
    size = rank.shape[0]
    a = rng.integers(0, size, n)
    b = rng.integers(0, size, n)
    coin = rng.random(n) < 0.5
    ra, rb, ca, cb = rank[a], rank[b], crowd[a], crowd[b]
    a_wins = (ra < rb) | ((ra == rb) & (ca > cb))
    tie = (ra == rb) & (ca == cb)
    return np.where(tie, np.where(coin, a, b), np.where(a_wins, a, b))


def _interleave(c1, c2):
    out = np.empty((2 * c1.shape[0], c1.shape[1]))
    out[0::2] = c1
    out[1::2] = c2
    return out


def _reproduce(parents1, parents2, ops, rng):
    c1, c2 = sbx_crossover(parents1, parents2, ops, rng)
    return polynomial_mutation(_interleave(c1, c2), ops, rng)


def _nsga2_offspring(state: _TaskState, ops):
    n = state.cfg.pop_per_task
    w = state.tournament(n, state.streams.mate)
    return _reproduce(state.X[w[0::2]], state.X[w[1::2]], ops, state.streams.mate)


def _resolve_seed(cfg, rng):
    if rng is None:
        return cfg.seed
    if isinstance(rng, (int, np.integer)):
        return int(rng)
    raise TypeError("rng must be None or an integer seed")


def _finish(name, suite_name, seed, states, cfg, gens, t0, glog, rmp_hist=()):
    cap = cfg.archive_capacity or cfg.pop_per_task
    sos = SetOfParetoSets([s.archive(cap) for s in states])
    for s in states:
        assert s.used <= cfg.max_evals_per_task, "evaluation budget exceeded"
    return RunResult(
        algorithm=name,
        suite=suite_name,
        seed=seed,
        sos=sos,
        evals_used=[s.used for s in states],
        generations=gens,
        wall_time=time.perf_counter() - t0,
        generation_log=glog,
        rmp_history=list(rmp_hist),
    )


def _snapshot(states):
    return [(s.X.copy(), s.F.copy()) for s in states]


# ---------------------------------------------------------------------------
# NSGA-II


def _nsga2_loop(states, cfg, glog):
    ops = cfg.operators
    gens = 0
    while any(s.remaining > 0 for s in states):
        for s in states:
            if s.remaining <= 0:
                continue
            s.survive([s.evaluate_within_budget(_nsga2_offspring(s, ops))])
        gens += 1
        if cfg.log_generations:
            glog.append(_snapshot(states))
    return gens


def run_nsga2(task: TaskDefinition, cfg: AlgorithmConfig, rng=None, *, task_index=0, d_max=None) -> ParetoArchive:
    """NSGA-II on one task; returns the final first-front archive.

    ``task_index`` and ``d_max`` place the task inside a suite's stream
    layout and unified space.
    """
    cfg.validate()
    seed = _resolve_seed(cfg, rng)
    state = _TaskState(task, task_index, cfg, TaskStreams(seed, task_index), d_max or task.dim)
    _nsga2_loop([state], cfg, [])
    return state.archive(cfg.archive_capacity or cfg.pop_per_task)


def run_nsga2_suite(suite: ProblemSuite, cfg: AlgorithmConfig, rng=None) -> RunResult:
    """Independent NSGA-II runs on every task of a suite, sharing the unified space."""
    cfg.validate()
    seed = _resolve_seed(cfg, rng)
    t0 = time.perf_counter()
    states = [_TaskState(t, k, cfg, TaskStreams(seed, k), suite.d_max) for k, t in enumerate(suite)]
    glog = [_snapshot(states)] if cfg.log_generations else []
    gens = _nsga2_loop(states, cfg, glog)
    return _finish("nsga2", suite.name, seed, states, cfg, gens, t0, glog)


# ---------------------------------------------------------------------------
# MO-MFEA / MO-MFEA-II


def _mfea_generation(states, rmp, cfg, transfer):
    """One round of assortative mating.

    For each pair bred in task ``k``, a partner task ``j != k`` is drawn and
    the pair becomes inter-task with probability ``rmp[k, j]``: the second
    parent is then a tournament winner of task ``j`` and each child takes
    ``k`` or ``j`` as its skill factor with equal probability. Otherwise
    both parents come from ``k`` and children stay on ``k``.
    Returns per-destination lists of child batches in canonical order.
    """
    K = len(states)
    pop = cfg.pop_per_task
    n_pairs = pop // 2
    ops = cfg.operators
    incoming = [[] for _ in range(K)]
    for k, s in enumerate(states):
        w = s.tournament(pop, s.streams.mate)
        p1, p2 = w[0::2], w[1::2]

        raw = transfer.integers(0, K - 1, n_pairs)
        partner = raw + (raw >= k)
        accept = transfer.random(n_pairs) < rmp[k, partner]
        ta = transfer.integers(0, pop, n_pairs)
        tb = transfer.integers(0, pop, n_pairs)
        tcoin = transfer.random(n_pairs) < 0.5
        child_coin = transfer.random((n_pairs, 2)) < 0.5

        P2 = s.X[p2].copy()
        for j in np.unique(partner[accept]):
            sel = np.flatnonzero(accept & (partner == j))
            o = states[j]
            a, b = ta[sel], tb[sel]
            a_wins = (o.rank[a] < o.rank[b]) | ((o.rank[a] == o.rank[b]) & (o.crowd[a] > o.crowd[b]))
            tie = (o.rank[a] == o.rank[b]) & (o.crowd[a] == o.crowd[b])
            win = np.where(tie, np.where(tcoin[sel], a, b), np.where(a_wins, a, b))
            P2[sel] = o.X[win]

        C = _reproduce(s.X[p1], P2, ops, s.streams.mate)
        skill = np.where(accept[:, None], np.where(child_coin, partner[:, None], k), k).reshape(-1)
        for j in range(K):
            mask = skill == j
            if mask.any():
                incoming[j].append(C[mask])
    return incoming


def _mfea_loop(name, suite, cfg, seed, rmp_source):
    t0 = time.perf_counter()
    K = len(suite)
    if K < 2:
        raise ConfigurationError(f"{name} needs at least two tasks")
    states = [_TaskState(t, k, cfg, TaskStreams(seed, k), suite.d_max) for k, t in enumerate(suite)]
    transfer = transfer_stream(seed)
    glog = [_snapshot(states)] if cfg.log_generations else []
    rmp_hist = []
    gens = 0
    while any(s.remaining > 0 for s in states):
        rmp = rmp_source(states)
        rmp_hist.append(rmp)
        incoming = _mfea_generation(states, rmp, cfg, transfer)
        for j, s in enumerate(states):
            if not incoming[j] or s.remaining <= 0:
                continue
            s.survive([s.evaluate_within_budget(np.concatenate(incoming[j]))])
        gens += 1
        if cfg.log_generations:
            glog.append(_snapshot(states))
    return _finish(name, suite.name, seed, states, cfg, gens, t0, glog, rmp_hist)


def run_mo_mfea(suite: ProblemSuite, cfg: AlgorithmConfig, rng=None) -> RunResult:
    cfg.validate()
    K = len(suite)
    fixed = np.full((K, K), cfg.rmp)
    np.fill_diagonal(fixed, 1.0)
    return _mfea_loop("mo-mfea", suite, cfg, _resolve_seed(cfg, rng), lambda states: fixed)


def gaussian_loglik(X, mean, var):
    """Log density of rows of ``X`` under independent per-dimension Gaussians."""
    return -0.5 * (np.log(2 * np.pi * var) + (X - mean) ** 2 / var).sum(axis=1)


def learn_rmp(A, B, grid=101, var_floor=1e-12):
    """Pairwise transfer probability learned from two subpopulations.

    Fits per-dimension Gaussians to ``A`` and ``B``; each task's offspring
    density is modeled as ``(1 - a/2) p_own + (a/2) p_other`` (at ``a = 1``
    a 50/50 mixture), and ``a`` is the grid value maximizing the joint
    log-likelihood of both samples. Ties go to the larger ``a``.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    ma, va = A.mean(axis=0), np.maximum(A.var(axis=0), var_floor)
    mb, vb = B.mean(axis=0), np.maximum(B.var(axis=0), var_floor)
    la_A, lb_A = gaussian_loglik(A, ma, va), gaussian_loglik(A, mb, vb)
    la_B, lb_B = gaussian_loglik(B, ma, va), gaussian_loglik(B, mb, vb)
    a = np.linspace(0.0, 1.0, grid)[:, None]
    with np.errstate(divide="ignore"):
        own, other = np.log1p(-a / 2), np.log(a / 2)
    score = (
        np.logaddexp(own + la_A, other + lb_A).sum(axis=1)
        + np.logaddexp(own + lb_B, other + la_B).sum(axis=1)
    )
    best = score.max()
    tol = 1e-9 * (1.0 + abs(best))
    return float(a[np.flatnonzero(score >= best - tol)[-1], 0])


def learn_rmp_matrix(populations, grid=101):
    K = len(populations)
    R = np.eye(K)
    for j in range(K):
        for k in range(j + 1, K):
            R[j, k] = R[k, j] = learn_rmp(populations[j], populations[k], grid)
    return R


def run_mo_mfea2(suite: ProblemSuite, cfg: AlgorithmConfig, rng=None) -> RunResult:
    cfg.validate()
    return _mfea_loop(
        "mo-mfea2",
        suite,
        cfg,
        _resolve_seed(cfg, rng),
        lambda states: learn_rmp_matrix([s.X for s in states], cfg.rmp_grid),
    )


# ---------------------------------------------------------------------------
# EMT-ET


def run_emt_et(suite: ProblemSuite, cfg: AlgorithmConfig, rng=None) -> RunResult:
    """Per-task NSGA-II with periodic elite migration.

    Every ``transfer_interval`` generations each task sends its
    ``transfer_count`` best members (rank, then crowding) to every other
    task. Migrants are re-evaluated on the receiving task, charged to its
    budget, and compete in its next environmental selection.
    """
    cfg.validate()
    seed = _resolve_seed(cfg, rng)
    t0 = time.perf_counter()
    K = len(suite)
    if K < 2:
        raise ConfigurationError("emt-et needs at least two tasks")
    ops = cfg.operators
    states = [_TaskState(t, k, cfg, TaskStreams(seed, k), suite.d_max) for k, t in enumerate(suite)]
    glog = [_snapshot(states)] if cfg.log_generations else []
    gens = 0
    while any(s.remaining > 0 for s in states):
        gen = gens + 1
        migrate = cfg.transfer_count > 0 and gen % cfg.transfer_interval == 0
        exports = [s.X[s.elites(cfg.transfer_count)].copy() for s in states] if migrate else None
        for t, s in enumerate(states):
            if s.remaining <= 0:
                continue
            batches = [s.evaluate_within_budget(_nsga2_offspring(s, ops))]
            if migrate:
                U = np.concatenate([exports[src] for src in range(K) if src != t])
                batches.append(s.evaluate_within_budget(U))
            s.survive(batches)
        gens = gen
        if cfg.log_generations:
            glog.append(_snapshot(states))
    return _finish("emt-et", suite.name, seed, states, cfg, gens, t0, glog)


RUNNERS = {
    "nsga2": run_nsga2_suite,
    "mo-mfea": run_mo_mfea,
    "mo-mfea2": run_mo_mfea2,
    "emt-et": run_emt_et,
}


def run_algorithm(name: str, suite: ProblemSuite, cfg: AlgorithmConfig, rng=None) -> RunResult:
    try:
        runner = RUNNERS[name]
    except KeyError:
        raise ConfigurationError(f"unknown algorithm {name!r}; valid: {', '.join(ALGORITHMS)}") from None
    return runner(suite, cfg, rng)
