"""Hypervolume, cumulative hypervolume and set-to-set distances."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import SetOfParetoSets

SPAN_FLOOR = 1e-12


@dataclass
class NormalizationBounds:
    """Per-task ideal (componentwise min) and nadir (componentwise max)."""

    ideal: np.ndarray  # (K, m)
    nadir: np.ndarray  # (K, m)
    provenance: str = ""

    def normalize(self, k: int, F) -> np.ndarray:
        F = np.asarray(F, dtype=np.float64).reshape(-1, self.ideal.shape[1])
        Z = (F - self.ideal[k]) / (self.nadir[k] - self.ideal[k])
        return np.clip(Z, 0.0, 1.0)


@dataclass
class MetricReport:
    hv: list[float]
    chv: float
    bounds: NormalizationBounds
    reference: tuple = (1.0, 1.0)
    rmmd: np.ndarray | None = None
    rmmd_symmetric: np.ndarray | None = None
    d_rand: np.ndarray | None = None
    task_names: list[str] = field(default_factory=list)


def _objective_sets(sos):
    if isinstance(sos, SetOfParetoSets):
        return sos.objective_sets()
    return [np.asarray(F, dtype=np.float64).reshape(-1, 2) for F in sos]


def compute_bounds(sets, provenance="pooled") -> NormalizationBounds:
    """Bounds per task over the union of every supplied set.

    ``sets[k]`` is an iterable of ``(n, m)`` objective arrays for task ``k``
    (one per algorithm/run being compared).
    """
    ideal, nadir = [], []
    for k, group in enumerate(sets):
        arrays = [np.asarray(F, dtype=np.float64) for F in group]
        arrays = [F.reshape(-1, F.shape[-1]) for F in arrays if F.size]
        if not arrays:
            raise ValueError(f"task {k} has no solutions to derive bounds from")
        pool = np.concatenate(arrays)
        lo, hi = pool.min(axis=0), pool.max(axis=0)
        hi = np.where(hi - lo < SPAN_FLOOR, lo + SPAN_FLOOR, hi)
        ideal.append(lo)
        nadir.append(hi)
    return NormalizationBounds(np.array(ideal), np.array(nadir), provenance)


def bounds_from_runs(results, provenance="pooled") -> NormalizationBounds:
    """Pool the final sets of several runs (any algorithms) on one suite."""
    results = list(results)
    K = len(_objective_sets(results[0].sos if hasattr(results[0], "sos") else results[0]))
    sets = [[] for _ in range(K)]
    for r in results:
        for k, F in enumerate(_objective_sets(r.sos if hasattr(r, "sos") else r)):
            sets[k].append(F)
    return compute_bounds(sets, provenance)


def hv2d(front, ref=(1.0, 1.0)) -> float:
    """Area dominated by ``front`` and bounded by ``ref`` (minimization).

    Points with a coordinate at or beyond the reference contribute nothing.
    """
    P = np.asarray(front, dtype=np.float64).reshape(-1, 2)
    if P.shape[0] == 0:
        return 0.0
    return kernels.hv2d(P, ref)


def task_hypervolumes(sos, bounds: NormalizationBounds) -> list[float]:
    return [hv2d(bounds.normalize(k, F)) for k, F in enumerate(_objective_sets(sos))]


def chv(sos, bounds: NormalizationBounds) -> float:
    """Cumulative hypervolume: sum of per-task normalized hypervolumes, reference (1, 1)."""
    return float(sum(task_hypervolumes(sos, bounds)))


def rmmd(ps_a, ps_b, d_rand: float) -> float:
    """Mean distance from each member of ``ps_b`` to its nearest member of ``ps_a``, over ``d_rand``."""
    A = np.atleast_2d(np.asarray(ps_a, dtype=np.float64))
    B = np.atleast_2d(np.asarray(ps_b, dtype=np.float64))
    if A.size == 0 or B.size == 0:
        raise ValueError("rmmd needs two nonempty sets")
    if not d_rand > 0:
        raise ValueError(f"d_rand must be positive, got {d_rand}")
    return kernels.mean_min_distance(A, B) / d_rand


def estimate_d_rand(n_a: int, n_b: int, dim: int, rng=None, repetitions: int = 100) -> float:
    """Expected mean-minimum distance between two uniform samples in ``[0, 1]^dim``."""
    if n_a < 1 or n_b < 1:
        raise ValueError("sample sizes must be >= 1")
    rng = np.random.default_rng(rng)
    total = 0.0
    for _ in range(repetitions):
        A = rng.random((n_a, dim))
        B = rng.random((n_b, dim))
        total += kernels.mean_min_distance(A, B)
    return total / repetitions


D_RAND_SEED = 20240601


def rmmd_matrix(sets, dim: int | None = None, repetitions: int = 100, seed: int = D_RAND_SEED):
    """Directed and symmetrized RMMD matrices plus the ``d_rand`` used per pair.

    ``directed[i, j]`` measures set ``j`` against set ``i`` (nearest members
    taken from ``i``). ``d_rand`` for each pair is estimated with sample
    sizes matched to the two sets, each pair from its own fixed seed.
    """
    sets = [np.atleast_2d(np.asarray(S, dtype=np.float64)) for S in sets]
    K = len(sets)
    dim = dim or sets[0].shape[1]
    directed = np.zeros((K, K))
    d_rand = np.zeros((K, K))
    for i in range(K):
        for j in range(K):
            if i == j:
                continue
            d_rand[i, j] = estimate_d_rand(
                len(sets[i]), len(sets[j]), dim, np.random.SeedSequence(seed, spawn_key=(i, j)), repetitions
            )
            directed[i, j] = rmmd(sets[i], sets[j], d_rand[i, j])
    return directed, 0.5 * (directed + directed.T), d_rand


def metric_report(sos: SetOfParetoSets, bounds: NormalizationBounds, with_rmmd=False, task_names=None) -> MetricReport:
    hv = task_hypervolumes(sos, bounds)
    rep = MetricReport(hv=hv, chv=float(sum(hv)), bounds=bounds, task_names=list(task_names or []))
    if with_rmmd:
        rep.rmmd, rep.rmmd_symmetric, rep.d_rand = rmmd_matrix(sos.unified_sets())
    return rep
