"""Pareto machinery shared by every optimizer.

All objectives are minimized. Functions that take a population accept
either an ``(n, m)`` array of objective vectors or a sequence of
:class:`Individual`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels


class UsageError(ValueError):
    """Raised when an operation is called with inconsistent arguments."""


@dataclass
class Individual:
    """One evaluated solution.

    ``unified`` lives in ``[0, 1]^d_max``; ``native`` is its image in the
    task's own box. ``skill_factor`` is the 0-based index of the task the
    objectives were computed on. ``rank``/``crowding`` are ``None`` until a
    sort assigns them.
    """

    unified: np.ndarray
    native: np.ndarray
    objectives: np.ndarray
    skill_factor: int
    rank: int | None = None
    crowding: float | None = None

    def invalidate(self):
        self.rank = None
        self.crowding = None


def objective_matrix(pop) -> np.ndarray:
    """Stack a population into an ``(n, m)`` float array."""
    if isinstance(pop, np.ndarray):
        F = pop
    else:
        pop = list(pop)
        if not pop:
            return np.empty((0, 0))
        if isinstance(pop[0], Individual):
            F = np.array([ind.objectives for ind in pop], dtype=np.float64)
        else:
            F = np.asarray(pop, dtype=np.float64)
    F = np.asarray(F, dtype=np.float64)
    if F.ndim == 1:
        F = F.reshape(1, -1) if F.size else F.reshape(0, 0)
    return F


def dominates(a, b) -> bool:
    """True iff ``a`` Pareto-dominates ``b``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise UsageError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def nondominated_sort(pop) -> list[list[int]]:
    """Partition ``pop`` into fronts of indices, best front first."""
    F = objective_matrix(pop)
    if F.shape[0] == 0:
        return []
    if not isinstance(pop, np.ndarray):
        pop = list(pop)
        if pop and isinstance(pop[0], Individual):
            tasks = {ind.skill_factor for ind in pop}
            if len(tasks) > 1:
                raise UsageError(f"nondominated_sort is per task, got skill factors {sorted(tasks)}")
    ranks = kernels.nondominated_ranks(F)
    return [np.flatnonzero(ranks == k).tolist() for k in range(int(ranks.max()) + 1)]


def crowding_distance(front) -> np.ndarray:
    """Crowding distance of each member of a mutually nondominated front.

    Boundary members of each objective get ``inf``; fronts of two or fewer
    members are all ``inf``. Members whose objective vector is shared with
    another member get 0, so duplicates are the first to go under capacity
    pressure.
    """
    F = objective_matrix(front)
    if F.shape[0] == 0:
        return np.zeros(0)
    return kernels.crowding_distance(F)


def assign_rank_and_crowding(pop: list[Individual]) -> None:
    """Set ``rank`` and ``crowding`` on every individual in place."""
    for k, front in enumerate(nondominated_sort(pop)):
        cd = crowding_distance([pop[i] for i in front])
        for i, c in zip(front, cd):
            pop[i].rank = k
            pop[i].crowding = float(c)


class ParetoArchive:
    """Bounded nondominated archive for one task."""

    def __init__(self, skill_factor: int, capacity: int = 50):
        if capacity < 1:
            raise UsageError("archive capacity must be positive")
        self.skill_factor = skill_factor
        self.capacity = capacity
        self.members: list[Individual] = []
        self._stamps: list[int] = []
        self._clock = 0

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def objectives(self) -> np.ndarray:
        if not self.members:
            return np.empty((0, 2))
        return objective_matrix(self.members)

    def unified(self) -> np.ndarray:
        return np.array([ind.unified for ind in self.members])

    def native(self) -> np.ndarray:
        return np.array([ind.native for ind in self.members])

    def insert(self, cand: Individual) -> bool:
        """Offer ``cand``; returns True if it was kept."""
        if cand.skill_factor != self.skill_factor:
            raise UsageError(
                f"candidate evaluated on task {cand.skill_factor}, archive holds task {self.skill_factor}"
            )
        f = np.asarray(cand.objectives, dtype=np.float64)
        keep_m, keep_s = [], []
        for ind, stamp in zip(self.members, self._stamps):
            if dominates(ind.objectives, f):
                return False
            if not dominates(f, ind.objectives):
                keep_m.append(ind)
                keep_s.append(stamp)
        keep_m.append(cand)
        keep_s.append(self._clock)
        self._clock += 1
        self.members, self._stamps = keep_m, keep_s
        while len(self.members) > self.capacity:
            self._evict_one()
        kept = any(ind is cand for ind in self.members)
        self._refresh_crowding()
        return kept

    def _evict_one(self):
        cd = crowding_distance(self.members)
        # smallest crowding first, earliest insertion breaks ties
        victim = min(range(len(cd)), key=lambda i: (cd[i], self._stamps[i]))
        del self.members[victim]
        del self._stamps[victim]

    def _refresh_crowding(self):
        cd = crowding_distance(self.members)
        for ind, c in zip(self.members, cd):
            ind.rank = 0
            ind.crowding = float(c)


def archive_insert(archive: ParetoArchive, cand: Individual) -> ParetoArchive:
    archive.insert(cand)
    return archive


@dataclass
class SetOfParetoSets:
    """One nondominated archive per task, indexed by task."""

    archives: list[ParetoArchive] = field(default_factory=list)

    def __len__(self):
        return len(self.archives)

    def __getitem__(self, k) -> ParetoArchive:
        return self.archives[k]

    def __iter__(self):
        return iter(self.archives)

    def objective_sets(self) -> list[np.ndarray]:
        return [a.objectives() for a in self.archives]

    def unified_sets(self) -> list[np.ndarray]:
        return [a.unified() for a in self.archives]
