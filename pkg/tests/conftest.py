import numpy as np
import pytest


def brute_force_fronts(F):
    """O(n^2)-per-peel reference partition into nondominated fronts."""
    F = np.asarray(F, dtype=float)
    remaining = list(range(len(F)))
    fronts = []
    while remaining:
        front = []
        for i in remaining:
            dominated = False
            for j in remaining:
                if j != i and all(F[j] <= F[i]) and any(F[j] < F[i]):
                    dominated = True
                    break
            if not dominated:
                front.append(i)
        fronts.append(sorted(front))
        remaining = [i for i in remaining if i not in front]
    return fronts


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def dominance_matrix_fronts(F):
    """Same partition as ``brute_force_fronts``, from a dense dominance matrix."""
    F = np.asarray(F, dtype=float)
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    alive = np.ones(len(F), dtype=bool)
    fronts = []
    while alive.any():
        dominated = (dom & alive[:, None]).any(axis=0)
        front = np.flatnonzero(alive & ~dominated)
        fronts.append(front.tolist())
        alive[front] = False
    return fronts


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
