"""Decision- and objective-space views of a set of Pareto sets.

The toolkit only produces data; plotting is left to whatever consumes the
CSV files.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .core import SetOfParetoSets


@dataclass
class Projection2D:
    mean: np.ndarray
    axes: np.ndarray  # (2, d), orthonormal rows
    explained: np.ndarray  # variance fractions of the two axes
    coords: np.ndarray  # (n, 2)
    labels: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))

    def transform(self, X):
        return (np.asarray(X, dtype=np.float64) - self.mean) @ self.axes.T

    def reconstruct(self, coords=None):
        coords = self.coords if coords is None else coords
        return self.mean + coords @ self.axes


def pca_project(points, labels=None) -> Projection2D:
    """Project onto the two leading principal axes of the pooled points.

    Each axis is oriented so that its largest-magnitude component is positive.
    """
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 3 or X.shape[1] < 2:
        raise ValueError(f"PCA needs at least 3 points in >= 2 dimensions, got shape {X.shape}")
    mean = X.mean(axis=0)
    Z = X - mean
    cov = Z.T @ Z / (X.shape[0] - 1)
    evals, evecs = np.linalg.eigh(cov)
    total = evals.sum()
    if not total > 0:
        raise ValueError("all points coincide; covariance is zero and no projection exists")
    order = np.argsort(evals)[::-1][:2]
    axes = evecs[:, order].T.copy()
    for i in range(2):
        j = np.argmax(np.abs(axes[i]))
        if axes[i, j] < 0:
            axes[i] = -axes[i]
    explained = np.clip(evals[order] / total, 0.0, 1.0)
    lab = np.zeros(X.shape[0], dtype=int) if labels is None else np.asarray(labels)
    return Projection2D(mean, axes, explained, Z @ axes.T, lab)


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple]

    def __len__(self):
        return len(self.rows)

    def column(self, name):
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([fmt(v) for v in row])
        return buf.getvalue()

    def write(self, path):
        write_text_atomic(path, self.to_csv())

    @classmethod
    def read(cls, path) -> "Table":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            columns = next(reader)
            rows = [tuple(_parse(v) for v in row) for row in reader]
        return cls(columns, rows)


def fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def _parse(v):
    for conv in (int, float):
        try:
            return conv(v)
        except ValueError:
            pass
    return v


def write_text_atomic(path, text):
    path = os.fspath(path)
    d = os.path.dirname(path) or "."
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def export_decision_view(sos: SetOfParetoSets, suite) -> Table:
    """Rows ``(task, c1, c2)`` with 1-based task ids.

    Two-variable suites keep raw unified coordinates; larger ones are
    projected with one PCA fitted on all tasks together.
    """
    sets = sos.unified_sets()
    if any(len(S) == 0 for S in sets):
        raise ValueError("every archive must be nonempty")
    labels = np.concatenate([np.full(len(S), k + 1) for k, S in enumerate(sets)])
    X = np.concatenate(sets)
    if suite.d_max <= 2:
        coords = X[:, :2]
    else:
        coords = pca_project(X, labels).coords
    return Table(["task", "c1", "c2"], [(int(t), float(a), float(b)) for t, (a, b) in zip(labels, coords)])


def export_objective_view(sos: SetOfParetoSets) -> Table:
    """Rows ``(task, f1, f2)``, raw objectives, each task sorted by f1 ascending."""
    rows = []
    for k, arch in enumerate(sos):
        F = arch.objectives()
        if F.shape[0] == 0:
            raise ValueError("every archive must be nonempty")
        for i in np.lexsort((F[:, 1], F[:, 0])):
            rows.append((k + 1, float(F[i, 0]), float(F[i, 1])))
    return Table(["task", "f1", "f2"], rows)
