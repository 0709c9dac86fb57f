"""Task families, parameter tables and the unified search space.

Families:

* ``EO1`` four-bar truss (volume vs. joint displacement), 4 variables
* ``EO2`` hatch cover (weight vs. constraint violation), 2 variables
* ``EO3`` welded beam (cost vs. end deflection, penalized), 4 variables
* ``IM``  continuous-review (Q, u) inventory (annual cost vs. stockouts), 2 variables
* ``EXTERNAL`` user-supplied black box

Evaluators take native decision vectors and broadcast over leading axes:
an ``(n, d)`` input yields ``(n, 2)`` objectives.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy.special import erfcx, ndtr

SQRT2 = math.sqrt(2.0)

# welded beam constants
EO3_G = 12e6
EO3_TAU_MAX = 13600.0
EO3_SIGMA_MAX = 30000.0
EO3_PENALTY = 1000.0

# hatch cover constants
EO2_TAU_MAX = 450.0


class DomainError(ValueError):
    """Decision vector outside the region where an evaluator is defined."""


class ConfigurationError(ValueError):
    """Invalid task setting, suite name or override."""


REQUIRED_PARAMS = {
    "EO1": ("F", "sigma", "L", "E"),
    "EO2": ("E", "sigma_b_max", "delta_max"),
    "EO3": ("P", "L", "E"),
    "IM": ("D", "sigma_L", "r", "K", "c"),
    "EXTERNAL": (),
}

FAMILY_DIM = {"EO1": 4, "EO2": 2, "EO3": 4, "IM": 2}


@dataclass(frozen=True)
class TaskSetting:
    name: str
    params: Mapping[str, float]

    def __getitem__(self, key):
        return self.params[key]

    def with_params(self, name=None, **changes) -> "TaskSetting":
        params = dict(self.params)
        params.update({k: float(v) for k, v in changes.items()})
        return TaskSetting(name or self.name, params)


# ---------------------------------------------------------------------------
# objective functions


def eval_eo1(x, s: TaskSetting) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if np.any(x <= 0):
        raise DomainError("EO1 bar areas must be positive")
    x1, x2, x3, x4 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    F, L, E = s["F"], s["L"], s["E"]
    f1 = L * (2 * x1 + SQRT2 * x2 + np.sqrt(x3) + x4)
    f2 = (F * L / E) * (2 / x1 + 2 * SQRT2 / x2 - 2 * SQRT2 / x3 + 2 / x4)
    return np.stack([f1, f2], axis=-1)


def eo2_constraints(x, s: TaskSetting) -> np.ndarray:
    """Normalized hatch-cover constraints g1..g4 (feasible when all >= 0)."""
    x = np.asarray(x, dtype=np.float64)
    x1, x2 = x[..., 0], x[..., 1]
    E = s["E"]
    sigma_k = E * x1**2 / 100.0
    sigma_b = 4500.0 / (x1 * x2)
    tau = 1800.0 / x2
    delta = 56.2e4 / (E * x1 * x2**2)
    return np.stack(
        [
            1 - sigma_b / s["sigma_b_max"],
            1 - tau / EO2_TAU_MAX,
            1 - delta / s["delta_max"],
            1 - sigma_b / sigma_k,
        ],
        axis=-1,
    )


def eval_eo2(x, s: TaskSetting) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    lo, hi = _fixed_bounds("EO2")
    if np.any(x < lo) or np.any(x > hi):
        raise DomainError("EO2 variables outside [0.5, 4] x [4, 50]")
    g = eo2_constraints(x, s)
    f1 = x[..., 0] + 120.0 * x[..., 1]
    f2 = np.maximum(-g, 0.0).sum(axis=-1)
    return np.stack([f1, f2], axis=-1)


def eo3_constraints(x, s: TaskSetting) -> np.ndarray:
    """Welded-beam constraints g1..g4 (feasible when all >= 0)."""
    x = np.asarray(x, dtype=np.float64)
    x1, x2, x3, x4 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    P, L, E = s["P"], s["L"], s["E"]
    tau_p = P / (SQRT2 * x1 * x2)
    M = P * (L + x2 / 2)
    R = np.sqrt(x2**2 / 4 + ((x1 + x3) / 2) ** 2)
    J = 2 * (SQRT2 * x1 * x2 * (x2**2 / 12 + ((x1 + x3) / 2) ** 2))
    tau_pp = M * R / J
    tau = np.sqrt(tau_p**2 + 2 * tau_p * tau_pp * x2 / (2 * R) + tau_pp**2)
    sigma = 6 * P * L / (x4 * x3**2)
    p_c = (4.013 * E * np.sqrt(x3**2 * x4**6 / 36) / L**2) * (
        1 - x3 / (2 * L) * math.sqrt(E / (4 * EO3_G))
    )
    return np.stack(
        [EO3_TAU_MAX - tau, EO3_SIGMA_MAX - sigma, x4 - x1, p_c - P],
        axis=-1,
    )


def eval_eo3(x, s: TaskSetting) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if np.any(x == 0):
        raise DomainError("EO3 variables must be nonzero")
    x1, x2, x3, x4 = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    penalty = EO3_PENALTY * np.maximum(-eo3_constraints(x, s), 0.0).sum(axis=-1)
    # the 14 is a literal in the cost term, independent of L
    f1 = 1.10471 * x1**2 * x2 + 0.04811 * x3 * x4 * (14.0 + x2) + penalty
    f2 = 4 * s["P"] * s["L"] ** 3 / (s["E"] * x4 * x3**3) + penalty
    return np.stack([f1, f2], axis=-1)


def normal_pdf(u):
    return np.exp(-0.5 * np.square(u)) / math.sqrt(2 * math.pi)


def normal_cdf(u):
    """Standard normal CDF, ``0.5 * erfc(-u / sqrt(2))``."""
    return ndtr(u)


def eval_im(qu, s: TaskSetting) -> np.ndarray:
    qu = np.asarray(qu, dtype=np.float64)
    Q, u = qu[..., 0], qu[..., 1]
    if np.any(Q <= 0):
        raise DomainError("order quantity Q must be positive")
    lo, hi = _im_bounds(s)
    slack = 1e-9 * np.maximum(np.abs(hi), 1.0)
    if np.any(qu < lo - slack) or np.any(qu > hi + slack):
        raise DomainError("(Q, u) outside the inventory box")
    D, sL, r, K, c = s["D"], s["sigma_L"], s["r"], s["K"], s["c"]
    f1 = K * D / Q + (Q / 2 + u * sL) * r * c
    # factor out phi(u): with the Mills ratio m = (1 - Phi(u)) / phi(u) the
    # stockout terms are phi(u) * (m + sL * (1 - u * m)), which stays monotone
    # in u all the way into the subnormal range
    mills = math.sqrt(math.pi / 2) * erfcx(u / SQRT2)
    f2 = (D / Q) * normal_pdf(u) * (mills + sL * (1.0 - u * mills))
    return np.stack([f1, f2], axis=-1)


# ---------------------------------------------------------------------------
# bounds


def _fixed_bounds(family):
    if family == "EO2":
        return np.array([0.5, 4.0]), np.array([4.0, 50.0])
    if family == "EO3":
        return np.array([0.125, 0.1, 0.1, 0.125]), np.array([5.0, 10.0, 10.0, 5.0])
    raise ConfigurationError(family)


def _eo1_bounds(s):
    a = s["F"] / s["sigma"]
    return (
        np.array([a, SQRT2 * a, SQRT2 * a, a]),
        np.array([3 * a, 3 * a, 3 * a, 3 * a]),
    )


def _im_bounds(s):
    D, sL, r, K, c = s["D"], s["sigma_L"], s["r"], s["K"], s["c"]
    return (
        np.array([math.sqrt(2 * K * D / (r * c)), 1.0]),
        np.array([D, D / sL]),
    )


_EVALUATORS = {"EO1": eval_eo1, "EO2": eval_eo2, "EO3": eval_eo3, "IM": eval_im}


def bounds_for(task: "TaskDefinition"):
    """Native ``(lower, upper)`` box of a task."""
    return task.lower.copy(), task.upper.copy()


def _derive_bounds(family, setting):
    if family == "EO1":
        lo, hi = _eo1_bounds(setting)
    elif family == "IM":
        lo, hi = _im_bounds(setting)
    else:
        lo, hi = _fixed_bounds(family)
    if np.any(hi - lo <= 0):
        raise ConfigurationError(f"{family}/{setting.name}: empty box lower={lo} upper={hi}")
    return lo, hi


# ---------------------------------------------------------------------------
# tasks and suites


@dataclass(eq=False)
class TaskDefinition:
    """One bi-objective task: an evaluator bound to a setting and a box.

    Holds a thread-safe evaluation counter; build a fresh suite per run.
    """

    family: str
    setting: TaskSetting
    lower: np.ndarray
    upper: np.ndarray
    m: int = 2
    function: Callable | None = None
    vectorized: bool = True
    evaluations: int = 0
    clamped: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    @property
    def name(self) -> str:
        return self.setting.name

    def _count(self, n, clamped=0):
        with self._lock:
            self.evaluations += n
            self.clamped += clamped

    def objective(self, native) -> np.ndarray:
        """Raw evaluation on native coordinates; does not touch the counter."""
        if self.function is not None:
            if self.vectorized:
                return np.asarray(self.function(native), dtype=np.float64)
            native = np.asarray(native, dtype=np.float64)
            if native.ndim == 1:
                return np.asarray(self.function(native), dtype=np.float64)
            return np.array([self.function(row) for row in native], dtype=np.float64).reshape(-1, self.m)
        return _EVALUATORS[self.family](native, self.setting)


def make_task(family: str, setting: TaskSetting) -> TaskDefinition:
    if family not in _EVALUATORS:
        raise ConfigurationError(f"unknown family {family!r}")
    missing = [p for p in REQUIRED_PARAMS[family] if p not in setting.params]
    if missing:
        raise ConfigurationError(f"{family}/{setting.name} missing parameters {missing}")
    bad = [p for p in REQUIRED_PARAMS[family] if not setting.params[p] > 0]
    if bad:
        raise ConfigurationError(f"{family}/{setting.name} parameters must be positive: {bad}")
    lo, hi = _derive_bounds(family, setting)
    return TaskDefinition(family, setting, lo, hi)


def external_task(name, lower, upper, function, m=2, vectorized=False) -> TaskDefinition:
    """Wrap a black-box callable as a task.

    ``function`` maps a native decision vector to ``m`` objectives, all to be
    minimized (negate anything that should be maximized). With
    ``vectorized=True`` it must also accept an ``(n, d)`` batch.
    """
    lo = np.asarray(lower, dtype=np.float64)
    hi = np.asarray(upper, dtype=np.float64)
    if lo.shape != hi.shape or lo.ndim != 1:
        raise ConfigurationError("bounds must be 1-D sequences of equal length")
    if np.any(hi - lo <= 0):
        raise ConfigurationError(f"{name}: empty box")
    return TaskDefinition("EXTERNAL", TaskSetting(name, {}), lo, hi, m=m, function=function, vectorized=vectorized)


def sphere_pair_task(name="sphere-pair", dim=2, lower=0.0, upper=2.0, shift=1.0) -> TaskDefinition:
    """Synthetic stand-in for an external problem: ``(sum x^2, sum (x - shift)^2)``."""

    def f(x):
        x = np.asarray(x, dtype=np.float64)
        return np.stack([(x**2).sum(axis=-1), ((x - shift) ** 2).sum(axis=-1)], axis=-1)

    return external_task(name, [lower] * dim, [upper] * dim, f, vectorized=True)


@dataclass
class ProblemSuite:
    name: str
    tasks: list[TaskDefinition]

    def __len__(self):
        return len(self.tasks)

    def __getitem__(self, k):
        return self.tasks[k]

    def __iter__(self):
        return iter(self.tasks)

    @property
    def d_max(self) -> int:
        return max(t.dim for t in self.tasks)

    @property
    def task_names(self) -> list[str]:
        return [t.name for t in self.tasks]


def _settings(names, rows, symbols):
    return [TaskSetting(n, dict(zip(symbols, map(float, row)))) for n, row in zip(names, rows)]


_TASKS = ("Task1", "Task2", "Task3")
_IM_SYMBOLS = ("D", "sigma_L", "r", "K", "c")

SUITE_TABLE = {
    "EO1": ("EO1", _settings(_TASKS, [(10, 10, 200, 2e5), (8, 10, 200, 1.5e5), (8, 8, 200, 1.5e5)], ("F", "sigma", "L", "E"))),
    "EO2": ("EO2", _settings(_TASKS, [(7e5, 700, 1.5), (5e5, 700, 2), (5e5, 500, 2)], ("E", "sigma_b_max", "delta_max"))),
    "EO3": ("EO3", _settings(_TASKS, [(6000, 14, 3e7), (4000, 14, 2e7), (4000, 10, 2e7)], ("P", "L", "E"))),
    "IM1": ("IM", _settings(_TASKS, [(3412, 53.354, 0.26, 80, 27.5), (490, 5.027, 0.3, 80, 241), (4736, 57.911, 0.3, 135, 29.41)], _IM_SYMBOLS)),
    "IM2": ("IM", _settings(_TASKS, [(4736, 57.911, 0.3, 135, 29.41), (200, 2.969, 0.26, 80, 233), (215, 2.781, 0.3, 80, 435)], _IM_SYMBOLS)),
    "IM3": ("IM", _settings(_TASKS, [(215, 2.781, 0.3, 80, 435), (22774, 245.333, 0.26, 135, 12.6), (10557, 85.395, 0.26, 135, 2.14)], _IM_SYMBOLS)),
}

SUITE_NAMES = tuple(SUITE_TABLE)


def _task_index(key, n):
    if isinstance(key, int):
        idx = key
    elif isinstance(key, str) and key.lower().startswith("task") and key[4:].isdigit():
        idx = int(key[4:]) - 1
    elif isinstance(key, str) and key.isdigit():
        idx = int(key) - 1
    else:
        raise ConfigurationError(f"cannot interpret task key {key!r}")
    if not 0 <= idx < n:
        raise ConfigurationError(f"task index {key!r} out of range for {n} tasks")
    return idx


def get_suite(name: str, overrides: Mapping | None = None) -> ProblemSuite:
    """Build a fresh suite by canonical name.

    ``overrides`` maps a task (0-based int, or ``"Task1"``-style name) to
    parameter replacements, e.g. ``{"Task1": {"P": 7000}}``.
    """
    key = name.upper()
    if key not in SUITE_TABLE:
        raise ConfigurationError(f"unknown suite {name!r}; valid: {', '.join(SUITE_NAMES)}")
    family, settings = SUITE_TABLE[key]
    settings = list(settings)
    for task_key, changes in (overrides or {}).items():
        i = _task_index(task_key, len(settings))
        unknown = set(changes) - set(REQUIRED_PARAMS[family])
        if unknown:
            raise ConfigurationError(f"{key}: unknown parameters {sorted(unknown)}")
        settings[i] = settings[i].with_params(**changes)
    return ProblemSuite(key, [make_task(family, s) for s in settings])


def sweep_suite(base: str, param: str, values, task=0) -> ProblemSuite:
    """One task per grid value of ``param``, all other parameters from ``task`` of ``base``."""
    values = list(values)
    if not values:
        raise ConfigurationError("empty parameter grid")
    key = base.upper()
    family, settings = SUITE_TABLE[key]
    root = settings[_task_index(task, len(settings))]
    if param not in REQUIRED_PARAMS[family]:
        raise ConfigurationError(f"{key} has no parameter {param!r}")
    tasks = [
        make_task(family, root.with_params(name=f"{param}={v:g}", **{param: v}))
        for v in map(float, values)
    ]
    return ProblemSuite(f"{key}-{param}-sweep", tasks)


# ---------------------------------------------------------------------------
# unified space


def decode_unified(u, task: TaskDefinition) -> np.ndarray:
    """Map unified coordinates onto the task box using the first ``task.dim`` entries."""
    u = np.asarray(u, dtype=np.float64)[..., : task.dim]
    lo_bad = u < 0.0
    hi_bad = u > 1.0
    if lo_bad.any() or hi_bad.any():
        worst = max(float(-u.min()), float(u.max() - 1.0))
        if worst > 1e-12:
            raise DomainError(f"unified coordinate outside [0, 1] by {worst:.3g}")
        task._count(0, clamped=int(lo_bad.sum() + hi_bad.sum()))
        u = np.clip(u, 0.0, 1.0)
    x = task.lower + u * (task.upper - task.lower)
    return np.clip(x, task.lower, task.upper)


def encode_native(x, task: TaskDefinition, d_max: int | None = None) -> np.ndarray:
    """Inverse of :func:`decode_unified`; trailing coordinates padded with 0.5."""
    x = np.asarray(x, dtype=np.float64)
    u = (x - task.lower) / (task.upper - task.lower)
    d_max = d_max or task.dim
    if d_max > task.dim:
        pad = np.full(u.shape[:-1] + (d_max - task.dim,), 0.5)
        u = np.concatenate([u, pad], axis=-1)
    return u


def evaluate(task: TaskDefinition, u) -> np.ndarray:
    """Decode one unified vector, evaluate it, and count one evaluation."""
    f = task.objective(decode_unified(u, task))
    task._count(1)
    return f


def evaluate_batch(task: TaskDefinition, U) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate rows of ``U``; returns ``(native, objectives)`` and counts ``len(U)``."""
    U = np.atleast_2d(np.asarray(U, dtype=np.float64))
    X = decode_unified(U, task)
    F = task.objective(X).reshape(U.shape[0], task.m)
    task._count(U.shape[0])
    return X, F
