"""Real-coded variation in the unified space ``[0, 1]^d``.

Both operators work on batches: rows are individuals. Random numbers are
drawn for every row and variable whether or not they end up being used,
so the consumption of an rng stream depends only on array shapes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OperatorConfig:
    eta_c: float = 20.0
    eta_m: float = 20.0
    p_c: float = 1.0
    p_m: float | None = None  # None -> 1 / d

    def __post_init__(self):
        if self.eta_c <= 0 or self.eta_m <= 0:
            raise ValueError("distribution indices must be positive")
        if not 0.0 <= self.p_c <= 1.0:
            raise ValueError("p_c must be in [0, 1]")
        if self.p_m is not None and not 0.0 <= self.p_m <= 1.0:
            raise ValueError("p_m must be in [0, 1]")

    def mutation_rate(self, d: int) -> float:
        return 1.0 / d if self.p_m is None else self.p_m


def sbx_spread(u, eta):
    """Spread factor beta for uniform draws ``u`` (beta = 1 at u = 0.5)."""
    u = np.asarray(u, dtype=np.float64)
    expo = 1.0 / (eta + 1.0)
    with np.errstate(divide="ignore"):
        low = (2.0 * u) ** expo
        high = (1.0 / (2.0 * (1.0 - u))) ** expo
    return np.where(u <= 0.5, low, high)


def sbx_crossover(p1, p2, cfg: OperatorConfig, rng: np.random.Generator):
    """Simulated binary crossover of paired rows of ``p1`` and ``p2``.

    Children are symmetric about the parents' midpoint; each variable's
    pair of children is swapped with probability 0.5. Pairs skip crossover
    with probability ``1 - p_c``. Outputs are clipped to ``[0, 1]``.
    """
    p1 = np.asarray(p1, dtype=np.float64)
    p2 = np.asarray(p2, dtype=np.float64)
    single = p1.ndim == 1
    p1, p2 = np.atleast_2d(p1), np.atleast_2d(p2)
    n, d = p1.shape
    u = rng.random((n, d))
    swap = rng.random((n, d)) < 0.5
    do = rng.random(n) < cfg.p_c

    beta = sbx_spread(u, cfg.eta_c)
    mid = 0.5 * (p1 + p2)
    half = 0.5 * (p1 - p2)
    c1 = mid + beta * half
    c2 = mid - beta * half
    c1, c2 = np.where(swap, c2, c1), np.where(swap, c1, c2)
    c1 = np.where(do[:, None], c1, p1)
    c2 = np.where(do[:, None], c2, p2)
    c1 = np.clip(c1, 0.0, 1.0)
    c2 = np.clip(c2, 0.0, 1.0)
    if single:
        return c1[0], c2[0]
    return c1, c2


def polynomial_mutation(x, cfg: OperatorConfig, rng: np.random.Generator):
    """Bounded polynomial mutation on ``[0, 1]``."""
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    n, d = X.shape
    hit = rng.random((n, d)) < cfg.mutation_rate(d)
    r = rng.random((n, d))

    eta = cfg.eta_m
    expo = 1.0 / (eta + 1.0)
    # delta1 = x - 0, delta2 = 1 - x on the unit box
    lower_val = 2.0 * r + (1.0 - 2.0 * r) * (1.0 - X) ** (eta + 1.0)
    upper_val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * X ** (eta + 1.0)
    dq = np.where(r < 0.5, lower_val**expo - 1.0, 1.0 - upper_val**expo)
    Y = np.clip(np.where(hit, X + dq, X), 0.0, 1.0)
    return Y[0] if single else Y
