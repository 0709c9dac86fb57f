import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sosmt.variation import OperatorConfig, polynomial_mutation, sbx_crossover, sbx_spread

CFG = OperatorConfig()


class ConstantRng:
    """Stands in for a Generator; ``random`` returns a fixed value."""

    def __init__(self, value):
        self.value = value

    def random(self, shape=None):
        return np.full(shape, self.value) if shape is not None else self.value


def test_spread_is_one_at_half():
    assert sbx_spread(0.5, 20) == 1.0
    assert sbx_spread(0.25, 20) < 1 < sbx_spread(0.75, 20)


def test_sbx_midpoint_draw_returns_parents():
    p1, p2 = np.array([0.2, 0.9, 0.4]), np.array([0.6, 0.1, 0.4])
    # u = 0.5 -> beta = 1; the 0.5 swap draw is not < 0.5 so no swap
    c1, c2 = sbx_crossover(p1, p2, CFG, ConstantRng(0.5))
    np.testing.assert_allclose(c1, p1, atol=1e-15)
    np.testing.assert_allclose(c2, p2, atol=1e-15)


def test_sbx_identical_parents():
    p = np.array([0.3, 0.7, 0.0, 1.0])
    c1, c2 = sbx_crossover(p, p, CFG, np.random.default_rng(0))
    np.testing.assert_array_equal(c1, p)
    np.testing.assert_array_equal(c2, p)


def test_sbx_children_symmetric_about_midpoint_mc():
    rng = np.random.default_rng(1)
    n = 100_000
    p1 = np.full((n, 1), 0.4)
    p2 = np.full((n, 1), 0.6)
    c1, c2 = sbx_crossover(p1, p2, CFG, rng)
    # interior parents far from the box edges: no clipping, exact symmetry per pair
    np.testing.assert_allclose(c1 + c2, 1.0, atol=1e-12)
    assert abs(np.mean(c1) - 0.5) < 2e-3 and abs(np.mean(c2) - 0.5) < 2e-3


def test_sbx_skips_pairs_when_pc_zero():
    rng = np.random.default_rng(2)
    P1, P2 = rng.random((10, 3)), rng.random((10, 3))
    c1, c2 = sbx_crossover(P1, P2, OperatorConfig(p_c=0.0), rng)
    np.testing.assert_array_equal(c1, P1)
    np.testing.assert_array_equal(c2, P2)


def test_mutation_pm_zero_is_identity():
    x = np.random.default_rng(3).random((20, 5))
    np.testing.assert_array_equal(polynomial_mutation(x, OperatorConfig(p_m=0.0), np.random.default_rng(4)), x)


def test_mutation_at_bounds_moves_inward():
    rng = np.random.default_rng(5)
    cfg = OperatorConfig(p_m=1.0)
    lo = polynomial_mutation(np.zeros((1000, 2)), cfg, rng)
    hi = polynomial_mutation(np.ones((1000, 2)), cfg, rng)
    assert lo.min() >= 0 and hi.max() <= 1
    assert np.all(lo >= 0) and np.mean(lo > 0) > 0.45
    assert np.mean(hi < 1) > 0.45


def test_mutation_small_steps():
    rng = np.random.default_rng(6)
    x = rng.random((20_000, 4))
    y = polynomial_mutation(x, OperatorConfig(p_m=1.0), rng)
    assert np.mean(np.abs(y - x)) < 0.05


def test_default_mutation_rate():
    assert CFG.mutation_rate(4) == 0.25
    assert OperatorConfig(p_m=0.5).mutation_rate(4) == 0.5


@pytest.mark.parametrize("kw", [{"eta_c": 0}, {"eta_m": -1}, {"p_c": 1.5}, {"p_m": -0.1}])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        OperatorConfig(**kw)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.floats(1, 50), st.floats(1, 50))
def test_outputs_stay_in_unit_box(seed, d, eta_c, eta_m):
    rng = np.random.default_rng(seed)
    cfg = OperatorConfig(eta_c=eta_c, eta_m=eta_m, p_m=1.0)
    P1, P2 = rng.random((30, d)), rng.random((30, d))
    P1[0] = 0.0
    P2[0] = 1.0
    c1, c2 = sbx_crossover(P1, P2, cfg, rng)
    m = polynomial_mutation(np.concatenate([c1, c2]), cfg, rng)
    for a in (c1, c2, m):
        assert np.all((a >= 0) & (a <= 1))


def test_determinism_and_stream_consumption():
    P1, P2 = np.random.default_rng(7).random((2, 8, 3))
    out = []
    for _ in range(2):
        rng = np.random.default_rng(99)
        c1, c2 = sbx_crossover(P1, P2, CFG, rng)
        m = polynomial_mutation(c1, CFG, rng)
        out.append((c1.tobytes(), c2.tobytes(), m.tobytes(), rng.random()))
    assert out[0] == out[1]
    # stream use depends on shape only, not on p_c
    a, b = np.random.default_rng(1), np.random.default_rng(1)
    sbx_crossover(P1, P2, OperatorConfig(p_c=0.0), a)
    sbx_crossover(P1, P2, OperatorConfig(p_c=1.0), b)
    assert a.random() == b.random()
