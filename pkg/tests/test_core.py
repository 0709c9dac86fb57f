import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import brute_force_fronts
from sosmt.core import (
    Individual,
    ParetoArchive,
    UsageError,
    archive_insert,
    crowding_distance,
    dominates,
    nondominated_sort,
)

finite = st.floats(-1e6, 1e6, allow_nan=False)


def ind(f, task=0):
    f = np.asarray(f, dtype=float)
    return Individual(np.zeros(2), np.zeros(2), f, task)


@pytest.mark.parametrize(
    "a, b, expected",
    [((1, 2), (2, 3), True), ((1, 2), (1, 2), False), ((1, 3), (2, 2), False), ((1, 2), (1, 3), True)],
)
def test_dominates_examples(a, b, expected):
    assert dominates(a, b) is expected


def test_dominates_length_mismatch():
    with pytest.raises(UsageError):
        dominates((1, 2), (1, 2, 3))


@given(arrays(float, 3, elements=finite), arrays(float, 3, elements=finite))
def test_dominance_irreflexive_antisymmetric(a, b):
    assert not dominates(a, a)
    assert not (dominates(a, b) and dominates(b, a))


def test_sort_examples():
    assert nondominated_sort([(1, 1)]) == [[0]]
    assert nondominated_sort([(1, 2), (2, 1), (2, 2)]) == [[0, 1], [2]]
    assert nondominated_sort([]) == []


def test_sort_matches_oracle_random_50(rng):
    F = rng.random((50, 2))
    assert nondominated_sort(F) == brute_force_fronts(F)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 200), st.integers(0, 2**32 - 1), st.sampled_from([2, 3]))
def test_first_front_is_bruteforce_nondominated(n, seed, m):
    F = np.random.default_rng(seed).integers(0, 12, (n, m)).astype(float)
    fronts = nondominated_sort(F)
    oracle = [i for i in range(n) if not any(dominates(F[j], F[i]) for j in range(n))]
    assert fronts[0] == oracle
    assert sorted(i for f in fronts for i in f) == list(range(n))


def test_sort_accepts_individuals_and_rejects_mixed_tasks():
    assert nondominated_sort([ind((1, 2)), ind((2, 1)), ind((3, 3))]) == [[0, 1], [2]]
    with pytest.raises(UsageError):
        nondominated_sort([ind((1, 2), 0), ind((2, 1), 1)])


def test_crowding_examples():
    assert np.all(np.isinf(crowding_distance([(0, 1), (1, 0)])))
    # equally spaced on a line: middle gets 1 per objective
    np.testing.assert_array_equal(crowding_distance([(0, 2), (1, 1), (2, 0)]), [np.inf, 2.0, np.inf])


def test_crowding_duplicates():
    cd = crowding_distance([(0, 3), (1, 2), (1, 2), (2, 1), (3, 0)])
    assert np.all(np.isfinite(cd[1:4]))
    # first copy scored as if alone, later copy 0
    assert cd[1] == pytest.approx(2 / 3 + 2 / 3) and cd[2] == 0.0
    assert np.isinf(cd[0]) and np.isinf(cd[4])


def test_duplicated_boundary_keeps_one_infinite_copy():
    cd = crowding_distance([(1, 2), (0, 3), (0, 3), (2, 1), (3, 0)])
    assert np.isinf(cd[1]) and cd[2] == 0.0


def _front(rng, n):
    f1 = np.sort(rng.random(n))
    f2 = np.sort(rng.random(n))[::-1]
    return np.column_stack([f1, f2])


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 40), st.integers(0, 2**32 - 1), st.floats(0.01, 100), st.floats(-50, 50))
def test_crowding_permutation_and_affine_invariance(n, seed, scale, shift):
    rng = np.random.default_rng(seed)
    F = _front(rng, n)
    cd = crowding_distance(F)
    perm = rng.permutation(n)
    np.testing.assert_allclose(crowding_distance(F[perm]), cd[perm], rtol=1e-12)
    G = F.copy()
    G[:, 1] = scale * G[:, 1] + shift
    np.testing.assert_allclose(crowding_distance(G), cd, rtol=1e-9, atol=1e-12)


def test_archive_rejects_dominated_and_removes_dominated():
    arch = ParetoArchive(0, capacity=10)
    arch.insert(ind((1, 1)))
    before = [tuple(m.objectives) for m in arch]
    assert not arch.insert(ind((2, 2)))
    assert [tuple(m.objectives) for m in arch] == before
    arch.insert(ind((3, 0.5)))
    assert arch.insert(ind((0.5, 0.4)))
    assert [tuple(m.objectives) for m in arch] == [(0.5, 0.4)]


def test_archive_skill_factor_mismatch():
    with pytest.raises(UsageError):
        archive_insert(ParetoArchive(0), ind((1, 1), task=2))


def test_archive_capacity_matches_independent_recomputation(rng):
    cap = 10
    F = _front(rng, cap + 1)
    arch = ParetoArchive(0, capacity=cap)
    for f in F:
        archive_insert(arch, ind(f))
    # independent: crowding of all cap+1 from the formula, drop the smallest
    n = len(F)
    cd = np.zeros(n)
    for j in range(2):
        order = np.argsort(F[:, j])
        span = F[order[-1], j] - F[order[0], j]
        cd[order[0]] = cd[order[-1]] = np.inf
        for p in range(1, n - 1):
            cd[order[p]] += (F[order[p + 1], j] - F[order[p - 1], j]) / span
    expected = np.delete(F, int(np.argmin(cd)), axis=0)
    got = arch.objectives()
    assert len(arch) == cap
    np.testing.assert_array_equal(got[np.lexsort(got.T[::-1])], expected[np.lexsort(expected.T[::-1])])


def test_archive_eviction_tie_goes_to_earliest():
    arch = ParetoArchive(0, capacity=3)
    for f in [(0, 4), (2, 2), (2, 2), (4, 0)]:
        arch.insert(ind(f))
    # both duplicates crowd at 0; the first inserted one goes
    assert len(arch) == 3
    assert sum(1 for m in arch if tuple(m.objectives) == (2, 2)) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 15))
def test_archive_never_holds_dominated_member(seed, cap):
    rng = np.random.default_rng(seed)
    arch = ParetoArchive(0, capacity=cap)
    for f in rng.integers(0, 8, (60, 2)).astype(float):
        arch.insert(ind(f))
        F = arch.objectives()
        assert len(arch) <= cap
        for i in range(len(F)):
            for j in range(len(F)):
                assert not dominates(F[i], F[j])
