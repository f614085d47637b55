from __future__ import annotations

from collections import defaultdict
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smcloc.extaffine import bounded_affine_perms
from smcloc.pipedream import (CROSS, ELBOW, IllFormed, PipeDream, all_tilings, enumerate_pd, gtilde,
                              k1_closed_form, k1_tiling, pd_ring, swap_variables, tile_labels, trace,
                              verify_positroid, weight)

EXAMPLE = PipeDream.from_rows(["++%++%+", "%%+%+%+", "+%%+%%+"])


def test_example_reading_permutation():
    assert trace(EXAMPLE) == (2, 6, 5, 10, 8, 11, 7)


def test_example_has_265_tilings():
    pds = enumerate_pd((2, 6, 5, 10, 8, 11, 7), 3, 7)
    assert len(pds) == 265
    assert EXAMPLE in pds


def test_round_trips():
    assert PipeDream.from_mask(EXAMPLE.mask(), 3, 7) == EXAMPLE
    assert PipeDream.from_rows(EXAMPLE.ascii().splitlines()) == EXAMPLE
    assert PipeDream.from_rows(EXAMPLE.matrix()) == EXAMPLE


def test_all_cross_is_identity():
    pd = PipeDream(((CROSS,) * 4,))
    assert trace(pd) == (1, 2, 3, 4)
    with pytest.raises(IllFormed):
        tile_labels(pd)


tilings = st.integers(1, 3).flatmap(
    lambda k: st.integers(1, 4).flatmap(
        lambda n: st.integers(0, 2 ** (k * n) - 1).map(lambda m: PipeDream.from_mask(m, k, n))))


@given(tilings)
def test_trace_is_periodic_bijection(pd):
    n = pd.n
    f = trace(pd)
    assert sorted((x - 1) % n for x in f) == list(range(n))
    rows_with_elbows = sum(1 for r in pd.rows if ELBOW in r)
    assert sum(x - i for i, x in enumerate(f, 1)) == n * rows_with_elbows
    assert all(i <= x <= i + n * pd.k for i, x in enumerate(f, 1))


@given(tilings)
def test_enumeration_contains_the_tiling(pd):
    assert pd in enumerate_pd(trace(pd), pd.k, pd.n)


@pytest.mark.parametrize("k,n", [(2, 3), (1, 4), (2, 2), (3, 2)])
def test_enumeration_matches_brute_force(k, n):
    brute = defaultdict(list)
    for pd in all_tilings(k, n):
        brute[trace(pd)].append(pd)
    assert sum(len(v) for v in brute.values()) == 2 ** (k * n)
    for f in bounded_affine_perms(n, k):
        assert enumerate_pd(f, k, n) == sorted(brute[f], key=PipeDream.mask)


def test_unreachable_is_empty():
    assert enumerate_pd((1, 3, 2), 1, 3) == []
    assert enumerate_pd((1, 2, 3), 1, 3) == [PipeDream(((CROSS,) * 3,))]
    assert enumerate_pd((4, 2), 1, 3) == []


def test_k1_bijection():
    for n in range(1, 6):
        for r in range(1, n + 1):
            for A in combinations(range(1, n + 1), r):
                f = trace(k1_tiling(A, n))
                assert {i for i, x in enumerate(f, 1) if x != i} == set(A)
                assert enumerate_pd(f, 1, n) == [k1_tiling(A, n)]


def test_k1_n9_example():
    A = (2, 4, 5, 6, 9)
    f = trace(k1_tiling(A, 9))
    assert gtilde(f, 1, 9) == k1_closed_form(A, 9)


def test_gtilde_is_sum_of_weights():
    f = (2, 4, 6)
    R = pd_ring(2, 3)
    total = R.zero()
    for pd in enumerate_pd(f, 2, 3):
        total = total + weight(pd, R)
    assert gtilde(f, 2, 3) == total


def test_labels_on_example():
    labels = tile_labels(EXAMPLE)
    assert len(labels) == 3 and all(len(r) == 7 for r in labels)
    # bottom row: pipes enter from their own columns
    assert [b for _, b in labels[2]] == list(range(1, 8))


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2)])
def test_gtilde_symmetric_in_x(n, k):
    for f in bounded_affine_perms(n, k):
        g = gtilde(f, k, n)
        assert swap_variables(g, "x1", "x2") == g


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 1)])
def test_positroid_classes(n, k):
    for f in bounded_affine_perms(n, k):
        rep = verify_positroid(f, k, n)
        assert rep.passed, f
        assert len(rep.rows) == len(list(combinations(range(n), k)))


def test_verify_positroid_rejects_unbounded():
    with pytest.raises(ValueError):
        verify_positroid((1, 2, 3), 1, 3)
