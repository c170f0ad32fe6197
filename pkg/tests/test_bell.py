from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autflow import bell
from autflow.errors import BadRange
from autflow.rings import ring_make


def mults(n, k):
    return [p.multiplicities for p in bell.partitions(n, k)]


def test_partition_examples():
    assert mults(3, 2) == [(1, 1, 0)]
    assert mults(4, 2) == [(1, 0, 1, 0), (0, 2, 0, 0)]
    assert mults(3, 3) == [(3, 0, 0)]


@given(st.integers(1, 12), st.data())
def test_partition_counts_and_weights(n, data):
    k = data.draw(st.integers(1, n))
    ps = bell.partitions(n, k)
    assert all(p.weight == n and p.length == k for p in ps)
    assert len({p.multiplicities for p in ps}) == len(ps)
    # coefficients sum to the Stirling number of the second kind
    assert sum(p.coefficient() for p in ps) == bell.partial_bell(n, k, [1] * n)


def test_partial_bell_examples():
    assert bell.partial_bell(3, 2, [1, 1, 1]) == 3
    assert bell.partial_bell(3, 3, [2, 0, 0]) == 8
    assert bell.partial_bell(4, 2, [1, 1, 1, 1]) == 7
    assert bell.partial_bell_rec(4, 2, [1, 1, 1, 1]) == 7


def test_complete_bell_examples():
    assert bell.complete_bell(1, [3], [5]) == 15
    assert bell.complete_bell(2, [1, 1], [1, 1]) == 2
    assert bell.complete_bell(3, [1, 1, 1], [1, 1, 1]) == 5


def test_bell_numbers():
    assert [bell.bell_number(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=9))
def test_sum_equals_recurrence(b):
    n = len(b)
    for k in range(1, n + 1):
        assert bell.partial_bell(n, k, b) == bell.partial_bell_rec(n, k, b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=8), st.integers(-3, 3), st.integers(-3, 3))
def test_weighted_homogeneity(b, alpha, beta):
    # B_{n,k}(alpha beta^h b_h) = alpha^k beta^n B_{n,k}(b)
    n = len(b)
    sb = [alpha * beta ** (h + 1) * v for h, v in enumerate(b)]
    for k in range(1, n + 1):
        assert bell.partial_bell(n, k, sb) == alpha**k * beta**n * bell.partial_bell(n, k, b)


def test_bell_table_matches_partial_bell():
    b = [Fraction(1, 2), -3, 2, 5, Fraction(-1, 3), 1]
    rows = bell.bell_table(6, b)
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert rows[n][k] == bell.partial_bell(n, k, b)


def test_over_gaussian_integers():
    g = ring_make("gauss")
    b = [g.parse(s) for s in ["1+i", "2", "-i", "3-2i"]]
    for k in range(1, 5):
        assert bell.partial_bell(4, k, b) == bell.partial_bell_rec(4, k, b)


def test_incremental_table():
    t = bell.BellTable()
    for v in [1, 1, 1, 1]:
        t.append(v)
    assert len(t) == 4
    assert t.get(4, 2) == 7


@pytest.mark.parametrize("n,k", [(0, 0), (3, 4), (3, 0)])
def test_bad_ranges(n, k):
    with pytest.raises(BadRange):
        bell.partitions(n, k)


def test_too_few_arguments():
    with pytest.raises(BadRange):
        bell.partial_bell(4, 1, [1, 2])
