from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autflow import autonomous as au
from autflow.errors import EmptyInput, ZeroLeadingTerm
from autflow.hurwitz import HurwitzSeries, exp_series
from autflow.rings import ring_make

Q = ring_make("q")
Z = ring_make("z")
ints = st.integers(-6, 6)


def test_generic_prefix():
    a0, a1, a2 = 2, 3, 5
    assert au.apply_pointwise([a0, a1, a2]).terms == (a0, a0 * a1, a0 * a1**2 + a0**2 * a2)


def test_all_ones_prefix():
    assert au.apply_pointwise([1] * 5).terms == (1, 1, 2, 6, 24)


def test_exp_series_image():
    img = au.apply_series(exp_series(Q, 6))
    for n, A in enumerate(img.terms, start=1):
        assert list(A.coeffs) == [factorial(n - 1) * n**j for j in range(len(A.coeffs))]


def test_constant_and_affine_fields():
    img = au.apply_series(HurwitzSeries(Q, [4, 0, 0, 0, 0]))
    assert img.terms[0].coeffs[0] == 4 and all(not t for t in img.terms[1:])
    a, b = Fraction(2), Fraction(3)
    f = HurwitzSeries(Q, [a, b, 0, 0, 0, 0])
    for n, A in enumerate(au.apply_series(f).terms, start=1):
        want = (f * b ** (n - 1)).truncate(A.order)
        assert A == want


def test_invert_examples():
    assert au.invert([1, 1, 2], Z).terms == (1, 1, 1)
    assert au.invert([1, 1, 2, 3], Z).terms == (1, 1, 1, -2)
    res = au.invert([2, 2, 2], Z)
    assert res.terms == (2, 1, 0) and res.in_ring
    res = au.invert([2, 2, 3], Z)
    assert res.terms == (2, 1, Fraction(1, 4)) and not res.in_ring
    with pytest.raises(ZeroLeadingTerm):
        au.invert([0, 1, 2], Z)
    with pytest.raises(EmptyInput):
        au.apply_pointwise([])


def test_scaling_example():
    assert au.apply_pointwise([2, 2, 2]).terms == (2, 4, 16)
    assert au.check_scaling([1, 1, 1], 2, 3)
    assert au.check_scaling([3, -1, 4, 1], 0, 4)
    assert au.check_scaling([3, -1, 4, 1], 1, 4)


@settings(max_examples=60, deadline=None)
@given(st.lists(ints, min_size=1, max_size=8), ints)
def test_scaling_property(x, alpha):
    lhs = au.apply_pointwise([alpha * v for v in x]).terms
    rhs = au.apply_pointwise(x).terms
    assert all(l == alpha ** (n + 1) * r for n, (l, r) in enumerate(zip(lhs, rhs)))


@settings(max_examples=60, deadline=None)
@given(st.lists(ints, min_size=0, max_size=7))
def test_null_space_property(tail):
    assert au.check_null_space([0] + tail)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, -1]), st.lists(ints, min_size=0, max_size=7))
def test_round_trip_property(head, tail):
    x = [head] + tail
    res = au.invert(au.apply_pointwise(x).terms, Z)
    assert list(res.terms) == x and res.in_ring


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(-4, 4, max_denominator=3), min_size=1, max_size=7))
def test_chain_equals_bell(c):
    f = HurwitzSeries(Q, c)
    a, b = au.apply_series(f).terms, au.apply_series_bell(f).terms
    assert [t.coeffs for t in a] == [t.coeffs for t in b]


def test_exp_identities_examples():
    one = HurwitzSeries(Q, [1, 0, 0, 0, 0])
    assert au.check_exp_factor(one, 1, 4)
    assert au.check_exp_factor(HurwitzSeries(Q, [0, 1, 0, 0]), 1, 3)
    assert au.check_exp_factor(HurwitzSeries(Q, [2, -1, 3, 1]), 0, 3)
    assert au.check_exp_composition(HurwitzSeries(Q, [0, 0, 0, 0, 0]), 4)
    assert au.check_exp_composition(HurwitzSeries(Q, [0, 1, 0, 0, 0]), 4)
    assert au.check_exp_composition(HurwitzSeries(Q, [0, 0, 1, 0]), 3)


def test_nesting():
    f = HurwitzSeries(Q, [1, -2, Fraction(1, 2), 3, 0, 1, 2])
    assert au.check_nesting(f, 5)


@settings(max_examples=30, deadline=None)
@given(ints, ints, ints, ints)
def test_linear_part(x0, y0, a, b):
    assert au.check_linear_part(x0, y0, a, b, 6)


@settings(max_examples=30, deadline=None)
@given(ints, st.lists(ints, min_size=1, max_size=6))
def test_ideal_image(a, x):
    assert au.check_ideal_image(Z, a, x)


def test_gaussian_invert_round_trip():
    g = ring_make("gauss")
    x = [g.parse(s) for s in ["i", "1+i", "-2", "3i", "1-i", "0", "2", "-i"]]
    res = au.invert(au.apply_pointwise(x).terms, g)
    assert list(res.terms) == x and res.in_ring
