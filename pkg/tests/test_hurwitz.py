import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autflow.errors import NonzeroConstantTerm, OrderExceeded, RingMismatch
from autflow.hurwitz import (
    HurwitzSeries,
    compose,
    compose_horner,
    delta_sequence,
    derivative,
    evaluate,
    exp_series,
    from_json,
    hurwitz_mul,
    scale_substitute,
    series_eq,
    series_inverse,
    taylor_shift,
    to_json,
)
from autflow.rings import ring_make

Q = ring_make("q")
Z = ring_make("z")
G = ring_make("gauss")


def S(*c, ring=Q):
    return HurwitzSeries(ring, list(c))


fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def qseries(min_size=1, max_size=7):
    return st.lists(fracs, min_size=min_size, max_size=max_size).map(lambda c: HurwitzSeries(Q, c))


def test_add_and_scale():
    assert S(1, 1, 1) + S(0, 1, 2) == S(1, 2, 3)
    assert not (S(1, 2, 3) * 0)
    assert exp_series(Q, 5) * 2 == S(2, 2, 2, 2, 2, 2)


def test_product_examples():
    e = exp_series(Q, 6)
    assert hurwitz_mul(e, e) == S(*[2**n for n in range(7)])
    f = S(3, 1, 4, 1)
    assert hurwitz_mul(f, S(1, 0, 0, 0)) == f
    assert hurwitz_mul(S(0, 1, 0, 0), S(0, 1, 0, 0)) == S(0, 0, 2, 0)


def test_product_truncates_to_min_order():
    assert hurwitz_mul(S(1, 2, 3), S(1, 1)).order == 1


def test_derivative_examples():
    assert derivative(S(5, 6, 7)) == S(6, 7)
    assert derivative(S(0, 0, 1)) == S(0, 1)
    for d in delta_sequence(exp_series(Q, 4)):
        assert all(c == 1 for c in d.coeffs)


def test_compose_examples():
    f = S(3, -1, 2, 5)
    assert compose(f, S(0, 1, 0, 0)) == f
    assert compose(exp_series(Q, 5), S(0, 2, 0, 0, 0, 0)) == S(*[2**n for n in range(6)])
    with pytest.raises(NonzeroConstantTerm):
        compose(f, S(1, 1, 0, 0))


def test_scale_substitute_examples():
    f = S(1, 2, 3)
    assert scale_substitute(f, 1) == f
    assert scale_substitute(f, 2) == S(1, 4, 12)
    assert scale_substitute(exp_series(Q, 4), -1) == S(1, -1, 1, -1, 1)


def test_taylor_shift_examples():
    f = S(1, 2, 1)
    assert taylor_shift(f, 0) == f
    assert taylor_shift(S(0, 1), 5) == S(5, 1)
    assert taylor_shift(f, 1) == S(Fraction(7, 2), 3, 1)


def test_evaluate():
    assert evaluate(S(1, 1, 1), 2) == 5
    assert evaluate(S(4, 9, 9), 0) == 4


def test_series_eq_bounds():
    f = S(1, 2, 3)
    assert series_eq(f, S(1, 2, 7), 1)
    assert not series_eq(f, S(1, 2, 7), 2)
    with pytest.raises(OrderExceeded):
        series_eq(f, S(1, 2), 2)


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatch):
        hurwitz_mul(S(1, 2), S(1, 2, ring=G))


@settings(max_examples=40, deadline=None)
@given(qseries(), qseries())
def test_leibniz(f, g):
    n = min(f.order, g.order)
    if n < 1:
        return
    lhs = derivative(hurwitz_mul(f, g))
    rhs = hurwitz_mul(derivative(f), g) + hurwitz_mul(f, derivative(g))
    assert series_eq(lhs, rhs, n - 1)


@settings(max_examples=40, deadline=None)
@given(qseries(), qseries())
def test_product_is_binomial_convolution(f, g):
    h = hurwitz_mul(f, g)
    for n in range(h.order + 1):
        assert h.coeffs[n] == sum(comb(n, k) * f.coeffs[k] * g.coeffs[n - k] for k in range(n + 1))


@settings(max_examples=40, deadline=None)
@given(qseries(max_size=6), qseries(min_size=2, max_size=6))
def test_compose_matches_horner(f, g):
    g = HurwitzSeries(Q, [0] + list(g.coeffs[1:]))
    assert compose(f, g) == compose_horner(f, g)


@settings(max_examples=40, deadline=None)
@given(qseries(), fracs, fracs)
def test_shift_group(f, a, b):
    assert taylor_shift(taylor_shift(f, a), b) == taylor_shift(f, a + b)


@settings(max_examples=40, deadline=None)
@given(qseries(), fracs, fracs)
def test_scale_substitution_composes(f, a, b):
    assert scale_substitute(scale_substitute(f, a), b) == scale_substitute(f, a * b)


@settings(max_examples=40, deadline=None)
@given(qseries())
def test_inverse(f):
    if not f.coeffs[0]:
        return
    one = hurwitz_mul(f, series_inverse(f))
    assert one == HurwitzSeries.constant(Q, 1, f.order)


def test_taylor_shift_by_series_truncates():
    f = S(1, 2, 3, 4)
    c = S(0, 1, 0, 0)
    out = taylor_shift(f, c)
    # f(X + c) with c of zero constant term: b_n valid to order N - n
    assert [b.order for b in out.coeffs] == [3, 2, 1, 0]
    assert out.coeffs[0] == compose(f, c)


def test_json_round_trip():
    rng = random.Random(3)
    for spec in ("q", "gauss", "eis", "roots:6"):
        r = ring_make(spec)
        f = HurwitzSeries(r, [r.random(rng, 4) for _ in range(5)])
        assert from_json(to_json(f)) == f
