import csv
import io
import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autflow import flow as fl
from autflow.errors import NotEmbeddable, ParseError, UnsupportedBasePoint, UnsupportedKind
from autflow.hurwitz import HurwitzSeries
from autflow.rings import ring_make

Q = ring_make("q")
QI = ring_make("qi")
fracs = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def test_constant_flow():
    assert fl.flow_at_point(fl.Constant(Q, 2), 5, 6).coeffs == (5, 2, 0, 0, 0, 0, 0)


def test_affine_flow():
    assert fl.flow_at_point(fl.Affine(Q, 2, 3), 0, 4).coeffs == (0, 2, 6, 18, 54)
    assert fl.closed_form_flow(fl.Affine(Q, 2, 3), 0, 4).coeffs == (0, 2, 6, 18, 54)


def test_exp_flow():
    want = (0,) + tuple(factorial(n - 1) for n in range(1, 8))
    assert fl.flow_at_point(fl.ExpField(Q, 1), 0, 7).coeffs == want
    assert fl.closed_form_flow(fl.ExpField(Q, 1), 0, 7).coeffs == want
    with pytest.raises(UnsupportedBasePoint):
        fl.closed_form_flow(fl.ExpField(Q, 1), 1, 3)


def test_closed_form_unsupported_for_series():
    f = fl.SeriesField(Q, HurwitzSeries(Q, [1, 2, 3]), 0)
    with pytest.raises(UnsupportedKind):
        fl.closed_form_flow(f, 0, 2)


@settings(max_examples=25, deadline=None)
@given(fracs, fracs, fracs)
def test_affine_closed_form_property(a, b, x0):
    f = fl.Affine(Q, a, b)
    assert fl.flow_at_point(f, x0, 8).coeffs == fl.closed_form_flow(f, x0, 8).coeffs


def test_group_law_affine():
    assert fl.group_law_check(fl.Affine(Q, 1, 1), 0, (3, 3))


def test_constant_bivariate_is_linear():
    c = fl.bivariate_composition(fl.Constant(Q, 3), 0, 3, 3)
    for m in range(4):
        for n in range(4):
            assert (c.get(m, n) == 3) if m + n == 1 else (c.get(m, n) == 0)


@settings(max_examples=10, deadline=None)
@given(st.lists(fracs, min_size=9, max_size=9), fracs)
def test_group_law_random_series_fields(coeffs, x0):
    f = fl.SeriesField(Q, HurwitzSeries(Q, coeffs), x0)
    assert fl.group_law_check(f, x0, (3, 3))


def test_time_scaling_examples():
    f = fl.Affine(Q, 2, 3)
    assert fl.time_scale_check(f, 1, 5)
    assert fl.time_scale_check(f, 2, 5)
    zero = fl.flow_at_point(f.scaled(0), 4, 5)
    assert zero.coeffs == (4, 0, 0, 0, 0, 0)
    base = fl.flow_at_point(f, 0, 5).coeffs
    assert fl.flow_at_point(f.scaled(2), 0, 5).coeffs == tuple(2**n * c for n, c in enumerate(base))


@pytest.mark.parametrize(
    "field",
    [fl.Constant(Q, 2), fl.Affine(Q, -1, Fraction(1, 2)), fl.ExpField(Q, 2, Fraction(1, 3))],
)
def test_pde_and_module_axioms(field):
    assert fl.pde_check(field, 4)
    res = fl.module_axioms_check(field, 0, {"r": 2, "v": Fraction(-1, 2), "w": 3}, 3)
    assert all(res.values()), res


def test_series_mode_at_nonzero_base():
    f = fl.Affine(Q, 1, 2)
    phi = fl.flow_series_mode(f, 3, base=5)
    assert phi.coeffs[0].coeffs[:2] == (5, 1)
    # Phi_n(5 + X) at X = 0 is the point flow through 5
    point = fl.flow_at_point(f, 5, 3).coeffs
    assert tuple(c.coeffs[0] for c in phi.coeffs) == point


def test_unit_twist_examples():
    g = ring_make("gauss")
    assert fl.gmodule_identity_check(fl.Affine(QI, 1, 1), QI.parse("i"), 4)
    assert fl.gmodule_identity_check(fl.ExpField(Q, 1), -1, 4)
    assert fl.gmodule_identity_check(fl.Affine(Q, 3, 2), 1, 4)
    orbit = fl.gmodule_orbit(fl.Affine(QI, 1, 1), 1, g)
    assert len(orbit) == 4


def test_equilibria():
    aff = fl.Affine(Q, 2, 1)
    rep = fl.equilibrium_check(aff, -2)
    assert rep.field_zero and rep.flow_constant and bool(rep)
    for x in (-1, 0, 3):
        assert not fl.equilibrium_check(fl.Constant(Q, 5), x).field_zero
    rep = fl.equilibrium_check(fl.ExpField(Q, 1), 0)
    assert not rep.field_zero and rep.agree
    assert fl.equilibrium_invariance_check(aff, -2, 3)


def test_parse_field():
    assert isinstance(fl.parse_field("q", "const:3"), fl.Constant)
    assert isinstance(fl.parse_field("gauss", "affine:1,i"), fl.Affine)
    assert isinstance(fl.parse_field("q", "expfield:2"), fl.ExpField)
    f = fl.parse_field("q", "series:[1/2,1,3]")
    assert f.series.coeffs == (Fraction(1, 2), 1, 3)
    for bad in ("series:[]", "affine:1", "nope", "const:x"):
        with pytest.raises(ParseError):
            fl.parse_field("q", bad)


def test_grid():
    assert fl.parse_grid("0:1:3") == [0, Fraction(1, 2), 1]
    assert fl.parse_grid("2:5:1") == [2]
    for bad in ("0:1", "a:b:c", "0:1:0"):
        with pytest.raises(ParseError):
            fl.parse_grid(bad)


def test_orbit_csv():
    flow = fl.flow_at_point(fl.Affine(Q, 0, 1), 1, 12)
    text = fl.orbit_csv(flow, fl.parse_grid("0:1:3"), 10)
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == fl.CSV_HEADER
    assert len(rows) == 4
    assert rows[1][2] == "1.0"
    assert abs(float(rows[3][2]) - 2.718281828) < 1e-8
    with pytest.raises(NotEmbeddable):
        fl.orbit_csv(fl.flow_series_mode(fl.Affine(Q, 0, 1), 3), [0], 10)


def test_gaussian_orbit_rows():
    flow = fl.flow_at_point(fl.Affine(QI, 0, QI.parse("i")), 1, 20)
    rows = fl.orbit_samples(flow, [Fraction(1)], 8)
    re, im = float(rows[0][2]), float(rows[0][3])
    # x exp(i t) at t = 1
    assert abs(re - 0.5403023) < 1e-6 and abs(im - 0.8414710) < 1e-6


def test_evaluate_and_star():
    flow = fl.flow_at_point(fl.Affine(Q, 2, 3), 0, 3)
    assert flow.evaluate(0) == 0
    assert flow.evaluate(1) == 2 + Fraction(6, 2) + Fraction(18, 6)
    assert flow.star(2).coeffs == (0, 4, 24, 144)


def test_random_fields_deterministic():
    rng = random.Random(0)
    f = fl.SeriesField(Q, HurwitzSeries(Q, [Q.random(rng, 3) for _ in range(10)]), 0)
    assert fl.pde_check(f, 4) and fl.time_scale_check(f, Fraction(2, 3), 5)
