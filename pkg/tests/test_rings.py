from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autflow.errors import AutflowError, InvalidSpec, NotAUnit, ParseError
from autflow.rings import (
    CycElement,
    embed_complex,
    parse_ring_spec,
    ring_make,
    unit_group_model,
)

SPECS = ["z", "q", "gauss", "eis", "quad:2", "quad:3", "quad:5", "roots:6", "roots:all", "qi", "qw", "frac:quad:2"]


def elems(spec, n=3):
    ring = ring_make(spec)
    return st.randoms(use_true_random=False).map(lambda r: tuple(ring.random(r, 4) for _ in range(n)))


@pytest.mark.parametrize("spec", SPECS)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_ring_axioms(spec, data):
    ring = ring_make(spec)
    x, y, z = data.draw(elems(spec))
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + ring.zero() == x and x * ring.one() == x
    assert x - x == ring.zero()


@pytest.mark.parametrize("spec", SPECS)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_parse_render_round_trip(spec, data):
    ring = ring_make(spec)
    x, _, _ = data.draw(elems(spec))
    assert ring.parse(ring.render(x)) == x
    assert hash(ring.parse(ring.render(x))) == hash(x)


@pytest.mark.parametrize("spec", ["qi", "qw", "frac:quad:2", "q", "roots:6"])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_field_division(spec, data):
    ring = ring_make(spec)
    x, y, _ = data.draw(elems(spec))
    if y:
        assert ring.try_divide(x, y) * y == x


def test_quadreal_2_norm_identity():
    r = ring_make("quad:2")
    assert r.parse("1+r") * r.parse("-1+r") == 1


def test_quadreal_4_rejected():
    with pytest.raises(InvalidSpec):
        parse_ring_spec("quad:4")


@pytest.mark.parametrize("bad", ["quad:1", "roots:0", "frac:", "series:x:q", "nope"])
def test_bad_specs(bad):
    with pytest.raises(AutflowError):
        parse_ring_spec(bad)


def test_eisenstein_unit():
    e = ring_make("eis")
    w = e.parse("w")
    assert w * (w * w) == 1
    assert w * w == e.parse("-1-w")


def test_inverses():
    g = ring_make("gauss")
    assert g.try_invert(g.parse("i")) == g.parse("-i")
    with pytest.raises(NotAUnit):
        ring_make("z").try_invert(2)
    q2 = ring_make("quad:2")
    assert q2.try_invert(q2.parse("1+r")) == q2.parse("-1+r")


def test_unit_group_models():
    g = unit_group_model(ring_make("gauss"))
    assert (g.torsion_order, g.free_rank) == (4, 0)
    q2 = ring_make("quad:2")
    m = unit_group_model(q2)
    assert m.free_rank == 1 and m.fundamental_unit == q2.parse("1+r")
    z = unit_group_model(ring_make("z"))
    assert (z.torsion_order, z.free_rank) == (2, 0)
    assert sorted(z.torsion_units()) == [-1, 1]
    assert len(m.units(2)) == 10
    assert unit_group_model(ring_make("eis")).torsion_order == 6


def test_embeddings():
    e = ring_make("eis")
    c = e.embed_complex(e.parse("w"))
    assert abs(c.real + 0.5) < 1e-12 and abs(c.imag - 0.8660254037844386) < 1e-12
    assert embed_complex(Fraction(3, 2)) == 1.5
    q2 = ring_make("quad:2")
    assert abs(q2.embed_complex(q2.parse("1+r")) - 2.414213562373095) < 1e-12


def test_real_quadratic_d5_uses_golden_ratio():
    r = ring_make("quad:5")
    phi = r.parse("r")
    assert phi * phi == phi + 1
    assert unit_group_model(r).fundamental_unit == phi


def test_roots_of_unity():
    r = ring_make("roots:all")
    z = r.parse("zeta(1/4)") * r.parse("zeta(1/6)")
    assert r.render(z) == "zeta(5/12)"
    assert CycElement.root(Fraction(1, 12)) ** 12 == 1
    r6 = ring_make("roots:6")
    assert r6.parse("zeta(1/6)") ** 3 == -1


def test_fraction_fields():
    assert ring_make("frac:z") == ring_make("q")
    assert ring_make("gauss").fraction_field() == ring_make("qi")
    assert not ring_make("gauss").contains(Fraction(1, 2))
    assert ring_make("qi").contains(Fraction(1, 2))


@pytest.mark.parametrize("bad", ["1+", "2x", "", "zeta(1/0)", "i*"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        ring_make("gauss").parse(bad)


def test_series_ring_literals():
    r = ring_make("series:2:series:2:q")
    v = r.parse("[[1/2,1,1],[1,2/3,-3/2],[3,2,-2]]")
    assert r.render(v) == "[[1/2,1,1],[1,2/3,-3/2],[3,2,-2]]"
    with pytest.raises(ParseError):
        r.parse("[[1,2],[3")
