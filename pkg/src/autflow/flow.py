"""Flows of one-dimensional autonomous equations x' = f(x) as exact Taylor series.

The flow through x_0 is x_0 + sum_n Phi_n t^n/n!, where Phi_n is term n of the
autonomous image of the derivative values (f(x_0), f'(x_0), ...).  In *series
mode* the base point is symbolic: x = x_0 + X and every Phi_n is itself a
series in X.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath

from .autonomous import apply_pointwise, apply_series
from .errors import (
    NotEmbeddable,
    OrderExhausted,
    ParseError,
    UnsupportedBasePoint,
    UnsupportedKind,
)
from .homogeneity import solve_hk
from .hurwitz import (
    HurwitzSeries,
    coeff_eq,
    compose,
    delta_sequence,
    derivative,
    hurwitz_mul,
    scale_substitute,
    series_eq,
    taylor_shift,
)
from .rings import Ring, RingSpec, SeriesRing, ring_make, unit_group_model

# ---------------------------------------------------------------------------
# vector fields


@dataclass(frozen=True)
class VectorField:
    """Base class; ``ring`` is always a field (the fraction field of the input ring)."""

    ring: Ring

    def expansion(self, x0, order: int) -> HurwitzSeries:
        """Derivative values f(x0), f'(x0), ..., as a series in X = x - x0."""
        raise NotImplementedError

    def vanishes_at(self, x) -> bool:
        raise NotImplementedError

    def scaled(self, r) -> VectorField:
        raise NotImplementedError

    def twisted(self, a, u) -> VectorField:
        """The field x -> a * f(u x)."""
        raise NotImplementedError

    def render(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(VectorField):
    a: object = 0

    def expansion(self, x0, order):
        return HurwitzSeries.constant(self.ring, self.a, order)

    def vanishes_at(self, x):
        return not self.a

    def scaled(self, r):
        return Constant(self.ring, self.ring.coerce(r * self.a))

    def twisted(self, a, u):
        return Constant(self.ring, self.ring.coerce(a * self.a))

    def render(self):
        return f"const:{self.ring.render(self.a)}"


@dataclass(frozen=True)
class Affine(VectorField):
    """f(x) = a + b x."""

    a: object = 0
    b: object = 0

    def expansion(self, x0, order):
        c = [self.a + self.b * x0, self.b] + [self.ring.zero()] * max(0, order - 1)
        return HurwitzSeries(self.ring, c[: order + 1])

    def vanishes_at(self, x):
        return not (self.a + self.b * x)

    def scaled(self, r):
        return Affine(self.ring, self.ring.coerce(r * self.a), self.ring.coerce(r * self.b))

    def twisted(self, a, u):
        return Affine(self.ring, self.ring.coerce(a * self.a), self.ring.coerce(a * self.b * u))

    def render(self):
        return f"affine:{self.ring.render(self.a)},{self.ring.render(self.b)}"


@dataclass(frozen=True)
class ExpField(VectorField):
    """f(x) = a exp(c x); only the base point 0 keeps the arithmetic exact."""

    a: object = 1
    c: object = 1

    def expansion(self, x0, order):
        if x0:
            raise UnsupportedBasePoint("exponential fields are expanded at x0 = 0 only")
        out, p = [], self.ring.coerce(self.a)
        for _ in range(order + 1):
            out.append(p)
            p = p * self.c
        return HurwitzSeries(self.ring, out)

    def vanishes_at(self, x):
        # exp never vanishes, so only the amplitude matters
        return not self.a

    def scaled(self, r):
        return ExpField(self.ring, self.ring.coerce(r * self.a), self.c)

    def twisted(self, a, u):
        return ExpField(self.ring, self.ring.coerce(a * self.a), self.ring.coerce(self.c * u))

    def render(self):
        if self.c == 1:
            return f"expfield:{self.ring.render(self.a)}"
        return f"expfield:{self.ring.render(self.a)},{self.ring.render(self.c)}"


@dataclass(frozen=True)
class SeriesField(VectorField):
    """Field given by its own truncated expansion around ``base``."""

    series: HurwitzSeries = None
    base: object = 0

    def expansion(self, x0, order):
        if x0 != self.base:
            raise UnsupportedBasePoint("a series field is only known at its own base point")
        if order > self.series.order:
            raise OrderExhausted(f"field known to order {self.series.order}, need {order}")
        return self.series.truncate(order)

    def vanishes_at(self, x):
        if x != self.base:
            raise UnsupportedBasePoint("a series field is only known at its own base point")
        return not self.series.coeffs[0]

    def scaled(self, r):
        return SeriesField(self.ring, self.series * self.ring.coerce(r), self.base)

    def twisted(self, a, u):
        if self.base:
            raise UnsupportedBasePoint("twisting needs a series field based at 0")
        return SeriesField(self.ring, scale_substitute(self.series, u) * self.ring.coerce(a), self.base)

    def render(self):
        return "series:" + self.series.render()


def parse_field(ring: Ring | str, text: str) -> VectorField:
    """``const:a``, ``affine:a,b``, ``expfield:a[,c]``, ``series:[c0,c1,...]``."""
    if isinstance(ring, str):
        ring = ring_make(ring)
    ff = ring.fraction_field()
    kind, sep, rest = text.strip().partition(":")
    if not sep:
        raise ParseError(f"field spec {text!r} needs the form kind:params")
    kind = kind.lower()
    if kind == "series":
        series = _xring(ff, 0).parse(rest)
        return SeriesField(ff, series, ff.zero())
    params = [ff.parse(p) for p in rest.split(",")] if rest.strip() else []
    if kind in ("const", "constant") and len(params) == 1:
        return Constant(ff, params[0])
    if kind == "affine" and len(params) == 2:
        return Affine(ff, params[0], params[1])
    if kind == "expfield" and len(params) in (1, 2):
        return ExpField(ff, params[0], params[1] if len(params) == 2 else ff.one())
    raise ParseError(f"cannot parse field spec {text!r}")


# ---------------------------------------------------------------------------
# flow series


@dataclass(frozen=True)
class FlowSeries:
    """Hurwitz t-coefficients Phi_0..Phi_M of a flow."""

    ring: Ring
    base_point: object
    coeffs: tuple
    mode: str = "point"  # "point" or "series"
    scalar: object = None

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, t):
        """Truncated sum Phi_n t^n / n! (exact)."""
        acc, p = self.coeffs[0], 1
        for n in range(1, len(self.coeffs)):
            p = p * t
            acc = acc + self.coeffs[n] * p * Fraction(1, factorial(n))
        return acc

    def star(self, s) -> FlowSeries:
        """Time substitution t -> t s."""
        out, p = [], 1
        for c in self.coeffs:
            out.append(c * p)
            p = p * s
        return FlowSeries(self.ring, self.base_point, tuple(out), self.mode, self.scalar)

    def scaled(self, u) -> FlowSeries:
        return FlowSeries(self.ring, self.base_point, tuple(c * u for c in self.coeffs), self.mode, u)

    def render(self) -> list[str]:
        return [self.ring.render(c) for c in self.coeffs]


def flow_at_point(field: VectorField, x0, order: int) -> FlowSeries:
    """Phi_0 = x0 and Phi_n = A_n of the derivative values at x0, n <= order."""
    ff = field.ring
    x0 = ff.coerce(x0)
    if order < 0:
        raise OrderExhausted("order must be nonnegative")
    if order == 0:
        return FlowSeries(ff, x0, (x0,))
    seq = field.expansion(x0, order - 1).coeffs
    return FlowSeries(ff, x0, (x0,) + apply_pointwise(seq).terms)


def _xring(ff: Ring, order: int) -> SeriesRing:
    return ring_make(RingSpec("series", base=ff.spec, order=order))


def flow_series_mode(field: VectorField, order: int, base=0, x_order: int | None = None) -> FlowSeries:
    """Flow with symbolic initial value x = base + X.

    Phi_n is a series in X valid to order x_order (default: ``order``).
    """
    ff = field.ring
    base = ff.coerce(base)
    x_order = order if x_order is None else x_order
    N = order - 1 + x_order
    F = field.expansion(base, N)
    xr = _xring(ff, N)
    phi0 = HurwitzSeries.variable(ff, N) + base
    terms = apply_series(F, order).terms if order else ()
    return FlowSeries(xr, base, (phi0,) + tuple(terms), "series")


def closed_form_flow(field: VectorField, x0, order: int) -> FlowSeries:
    """Taylor coefficients of the explicit solutions.

    const: x + a t;  affine: x + (a/b + x)(exp(bt) - 1);  exp: x - ln(1 - a c t)/c at x = 0.
    """
    ff = field.ring
    x0 = ff.coerce(x0)
    z = ff.zero()
    if isinstance(field, Constant):
        c = [x0, field.a] + [z] * order
    elif isinstance(field, Affine):
        if not field.b:
            c = [x0, field.a] + [z] * order
        else:
            k = ff.try_divide(field.a, field.b) + x0
            c, p = [x0], field.b
            for _ in range(order):
                c.append(k * p)
                p = p * field.b
    elif isinstance(field, ExpField):
        if x0:
            raise UnsupportedBasePoint("the exponential closed form is generated at x0 = 0")
        c = [x0]
        for n in range(1, order + 1):
            c.append(factorial(n - 1) * field.a**n * field.c ** (n - 1))
    else:
        raise UnsupportedKind(f"no closed form for {type(field).__name__}")
    return FlowSeries(ff, x0, tuple(ff.coerce(v) for v in c[: order + 1]))


# ---------------------------------------------------------------------------
# group law


@dataclass(frozen=True)
class BivariateFlow:
    """c[m][n]: coefficient of s^m t^n/(m! n!) in Phi(t, Phi(s, x0))."""

    coeffs: tuple
    ms: int
    mt: int

    def get(self, m: int, n: int):
        return self.coeffs[m][n]


def bivariate_composition(field: VectorField, x0, ms: int, mt: int) -> BivariateFlow:
    """Expand the flow started from the (series-valued) point Phi(s, x0)."""
    ff = field.ring
    x0 = ff.coerce(x0)
    N = ms + mt
    single = flow_at_point(field, x0, N)
    shift = HurwitzSeries(ff, (ff.zero(),) + single.coeffs[1 : ms + 1])
    F = field.expansion(x0, N)
    # derivatives of f at Phi(s): series in s, each truncated to its valid order
    at_s = taylor_shift(F, shift)
    inner = list(at_s.coeffs[:mt])
    img = apply_pointwise(inner).terms if mt else ()
    phi_s = shift + x0
    columns = [phi_s] + list(img)
    coeffs = []
    for m in range(ms + 1):
        row = []
        for n in range(mt + 1):
            col = columns[n]
            row.append(col.coeffs[m] if m <= col.order else None)
        coeffs.append(tuple(row))
    return BivariateFlow(tuple(coeffs), ms, mt)


def group_law_check(field: VectorField, x0=0, orders: tuple[int, int] = (4, 4)) -> bool:
    """Phi(t, Phi(s, x)) == Phi(s + t, x) coefficientwise: c[m][n] == Phi_{m+n}."""
    ms, mt = orders
    bi = bivariate_composition(field, x0, ms, mt)
    single = flow_at_point(field, x0, ms + mt)
    for m in range(ms + 1):
        for n in range(mt + 1):
            c = bi.get(m, n)
            if c is None:
                raise OrderExhausted(f"coefficient ({m}, {n}) is beyond the valid order")
            if c != single.coeffs[m + n]:
                return False
    return True


# ---------------------------------------------------------------------------
# differential identities


def pde_check(field: VectorField, depth: int, base=0) -> bool:
    """f(x) d/dx Phi == d/dt Phi == f(Phi), coefficientwise to ``depth``.

    Phi is taken in series mode.  f(Phi) is evaluated twice: by Bell composition
    of the derivative tower with the t-series Phi - x, and by a Taylor shift.
    """
    ff = field.ring
    base = ff.coerce(base)
    N = 2 * depth + 1
    F = field.expansion(base, N)
    xr = _xring(ff, N)
    derivs = delta_sequence(F)
    phi = [HurwitzSeries.variable(ff, N) + base] + list(apply_pointwise(derivs).terms)
    # f * dPhi_n/dx == Phi_{n+1}
    for n in range(depth):
        lhs = hurwitz_mul(F, derivative(phi[n]))
        if not series_eq(lhs, phi[n + 1], min(lhs.order, phi[n + 1].order)):
            return False
    # f(Phi) by composition: g(Y) = f(x + Y) has coefficients f^(k)(x)
    g = HurwitzSeries(xr, derivs[: depth + 1])
    ct = HurwitzSeries(xr, [HurwitzSeries.constant(ff, 0, N)] + phi[1 : depth + 1])
    composed = compose(g, ct)
    # and by shifting f's expansion by the t-series X + (Phi - x)
    cx = HurwitzSeries(xr, [phi[0] - base] + phi[1 : depth + 1])
    shifted = taylor_shift(F, cx).coeffs[0]
    for n in range(depth):
        if not coeff_eq(composed.coeffs[n], phi[n + 1]):
            return False
        if not coeff_eq(shifted.coeffs[n], phi[n + 1]):
            return False
    return True


def time_scale_check(field: VectorField, r, depth: int, x0=0) -> bool:
    """The flow of r f has coefficients r^n Phi_n."""
    r = field.ring.coerce(r)
    scaled = flow_at_point(field.scaled(r), x0, depth)
    plain = flow_at_point(field, x0, depth).star(r)
    return scaled.coeffs == plain.coeffs


def module_axioms_check(field: VectorField, x0, samples: dict, depth: int) -> dict:
    """The four time-action axioms as coefficient identities; returns per-axiom booleans.

    ``samples`` holds ring elements r, v, w (r scales the field).
    """
    ff = field.ring
    r, v, w = (ff.coerce(samples[k]) for k in ("r", "v", "w"))
    fr = field.scaled(r)
    base = flow_at_point(fr, x0, depth)
    out = {}
    # 1: composing and then rescaling time equals composing the rescaled flows
    bi = bivariate_composition(fr, x0, depth, depth)
    bi_v = bivariate_composition(fr.scaled(v), x0, depth, depth)
    ok = True
    for m in range(depth + 1):
        for n in range(depth + 1 - m):
            lhs = bi.get(m, n) * v ** (m + n)
            if lhs != bi_v.get(m, n) or lhs != base.coeffs[m + n] * v ** (m + n):
                ok = False
    out["axiom1"] = ok
    # 2: Phi * (v + w) == (Phi * v) o (Phi * w)
    lhs = base.star(v + w).coeffs
    ok = True
    for N in range(depth + 1):
        acc = ff.zero()
        for m in range(N + 1):
            acc = acc + comb(N, m) * w**m * v ** (N - m) * bi.get(m, N - m)
        ok = ok and acc == lhs[N]
    out["axiom2"] = ok
    # 3: Phi * (v w) == (Phi * v) * w
    out["axiom3"] = base.star(v * w).coeffs == base.star(v).star(w).coeffs
    # 4: Phi * 1 == Phi
    out["axiom4"] = base.star(ff.one()).coeffs == base.coeffs
    return out


def gmodule_identity_check(field: VectorField, a, depth: int) -> bool:
    """a Phi(t, x; f(a .)) == Phi(a t, a x; f) in series mode at base 0."""
    ff = field.ring
    a = ff.coerce(a)
    twisted = field.twisted(ff.one(), a)
    lhs = flow_series_mode(twisted, depth)
    rhs = flow_series_mode(field, depth)
    p = ff.one()
    for n in range(depth + 1):
        left = lhs.coeffs[n] * a
        right = scale_substitute(rhs.coeffs[n], a) * p
        if not series_eq(left, right, min(left.order, right.order)):
            return False
        p = p * a
    return True


def gmodule_orbit(field: VectorField, k: int, ring: Ring, bound_m: int = 3, order: int = 4) -> list[FlowSeries]:
    """One series-mode flow u Phi(t, x; a f(u .)) per group element, tagged with u.

    k = 1 runs over the units (free part |m| <= bound_m); k >= 2 over the
    solved pairs (a, b) with u = b / a.
    """
    ff = field.ring
    if k == 1:
        model = unit_group_model(ring)
        twists = [(ff.one(), ff.coerce(u)) for u in model.units(bound_m)]
    else:
        twists = []
        for p in solve_hk(ring, k):
            a = ff.coerce(p.a)
            twists.append((a, ff.try_divide(ff.coerce(p.b), a)))
    out = []
    for a, u in twists:
        fl = flow_series_mode(field.twisted(a, u), order)
        out.append(fl.scaled(u))
    return out


@dataclass(frozen=True)
class EquilibriumReport:
    field_zero: bool
    flow_constant: bool

    @property
    def agree(self) -> bool:
        return self.field_zero == self.flow_constant

    def __bool__(self):
        return self.field_zero and self.agree


def equilibrium_check(field: VectorField, x_star, order: int = 6) -> EquilibriumReport:
    """f(x*) == 0 compared with the flow through x* being constant."""
    x_star = field.ring.coerce(x_star)
    zero = field.vanishes_at(x_star)
    try:
        fl = flow_at_point(field, x_star, order)
    except UnsupportedBasePoint:
        if not isinstance(field, ExpField):
            raise
        # the derivative values at x* are exp(c x*) times those at 0, a nonzero factor
        fl = flow_at_point(field, 0, order)
    constant = all(not c for c in fl.coeffs[1:])
    return EquilibriumReport(zero, constant)


def equilibrium_invariance_check(field: VectorField, x_star, g) -> bool:
    """If f(x*) = 0 then x -> f(g x) vanishes at x*/g."""
    ff = field.ring
    g = ff.coerce(g)
    if not field.vanishes_at(ff.coerce(x_star)):
        return True
    return field.twisted(ff.one(), g).vanishes_at(ff.try_divide(ff.coerce(x_star), g))


# ---------------------------------------------------------------------------
# orbit sampling


def parse_grid(text: str) -> list[Fraction]:
    """``a:b:n`` -> n evenly spaced exact points from a to b."""
    try:
        a, b, n = text.split(":")
        a, b, n = Fraction(a), Fraction(b), int(n)
    except ValueError as exc:
        raise ParseError(f"grid must be a:b:n, got {text!r}") from exc
    if n < 1:
        raise ParseError("grid needs at least one point")
    if n == 1:
        return [a]
    return [a + (b - a) * Fraction(i, n - 1) for i in range(n)]


def orbit_samples(flow: FlowSeries, t_grid, precision: int = 15) -> list[tuple[str, ...]]:
    """Rows (t_re, t_im, phi_re, phi_im, tail_bound) of the truncated flow."""
    if flow.mode != "point":
        raise NotEmbeddable("series-mode flows have a symbolic base point")
    M = flow.order
    rows = []
    with mpmath.workdps(precision + 10):
        coeffs = [flow.ring.embed_complex(c, precision + 10) for c in flow.coeffs]
        for t in t_grid:
            if isinstance(t, (int, Fraction)):
                t = mpmath.mpf(Fraction(t).numerator) / Fraction(t).denominator
            tc = mpmath.mpc(t)
            acc = mpmath.mpc(0)
            p = mpmath.mpc(1)
            for n, c in enumerate(coeffs):
                acc += c * p / mpmath.factorial(n)
                p *= tc
            tail = abs(coeffs[M]) * abs(tc) ** M / mpmath.factorial(M)
            rows.append(
                tuple(mpmath.nstr(v, precision) for v in (tc.real, tc.imag, acc.real, acc.imag, tail))
            )
    return rows


CSV_HEADER = ("t_re", "t_im", "phi_re", "phi_im", "tail_bound")


def orbit_csv(flow: FlowSeries, t_grid, precision: int = 15) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_HEADER)
    wr.writerows(orbit_samples(flow, t_grid, precision))
    return buf.getvalue()
