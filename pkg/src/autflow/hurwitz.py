"""Truncated Hurwitz series (exponential generating functions).

A series of order N stores a_0..a_N for sum a_n X^n/n!.  Storing the EGF
numerators keeps arithmetic inside the coefficient ring: the product is the
binomial convolution and the derivative is a left shift.

Series coefficients may themselves be series, which gives the ring towers
used for bivariate flows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .bell import BellTable
from .errors import NonzeroConstantTerm, OrderExceeded, OrderExhausted, ParseError, RingMismatch
from .rings import Ring, RingSpec, SeriesRing, parse_ring_spec, ring_make


def _depth(v) -> int:
    return v.depth if isinstance(v, HurwitzSeries) else 0


def same_ring(r1: Ring, r2: Ring) -> bool:
    if r1 == r2:
        return True
    return isinstance(r1, SeriesRing) and r1.same_tower(r2)


def _check_rings(f: HurwitzSeries, g: HurwitzSeries) -> None:
    if not same_ring(f.ring, g.ring):
        raise RingMismatch(f"series over {f.ring.spec} and {g.ring.spec}")


class HurwitzSeries:
    __slots__ = ("ring", "coeffs", "depth")

    def __init__(self, ring: Ring, coeffs, *, coerce: bool = True):
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        self.ring = ring
        self.coeffs = tuple(ring.coerce(c) for c in coeffs) if coerce else tuple(coeffs)
        self.depth = ring.depth + 1

    # constructors

    @classmethod
    def constant(cls, ring: Ring, c, order: int) -> HurwitzSeries:
        z = ring.zero()
        return cls(ring, [ring.coerce(c)] + [z] * order)

    @classmethod
    def variable(cls, ring: Ring, order: int) -> HurwitzSeries:
        """The series X (needs order >= 1 to be visible)."""
        c = [ring.zero()] * (order + 1)
        if order >= 1:
            c[1] = ring.one()
        return cls(ring, c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def parent(self) -> Ring:
        return ring_make(RingSpec("series", base=self.ring.spec, order=self.order))

    def truncate(self, order: int) -> HurwitzSeries:
        if order > self.order:
            raise OrderExceeded(f"cannot extend order {self.order} to {order}")
        return HurwitzSeries(self.ring, self.coeffs[: order + 1], coerce=False)

    def lift(self, ring: Ring) -> HurwitzSeries:
        return HurwitzSeries(ring, self.coeffs)

    # arithmetic

    def _scalar(self, other):
        """Coerce a lower-depth operand into the coefficient ring, or None."""
        d = _depth(other)
        if d < self.depth:
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                return other
            return self.ring.coerce(other)
        return None

    def __add__(self, other):
        if isinstance(other, HurwitzSeries) and other.depth == self.depth:
            return series_add(self, other)
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return HurwitzSeries(self.ring, (self.coeffs[0] + s,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return HurwitzSeries(self.ring, [-c for c in self.coeffs], coerce=False)

    def __sub__(self, other):
        if isinstance(other, HurwitzSeries) and other.depth == self.depth:
            return series_add(self, -other)
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return HurwitzSeries(self.ring, (self.coeffs[0] - s,) + self.coeffs[1:])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HurwitzSeries) and other.depth == self.depth:
            return hurwitz_mul(self, other)
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return HurwitzSeries(self.ring, [c * s for c in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, HurwitzSeries) and other.depth == self.depth:
            _check_rings(self, other)
            return hurwitz_mul(self, series_inverse(other, self.ring))
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return HurwitzSeries(self.ring, [self.ring.try_divide(c, s) for c in self.coeffs])

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = HurwitzSeries.constant(self.ring, self.ring.one(), self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, HurwitzSeries):
            if other.depth != self.depth:
                return False
            return self.order == other.order and self.coeffs == other.coeffs
        if _depth(other) < self.depth:
            try:
                s = self.ring.coerce(other)
            except Exception:
                return NotImplemented
            return self.coeffs[0] == s and not any(bool(c) for c in self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if not any(bool(c) for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __repr__(self):
        return f"HurwitzSeries({self.ring.spec}, {list(self.coeffs)!r})"

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def render(self) -> str:
        return "[" + ",".join(self.ring.render(c) for c in self.coeffs) + "]"


@dataclass(frozen=True)
class CoefficientSequence:
    """Finite prefix x_0..x_{L-1} of a sequence over a ring."""

    ring: Ring
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.ring.coerce(t) for t in self.terms))

    def __len__(self):
        return len(self.terms)

    @classmethod
    def from_series(cls, f: HurwitzSeries) -> CoefficientSequence:
        """The Hurwitz expansion at 0: the derivatives evaluated at 0 are the coefficients."""
        return cls(f.ring, f.coeffs)


def series_add(f: HurwitzSeries, g: HurwitzSeries) -> HurwitzSeries:
    _check_rings(f, g)
    n = min(f.order, g.order)
    return HurwitzSeries(f.ring, [f.coeffs[i] + g.coeffs[i] for i in range(n + 1)], coerce=False)


def series_scale(c, f: HurwitzSeries) -> HurwitzSeries:
    return f * c


def hurwitz_mul(f: HurwitzSeries, g: HurwitzSeries) -> HurwitzSeries:
    """Binomial convolution sum_k C(n,k) a_k b_{n-k}, to the smaller order."""
    _check_rings(f, g)
    N = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    zero = f.ring.zero()
    out = []
    for n in range(N + 1):
        acc = None
        for k in range(n + 1):
            ak, bk = a[k], b[n - k]
            if not ak or not bk:
                continue
            t = ak * bk
            c = comb(n, k)
            if c != 1:
                t = c * t
            acc = t if acc is None else acc + t
        out.append(zero if acc is None else acc)
    return HurwitzSeries(f.ring, out, coerce=False)


def derivative(f: HurwitzSeries) -> HurwitzSeries:
    if f.order == 0:
        raise OrderExhausted("cannot differentiate a series of order 0")
    return HurwitzSeries(f.ring, f.coeffs[1:], coerce=False)


def delta_sequence(f: HurwitzSeries) -> list[HurwitzSeries]:
    """f, f', f'', ..., down to the order-0 derivative."""
    return [HurwitzSeries(f.ring, f.coeffs[k:], coerce=False) for k in range(f.order + 1)]


def compose(f: HurwitzSeries, g: HurwitzSeries) -> HurwitzSeries:
    """f(g(X)) for g(0) = 0, by Faa di Bruno: c_n = sum_k B_{n,k}(g_1, ...) f_k."""
    _check_rings(f, g)
    if g.coeffs[0]:
        raise NonzeroConstantTerm("inner series must have zero constant term")
    N = min(f.order, g.order)
    zero = f.ring.zero()
    table = BellTable()
    out = [f.coeffs[0]]
    for n in range(1, N + 1):
        row = table.append(g.coeffs[n])
        acc = zero
        for k in range(1, n + 1):
            if f.coeffs[k] and row[k]:
                acc = acc + row[k] * f.coeffs[k]
        out.append(acc)
    return HurwitzSeries(f.ring, out, coerce=False)


def compose_horner(f: HurwitzSeries, g: HurwitzSeries) -> HurwitzSeries:
    """f(g(X)) by Horner's rule in ordinary power-series form (independent of Bell tables)."""
    _check_rings(f, g)
    if g.coeffs[0]:
        raise NonzeroConstantTerm("inner series must have zero constant term")
    f, g = _lift_to_field(f), _lift_to_field(g)
    N = min(f.order, g.order)
    zero = f.ring.zero()
    go = [g.coeffs[n] * Fraction(1, factorial(n)) for n in range(N + 1)]
    acc = [zero] * (N + 1)
    for k in range(N, -1, -1):
        # acc <- acc * g + f_k / k!
        prod = [zero] * (N + 1)
        for i, a in enumerate(acc):
            if a:
                for j in range(1, N + 1 - i):
                    if go[j]:
                        prod[i + j] = prod[i + j] + a * go[j]
        prod[0] = prod[0] + f.coeffs[k] * Fraction(1, factorial(k))
        acc = prod
    return HurwitzSeries(f.ring, [acc[n] * factorial(n) for n in range(N + 1)])


def scale_substitute(f: HurwitzSeries, a) -> HurwitzSeries:
    """f(aX): a_n -> a^n a_n."""
    a = f.ring.coerce(a)
    out, p = [], f.ring.one()
    for c in f.coeffs:
        out.append(p * c)
        p = p * a
    return HurwitzSeries(f.ring, out, coerce=False)


def _lift_to_field(f: HurwitzSeries) -> HurwitzSeries:
    ff = f.ring.fraction_field()
    return f if ff == f.ring else HurwitzSeries(ff, f.coeffs)


def taylor_shift(f: HurwitzSeries, c) -> HurwitzSeries:
    """Expansion of f(X + c): b_n = sum_{j=0}^{N-n} a_{n+j} c^j / j!.

    ``c`` may be a scalar of the fraction field or a series over it (in which
    case the result lives one level up the tower).  For a series ``c`` with zero
    constant term, b_n is exact only up to order N - n in c's variable and is
    truncated there.
    """
    f = _lift_to_field(f)
    N = f.order
    if _depth(c) > f.ring.depth:
        if not same_ring(c.ring, f.ring):
            c = c.lift(f.ring) if c.depth == f.ring.depth + 1 else c
        cser = c
        out_ring = cser.parent
        nilpotent = not cser.coeffs[0]
        powers = [HurwitzSeries.constant(cser.ring, cser.ring.one(), cser.order)]
        for j in range(1, N + 1):
            powers.append(powers[-1] * cser)
        out = []
        for n in range(N + 1):
            acc = powers[0] * f.coeffs[n]
            for j in range(1, N - n + 1):
                if f.coeffs[n + j]:
                    acc = acc + powers[j] * (f.coeffs[n + j] * Fraction(1, factorial(j)))
            if nilpotent and N - n < acc.order:
                acc = acc.truncate(N - n)
            out.append(acc)
        return HurwitzSeries(out_ring, out, coerce=False)
    c = f.ring.coerce(c)
    powers = [f.ring.one()]
    for j in range(1, N + 1):
        powers.append(powers[-1] * c)
    out = []
    for n in range(N + 1):
        acc = f.coeffs[n]
        for j in range(1, N - n + 1):
            if f.coeffs[n + j]:
                acc = acc + f.coeffs[n + j] * powers[j] * Fraction(1, factorial(j))
        out.append(acc)
    return HurwitzSeries(f.ring, out)


def coeff_eq(a, b) -> bool:
    """Equality that compares nested series only on their common valid order."""
    if isinstance(a, HurwitzSeries) and isinstance(b, HurwitzSeries):
        n = min(a.order, b.order)
        return all(coeff_eq(a.coeffs[i], b.coeffs[i]) for i in range(n + 1))
    return a == b


def series_eq(f: HurwitzSeries, g: HurwitzSeries, upto: int) -> bool:
    if upto > min(f.order, g.order):
        raise OrderExceeded(f"cannot compare to order {upto}; orders are {f.order}, {g.order}")
    return all(coeff_eq(f.coeffs[i], g.coeffs[i]) for i in range(upto + 1))


def evaluate(f: HurwitzSeries, c):
    """Truncated sum a_n c^n / n! in the fraction field."""
    f = _lift_to_field(f)
    c = f.ring.coerce(c)
    acc, p = f.ring.zero(), f.ring.one()
    for n, a in enumerate(f.coeffs):
        if a:
            acc = acc + a * p * Fraction(1, factorial(n))
        p = p * c
    return acc


def exp_series(ring: Ring, order: int, alpha=1) -> HurwitzSeries:
    """exp(alpha X): coefficients alpha^n."""
    return scale_substitute(HurwitzSeries(ring, [ring.one()] * (order + 1)), alpha)


def series_inverse(f: HurwitzSeries, ring: Ring | None = None) -> HurwitzSeries:
    """1/f for f with a unit constant term."""
    ring = ring or f.ring
    inv0 = ring.try_invert(f.coeffs[0])
    g = [inv0]
    for n in range(1, f.order + 1):
        acc = ring.zero()
        for k in range(1, n + 1):
            if f.coeffs[k]:
                acc = acc + comb(n, k) * (f.coeffs[k] * g[n - k])
        g.append(-(inv0 * acc))
    return HurwitzSeries(ring, g)


def to_json(f: HurwitzSeries) -> dict:
    return {"ring": str(f.ring.spec), "order": f.order, "egf_coeffs": [f.ring.render(c) for c in f.coeffs]}


def from_json(obj: dict) -> HurwitzSeries:
    try:
        ring = ring_make(parse_ring_spec(obj["ring"]))
        coeffs = [ring.parse(str(c)) for c in obj["egf_coeffs"]]
        order = int(obj.get("order", len(coeffs) - 1))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed series object: {exc}") from exc
    if order != len(coeffs) - 1:
        raise ParseError(f"order {order} does not match {len(coeffs)} coefficients")
    return HurwitzSeries(ring, coeffs)
