"""Exact arithmetic for the integral domains used throughout the package.

Ring *elements* are plain Python values so that generic code (Bell
polynomials, the autonomous operator, flows) can be written with ordinary
operators:

* ``int`` for the integers,
* ``fractions.Fraction`` for the rationals,
* :class:`QuadElement` for ``Z[i]``, ``Z[w]``, ``Z[sqrt d]`` and their fraction fields,
* :class:`CycElement` for cyclotomic fields ``Q(zeta_m)`` (exact roots of unity),
* :class:`autflow.hurwitz.HurwitzSeries` for truncated series rings.

A ring *handle* (see :func:`ring_make`) supplies the context plain values do not
carry: parsing, rendering, unit tests, inversion and the fraction field.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import (
    DivisionByZero,
    InvalidSpec,
    NotAUnit,
    NotDivisible,
    NotEmbeddable,
    ParseError,
    RingMismatch,
    Unsupported,
)

Scalar = (int, Fraction)


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v.numerator)
    return v


def _frac_str(v) -> str:
    v = _norm(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _totient(n: int) -> int:
    r = n
    for p in _prime_factors(n):
        r = r // p * (p - 1)
    return r


def _mobius(n: int) -> int:
    if not is_squarefree(n):
        return 0
    return -1 if len(_prime_factors(n)) % 2 else 1


# ---------------------------------------------------------------------------
# quadratic rings


@dataclass(frozen=True)
class QuadAlgebra:
    """Basis {1, theta} with theta**2 = p + q*theta."""

    p: int
    q: int
    symbol: str

    def theta(self, precision: int = 15) -> mpmath.mpc:
        with mpmath.workdps(precision + 5):
            disc = mpmath.mpf(self.q * self.q + 4 * self.p)
            root = mpmath.sqrt(disc) if disc >= 0 else mpmath.mpc(0, mpmath.sqrt(-disc))
            return (self.q + root) / 2


GAUSSIAN = QuadAlgebra(-1, 0, "i")
EISENSTEIN = QuadAlgebra(-1, -1, "w")


def real_quadratic_algebra(d: int) -> QuadAlgebra:
    # w_d = (1 + sqrt d)/2 when d = 1 mod 4, else sqrt d
    if d % 4 == 1:
        return QuadAlgebra((d - 1) // 4, 1, "r")
    return QuadAlgebra(d, 0, "r")


class QuadElement:
    """x + y*theta in a quadratic algebra; coordinates are int or Fraction."""

    __slots__ = ("x", "y", "alg")

    def __init__(self, x, y, alg: QuadAlgebra):
        self.x = _norm(x)
        self.y = _norm(y)
        self.alg = alg

    def _lift(self, other):
        if isinstance(other, QuadElement):
            if other.alg != self.alg:
                raise RingMismatch(f"cannot combine {self.alg} with {other.alg}")
            return other
        if isinstance(other, Scalar):
            return QuadElement(other, 0, self.alg)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.x + o.x, self.y + o.y, self.alg)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.x, -self.y, self.alg)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.x - o.x, self.y - o.y, self.alg)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return QuadElement(self.x * other, self.y * other, self.alg)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        p, q = self.alg.p, self.alg.q
        yy = self.y * o.y
        return QuadElement(self.x * o.x + p * yy, self.x * o.y + self.y * o.x + q * yy, self.alg)

    __rmul__ = __mul__

    def conj(self) -> QuadElement:
        return QuadElement(self.x + self.alg.q * self.y, -self.y, self.alg)

    def norm(self):
        return _norm(self.x * self.x + self.alg.q * self.x * self.y - self.alg.p * self.y * self.y)

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            if other == 0:
                raise DivisionByZero("division by zero")
            return QuadElement(Fraction(self.x) / other, Fraction(self.y) / other, self.alg)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise DivisionByZero("division by zero")
        return (self * o.conj()) / Fraction(n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (QuadElement(1, 0, self.alg) / self) ** (-e)
        result = QuadElement(1, 0, self.alg)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            return self.alg == other.alg and self.x == other.x and self.y == other.y
        if isinstance(other, Scalar):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.alg))

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def is_integral(self) -> bool:
        return isinstance(self.x, int) and isinstance(self.y, int)

    def __repr__(self):
        return f"QuadElement({self.x!r}, {self.y!r}, {self.alg.symbol!r})"


# ---------------------------------------------------------------------------
# cyclotomic fields


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    assert not any(num[:dd]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low degree first."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


def _reduce_mod_cyclotomic(coeffs: list, m: int) -> tuple:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    c = list(coeffs) + [0] * max(0, deg - len(coeffs))
    for i in range(len(c) - 1, deg - 1, -1):
        t = c[i]
        if t:
            for j, pj in enumerate(phi):
                c[i - deg + j] -= t * pj
    return tuple(_norm(v) for v in c[:deg])


class CycElement:
    """Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        self.m = m
        self.coeffs = _reduce_mod_cyclotomic(list(coeffs), m)

    @classmethod
    def root(cls, q) -> CycElement:
        """exp(2*pi*i*q) for rational q."""
        q = Fraction(q) % 1
        m = q.denominator
        c = [0] * (q.numerator + 1)
        c[q.numerator] = 1
        return cls(m, c)

    def lift(self, M: int) -> CycElement:
        if M == self.m:
            return self
        if M % self.m:
            raise RingMismatch(f"Q(zeta_{self.m}) does not embed in Q(zeta_{M})")
        step = M // self.m
        c = [0] * (step * len(self.coeffs))
        for j, v in enumerate(self.coeffs):
            c[j * step] = v
        return CycElement(M, c)

    def _pair(self, other):
        if isinstance(other, Scalar):
            return self, CycElement(self.m, [other])
        if isinstance(other, CycElement):
            L = math.lcm(self.m, other.m)
            return self.lift(L), other.lift(L)
        return None, None

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycElement(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycElement(self.m, [-v for v in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycElement(a.m, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return CycElement(self.m, [v * other for v in self.coeffs])
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        prod = [0] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return CycElement(a.m, prod)

    __rmul__ = __mul__

    def galois(self, j: int) -> CycElement:
        """Image under zeta -> zeta**j (j coprime to m)."""
        c = [0] * self.m
        for i, v in enumerate(self.coeffs):
            c[(i * j) % self.m] += v
        return CycElement(self.m, c)

    def inverse(self) -> CycElement:
        if not self:
            raise DivisionByZero("division by zero")
        others = CycElement(self.m, [1])
        for j in range(2, self.m):
            if math.gcd(j, self.m) == 1:
                others = others * self.galois(j)
        norm = (self * others).coeffs[0]
        return others * Fraction(1, 1) / norm

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            if other == 0:
                raise DivisionByZero("division by zero")
            return CycElement(self.m, [Fraction(v) / other for v in self.coeffs])
        if isinstance(other, CycElement):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Scalar):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = CycElement(self.m, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycElement):
            a, b = self._pair(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self):
        # average of the Galois conjugates: independent of the conductor used
        t = Fraction(0)
        for i, v in enumerate(self.coeffs):
            if v:
                mm = self.m // math.gcd(i, self.m)
                t += v * Fraction(_mobius(mm), _totient(mm))
        return hash(_norm(t))

    def __bool__(self):
        return any(self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.coeffs)

    def root_exponent(self) -> Fraction | None:
        """q in [0,1) if this element is exp(2*pi*i*q), else None."""
        for j in range(self.m):
            if self == CycElement.root(Fraction(j, self.m)):
                return Fraction(j, self.m)
        if self.m % 2:
            for j in range(2 * self.m):
                if self == CycElement.root(Fraction(j, 2 * self.m)):
                    return Fraction(j, 2 * self.m)
        return None

    def __repr__(self):
        return f"CycElement({self.m}, {self.coeffs!r})"


# ---------------------------------------------------------------------------
# ring spec strings


KINDS = ("integers", "rationals", "gaussian", "eisenstein", "quadreal", "roots", "fraction", "series")


@dataclass(frozen=True)
class RingSpec:
    kind: str
    d: int | None = None
    m: int | str | None = None
    base: RingSpec | None = None
    order: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown ring kind {self.kind!r}")
        if self.kind == "quadreal":
            if not isinstance(self.d, int) or self.d <= 1 or not is_squarefree(self.d):
                raise InvalidSpec(f"QuadReal needs a square-free d > 1, got {self.d!r}")
        if self.kind == "roots":
            if self.m != "all" and (not isinstance(self.m, int) or self.m <= 0):
                raise InvalidSpec(f"RootsOfUnity needs m > 0 or 'all', got {self.m!r}")
        if self.kind in ("fraction", "series") and self.base is None:
            raise InvalidSpec(f"{self.kind} ring needs a base ring")
        if self.kind == "series" and (not isinstance(self.order, int) or self.order < 0):
            raise InvalidSpec(f"series ring needs order >= 0, got {self.order!r}")

    def __str__(self):
        simple = {"integers": "z", "rationals": "q", "gaussian": "gauss", "eisenstein": "eis"}
        if self.kind in simple:
            return simple[self.kind]
        if self.kind == "quadreal":
            return f"quad:{self.d}"
        if self.kind == "roots":
            return f"roots:{self.m}"
        if self.kind == "fraction":
            return f"frac:{self.base}"
        return f"series:{self.order}:{self.base}"


_ALIASES = {
    "z": "integers", "int": "integers", "integers": "integers", "zz": "integers",
    "q": "rationals", "rationals": "rationals", "qq": "rationals",
    "gauss": "gaussian", "gaussian": "gaussian", "zi": "gaussian",
    "eis": "eisenstein", "eisenstein": "eisenstein", "zw": "eisenstein",
}


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``z``, ``q``, ``gauss``, ``eis``, ``quad:2``, ``roots:12``,
    ``roots:all``, ``frac:<spec>``, ``series:<N>:<spec>`` (plus ``qi``/``qw``
    shorthands for the Gaussian and Eisenstein fraction fields)."""
    t = text.strip().lower()
    if t in _ALIASES:
        return RingSpec(_ALIASES[t])
    if t == "qi":
        return RingSpec("fraction", base=RingSpec("gaussian"))
    if t == "qw":
        return RingSpec("fraction", base=RingSpec("eisenstein"))
    head, _, rest = t.partition(":")
    try:
        if head == "quad":
            return RingSpec("quadreal", d=int(rest))
        if head == "roots":
            return RingSpec("roots", m="all" if rest == "all" else int(rest))
        if head == "frac":
            return RingSpec("fraction", base=parse_ring_spec(rest))
        if head == "series":
            n, _, inner = rest.partition(":")
            return RingSpec("series", order=int(n), base=parse_ring_spec(inner))
    except ValueError as exc:
        if isinstance(exc, InvalidSpec):
            raise
        raise InvalidSpec(f"bad ring spec {text!r}") from exc
    raise InvalidSpec(f"bad ring spec {text!r}")


# ---------------------------------------------------------------------------
# element text syntax

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:\s*/\s*\d+)?)?\s*\*?\s*"
    r"(?P<atom>i|w|r|zeta\(\s*-?\d+(?:\s*/\s*\d+)?\s*\))?\s*"
)


def _parse_terms(text: str) -> list[tuple[Fraction, str | None]]:
    s = text.strip()
    if not s:
        raise ParseError("empty element literal")
    pos, terms = 0, []
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if mt is None or mt.end() == pos:
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        if terms and not mt.group("sign"):
            raise ParseError(f"missing sign between terms in {text!r}")
        coef, atom = mt.group("coef"), mt.group("atom")
        if coef is None and atom is None:
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        c = Fraction(coef.replace(" ", "")) if coef else Fraction(1)
        if mt.group("sign") == "-":
            c = -c
        if atom and atom.startswith("zeta"):
            atom = "zeta:" + atom[5:-1].replace(" ", "")
        terms.append((c, atom))
        pos = mt.end()
    return terms


def _join_terms(parts: list[tuple[object, str]]) -> str:
    """parts: (coefficient, suffix); zero coefficients dropped."""
    out = ""
    for c, suffix in parts:
        if c == 0:
            continue
        s = _frac_str(c) + suffix
        if out and not s.startswith("-"):
            out += "+"
        out += s
    return out or "0"


# ---------------------------------------------------------------------------
# ring handles


class Ring:
    """Common interface of all ring handles."""

    depth = 0
    is_field = False

    def __init__(self, spec: RingSpec):
        self.spec = spec

    def __eq__(self, other):
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"<ring {self.spec}>"

    # arithmetic is delegated to the element operators
    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def from_int(self, n: int):
        return self.coerce(n)

    def add(self, x, y):
        return self.coerce(x + y)

    def negate(self, x):
        return self.coerce(-x)

    def multiply(self, x, y):
        return self.coerce(x * y)

    def equal(self, x, y) -> bool:
        return x == y

    def coerce(self, v):
        raise NotImplementedError

    def contains(self, v) -> bool:
        raise NotImplementedError

    def is_unit(self, v) -> bool:
        raise NotImplementedError

    def fraction_field(self) -> Ring:
        raise NotImplementedError

    def try_invert(self, v):
        """Multiplicative inverse inside this ring."""
        if v == 0:
            raise DivisionByZero(f"0 has no inverse in {self.spec}")
        if not self.is_unit(v):
            raise NotAUnit(f"{self.render(v)} is not a unit of {self.spec}")
        ff = self.fraction_field()
        return self.coerce(ff.one() / ff.coerce(v))

    def try_divide(self, x, y):
        if y == 0:
            raise DivisionByZero("division by zero")
        ff = self.fraction_field()
        q = ff.coerce(x) / ff.coerce(y)
        if not self.contains(q):
            raise NotDivisible(f"{self.render(y)} does not divide {self.render(x)} in {self.spec}")
        return self.coerce(q)

    def parse(self, text: str):
        raise NotImplementedError

    def render(self, v) -> str:
        raise NotImplementedError

    def random(self, rng: random.Random, bound: int = 5):
        raise NotImplementedError

    def embed_complex(self, v, precision: int = 15) -> mpmath.mpc:
        raise NotEmbeddable(f"{self.spec} has no complex embedding")


def _scalar_from_terms(terms, integral: bool, text: str):
    if any(a is not None for _, a in terms):
        raise ParseError(f"unexpected generator in {text!r}")
    v = sum((c for c, _ in terms), Fraction(0))
    if integral and v.denominator != 1:
        raise ParseError(f"{text!r} is not an integer")
    return v


class Integers(Ring):
    def coerce(self, v):
        if isinstance(v, bool):
            return int(v)
        if isinstance(v, int):
            return v
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        if isinstance(v, (QuadElement, CycElement)) and v == _scalar_part(v):
            return self.coerce(_scalar_part(v))
        if isinstance(v, (Fraction, QuadElement, CycElement)):
            raise NotDivisible(f"{v!r} is not an integer")
        raise RingMismatch(f"cannot coerce {v!r} into Z")

    def contains(self, v) -> bool:
        return isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)

    def is_unit(self, v) -> bool:
        return v == 1 or v == -1

    def fraction_field(self):
        return ring_make(RingSpec("rationals"))

    def parse(self, text):
        return int(_scalar_from_terms(_parse_terms(text), True, text))

    def render(self, v):
        return str(self.coerce(v))

    def random(self, rng, bound=5):
        return rng.randint(-bound, bound)

    def embed_complex(self, v, precision=15):
        return mpmath.mpc(v)


def _scalar_part(v):
    if isinstance(v, QuadElement):
        return v.x
    if isinstance(v, CycElement):
        return v.coeffs[0]
    return v


class Rationals(Ring):
    is_field = True

    def coerce(self, v):
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        if isinstance(v, (QuadElement, CycElement)) and v == _scalar_part(v):
            return Fraction(_scalar_part(v))
        raise RingMismatch(f"cannot coerce {v!r} into Q")

    def contains(self, v) -> bool:
        return isinstance(v, (int, Fraction))

    def is_unit(self, v) -> bool:
        return v != 0

    def fraction_field(self):
        return self

    def parse(self, text):
        return _scalar_from_terms(_parse_terms(text), False, text)

    def render(self, v):
        return _frac_str(self.coerce(v))

    def random(self, rng, bound=5):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def embed_complex(self, v, precision=15):
        with mpmath.workdps(precision):
            return mpmath.mpc(mpmath.mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else v)


class QuadraticRing(Ring):
    """Z[theta] (or Q(theta) when ``field``) for one of the quadratic algebras."""

    def __init__(self, spec, alg: QuadAlgebra, field: bool):
        super().__init__(spec)
        self.alg = alg
        self.is_field = field

    @property
    def generator(self) -> QuadElement:
        return QuadElement(0, 1, self.alg)

    def coerce(self, v):
        if isinstance(v, Scalar):
            e = QuadElement(v, 0, self.alg)
        elif isinstance(v, QuadElement):
            if v.alg != self.alg:
                raise RingMismatch(f"element of another quadratic ring: {v!r}")
            e = v
        else:
            raise RingMismatch(f"cannot coerce {v!r} into {self.spec}")
        if not self.is_field and not e.is_integral():
            raise NotDivisible(f"{v!r} is not integral")
        return e

    def contains(self, v) -> bool:
        if isinstance(v, Scalar):
            return self.is_field or self.coerce_ok(v)
        if isinstance(v, QuadElement) and v.alg == self.alg:
            return self.is_field or v.is_integral()
        return False

    @staticmethod
    def coerce_ok(v) -> bool:
        return isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)

    def is_unit(self, v) -> bool:
        if not self.contains(v) or v == 0:
            return False
        if self.is_field:
            return True
        return self.coerce(v).norm() in (1, -1)

    def fraction_field(self):
        if self.is_field:
            return self
        return ring_make(RingSpec("fraction", base=self.spec))

    def parse(self, text):
        x = y = Fraction(0)
        for c, atom in _parse_terms(text):
            if atom is None:
                x += c
            elif atom == self.alg.symbol:
                y += c
            else:
                raise ParseError(f"generator {atom!r} not valid in {self.spec}")
        e = QuadElement(x, y, self.alg)
        if not self.is_field and not e.is_integral():
            raise ParseError(f"{text!r} is not integral in {self.spec}")
        return e

    def render(self, v):
        e = self.coerce(v)
        return _join_terms([(e.x, ""), (e.y, self.alg.symbol)])

    def random(self, rng, bound=5):
        if self.is_field:
            return QuadElement(
                Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
                Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
                self.alg,
            )
        return QuadElement(rng.randint(-bound, bound), rng.randint(-bound, bound), self.alg)

    def embed_complex(self, v, precision=15):
        e = self.coerce(v)
        with mpmath.workdps(precision + 5):
            x = mpmath.mpf(Fraction(e.x).numerator) / Fraction(e.x).denominator
            y = mpmath.mpf(Fraction(e.y).numerator) / Fraction(e.y).denominator
            return x + y * self.alg.theta(precision)


class CyclotomicRing(Ring):
    """Q(zeta_m): exact arithmetic on roots of unity and their combinations.

    With ``m == "all"`` elements keep their own conductor and binary operations
    lift to the least common multiple.
    """

    is_field = True

    def __init__(self, spec, m):
        super().__init__(spec)
        self.m = m

    def root(self, q) -> CycElement:
        r = CycElement.root(q)
        return r if self.m == "all" else r.lift(self.m) if self.m % r.m == 0 else self._bad_root(q)

    def _bad_root(self, q):
        raise RingMismatch(f"zeta({q}) is not in Q(zeta_{self.m})")

    def coerce(self, v):
        base = 1 if self.m == "all" else self.m
        if isinstance(v, Scalar):
            return CycElement(base, [v])
        if isinstance(v, CycElement):
            if self.m == "all":
                return v
            return v.lift(self.m)
        raise RingMismatch(f"cannot coerce {v!r} into {self.spec}")

    def contains(self, v) -> bool:
        if isinstance(v, Scalar):
            return True
        if isinstance(v, CycElement):
            return self.m == "all" or self.m % v.m == 0
        return False

    def is_unit(self, v) -> bool:
        return self.contains(v) and v != 0

    def fraction_field(self):
        return self

    def parse(self, text):
        acc = self.coerce(0)
        for c, atom in _parse_terms(text):
            if atom is None:
                acc = acc + c
            elif atom.startswith("zeta:"):
                acc = acc + self.root(Fraction(atom[5:])) * c
            else:
                raise ParseError(f"generator {atom!r} not valid in {self.spec}")
        return acc

    def render(self, v):
        e = self.coerce(v)
        if e.is_rational():
            return _frac_str(e.coeffs[0])
        q = e.root_exponent()
        if q is not None:
            return f"zeta({q.numerator}/{q.denominator})"
        parts = []
        for j, c in enumerate(e.coeffs):
            if j == 0:
                parts.append((c, ""))
            else:
                q = Fraction(j, e.m)
                parts.append((c, f"*zeta({q.numerator}/{q.denominator})"))
        return _join_terms(parts)

    def random(self, rng, bound=5):
        m = 12 if self.m == "all" else self.m
        n = _totient(m)
        return CycElement(m, [rng.randint(-bound, bound) for _ in range(n)])

    def embed_complex(self, v, precision=15):
        e = self.coerce(v)
        with mpmath.workdps(precision + 5):
            acc = mpmath.mpc(0)
            for j, c in enumerate(e.coeffs):
                if c:
                    c = Fraction(c)
                    acc += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * j) / e.m)
            return acc


class SeriesRing(Ring):
    """Truncated Hurwitz series of nominal order N over a base ring (a ring tower)."""

    def __init__(self, spec, base: Ring, order: int):
        super().__init__(spec)
        self.base = base
        self.order = order
        self.depth = base.depth + 1
        self.is_field = False

    def same_tower(self, other: Ring) -> bool:
        # nominal order is bookkeeping only; individual series carry their own
        return isinstance(other, SeriesRing) and (
            self.base == other.base or (isinstance(self.base, SeriesRing) and self.base.same_tower(other.base))
        )

    def coerce(self, v):
        from .hurwitz import HurwitzSeries

        if isinstance(v, HurwitzSeries) and v.depth == self.depth:
            return v
        return HurwitzSeries.constant(self.base, self.base.coerce(v), self.order)

    def contains(self, v) -> bool:
        from .hurwitz import HurwitzSeries

        if isinstance(v, HurwitzSeries) and v.depth == self.depth:
            return all(self.base.contains(c) for c in v.coeffs)
        return self.base.contains(v)

    def is_unit(self, v) -> bool:
        return self.contains(v) and self.base.is_unit(self.coerce(v).coeffs[0])

    def try_invert(self, v):
        from .hurwitz import series_inverse

        if not self.is_unit(v):
            raise NotAUnit(f"series with non-unit constant term in {self.spec}")
        return series_inverse(self.coerce(v), self.base)

    def fraction_field(self):
        # coefficientwise lift; division by series with a unit constant term
        return ring_make(RingSpec("series", base=self.base.fraction_field().spec, order=self.order))

    def parse(self, text):
        from .hurwitz import HurwitzSeries

        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ParseError(f"series literal must be bracketed: {text!r}")
        items, depth, cur = [], 0, ""
        for ch in text[1:-1]:
            if ch == "," and depth == 0:
                items.append(cur)
                cur = ""
                continue
            depth += (ch in "[(") - (ch in "])")
            cur += ch
        items.append(cur)
        items = [t.strip().strip('"') for t in items]
        if depth or not all(items):
            raise ParseError(f"malformed series literal {text!r}")
        return HurwitzSeries(self.base, [self.base.parse(t) for t in items])

    def render(self, v):
        s = self.coerce(v)
        return "[" + ",".join(self.base.render(c) for c in s.coeffs) + "]"

    def random(self, rng, bound=5):
        from .hurwitz import HurwitzSeries

        return HurwitzSeries(self.base, [self.base.random(rng, bound) for _ in range(self.order + 1)])


@lru_cache(maxsize=None)
def _make(spec: RingSpec) -> Ring:
    k = spec.kind
    if k == "integers":
        return Integers(spec)
    if k == "rationals":
        return Rationals(spec)
    if k == "gaussian":
        return QuadraticRing(spec, GAUSSIAN, False)
    if k == "eisenstein":
        return QuadraticRing(spec, EISENSTEIN, False)
    if k == "quadreal":
        return QuadraticRing(spec, real_quadratic_algebra(spec.d), False)
    if k == "roots":
        return CyclotomicRing(spec, spec.m)
    if k == "series":
        return SeriesRing(spec, _make(spec.base), spec.order)
    # fraction field
    base = _make(spec.base)
    if isinstance(base, (Integers, Rationals)):
        return _make(RingSpec("rationals"))
    if isinstance(base, QuadraticRing):
        return QuadraticRing(RingSpec("fraction", base=base.spec) if not base.is_field else base.spec, base.alg, True)
    if isinstance(base, CyclotomicRing):
        return base
    if isinstance(base, SeriesRing):
        return base.fraction_field()
    raise Unsupported(f"no fraction field for {spec.base}")


def ring_make(spec: RingSpec | str) -> Ring:
    """Return the (cached) ring handle for a spec object or spec string."""
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    return _make(spec)


# ---------------------------------------------------------------------------
# unit groups


@dataclass(frozen=True)
class UnitGroupModel:
    torsion_order: int
    torsion_generator: object
    free_rank: int
    fundamental_unit: object | None = None

    def torsion_units(self) -> list:
        z = self.torsion_generator
        out, cur = [], z ** 0 if not isinstance(z, int) else 1
        for _ in range(self.torsion_order):
            out.append(cur)
            cur = cur * z
        return out

    def units(self, bound_m: int = 3) -> list:
        """Torsion units times eps**m for |m| <= bound_m (free part truncated)."""
        tors = self.torsion_units()
        if self.free_rank == 0:
            return tors
        eps = self.fundamental_unit
        return [t * eps**m for m in range(-bound_m, bound_m + 1) for t in tors]


def unit_group_model(ring: Ring) -> UnitGroupModel:
    spec = ring.spec
    if spec.kind == "integers":
        return UnitGroupModel(2, -1, 0)
    if spec.kind == "gaussian":
        return UnitGroupModel(4, QuadElement(0, 1, GAUSSIAN), 0)
    if spec.kind == "eisenstein":
        return UnitGroupModel(6, QuadElement(0, -1, EISENSTEIN), 0)
    if spec.kind == "quadreal":
        alg = real_quadratic_algebra(spec.d)
        eps = {2: (1, 1), 3: (2, 1), 5: (0, 1)}.get(spec.d)
        if eps is None:
            raise Unsupported(f"no built-in fundamental unit for d={spec.d}")
        return UnitGroupModel(2, QuadElement(-1, 0, alg), 1, QuadElement(*eps, alg))
    if spec.kind == "roots" and spec.m != "all":
        return UnitGroupModel(spec.m, CycElement.root(Fraction(1, spec.m)), 0)
    raise Unsupported(f"no unit group model for {spec}")


def embed_complex(v, ring: Ring | None = None, precision: int = 15) -> mpmath.mpc:
    """Complex approximation of an exact element (ring inferred when omitted)."""
    if ring is None:
        ring = infer_ring(v)
    return ring.embed_complex(v, precision)


def infer_ring(v) -> Ring:
    if isinstance(v, bool):
        raise RingMismatch("booleans are not ring elements")
    if isinstance(v, int):
        return ring_make("z")
    if isinstance(v, Fraction):
        return ring_make("q")
    if isinstance(v, QuadElement):
        for name in ("gauss", "eis"):
            r = ring_make(name)
            if r.alg == v.alg:
                return r if v.is_integral() else r.fraction_field()
        # real quadratic: recover d from the algebra
        d = v.alg.p if v.alg.q == 0 else 4 * v.alg.p + 1
        r = ring_make(RingSpec("quadreal", d=d))
        return r if v.is_integral() else r.fraction_field()
    if isinstance(v, CycElement):
        return ring_make(RingSpec("roots", m="all"))
    raise NotEmbeddable(f"cannot infer an embeddable ring for {v!r}")
