"""The autonomous operator on derivative sequences, its inverse and its identities.

Given x = (x_0, x_1, ...), the image is A_1 = x_0 and

    A_{n+1} = sum_{k=1}^{n} B_{n,k}(A_1, ..., A_{n-k+1}) x_k.

When x is the derivative sequence of a series f, the same terms satisfy
A_{n+1} = f * (A_n)', which gives an independent second algorithm.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .bell import BellTable
from .errors import EmptyInput, NonzeroConstantTerm, OrderExhausted, ZeroLeadingTerm
from .hurwitz import (
    CoefficientSequence,
    HurwitzSeries,
    compose,
    delta_sequence,
    derivative,
    exp_series,
    hurwitz_mul,
    series_eq,
)
from .rings import Ring


@dataclass(frozen=True)
class AutonomousImage:
    terms: tuple
    mode: str  # "pointwise" or "series"
    validity: tuple | None = None

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]


def _terms(x) -> list:
    if isinstance(x, CoefficientSequence):
        return list(x.terms)
    return list(x)


def apply_pointwise(x) -> AutonomousImage:
    """Image of a finite sequence; output has the same length as the input.

    Entries may be ring elements or series (then the result is the series-mode
    image computed through the Bell recursion).
    """
    x = _terms(x)
    if not x:
        raise EmptyInput("the autonomous operator needs at least one term")
    zero = x[0] * 0
    series = isinstance(x[0], HurwitzSeries)
    A = [x[0]]
    table = BellTable()
    valid = x[0].order if series else None
    for n in range(1, len(x)):
        row = table.append(A[n - 1])
        acc = None
        for k in range(1, n + 1):
            if row[k] and x[k]:
                t = row[k] * x[k]
                acc = t if acc is None else acc + t
        acc = zero if acc is None else acc
        if series:
            # skipped zero factors still bound the valid order
            valid = min(valid, x[n].order)
            acc = acc.truncate(min(valid, acc.order))
        A.append(acc)
    validity = tuple(a.order for a in A) if series else None
    return AutonomousImage(tuple(A), "series" if series else "pointwise", validity)


def apply_series(f: HurwitzSeries, terms: int | None = None) -> AutonomousImage:
    """Series-mode image by the chain A_{n+1} = f * (A_n)'.

    A_n is valid to order N - n + 1, so at most N + 1 terms exist.
    """
    if terms is None:
        terms = f.order + 1
    if terms > f.order + 1:
        raise OrderExhausted(f"order {f.order} supports at most {f.order + 1} terms, asked for {terms}")
    A = [f]
    while len(A) < terms:
        A.append(hurwitz_mul(f, derivative(A[-1])))
    return AutonomousImage(tuple(A), "series", tuple(a.order for a in A))


def apply_series_bell(f: HurwitzSeries, terms: int | None = None) -> AutonomousImage:
    """Series-mode image through the Bell recursion on the derivative sequence."""
    img = apply_pointwise(delta_sequence(f))
    if terms is not None:
        if terms > len(img):
            raise OrderExhausted(f"order {f.order} supports at most {len(img)} terms, asked for {terms}")
        img = AutonomousImage(img.terms[:terms], img.mode, img.validity[:terms])
    return img


@dataclass(frozen=True)
class InverseResult:
    terms: tuple
    in_ring: bool


def invert(y, ring: Ring) -> InverseResult:
    """The unique x with apply_pointwise(x) = y, computed over the fraction field.

    Row n of the Bell table depends only on y_0..y_{n-1}, and B_{n,n} = y_0^n,
    so x_n is isolated linearly at each step.
    """
    y = _terms(y)
    if not y:
        raise EmptyInput("cannot invert an empty sequence")
    ff = ring.fraction_field()
    y = [ff.coerce(v) for v in y]
    if not y[0]:
        raise ZeroLeadingTerm("sequences with leading term 0 are not in the image")
    x = [y[0]]
    table = BellTable()
    for n in range(1, len(y)):
        row = table.append(y[n - 1])
        acc = y[n]
        for k in range(1, n):
            if row[k] and x[k]:
                acc = acc - row[k] * x[k]
        x.append(ff.try_divide(acc, row[n]))
    return InverseResult(tuple(x), all(ring.contains(v) for v in x))


def _valid_eq(a, b) -> bool:
    if isinstance(a, HurwitzSeries) and isinstance(b, HurwitzSeries):
        return series_eq(a, b, min(a.order, b.order))
    return a == b


def check_scaling(x, alpha, depth: int) -> bool:
    """A(alpha x)_n == alpha^n A(x)_n for n = 1..depth."""
    if isinstance(x, HurwitzSeries):
        lhs = apply_series(x * alpha, depth)
        rhs = apply_series(x, depth)
    else:
        x = _terms(x)[:depth]
        lhs = apply_pointwise([alpha * v for v in x])
        rhs = apply_pointwise(x)
    p = alpha
    for n in range(depth):
        if not _valid_eq(lhs[n], rhs[n] * p):
            return False
        p = p * alpha
    return True


def exp_factor_sides(f: HurwitzSeries, alpha, depth: int) -> tuple[list, list]:
    """Both sides of A(D(e^{aX} f)) = (e^{naX}) A(F) with F_n = sum_k C(n,k) a^{n-k} f^{(k)}."""
    ring = f.ring
    e = exp_series(ring, f.order, alpha)
    lhs = list(apply_series(hurwitz_mul(e, f), depth).terms)
    derivs = delta_sequence(f)
    F = []
    for n in range(f.order + 1):
        acc = None
        p = ring.one()
        # sum over k from n down to 0 so that alpha^(n-k) builds up incrementally
        for k in range(n, -1, -1):
            t = derivs[k].truncate(f.order - n) * (comb(n, k) * p)
            acc = t if acc is None else acc + t
            p = p * alpha
        F.append(acc)
    img = apply_pointwise(F[:depth])
    rhs = [hurwitz_mul(exp_series(ring, img[n].order, alpha * (n + 1)), img[n]) for n in range(depth)]
    return lhs, rhs


def check_exp_factor(f: HurwitzSeries, alpha, depth: int) -> bool:
    if depth > f.order:
        raise OrderExhausted(f"need order >= {depth + 1} for depth {depth}")
    lhs, rhs = exp_factor_sides(f, alpha, depth)
    return all(_valid_eq(a, b) for a, b in zip(lhs, rhs))


def exp_composition_sides(f: HurwitzSeries, depth: int) -> tuple[list, list]:
    """Both sides of A(D(exp f)) = (exp(n f)) A(Y) with Y_0 = 1, Y_n = complete Bell in f', f'', ..."""
    if f.coeffs[0]:
        raise NonzeroConstantTerm("f must vanish at 0")
    ring = f.ring
    N = f.order
    e = exp_series(ring, N)
    lhs = list(apply_series(compose(e, f), depth).terms)
    derivs = delta_sequence(f)
    table = BellTable()
    Y = [HurwitzSeries.constant(ring, ring.one(), N)]
    for n in range(1, N + 1):
        row = table.append(derivs[n])
        acc = row[1]
        for k in range(2, n + 1):
            acc = acc + row[k]
        Y.append(acc)
    img = apply_pointwise(Y[:depth])
    rhs = []
    for n in range(depth):
        a = img[n]
        rhs.append(hurwitz_mul(compose(exp_series(ring, a.order), (f * (n + 1)).truncate(a.order)), a))
    return lhs, rhs


def check_exp_composition(f: HurwitzSeries, depth: int) -> bool:
    if depth > f.order:
        raise OrderExhausted(f"need order >= {depth + 1} for depth {depth}")
    lhs, rhs = exp_composition_sides(f, depth)
    return all(_valid_eq(a, b) for a, b in zip(lhs, rhs))


# ordinary power series helpers for an independent nesting check


def _to_ordinary(f: HurwitzSeries) -> list:
    return [c * Fraction(1, factorial(n)) for n, c in enumerate(f.coeffs)]


def _ops_mul(a: list, b: list) -> list:
    n = min(len(a), len(b))
    return [sum((a[i] * b[m - i] for i in range(m + 1)), a[0] * 0) for m in range(n)]


def _ops_diff(a: list) -> list:
    return [a[i] * i for i in range(1, len(a))]


def nested_term(f: HurwitzSeries, n: int) -> list:
    """f d(f d(... f d(f))) with n factors of f, in ordinary power series form."""
    fo = _to_ordinary(f)
    g = fo
    for _ in range(n - 1):
        g = _ops_mul(fo, _ops_diff(g))
    return g


def check_nesting(f: HurwitzSeries, n_max: int = 5) -> bool:
    """The literal nested expansion matches the chain image for n = 1..n_max."""
    img = apply_series(f, min(n_max, f.order + 1))
    for n in range(1, len(img) + 1):
        nested = nested_term(f, n)
        hur = _to_ordinary(img[n - 1])
        if len(nested) != len(hur) or any(a != b for a, b in zip(nested, hur)):
            return False
    return True


def check_null_space(x) -> bool:
    """Sequences with x_0 = 0 map to the zero sequence."""
    return all(not a for a in apply_pointwise(x).terms)


def check_linear_part(x0, y0, a, b, length: int) -> bool:
    """On sequences (c, 0, 0, ...) the operator is linear."""
    z = x0 * 0

    def seq(c):
        return [c] + [z] * (length - 1)

    lhs = apply_pointwise(seq(a * x0 + b * y0)).terms
    fx, fy = apply_pointwise(seq(x0)).terms, apply_pointwise(seq(y0)).terms
    return all(l == a * u + b * v for l, u, v in zip(lhs, fx, fy))


def check_ideal_image(ring: Ring, a, x) -> bool:
    """Every term of A(a x) lies in the principal ideal (a).

    The cofactor a^n A(x)_n is exhibited and checked to lie in the ring, so no
    division is needed (series rings have no usable fraction field for this).
    """
    x = _terms(x)
    img = apply_pointwise([a * v for v in x]).terms
    base = apply_pointwise(x).terms
    p = a * 0 + 1
    for t, u in zip(img, base):
        q = p * u
        if not ring.contains(q) or not _valid_eq(t, a * q):
            return False
        p = p * a
    return True
