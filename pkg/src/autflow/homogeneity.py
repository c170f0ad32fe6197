"""Homogeneity groups of the autonomous operator.

A unit sequence h is k-homogeneous when A(h x) = h^k A(x) termwise.  Such
sequences are exactly h_n = a^(1-n) b^n with a^(k-1) = 1 and b^(k-1) = a, so
each group is a finite set of pairs (a, b) drawn from the torsion units.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .autonomous import apply_pointwise
from .errors import BadRange, InvalidSpec, NotClosed
from .rings import CycElement, Ring, ring_make, unit_group_model


@dataclass(frozen=True)
class HomogeneityPair:
    ring: Ring
    k: int
    a: object
    b: object

    def __post_init__(self):
        if self.k < 1:
            raise BadRange(f"k must be >= 1, got {self.k}")
        if self.k == 1:
            if self.a != 1 or not self.b:
                raise InvalidSpec("a 1-homogeneous pair needs a = 1 and b != 0")
        elif self.a ** (self.k - 1) != 1 or self.b ** (self.k - 1) != self.a:
            raise InvalidSpec(f"({self.a!r}, {self.b!r}) does not solve the degree-{self.k} equations")

    def term(self, n: int):
        """h_n = a^(1-n) b^n."""
        if n <= 1:
            return self.a if n == 0 else self.b
        return self.ring.try_invert(self.a) ** (n - 1) * self.b**n

    def sequence(self, length: int) -> list:
        return [self.term(n) for n in range(length)]

    def __mul__(self, other: HomogeneityPair) -> HomogeneityPair:
        return HomogeneityPair(self.ring, self.k, self.a * other.a, self.b * other.b)

    def key(self) -> tuple:
        return (self.a, self.b)

    def render(self) -> list[str]:
        return [self.ring.render(self.a), self.ring.render(self.b)]


@dataclass(frozen=True)
class AbelianGroupStructure:
    order: int
    invariant_factors: tuple[int, ...]
    exponent: int


def _is_complex_mode(ring: Ring) -> bool:
    return ring.spec.kind == "roots" and ring.spec.m == "all"


def solve_hk(ring: Ring, k: int) -> list[HomogeneityPair]:
    """All unit pairs with a^(k-1) = 1 and b^(k-1) = a.

    A free unit eps^m (m != 0) never has a power equal to a root of unity, so
    only torsion units need to be searched.
    """
    if k < 2:
        raise BadRange(f"solve_hk needs k >= 2, got {k}; use h1_describe for k = 1")
    if _is_complex_mode(ring):
        s = k - 1
        pairs = []
        for j in range(s):
            for l in range(s):
                a = CycElement.root(Fraction(j, s))
                b = CycElement.root(Fraction(j + l * s, s * s))
                pairs.append(HomogeneityPair(ring, k, a, b))
        return pairs
    model = unit_group_model(ring)
    torsion = [ring.coerce(u) for u in model.torsion_units()]
    pairs = []
    for a in torsion:
        if a ** (k - 1) != 1:
            continue
        for b in torsion:
            if b ** (k - 1) == a:
                pairs.append(HomogeneityPair(ring, k, a, b))
    return pairs


def h1_describe(ring: Ring, bound_m: int = 2) -> dict:
    """The 1-homogeneous unit sequences (u^n): listed fully, or for |m| <= bound_m."""
    model = unit_group_model(ring)
    if model.free_rank == 0:
        units = [ring.coerce(u) for u in model.torsion_units()]
        return {"finite": True, "order": len(units), "bases": units, "description": None}
    units = [ring.coerce(u) for u in model.units(bound_m)]
    eps = ring.render(model.fundamental_unit)
    return {
        "finite": False,
        "order": None,
        "bases": units,
        "description": f"{{((+-({eps})^m)^n) : m in Z}}",
    }


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def group_structure(pairs: list[HomogeneityPair]) -> AbelianGroupStructure:
    """Invariant factors of the finite group formed by the pairs."""
    if not pairs:
        raise NotClosed("empty set is not a group")
    keys = {p.key() for p in pairs}
    if len(keys) != len(pairs):
        raise NotClosed("duplicate pairs")
    if (1, 1) not in keys:
        raise NotClosed("identity (1, 1) missing")
    for p in pairs:
        for q in pairs:
            if (p * q).key() not in keys:
                raise NotClosed(f"product of {p.render()} and {q.render()} leaves the set")
    order = len(pairs)

    def power(p: HomogeneityPair, e: int) -> tuple:
        return (p.a**e, p.b**e)

    # p-primary parts from the counts #{x : x^(p^j) = 1}
    primary: dict[int, list[int]] = {}
    for pr in _prime_factors(order):
        counts = [1]
        while len(counts) < 2 or counts[-1] != counts[-2]:
            e = pr ** len(counts)
            counts.append(sum(1 for p in pairs if power(p, e) == (1, 1)))
        logs = []
        for c in counts:
            e = 0
            while c > 1:
                c //= pr
                e += 1
            logs.append(e)
        # number of cyclic factors of size >= pr^j is logs[j] - logs[j-1]
        ge = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        sizes = []
        for j in range(len(ge)):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            sizes += [j + 1] * (ge[j] - nxt)
        primary[pr] = sorted(sizes, reverse=True)
    width = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for pr, sizes in primary.items():
            if i < len(sizes):
                d *= pr ** sizes[i]
        factors.append(d)
    factors.sort()
    prod = 1
    for d in factors:
        prod *= d
    if prod != order:
        raise NotClosed(f"structure {factors} inconsistent with order {order}")
    return AbelianGroupStructure(order, tuple(factors), factors[-1] if factors else 1)


def check_action(pair: HomogeneityPair, x, depth: int) -> bool:
    """A(h x)_n == h_n^k A(x)_n for the first ``depth`` image terms."""
    x = list(x)[:depth]
    h = pair.sequence(len(x))
    lhs = apply_pointwise([hn * xn for hn, xn in zip(h, x)]).terms
    rhs = apply_pointwise(x).terms
    return all(l == h[n] ** pair.k * r for n, (l, r) in enumerate(zip(lhs, rhs)))


def exponent_check(pair: HomogeneityPair, depth: int = 8) -> bool:
    """h^((k-1)^2) is the identity and a^(n-1) b^(-n) inverts h_n."""
    if pair.k < 2:
        raise BadRange("exponent check needs k >= 2")
    e = (pair.k - 1) ** 2
    inv_b = pair.ring.try_invert(pair.b)
    for n in range(depth):
        h = pair.term(n)
        if h**e != 1:
            return False
        inverse = pair.a ** (n - 1) * inv_b**n if n >= 1 else pair.ring.try_invert(pair.a)
        if h * inverse != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# reference tables of claimed groups, used to flag (dis)agreement with the computation


def _claimed_pairs(ring: Ring, texts: list[tuple[str, str]]) -> set:
    return {(ring.parse(a), ring.parse(b)) for a, b in texts}


_GAUSS_UNITS = [("1", "1"), ("1", "-1"), ("1", "i"), ("1", "-1i")]
_EIS_UNITS = [("1", "1"), ("1", "-1"), ("1", "w"), ("1", "-w"), ("1", "-1-w"), ("1", "1+w")]
_EIS_H3 = [("1", "1"), ("1", "-1")]
_EIS_H4 = [("1", "1"), ("1", "w"), ("1", "-1-w")]


def _pow2_plus_one(k: int, lmin: int) -> bool:
    m = k - 1
    l = 0
    while m % 2 == 0 and m > 1:
        m //= 2
        l += 1
    return m == 1 and l >= lmin


def _split_23(n: int) -> tuple[int, int, int]:
    l = m = 0
    while n % 2 == 0:
        n //= 2
        l += 1
    while n % 3 == 0:
        n //= 3
        m += 1
    return m, l, n


def reference_claim(ring: Ring, k: int) -> dict | None:
    """Claimed description of the degree-k group, or None where the table is silent."""
    kind = ring.spec.kind
    trivial = {"pairs": [("1", "1")], "order": 1, "invariant_factors": []}
    if kind in ("integers", "quadreal"):
        return trivial if k > 1 else None
    if _is_complex_mode(ring):
        claim = {"pairs": None, "order": (k - 1) ** 2, "invariant_factors": None}
        if k == 2:
            claim["invariant_factors"] = []
        if k == 3:
            claim["invariant_factors"] = [4]
        return claim
    if kind == "gaussian":
        if k == 3:
            return {"pairs": [("1", "1"), ("1", "-1"), ("-1", "i"), ("-1", "-1i")], "order": 4, "invariant_factors": [2, 2]}
        if k == 5 or _pow2_plus_one(k, 3):
            return {"pairs": _GAUSS_UNITS, "order": 4, "invariant_factors": [4]}
        if _pow2_plus_one(k, 0):
            return None  # k = 2 is not covered by the table
        return trivial
    if kind == "eisenstein":
        m, l, rest = _split_23(k - 1)
        if k == 3 or (rest == 1 and m == 0 and l >= 2):
            return {"pairs": _EIS_H3, "order": 2, "invariant_factors": [2]}
        if k == 4 or (rest == 1 and m >= 2):
            return {"pairs": _EIS_H4, "order": 3, "invariant_factors": [3]}
        if k == 7 or (rest == 1 and m == 1 and l >= 2):
            return {"pairs": _EIS_UNITS, "order": 6, "invariant_factors": [6]}
        if k == 2:
            return None
        return trivial
    return None


def _rendered_claim(ring: Ring, claim: dict | None) -> dict | None:
    if claim is None or claim["pairs"] is None:
        return claim
    pairs = [[ring.render(ring.parse(a)), ring.render(ring.parse(b))] for a, b in claim["pairs"]]
    return dict(claim, pairs=pairs)


def report(ring: Ring | str, k: int) -> dict:
    """Solved pairs, group structure and agreement with the reference table."""
    if isinstance(ring, str):
        ring = ring_make(ring)
    pairs = solve_hk(ring, k)
    st = group_structure(pairs)
    claim = reference_claim(ring, k)
    agreement = None
    if claim is not None:
        agreement = st.order == claim["order"]
        if claim["invariant_factors"] is not None:
            agreement = agreement and list(st.invariant_factors) == claim["invariant_factors"]
        if claim["pairs"] is not None:
            agreement = agreement and {p.key() for p in pairs} == _claimed_pairs(ring, claim["pairs"])
    return {
        "ring": str(ring.spec),
        "k": k,
        "pairs": [p.render() for p in pairs],
        "order": st.order,
        "invariant_factors": list(st.invariant_factors),
        "exponent": st.exponent,
        "exponent_divides": ((k - 1) ** 2) % st.exponent == 0,
        "reference_claim": _rendered_claim(ring, claim),
        "agreement_flag": agreement,
    }


__all__ = [
    "AbelianGroupStructure",
    "HomogeneityPair",
    "check_action",
    "exponent_check",
    "group_structure",
    "h1_describe",
    "reference_claim",
    "report",
    "solve_hk",
]
