"""Partial and complete Bell polynomials over any ring.

Two independent evaluators are provided: a direct sum over partitions and the
standard three-term recurrence.  They work for any element type supporting
``+`` and ``*`` (including integer multiples), so the same code serves plain
ring elements and truncated series.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import comb, factorial
from operator import add, mul

from .errors import BadRange


@dataclass(frozen=True)
class Partition:
    """Partition of ``n`` stored as multiplicities ``(j_1, ..., j_n)``."""

    n: int
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.multiplicities) != self.n or any(j < 0 for j in self.multiplicities):
            raise BadRange(f"bad multiplicities {self.multiplicities} for n={self.n}")
        if self.weight != self.n:
            raise BadRange(f"multiplicities {self.multiplicities} do not sum to {self.n}")

    @property
    def weight(self) -> int:
        return sum(h * j for h, j in enumerate(self.multiplicities, start=1))

    @property
    def length(self) -> int:
        return sum(self.multiplicities)

    def coefficient(self) -> int:
        """n! / prod(j_h! * (h!)**j_h), always an integer."""
        den = 1
        for h, j in enumerate(self.multiplicities, start=1):
            den *= factorial(j) * factorial(h) ** j
        return factorial(self.n) // den


def _check(n: int, k: int) -> None:
    if not (isinstance(n, int) and isinstance(k, int)) or not 1 <= k <= n:
        raise BadRange(f"need 1 <= k <= n, got n={n}, k={k}")


def partitions(n: int, k: int) -> list[Partition]:
    """All partitions of ``n`` into exactly ``k`` parts.

    Ordered by decreasing ``(j_1, ..., j_n)`` so that partitions with more
    small parts come first.
    """
    _check(n, k)
    found = []
    # stack of (parts so far, remaining sum, max allowed part)
    stack = [((), n, n - k + 1)]
    while stack:
        parts, rest, cap = stack.pop()
        left = k - len(parts)
        if left == 0:
            if rest == 0:
                mult = [0] * n
                for p in parts:
                    mult[p - 1] += 1
                found.append(Partition(n, tuple(mult)))
            continue
        # every remaining part is at least 1 and at most cap
        for p in range(min(cap, rest - (left - 1)), 0, -1):
            if p * left >= rest:
                stack.append((parts + (p,), rest - p, p))
    found.sort(key=lambda q: q.multiplicities, reverse=True)
    return found


def _power(x, e: int):
    return reduce(mul, [x] * e)


def partial_bell(n: int, k: int, b) -> object:
    """B_{n,k}(b_1, ..., b_{n-k+1}) by summing over partitions; ``b[0]`` is b_1."""
    _check(n, k)
    if len(b) < n - k + 1:
        raise BadRange(f"need at least {n - k + 1} arguments, got {len(b)}")
    total = None
    for p in partitions(n, k):
        term = None
        for h, j in enumerate(p.multiplicities, start=1):
            if j:
                f = _power(b[h - 1], j)
                term = f if term is None else term * f
        term = p.coefficient() * term
        total = term if total is None else total + term
    return total


def _rec_table(n: int, b) -> list[list]:
    # T[k][m] = B_{m,k} for 1 <= k <= m <= n; index 0 unused
    T = [[None] * (n + 1) for _ in range(n + 1)]
    for m in range(1, n + 1):
        T[1][m] = b[m - 1]
        for k in range(2, m + 1):
            terms = [comb(m - 1, i - 1) * (b[i - 1] * T[k - 1][m - i]) for i in range(1, m - k + 2)]
            T[k][m] = reduce(add, terms)
    return T


def partial_bell_rec(n: int, k: int, b) -> object:
    """B_{n,k} via B_{n,k} = sum_i C(n-1, i-1) b_i B_{n-i,k-1}."""
    _check(n, k)
    if len(b) < n - k + 1:
        raise BadRange(f"need at least {n - k + 1} arguments, got {len(b)}")
    b = list(b) + [b[0] * 0] * (n - len(b))
    return _rec_table(n, b)[k][n]


class BellTable:
    """Rows of B_{m,k} built incrementally as b_1, b_2, ... become known.

    Row ``m`` needs only ``b_1..b_m``, which is what the autonomous operator
    and series composition require.
    """

    def __init__(self):
        self.b: list = []
        self.rows: list[list] = [[]]  # rows[m][k], k = 1..m (index 0 unused)

    def __len__(self):
        return len(self.b)

    def append(self, bm) -> list:
        self.b.append(bm)
        m = len(self.b)
        row = [None] * (m + 1)
        row[1] = bm
        for k in range(2, m + 1):
            acc = None
            for i in range(1, m - k + 2):
                prev = self.rows[m - i][k - 1]
                bi = self.b[i - 1]
                if not bi or not prev:
                    continue
                t = comb(m - 1, i - 1) * (bi * prev)
                acc = t if acc is None else acc + t
            row[k] = acc if acc is not None else bm * 0
        self.rows.append(row)
        return row

    def get(self, n: int, k: int):
        return self.rows[n][k]


def bell_table(n: int, b) -> list[list]:
    """Triangle ``T[m][k] = B_{m,k}(b)`` for 1 <= k <= m <= n."""
    if n < 1 or len(b) < n:
        raise BadRange(f"need n >= 1 and at least n arguments, got n={n}, {len(b)} args")
    t = BellTable()
    for m in range(n):
        t.append(b[m])
    return t.rows


def complete_bell(n: int, b, a) -> object:
    """Y_n(b; a) = sum_k B_{n,k}(b) a_k, with ``a[0]`` = a_1."""
    if n < 1 or len(b) < n or len(a) < n:
        raise BadRange(f"need n >= 1 and lists of length >= n, got n={n}")
    rows = bell_table(n, b)
    return reduce(add, [rows[n][k] * a[k - 1] for k in range(1, n + 1)])


def bell_number(n: int) -> int:
    """Number of set partitions of an n-element set (Bell triangle)."""
    if n < 0:
        raise BadRange("n must be nonnegative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]
