"""Aggregated identity checks over one ring at one truncation order.

Every check runs even if an earlier one fails; table disagreements from the
homogeneity module are reported as flags rather than failures.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import autonomous as au
from . import bell
from . import flow as fl
from . import homogeneity as hg
from .errors import AutflowError, Unsupported
from .hurwitz import (
    HurwitzSeries,
    compose,
    compose_horner,
    derivative,
    hurwitz_mul,
    scale_substitute,
    series_eq,
    taylor_shift,
)
from .rings import Ring, ring_make, unit_group_model


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool | None  # None: skipped
    detail: str = ""
    flag: bool = False  # computed table differs from the reference claim

    @property
    def status(self) -> str:
        if self.passed is None:
            return "SKIP"
        if not self.passed:
            return "FAIL"
        return "FLAG" if self.flag else "PASS"


def _rand_series(ring: Ring, rng: random.Random, order: int, bound: int = 4, zero_const: bool = False):
    c = [ring.random(rng, bound) for _ in range(order + 1)]
    if zero_const:
        c[0] = ring.zero()
    return HurwitzSeries(ring, c)


def _unit_head(ring: Ring, rng: random.Random, length: int) -> list:
    try:
        units = unit_group_model(ring).units(1)
    except Unsupported:
        units = [ring.one(), -ring.one()]
    return [ring.coerce(rng.choice(units))] + [ring.random(rng, 3) for _ in range(length - 1)]


def _bell_checks(ring: Ring, rng: random.Random) -> list[CheckResult]:
    out = []
    ok = True
    for n in range(1, 11):
        b = [ring.random(rng, 3) for _ in range(n)]
        for k in range(1, n + 1):
            ok = ok and bell.partial_bell(n, k, b) == bell.partial_bell_rec(n, k, b)
        ok = ok and bell.partial_bell(n, 1, b) == b[n - 1] and bell.partial_bell(n, n, b) == b[0] ** n
    out.append(CheckResult("bell.partition_sum_equals_recurrence", ok, "n <= 10"))
    nums = [sum(bell.partial_bell(n, k, [1] * n) for k in range(1, n + 1)) for n in range(1, 7)]
    out.append(CheckResult("bell.row_sums_are_bell_numbers", nums == [bell.bell_number(n) for n in range(1, 7)]))
    alpha = ring.random(rng, 3)
    ok = True
    for n in range(1, 8):
        b = [ring.random(rng, 3) for _ in range(n)]
        sb = [alpha ** (i + 1) * v for i, v in enumerate(b)]
        for k in range(1, n + 1):
            ok = ok and bell.partial_bell(n, k, sb) == alpha**n * bell.partial_bell(n, k, b)
    out.append(CheckResult("bell.weighted_homogeneity", ok))
    return out


def _series_checks(ring: Ring, order: int, rng: random.Random) -> list[CheckResult]:
    out = []
    ok_leib = ok_comp = ok_scale = ok_shift = True
    ff = ring.fraction_field()
    for _ in range(5):
        f, g = _rand_series(ring, rng, order), _rand_series(ring, rng, order)
        lhs = derivative(hurwitz_mul(f, g))
        rhs = hurwitz_mul(derivative(f), g) + hurwitz_mul(f, derivative(g))
        ok_leib = ok_leib and series_eq(lhs, rhs, order - 1)
        h = _rand_series(ring, rng, order, zero_const=True)
        ok_comp = ok_comp and compose(f, h) == compose_horner(f, h)
        a, b = ring.random(rng, 3), ring.random(rng, 3)
        ok_scale = ok_scale and scale_substitute(scale_substitute(f, a), b) == scale_substitute(f, a * b)
        c = ff.random(rng, 3)
        ok_shift = ok_shift and taylor_shift(taylor_shift(f, c), -c) == f
    out.append(CheckResult("hurwitz.leibniz_rule", ok_leib))
    out.append(CheckResult("hurwitz.composition_matches_horner", ok_comp))
    out.append(CheckResult("hurwitz.scale_substitution_composes", ok_scale))
    out.append(CheckResult("hurwitz.taylor_shift_round_trip", ok_shift))
    return out


def _autonomous_checks(ring: Ring, order: int, rng: random.Random) -> list[CheckResult]:
    out = []
    ok = True
    for _ in range(5):
        f = _rand_series(ring, rng, order)
        a, b = au.apply_series(f), au.apply_series_bell(f)
        ok = ok and all(series_eq(x, y, x.order) for x, y in zip(a.terms, b.terms))
        ok = ok and au.apply_pointwise(f.coeffs).terms == tuple(t.coeffs[0] for t in a.terms)
    out.append(CheckResult("autonomous.chain_equals_bell_recursion", ok))
    f = _rand_series(ring, rng, min(order, 6))
    out.append(CheckResult("autonomous.nested_products", au.check_nesting(f, 5)))
    ok = all(
        au.check_scaling([ring.random(rng, 3) for _ in range(order + 1)], ring.random(rng, 3), order + 1)
        for _ in range(20)
    )
    out.append(CheckResult("autonomous.scaling", ok))
    ok = all(au.check_null_space([ring.zero()] + [ring.random(rng, 3) for _ in range(order)]) for _ in range(10))
    out.append(CheckResult("autonomous.null_space", ok))
    ok = True
    for _ in range(10):
        x = _unit_head(ring, rng, order + 2)
        y = list(au.apply_pointwise(x).terms)
        inv = au.invert(y, ring)
        ok = ok and list(inv.terms) == x and inv.in_ring
        ok = ok and list(au.apply_pointwise(au.invert(x, ring).terms).terms) == x
    out.append(CheckResult("autonomous.invert_round_trips", ok))
    ok = all(
        au.check_linear_part(ring.random(rng, 3), ring.random(rng, 3), ring.random(rng, 3), ring.random(rng, 3), order)
        for _ in range(10)
    )
    out.append(CheckResult("autonomous.linear_part", ok))
    ok = all(
        au.check_ideal_image(ring, ring.random(rng, 3), [ring.random(rng, 3) for _ in range(order)]) for _ in range(10)
    )
    out.append(CheckResult("autonomous.principal_ideal_image", ok))
    ff = ring.fraction_field()
    ok_f = ok_c = True
    depth = max(1, order - 1)
    for _ in range(3):
        f = _rand_series(ff, rng, order)
        ok_f = ok_f and au.check_exp_factor(f, Fraction(rng.randint(-3, 3), rng.randint(1, 3)), depth)
        g = _rand_series(ff, rng, order, zero_const=True)
        ok_c = ok_c and au.check_exp_composition(g, depth)
    out.append(CheckResult("autonomous.exponential_factor", ok_f))
    out.append(CheckResult("autonomous.exponential_composition", ok_c))
    return out


def _homogeneity_checks(ring: Ring, order: int, rng: random.Random) -> list[CheckResult]:
    try:
        unit_group_model(ring)
    except Unsupported:
        if not (ring.spec.kind == "roots" and ring.spec.m == "all"):
            return [CheckResult("homogeneity", None, f"no unit group model for {ring.spec}")]
    out = []
    for k in range(2, 8):
        rep = hg.report(ring, k)
        pairs = hg.solve_hk(ring, k)
        ok = rep["exponent_divides"]
        ok = ok and all(hg.exponent_check(p, order) for p in pairs)
        for p in pairs:
            for _ in range(3):
                x = [ring.random(rng, 3) for _ in range(order)]
                ok = ok and hg.check_action(p, x, order)
        flag = rep["agreement_flag"] is False
        detail = f"order {rep['order']}, factors {rep['invariant_factors']}"
        if flag:
            claim = rep["reference_claim"]
            cf = claim["invariant_factors"]
            detail += f"; reference claims factors {cf}" if cf is not None else f"; reference claims order {claim['order']}"
        out.append(CheckResult(f"homogeneity.H{k}", ok, detail, flag))
    return out


def _flow_checks(ring: Ring, order: int, rng: random.Random) -> list[CheckResult]:
    ff = ring.fraction_field()
    out = []

    def nz():
        v = ff.random(rng, 3)
        return v if v else ff.one()

    fields = [
        fl.Constant(ff, nz()),
        fl.Affine(ff, ff.random(rng, 3), nz()),
        fl.ExpField(ff, nz(), ff.one()),
    ]
    ok = all(
        fl.flow_at_point(f, 0, order).coeffs == fl.closed_form_flow(f, 0, order).coeffs for f in fields
    )
    out.append(CheckResult("flow.closed_forms", ok))
    depth = max(2, order // 2)
    series_fields = [fl.SeriesField(ff, _rand_series(ff, rng, 2 * depth + 2), ff.zero()) for _ in range(2)]
    allf = fields + series_fields
    out.append(CheckResult("flow.group_law", all(fl.group_law_check(f, 0, (depth, depth)) for f in allf)))
    out.append(CheckResult("flow.differential_identities", all(fl.pde_check(f, depth) for f in allf)))
    out.append(CheckResult("flow.time_scaling", all(fl.time_scale_check(f, ff.random(rng, 3), order) for f in allf)))
    ok = True
    for f in allf:
        res = fl.module_axioms_check(f, 0, {"r": nz(), "v": nz(), "w": nz()}, depth)
        ok = ok and all(res.values())
    out.append(CheckResult("flow.time_action_axioms", ok))
    try:
        units = unit_group_model(ring).units(1)
    except Unsupported:
        units = [ff.one(), -ff.one(), nz()]
    ok = all(fl.gmodule_identity_check(f, u, depth) for f in allf for u in units)
    out.append(CheckResult("flow.unit_twist_identity", ok, f"{len(units)} scalars"))
    b = nz()
    a = ff.random(rng, 3)
    aff = fl.Affine(ff, a, b)
    x_star = ff.try_divide(-a, b)
    ok = bool(fl.equilibrium_check(aff, x_star)) and fl.equilibrium_check(fields[0], ff.random(rng, 3)).agree
    ok = ok and not fl.equilibrium_check(fields[0], 0).field_zero
    ok = ok and all(fl.equilibrium_invariance_check(aff, x_star, u) for u in units if u)
    out.append(CheckResult("flow.equilibria", ok))
    return out


def run_suite(ring: Ring | str, order: int = 6, seed: int = 0) -> list[CheckResult]:
    """All checks for one ring; deterministic for a given seed."""
    if isinstance(ring, str):
        ring = ring_make(ring)
    if order < 2:
        raise AutflowError("verification needs order >= 2")
    rng = random.Random(seed)
    groups = [
        ("bell", lambda: _bell_checks(ring, rng)),
        ("hurwitz", lambda: _series_checks(ring, order, rng)),
        ("autonomous", lambda: _autonomous_checks(ring, order, rng)),
        ("homogeneity", lambda: _homogeneity_checks(ring, order, rng)),
        ("flow", lambda: _flow_checks(ring, order, rng)),
    ]
    results = []
    for name, run in groups:
        if ring.depth and name in ("homogeneity", "flow"):
            results.append(CheckResult(name, None, "not available over series rings"))
            continue
        try:
            results.extend(run())
        except AutflowError as exc:
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results


def format_table(results: list[CheckResult]) -> str:
    width = max((len(r.name) for r in results), default=0)
    lines = [f"{r.status:4}  {r.name:<{width}}  {r.detail}".rstrip() for r in results]
    npass = sum(r.passed is True for r in results)
    nfail = sum(r.passed is False for r in results)
    nflag = sum(r.flag for r in results)
    lines.append(f"{npass} passed, {nfail} failed, {nflag} flagged")
    return "\n".join(lines)
