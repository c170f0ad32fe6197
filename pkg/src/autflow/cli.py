"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 math/ring error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import autonomous as au
from . import bell
from . import flow as fl
from . import homogeneity as hg
from .errors import AutflowError
from .hurwitz import HurwitzSeries
from .rings import Ring, parse_ring_spec, ring_make
from .verify import format_table, run_suite


class UsageError(Exception):
    def __init__(self, flag: str, msg: str):
        super().__init__(f"{flag}: {msg}")


def _flag(flag: str, fn, *args):
    """Run a parser for one flag, reporting failures as usage errors naming it."""
    try:
        return fn(*args)
    except (AutflowError, ValueError) as exc:
        raise UsageError(flag, str(exc)) from exc


def _ring(text: str) -> Ring:
    return _flag("--ring", lambda t: ring_make(parse_ring_spec(t)), text)


def _seq(ring: Ring, text: str, flag: str = "--seq") -> list:
    def parse(t):
        items = json.loads(t)
        if not isinstance(items, list):
            raise ValueError("expected a JSON array")
        return [ring.parse(str(c)) for c in items]

    return _flag(flag, parse, text)


def _jsonable(ring: Ring, v):
    if isinstance(v, HurwitzSeries):
        return [_jsonable(v.ring, c) for c in v.coeffs]
    s = ring.render(v)
    try:
        return int(s)
    except ValueError:
        return s


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _cmd_bell(args) -> int:
    ring = _ring(args.ring)
    b = _seq(ring, args.b, "--b")
    if args.action == "partial":
        if args.k is None:
            row = bell.bell_table(args.n, b)[args.n]
            print(_dump([_jsonable(ring, row[k]) for k in range(1, args.n + 1)]))
        else:
            print(_dump(_jsonable(ring, bell.partial_bell(args.n, args.k, b))))
    else:
        if args.a is None:
            raise UsageError("--a", "complete Bell polynomials need --a")
        a = _seq(ring, args.a, "--a")
        print(_dump(_jsonable(ring, bell.complete_bell(args.n, b, a))))
    return 0


def _cmd_autonomous(args) -> int:
    ring = _ring(args.ring)
    x = _seq(ring.fraction_field() if args.action == "invert" else ring, args.seq)
    if args.action == "apply":
        print(_dump([_jsonable(ring, t) for t in au.apply_pointwise(x).terms]))
    else:
        res = au.invert(x, ring)
        ff = ring.fraction_field()
        print(_dump({"x": [_jsonable(ff, t) for t in res.terms], "in_ring": res.in_ring}))
    return 0


def _cmd_homogeneity(args) -> int:
    ring = _ring(args.ring)
    if args.action == "solve":
        if args.k is None:
            raise UsageError("--k", "required for solve")
        print(_dump(hg.report(ring, args.k)))
    else:
        d = hg.h1_describe(ring, args.bound_m)
        d["bases"] = [_jsonable(ring, u) for u in d["bases"]]
        print(_dump(d))
    return 0


def _cmd_flow(args) -> int:
    ring = _ring(args.ring)
    ff = ring.fraction_field()
    field = _flag("--field", fl.parse_field, ring, args.field)
    x0 = _flag("--x0", ff.parse, args.x0)
    if args.action == "series":
        if args.symbolic:
            flow = fl.flow_series_mode(field, args.order, x0)
        else:
            flow = fl.flow_at_point(field, x0, args.order)
        print(_dump([_jsonable(flow.ring, c) for c in flow.coeffs]))
        return 0
    if args.action == "closed":
        flow = fl.closed_form_flow(field, x0, args.order)
        print(_dump([_jsonable(ff, c) for c in flow.coeffs]))
        return 0
    if args.action == "orbit":
        grid = _flag("--grid", fl.parse_grid, args.grid)
        text = fl.orbit_csv(fl.flow_at_point(field, x0, args.order), grid, args.precision)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    # check
    depth = max(1, args.order)
    results = {
        "group_law": fl.group_law_check(field, x0, (depth, depth)),
        "time_scaling": fl.time_scale_check(field, 2, depth, x0),
        "equilibrium_consistent": fl.equilibrium_check(field, x0, depth).agree,
    }
    if not x0:
        results["differential_identities"] = fl.pde_check(field, depth)
        results["unit_twist"] = fl.gmodule_identity_check(field, -1, depth)
    if isinstance(field, (fl.Constant, fl.Affine, fl.ExpField)) and not (isinstance(field, fl.ExpField) and x0):
        results["closed_form"] = (
            fl.flow_at_point(field, x0, depth).coeffs == fl.closed_form_flow(field, x0, depth).coeffs
        )
    print(_dump(results))
    return 0 if all(results.values()) else 1


def _cmd_verify(args) -> int:
    ring = _ring(args.ring)
    results = run_suite(ring, args.order, args.seed)
    print(format_table(results))
    return 1 if any(r.passed is False for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="autflow", description="Exact autonomous-operator and flow computations.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bell", help="partial / complete Bell polynomials")
    b.add_argument("action", choices=["partial", "complete"])
    b.add_argument("--ring", default="z")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int)
    b.add_argument("--b", required=True, help="JSON array b_1..b_n")
    b.add_argument("--a", help="JSON array a_1..a_n (complete only)")
    b.set_defaults(run=_cmd_bell)

    a = sub.add_parser("autonomous", help="apply or invert the autonomous operator")
    a.add_argument("action", choices=["apply", "invert"])
    a.add_argument("--ring", required=True)
    a.add_argument("--seq", required=True, help="JSON array of ring elements")
    a.set_defaults(run=_cmd_autonomous)

    h = sub.add_parser("homogeneity", help="homogeneity groups")
    h.add_argument("action", choices=["solve", "h1"])
    h.add_argument("--ring", required=True)
    h.add_argument("--k", type=int)
    h.add_argument("--bound-m", type=int, default=2)
    h.set_defaults(run=_cmd_homogeneity)

    f = sub.add_parser("flow", help="flow series, closed forms, orbits and identity checks")
    f.add_argument("action", choices=["series", "closed", "orbit", "check"])
    f.add_argument("--ring", required=True)
    f.add_argument("--field", required=True, help="const:a | affine:a,b | expfield:a[,c] | series:[...]")
    f.add_argument("--x0", default="0")
    f.add_argument("--order", type=int, default=6)
    f.add_argument("--grid", default="0:1:11", help="a:b:n sample points for orbit")
    f.add_argument("--out", help="write orbit CSV here instead of stdout")
    f.add_argument("--precision", type=int, default=15)
    f.add_argument("--symbolic", action="store_true", help="series mode: coefficients are series in x - x0")
    f.set_defaults(run=_cmd_flow)

    v = sub.add_parser("verify", help="run the identity suite")
    v.add_argument("action", choices=["all"])
    v.add_argument("--ring", required=True)
    v.add_argument("--order", type=int, default=6)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(run=_cmd_verify)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"autflow: error: {exc}", file=sys.stderr)
        return 2
    except AutflowError as exc:
        print(f"autflow: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
