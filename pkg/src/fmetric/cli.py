"""Command-line front end.

Subcommands: verify, min-alpha, solve, check, reproduce, profile-alpha.
Exit codes: 0 all checks pass, 1 a mathematical violation was found
(or an iteration failed to converge), 2 usage or input error. Text mode
prints numbers with 10 significant digits; structured mode emits one
JSON document per run with top-level "command" and "passed" fields.
Same inputs and seed give byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import conditions, corpus, solver
from .errors import DomainError, FmetricError
from .fclass import lookup_function, registered_altering, registered_generators
from .fspace import (
    AnalyticSpace,
    FiniteSpace,
    Witness,
    check_identity_symmetry,
    min_alpha,
)
from .fspace import verify_D3 as _verify_D3
from .reports import _jsonable
from .spaceio import load_space_file

_SHOWN_VIOLATIONS = 5


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.10g}"
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def _emit_json(doc: dict) -> None:
    print(json.dumps(_jsonable(doc), indent=2))


def _materialize(space) -> FiniteSpace:
    """Turn an enumerable space into an explicit matrix for axiom checks."""
    if isinstance(space, FiniteSpace):
        return space
    pts = space.points()  # DomainError if there is no finite enumeration
    vals = list(pts)
    m = np.array([[space.d(x, y) for y in vals] for x in vals])
    return FiniteSpace(labels=tuple(vals), dist=m)


def _builder_params(args) -> dict:
    params = {}
    for key in ("n", "depth", "N"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = v
    return params


def _load_input(args):
    """Resolve --input/--example to (space, witness, map, origin string)."""
    if getattr(args, "input", None):
        space, witness, T = load_space_file(args.input)
        return space, witness, T, args.input
    ex = corpus.build_example(args.example, **_builder_params(args))
    return ex.space, ex.witness, ex.map, ex.id


def _parse_point(text: str, space):
    """Parse an x0 argument ("2", "0.25", "7/3") into a carrier point.

    Finite spaces snap numeric values to the nearest label when it is
    within 1e-9, since decimal input cannot always spell a stored float
    exactly. Basis-index carriers require integers.
    """
    if isinstance(space, FiniteSpace) and space.contains(text):
        return text
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot parse point {text!r}") from None
    if isinstance(space, AnalyticSpace) and space.point_kind == "basis_index":
        if frac.denominator != 1:
            raise DomainError(f"points of this space are integers, got {text!r}")
        return int(frac)
    val = float(frac)
    if isinstance(space, FiniteSpace):
        numeric = [lab for lab in space.labels if isinstance(lab, (int, float))]
        if not numeric:
            raise DomainError(f"carrier has no numeric points to match {text!r}")
        best = min(numeric, key=lambda lab: abs(lab - val))
        if abs(best - val) > 1e-9:
            raise DomainError(
                f"{text!r} is not in the carrier (nearest point {best!r})"
            )
        return best
    return val


def _resolve_witness(args, file_witness) -> Witness:
    f_name = getattr(args, "f", None)
    alpha = getattr(args, "alpha", None)
    if f_name is None and file_witness is not None:
        f = file_witness.f
    else:
        f = lookup_function(f_name or "ln", "generator")
    if alpha is None:
        if file_witness is None:
            raise DomainError("no alpha: pass --alpha or provide a witness in the input")
        alpha = file_witness.alpha
    return Witness(f, float(alpha))


def cmd_verify(args) -> int:
    space, file_witness, _, origin = _load_input(args)
    space = _materialize(space)
    witness = _resolve_witness(args, file_witness)
    reports = check_identity_symmetry(space, margin=args.margin)
    axioms_ok = all(r.passed for r in reports)
    if axioms_ok:
        reports.append(_verify_D3(space, witness, margin=args.margin))
    passed = all(r.passed for r in reports)
    if args.output == "structured":
        _emit_json({
            "command": "verify",
            "passed": passed,
            "input": origin,
            "f": witness.f.name,
            "alpha": witness.alpha,
            "axioms": [r.to_dict() for r in reports],
        })
        return 0 if passed else 1
    names = {"D1": "identity", "D2": "symmetry", "D3": "chain inequality"}
    for r in reports:
        extra = f" (f={witness.f.name}, alpha={_fmt(witness.alpha)})" if r.axiom == "D3" else ""
        print(f"{r.axiom} {names[r.axiom]}{extra}: {'pass' if r.passed else 'FAIL'}")
        for (pair, lhs, rhs) in r.violations[:_SHOWN_VIOLATIONS]:
            print(f"  {_fmt(pair)}: lhs={_fmt(lhs)} rhs={_fmt(rhs)}")
        if len(r.violations) > _SHOWN_VIOLATIONS:
            print(f"  ... and {len(r.violations) - _SHOWN_VIOLATIONS} more")
    if not axioms_ok:
        print("D3 chain inequality: skipped (identity or symmetry failed)")
    return 0 if passed else 1


def cmd_min_alpha(args) -> int:
    space, _, _, origin = _load_input(args)
    space = _materialize(space)
    f = lookup_function(args.f, "generator")
    value = min_alpha(space, f)
    if args.output == "structured":
        _emit_json({
            "command": "min-alpha",
            "passed": True,
            "input": origin,
            "f": f.name,
            "min_alpha": value,
        })
    else:
        print(_fmt(value))
    return 0


def cmd_solve(args) -> int:
    space, _, T, origin = _load_input(args)
    if T is None:
        raise DomainError(f"{origin} carries no map; solve needs one")
    x0 = _parse_point(args.x0, space)
    rep = solver.picard(space, T, x0, tol=args.tol, max_iter=args.max_iter)
    passed = rep.status == solver.STATUS_CONVERGED
    if args.output == "structured":
        _emit_json({"command": "solve", "passed": passed, "input": origin, **rep.to_dict()})
        return 0 if passed else 1
    print(f"status: {rep.status}")
    print(f"iterations: {rep.iterations}")
    if rep.fixed_point is not None:
        print(f"fixed_point: {_fmt(rep.fixed_point)}")
    if rep.residual is not None:
        print(f"residual: {_fmt(rep.residual)}")
    if rep.cycle:
        print(f"cycle: {_fmt(tuple(rep.cycle))}")
    return 0 if passed else 1


def _make_sample(args, space) -> conditions.PairSample:
    if args.all_pairs:
        return conditions.all_pairs(space)
    if args.seed is not None:
        return conditions.random_pairs(space, args.pairs, seed=args.seed)
    return conditions.grid_pairs(space, args.pairs)


def cmd_check(args) -> int:
    space, _, T, origin = _load_input(args)
    if T is None:
        raise DomainError(f"{origin} carries no map; check needs one")
    if args.phi is not None:
        phi = lookup_function(args.phi, "altering")
    else:
        ex_phi = None
        if getattr(args, "example", None):
            ex_phi = corpus.build_example(args.example, **_builder_params(args)).phi
        phi = ex_phi or lookup_function("id", "altering")
    if args.condition == "edelstein":
        rep = conditions.edelstein_check(space, T, phi, _make_sample(args, space))
    elif args.condition == "kannan":
        rep = conditions.kannan_check(space, T, phi, _make_sample(args, space))
    elif args.condition == "orbital-kannan":
        x0 = _parse_point(args.x0, space)
        rep = conditions.orbital_kannan_check(space, T, phi, x0, args.count)
    else:
        x0 = _parse_point(args.x0, space)
        eps_grid = [float(t) for t in args.eps_grid.split(",") if t.strip()]
        scale = args.delta_scale
        rep = conditions.shift_condition_check(
            space, T, phi, x0,
            delta_rule=lambda e: scale * e,
            eps_grid=eps_grid,
            horizon=args.horizon,
        )
    if args.output == "structured":
        _emit_json({"command": "check", "passed": rep.passed, "input": origin, **rep.to_dict()})
        return 0 if rep.passed else 1
    print(f"condition: {rep.condition}")
    print(f"sample: {rep.source}")
    print(f"checked: {rep.checked}")
    print(f"margin_min: {_fmt(rep.margin_min)}")
    print(f"passed: {_fmt(rep.passed)}")
    for v in rep.violations[:_SHOWN_VIOLATIONS]:
        print("  " + " ".join(f"{k}={_fmt(val)}" for k, val in v.items()))
    if len(rep.violations) > _SHOWN_VIOLATIONS:
        print(f"  ... and {len(rep.violations) - _SHOWN_VIOLATIONS} more")
    return 0 if rep.passed else 1


def cmd_reproduce(args) -> int:
    rows = corpus.reproduce(args.example_id)
    passed = all(ok for _, ok, _ in rows)
    if args.output == "structured":
        _emit_json({
            "command": "reproduce",
            "passed": passed,
            "example": args.example_id,
            "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in rows],
        })
        return 0 if passed else 1
    for name, ok, detail in rows:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        print(line)
    done = sum(1 for _, ok, _ in rows if ok)
    print(f"{done}/{len(rows)} expectations hold")
    return 0 if passed else 1


def cmd_profile_alpha(args) -> int:
    if args.from_n < 2 or args.from_n > args.to_n:
        print(f"error: bad range {args.from_n}..{args.to_n} (need 2 <= from <= to)", file=sys.stderr)
        return 2
    f = lookup_function(args.f, "generator")
    rows = [(n, min_alpha(corpus.rect_b_family(n), f)) for n in range(args.from_n, args.to_n + 1)]
    if args.output == "structured":
        _emit_json({
            "command": "profile-alpha",
            "passed": True,
            "f": f.name,
            "rows": rows,
        })
    else:
        for n, a in rows:
            print(f"{n} {_fmt(a)}")
    return 0


def _add_input_group(p: argparse.ArgumentParser, need_example_params=True) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--input", help="space file (JSON or CSV)")
    g.add_argument("--example", choices=corpus.example_ids(), help="bundled example id")
    if need_example_params:
        p.add_argument("--n", type=int, help="family parameter for rect-b")
        p.add_argument("--depth", type=int, help="tail depth for oscillating-orbit")
        p.add_argument("--N", type=int, help="truncation bound for sequence-space")


def build_parser() -> argparse.ArgumentParser:
    gen_names = ", ".join(g.name for g in registered_generators())
    phi_names = ", ".join(a.name for a in registered_altering())
    parser = argparse.ArgumentParser(
        prog="fmetric",
        description="Verify F-metric axioms, hunt fixed points, and check "
        "contraction conditions on finite and closed-form spaces.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--output", choices=("text", "structured"), default="text",
        help="text prints 10 significant digits; structured emits one JSON document",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check axioms D1, D2, D3")
    _add_input_group(p)
    p.add_argument("--f", help=f"generator name ({gen_names}); default ln or the input witness")
    p.add_argument("--alpha", type=float, help="witness constant; default from the input")
    p.add_argument("--margin", type=float, default=0.0, help="slack added to every comparison")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("min-alpha", parents=[common], help="smallest admissible alpha")
    _add_input_group(p)
    p.add_argument("--f", default="ln", help=f"generator name ({gen_names})")
    p.set_defaults(fn=cmd_min_alpha)

    p = sub.add_parser("solve", parents=[common], help="run the fixed-point iteration")
    _add_input_group(p)
    p.add_argument("--x0", required=True, help='starting point ("0", "2", "7/3")')
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=10000)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("check", parents=[common], help="test a contraction-style condition")
    p.add_argument("condition", choices=("edelstein", "kannan", "orbital-kannan", "shift"))
    _add_input_group(p)
    p.add_argument("--phi", help=f"altering distance ({phi_names}); default id or the example's")
    p.add_argument("--pairs", type=int, default=1000, help="sample size for pairwise conditions")
    p.add_argument("--seed", type=int, help="draw pairs at random; omit for the deterministic grid")
    p.add_argument("--all-pairs", action="store_true", help="use every pair of the carrier")
    p.add_argument("--x0", default="0", help="orbit start for orbital-kannan and shift")
    p.add_argument("--count", type=int, default=200, help="orbit pairs for orbital-kannan")
    p.add_argument("--eps-grid", default="0.5,0.1,0.01", help="comma-separated eps levels for shift")
    p.add_argument("--delta-scale", type=float, default=1.0, help="delta = scale * eps for shift")
    p.add_argument("--horizon", type=int, default=50, help="orbit length for shift")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("reproduce", parents=[common], help="re-derive an example's documented behavior")
    p.add_argument("example_id", choices=corpus.example_ids())
    p.set_defaults(fn=cmd_reproduce)

    p = sub.add_parser("profile-alpha", parents=[common], help="alpha growth across the rect-b family")
    p.add_argument("--f", default="ln", help=f"generator name ({gen_names})")
    p.add_argument("--from", dest="from_n", type=int, required=True, metavar="N")
    p.add_argument("--to", dest="to_n", type=int, required=True, metavar="N")
    p.set_defaults(fn=cmd_profile_alpha)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse exits itself on usage errors and --help
        return int(e.code or 0)
    try:
        return args.fn(args)
    except FmetricError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
