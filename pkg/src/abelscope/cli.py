"""Command-line entry point: ``abelscope verify | algebra check | group selftest | ball``.

Exit codes: 0 all checks passed, 1 a check failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exact import is_prime
from .gamma import Gamma
from .homology import abels_check
from .liealg import AlgebraError, LieAlgebra, check_jacobi, check_weight_additivity
from .marked import (agreement_radius, ball, balls_equal, divergence_witness, preset_marking,
                     word_to_str)
from .selftest import group_selftest
from .verify import verify_report

DEFAULT_RADIUS_CAP = 6


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _emit(obj, path):
    """Write JSON to ``path`` ('-' means stdout)."""
    text = _dump(obj) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _prime(value: str) -> int:
    try:
        p = int(value)
    except ValueError:
        raise InputError(f"--p expects a prime, got {value!r}") from None
    if not is_prime(p):
        raise InputError(f"--p expects a prime, got {p}")
    return p


def _render_verify(rep: dict) -> str:
    a = rep["algebra"]

    def ws(items):
        return ", ".join(f"{tuple(i['weight'])}x{i['multiplicity']}" for i in items)

    lines = [
        f"p = {rep['p']}   trials = {rep['trials']}   seed = {rep['seed']}",
        f"abelianization weights: {ws(a['abelianization_weights'])}",
        f"remaining weights:      {ws(a['remaining_weights'])}",
        f"condition 1 (no segment through 0): {'pass' if a['condition1']['pass'] else 'FAIL'}",
        f"weight-0 wedge basis ({len(a['weight0_wedge_basis'])}): {', '.join(a['weight0_wedge_basis'])}",
        f"weight-0 cycles ({len(a['kernel0_basis'])}):",
    ]
    for v in a["kernel0_basis"]:
        lines.append("    " + " + ".join(f"({c}) {k}" for k, c in v.items()))
    lines.append("boundaries:")
    for ident in a["preimage_identities"]:
        ok = ident["preimage_maps_to_cycle"] and ident["canonical_solution_exact"]
        lines.append(f"    d3({ident['preimage']}) = "
                     + " + ".join(f"({c}) {k}" for k, c in ident["cycle"].items())
                     + ("   ok" if ok else "   FAIL"))
    c2 = a["condition2"]
    lines.append(f"condition 2 (weight 0 absent from H2): {'pass' if c2['pass'] else 'FAIL'}"
                 f"   dim H2_0 = {c2['h2_weight0_dim']}")
    lines.append(f"finitely presented (criterion): {a['finitely_presented']}")
    st = rep["group_selftest_summary"]
    nchecks = sum(st["checks"].values())
    nviol = sum(st["violations"].values())
    lines.append(f"group self-test: {nchecks} checks, {nviol} violations")
    lines.append("PASS" if rep["passed"] else "FAIL")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    p = _prime(args.p)
    rep = verify_report(p, args.trials, args.seed)
    if args.json:
        _emit(rep, args.json)
    if args.json != "-":
        print(_render_verify(rep))
    return 0 if rep["passed"] else 1


def cmd_algebra_check(args) -> int:
    try:
        with open(args.file) as f:
            data = json.load(f)
        L = LieAlgebra.from_json(data)
    except (OSError, json.JSONDecodeError, AlgebraError, ValueError) as e:
        raise InputError(f"cannot read algebra: {e}") from None
    bad = check_jacobi(L)
    if bad is not None:
        raise InputError(f"Jacobi identity fails on basis triple {list(bad)}")
    bad = check_weight_additivity(L)
    if bad is not None:
        raise InputError(f"weights are not additive: [x{bad[0]}, x{bad[1]}] has a term on x{bad[2]}")
    if L.rank != 2:
        raise InputError("the segment condition needs rank-2 weights")
    verdict = abels_check(L)
    _emit(verdict.to_json(), args.json)
    return 0 if verdict.finitely_presented else 1


def cmd_group_selftest(args) -> int:
    p = _prime(args.p)
    rep = group_selftest(p, args.trials, args.seed)
    if args.json:
        _emit(rep.to_json(), args.json)
    if rep.passed:
        if args.json != "-":
            print(f"p={p} trials={args.trials} seed={args.seed}: "
                  f"{sum(rep.checks.values())} checks, 0 violations")
        return 0
    print(_dump(rep.first_counterexample))
    return 1


def _parse_preset(tokens, p: int):
    name = tokens[0]
    if name == "z-mod":
        if len(tokens) != 2:
            raise InputError("z-mod needs a modulus, e.g. --preset z-mod 5")
        try:
            n = int(tokens[1])
        except ValueError:
            raise InputError(f"bad modulus {tokens[1]!r}") from None
        if n < 1:
            raise InputError("modulus must be positive")
        return preset_marking("z-mod", modulus=n)
    if len(tokens) != 1 or name not in ("z", "gamma", "gamma-mod-mz"):
        raise InputError(f"unknown preset {' '.join(tokens)!r}")
    return preset_marking(name, p=p)


def cmd_ball(args) -> int:
    p = _prime(args.p)
    if args.radius < 0:
        raise InputError("radius must be nonnegative")
    if args.radius > DEFAULT_RADIUS_CAP and not args.max_radius_override:
        raise InputError(f"radius above {DEFAULT_RADIUS_CAP} needs --max-radius-override")
    m = _parse_preset(args.preset, p)
    b = ball(m, args.radius)
    out = {"preset": " ".join(args.preset), "ball": b.to_json()}
    if args.compare:
        m2 = _parse_preset(args.compare, p)
        if m2.arity != m.arity:
            raise InputError(f"presets have {m.arity} and {m2.arity} generators")
        b2 = ball(m2, args.radius)
        out["compare"] = " ".join(args.compare)
        out["compare_ball"] = b2.to_json()
        out["equal"] = balls_equal(b, b2)
        out["agreement_radius"] = agreement_radius(m, m2, args.radius)
        d = divergence_witness(m, m2, args.radius)
        if d is not None:
            names = Gamma.DEFAULT_GENERATOR_NAMES if m.arity == 7 else None
            out["divergence"] = {"word": word_to_str(d.word, names),
                                 "trivial_in": out["preset"] if d.trivial_in == 1 else out["compare"],
                                 "radius": d.radius}
    _emit(out, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abelscope", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="reproduce the weight / H2 computation and run the group self-test")
    v.add_argument("--p", default="2")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", metavar="PATH", help="also write the report as JSON ('-' for stdout only)")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("algebra", help="operations on user-supplied Lie algebras")
    asub = a.add_subparsers(dest="algebra_command", required=True)
    ac = asub.add_parser("check", help="run Abels' two conditions on an algebra JSON file")
    ac.add_argument("file")
    ac.add_argument("--json", metavar="PATH", default="-")
    ac.set_defaults(func=cmd_algebra_check)

    g = sub.add_parser("group", help="randomized checks on the matrix group")
    gsub = g.add_subparsers(dest="group_command", required=True)
    gs = gsub.add_parser("selftest")
    gs.add_argument("--p", default="2")
    gs.add_argument("--trials", type=int, default=1000)
    gs.add_argument("--seed", type=int, default=0)
    gs.add_argument("--json", metavar="PATH")
    gs.set_defaults(func=cmd_group_selftest)

    b = sub.add_parser("ball", help="canonical Cayley ball of a preset marked group")
    b.add_argument("--preset", nargs="+", required=True,
                   help="z | z-mod N | gamma | gamma-mod-mz")
    b.add_argument("--radius", type=int, required=True)
    b.add_argument("--compare", nargs="+")
    b.add_argument("--p", default="2")
    b.add_argument("--max-radius-override", action="store_true")
    b.add_argument("--json", metavar="PATH", default="-")
    b.set_defaults(func=cmd_ball)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except InputError as e:
        print(f"abelscope: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
