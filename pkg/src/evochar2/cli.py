"""Command-line front end: ``evo <command> [args] [--json] [--seed N]``.

Exit codes: 0 success, 1 FAIL rows or a failed analysis, 2 parse error,
3 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import poly2
from .algebra import Algebra, load_algebra, save_algebra, to_dict
from .baric import (
    baric_quasi_constant,
    bernstein_profile,
    build_weighted_As,
    check_weight,
    weighted_train_identity,
)
from .canonical import (
    build_A_s,
    build_A_st,
    build_companion,
    build_cycle_tail,
    invariant_factors,
    nilpotent_invariants,
    periodic_invariants,
    semi_isomorphic,
)
from .corpus import FAIL, run_corpus
from .dynamics import (
    NILPOTENT,
    PERIODIC,
    classify,
    operator_profile,
    orbit,
    train_polynomial,
)
from .errors import (
    EvoError,
    InvariantViolation,
    KernelNotNilplenary,
    ParseError,
    UnexpectedFactorShape,
)
from .field import make_field
from .generators import (
    cyclic_algebra,
    dynsys_algebra,
    f4_infinity_system,
    idempotent_line,
    quadratic_map,
    random_algebra,
    remark_algebra,
    rule90,
    rule150,
)

SCHEMA = 1
DEFAULT_SEED = 20240601


def _emit(args, data: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, **data}, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _train_dict(T) -> dict:
    return {
        "coeffs": list(T.coeffs),
        "degree": T.degree,
        "valuation": T.valuation,
        "striction": T.striction,
        "text": str(T),
    }


def _profile_dict(prof) -> dict:
    return {"kind": prof.kind, "n": prof.n, "p": prof.p, "e": list(prof.e) if prof.e else None}


def _canon_section(A: Algebra) -> dict | None:
    if A.field.p != 1:
        return None
    prof = operator_profile(A)
    out = {"invariant_factors": [poly2.to_str(f) for f in invariant_factors(A.operator.m2)]}
    if prof.kind == NILPOTENT:
        out["s"] = list(nilpotent_invariants(A))
    elif prof.kind == PERIODIC:
        try:
            inv = periodic_invariants(A)
            out.update(s=list(inv.s), t=list(inv.t), q=inv.q, r=inv.r)
        except UnexpectedFactorShape as exc:
            out["unexpected_shape"] = exc.report
    return out


def _baric_section(A: Algebra) -> dict:
    B = check_weight(A)
    try:
        nu, e = baric_quasi_constant(B)
    except KernelNotNilplenary as exc:
        return {"quasi_constant": False, "reason": str(exc)}
    bp = bernstein_profile(B)
    return {
        "quasi_constant": True,
        "degree": nu,
        "idempotent": list(e),
        "bernstein": [bp.n, bp.p],
        "train_identity": weighted_train_identity(B),
    }


def cmd_analyze(args) -> int:
    A = load_algebra(args.file)
    kind = classify(A)
    prof = operator_profile(A)
    T = train_polynomial(A)
    data = {
        "field": A.field.to_json(),
        "dim": A.dim,
        "classification": _profile_dict(kind),
        "profile": [prof.n, prof.p],
        "train": _train_dict(T),
    }
    lines = [
        f"field: {A.field}  dim: {A.dim}",
        f"classification: {kind}",
        f"operator: {prof}",
        f"train polynomial: {T}",
    ]
    f = T.as_poly2()
    if f is not None and prof.kind == PERIODIC:
        bound = poly2.from_exponents([prof.n + prof.p, prof.n])
        assert poly2.mod(bound, f) == 0, "train polynomial must divide X^n (X^p + 1)"
    canon = _canon_section(A)
    if canon is not None:
        data["canonical"] = canon
        lines.append(f"invariant factors: {', '.join(canon['invariant_factors'])}")
        for key in ("s", "t", "q", "r"):
            if key in canon:
                lines.append(f"  {key} = {canon[key]}")
        if "unexpected_shape" in canon:
            lines.append(f"  periodic factors outside the (X^q+1)^(2^t) shape: {canon['unexpected_shape']['unexpected']}")
    if A.weight is not None:
        data["baric"] = _baric_section(A)
        b = data["baric"]
        if b["quasi_constant"]:
            lines.append(f"baric: quasi-constant of degree {b['degree']}, idempotent {b['idempotent']}")
            lines.append(f"  Bernstein profile (n,p) = ({b['bernstein'][0]},{b['bernstein'][1]})")
            lines.append(f"  weighted train coefficients {b['train_identity']}")
        else:
            lines.append(f"baric: not quasi-constant ({b['reason']})")
    _emit(args, data, lines)
    return 0


def _parse_element(text: str) -> list[int]:
    try:
        return [int(c, 0) for c in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad element {text!r}", location="--element") from exc


def cmd_orbit(args) -> int:
    A = load_algebra(args.file)
    o = orbit(A, _parse_element(args.element))
    data = {"preperiod": o.preperiod, "period": o.period, "orbit": [list(v) for v in o.orbit],
            "entry_point": list(o.entry_point)}
    lines = [f"preperiod {o.preperiod}, period {o.period}"]
    lines += [f"  V^{k}: {list(v)}" for k, v in enumerate(o.orbit)]
    _emit(args, data, lines)
    return 0


def cmd_train(args) -> int:
    A = load_algebra(args.file)
    T = train_polynomial(A)
    _emit(args, {"train": _train_dict(T)},
          [f"train polynomial: {T}", f"degree {T.degree}, valuation {T.valuation}, striction {T.striction}"])
    return 0


def cmd_canon(args) -> int:
    A = load_algebra(args.file)
    canon = _canon_section(A)
    if canon is None:
        raise EvoError("canonical invariants need an algebra over F_2")
    lines = [f"{k}: {v}" for k, v in canon.items()]
    _emit(args, {"canonical": canon}, lines)
    return 0


def cmd_semi_iso(args) -> int:
    A, B = load_algebra(args.file_a), load_algebra(args.file_b)
    v = semi_isomorphic(A, B)
    _emit(args, {"status": v.status, "passed": v.passed}, [str(v)])
    return 0


def cmd_striction(args) -> int:
    T = int(args.poly, 0)
    st = poly2.striction(T)
    data = {"poly": poly2.to_str(T), "sigma": st.sigma, "exponents": sorted(st.exponents),
            "valuation": st.valuation, "factors": [[poly2.to_str(g), e] for g, e in poly2.factor_f2(T >> st.valuation)]}
    lines = [f"T = {poly2.to_str(T)}", f"sigma = {st.sigma}", f"E = {{{','.join(map(str, sorted(st.exponents)))}}}"]
    if args.p:
        cs = poly2.compatible_structure(T, args.p)
        blocks = []
        for k, blk in enumerate(cs.partition):
            chains = [[poly2.to_str(d) for d in c] for c in cs.subdivisions[k]]
            blocks.append({"block": [i + 1 for i in blk], "product": poly2.to_str(cs.block_product(k)), "chains": chains})
            lines.append(f"block {[i + 1 for i in blk]}: {poly2.to_str(cs.block_product(k))} chains {chains}")
        data["compatible"] = {"p": args.p, "blocks": blocks}
    _emit(args, data, lines)
    return 0


def _ints(text: str | None) -> list[int]:
    return [int(t) for t in text.split(",")] if text else []


def cmd_gen(args) -> int:
    F = make_field(args.field_p)
    kind = args.kind
    if kind == "rule90":
        A = rule90(args.n)
    elif kind == "rule150":
        A = rule150(args.n)
    elif kind == "cyclic":
        A = cyclic_algebra(args.n, F)
    elif kind == "remark":
        A = remark_algebra()
    elif kind == "idempotent":
        A = idempotent_line(F)
    elif kind == "quadratic":
        A, _ = dynsys_algebra(quadratic_map(args.c, args.m))
    elif kind == "f4inf":
        A, _ = dynsys_algebra(f4_infinity_system())
    elif kind == "random":
        A = random_algebra(F, args.n, args.seed, "general" if args.general else "evolution")
    elif kind == "As":
        A = build_A_s(_ints(args.s), F)
    elif kind == "Ast":
        A = build_A_st(_ints(args.s), _ints(args.t), args.q, F)
    elif kind == "cycle-tail":
        A = build_cycle_tail(args.period, args.n)
    elif kind == "companion":
        A = build_companion(int(args.poly, 0), F)
    elif kind == "weighted-As":
        A = build_weighted_As(_ints(args.s), F)
    else:  # pragma: no cover - argparse restricts choices
        raise EvoError(f"unknown generator {kind}")
    if args.output:
        save_algebra(A, args.output)
        _emit(args, {"written": args.output, "dim": A.dim}, [f"wrote {args.output} (dim {A.dim})"])
    else:
        print(json.dumps(to_dict(A)))
    return 0


def cmd_baric(args) -> int:
    A = load_algebra(args.file)
    if A.weight is None:
        raise InvariantViolation("the algebra has no weight")
    b = _baric_section(A)
    _emit(args, {"baric": b}, [f"{k}: {v}" for k, v in b.items()])
    return 0


def cmd_verify_paper(args) -> int:
    rows = run_corpus()
    fails = sum(r.status == FAIL for r in rows)
    if args.json:
        _emit(args, {"rows": [r.to_json() for r in rows], "fail": fails}, [])
    else:
        for r in rows:
            line = f"{r.status}  {r.case}: {r.claim}"
            if r.status != "PASS":
                line += f"  [claimed {r.claimed}; computed {r.oracle}]"
                if r.note:
                    line += f"  ({r.note})"
            print(line)
        counts = {s: sum(r.status == s for r in rows) for s in ("PASS", "FLAG", "FAIL")}
        print(f"{len(rows)} rows: {counts['PASS']} PASS, {counts['FLAG']} FLAG, {counts['FAIL']} FAIL")
    return 1 if fails else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized commands")

    parser = argparse.ArgumentParser(prog="evo", description="Evolution operators of algebras in characteristic 2")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("orbit", parents=[common], help="orbit of one element")
    p.add_argument("file")
    p.add_argument("--element", required=True, help="comma-separated coordinates")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("train", parents=[common], help="minimal train polynomial")
    p.add_argument("file")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("canon", parents=[common], help="canonical invariants over F_2")
    p.add_argument("file")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("semi-iso", parents=[common], help="semi-isomorphism test")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_semi_iso)

    p = sub.add_parser("striction", parents=[common], help="striction and compatible structure of T")
    p.add_argument("--poly", required=True, help="polynomial over F_2 as an int bitmask")
    p.add_argument("--p", type=int, default=0, help="also compute the F_2^p-compatible structure")
    p.set_defaults(func=cmd_striction)

    p = sub.add_parser("gen", parents=[common], help="write an example algebra")
    p.add_argument("kind", choices=["rule90", "rule150", "cyclic", "remark", "idempotent", "quadratic", "f4inf",
                                    "random", "As", "Ast", "cycle-tail", "companion", "weighted-As"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--m", type=int, default=13)
    p.add_argument("--s", help="comma-separated block sizes")
    p.add_argument("--t", help="comma-separated periodic exponents")
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--period", type=int, default=1)
    p.add_argument("--poly", default="0b1101")
    p.add_argument("--field-p", type=int, default=1)
    p.add_argument("--general", action="store_true", help="random: fill off-diagonal products too")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("baric", parents=[common], help="weighted analysis")
    p.add_argument("file")
    p.set_defaults(func=cmd_baric)

    p = sub.add_parser("verify-paper", parents=[common], help="replay the worked-example corpus")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except (EvoError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
