"""Replay of published worked examples against the oracles.

Each row compares a claimed value with what the code computes:
PASS when they agree, FLAG when the claimed identity still holds but the
claimed (non-minimal) profile differs from the computed one, FAIL when the
claim is false as an identity.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

from . import poly2
from .algebra import Algebra
from .baric import (
    baric_quasi_constant,
    bernstein_profile,
    build_weighted_As,
    check_weight,
    weighted_train_identity,
)
from .canonical import build_companion, build_cycle_tail
from .dynamics import (
    NILPOTENT,
    PeriodicityProfile,
    orbit,
    operator_profile,
    quasi_constant_check,
    train_polynomial,
    verify_identity,
)
from .field import F2, make_field
from .generators import (
    cyclic_algebra,
    dynsys_algebra,
    evolution_nilpotency_check,
    f4_infinity_system,
    idempotent_line,
    quadratic_map,
    remark_algebra,
    rule90,
    rule150,
)

PASS, FLAG, FAIL = "PASS", "FLAG", "FAIL"


@dataclass(frozen=True)
class Row:
    case: str
    claim: str
    claimed: str
    oracle: str
    status: str
    note: str = ""

    def to_json(self) -> dict:
        return asdict(self)


def _X(*exps: int) -> int:
    return poly2.from_exponents(exps)


def _pair(prof: PeriodicityProfile) -> str:
    if prof.kind == NILPOTENT:
        return f"nilpotent({prof.n})"
    return f"({prof.n},{prof.p})"


def _compare(case, claim, stated: str, oracle: str, identity_holds: bool, note="") -> Row:
    if not identity_holds:
        return Row(case, claim, stated, oracle, FAIL, note or "claimed identity does not hold")
    if stated == oracle:
        return Row(case, claim, stated, oracle, PASS, note)
    return Row(case, claim, stated, oracle, FLAG, note or "identity holds; claimed profile is not minimal")


def _check(case, claim, expected, observed, note="") -> Row:
    status = PASS if expected == observed else FAIL
    return Row(case, claim, str(expected), str(observed), status, note)


# -- cases ----------------------------------------------------------------------


def _automata_profiles() -> list[Row]:
    rows = []
    # claimed (n, p) profiles of the ring automata, with the identity X^(n+p) + X^n
    claims = [
        ("rule90", rule90, 3, (1, 2)),
        ("rule90", rule90, 6, (2, 4)),
        ("rule90", rule90, 12, (4, 8)),
        ("rule150", rule150, 3, (2, 1)),
        ("rule150", rule150, 4, (0, 4)),
        ("rule150", rule150, 6, (4, 2)),
        ("rule150", rule150, 8, (0, 8)),
    ]
    for name, gen, size, (n, p) in claims:
        A = gen(size)
        ok = verify_identity(A, _X(n + p, n)).holds
        rows.append(
            _compare(f"{name}-ring{size:02d}-profile", f"V^{n + p} = V^{n}, ({n},{p})-periodic",
                     f"({n},{p})", _pair(operator_profile(A)), ok)
        )
    for size, degree in ((4, 4), (8, 8)):
        A = rule90(size)
        ok = verify_identity(A, _X(degree)).holds
        rows.append(
            _compare(f"rule90-ring{size:02d}-nilpotent", f"nilpotent of degree {degree}",
                     f"nilpotent({degree})", _pair(operator_profile(A)), ok)
        )
    return rows


def _automata_identities() -> list[Row]:
    claims = [
        ("rule90-ring05-identity", rule90(5), _X(5, 3, 1), "V^5 = V^3 + V"),
        ("rule90-ring07-identity", rule90(7), _X(7, 5, 1), "V^7 = V^5 + V"),
        ("rule90-ring13-identity", rule90(13), _X(13, 11, 9, 3, 1), "V^13 = V^11 + V^9 + V^3 + V"),
        ("rule150-ring05-identity", rule150(5), _X(5, 4, 3, 2, 1, 0), "T(V) = 0, T = X^5+X^4+X^3+X^2+X+1"),
        ("rule150-ring07-identity", rule150(7), _X(7, 6, 3, 2, 1, 0), "T(V) = 0, T = X^7+X^6+X^3+X^2+X+1"),
    ]
    rows = []
    for case, A, P, claim in claims:
        rows.append(_check(case, claim, True, verify_identity(A, P).holds))
    return rows


def _dynamical_systems() -> list[Row]:
    rows = []
    D = quadratic_map(2, 13)
    listed = {4: 5, 9: 5, 5: 1, 8: 1, 1: 3, 3: 11, 10: 11, 11: 6, 2: 6, 6: 12, 7: 12, 12: 3}
    rows.append(_check("dynsys-mod13-table", "listed values of x^2+2 mod 13", listed,
                       {x: D.f[x] for x in listed}))
    A, graph = dynsys_algebra(D)
    rows.append(_check("dynsys-mod13-identity", "f^8 = f^4", True, verify_identity(A, _X(8, 4)).holds))
    rows.append(_compare("dynsys-mod13-profile", "(4,4)-periodic", "(4,4)", _pair(operator_profile(A)),
                         verify_identity(A, _X(8, 4)).holds))
    rows.append(_check("dynsys-mod13-graph", "functional graph profile equals operator profile",
                       graph, operator_profile(A).pair()))

    E = f4_infinity_system()
    # points: 0, 1, a, a^2, oo
    listed = {2: 1, 3: 1, 1: 0, 0: 4, 4: 4}
    rows.append(_check("dynsys-f4inf-table", "f(a) = f(a^2) = 1, f(1) = 0, f(0) = f(oo) = oo",
                       listed, {x: E.f[x] for x in listed}))
    B, graph = dynsys_algebra(E)
    prof = _pair(operator_profile(B))
    literal = verify_identity(B, _X(4, 1)).holds
    swapped = verify_identity(B, _X(4, 3)).holds
    status = FLAG if swapped else FAIL
    rows.append(Row("dynsys-f4inf-profile", "(1,3)-periodic", "(1,3)", prof, status,
                    f"literal (n,p) reading f^4 = f holds: {literal}; "
                    f"read as (p,n) = (1,3), f^4 = f^3 holds: {swapped}"))
    return rows


def _periodic_examples() -> list[Row]:
    rows = []
    C = cyclic_algebra(4)
    rows.append(_check("cyclic4-profile", "(0,4)-periodic", "(0,4)", _pair(operator_profile(C))))
    cases = [
        ("a", (1, 0, 0, 0), (0, 1, 0, 0), (0, 4), (0, 4), (0, 4)),
        ("b", (1, 0, 0, 0), (0, 0, 1, 0), (0, 4), (0, 4), (0, 2)),
        ("c", (1, 1, 0, 0), (0, 0, 1, 1), (0, 4), (0, 4), (0, 1)),
    ]
    for tag, x1, x2, p1, p2, ps in cases:
        s = tuple(a ^ b for a, b in zip(x1, x2))
        got = tuple((orbit(C, v).preperiod, orbit(C, v).period) for v in (x1, x2, s))
        rows.append(_check(f"cyclic4-elements-{tag}", "element profiles of x', x'', x'+x''",
                           (p1, p2, ps), got))
    for p, n in ((3, 2), (2, 3)):
        A = build_cycle_tail(p, n)
        rows.append(_check(f"cycle-tail-p{p}-n{n}", f"({n},{p})-periodic", f"({n},{p})",
                           _pair(operator_profile(A))))
    return rows


def _train_examples() -> list[Row]:
    rows = []
    R = remark_algebra()
    rows.append(_check("remark-identity", "V^3 + V^2 + id = 0", True, verify_identity(R, _X(3, 2, 0)).holds))
    rows.append(_check("remark-train", "train polynomial X^3+X^2+1", "X^3+X^2+1", str(train_polynomial(R))))
    rows.append(_check("remark-order", "X^3+X^2+1 divides X^8 - X (order 7)", 7, poly2.order_mod(_X(3, 2, 0))))
    rows.append(_compare("remark-profile", "(1,7)-periodic", "(1,7)", _pair(operator_profile(R)),
                         verify_identity(R, _X(8, 1)).holds))
    rows.append(_check("remark-companion", "companion of X^3+X^2+1 is the example algebra", True,
                       build_companion(_X(3, 2, 0)) == R))

    # striction examples
    strictions = [(_X(12, 10, 4, 0), 2), (_X(6, 0), 6), (_X(12, 9, 3, 0), 3)]
    for i, (T, s) in enumerate(strictions, 1):
        rows.append(_check(f"striction-ex{i}", f"sigma({poly2.to_str(T)}) = {s}", s, poly2.sigma(T)))
    f1, f2, f3 = _X(1, 0), _X(2, 1, 0), _X(3, 2, 0)
    rows.append(_check("striction-ex1-factors", "T = f1^2 f2^2 f3^2", [(f1, 2), (f2, 2), (f3, 2)],
                       poly2.factor_f2(strictions[0][0])))
    rows.append(_check("striction-ex2-factors", "T = f1^2 f2^2", [(f1, 2), (f2, 2)],
                       poly2.factor_f2(strictions[1][0])))
    rows.append(_check("striction-ex3-factors", "T = f1^2 f2^2 f3 with f3 = X^6+X^3+1",
                       [(f1, 2), (f2, 2), (_X(6, 3, 0), 1)], poly2.factor_f2(strictions[2][0])))

    sq = poly2.square
    expected = [
        (0, 1, [((0,), [(f1, sq(f1))]), ((1,), [(f2, sq(f2))]), ((2,), [(f3, sq(f3))])]),
        (0, 2, [((0,), [(sq(f1),)]), ((1,), [(sq(f2),)]), ((2,), [(sq(f3),)])]),
        (1, 1, [((0,), [(f1, sq(f1))]), ((1,), [(f2, sq(f2))])]),
        (1, 2, [((0,), [(sq(f1),)]), ((1,), [(sq(f2),)])]),
        (1, 3, [((0, 1), [(_X(3, 0), _X(6, 0))])]),
        (2, 1, [((0,), [(f1, sq(f1))]), ((1,), [(f2, sq(f2))]), ((2,), [(_X(6, 3, 0),)])]),
        (2, 3, [((0, 1), [(_X(3, 0), _X(6, 0))]), ((2,), [(_X(6, 3, 0),)])]),
    ]
    for idx, p, blocks in expected:
        cs = poly2.compatible_structure(strictions[idx][0], p)
        got = [(blk, [tuple(c) for c in sub]) for blk, sub in zip(cs.partition, cs.subdivisions)]
        rows.append(_check(f"compatible-ex{idx + 1}-p{p}", f"F_2^{p}-compatible partition and subdivision",
                           blocks, got))

    # companion algebra of a striction-2 polynomial over F_2, F_4, F_8
    P = _X(4, 2, 0)
    for p, expect in ((1, True), (2, True), (3, False)):
        F = make_field(p)
        res = verify_identity(build_companion(P, F), P)
        rows.append(_check(f"companion-sigma2-F{1 << p}", f"P(V) = 0 on C_P over F_{1 << p}", expect,
                           res.holds, "" if res.holds else f"counterexample {res.witness}"))
    return rows


def _evolution_examples() -> list[Row]:
    rows = []
    A = rule90(4)
    rows.append(_check("evolution-F2-nilpotent", "V nilpotent iff S nilpotent (rule 90 ring 4)",
                       operator_profile(A).kind == NILPOTENT, evolution_nilpotency_check(A)))
    A = rule90(5)
    deg_min_S = poly2.deg(_minpoly_S(A))
    rows.append(_check("evolution-F2-train-degree", "train degree equals degree of the minimal polynomial of S",
                       deg_min_S, train_polynomial(A).degree))
    F4 = make_field(2)
    C = cyclic_algebra(3, F4)
    prof = operator_profile(C)
    q = F4.p
    rows.append(Row("evolution-F4-period", "period p divides q", "p divides q",
                     f"p={prof.p}, q={q}: q divides p {prof.p % q == 0}, p divides q {q % prof.p == 0}",
                     FLAG if prof.p % q == 0 else FAIL,
                     "the argument gives l^(2^p) = l on F_2^q, i.e. q | p"))
    return rows


def _minpoly_S(A: Algebra) -> int:
    from .bitmat import minimal_polynomial
    return minimal_polynomial(A.operator.m2)


def _quasi_constant_examples() -> list[Row]:
    return [
        _check("qc-idempotent-line", "F_2<e> with e^2 = e is quasi-constant of degree 1", (1, (1,)),
               quasi_constant_check(idempotent_line())),
        _check("qc-F4-line", "no quasi-constant algebra over F_4", None,
               quasi_constant_check(idempotent_line(make_field(2)))),
    ]


def _baric_examples() -> list[Row]:
    rows = []
    for s in ((1,), (2, 1), (3, 1)):
        B = check_weight(build_weighted_As(s, F2))
        nu, _ = baric_quasi_constant(B)
        bp = bernstein_profile(B)
        alphas = weighted_train_identity(B)
        tag = "-".join(map(str, s))
        rows.append(_check(f"baric-As{tag}-degree", "quasi-constant degree is the longest kernel chain",
                           s[0], nu))
        rows.append(_check(f"baric-As{tag}-bernstein", "Bernstein profile (nu, 1)", (nu, 1), (bp.n, bp.p)))
        rows.append(_check(f"baric-As{tag}-train", "train identity of degree nu+1 with sum of alphas 1",
                           (nu + 1, 1), (len(alphas), _xor(alphas))))
    return rows


def _xor(vals) -> int:
    r = 0
    for v in vals:
        r ^= v
    return r


SECTIONS: list[Callable[[], list[Row]]] = [
    _automata_profiles,
    _automata_identities,
    _dynamical_systems,
    _periodic_examples,
    _train_examples,
    _evolution_examples,
    _quasi_constant_examples,
    _baric_examples,
]


def run_corpus() -> list[Row]:
    rows = [r for section in SECTIONS for r in section()]
    return sorted(rows, key=lambda r: r.case)
