"""Similitude invariants and canonical-form builders over F_2.

Over F_2 the evolution operator is linear, so two algebras are
semi-isomorphic exactly when their V matrices are similar, i.e. when the
invariant factors of XI - M agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import poly2
from .algebra import Algebra
from .bitmat import BitMatrix
from .dynamics import NILPOTENT, PERIODIC, operator_profile, split_valuation
from .errors import (
    DimensionMismatch,
    FieldIncompatible,
    FieldMismatch,
    NotNilpotent,
    NotPeriodic,
    ShapeError,
    UnexpectedFactorShape,
)
from .field import F2, Field


# -- Smith normal form over F_2[X] --------------------------------------------


def invariant_factors(M: BitMatrix) -> list[int]:
    """Nontrivial invariant factors of M, ascending (each divides the next)."""
    return list(_invariant_factors(M.n, M.cols))


@lru_cache(maxsize=512)
def _invariant_factors(n: int, cols: tuple) -> tuple:
    # XI - M = XI + M in characteristic 2; A[i][j] is a polynomial bitmask
    A = [[((cols[j] >> i) & 1) ^ (poly2.X if i == j else 0) for j in range(n)] for i in range(n)]
    for t in range(n):
        while True:
            piv = None
            for i in range(t, n):
                for j in range(t, n):
                    if A[i][j] and (piv is None or poly2.deg(A[i][j]) < poly2.deg(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            i0, j0 = piv
            A[t], A[i0] = A[i0], A[t]
            for row in A:
                row[t], row[j0] = row[j0], row[t]
            a = A[t][t]
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    q, r = poly2.divmod2(A[i][t], a)
                    Ai, At = A[i], A[t]
                    for j in range(t, n):
                        if At[j]:
                            Ai[j] ^= poly2.mul(q, At[j])
                    dirty |= r != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = poly2.divmod2(A[t][j], a)
                    for i in range(t, n):
                        if A[i][t]:
                            A[i][j] ^= poly2.mul(q, A[i][t])
                    dirty |= r != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if A[i][j] and poly2.mod(A[i][j], a)),
                None,
            )
            if bad is None:
                break
            # fold a row whose entries a does not divide into the pivot row
            for j in range(t, n):
                A[t][j] ^= A[bad][j]
    diag = [A[t][t] for t in range(n)]
    return tuple(sorted((f for f in diag if poly2.deg(f) >= 1), key=lambda f: (poly2.deg(f), f)))


# -- invariants ----------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalInvariants:
    s: tuple
    t: tuple
    q: int
    r: int

    @property
    def period(self) -> int:
        return (1 << self.r) * self.q

    @property
    def dim(self) -> int:
        return sum(self.s) + sum(1 << ti for ti in self.t) * self.q


def _require_f2(A: Algebra) -> None:
    if A.field.p != 1:
        raise FieldMismatch("canonical invariants are defined over F_2 only")


def nilpotent_invariants(A: Algebra) -> tuple:
    _require_f2(A)
    prof = operator_profile(A)
    if prof.kind != NILPOTENT:
        raise NotNilpotent(f"operator is {prof}")
    s = tuple(sorted((poly2.deg(f) for f in invariant_factors(A.operator.m2)), reverse=True))
    assert s[0] == prof.n
    return s


def _odd_part(p: int) -> tuple[int, int]:
    r = 0
    while p % 2 == 0:
        p //= 2
        r += 1
    return p, r


def periodic_invariants(A: Algebra) -> CanonicalInvariants:
    _require_f2(A)
    prof = operator_profile(A)
    if prof.kind != PERIODIC:
        raise NotPeriodic(f"operator is {prof}")
    q, r = _odd_part(prof.p)
    base = poly2.from_exponents([q, 0])
    factors = invariant_factors(A.operator.m2)
    s, t, odd = [], [], []
    for f in factors:
        a, g = split_valuation(f)
        if a:
            s.append(a)
        if g == 1:
            continue
        e = poly2.deg(g) // q
        ti = e.bit_length() - 1
        if e * q != poly2.deg(g) or e != 1 << ti or poly2.pow2(base, e) != g:
            odd.append(g)
        else:
            t.append(ti)
    if odd:
        report = {
            "profile": (prof.n, prof.p),
            "factors": [poly2.to_str(f) for f in factors],
            "unexpected": [poly2.to_str(g) for g in odd],
        }
        raise UnexpectedFactorShape(
            f"periodic factors {report['unexpected']} are not powers (X^{q}+1)^(2^t)", report=report
        )
    inv = CanonicalInvariants(tuple(sorted(s, reverse=True)), tuple(sorted(t, reverse=True)), q, r)
    assert inv.dim == A.dim and inv.t[0] == r
    assert (inv.s[0] if inv.s else 0) == prof.n
    return inv


# -- builders --------------------------------------------------------------------


def _decreasing(seq: Sequence[int], low: int) -> bool:
    return all(x >= low for x in seq) and all(a >= b for a, b in zip(seq, seq[1:]))


def _chains(s: Sequence[int], offset: int, d: int) -> list[list[int]]:
    rows = []
    pos = offset
    for length in s:
        for j in range(length):
            row = [0] * d
            if j + 1 < length:
                row[pos + j + 1] = 1
            rows.append(row)
        pos += length
    return rows


def build_A_s(s: Sequence[int], field: Field = F2) -> Algebra:
    """Nilpotent chains e_(i,1) -> ... -> e_(i,s_i) -> 0."""
    s = tuple(s)
    if not s or not _decreasing(s, 1):
        raise ShapeError(f"s must be a nonempty weakly decreasing tuple of positive ints, got {s}")
    d = sum(s)
    return Algebra(field, d, _chains(s, 0, d))


def build_A_st(s: Sequence[int], t: Sequence[int], q: int, field: Field = F2) -> Algebra:
    """Nilpotent chains s, plus companion blocks of (X^q + 1)^(2^t_i).

    A companion block of (X^q+1)^(2^t) equals X^(2^t q) + 1, i.e. a cycle of
    length 2^t q under V.
    """
    s, t = tuple(s), tuple(t)
    if s and not _decreasing(s, 1):
        raise ShapeError("s must be weakly decreasing with entries >= 1")
    if not t or not _decreasing(t, 0):
        raise ShapeError("t must be a nonempty weakly decreasing tuple of entries >= 0")
    if q < 1 or q % 2 == 0:
        raise ShapeError("q must be odd and positive")
    if ((1 << t[0]) * q) % field.p:
        raise FieldIncompatible(f"{field} does not embed in F_2^{(1 << t[0]) * q}")
    d = sum(s) + sum(1 << ti for ti in t) * q
    rows = _chains(s, 0, d)
    pos = sum(s)
    for ti in t:
        length = (1 << ti) * q
        for j in range(length):
            row = [0] * d
            row[pos + (j + 1) % length] = 1
            rows.append(row)
        pos += length
    return Algebra(field, d, rows)


def build_cycle_tail(p: int, n: int) -> Algebra:
    """A V-cycle a_1 -> ... -> a_p -> a_1 next to a nilpotent chain b_1 -> ... -> b_n -> 0."""
    if p < 1 or n < 0:
        raise ShapeError("need p >= 1 and n >= 0")
    d = p + n
    rows = []
    for j in range(p):
        row = [0] * d
        row[(j + 1) % p] = 1
        rows.append(row)
    for j in range(n):
        row = [0] * d
        if j + 1 < n:
            row[p + j + 1] = 1
        rows.append(row)
    return Algebra(F2, d, rows)


def _coeffs(P, field: Field) -> list[int]:
    if isinstance(P, int):
        return [(P >> k) & 1 for k in range(poly2.deg(P) + 1)]
    return [field.check(c) for c in P]


def build_companion(P, field: Field = F2, strict: bool = False) -> Algebra:
    """C_P: e_i^2 = e_(i+1), e_(n-1)^2 = sum alpha_k e_k for monic P of degree n.

    With ``strict`` the field is required to embed in F_2^sigma(P), which is
    exactly when P(V) = 0 holds on the whole algebra.
    """
    c = _coeffs(P, field)
    n = len(c) - 1
    if n < 1 or c[n] != 1:
        raise ShapeError("P must be monic of degree >= 1")
    if strict:
        exps = [k for k, a in enumerate(c) if a]
        if len(exps) >= 2 and poly2.sigma(c) % field.p:
            raise FieldIncompatible(f"{field} does not embed in F_2^{poly2.sigma(c)}")
    rows = []
    for i in range(n - 1):
        row = [0] * n
        row[i + 1] = 1
        rows.append(row)
    rows.append(list(c[:n]))
    return Algebra(field, n, rows)


def build_train_algebra(v: Sequence[int], blocks: Sequence[tuple], field: Field = F2) -> Algebra:
    """Direct sum of nilpotent chains v and companion algebras of the blocks.

    ``blocks`` lists (divisor, multiplicity) pairs; every divisor must have
    striction divisible by the field degree so that its companion algebra
    satisfies the divisor's identity.
    """
    v = tuple(v)
    if v and not _decreasing(v, 1):
        raise ShapeError("v must be weakly decreasing with entries >= 1")
    parts: list[Algebra] = []
    if v:
        parts.append(build_A_s(v, field))
    for divisor, mult in blocks:
        if mult < 0:
            raise ShapeError("multiplicities must be >= 0")
        C = build_companion(divisor, field, strict=True)
        parts.extend([C] * mult)
    if not parts:
        raise ShapeError("empty algebra")
    return direct_sum(parts)


def direct_sum(parts: Sequence[Algebra]) -> Algebra:
    field = parts[0].field
    d = sum(P.dim for P in parts)
    rows = []
    pos = 0
    for P in parts:
        if P.field != field:
            raise FieldMismatch("summands over different fields")
        for r in P.squares:
            row = [0] * d
            row[pos:pos + P.dim] = r
            rows.append(row)
        pos += P.dim
    return Algebra(field, d, rows)


# -- semi-isomorphism ----------------------------------------------------------


YES = "yes"
NO = "no"
NECESSARY_ONLY = "necessary_conditions_only"


@dataclass(frozen=True)
class SemiIsoVerdict:
    status: str
    passed: bool

    def __str__(self) -> str:
        if self.status == NECESSARY_ONLY:
            return f"{self.status} ({'pass' if self.passed else 'fail'})"
        return self.status


def semi_isomorphic(A: Algebra, B: Algebra) -> SemiIsoVerdict:
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions {A.dim} and {B.dim}")
    same = invariant_factors(A.operator.m2) == invariant_factors(B.operator.m2)
    if A.field.p == 1:
        return SemiIsoVerdict(YES if same else NO, same)
    if not same:
        return SemiIsoVerdict(NO, False)
    return SemiIsoVerdict(NECESSARY_ONLY, True)


# -- generators of nilpotent algebras ------------------------------------------


def generator_set(A: Algebra) -> list[tuple]:
    """Elements whose V-orbits span A, chosen greedily by decreasing nil degree."""
    from .bitmat import Echelon
    from .dynamics import orbit

    F = A.field
    span = Echelon()
    chosen = []
    cands = sorted(range(A.dim), key=lambda i: -orbit(A, A.basis(i)).preperiod)
    for i in cands:
        e = A.basis(i)
        if span.contains(A.pack(e)):
            continue
        chosen.append(e)
        x = e
        for _ in range(A.nbits):
            for a in range(F.p):
                span.insert(A.pack([F.mul(1 << a, c) for c in x]))
            x = A.operator.apply(x)
    return chosen
