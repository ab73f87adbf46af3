import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evochar2 import poly2
from evochar2.algebra import Algebra
from evochar2.bitmat import BitMatrix, Echelon, minimal_polynomial
from evochar2.canonical import (
    NECESSARY_ONLY,
    NO,
    YES,
    build_A_s,
    build_A_st,
    build_companion,
    build_cycle_tail,
    build_train_algebra,
    direct_sum,
    generator_set,
    invariant_factors,
    nilpotent_invariants,
    periodic_invariants,
    semi_isomorphic,
)
from evochar2.dynamics import operator_profile, orbit, verify_identity
from evochar2.errors import (
    DimensionMismatch,
    FieldIncompatible,
    FieldMismatch,
    NotNilpotent,
    NotPeriodic,
    ShapeError,
    UnexpectedFactorShape,
)
from evochar2.field import F2, make_field
from evochar2.generators import random_algebra, rule90, rule150

F4 = make_field(2)
X = poly2.from_exponents


def _random_matrix(rng, n):
    return BitMatrix(n, tuple(rng.getrandbits(n) for _ in range(n)))


def _random_invertible(rng, n):
    while True:
        P = _random_matrix(rng, n)
        if P.rank() == n:
            return P


def _inverse(P):
    n = P.n
    return BitMatrix(n, tuple(P.solve(1 << j) for j in range(n)))


def _charpoly(M):
    """det(XI + M) by cofactor expansion, fine for small n."""
    rows = [[((M.cols[j] >> i) & 1) ^ (poly2.X if i == j else 0) for j in range(M.n)] for i in range(M.n)]

    def det(a):
        if len(a) == 1:
            return a[0][0]
        acc = 0
        for j, c in enumerate(a[0]):
            if c:
                minor = [r[:j] + r[j + 1:] for r in a[1:]]
                acc ^= poly2.mul(c, det(minor))
        return acc

    return det(rows)


# -- invariant factors -----------------------------------------------------------


def test_invariant_factor_examples():
    assert invariant_factors(BitMatrix.identity(2)) == [0b11, 0b11]
    assert invariant_factors(build_A_s([2, 1]).operator.m2) == [X([1]), X([2])]
    assert invariant_factors(BitMatrix.zero(3)) == [X([1])] * 3
    assert invariant_factors(rule90(4).operator.m2) == [X([2]), X([2])]


def test_invariant_factor_structure():
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randint(1, 6)
        M = _random_matrix(rng, n)
        fs = invariant_factors(M)
        assert sum(poly2.deg(f) for f in fs) == n
        assert all(poly2.mod(b, a) == 0 for a, b in zip(fs, fs[1:]))
        assert fs[-1] == minimal_polynomial(M)
        prod = 1
        for f in fs:
            prod = poly2.mul(prod, f)
        assert prod == _charpoly(M)


def test_nilpotent_block_counts_against_ranks():
    """Blocks of size >= k number rank(M^(k-1)) - rank(M^k)."""
    for s in ([3], [2, 2], [4, 2, 1], [3, 3, 1, 1]):
        A = build_A_s(s)
        M = A.operator.m2
        blocks = sorted(poly2.deg(f) for f in invariant_factors(M))
        for k in range(1, max(s) + 1):
            count = (M ** (k - 1)).rank() - (M ** k).rank()
            assert count == sum(1 for b in blocks if b >= k)
        assert nilpotent_invariants(A) == tuple(sorted(s, reverse=True))


def test_similarity_invariance():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(1, 7)
        M = _random_matrix(rng, n)
        P = _random_invertible(rng, n)
        N = _inverse(P) @ M @ P
        assert invariant_factors(M) == invariant_factors(N)


# -- canonical invariants ------------------------------------------------------------


@pytest.mark.parametrize("s", [(1,), (3,), (2, 2, 1), (5, 3, 3, 1)])
def test_nilpotent_round_trip(s):
    A = build_A_s(s)
    assert nilpotent_invariants(A) == s
    assert operator_profile(A).pair() == (s[0], 1)


@pytest.mark.parametrize("s,t,q", [((), (0,), 1), ((2,), (1, 0), 3), ((3, 1), (2,), 1), ((), (1, 1), 5)])
def test_periodic_round_trip(s, t, q):
    A = build_A_st(s, t, q)
    inv = periodic_invariants(A)
    assert (inv.s, inv.t, inv.q) == (s, t, q)
    assert inv.dim == A.dim
    assert operator_profile(A).pair() == ((s[0] if s else 0), inv.period)


def test_periodic_invariants_from_random_conjugates():
    rng = random.Random(3)
    A = build_A_st((2, 1), (1, 0), 3)
    M = A.operator.m2
    for _ in range(5):
        P = _random_invertible(rng, M.n)
        N = _inverse(P) @ M @ P
        B = Algebra(F2, A.dim, N.rows())
        assert periodic_invariants(B) == periodic_invariants(A)


def test_unexpected_factor_shape():
    # a 3-cycle next to a fixed point: factors X+1 and X^3+1 have no common q
    A = direct_sum([build_cycle_tail(3, 0), build_cycle_tail(1, 0)])
    with pytest.raises(UnexpectedFactorShape) as info:
        periodic_invariants(A)
    assert info.value.report["unexpected"]


def test_kind_errors():
    with pytest.raises(NotNilpotent):
        nilpotent_invariants(rule150(4))
    with pytest.raises(NotPeriodic):
        periodic_invariants(rule90(4))
    with pytest.raises(FieldMismatch):
        nilpotent_invariants(build_A_s([2], F4))


def test_builder_shape_errors():
    with pytest.raises(ShapeError):
        build_A_s([1, 2])
    with pytest.raises(ShapeError):
        build_A_s([])
    with pytest.raises(ShapeError):
        build_A_st([], [], 1)
    with pytest.raises(ShapeError):
        build_A_st([], [0], 2)
    with pytest.raises(FieldIncompatible):
        build_A_st([], [0], 3, F4)
    with pytest.raises(ShapeError):
        build_companion(0b1)


def test_cycle_tail_profile():
    for p in range(1, 6):
        for n in range(0, 5):
            A = build_cycle_tail(p, n)
            assert operator_profile(A).pair() == (n, p)


def test_companion_satisfies_its_polynomial():
    for P in (X([3, 1, 0]), X([4, 0]), X([6, 4, 2]), X([5, 2])):
        C = build_companion(P)
        assert verify_identity(C, P)
        assert minimal_polynomial(C.operator.m2) == P


def test_companion_over_extension_fields():
    P = X([4, 2, 0])
    assert verify_identity(build_companion(P, F4, strict=True), P)
    with pytest.raises(FieldIncompatible):
        build_companion(X([3, 1, 0]), F4, strict=True)
    # non-strict mode builds the algebra but the identity fails
    assert not verify_identity(build_companion(X([3, 1, 0]), F4), X([3, 1, 0]))


def test_train_algebra_builder():
    A = build_train_algebra([2, 1], [(X([4, 2, 0]), 2), (X([1, 0]), 1)])
    assert A.dim == 3 + 8 + 1
    assert operator_profile(A).n == 2


# -- semi-isomorphism --------------------------------------------------------------


def test_semi_iso_over_f2():
    rng = random.Random(4)
    A = random_algebra(F2, 5, 7)
    P = _random_invertible(rng, 5)
    B = Algebra(F2, 5, (_inverse(P) @ A.operator.m2 @ P).rows())
    assert semi_isomorphic(A, B).status == YES
    assert semi_isomorphic(rule90(4), rule150(4)).status == NO


def test_semi_iso_over_f4():
    A = build_A_s([2, 1], F4)
    assert semi_isomorphic(A, A).status == NECESSARY_ONLY
    assert semi_isomorphic(A, build_A_s([3], F4)).status == NO
    with pytest.raises(FieldMismatch):
        semi_isomorphic(A, build_A_s([2, 1]))
    with pytest.raises(DimensionMismatch):
        semi_isomorphic(rule90(3), rule90(4))


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_semi_isomorphic_images_have_equal_dimensions(seed):
    rng = random.Random(seed)
    A = random_algebra(F2, 5, seed)
    P = _random_invertible(rng, 5)
    B = Algebra(F2, 5, (_inverse(P) @ A.operator.m2 @ P).rows())
    for k in range(1, 6):
        assert (A.operator.m2 ** k).rank() == (B.operator.m2 ** k).rank()


# -- generators --------------------------------------------------------------------


@pytest.mark.parametrize("s", [(3,), (2, 2), (4, 2, 1)])
def test_generator_set_spans(s):
    A = build_A_s(s)
    gens = generator_set(A)
    assert len(gens) == len(s)
    ech = Echelon()
    for g in gens:
        x = g
        while any(x):
            ech.insert(A.pack(x))
            x = A.operator.apply(x)
    assert len(ech) == A.dim
    assert sorted((orbit(A, g).preperiod for g in gens), reverse=True) == list(s)
