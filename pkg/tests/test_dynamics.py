import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evochar2 import poly2
from evochar2.algebra import Algebra, evolution_apply
from evochar2.bitmat import minimal_polynomial
from evochar2.dynamics import (
    NILPOTENT,
    PERIODIC,
    apply_poly,
    classify,
    element_decomposition,
    element_profile,
    iterate,
    operator_profile,
    orbit,
    plenary_power,
    quasi_constant_check,
    quasi_constant_search,
    train_polynomial,
    verify_identity,
)
from evochar2.field import F2, make_field
from evochar2.generators import cyclic_algebra, idempotent_line, random_algebra, remark_algebra, rule90, rule150

F4 = make_field(2)

# (n, p) from first repeats of matrix powers, frozen.
RULE90 = {3: (1, 1), 4: (2, 1), 5: (1, 3), 6: (1, 2), 7: (1, 7), 8: (4, 1),
          9: (1, 7), 10: (1, 6), 11: (1, 31), 12: (2, 4)}
RULE150 = {3: (1, 1), 4: (0, 2), 5: (0, 3), 6: (2, 1), 7: (0, 7), 8: (0, 4),
           9: (1, 7), 10: (0, 6), 11: (0, 31), 12: (4, 2)}
NILPOTENT_RULE90 = {4, 8}


@pytest.mark.parametrize("n", sorted(RULE90))
def test_rule_profiles(n):
    p90 = operator_profile(rule90(n))
    assert p90.pair() == RULE90[n]
    assert (p90.kind == NILPOTENT) == (n in NILPOTENT_RULE90)
    assert operator_profile(rule150(n)).pair() == RULE150[n]
    assert operator_profile(rule150(n)).kind == PERIODIC


def test_rule_train_polynomials():
    assert str(train_polynomial(rule90(3))) == "X^2+X"
    assert str(train_polynomial(rule90(8))) == "X^4"
    assert str(train_polynomial(rule150(7))) == "X^4+X^3+X^2+1"
    assert str(train_polynomial(rule90(12))) == "X^6+X^2"


def test_minpoly_and_brute_profiles_agree():
    for seed in range(200):
        F = make_field(1 + seed % 3)
        A = random_algebra(F, 1 + seed % 4, seed, density=0.4 + 0.1 * (seed % 5))
        assert operator_profile(A) == operator_profile(A, "brute")


def test_orbits_bounded_by_operator_profile():
    rng = random.Random(1)
    for seed in range(50):
        A = random_algebra(F4, 3, seed)
        n, p = operator_profile(A).pair()
        for _ in range(5):
            x = tuple(rng.randrange(4) for _ in range(3))
            o = orbit(A, x)
            assert o.preperiod <= n and p % o.period == 0
            assert iterate(A, x, o.preperiod + o.period) == o.entry_point
            prof = element_profile(A, x)
            assert prof.certified


def test_plenary_power():
    A = rule90(3)
    x = (1, 0, 0)
    assert plenary_power(A, x, 1) == x
    assert plenary_power(A, x, 2) == (0, 1, 1)
    assert plenary_power(A, x, 3) == (0, 1, 1)
    with pytest.raises(ValueError):
        plenary_power(A, x, 0)


def test_element_decomposition():
    A = rule90(6)
    rng = random.Random(2)
    for _ in range(20):
        x = tuple(rng.randrange(2) for _ in range(6))
        a, b = element_decomposition(A, x)
        o = orbit(A, x)
        assert tuple(s ^ t for s, t in zip(a, b)) == x
        assert iterate(A, a, o.period) == a
        assert not any(iterate(A, b, o.preperiod))


def test_period_of_sum_only_divides_lcm():
    """Sum periods divide the lcm of the parts but need not reach it."""
    A = cyclic_algebra(6)
    x1 = (1, 0, 1, 0, 1, 0)
    x2 = (0, 0, 1, 1, 1, 0)
    o1, o2 = orbit(A, x1), orbit(A, x2)
    assert (o1.preperiod, o1.period) == (0, 2)
    assert (o2.preperiod, o2.period) == (0, 6)
    s = tuple(a ^ b for a, b in zip(x1, x2))
    assert s == (1, 0, 0, 1, 0, 0)
    assert orbit(A, s).period == 3


@settings(max_examples=60)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_sum_period_divides_lcm(seed, p):
    F = make_field(p)
    rng = random.Random(seed)
    A = random_algebra(F, 3, seed)
    x = tuple(rng.randrange(F.order) for _ in range(3))
    y = tuple(rng.randrange(F.order) for _ in range(3))
    ox, oy = orbit(A, x), orbit(A, y)
    os_ = orbit(A, tuple(a ^ b for a, b in zip(x, y)))
    lcm = math.lcm(ox.period, oy.period)
    assert lcm % os_.period == 0
    assert os_.preperiod <= max(ox.preperiod, oy.preperiod)


# -- quasi-constant algebras ----------------------------------------------------


def test_quasi_constant_only_idempotent_line():
    assert quasi_constant_check(idempotent_line()) == (1, (1,))
    assert classify(idempotent_line()).kind == "quasi-constant"
    for p in (1, 2):
        F = make_field(p)
        for d in (1, 2):
            for seed in range(15):
                A = random_algebra(F, d, seed, "general")
                assert quasi_constant_search(A, 6) == quasi_constant_check(A)


def test_exhaustive_quasi_constant_f2_dim2():
    for bits in range(16):
        sq = [[bits & 1, (bits >> 1) & 1], [(bits >> 2) & 1, (bits >> 3) & 1]]
        A = Algebra(F2, 2, sq)
        assert quasi_constant_search(A, 8) is None


# -- train polynomials -----------------------------------------------------------


def test_train_equals_minpoly_over_f2():
    for seed in range(100):
        A = random_algebra(F2, 1 + seed % 6, seed)
        T = train_polynomial(A)
        assert T.as_poly2() == minimal_polynomial(A.operator.m2)
        assert verify_identity(A, T)


def _brute_train(A):
    """All minimal-degree monic T over F with T(V) = 0, checked on every element."""
    F = A.field
    elems = [A.unpack(b) for b in range(A.size)]
    for n in range(0, A.nbits + 1):
        found = []
        for low in itertools.product(range(F.order), repeat=n):
            coeffs = list(low) + [1]
            if all(not any(apply_poly(A, coeffs, x)) for x in elems):
                found.append(tuple(coeffs))
        if found:
            return found
    raise AssertionError


def test_train_against_enumeration_over_f4():
    for seed in range(25):
        A = random_algebra(F4, 1 + seed % 2, seed, density=0.6)
        found = _brute_train(A)
        assert len(found) == 1
        assert train_polynomial(A).coeffs == found[0]


def test_train_over_f4_line():
    A = Algebra(F4, 1, [[2]])
    T = train_polynomial(A)
    assert verify_identity(A, T)
    assert T.degree == 2 and T.striction == 2


def test_verify_identity_witness():
    A = remark_algebra()
    assert verify_identity(A, poly2.from_exponents([7, 0]))
    check = verify_identity(A, poly2.from_exponents([6, 0]))
    assert not check and check.witness is not None


def test_apply_poly_matches_direct_sum():
    A = rule150(5)
    x = (1, 1, 0, 0, 1)
    expect = tuple(a ^ b for a, b in zip(evolution_apply(A, evolution_apply(A, x)), x))
    assert apply_poly(A, 0b101, x) == expect
