import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evochar2 import poly2
from evochar2.errors import DivisionByZero, IncompatibleField, InvalidInput, MonomialInput, RejectedModulus
from evochar2.field import F2, is_subfield, make_field, smallest_irreducible

X = poly2.from_exponents


# -- field ---------------------------------------------------------------------


def test_f4_arithmetic():
    F = make_field(2)
    assert F.modulus == 0b111
    assert F.mul(2, 2) == 3
    assert F.inv(2) == 3
    assert F.frobenius(2, 1) == 3
    assert F.frobenius(2, 2) == 2


def test_default_moduli_are_smallest_irreducibles():
    assert smallest_irreducible(1) == 0b10
    assert smallest_irreducible(3) == 0b1011
    assert smallest_irreducible(8) == 0b100011011


def test_rejected_modulus():
    with pytest.raises(RejectedModulus):
        make_field(2, 0b101)  # (X+1)^2
    with pytest.raises(RejectedModulus):
        make_field(3, 0b111)
    with pytest.raises(InvalidInput):
        make_field(17)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        make_field(3).inv(0)


@pytest.mark.parametrize("p", range(1, 17))
def test_mul_matches_polynomial_oracle(p):
    F = make_field(p)
    rng = random.Random(p)
    for _ in range(200):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul(a, b) == poly2.mulmod(a, b, F.modulus)
        if a:
            assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=60)
@given(st.integers(1, 8), st.data())
def test_field_axioms(p, data):
    F = make_field(p)
    a, b, c = (data.draw(st.integers(0, F.order - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.mul(a, b) ^ F.mul(a, c)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.sqr(a ^ b) == F.sqr(a) ^ F.sqr(b)
    assert F.frobenius(a, p) == a
    assert F.frobenius_inverse(F.frobenius(a, 1), 1) == a


def test_alternative_modulus_tables_are_separate():
    F = make_field(4, 0b11001)
    G = make_field(4)
    assert F != G
    for a in range(1, 16):
        assert F.mul(a, F.inv(a)) == 1


def test_subfield():
    assert is_subfield(2, 4) and is_subfield(1, 7)
    assert not is_subfield(2, 3)
    assert make_field(6).contains_field_of_degree(3)


# -- polynomials ---------------------------------------------------------------


def test_factorization_examples():
    assert poly2.factor_f2(X([12, 10, 4, 0])) == [(0b11, 2), (0b111, 2), (0b1101, 2)]
    assert poly2.factor_f2(X([6, 0])) == [(0b11, 2), (0b111, 2)]
    assert poly2.factor_f2(X([2])) == [(0b10, 2)]


@settings(max_examples=80)
@given(st.integers(2, 1 << 20))
def test_factorization_properties(f):
    fac = poly2.factor_f2(f)
    assert poly2.product(fac) == f
    assert all(poly2.is_irreducible(g) for g, _ in fac)
    assert len({g for g, _ in fac}) == len(fac)


def _brute_irreducible(f):
    d = poly2.deg(f)
    return d >= 1 and all(poly2.mod(f, g) for g in range(2, 1 << (d // 2 + 1)) if 1 <= poly2.deg(g) <= d // 2)


def test_irreducibility_against_trial_division():
    for f in range(2, 1 << 11):
        assert poly2.is_irreducible(f) == _brute_irreducible(f), f


def _brute_order(g):
    k, r = 1, poly2.mod(poly2.X, g)
    while r != 1:
        r = poly2.mulmod(r, poly2.X, g)
        k += 1
    return k


def test_order_against_brute_force():
    assert poly2.order_mod(X([3, 2, 0])) == 7
    assert poly2.order_mod(X([2, 1, 0])) == 3
    for g in range(3, 1 << 10, 2):
        if poly2.deg(g) >= 1:
            assert poly2.order_mod(g) == _brute_order(g), g


def test_cyclotomic_product():
    phis = dict(poly2.cyclotomic_product(7))
    assert phis == {1: 0b11, 7: 0b1111111}
    assert poly2.mul(phis[1], phis[7]) == X([7, 0])
    assert poly2.factor_f2(phis[7]) == [(0b1011, 1), (0b1101, 1)]
    for b in (3, 5, 9, 15, 21):
        prod = 1
        for _, phi in poly2.cyclotomic_product(b):
            prod = poly2.mul(prod, phi)
        assert prod == X([b, 0])


def test_striction_examples():
    st_ = poly2.striction(5137)
    assert st_.sigma == 2 and st_.exponents == frozenset({0, 4, 10, 12})
    assert poly2.sigma(X([6, 0])) == 6
    assert poly2.sigma(X([12, 9, 3, 0])) == 3
    assert poly2.sigma([1, 0, 3, 0, 1]) == 2
    with pytest.raises(MonomialInput):
        poly2.striction(X([5]))


@given(st.integers(1, 6), st.lists(st.integers(0, 8), min_size=2, max_size=5, unique=True))
def test_striction_of_substituted_polynomial(k, exps):
    f = X(exps)
    g = X([k * e for e in exps])
    assert poly2.sigma(g) == k * poly2.sigma(f)


def test_compatible_structure_rejects_field():
    with pytest.raises(IncompatibleField):
        poly2.compatible_structure(X([12, 10, 4, 0]), 3)


def test_validate_subdivision():
    T = X([6, 0])
    assert poly2.validate_subdivision(T, 3, T, [X([3, 0]), T])
    assert not poly2.validate_subdivision(T, 3, T, [X([1, 0])])


def test_to_str_and_derivative():
    assert poly2.to_str(0b1101) == "X^3+X^2+1"
    assert poly2.derivative(0b1101) == 0b100
    assert poly2.sqrt(poly2.square(0b1011)) == 0b1011
    assert F2.order == 2
