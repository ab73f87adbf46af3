"""Arithmetic in F_{2^p}, 1 <= p <= 16.

Elements are ints below 2^p holding coordinates in the polynomial basis
1, X, ..., X^{p-1}; addition is xor. Multiplication goes through exp/log
tables built once per (p, modulus) and shared between equal descriptors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import poly2
from .errors import DivisionByZero, InvalidInput, RejectedModulus

MAX_P = 16


@lru_cache(maxsize=None)
def smallest_irreducible(p: int) -> int:
    if p == 1:
        return poly2.X
    for m in range((1 << p) | 1, 1 << (p + 1), 2):
        if poly2.is_irreducible(m):
            return m
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _clmul_mod(a: int, b: int, modulus: int, p: int) -> int:
    r = 0
    top = 1 << p
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return r


@lru_cache(maxsize=None)
def _tables(p: int, modulus: int) -> tuple[list[int], list[int]]:
    q = 1 << p
    if p == 1:
        return [1, 1], [0, 0]
    for g in range(2, q):
        exp = [1] * (2 * (q - 1))
        x = 1
        for i in range(1, q - 1):
            x = _clmul_mod(x, g, modulus, p)
            if x == 1:
                break
            exp[i] = x
        else:
            log = [0] * q
            for i in range(q - 1):
                log[exp[i]] = i
            exp[q - 1:] = exp[: q - 1]
            return exp, log
    raise AssertionError("no primitive element found")


@dataclass(frozen=True)
class Field:
    """The field F_{2^p} presented as F_2[X]/(modulus)."""

    p: int
    modulus: int

    @property
    def order(self) -> int:
        return 1 << self.p

    @property
    def is_prime(self) -> bool:
        return self.p == 1

    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or a < 0 or a >= self.order:
            raise InvalidInput(f"{a!r} is not an element of F_{self.order}")
        return a

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.p == 1:
            return 1
        exp, log = _tables(self.p, self.modulus)
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        if self.p == 1:
            return 1
        exp, log = _tables(self.p, self.modulus)
        return exp[(self.order - 1 - log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.p == 1:
            return 1
        exp, log = _tables(self.p, self.modulus)
        return exp[(log[a] * e) % (self.order - 1)]

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(2^k)."""
        if k < 0:
            raise InvalidInput("frobenius needs k >= 0")
        k %= self.p
        if a == 0 or k == 0:
            return a
        exp, log = _tables(self.p, self.modulus)
        return exp[(log[a] << k) % (self.order - 1)]

    def frobenius_inverse(self, a: int, k: int = 1) -> int:
        """The unique b with b^(2^k) = a."""
        return self.frobenius(a, (-k) % self.p)

    def arith(self, a: int, b: int | None, op: str) -> int:
        if op == "add":
            return self.add(a, b)
        if op == "mul":
            return self.mul(a, b)
        if op == "inv":
            return self.inv(a)
        if op == "pow":
            return self.pow(a, b)
        raise InvalidInput(f"unknown field operation {op!r}")

    def contains_field_of_degree(self, m: int) -> bool:
        return is_subfield(m, self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "modulus": self.modulus}

    def __str__(self) -> str:
        return f"F_{self.order}"


def make_field(p: int, modulus: int | None = None) -> Field:
    if not isinstance(p, int) or not 1 <= p <= MAX_P:
        raise InvalidInput(f"extension degree must be in 1..{MAX_P}, got {p!r}")
    if modulus is None:
        return Field(p, smallest_irreducible(p))
    if poly2.deg(modulus) != p:
        raise RejectedModulus(f"modulus {modulus:#b} does not have degree {p}")
    if not poly2.is_irreducible(modulus):
        raise RejectedModulus(f"modulus {poly2.to_str(modulus)} is reducible over F_2")
    return Field(p, modulus)


def is_subfield(p: int, m: int) -> bool:
    """Whether F_{2^p} embeds in F_{2^m}."""
    if p < 1 or m < 1:
        raise InvalidInput("degrees must be >= 1")
    return m % p == 0


F2 = make_field(1)
