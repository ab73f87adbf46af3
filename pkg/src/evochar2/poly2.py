"""Univariate polynomials over F_2 and F_{2^p}.

Polynomials over F_2 are plain Python ints: bit k holds the coefficient of
X^k, so ``0b1011`` is X^3 + X + 1 and ``0`` is the zero polynomial.
Polynomials over a larger field are sequences of field elements, lowest
degree first (see :mod:`evochar2.field`).

Besides the usual arithmetic this module factors over F_2, computes the
multiplicative order of X modulo a polynomial, the striction of a
polynomial (gcd of the gaps between its exponents) and the compatible
partitions/subdivisions used to build train-algebra canonical forms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Sequence

from .errors import DivisionByZero, IncompatibleField, InvalidInput, MonomialInput

MAX_DEGREE = 1 << 16

X = 0b10
ONE = 1


def deg(a: int) -> int:
    """Degree of ``a``; the zero polynomial has degree -1."""
    return a.bit_length() - 1


def exponents(a: int) -> list[int]:
    out = []
    k = 0
    while a:
        if a & 1:
            out.append(k)
        a >>= 1
        k += 1
    return out


def from_exponents(exps: Iterable[int]) -> int:
    r = 0
    for k in exps:
        r ^= 1 << k
    return r


def mul(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b << (low.bit_length() - 1)
        a ^= low
    return r


def divmod2(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of ``a`` by ``b`` over F_2."""
    if b == 0:
        raise DivisionByZero("polynomial division by zero")
    db = deg(b)
    q = 0
    while a and deg(a) >= db:
        shift = deg(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def mod(a: int, b: int) -> int:
    return divmod2(a, b)[1]


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, mod(a, b)
    return a


def lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return divmod2(mul(a, b), gcd(a, b))[0]


def add(a: int, b: int) -> int:
    return a ^ b


def arith(a: int, b: int, op: str):
    """Dispatch for the named operations ``add mul divmod gcd lcm``."""
    ops = {"add": add, "mul": mul, "divmod": divmod2, "gcd": gcd, "lcm": lcm}
    try:
        return ops[op](a, b)
    except KeyError:
        raise InvalidInput(f"unknown polynomial operation {op!r}") from None


def mulmod(a: int, b: int, m: int) -> int:
    return mod(mul(a, b), m)


def sqrmod(a: int, m: int) -> int:
    return mod(square(a), m)


def square(a: int) -> int:
    # Frobenius: (sum a_k X^k)^2 = sum a_k X^{2k}
    r = 0
    k = 0
    while a:
        if a & 1:
            r |= 1 << (2 * k)
        a >>= 1
        k += 1
    return r


def powmod(a: int, e: int, m: int) -> int:
    r = 1 if deg(m) > 0 else 0
    a = mod(a, m)
    while e:
        if e & 1:
            r = mulmod(r, a, m)
        a = sqrmod(a, m)
        e >>= 1
    return r


def pow2(a: int, e: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = mul(r, a)
        a = square(a)
        e >>= 1
    return r


def derivative(a: int) -> int:
    # only odd exponents survive in characteristic 2
    mask = int("10" * (a.bit_length() // 2 + 1), 2)
    return (a & mask) >> 1


def sqrt(a: int) -> int:
    """Square root of a polynomial with only even exponents."""
    r = 0
    k = 0
    while a:
        if a & 1:
            r |= 1 << (k // 2)
        if a & 2:
            raise InvalidInput("polynomial is not a perfect square")
        a >>= 2
        k += 2
    return r


def is_irreducible(f: int) -> bool:
    """Rabin's irreducibility test over F_2."""
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    if not f & 1:
        return False
    h = X
    for _ in range(n):
        h = sqrmod(h, f)
    if h != mod(X, f):
        return False
    for q in _prime_factors(n):
        h = X
        for _ in range(n // q):
            h = sqrmod(h, f)
        if gcd(f, h ^ X) != 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _squarefree_parts(f: int) -> list[tuple[int, int]]:
    """Square-free decomposition: pairs (g, i) with f = prod g^i."""
    out: list[tuple[int, int]] = []
    c = gcd(f, derivative(f))
    w = divmod2(f, c)[0]
    i = 1
    while w != 1:
        y = gcd(w, c)
        z = divmod2(w, y)[0]
        if z != 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod2(c, y)[0]
    if c != 1:
        # what remains has only even exponents, i.e. is a perfect square
        for g, j in _squarefree_parts(sqrt(c)):
            out.append((g, 2 * j))
    return out


def _distinct_degree(f: int) -> list[tuple[int, int]]:
    out = []
    h = X
    d = 1
    while deg(f) >= 2 * d:
        h = sqrmod(h, f)
        g = gcd(f, h ^ X)
        if g != 1:
            out.append((g, d))
            f = divmod2(f, g)[0]
            h = mod(h, f)
        d += 1
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _equal_degree(f: int, d: int, rng: random.Random) -> list[int]:
    if deg(f) == d:
        return [f]
    n = deg(f)
    while True:
        a = rng.getrandbits(n) | 2
        t = a = mod(a, f)
        for _ in range(d - 1):
            a = sqrmod(a, f)
            t ^= a
        g = gcd(f, t)
        if 0 < deg(g) < n:
            return _equal_degree(g, d, rng) + _equal_degree(divmod2(f, g)[0], d, rng)


def factor_f2(f: int) -> list[tuple[int, int]]:
    """Factor ``f`` into irreducibles over F_2.

    Returns ``[(factor, multiplicity), ...]`` sorted by degree then by bitmask.
    The equal-degree split uses a fixed seed, so output is reproducible.
    """
    if deg(f) < 1:
        raise InvalidInput("cannot factor a constant polynomial")
    if deg(f) > MAX_DEGREE:
        raise InvalidInput(f"degree {deg(f)} exceeds the cap {MAX_DEGREE}")
    rng = random.Random(0x5EED)
    counts: dict[int, int] = {}
    for part, mult in _squarefree_parts(f):
        for block, d in _distinct_degree(part):
            for g in _equal_degree(block, d, rng):
                counts[g] = counts.get(g, 0) + mult
    return sorted(counts.items(), key=lambda fm: (deg(fm[0]), fm[0]))


def product(factors: Iterable[tuple[int, int]]) -> int:
    return reduce(mul, (pow2(g, r) for g, r in factors), 1)


def order_mod(g: int) -> int:
    """Least p >= 1 with g dividing X^p + 1."""
    if deg(g) < 1:
        raise InvalidInput("order_mod needs a polynomial of degree >= 1")
    if not g & 1:
        raise InvalidInput("order_mod needs g(0) = 1")
    from sympy import factorint

    order = 1
    for f, r in factor_f2(g):
        m = (1 << deg(f)) - 1
        o = m
        for q, e in factorint(m).items():
            for _ in range(e):
                if powmod(X, o // q, f) == 1:
                    o //= q
                else:
                    break
        # ord(f^r) = ord(f) * 2^ceil(log2 r)
        o <<= (r - 1).bit_length()
        order = order * o // igcd(order, o)
    return order


def cyclotomic_product(b: int) -> list[tuple[int, int]]:
    """The cyclotomic factors ``[(d, Phi_d), ...]`` of X^b + 1 for odd b."""
    if b < 1 or b % 2 == 0:
        raise InvalidInput("cyclotomic_product needs an odd b >= 1")
    phis: dict[int, int] = {}
    for d in range(1, b + 1):
        if b % d:
            continue
        num = (1 << d) | 1
        for e, phi in phis.items():
            if d % e == 0:
                num, r = divmod2(num, phi)
                assert r == 0
        phis[d] = num
    return sorted(phis.items())


def to_str(a: int, var: str = "X") -> str:
    if a == 0:
        return "0"
    terms = []
    for k in reversed(exponents(a)):
        terms.append("1" if k == 0 else var if k == 1 else f"{var}^{k}")
    return "+".join(terms)


# -- striction ---------------------------------------------------------------


@dataclass(frozen=True)
class StrictionReport:
    exponents: frozenset[int]
    sigma: int
    valuation: int
    degree: int


def nonzero_exponents(f) -> list[int]:
    """Exponents carrying a nonzero coefficient, for an int or a coefficient list."""
    if isinstance(f, int):
        return exponents(f)
    return [k for k, c in enumerate(f) if c]


def striction(f) -> StrictionReport:
    """Striction of a polynomial over F_2 (int) or F_{2^p} (coefficient list)."""
    exps = nonzero_exponents(f)
    if len(exps) < 2:
        raise MonomialInput("striction is undefined for monomials")
    v = exps[0]
    sigma = reduce(igcd, (k - v for k in exps[1:]))
    return StrictionReport(frozenset(exps), sigma, v, exps[-1])


def sigma(f) -> int:
    return striction(f).sigma


# -- compatible partitions and subdivisions ----------------------------------


@dataclass(frozen=True)
class CompatibleStructure:
    """Finest F_{2^p}-compatible partition of the factors of T and its chains.

    ``factors`` lists the irreducible factors (and multiplicities) of T other
    than X, in ascending degree; ``partition`` holds 0-based index tuples into
    ``factors``; ``subdivisions[k]`` is the list of maximal divisor chains for
    block k, each chain ascending by divisibility and ending at the block's
    full product.
    """

    p: int
    valuation: int
    factors: tuple[tuple[int, int], ...]
    partition: tuple[tuple[int, ...], ...]
    subdivisions: tuple[tuple[tuple[int, ...], ...], ...]

    def block_product(self, k: int) -> int:
        return product(self.factors[i] for i in self.partition[k])


def _set_partitions(items: list[int]):
    """All set partitions of ``items``; blocks keep ascending order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _block_ok(block: Sequence[int], factors, p: int) -> bool:
    d = product(factors[i] for i in block)
    return sigma(d) % p == 0


def _divisors(factors: Sequence[tuple[int, int]]) -> list[int]:
    ranges = [range(r + 1) for _, r in factors]
    out = []
    for exps in itertools.product(*ranges):
        if any(exps):
            out.append(product((g, e) for (g, _), e in zip(factors, exps)))
    return out


def _maximal_chains(elements: list[int], top: int) -> list[tuple[int, ...]]:
    elems = sorted(set(elements), key=lambda a: (deg(a), a))

    def divides(a, b):
        return a != b and mod(b, a) == 0

    def covers_below(b):
        below = [a for a in elems if divides(a, b)]
        return [a for a in below if not any(divides(a, c) for c in below if c != a)]

    chains: list[tuple[int, ...]] = []

    def walk(b, suffix):
        lower = covers_below(b)
        if not lower:
            chains.append(tuple([b] + suffix))
            return
        for a in lower:
            walk(a, [b] + suffix)

    walk(top, [])
    return sorted(chains, key=lambda c: [(deg(a), a) for a in c])


def compatible_structure(T: int, p: int) -> CompatibleStructure:
    """Finest F_{2^p}-compatible partition of T's factors with maximal chains.

    Partitions are searched exhaustively from the finest (singletons) upward;
    among partitions with the most blocks, the first in merge order (a block
    absorbs later indices in ascending order) wins.
    """
    if p < 1:
        raise InvalidInput("p must be >= 1")
    st = striction(T)
    if st.sigma % p:
        raise IncompatibleField(f"{p} does not divide the striction {st.sigma}")
    v = st.valuation
    core = T >> v
    factors = tuple(factor_f2(core)) if deg(core) >= 1 else ()
    m = len(factors)
    if m > 12:
        raise InvalidInput("too many distinct factors for an exhaustive partition search")
    best = None
    for part in _set_partitions(list(range(m))):
        if best is not None and len(part) <= len(best):
            continue
        if all(_block_ok(b, factors, p) for b in part):
            best = part
    assert best is not None  # the one-block partition always qualifies
    partition = tuple(sorted(tuple(b) for b in best))
    subdivisions = []
    for block in partition:
        sub = [factors[i] for i in block]
        top = product(sub)
        good = [d for d in _divisors(sub) if deg(d) >= 1 and len(exponents(d)) >= 2 and sigma(d) % p == 0]
        subdivisions.append(tuple(_maximal_chains(good, top)))
    return CompatibleStructure(p, v, factors, partition, tuple(subdivisions))


def validate_subdivision(T: int, p: int, block_product: int, chain: Sequence[int]) -> bool:
    """Check a user-supplied divisor chain for one block of T's partition."""
    if mod(T, block_product) != 0:
        return False
    for d in chain:
        if deg(d) < 1 or mod(block_product, d) != 0:
            return False
        if len(exponents(d)) < 2 or sigma(d) % p:
            return False
    for a, b in itertools.combinations(chain, 2):
        if mod(b, a) != 0 and mod(a, b) != 0:
            return False
    return True
