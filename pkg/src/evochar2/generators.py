"""Example algebras: cellular automata, finite dynamical systems, random algebras.

Generators document bases as e_1..e_n; internally (and on disk) coordinates
are 0-indexed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm
from typing import Optional

from .algebra import Algebra, hadamard_composite
from .errors import NotEvolutionAlgebra, SizeTooSmall
from .field import F2, Field


def _unit(d: int, *idx: int) -> list[int]:
    v = [0] * d
    for i in idx:
        v[i] ^= 1
    return v


def rule90(n: int) -> Algebra:
    """Ring of n cells, e_i^2 = e_(i-1) + e_(i+1)."""
    if n < 3:
        raise SizeTooSmall("rule 90 rings need n >= 3")
    return Algebra(F2, n, [_unit(n, (i + 1) % n, (i - 1) % n) for i in range(n)])


def rule150(n: int) -> Algebra:
    """Ring of n cells, e_i^2 = e_(i-1) + e_i + e_(i+1)."""
    if n < 3:
        raise SizeTooSmall("rule 150 rings need n >= 3")
    return Algebra(F2, n, [_unit(n, (i + 1) % n, i, (i - 1) % n) for i in range(n)])


def cyclic_algebra(n: int, field: Field = F2) -> Algebra:
    """V permutes the basis cyclically: e_i^2 = e_(i+1)."""
    return Algebra(field, n, [_unit(n, (i + 1) % n) for i in range(n)])


def idempotent_line(field: Field = F2) -> Algebra:
    return Algebra(field, 1, [[1]])


def zero_algebra(d: int = 1, field: Field = F2) -> Algebra:
    return Algebra(field, d, [[0] * d for _ in range(d)])


def remark_algebra() -> Algebra:
    """Dimension 3 with e_1 -> e_2 -> e_3 -> e_1 + e_3 under squaring."""
    return Algebra(F2, 3, [[0, 1, 0], [0, 0, 1], [1, 0, 1]])


@dataclass(frozen=True)
class DynSys:
    size: int
    f: tuple

    def __post_init__(self):
        f = tuple(self.f)
        if len(f) != self.size or any(not 0 <= y < self.size for y in f):
            raise ValueError("map must be a total function on 0..size-1")
        object.__setattr__(self, "f", f)


def quadratic_map(c: int, m: int) -> DynSys:
    """x -> x^2 + c mod m."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    return DynSys(m, tuple((x * x + c) % m for x in range(m)))


def f4_infinity_system() -> DynSys:
    """Points 0, 1, a, a^2, oo with a, a^2 -> 1 -> 0 -> oo -> oo."""
    return DynSys(5, (4, 0, 1, 1, 4))


def functional_graph_profile(D: DynSys) -> tuple[int, int]:
    """(longest tail, lcm of cycle lengths) of the map."""
    tail = 0
    period = 1
    for start in range(D.size):
        seen = {}
        x = start
        while x not in seen:
            seen[x] = len(seen)
            x = D.f[x]
        mu = seen[x]
        tail = max(tail, mu)
        period = lcm(period, len(seen) - mu)
    return tail, period


def dynsys_algebra(D: DynSys) -> tuple[Algebra, tuple[int, int]]:
    """Algebra with e_i^2 = e_f(i), and the combinatorial profile of f."""
    n = D.size
    A = Algebra(F2, n, [_unit(n, D.f[i]) for i in range(n)])
    return A, functional_graph_profile(D)


def random_algebra(
    field: Field,
    dim: int,
    seed: int,
    kind: str = "evolution",
    density: float = 0.5,
) -> Algebra:
    """Deterministic random algebra; 'evolution' keeps off-diagonal products zero."""
    rng = random.Random(seed)

    def coord():
        return rng.randrange(1, field.order) if rng.random() < density else 0

    squares = [[coord() for _ in range(dim)] for _ in range(dim)]
    if kind == "evolution":
        return Algebra(field, dim, squares)
    if kind != "general":
        raise ValueError(f"unknown kind {kind!r}")
    table = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        table[i][i] = squares[i]
        for j in range(i + 1, dim):
            table[i][j] = table[j][i] = [coord() for _ in range(dim)]
    return Algebra(field, dim, squares, table)


def hadamard_vanishing_index(A: Algebra) -> Optional[int]:
    """Least k with S S^(.2) ... S^(.2^(k-1)) = 0, or None if none up to p*d."""
    if not A.is_evolution():
        raise NotEvolutionAlgebra("the basis is not natural")
    F = A.field
    S = A.operator.S
    bound = A.nbits
    comp = S
    for k in range(1, bound + 1):
        if k > 1:
            comp = _mul(F, comp, [[F.frobenius(c, k - 1) for c in row] for row in S])
        if not any(any(row) for row in comp):
            return k
    return None


def _mul(F, A, B):
    n = len(A)
    return [
        [_dot(F, A[i], [B[t][j] for t in range(n)]) for j in range(n)]
        for i in range(n)
    ]


def _dot(F, u, v):
    r = 0
    for a, b in zip(u, v):
        if a and b:
            r ^= F.mul(a, b)
    return r


def evolution_nilpotency_check(A: Algebra) -> bool:
    """Nilpotency of V through the structure matrix alone.

    Over F_2 this is nilpotency of S; over larger fields the Hadamard
    composite must vanish for some k.
    """
    if A.field.p == 1 and not A.is_evolution():
        raise NotEvolutionAlgebra("the basis is not natural")
    if A.field.p == 1:
        S = A.operator.S
        P = S
        for _ in range(A.dim):
            if not any(any(r) for r in P):
                return True
            P = _mul(F2, P, S)
        return not any(any(r) for r in P)
    return hadamard_vanishing_index(A) is not None


__all__ = [
    "DynSys",
    "cyclic_algebra",
    "dynsys_algebra",
    "evolution_nilpotency_check",
    "f4_infinity_system",
    "functional_graph_profile",
    "hadamard_composite",
    "hadamard_vanishing_index",
    "idempotent_line",
    "quadratic_map",
    "random_algebra",
    "remark_algebra",
    "rule150",
    "rule90",
    "zero_algebra",
]
