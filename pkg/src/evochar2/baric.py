"""Weighted (baric) algebras: quasi-constancy, Bernstein periodicity, train identities.

Every x splits as x = l e0 + z with l = omega(x), e0 a fixed weight-1
element and z in ker omega. Since V is additive,
V^k(x) = l^(2^k) V^k(e0) + V^k(z), and identities carrying powers of
omega(x) reduce to finitely many conditions by separating powers of l.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import Algebra, Vector, check_morphism, weight_of
from .bitmat import Echelon
from .dynamics import iterate
from .errors import InvariantViolation, KernelNotNilplenary, ShapeError, ZeroWeight
from .field import F2, Field


@dataclass(frozen=True)
class BaricStructure:
    algebra: Algebra
    omega: tuple
    kernel_basis: tuple
    unit_rep: Vector


def check_weight(A: Algebra) -> BaricStructure:
    if A.weight is None:
        raise ZeroWeight("the algebra carries no weight")
    check_morphism(A)
    F = A.field
    w = A.weight
    j = next(i for i, c in enumerate(w) if c)
    inv = F.inv(w[j])
    kernel = []
    for i in range(A.dim):
        if i == j:
            continue
        z = [0] * A.dim
        z[i] = 1
        z[j] = F.mul(w[i], inv)
        kernel.append(tuple(z))
    unit = [0] * A.dim
    unit[j] = inv
    B = BaricStructure(A, w, tuple(kernel), tuple(unit))
    assert weight_of(A, B.unit_rep) == 1
    assert all(weight_of(A, z) == 0 for z in kernel)
    return B


def _kernel_span(B: BaricStructure) -> list[Vector]:
    """An F_2-spanning set of ker omega: F_2-basis scalars times kernel basis."""
    F = B.algebra.field
    return [tuple(F.mul(1 << a, c) for c in z) for z in B.kernel_basis for a in range(F.p)]


def kernel_nil_degree(B: BaricStructure) -> int:
    """Nilpotency degree of V on ker omega (0 when the kernel is trivial)."""
    A = B.algebra
    nu = 0
    for z in _kernel_span(B):
        k = 0
        while any(z):
            if k > A.nbits:
                raise KernelNotNilplenary("V is not nilpotent on the kernel of the weight")
            z = A.operator.apply(z)
            k += 1
        nu = max(nu, k)
    return nu


def _sample(A: Algebra, rng: random.Random, count: int):
    for _ in range(count):
        yield tuple(rng.randrange(A.field.order) for _ in range(A.dim))


def baric_quasi_constant(
    B: BaricStructure, unit: Optional[Sequence[int]] = None, samples: int = 16, seed: int = 0
) -> tuple[int, Vector]:
    """(nu, e) with V^nu(x) = omega(x)^(2^nu) e for every x."""
    A = B.algebra
    F = A.field
    nu = kernel_nil_degree(B)
    e0 = tuple(unit) if unit is not None else B.unit_rep
    if weight_of(A, e0) != 1:
        raise InvariantViolation("unit representative does not have weight 1", witness=e0)
    e = iterate(A, e0, nu)
    if A.operator.apply(e) != e or weight_of(A, e) != 1:
        raise InvariantViolation("V^nu(e0) is not a weight-1 idempotent", witness=e)
    for x in _sample(A, random.Random(seed), samples):
        lam = F.frobenius(weight_of(A, x), nu)
        if iterate(A, x, nu) != tuple(F.mul(lam, c) for c in e):
            raise InvariantViolation("quasi-constant identity fails", witness=x)
    return nu, e


@dataclass(frozen=True)
class BernsteinProfile:
    n: int
    p: int
    idempotent: Vector


def _bernstein_rhs_exponent(n: int, p: int) -> int:
    return (1 << n) * ((1 << p) - 1)


def bernstein_identity_holds(B: BaricStructure, n: int, p: int, x: Sequence[int]) -> bool:
    """Direct check of V^(n+p)(x) = omega(x)^(2^n (2^p - 1)) V^n(x)."""
    A = B.algebra
    F = A.field
    lam = F.pow(weight_of(A, x), _bernstein_rhs_exponent(n, p))
    lhs = iterate(A, x, n + p)
    rhs = tuple(F.mul(lam, c) for c in iterate(A, x, n))
    return lhs == rhs


def bernstein_profile(B: BaricStructure, samples: int = 16, seed: int = 0) -> BernsteinProfile:
    """Lexicographically least (p, n) making A Bernstein-periodic B(n, p).

    The identity holds for all x iff V^n vanishes on ker omega and
    V^(n+p)(e0) = V^n(e0).
    """
    A = B.algebra
    span = _kernel_span(B)
    bound = A.nbits + 1
    kernel_nil_degree(B)  # raises when no such (n, p) exists
    e0 = B.unit_rep
    for p in range(1, bound + 1):
        for n in range(0, bound + 1):
            if any(any(iterate(A, z, n)) for z in span):
                continue
            if iterate(A, e0, n + p) == iterate(A, e0, n):
                rng = random.Random(seed)
                for x in _sample(A, rng, samples):
                    if not bernstein_identity_holds(B, n, p, x):
                        raise InvariantViolation("decomposition criterion disagrees with direct check", witness=x)
                return BernsteinProfile(n, p, iterate(A, e0, n))
    raise KernelNotNilplenary("no Bernstein periodicity found")


def weighted_train_identity(B: BaricStructure) -> list[int]:
    """Least-degree (alpha_0, ..., alpha_(n-1)) with
    V^n(x) + sum alpha_k omega(x)^(2^n - 2^k) V^k(x) = 0 for every x.

    With x = l e0 + z the condition splits into: V^n = 0 on ker omega (l = 0),
    V^n(e0) + sum alpha_k V^k(e0) = 0, and for each l != 0 the kernel
    equations sum_(k<n) alpha_k l^(2^n - 2^k) V^k(z) = 0. These are F_2-linear
    in the bits of the alpha_k.
    """
    A = B.algebra
    F = A.field
    p = F.p
    span = _kernel_span(B)
    kernel_nil_degree(B)
    e0 = B.unit_rep
    scalars = list(range(1, F.order))
    width = A.nbits
    for n in range(1, A.nbits + 2):
        if any(any(iterate(A, z, n)) for z in span):
            continue
        ech = Echelon()
        for k in range(n):
            vk_e0 = iterate(A, e0, k)
            vk_z = [iterate(A, z, k) for z in span]
            for a in range(p):
                beta = 1 << a
                parts = [A.pack([F.mul(beta, c) for c in vk_e0])]
                for lam in scalars:
                    coef = F.mul(beta, F.pow(lam, (1 << n) - (1 << k)))
                    parts.extend(A.pack([F.mul(coef, c) for c in w]) for w in vk_z)
                col = 0
                for i, v in enumerate(parts):
                    col |= v << (i * width)
                ech.insert(col, 1 << (k * p + a))
        target = A.pack(iterate(A, e0, n))
        r, tag = ech.reduce(target)
        if r:
            continue
        alphas = [0] * n
        for bit in range(n * p):
            if (tag >> bit) & 1:
                k, a = divmod(bit, p)
                alphas[k] |= 1 << a
        total = 0
        for c in alphas:
            total ^= c
        if total != 1:
            raise InvariantViolation("train coefficients do not sum to 1")
        return alphas
    raise KernelNotNilplenary("no weighted train identity up to the restricted dimension")


@dataclass(frozen=True)
class BaricProfile:
    qc_degree: int
    idempotent: Vector
    bernstein: tuple
    train_identity: tuple


def baric_profile(B: BaricStructure) -> BaricProfile:
    nu, e = baric_quasi_constant(B)
    bp = bernstein_profile(B)
    alphas = weighted_train_identity(B)
    return BaricProfile(nu, e, (bp.n, bp.p), tuple(alphas))


# -- builders -----------------------------------------------------------------


def build_weighted_As(s: Sequence[int], field: Field = F2) -> Algebra:
    """Idempotent e (weight 1) next to nilpotent kernel chains of lengths s."""
    s = tuple(s)
    if not s or any(x < 1 for x in s) or any(a < b for a, b in zip(s, s[1:])):
        raise ShapeError(f"s must be a nonempty weakly decreasing tuple of positive ints, got {s}")
    d = 1 + sum(s)
    squares = [[0] * d for _ in range(d)]
    squares[0][0] = 1
    pos = 1
    for length in s:
        for j in range(length - 1):
            squares[pos + j][pos + j + 1] = 1
        pos += length
    return _with_diagonal_table(field, squares, [1] + [0] * (d - 1))


def _with_diagonal_table(field: Field, squares, weight) -> Algebra:
    d = len(squares)
    table = [[squares[i] if i == j else [0] * d for j in range(d)] for i in range(d)]
    return Algebra(field, d, squares, table, weight)


def random_weighted_algebra(
    field: Field, s: Sequence[int], seed: int, perturb: float = 0.5, mix: bool = True
) -> Algebra:
    """A weighted algebra built from build_weighted_As with random perturbations.

    Kernel squares and mixed products e z, z z' get random kernel
    components (so the kernel may stop being nilpotent), e^2 may pick up a
    kernel component, and with ``mix`` a random change of basis hides the
    weight-adapted coordinates. The weight stays an algebra morphism.
    """
    rng = random.Random(seed)
    base = build_weighted_As(s, field)
    d = base.dim
    table = [[list(v) for v in row] for row in base.table]

    def kernel_noise():
        v = [0] * d
        for k in range(1, d):
            if rng.random() < perturb:
                v[k] = rng.randrange(1, field.order)
        return v

    for i in range(d):
        for j in range(i, d):
            if rng.random() < perturb:
                noise = kernel_noise()
                table[i][j] = [a ^ b for a, b in zip(table[i][j], noise)]
                table[j][i] = table[i][j]
    weight = [1] + [0] * (d - 1)
    if mix:
        table, weight = _change_basis(field, table, weight, rng)
    squares = [table[i][i] for i in range(d)]
    return Algebra(field, d, squares, table, weight)


def _change_basis(F: Field, table, weight, rng: random.Random):
    d = len(weight)
    while True:
        P = [[rng.randrange(F.order) for _ in range(d)] for _ in range(d)]
        Pinv = _invert(F, P)
        if Pinv is not None:
            break
    # new basis f_j = sum_i P[i][j] e_i
    cols = [[P[i][j] for i in range(d)] for j in range(d)]

    def product(x, y):
        out = [0] * d
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                if a and b:
                    ab = F.mul(a, b)
                    for k, c in enumerate(table[i][j]):
                        if c:
                            out[k] ^= F.mul(ab, c)
        return out

    def to_new(v):
        return [_dot(F, Pinv[r], v) for r in range(d)]

    new_table = [[to_new(product(cols[i], cols[j])) for j in range(d)] for i in range(d)]
    new_weight = [_dot(F, weight, cols[j]) for j in range(d)]
    return new_table, new_weight


def _dot(F: Field, u, v) -> int:
    r = 0
    for a, b in zip(u, v):
        if a and b:
            r ^= F.mul(a, b)
    return r


def _invert(F: Field, M):
    d = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(d)] for i, row in enumerate(M)]
    for c in range(d):
        piv = next((r for r in range(c, d) if aug[r][c]), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = F.inv(aug[c][c])
        aug[c] = [F.mul(inv, v) for v in aug[c]]
        for r in range(d):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [v ^ F.mul(f, w) for v, w in zip(aug[r], aug[c])]
    return [row[d:] for row in aug]
