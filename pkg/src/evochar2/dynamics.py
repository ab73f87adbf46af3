"""Orbits, periodicity profiles and train polynomials of the evolution operator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import poly2
from .algebra import Algebra, Vector, evolution_apply, scalar_matrix
from .bitmat import BitMatrix, Echelon, minimal_polynomial
from .errors import InvariantViolation, MonomialInput

NILPOTENT = "nilpotent"
QUASI_CONSTANT = "quasi-constant"
PERIODIC = "ultimately periodic"


@dataclass(frozen=True)
class OrbitReport:
    preperiod: int
    period: int
    orbit: tuple
    entry_point: Vector

    def __len__(self) -> int:
        return len(self.orbit)


@dataclass(frozen=True)
class PeriodicityProfile:
    kind: str
    n: int
    p: Optional[int] = None
    e: Optional[Vector] = None

    def pair(self) -> tuple[int, int]:
        """(n, p) with p = 1 for nilpotent and quasi-constant kinds."""
        return (self.n, self.p if self.p is not None else 1)

    def __str__(self) -> str:
        if self.kind == NILPOTENT:
            return f"nilpotent of degree {self.n}"
        if self.kind == QUASI_CONSTANT:
            return f"quasi-constant of degree {self.n}"
        return f"ultimately periodic ({self.n},{self.p})"


def Nilpotent(n: int) -> PeriodicityProfile:
    return PeriodicityProfile(NILPOTENT, n)


def UltimatelyPeriodic(n: int, p: int) -> PeriodicityProfile:
    return PeriodicityProfile(PERIODIC, n, p)


def QuasiConstant(n: int, e: Vector) -> PeriodicityProfile:
    return PeriodicityProfile(QUASI_CONSTANT, n, 1, e)


# -- orbits ------------------------------------------------------------------


def orbit(A: Algebra, x: Sequence[int]) -> OrbitReport:
    """Exact (preperiod, period) of x under V by first repeat."""
    x = A.conform(x)
    op = A.operator
    seen: dict[Vector, int] = {}
    seq = []
    while x not in seen:
        seen[x] = len(seq)
        seq.append(x)
        x = op.apply(x)
    m = seen[x]
    return OrbitReport(m, len(seq) - m, tuple(seq), seq[m])


def plenary_power(A: Algebra, x: Sequence[int], n: int) -> Vector:
    """x^[n] = V^(n-1)(x)."""
    if n < 1:
        raise ValueError("plenary powers start at n = 1")
    x = A.conform(x)
    for _ in range(n - 1):
        x = A.operator.apply(x)
    return x


def iterate(A: Algebra, x: Sequence[int], k: int) -> Vector:
    x = tuple(x)
    for _ in range(k):
        x = A.operator.apply(x)
    return x


# -- operator profile --------------------------------------------------------


def split_valuation(mu: int) -> tuple[int, int]:
    v = (mu & -mu).bit_length() - 1
    return v, mu >> v


def operator_profile(A: Algebra, method: str = "minpoly") -> PeriodicityProfile:
    if method == "minpoly":
        mu = minimal_polynomial(A.operator.m2)
        v, g = split_valuation(mu)
        if g == 1:
            return Nilpotent(v)
        return UltimatelyPeriodic(v, poly2.order_mod(g))
    if method == "brute":
        return brute_profile(A.operator.m2)
    raise ValueError(f"unknown method {method!r}")


def brute_profile(m: BitMatrix) -> PeriodicityProfile:
    """First repeat in the sequence I, M, M^2, ... of matrix powers."""
    seen: dict[tuple, int] = {}
    P = BitMatrix.identity(m.n)
    k = 0
    while P.cols not in seen:
        seen[P.cols] = k
        P = m @ P
        k += 1
    n = seen[P.cols]
    if P.is_zero():
        return Nilpotent(n)
    return UltimatelyPeriodic(n, k - n)


def quasi_constant_check(A: Algebra) -> Optional[tuple[int, Vector]]:
    """(1, e) if A is quasi-constant, otherwise None.

    V^n is additive, so V^n(x + y) = 2e = 0 for distinct nonzero x, y, and a
    constant nonzero value on A minus 0 forces |A| = 2: the line F_2<e>.
    There V(e) must be nonzero, hence e^2 = e and the degree is 1.
    """
    if A.size != 2:
        return None
    e = A.basis(0)
    if A.operator.apply(e) == e:
        return (1, e)
    return None


def quasi_constant_search(A: Algebra, max_n: int) -> Optional[tuple[int, Vector]]:
    """Exhaustive check of the definition on every nonzero element."""
    elems = [A.unpack(b) for b in range(1, A.size)]
    for n in range(1, max_n + 1):
        images = {iterate(A, x, n) for x in elems}
        if len(images) == 1:
            (e,) = images
            if any(e):
                return (n, e)
    return None


def classify(A: Algebra) -> PeriodicityProfile:
    qc = quasi_constant_check(A)
    if qc is not None:
        return QuasiConstant(*qc)
    return operator_profile(A)


# -- element profiles --------------------------------------------------------


@dataclass(frozen=True)
class ElementProfile:
    m: int
    d: int
    operator: PeriodicityProfile

    @property
    def certified(self) -> bool:
        n, p = self.operator.pair()
        return self.m <= n and p % self.d == 0


def element_profile(A: Algebra, x: Sequence[int]) -> ElementProfile:
    o = orbit(A, x)
    prof = ElementProfile(o.preperiod, o.period, operator_profile(A))
    if not prof.certified:
        raise InvariantViolation(
            f"element profile ({prof.m},{prof.d}) does not divide {prof.operator}", witness=tuple(x)
        )
    return prof


def element_decomposition(A: Algebra, x: Sequence[int]) -> tuple[Vector, Vector]:
    """The unique split x = a + b with V^d(a) = a and V^m(b) = 0."""
    x = A.conform(x)
    o = orbit(A, x)
    m, d = o.preperiod, o.period
    M = A.operator.m2
    cyc = (M ** d + BitMatrix.identity(M.n)).kernel()
    nil = (M ** m).kernel()
    ech = Echelon()
    for i, v in enumerate(cyc + nil):
        if not ech.insert(v, 1 << i):
            raise InvariantViolation("cyclic and nilpotent kernels intersect")
    r, tag = ech.reduce(A.pack(x))
    if r:
        raise InvariantViolation("element is not in the kernel sum", witness=x)
    a = 0
    for i, v in enumerate(cyc):
        if (tag >> i) & 1:
            a ^= v
    a_vec = A.unpack(a)
    b_vec = tuple(s ^ t for s, t in zip(x, a_vec))
    return a_vec, b_vec


# -- train polynomials -------------------------------------------------------


@dataclass(frozen=True)
class TrainPolynomial:
    """Monic T = sum coeffs[k] X^k over the algebra's field."""

    coeffs: tuple
    degree: int
    valuation: int
    striction: Optional[int]

    def as_poly2(self) -> Optional[int]:
        if any(c > 1 for c in self.coeffs):
            return None
        return poly2.from_exponents(k for k, c in enumerate(self.coeffs) if c)

    def __str__(self) -> str:
        f = self.as_poly2()
        if f is not None:
            return poly2.to_str(f)
        terms = []
        for k in reversed(range(len(self.coeffs))):
            c = self.coeffs[k]
            if c:
                mono = "1" if k == 0 else ("X" if k == 1 else f"X^{k}")
                terms.append(mono if c == 1 else f"[{c}]{mono}" if k else f"[{c}]")
        return "+".join(terms)


def _coeff_list(P, field) -> list[int]:
    if isinstance(P, TrainPolynomial):
        return list(P.coeffs)
    if isinstance(P, int):
        return [(P >> k) & 1 for k in range(poly2.deg(P) + 1)] if P else [0]
    return [field.check(c) for c in P]


def _unit_orbits(A: Algebra, length: int) -> list[list[int]]:
    """For every F_2 unit vector u, the packed iterates V^0(u) .. V^(length-1)(u)."""
    M = A.operator.m2
    out = []
    for b in range(M.n):
        w = 1 << b
        seq = []
        for _ in range(length):
            seq.append(w)
            w = M.apply(w)
        out.append(seq)
    return out


def _concat(parts: Sequence[int], width: int) -> int:
    r = 0
    for i, v in enumerate(parts):
        r |= v << (i * width)
    return r


def train_polynomial(A: Algebra) -> TrainPolynomial:
    """Minimal-degree monic T over F with T(V) = 0, solved degree by degree.

    Unknowns are the F_2 coordinates of alpha_0 .. alpha_(n-1). The column of
    unknown (k, a) stacks X^a V^k(u) over all F_2 unit vectors u; the target
    stacks V^n(u).
    """
    F = A.field
    p = F.p
    N = A.nbits
    orbits = _unit_orbits(A, N + 1)
    scalars = [scalar_matrix(F, A.dim, 1 << a) for a in range(p)]
    ech = Echelon()
    for n in range(0, N + 1):
        target = _concat([orbits[u][n] for u in range(N)], N)
        r, tag = ech.reduce(target)
        if r == 0:
            coeffs = [0] * (n + 1)
            coeffs[n] = 1
            for bit in _bits(tag):
                k, a = divmod(bit, p)
                coeffs[k] |= 1 << a
            T = _make_train(F, coeffs)
            _check_train(A, T)
            return T
        for a in range(p):
            col = _concat([scalars[a].apply(orbits[u][n]) for u in range(N)], N)
            if not ech.insert(col, 1 << (n * p + a)):
                raise InvariantViolation("train polynomial solution is not unique at its degree")
    raise InvariantViolation("no annihilating polynomial up to the restricted dimension")


def _bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def _make_train(F, coeffs: list[int]) -> TrainPolynomial:
    exps = [k for k, c in enumerate(coeffs) if c]
    try:
        s = poly2.sigma(coeffs)
    except MonomialInput:
        s = None
    return TrainPolynomial(tuple(coeffs), len(coeffs) - 1, exps[0], s)


def _check_train(A: Algebra, T: TrainPolynomial) -> None:
    if T.striction is None:
        return
    if T.striction % A.field.p:
        raise InvariantViolation(f"{A.field} is not inside F_2^{T.striction}")
    if any((k - T.valuation) % T.striction for k, c in enumerate(T.coeffs) if c):
        raise InvariantViolation("exponents of T are not of the form v + k*sigma")


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    witness: Optional[Vector] = None

    def __bool__(self) -> bool:
        return self.holds


def verify_identity(A: Algebra, P) -> IdentityCheck:
    """Whether sum alpha_k V^k(x) = 0 for all x, checked on F_2 unit vectors."""
    F = A.field
    coeffs = _coeff_list(P, F)
    scal = {c: scalar_matrix(F, A.dim, c) for c in set(coeffs) if c > 1}
    M = A.operator.m2
    for b in range(M.n):
        w = 1 << b
        acc = 0
        for k, c in enumerate(coeffs):
            if c == 1:
                acc ^= w
            elif c:
                acc ^= scal[c].apply(w)
            w = M.apply(w)
        if acc:
            return IdentityCheck(False, A.unpack(1 << b))
    return IdentityCheck(True)


def apply_poly(A: Algebra, P, x: Sequence[int]) -> Vector:
    F = A.field
    coeffs = _coeff_list(P, F)
    acc = A.zero()
    w = tuple(x)
    for c in coeffs:
        if c:
            acc = tuple(s ^ F.mul(c, t) for s, t in zip(acc, w))
        w = evolution_apply(A, w)
    return acc
