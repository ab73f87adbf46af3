"""Commutative algebras over F_{2^p} and their evolution operator V(x) = x^2.

Only the squares e_i^2 matter for V: in characteristic 2 the cross terms of
(sum l_i e_i)^2 all carry a factor 2. The full multiplication table is kept
when present because weights (algebra morphisms to the field) need it.

Two representations of V are provided. The semilinear one is
V(x) = S . Frob(x) with S the matrix of squares. The linear one views the
algebra as an F_2-space of dimension p*d ("restriction of scalars") where V
is an ordinary bit matrix M2. Coordinate i of a vector occupies bits
[i*p, (i+1)*p) of the packed int, which is just the concatenation of the
field-element bitmasks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .bitmat import BitMatrix
from .errors import (
    DimensionMismatch,
    InvariantViolation,
    NotAMorphism,
    ParseError,
    ZeroWeight,
)
from .field import F2, Field, make_field

MAX_DIM = 64

Vector = tuple  # tuple[int, ...] of field elements


@dataclass(frozen=True)
class Algebra:
    """A finite-dimensional commutative algebra given by structure constants.

    ``squares[i]`` holds the coordinates of e_i^2. ``table[i][j]`` (optional)
    holds e_i e_j. ``weight`` (optional) lists omega(e_i); it requires the table.
    """

    field: Field
    dim: int
    squares: tuple
    table: Optional[tuple] = None
    weight: Optional[tuple] = None

    def __post_init__(self):
        d = self.dim
        if not isinstance(d, int) or not 1 <= d <= MAX_DIM:
            raise DimensionMismatch(f"dimension must be in 1..{MAX_DIM}, got {d!r}")
        sq = tuple(tuple(row) for row in self.squares)
        if len(sq) != d or any(len(row) != d for row in sq):
            raise DimensionMismatch("squares must be a d x d array")
        for row in sq:
            for c in row:
                self.field.check(c)
        object.__setattr__(self, "squares", sq)
        if self.table is not None:
            tab = tuple(tuple(tuple(v) for v in row) for row in self.table)
            if len(tab) != d or any(len(row) != d or any(len(v) != d for v in row) for row in tab):
                raise DimensionMismatch("table must be a d x d array of length-d vectors")
            for row in tab:
                for v in row:
                    for c in v:
                        self.field.check(c)
            for i in range(d):
                if tab[i][i] != sq[i]:
                    raise InvariantViolation(f"table[{i}][{i}] differs from squares[{i}]", witness=(i, i))
                for j in range(i + 1, d):
                    if tab[i][j] != tab[j][i]:
                        raise InvariantViolation(f"table is not symmetric at ({i},{j})", witness=(i, j))
            object.__setattr__(self, "table", tab)
        if self.weight is not None:
            w = tuple(self.weight)
            if len(w) != d:
                raise DimensionMismatch("weight must have length d")
            for c in w:
                self.field.check(c)
            object.__setattr__(self, "weight", w)
            check_morphism(self)

    # -- vectors -------------------------------------------------------------

    def zero(self) -> Vector:
        return (0,) * self.dim

    def basis(self, i: int) -> Vector:
        v = [0] * self.dim
        v[i] = 1
        return tuple(v)

    def conform(self, x: Sequence[int]) -> Vector:
        x = tuple(x)
        if len(x) != self.dim:
            raise DimensionMismatch(f"vector of length {len(x)} in an algebra of dimension {self.dim}")
        for c in x:
            self.field.check(c)
        return x

    def pack(self, x: Sequence[int]) -> int:
        p = self.field.p
        r = 0
        for i, c in enumerate(x):
            r |= c << (i * p)
        return r

    def unpack(self, bits: int) -> Vector:
        p = self.field.p
        mask = (1 << p) - 1
        return tuple((bits >> (i * p)) & mask for i in range(self.dim))

    @property
    def nbits(self) -> int:
        return self.field.p * self.dim

    @property
    def size(self) -> int:
        """Number of elements, |F|^d."""
        return self.field.order ** self.dim

    # -- operator ------------------------------------------------------------

    @cached_property
    def operator(self) -> "SemilinearOperator":
        # cached_property writes the instance dict directly, so this is fine
        # on a frozen dataclass; two racing builds produce equal values.
        return SemilinearOperator(self.field, self.squares)

    def is_evolution(self) -> bool:
        """Whether the basis is natural (e_i e_j = 0 for i != j)."""
        if self.table is None:
            return True
        z = self.zero()
        return all(self.table[i][j] == z for i in range(self.dim) for j in range(self.dim) if i != j)


def add(x: Sequence[int], y: Sequence[int]) -> Vector:
    return tuple(a ^ b for a, b in zip(x, y))


def scale(F: Field, lam: int, x: Sequence[int]) -> Vector:
    return tuple(F.mul(lam, c) for c in x)


def multiply(A: Algebra, x: Sequence[int], y: Sequence[int]) -> Vector:
    """Full product xy; needs the multiplication table."""
    if A.table is None:
        raise InvariantViolation("the full multiplication table is required")
    F = A.field
    out = [0] * A.dim
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if not b:
                continue
            ab = F.mul(a, b)
            for k, c in enumerate(A.table[i][j]):
                if c:
                    out[k] ^= F.mul(ab, c)
    return tuple(out)


def weight_of(A: Algebra, x: Sequence[int]) -> int:
    F = A.field
    r = 0
    for w, c in zip(A.weight, x):
        r ^= F.mul(w, c)
    return r


def check_morphism(A: Algebra) -> None:
    """Raise unless omega is a nonzero algebra morphism on basis pairs."""
    if not any(A.weight):
        raise ZeroWeight("the weight is identically zero")
    if A.table is None:
        raise InvariantViolation("a weight needs the full multiplication table")
    F = A.field
    # squares first, so a failing square is reported before mixed products
    pairs = [(i, i) for i in range(A.dim)]
    pairs += [(i, j) for i in range(A.dim) for j in range(i + 1, A.dim)]
    for i, j in pairs:
        lhs = weight_of(A, A.table[i][j])
        rhs = F.mul(A.weight[i], A.weight[j])
        if lhs != rhs:
            raise NotAMorphism(
                f"omega(e{i + 1} e{j + 1}) = {lhs} but omega(e{i + 1}) omega(e{j + 1}) = {rhs}",
                witness=(i + 1, j + 1),
            )


class SemilinearOperator:
    """V as S . Frob on coordinates, plus its F_2-linear matrix M2."""

    def __init__(self, field: Field, squares: tuple):
        self.field = field
        self.dim = len(squares)
        self.squares = squares

    @property
    def S(self) -> list[list[int]]:
        """Matrix over F with column i equal to e_i^2."""
        d = self.dim
        return [[self.squares[i][r] for i in range(d)] for r in range(d)]

    def apply(self, x: Sequence[int]) -> Vector:
        F = self.field
        out = [0] * self.dim
        for lam, row in zip(x, self.squares):
            if not lam:
                continue
            l2 = F.sqr(lam)
            for k, c in enumerate(row):
                if c:
                    out[k] ^= F.mul(l2, c)
        return tuple(out)

    def _pack(self, x: Sequence[int]) -> int:
        p = self.field.p
        r = 0
        for i, c in enumerate(x):
            r |= c << (i * p)
        return r

    @cached_property
    def m2(self) -> BitMatrix:
        """F_2 matrix of V on the packed coordinates."""
        F = self.field
        p = F.p
        cols = []
        for i, row in enumerate(self.squares):
            for a in range(p):
                beta2 = F.sqr(1 << a)
                cols.append(self._pack([F.mul(beta2, c) for c in row]))
        return BitMatrix(p * self.dim, tuple(cols))

    def power(self, k: int) -> BitMatrix:
        return self.m2 ** k


def scalar_matrix(F: Field, dim: int, alpha: int) -> BitMatrix:
    """F_2 matrix of multiplication by alpha on packed length-dim vectors."""
    p = F.p
    cols = []
    for i in range(dim):
        for a in range(p):
            cols.append(F.mul(alpha, 1 << a) << (i * p))
    return BitMatrix(p * dim, tuple(cols))


def operator_of(A: Algebra) -> SemilinearOperator:
    return A.operator


def evolution_apply(A: Algebra, x: Sequence[int], check: bool = False) -> Vector:
    x = A.conform(x)
    y = A.operator.apply(x)
    if check and A.table is not None:
        full = multiply(A, x, x)
        if full != y:
            raise InvariantViolation("squares-only V disagrees with the full table", witness=x)
    return y


def evolution_power(A: Algebra, x: Sequence[int], k: int) -> Vector:
    op = A.operator
    for _ in range(k):
        x = op.apply(x)
    return tuple(x)


def hadamard_composite(S: Sequence[Sequence[int]], k: int, field: Field = F2) -> list[list[int]]:
    """S . S^(.2) . S^(.4) ... S^(.2^(k-1)), entrywise powers by Frobenius.

    V^k(x) = composite . Frob^k(coords of x).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = len(S)
    result = [list(row) for row in S]
    for j in range(1, k):
        H = [[field.frobenius(c, j) for c in row] for row in S]
        result = _matmul(field, result, H, n)
    return result


def _matmul(F: Field, A, B, n: int) -> list[list[int]]:
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(n):
            a = Ai[t]
            if not a:
                continue
            Bt = B[t]
            for j in range(n):
                if Bt[j]:
                    row[j] ^= F.mul(a, Bt[j])
    return out


def apply_matrix(F: Field, M, x: Sequence[int]) -> Vector:
    return tuple(_dot(F, row, x) for row in M)


def _dot(F: Field, row, x) -> int:
    r = 0
    for a, b in zip(row, x):
        if a and b:
            r ^= F.mul(a, b)
    return r


# -- file format -------------------------------------------------------------


def to_dict(A: Algebra) -> dict:
    d = {"field": A.field.to_json(), "dim": A.dim, "squares": [list(r) for r in A.squares]}
    if A.table is not None:
        d["table"] = [[list(v) for v in row] for row in A.table]
    if A.weight is not None:
        d["weight"] = list(A.weight)
    return d


def serialize_algebra(A: Algebra) -> str:
    return json.dumps(to_dict(A))


def from_dict(data) -> Algebra:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    for key in ("field", "dim", "squares"):
        if key not in data:
            raise ParseError(f"missing required field {key!r}", location=key)
    fd = data["field"]
    if not isinstance(fd, dict) or "p" not in fd:
        raise ParseError("field must be an object with 'p'", location="field")
    try:
        F = make_field(fd["p"], fd.get("modulus"))
    except Exception as exc:
        raise ParseError(str(exc), location="field") from exc
    dim = data["dim"]
    if not isinstance(dim, int):
        raise ParseError("dim must be an integer", location="dim")
    try:
        return Algebra(F, dim, data["squares"], data.get("table"), data.get("weight"))
    except InvariantViolation:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc), location="squares/table/weight") from exc


def parse_algebra(text: str) -> Algebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, location=f"line {exc.lineno} column {exc.colno}") from exc
    return from_dict(data)


def load_algebra(path) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def save_algebra(A: Algebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_algebra(A) + "\n")
