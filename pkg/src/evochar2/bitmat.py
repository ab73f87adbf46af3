"""Dense GF(2) linear algebra on int bitsets.

A vector of length n is an int whose bit j is coordinate j. A square matrix
is stored by columns: ``cols[j]`` is the image of the j-th unit vector, so
applying a matrix xors together the columns selected by the input bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import poly2


def iter_bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


class Echelon:
    """Incremental row-echelon basis that remembers how each pivot was built.

    Every inserted vector carries a tag (an int used as a bitset of
    "which generators"); reducing a vector returns the residual together
    with the xor of the tags used, so a zero residual certifies a relation.
    """

    def __init__(self):
        self._pivots: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        pivots = self._pivots
        while v:
            top = v.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                break
            v ^= hit[0]
            tag ^= hit[1]
        return v, tag

    def insert(self, v: int, tag: int = 0) -> bool:
        """Add ``v``; returns False (and changes nothing) if it was dependent."""
        v, tag = self.reduce(v, tag)
        if v == 0:
            return False
        self._pivots[v.bit_length() - 1] = (v, tag)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


@dataclass(frozen=True)
class BitMatrix:
    n: int
    cols: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(1 << j for j in range(n)))

    @classmethod
    def zero(cls, n: int) -> "BitMatrix":
        return cls(n, (0,) * n)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        n = len(rows)
        cols = [0] * n
        for i, row in enumerate(rows):
            for j, bit in enumerate(row):
                if bit & 1:
                    cols[j] |= 1 << i
        return cls(n, tuple(cols))

    def rows(self) -> list[list[int]]:
        return [[(c >> i) & 1 for c in self.cols] for i in range(self.n)]

    def entry(self, i: int, j: int) -> int:
        return (self.cols[j] >> i) & 1

    def apply(self, v: int) -> int:
        r = 0
        cols = self.cols
        while v:
            low = v & -v
            r ^= cols[low.bit_length() - 1]
            v ^= low
        return r

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return BitMatrix(self.n, tuple(self.apply(c) for c in other.cols))

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        return BitMatrix(self.n, tuple(a ^ b for a, b in zip(self.cols, other.cols)))

    def __pow__(self, k: int) -> "BitMatrix":
        result = BitMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.cols)

    def kernel(self) -> list[int]:
        ech = Echelon()
        out = []
        for j, c in enumerate(self.cols):
            r, tag = ech.reduce(c, 1 << j)
            if r == 0:
                out.append(tag)
            else:
                ech.insert(r, tag)
        return out

    def rank(self) -> int:
        return self.n - len(self.kernel())

    def solve(self, b: int) -> int | None:
        """Some x with self @ x = b, or None."""
        ech = Echelon()
        for j, c in enumerate(self.cols):
            ech.insert(c, 1 << j)
        r, tag = ech.reduce(b)
        return tag if r == 0 else None

    def poly_eval(self, f: int) -> "BitMatrix":
        """f(M) for f in F_2[X] (Horner)."""
        result = BitMatrix.zero(self.n)
        ident = BitMatrix.identity(self.n)
        for k in reversed(range(poly2.deg(f) + 1)):
            result = result @ self
            if (f >> k) & 1:
                result = result + ident
        return result


def span_rank(vectors: Iterable[int]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.insert(v)
    return len(ech)


def local_minimal_polynomial(m: BitMatrix, v: int) -> int:
    """Monic generator of {f : f(M) v = 0}."""
    kry = Echelon()
    w = v
    k = 0
    while True:
        r, tag = kry.reduce(w, 1 << k)
        if r == 0:
            return tag
        kry.insert(r, tag)
        w = m.apply(w)
        k += 1


def minimal_polynomial(m: BitMatrix) -> int:
    """Minimal polynomial of ``m`` as the lcm of Krylov annihilators.

    Unit vectors already inside the sum of processed Krylov spaces are
    skipped, since that sum is killed by the running lcm.
    """
    covered = Echelon()
    mu = 1
    for j in range(m.n):
        u = 1 << j
        if covered.contains(u):
            continue
        mu = poly2.lcm(mu, local_minimal_polynomial(m, u))
        w = u
        while covered.insert(w):
            w = m.apply(w)
    return mu
