"""Similarity of permutation matrices, gcd matrices and cyclic-module combinatorics."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .braid import Permutation

__all__ = [
    "CycleType",
    "Similarity",
    "cycle_type",
    "fixed_points",
    "similar_as_matrices",
    "permutation_matrix",
    "gcd_matrix",
    "bareiss_determinant",
    "totient",
    "smith_determinant_check",
    "cyclic_tensor_orbits",
    "hom_dimension",
]


@dataclass(frozen=True)
class CycleType:
    """``counts[r]`` = number of r-cycles (fixed points are 1-cycles)."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, m: dict[int, int]) -> "CycleType":
        return cls(tuple(sorted((int(r), int(c)) for r, c in m.items() if c)))

    def __getitem__(self, r: int) -> int:
        return dict(self.counts).get(r, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def size(self) -> int:
        return sum(r * c for r, c in self.counts)


def cycle_type(p: Permutation) -> CycleType:
    return CycleType.from_mapping(Counter(len(c) for c in p.cycles()))


def fixed_points(p: Permutation) -> int:
    return sum(1 for i, j in enumerate(p.images) if i == j)


@dataclass(frozen=True)
class Similarity:
    """Outcome of :func:`similar_as_matrices`.

    When similar, ``conjugator`` is w with w p w^-1 = q. Otherwise
    ``witness_power`` is a d with Fix(p^d) != Fix(q^d), so the traces of the
    d-th powers of the two permutation matrices differ.
    """

    similar: bool
    conjugator: Permutation | None = None
    witness_power: int | None = None
    witness_fixed: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.similar

    def verify(self, p: Permutation, q: Permutation) -> bool:
        if self.similar:
            w = self.conjugator
            return w is not None and w * p * w.inverse() == q
        d = self.witness_power
        return d is not None and fixed_points(p**d) != fixed_points(q**d)


def similar_as_matrices(p: Permutation, q: Permutation) -> Similarity:
    if p.size != q.size:
        raise ValueError(f"size mismatch: {p.size} vs {q.size}")
    if cycle_type(p) == cycle_type(q):
        by_len: dict[int, list[tuple[int, ...]]] = {}
        for c in q.cycles():
            by_len.setdefault(len(c), []).append(c)
        w = [0] * p.size
        for c in p.cycles():
            target = by_len[len(c)].pop()
            for a, b in zip(c, target):
                w[a] = b
        return Similarity(True, conjugator=Permutation(tuple(w)))
    pd, qd = Permutation.identity(p.size), Permutation.identity(q.size)
    for d in range(1, p.size + 1):
        pd, qd = pd * p, qd * q
        fp, fq = fixed_points(pd), fixed_points(qd)
        if fp != fq:
            return Similarity(False, witness_power=d, witness_fixed=(fp, fq))
    raise AssertionError("distinct cycle types must differ in some Fix(p^d), d <= n")


def permutation_matrix(p: Permutation) -> list[list[int]]:
    """P with entry (i, j) equal to 1 iff p(i) == j."""
    return [[1 if p(i) == j else 0 for j in range(p.size)] for i in range(p.size)]


def gcd_matrix(m: int) -> list[list[int]]:
    return [[math.gcd(i, j) for j in range(1, m + 1)] for i in range(1, m + 1)]


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                assert num % prev == 0
                a[i][j] = num // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _rational_determinant(matrix: list[list[int]]) -> int:
    """Plain Gaussian elimination over Q; used only to cross-check Bareiss."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n, det = len(a), Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    assert det.denominator == 1
    return int(det)


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def smith_determinant_check(m: int) -> tuple[int, int, bool]:
    """(det of the m x m gcd matrix, phi(1)...phi(m), whether they agree)."""
    det = bareiss_determinant(gcd_matrix(m))
    prod = math.prod(totient(i) for i in range(1, m + 1))
    return det, prod, det == prod


def cyclic_tensor_orbits(n: int, m: int) -> tuple[int, int]:
    """Orbits of (i, j) -> (i+1 mod n, j+1 mod m) on Z_n x Z_m: (count, common size)."""
    if n < 1 or m < 1:
        raise ValueError("n, m must be >= 1")
    seen = set()
    sizes = []
    for start in ((i, j) for i in range(n) for j in range(m)):
        if start in seen:
            continue
        size, (i, j) = 0, start
        while (i, j) not in seen:
            seen.add((i, j))
            i, j = (i + 1) % n, (j + 1) % m
            size += 1
        sizes.append(size)
    if len(set(sizes)) != 1:
        raise AssertionError(f"unequal orbit sizes {sizes}")
    return len(sizes), sizes[0]


def hom_dimension(n: int, m: int) -> int:
    """dim Hom(M(n), M(m)), via Hom(M(1), M(m) (x) M(n)^*).

    M(m) (x) M(n)^* splits along the orbits of the diagonal shift on Z_m x Z_n,
    each orbit a copy of M(l); Hom(M(1), M(l)) is the space of shift-invariant
    vectors of k^l, one dimension per orbit of the shift on Z_l.
    """
    count, size = cyclic_tensor_orbits(m, n)
    invariants, _ = cyclic_tensor_orbits(size, 1)
    return count * invariants
