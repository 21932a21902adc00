"""Braid words in B_n and their underlying permutations.

A word is read left to right: ``s1 s2^-1`` acts by sigma_1 first, then
sigma_2^-1. Words are never reduced.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "BraidSyntaxError",
    "Permutation",
    "BraidWord",
    "parse_braid",
    "lens_braid",
    "compose",
    "inverse",
    "tensor",
    "underlying_permutation",
    "closure_component_count",
    "random_word",
    "random_relation_moves",
]


class BraidSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``range(size)``; ``images[i]`` is the image of i.

    Products are function composition: ``(p * q)(i) == p(q(i))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)))

    @classmethod
    def from_cycles(cls, text: str, size: int | None = None) -> "Permutation":
        """Parse cycle notation with 1-based points, e.g. ``"(1 2 3)(4 5)"``."""
        cycles = re.findall(r"\(([^()]*)\)", text)
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise ValueError(f"malformed cycle notation {text!r}")
        points = [[int(t) for t in c.replace(",", " ").split()] for c in cycles]
        flat = [p for c in points for p in c]
        if len(flat) != len(set(flat)) or any(p < 1 for p in flat):
            raise ValueError(f"cycles must use distinct positive points: {text!r}")
        n = max(flat, default=0)
        if size is None:
            size = n
        elif size < n:
            raise ValueError(f"point {n} exceeds size {size}")
        images = list(range(size))
        for c in points:
            for a, b in zip(c, c[1:] + c[:1]):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.size != other.size:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        out = [0] * self.size
        for i, j in enumerate(self.images):
            out[j] = i
        return Permutation(tuple(out))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.size)
        for _ in range(abs(k)):
            result = result * base
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.size
        out = []
        for s in range(self.size):
            if seen[s]:
                continue
            cyc = []
            i = s
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def to_cycles(self) -> str:
        parts = ["(" + " ".join(str(i + 1) for i in c) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"


_LETTER = re.compile(r"s(\d+)(\^(-?1))?")


@dataclass(frozen=True)
class BraidWord:
    """A word in sigma_1^{+-1}, ..., sigma_{n-1}^{+-1}; letters are ``(i, sign)``, 1-based."""

    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(s)) for i, s in self.letters))
        if self.strands < 2:
            raise BraidSyntaxError(f"a braid needs at least 2 strands, got {self.strands}")
        for i, s in self.letters:
            if not 1 <= i <= self.strands - 1:
                raise BraidSyntaxError(f"generator s{i} out of range for {self.strands} strands")
            if s not in (1, -1):
                raise BraidSyntaxError(f"bad sign {s}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.letters)

    def __str__(self) -> str:
        return " ".join(f"s{i}" if s > 0 else f"s{i}^-1" for i, s in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": str(self)}

    @classmethod
    def from_json(cls, data: dict | str) -> "BraidWord":
        if isinstance(data, str):
            data = json.loads(data)
        return parse_braid(data.get("word", ""), data.get("strands"))


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``"s1 s2^-1 s1"``. Without ``strands`` the count is max index + 1."""
    letters = []
    for tok in text.replace(",", " ").split():
        m = _LETTER.fullmatch(tok)
        if not m:
            raise BraidSyntaxError(f"malformed braid token {tok!r}")
        i = int(m.group(1))
        if i == 0:
            raise BraidSyntaxError("generator index must be >= 1 (got s0)")
        letters.append((i, int(m.group(3) or 1)))
    if strands is None:
        strands = max((i for i, _ in letters), default=1) + 1
    return BraidWord(strands, tuple(letters))


def lens_braid(n: int) -> BraidWord:
    """sigma_n sigma_{n-1} ... sigma_1 in B_{n+1}."""
    if n < 1:
        raise ValueError("lens braid needs n >= 1")
    return BraidWord(n + 1, tuple((i, 1) for i in range(n, 0, -1)))


def compose(b1: BraidWord, b2: BraidWord) -> BraidWord:
    if b1.strands != b2.strands:
        raise ValueError(f"strand mismatch: {b1.strands} vs {b2.strands}")
    return BraidWord(b1.strands, b1.letters + b2.letters)


def inverse(b: BraidWord) -> BraidWord:
    return BraidWord(b.strands, tuple((i, -s) for i, s in reversed(b.letters)))


def tensor(b1: BraidWord, b2: BraidWord) -> BraidWord:
    """b1 on the first strands, b2 to its right."""
    shifted = tuple((i + b1.strands, s) for i, s in b2.letters)
    return BraidWord(b1.strands + b2.strands, b1.letters + shifted)


def underlying_permutation(b: BraidWord) -> Permutation:
    """Position bookkeeping of the strands.

    ``images[p]`` is the starting position of the strand that ends at
    position p. With this reading ``perm(b1 * b2) == perm(b1) * perm(b2)``.
    """
    source = list(range(b.strands))
    for i, _ in b.letters:
        source[i - 1], source[i] = source[i], source[i - 1]
    return Permutation(tuple(source))


def closure_component_count(b: BraidWord) -> int:
    return len(underlying_permutation(b).cycles())


def random_word(strands: int, length: int, rng: random.Random) -> BraidWord:
    letters = tuple((rng.randint(1, strands - 1), rng.choice((1, -1))) for _ in range(length))
    return BraidWord(strands, letters)


def _relation_sites(letters: Sequence[tuple[int, int]], strands: int):
    """Yield every braid-relation rewrite available in ``letters``."""
    L = list(letters)
    for k in range(len(L) + 1):
        for i in range(1, strands):
            for s in (1, -1):
                yield L[:k] + [(i, s), (i, -s)] + L[k:]
    for k in range(len(L) - 1):
        (i, s), (j, t) = L[k], L[k + 1]
        if i == j and s == -t:
            yield L[:k] + L[k + 2 :]
        if abs(i - j) > 1:
            yield L[:k] + [(j, t), (i, s)] + L[k + 2 :]
    for k in range(len(L) - 2):
        (i, s), (j, t), (l, u) = L[k : k + 3]
        # sigma_i^e sigma_j^e sigma_i^e = sigma_j^e sigma_i^e sigma_j^e for |i - j| = 1, same sign e
        if i == l and abs(i - j) == 1 and s == t == u:
            yield L[:k] + [(j, s), (i, s), (j, s)] + L[k + 3 :]


def random_relation_moves(b: BraidWord, moves: int, rng: random.Random) -> BraidWord:
    """Apply ``moves`` random braid-group relations (free cancellation,
    far commutation, the braid relation) to ``b``; the braid is unchanged."""
    letters = list(b.letters)
    for _ in range(moves):
        sites = list(_relation_sites(letters, b.strands))
        # prefer structural moves over bare insertion when any exist
        structural = sites[(len(letters) + 1) * 2 * (b.strands - 1) :]
        pool = structural if structural and rng.random() < 0.75 else sites
        letters = rng.choice(pool)
    return BraidWord(b.strands, tuple(letters))
