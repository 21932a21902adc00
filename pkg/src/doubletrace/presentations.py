"""Finitely presented groups and brute-force homomorphism counting."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .groups import FiniteGroup
from .parallel import parallel_sum

__all__ = [
    "PresentationError",
    "GroupPresentation",
    "parse_word",
    "count_homomorphisms",
    "count_homomorphisms_table",
    "preset_presentation",
    "preset_presentations",
    "load_presentation_json",
]

Word = tuple[tuple[int, int], ...]

_TOKEN = re.compile(r"g(\d+)(?:\^(-?\d+))?")


class PresentationError(ValueError):
    pass


def parse_word(text: str, generator_count: int | None = None) -> Word:
    """Parse ``"g0 g1^-1 g0^3"`` into a flat tuple of ``(generator, +-1)`` letters."""
    letters: list[tuple[int, int]] = []
    for tok in text.split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise PresentationError(f"malformed token {tok!r}")
        k = int(m.group(1))
        if generator_count is not None and k >= generator_count:
            raise PresentationError(f"bad index in {tok!r}: only {generator_count} generators")
        e = int(m.group(2)) if m.group(2) is not None else 1
        sign = 1 if e > 0 else -1
        letters.extend([(k, sign)] * abs(e))
    return tuple(letters)


def format_word(word: Word) -> str:
    return " ".join(f"g{k}" if s > 0 else f"g{k}^-1" for k, s in word)


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[Word, ...]
    name: str = ""

    def __post_init__(self):
        if self.generator_count < 1:
            raise PresentationError("a presentation needs at least one generator")
        for r in self.relators:
            for k, s in r:
                if not 0 <= k < self.generator_count or s not in (1, -1):
                    raise PresentationError(f"relator letter {(k, s)} out of range")

    @classmethod
    def from_strings(cls, generator_count: int, relators: Sequence[str], name: str = "") -> "GroupPresentation":
        return cls(generator_count, tuple(parse_word(r, generator_count) for r in relators), name)

    def with_relator(self, relator: Word) -> "GroupPresentation":
        return GroupPresentation(self.generator_count, self.relators + (tuple(relator),), self.name)

    def to_json(self) -> dict:
        return {"generators": self.generator_count, "relators": [format_word(r) for r in self.relators]}


def load_presentation_json(path: str | Path) -> GroupPresentation:
    data = json.loads(Path(path).read_text())
    return GroupPresentation.from_strings(int(data["generators"]), data["relators"], name=str(path))


def _evaluate(G: FiniteGroup, word: Word, images: Sequence[int]) -> int:
    mult, inv = G.mult, G.inv
    acc = 0
    for k, s in word:
        g = images[k]
        acc = int(mult[acc, g if s > 0 else inv[g]])
    return acc


def _count_with_first(args) -> int:
    P, G, first = args
    total = 0
    for rest in itertools.product(range(G.order), repeat=P.generator_count - 1):
        images = (first,) + rest
        if all(_evaluate(G, r, images) == 0 for r in P.relators):
            total += 1
    return total


def count_homomorphisms(P: GroupPresentation, G: FiniteGroup, workers: int | None = None) -> int:
    """Number of generator assignments in G that kill every relator.

    Exhaustive over all |G|^k assignments; the work is split by the image of
    the first generator.
    """
    return parallel_sum(_count_with_first, [(P, G, g) for g in range(G.order)], workers)


def count_homomorphisms_table(P: GroupPresentation, G: FiniteGroup) -> int:
    """Same count, by a vectorised sweep over all assignments at once."""
    import numpy as np

    k = P.generator_count
    grids = np.indices((G.order,) * k).reshape(k, -1)
    ok = np.ones(grids.shape[1], dtype=bool)
    for r in P.relators:
        acc = np.zeros(grids.shape[1], dtype=np.int64)
        for gen, s in r:
            col = grids[gen] if s > 0 else G.inv[grids[gen]]
            acc = G.mult[acc, col]
        ok &= acc == 0
    return int(np.count_nonzero(ok))


def _cyclic(n: int) -> GroupPresentation:
    if n < 1:
        raise PresentationError("cyclic presentation needs n >= 1")
    return GroupPresentation(1, (((0, 1),) * n,), name=f"cyclic:{n}")


def _quaternion(m: int) -> GroupPresentation:
    if m < 2:
        raise PresentationError("quaternion presentation needs m >= 2")
    x, y = "g0", "g1"
    return GroupPresentation.from_strings(
        2,
        [f"{x}^{2 * m}", f"{y}^2 {x}^-{m}", f"{y} {x} {y}^-1 {x}"],
        name=f"quaternion:{m}",
    )


_Q8 = GroupPresentation.from_strings(2, ["g0^-1 g1 g0 g1", "g0 g1^-1 g0 g1"], name="Q8")
_FREE1 = GroupPresentation(1, (), name="Z")
_TRIVIAL = GroupPresentation(1, (((0, 1),),), name="trivial")


def preset_presentation(name: str) -> GroupPresentation:
    """``Q8``, ``Z`` (free on one generator), ``trivial``, ``cyclic:n`` or ``quaternion:m``."""
    name = name.strip()
    fixed = {"Q8": _Q8, "Z": _FREE1, "trivial": _TRIVIAL}
    if name in fixed:
        return fixed[name]
    kind, _, arg = name.partition(":")
    try:
        if kind == "cyclic":
            return _cyclic(int(arg))
        if kind == "quaternion":
            return _quaternion(int(arg))
    except ValueError as exc:
        if isinstance(exc, PresentationError):
            raise
        raise PresentationError(f"bad preset parameter in {name!r}") from None
    raise PresentationError(f"unknown preset presentation {name!r}")


def preset_presentations() -> dict[str, GroupPresentation]:
    return {"Q8": _Q8, "Z": _FREE1, "trivial": _TRIVIAL, "quaternion:2": _quaternion(2)}
