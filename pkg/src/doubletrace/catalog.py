"""Named groups and the group-spec mini-language.

Spec strings::

    cyclic:n  dihedral:m  quaternion:m  symmetric:n
    product:(SPEC,SPEC)   table:PATH
    Q8 G1 G2 F1 F2 ...    (see NAMED)

``dihedral:m`` has order 2m and ``quaternion:m`` is Q_{4m}.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from .groups import (
    FiniteGroup,
    build_cyclic,
    build_dihedral,
    build_direct_product,
    build_generalized_quaternion,
    build_semidirect,
    build_symmetric,
    load_cayley_json,
)

__all__ = ["GroupSpecError", "group_from_spec", "catalog", "catalog_specs", "NAMED"]


class GroupSpecError(ValueError):
    pass


def _z4xz2() -> FiniteGroup:
    # (a, b) in Z4 x Z2 sits at index 2a + b; x = (1, 0) = 2, y = (0, 1) = 1
    return build_direct_product(build_cyclic(4), build_cyclic(2), label="Z4xZ2")


def _f1() -> FiniteGroup:
    F = _z4xz2()
    x, y, x2y = 2, 1, 5
    return build_semidirect(F, build_cyclic(2), {1: {x: x, y: x2y}}, label="F1")


def _f2() -> FiniteGroup:
    F = _z4xz2()
    x, y, xy = 2, 1, 3
    return build_semidirect(F, build_cyclic(2), {1: {x: xy, y: y}}, label="F2")


def _g2() -> FiniteGroup:
    # <x, y | x^4 = y^4 = 1, y x y^-1 = x^-1>
    return build_semidirect(build_cyclic(4), build_cyclic(4), {1: {1: 3}}, label="G2")


def _z8_by_z2(k: int, label: str) -> FiniteGroup:
    # x^8 = y^2 = 1, y x y^-1 = x^k
    return build_semidirect(build_cyclic(8), build_cyclic(2), {1: {1: k}}, label=label)


NAMED: dict[str, Callable[[], FiniteGroup]] = {
    "trivial": lambda: build_cyclic(1),
    "Q8": lambda: _relabel(build_generalized_quaternion(2), "Q8"),
    "G1": lambda: build_direct_product(build_generalized_quaternion(2), build_cyclic(2), label="G1"),
    "G2": _g2,
    "F1": _f1,
    "F2": _f2,
    # the remaining non-abelian groups of order 16
    "D8xZ2": lambda: build_direct_product(build_dihedral(4), build_cyclic(2), label="D8xZ2"),
    "D16": lambda: _z8_by_z2(7, "D16"),
    "SD16": lambda: _z8_by_z2(3, "SD16"),
    "M16": lambda: _z8_by_z2(5, "M16"),
    "Q16": lambda: _relabel(build_generalized_quaternion(4), "Q16"),
}


def _relabel(G: FiniteGroup, label: str) -> FiniteGroup:
    return FiniteGroup(mult=G.mult, inv=G.inv, names=G.names, label=label, _orders=G._orders)


def _split_pair(body: str) -> tuple[str, str]:
    if not (body.startswith("(") and body.endswith(")")):
        raise GroupSpecError(f"product expects '(spec,spec)', got {body!r}")
    inner = body[1:-1]
    depth = 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return inner[:i].strip(), inner[i + 1 :].strip()
    raise GroupSpecError(f"product expects two comma-separated specs, got {body!r}")


def _int_arg(kind: str, arg: str, minimum: int) -> int:
    try:
        n = int(arg)
    except ValueError:
        raise GroupSpecError(f"{kind}: expected an integer, got {arg!r}") from None
    if n < minimum:
        raise GroupSpecError(f"{kind}: parameter must be >= {minimum}, got {n}")
    return n


@lru_cache(maxsize=256)
def _cached(spec: str) -> FiniteGroup:
    if spec in NAMED:
        return NAMED[spec]()
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise GroupSpecError(f"unknown group spec {spec!r}")
    kind = kind.strip()
    arg = arg.strip()
    if kind == "cyclic":
        return build_cyclic(_int_arg(kind, arg, 1))
    if kind == "dihedral":
        return build_dihedral(_int_arg(kind, arg, 1))
    if kind == "quaternion":
        return build_generalized_quaternion(_int_arg(kind, arg, 2))
    if kind == "symmetric":
        return build_symmetric(_int_arg(kind, arg, 1))
    if kind == "product":
        a, b = _split_pair(arg)
        return build_direct_product(_cached(a), _cached(b), label=spec)
    if kind == "table":
        try:
            return load_cayley_json(arg)
        except OSError as exc:
            raise GroupSpecError(f"cannot read table file {arg!r}: {exc}") from None
    raise GroupSpecError(f"unknown group family {kind!r}")


def group_from_spec(spec: str) -> FiniteGroup:
    """Build (or fetch from cache) the group named by ``spec``."""
    spec = spec.strip()
    if spec.startswith("table:"):
        return _cached.__wrapped__(spec)
    return _cached(spec)


def catalog_specs(max_order: int | None = None) -> list[str]:
    """Spec strings of the built-in catalog, optionally capped by group order."""
    specs = ["trivial"]
    specs += [f"cyclic:{n}" for n in range(2, 17)]
    specs += [f"dihedral:{m}" for m in range(2, 9)]
    specs += ["quaternion:2", "quaternion:3", "quaternion:4"]
    specs += ["symmetric:3", "symmetric:4"]
    specs += [
        "product:(cyclic:2,cyclic:4)",
        "product:(cyclic:2,product:(cyclic:2,cyclic:2))",
        "product:(cyclic:2,cyclic:6)",
        "product:(cyclic:4,cyclic:4)",
        "product:(cyclic:2,cyclic:8)",
        "product:(cyclic:2,product:(cyclic:2,cyclic:4))",
        "product:(product:(cyclic:2,cyclic:2),product:(cyclic:2,cyclic:2))",
        "product:(cyclic:3,symmetric:3)",
    ]
    specs += ["G1", "G2", "F1", "F2", "D8xZ2", "SD16", "M16"]
    if max_order is None:
        return specs
    return [s for s in specs if group_from_spec(s).order <= max_order]


def catalog(max_order: int | None = None) -> list[tuple[str, FiniteGroup]]:
    return [(s, group_from_spec(s)) for s in catalog_specs(max_order)]
