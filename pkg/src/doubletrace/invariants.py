"""Quantities derived from tau: order counts, indicators, RT values, screening."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .braid import BraidWord, closure_component_count, inverse, lens_braid, parse_braid
from .groups import FiniteGroup, abelianization_invariants
from .double import lens_tau_closed_form, tau_fast
from .presentations import count_homomorphisms, preset_presentation

__all__ = [
    "mobius",
    "divisors",
    "order_count_via_mobius",
    "fs_indicator",
    "fs_indicator_via_braid",
    "omega",
    "rt_value",
    "ScreenConfig",
    "BatteryResult",
    "InvariantReport",
    "screening_report",
]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def order_count_via_mobius(G: FiniteGroup, n: int, method: str = "closed", budget: int | None = None) -> int:
    """o_n(G) = |G|^-1 sum_{d | n} mu(n/d) tau(b_d; kG).

    ``method`` picks how tau(b_d) is obtained: ``"closed"`` uses the lens
    closed form, ``"fast"`` evaluates the braid.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    for d in divisors(n):
        if method == "closed":
            t = lens_tau_closed_form(G, d)
        elif method == "fast":
            t = tau_fast(G, lens_braid(d), budget=budget)
        else:
            raise ValueError(f"unknown method {method!r}")
        total += mobius(n // d) * t
    q, r = divmod(total, G.order)
    if r:
        raise ArithmeticError(f"Mobius sum {total} is not divisible by |G| = {G.order}")
    return q


def fs_indicator(G: FiniteGroup, m: int) -> int:
    """m-th Frobenius-Schur indicator of the regular representation: #{g : g^m = 1}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return G.count_power_roots(m)


def fs_indicator_via_braid(G: FiniteGroup, m: int, budget: int | None = None) -> int:
    """|G|^-1 tau(b_m^-1; kG)."""
    t = tau_fast(G, inverse(lens_braid(m)), budget=budget)
    q, r = divmod(t, G.order)
    if r:
        raise ArithmeticError("tau(b_m^-1) not divisible by |G|")
    return q


def omega(G: FiniteGroup, r: int) -> Fraction:
    """Tr_{D(kG)}(u^r) / |G|, which for a group algebra is #{g : g^r = 1}."""
    return Fraction(G.count_power_roots(r))


def rt_value(G: FiniteGroup, b: BraidWord, budget: int | None = None, workers: int | None = None) -> Fraction:
    """|G|^-(m+1) tau(b; kG), m the number of closure components."""
    m = closure_component_count(b)
    return Fraction(tau_fast(G, b, budget=budget, workers=workers), G.order ** (m + 1))


# ---------------------------------------------------------------------------
# Screening


DEFAULT_BATTERY: tuple[tuple[str, int], ...] = (
    ("s1", 2),
    ("s2 s1", 3),
    ("s3 s2 s1", 4),
    ("s4 s3 s2 s1", 5),
    ("s1 s1 s1 s1", 2),
    ("s1 s1", 2),
)
DEFAULT_PRESENTATIONS: tuple[str, ...] = ("Q8",)


@dataclass
class ScreenConfig:
    braids: list[tuple[str, int]] = field(default_factory=lambda: list(DEFAULT_BATTERY))
    extra_braids: list[tuple[str, int]] = field(default_factory=list)
    presentations: list[str] = field(default_factory=lambda: list(DEFAULT_PRESENTATIONS))
    budget: int | None = None
    workers: int | None = None

    @classmethod
    def from_json(cls, data: dict) -> "ScreenConfig":
        def pairs(items):
            return [(b["word"], int(b["strands"])) if isinstance(b, dict) else (b[0], int(b[1])) for b in items]

        cfg = cls()
        if "braids" in data:
            cfg.braids = pairs(data["braids"])
        if "extra_braids" in data:
            cfg.extra_braids = pairs(data["extra_braids"])
        if "presentations" in data:
            cfg.presentations = list(data["presentations"])
        cfg.budget = data.get("budget")
        return cfg

    def to_json(self) -> dict:
        return {
            "braids": [{"word": w, "strands": n} for w, n in self.braids],
            "extra_braids": [{"word": w, "strands": n} for w, n in self.extra_braids],
            "presentations": list(self.presentations),
            "budget": self.budget,
        }


@dataclass
class BatteryResult:
    name: str
    kind: str
    value_a: Any
    value_b: Any

    @property
    def equal(self) -> bool:
        return self.value_a == self.value_b

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "a": _jsonable(self.value_a, self.kind in _BIG_KINDS),
            "b": _jsonable(self.value_b, self.kind in _BIG_KINDS),
            "verdict": "equal" if self.equal else "differs",
        }


_BIG_KINDS = ("tau", "hom")


def _jsonable(v, big: bool = False):
    """Exact counts (tau, #Hom) become decimal strings; keys become strings."""
    if big and isinstance(v, int):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x, big) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x, big) for x in v]
    return v


@dataclass
class InvariantReport:
    """Side-by-side invariants of two groups.

    ``tests`` is in battery order. ``verdict`` never asserts isocategoricity:
    either the groups are distinguished (with the witnesses) or they are not
    distinguished by this battery.
    """

    group_a: str
    group_b: str
    config: ScreenConfig
    tests: list[BatteryResult]

    def distinguishing(self) -> list[BatteryResult]:
        return [t for t in self.tests if not t.equal]

    def first_distinguishing(self) -> BatteryResult | None:
        d = self.distinguishing()
        return d[0] if d else None

    def result(self, name: str) -> BatteryResult:
        for t in self.tests:
            if t.name == name:
                return t
        raise KeyError(name)

    @property
    def verdict(self) -> str:
        d = self.distinguishing()
        if not d:
            return "not distinguished by this battery"
        return "distinguished by " + "; ".join(f"{t.name}: {t.value_a} vs {t.value_b}" for t in d)

    def to_json(self) -> dict:
        first = self.first_distinguishing()
        return {
            "group_a": self.group_a,
            "group_b": self.group_b,
            "config": self.config.to_json(),
            "tests": [t.to_json() for t in self.tests],
            "distinguished": first is not None,
            "first_distinguishing": first.name if first else None,
            "distinguishing_kinds": sorted({t.kind for t in self.distinguishing()}),
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def screening_report(
    G: FiniteGroup,
    H: FiniteGroup,
    config: ScreenConfig | None = None,
    label_a: str | None = None,
    label_b: str | None = None,
) -> InvariantReport:
    """Run the battery: order profiles, tau on braids, #Hom from presets, abelianizations."""
    cfg = config or ScreenConfig()
    tests = [
        BatteryResult("order_profile", "order_profile", G.order_profile().as_dict(), H.order_profile().as_dict())
    ]
    for word, strands in list(cfg.braids) + list(cfg.extra_braids):
        b = parse_braid(word, strands)
        tests.append(
            BatteryResult(
                f"tau[{word}]",
                "tau",
                tau_fast(G, b, budget=cfg.budget, workers=cfg.workers),
                tau_fast(H, b, budget=cfg.budget, workers=cfg.workers),
            )
        )
    for name in cfg.presentations:
        P = preset_presentation(name)
        tests.append(
            BatteryResult(f"hom[{name}]", "hom", count_homomorphisms(P, G), count_homomorphisms(P, H))
        )
    tests.append(
        BatteryResult("abelianization", "abelianization", abelianization_invariants(G), abelianization_invariants(H))
    )
    return InvariantReport(label_a or G.label, label_b or H.label, cfg, tests)
