"""Finite groups as index-addressed Cayley tables.

Every group has its identity at index 0. Elements are plain ints in
``range(G.order)``; ``G.mult[a, b]`` is the index of ``a*b``.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

__all__ = [
    "FiniteGroup",
    "GroupTableError",
    "OrderProfile",
    "from_cayley_table",
    "build_cyclic",
    "build_dihedral",
    "build_generalized_quaternion",
    "build_symmetric",
    "build_direct_product",
    "build_semidirect",
    "quotient_group",
    "commutator_subgroup",
    "abelianization_invariants",
    "element_order",
    "order_profile",
    "exponent",
    "conjugate",
]

EXHAUSTIVE_ASSOC_LIMIT = 64
_ASSOC_SAMPLES = 200_000


class GroupTableError(ValueError):
    """A Cayley table failed validation.

    ``witness`` holds the offending indices (a pair or triple) when there is one.
    """

    def __init__(self, kind: str, message: str, witness: tuple[int, ...] | None = None):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.witness = witness


@dataclass(frozen=True)
class OrderProfile:
    """Number of elements of each exact order; orders absent from ``counts`` have 0."""

    counts: Mapping[int, int]

    def __getitem__(self, n: int) -> int:
        return self.counts.get(n, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def as_dict(self) -> dict[int, int]:
        return dict(sorted(self.counts.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderProfile):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash(tuple(self.as_dict().items()))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    Construct through :func:`from_cayley_table` or one of the ``build_*``
    functions; those validate the group axioms. The tables are read-only numpy
    arrays so the object can be shared between workers.
    """

    mult: np.ndarray
    inv: np.ndarray
    names: tuple[str, ...]
    label: str = ""
    _orders: np.ndarray = field(repr=False, default=None)  # type: ignore[assignment]

    @property
    def order(self) -> int:
        return int(self.mult.shape[0])

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        result, base = 0, g
        while k:
            if k & 1:
                result = int(self.mult[result, base])
            base = int(self.mult[base, base])
            k >>= 1
        return result

    def product(self, elements: Sequence[int]) -> int:
        acc = 0
        for e in elements:
            acc = int(self.mult[acc, e])
        return acc

    def conjugate(self, h: int, g: int) -> int:
        """Return h g h^-1."""
        return int(self.mult[self.mult[h, g], self.inv[h]])

    def commutator(self, a: int, b: int) -> int:
        """Return a b a^-1 b^-1."""
        return int(self.mult[self.mult[a, b], self.mult[self.inv[a], self.inv[b]]])

    def element_order(self, g: int) -> int:
        return int(self._orders[g])

    def element_orders(self) -> np.ndarray:
        return self._orders

    def order_profile(self) -> OrderProfile:
        values, counts = np.unique(self._orders, return_counts=True)
        return OrderProfile({int(v): int(c) for v, c in zip(values, counts)})

    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in np.unique(self._orders)))

    def count_power_roots(self, m: int) -> int:
        """#{g : g^m = 1}."""
        m = abs(m)
        if m == 0:
            return self.order
        return int(np.count_nonzero(m % self._orders == 0))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def generated_subgroup(self, gens: Sequence[int]) -> frozenset[int]:
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for s in gens:
                b = int(self.mult[a, s])
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return frozenset(seen)

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.mult.tolist(), "names": list(self.names)}


# Module-level spellings of the element-level queries.

def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_order(g)


def order_profile(G: FiniteGroup) -> OrderProfile:
    return G.order_profile()


def exponent(G: FiniteGroup) -> int:
    return G.exponent()


def conjugate(G: FiniteGroup, h: int, g: int) -> int:
    return G.conjugate(h, g)


def _compute_orders(mult: np.ndarray) -> np.ndarray:
    n = mult.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    for g in range(n):
        k, acc = 1, g
        while acc != 0:
            acc = int(mult[acc, g])
            k += 1
        orders[g] = k
    return orders


def _check_associative(mult: np.ndarray) -> None:
    n = mult.shape[0]
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        left = mult[mult, :]  # left[a, b, c] = (ab)c
        right = mult[:, mult]  # right[a, b, c] = a(bc)
        bad = np.argwhere(left != right)
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, _ASSOC_SAMPLES))
        mask = mult[mult[a, b], c] != mult[a, mult[b, c]]
        bad = np.stack([a[mask], b[mask], c[mask]], axis=1)
    if len(bad):
        w = tuple(int(v) for v in bad[0])
        raise GroupTableError("non-associative", f"(a*b)*c != a*(b*c) for (a, b, c) = {w}", w)


def from_cayley_table(
    table: Sequence[Sequence[int]] | np.ndarray,
    names: Sequence[str] | None = None,
    label: str = "",
) -> FiniteGroup:
    """Validate a raw multiplication table and wrap it as a FiniteGroup.

    Raises GroupTableError for non-square tables, out-of-range entries,
    identity not at index 0, missing inverses, or non-associativity.
    """
    mult = np.array(table, dtype=np.int64)
    if mult.ndim != 2 or mult.shape[0] != mult.shape[1] or mult.shape[0] == 0:
        raise GroupTableError("shape", f"expected a non-empty square table, got shape {mult.shape}")
    n = mult.shape[0]
    bad = np.argwhere((mult < 0) | (mult >= n))
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise GroupTableError(
            "non-closure", f"mult[{a}][{b}] = {int(mult[a, b])} is outside [0, {n})", (a, b)
        )
    for a in range(n):
        if mult[0, a] != a or mult[a, 0] != a:
            raise GroupTableError("identity", f"index 0 is not a two-sided identity (fails at {a})", (0, a))
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero((mult[a] == 0) & (mult[:, a] == 0))
        if len(hits) == 0:
            raise GroupTableError("inverse", f"element {a} has no two-sided inverse", (a,))
        inv[a] = hits[0]
    _check_associative(mult)
    # Latin-square property follows from the axioms; checked for a clean error anyway.
    for a in range(n):
        if len(np.unique(mult[a])) != n:
            raise GroupTableError("latin", f"row {a} repeats an entry", (a,))
    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n:
        raise GroupTableError("names", f"{len(names)} names given for order {n}")
    mult.setflags(write=False)
    inv.setflags(write=False)
    orders = _compute_orders(mult)
    orders.setflags(write=False)
    return FiniteGroup(mult=mult, inv=inv, names=tuple(names), label=label, _orders=orders)


def load_cayley_json(path: str | Path) -> FiniteGroup:
    """Read the ``{"order", "table", "names"?}`` JSON format."""
    data = json.loads(Path(path).read_text())
    table = data["table"]
    if "order" in data and data["order"] != len(table):
        raise GroupTableError("shape", f"declared order {data['order']} but table has {len(table)} rows")
    return from_cayley_table(table, data.get("names"), label=f"table:{path}")


def _from_elements(elements: Sequence, mul, name=str, label: str = "") -> FiniteGroup:
    """Tabulate a group from an element list (identity first) and a product function."""
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return from_cayley_table(table, [name(e) for e in elements], label=label)


def build_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return from_cayley_table(table, [str(i) for i in range(n)], label=f"cyclic:{n}")


def _xy_name(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y")
    return "".join(parts) or "1"


def build_dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order 2m: x^m = y^2 = 1, y x y^-1 = x^-1."""
    if m < 1:
        raise ValueError("dihedral group needs m >= 1")
    elements = [(a, b) for b in range(2) for a in range(m)]

    def mul(p, q):
        (a, b), (c, d) = p, q
        return ((a + (-c if b else c)) % m, (b + d) % 2)

    return _from_elements(elements, mul, lambda e: _xy_name(*e), label=f"dihedral:{m}")


def build_generalized_quaternion(m: int) -> FiniteGroup:
    """Q_{4m} = <x, y | x^{2m} = 1, y^2 = x^m, y x y^-1 = x^-1>, as normal forms x^a y^b."""
    if m < 2:
        raise ValueError("generalized quaternion group needs m >= 2")
    n = 2 * m
    elements = [(a, b) for b in range(2) for a in range(n)]

    def mul(p, q):
        (a, b), (c, d) = p, q
        e = a + (-c if b else c)
        if b + d == 2:
            return ((e + m) % n, 0)
        return (e % n, b + d)

    return _from_elements(elements, mul, lambda e: _xy_name(*e), label=f"quaternion:{m}")


def build_symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n points; (p*q)(i) = p(q(i)). Elements in lexicographic order."""
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    elements = list(itertools.permutations(range(n)))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(n))

    def name(p):
        seen, cycles = set(), []
        for s in range(n):
            if s in seen or p[s] == s:
                continue
            cyc, i = [], s
            while i not in seen:
                seen.add(i)
                cyc.append(str(i + 1))
                i = p[i]
            cycles.append("(" + " ".join(cyc) + ")")
        return "".join(cycles) or "()"

    return _from_elements(elements, mul, name, label=f"symmetric:{n}")


def build_direct_product(G: FiniteGroup, H: FiniteGroup, label: str = "") -> FiniteGroup:
    """G x H with (g, h) stored at index g*|H| + h."""
    ng, nh = G.order, H.order
    gi = np.repeat(np.arange(ng), nh)
    hi = np.tile(np.arange(nh), ng)
    table = G.mult[gi[:, None], gi[None, :]] * nh + H.mult[hi[:, None], hi[None, :]]
    names = [f"({a},{b})" for a in G.names for b in H.names]
    return from_cayley_table(table, names, label=label or f"product:({G.label},{H.label})")


def _extend_from_generators(G: FiniteGroup, images: Mapping[int, int], compose, start, what: str):
    """Extend a map on generators of G along the Cayley graph.

    ``compose(value_at_a, value_at_generator)`` gives the value at ``a*s``.
    Raises ValueError if the generators do not generate G or the extension is
    inconsistent (i.e. the generator images do not define a homomorphism).
    """
    values: dict[int, object] = {0: start}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for s, img in images.items():
            b = int(G.mult[a, s])
            v = compose(values[a], img)
            if b in values:
                if not _same(values[b], v):
                    raise ValueError(f"{what}: generator images do not define a homomorphism")
            else:
                values[b] = v
                queue.append(b)
    if len(values) != G.order:
        raise ValueError(f"{what}: the given generators do not generate the group")
    return values


def _same(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return bool(np.array_equal(a, b))
    return a == b


def _automorphism(N: FiniteGroup, images: Mapping[int, int]) -> np.ndarray:
    values = _extend_from_generators(
        N, dict(images), lambda va, img: int(N.mult[va, img]), 0, "automorphism"
    )
    perm = np.array([values[a] for a in range(N.order)], dtype=np.int64)
    if len(np.unique(perm)) != N.order:
        raise ValueError("automorphism: generator images define a non-bijective endomorphism")
    return perm


def build_semidirect(
    N: FiniteGroup,
    H: FiniteGroup,
    action: Mapping[int, Mapping[int, int]],
    label: str = "",
) -> FiniteGroup:
    """N x| H with (n1, h1)(n2, h2) = (n1 * act(h1)(n2), h1 h2).

    ``action`` maps each generator of H to an automorphism of N, given as
    generator images ``{n_gen: image}``. Both levels are validated: each map
    must extend to a bijective endomorphism of N, and the assignment must
    extend to a homomorphism H -> Aut(N).
    """
    autos = {h: _automorphism(N, imgs) for h, imgs in action.items()}
    if not autos:
        raise ValueError("action must name at least one generator of H")
    identity = np.arange(N.order, dtype=np.int64)
    # act(h*s) = act(h) o act(s)
    act = _extend_from_generators(H, autos, lambda va, img: va[img], identity, "action")
    nn, nh = N.order, H.order
    ni = np.tile(np.arange(nn), nh)  # element (n, h) at index h*|N| + n
    hi = np.repeat(np.arange(nh), nn)
    act_table = np.stack([act[h] for h in range(nh)])  # act_table[h, n]
    twisted = act_table[hi[:, None], ni[None, :]]
    table = H.mult[hi[:, None], hi[None, :]] * nn + N.mult[ni[:, None], twisted]
    names = [f"({a},{b})" for b in H.names for a in N.names]
    return from_cayley_table(table, names, label=label or f"semidirect:({N.label},{H.label})")


def commutator_subgroup(G: FiniteGroup) -> frozenset[int]:
    comms = {G.commutator(a, b) for a in range(G.order) for b in range(G.order)}
    return G.generated_subgroup(sorted(comms))


def quotient_group(G: FiniteGroup, K: frozenset[int] | Sequence[int], label: str = "") -> FiniteGroup:
    """G/K for a normal subgroup K; coset of the identity first."""
    K = frozenset(K)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        c = len(reps)
        reps.append(g)
        for k in K:
            coset_of[int(G.mult[g, k])] = c
    for g in range(G.order):
        for k in K:
            if G.conjugate(g, k) not in K:
                raise ValueError("subgroup is not normal")
    r = np.array(reps)
    table = coset_of[G.mult[r[:, None], r[None, :]]]
    return from_cayley_table(table, [f"{G.names[g]}K" for g in reps], label=label)


def abelianization_invariants(G: FiniteGroup) -> list[int]:
    """Invariant factors of G/[G, G], ascending, each dividing the next.

    Peels off a cyclic factor generated by an element of maximal order (such a
    subgroup is always a direct summand of a finite abelian group) and recurses
    on the quotient.
    """
    A = quotient_group(G, commutator_subgroup(G))
    factors: list[int] = []
    while A.order > 1:
        orders = A.element_orders()
        g = int(np.argmax(orders))
        factors.append(int(orders[g]))
        A = quotient_group(A, A.generated_subgroup([g]))
    return sorted(factors)
