"""Braid-group action on the basis of D(kG)^{(x)n}.

A basis vector (e_{g1} |x x1) (x) ... (x) (e_{gn} |x xn) is a tuple of pairs
``((g1, x1), ..., (gn, xn))`` of element indices. Braid generators permute this
basis, so the trace of a braid is the number of fixed basis vectors.

The positive generator acts by the braiding of the R-matrix
sum_g (1* |x g) (x) (e_g |x 1). On basis vectors this is::

    ((g, x), (h, y))  ->  ((h, y), (h g h^-1, h x))

and the negative generator is its inverse::

    ((p, u), (q, v))  ->  ((p^-1 q p, p^-1 v), (p, u))

Two evaluators of tau(b; kG) share nothing but the group table:
``tau_brute`` pushes every basis vector through the rule above, while
``tau_fast`` runs the Hurwitz action on the g-components and keeps the
x-components as an affine "source position + left multiplier" map.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .braid import BraidWord, Permutation
from .groups import FiniteGroup
from .parallel import default_budget, parallel_sum

__all__ = [
    "BudgetExceeded",
    "DoubleState",
    "HolonomyData",
    "apply_generator",
    "apply_braid",
    "apply_braid_arrays",
    "tau_brute",
    "hurwitz_apply",
    "holonomy",
    "tau_fast",
    "lens_tau_closed_form",
    "exponent_via_monodromy",
    "double_product",
    "braiding_by_r_matrix",
    "drinfeld_trace",
]

DoubleState = tuple[tuple[int, int], ...]

_CHUNK = 1 << 18
# Hook for orbit-based reduction: tau_fast could instead sum over
# simultaneous-conjugation classes of g-tuples, weighting by class size.


class BudgetExceeded(RuntimeError):
    pass


def _check_budget(count: int, budget: int | None, what: str) -> None:
    limit = default_budget() if budget is None else budget
    if count > limit:
        raise BudgetExceeded(f"{what}: {count} states exceed the budget of {limit}")


# ---------------------------------------------------------------------------
# Single states


def apply_generator(G: FiniteGroup, s: DoubleState, i: int, sign: int) -> DoubleState:
    """Act by sigma_i^sign (1-based i) on one basis vector."""
    n = len(s)
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for {n} tensor factors")
    mult, inv = G.mult, G.inv
    out = list(s)
    (g, x), (h, y) = s[i - 1], s[i]
    if sign > 0:
        out[i - 1] = (h, y)
        out[i] = (int(mult[mult[h, g], inv[h]]), int(mult[h, x]))
    else:
        p = inv[g]
        out[i - 1] = (int(mult[mult[p, h], g]), int(mult[p, y]))
        out[i] = (g, x)
    return tuple(out)


def apply_braid(G: FiniteGroup, s: DoubleState, b: BraidWord) -> DoubleState:
    if len(s) != b.strands:
        raise ValueError(f"state has {len(s)} factors, braid has {b.strands} strands")
    for i, sign in b.letters:
        s = apply_generator(G, s, i, sign)
    return s


# ---------------------------------------------------------------------------
# Vectorised states and brute-force trace


def apply_braid_arrays(G: FiniteGroup, gs: np.ndarray, xs: np.ndarray, b: BraidWord):
    """Apply ``b`` to a batch of states held as two (N, n) index arrays."""
    mult, inv = G.mult, G.inv
    gs, xs = gs.copy(), xs.copy()
    for i, sign in b.letters:
        p, q = i - 1, i
        g, x, h, y = gs[:, p].copy(), xs[:, p].copy(), gs[:, q].copy(), xs[:, q].copy()
        if sign > 0:
            gs[:, p], xs[:, p] = h, y
            gs[:, q] = mult[mult[h, g], inv[h]]
            xs[:, q] = mult[h, x]
        else:
            gi = inv[g]
            gs[:, p] = mult[mult[gi, h], g]
            xs[:, p] = mult[gi, y]
            gs[:, q], xs[:, q] = g, x
    return gs, xs


def _digits(start: int, stop: int, base: int, width: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the lexicographic enumeration of range(base)^width."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), width), dtype=np.int64)
    for col in range(width - 1, -1, -1):
        out[:, col] = idx % base
        idx //= base
    return out


def _chunks(total: int) -> list[tuple[int, int]]:
    return [(a, min(a + _CHUNK, total)) for a in range(0, total, _CHUNK)]


def _brute_chunk(args) -> int:
    G, b, start, stop = args
    n = b.strands
    both = _digits(start, stop, G.order, 2 * n)
    gs, xs = both[:, :n], both[:, n:]
    gs2, xs2 = apply_braid_arrays(G, gs, xs, b)
    fixed = np.all(gs2 == gs, axis=1) & np.all(xs2 == xs, axis=1)
    return int(np.count_nonzero(fixed))


def tau_brute(G: FiniteGroup, b: BraidWord, budget: int | None = None, workers: int | None = None) -> int:
    """Count basis vectors of D(kG)^{(x)n} fixed by b, one by one."""
    total = G.order ** (2 * b.strands)
    _check_budget(total, budget, "tau_brute")
    return parallel_sum(_brute_chunk, [(G, b, a, z) for a, z in _chunks(total)], workers)


# ---------------------------------------------------------------------------
# Hurwitz action and holonomy


@dataclass(frozen=True)
class HolonomyData:
    """Affine description of the x-part of a braid at a fixed g-tuple.

    After the braid, the x at position p is ``multipliers[p] * x[source(p)]``
    where ``source = position_permutation`` (same reading as
    :func:`doubletrace.braid.underlying_permutation`).
    """

    position_permutation: Permutation
    multipliers: tuple[int, ...]

    def apply(self, G: FiniteGroup, xs: Sequence[int]) -> tuple[int, ...]:
        src = self.position_permutation.images
        return tuple(G.mul(m, xs[src[p]]) for p, m in enumerate(self.multipliers))

    def cycle_products(self, G: FiniteGroup) -> list[int]:
        """Product of multipliers around each cycle of the source map."""
        src = self.position_permutation.images
        out = []
        for cyc in self.position_permutation.cycles():
            p = cyc[0]
            acc = self.multipliers[p]
            q = src[p]
            while q != p:
                acc = G.mul(acc, self.multipliers[q])
                q = src[q]
            out.append(acc)
        return out


def hurwitz_apply(G: FiniteGroup, gtuple: Sequence[int], b: BraidWord) -> tuple[int, ...]:
    """Hurwitz action: (g_i, g_{i+1}) -> (g_{i+1}, g_{i+1} g_i g_{i+1}^-1) for sigma_i."""
    if len(gtuple) != b.strands:
        raise ValueError(f"tuple has {len(gtuple)} entries, braid has {b.strands} strands")
    t = [int(g) for g in gtuple]
    for i, sign in b.letters:
        g, h = t[i - 1], t[i]
        if sign > 0:
            t[i - 1], t[i] = h, G.conjugate(h, g)
        else:
            t[i - 1], t[i] = G.conjugate(G.inverse(g), h), g
    return tuple(t)


def holonomy(G: FiniteGroup, gtuple: Sequence[int], b: BraidWord) -> HolonomyData:
    if len(gtuple) != b.strands:
        raise ValueError(f"tuple has {len(gtuple)} entries, braid has {b.strands} strands")
    t = [int(g) for g in gtuple]
    src = list(range(b.strands))
    mul = [0] * b.strands
    for i, sign in b.letters:
        p, q = i - 1, i
        g, h = t[p], t[q]
        if sign > 0:
            # new[p] = old[q]; new[q] = h * old[p]
            src[p], src[q] = src[q], src[p]
            mul[p], mul[q] = mul[q], G.mul(h, mul[p])
            t[p], t[q] = h, G.conjugate(h, g)
        else:
            # new[p] = g^-1 * old[q]; new[q] = old[p]
            gi = G.inverse(g)
            src[p], src[q] = src[q], src[p]
            mul[p], mul[q] = G.mul(gi, mul[q]), mul[p]
            t[p], t[q] = G.conjugate(gi, h), g
    return HolonomyData(Permutation(tuple(src)), tuple(mul))


def _fast_chunk(args) -> int:
    G, b, start, stop = args
    n, order = b.strands, G.order
    mult, inv = G.mult, G.inv
    g0 = _digits(start, stop, order, n)
    t = g0.copy()
    rows = len(t)
    src = np.tile(np.arange(n, dtype=np.int64), (rows, 1))
    mul = np.zeros((rows, n), dtype=np.int64)
    for i, sign in b.letters:
        p, q = i - 1, i
        g, h = t[:, p].copy(), t[:, q].copy()
        sp, sq = src[:, p].copy(), src[:, q].copy()
        mp, mq = mul[:, p].copy(), mul[:, q].copy()
        src[:, p], src[:, q] = sq, sp
        if sign > 0:
            mul[:, p], mul[:, q] = mq, mult[h, mp]
            t[:, p], t[:, q] = h, mult[mult[h, g], inv[h]]
        else:
            gi = inv[g]
            mul[:, p], mul[:, q] = mult[gi, mq], mp
            t[:, p], t[:, q] = mult[mult[gi, h], g], g
    keep = np.all(t == g0, axis=1)
    src, mul = src[keep], mul[keep]
    rows = len(src)
    if rows == 0:
        return 0
    r = np.arange(rows)
    ok = np.ones(rows, dtype=bool)
    cycles = np.zeros(rows, dtype=np.int64)
    for p in range(n):
        acc = mul[:, p].copy()
        cur = src[:, p].copy()
        leader = np.ones(rows, dtype=bool)
        for _ in range(n - 1):
            active = cur != p
            if not active.any():
                break
            leader &= ~(active & (cur < p))
            acc = np.where(active, mult[acc, mul[r, cur]], acc)
            cur = np.where(active, src[r, cur], cur)
        ok &= acc == 0
        cycles += leader
    counts = np.bincount(cycles[ok], minlength=n + 1)
    return sum(int(c) * order**k for k, c in enumerate(counts))


def tau_fast(G: FiniteGroup, b: BraidWord, budget: int | None = None, workers: int | None = None) -> int:
    """tau(b; kG) from Hurwitz-fixed g-tuples and cycle holonomies.

    A basis vector is fixed iff its g-tuple is fixed by the Hurwitz action and
    every cycle of the x-transport has trivial holonomy; each such cycle then
    leaves one free choice of x, contributing |G|^(number of cycles).
    """
    total = G.order ** b.strands
    _check_budget(total, budget, "tau_fast")
    return parallel_sum(_fast_chunk, [(G, b, a, z) for a, z in _chunks(total)], workers)


def lens_tau_closed_form(G: FiniteGroup, n: int) -> int:
    """|G| * #{g : g^n = 1}, the trace of u^-n on D(kG)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return G.order * G.count_power_roots(n)


def exponent_via_monodromy(G: FiniteGroup) -> int:
    """Multiplicative order of the permutation sigma_1^2 induces on (G x G)^2."""
    n = G.order
    both = _digits(0, n**4, n, 4)
    gs, xs = both[:, :2], both[:, 2:]
    b = BraidWord(2, ((1, 1), (1, 1)))
    gs2, xs2 = apply_braid_arrays(G, gs, xs, b)
    image = ((gs2[:, 0] * n + gs2[:, 1]) * n + xs2[:, 0]) * n + xs2[:, 1]
    seen = np.zeros(n**4, dtype=bool)
    result = 1
    for start in range(n**4):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = int(image[i])
            length += 1
        result = math.lcm(result, length)
    return result


# ---------------------------------------------------------------------------
# D(kG) as an algebra: an independent route to the braiding and to u-traces.
# Elements are dicts {(g, x): coefficient} over the basis e_g |x x.


def double_product(G: FiniteGroup, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int] | None:
    """(e_g |x x)(e_h |x y) = delta_{g, x h x^-1} e_g |x xy; None for zero."""
    (g, x), (h, y) = a, b
    if G.conjugate(x, h) != g:
        return None
    return (g, G.mul(x, y))


def _mul_elements(G: FiniteGroup, a: dict, b: dict) -> dict:
    out: dict = defaultdict(int)
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = double_product(G, ka, kb)
            if k is not None:
                out[k] += ca * cb
    return {k: c for k, c in out.items() if c}


def braiding_by_r_matrix(G: FiniteGroup, v: tuple[int, int], w: tuple[int, int]) -> dict:
    """Expand c(v (x) w) = sum_k t_k w (x) s_k v with R = sum_k (1* |x k) (x) (e_k |x 1).

    Returns ``{(basis_left, basis_right): coefficient}``.
    """
    one_star = lambda k: {(l, k): 1 for l in range(G.order)}  # 1* |x k = sum_l e_l |x k
    out: dict = defaultdict(int)
    for k in range(G.order):
        left = _mul_elements(G, {(k, 0): 1}, {w: 1})
        right = _mul_elements(G, one_star(k), {v: 1})
        for kl, cl in left.items():
            for kr, cr in right.items():
                out[(kl, kr)] += cl * cr
    return {k: c for k, c in out.items() if c}


def drinfeld_trace(G: FiniteGroup, power: int) -> int:
    """Trace of left multiplication by u^power on D(kG), with u = sum_g e_g |x g^-1."""
    u = {(g, G.inverse(g)): 1 for g in range(G.order)}
    if power < 0:
        u = {(g, g): 1 for g in range(G.order)}
        power = -power
    acc = {(g, 0): 1 for g in range(G.order)}  # unit = sum_g e_g |x 1
    for _ in range(power):
        acc = _mul_elements(G, acc, u)
    trace = 0
    for h in range(G.order):
        for y in range(G.order):
            trace += _mul_elements(G, acc, {(h, y): 1}).get((h, y), 0)
    return trace
