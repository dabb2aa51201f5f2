"""Enumerate small groups by cyclic extension.

Every group of order below 60 is solvable, so it has a normal subgroup N of
prime index p and is generated by N and one element g with

    g^p = n0 in N,    g^-1 a g = tau(a),

where tau is an automorphism of N fixing n0 whose p-th power is conjugation
by n0.  Running over all (N, p, tau, n0) and discarding isomorphic copies
yields every group of the requested orders.
"""
from __future__ import annotations

import logging
from collections import defaultdict

import numpy as np

from .groups import (FiniteGroup, _build, abelian, alternating, are_isomorphic, automorphisms,
                     cyclic, dicyclic, dihedral, direct_product, group_from_permutations,
                     symmetric)
from .perm import Permutation

log = logging.getLogger(__name__)

#: Number of groups of each order (the classical enumeration); used to
#: confirm that extension search found everything.
KNOWN_GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5, 13: 1,
    14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2, 23: 1, 24: 15,
    25: 2, 26: 2, 27: 5, 28: 4, 29: 1, 30: 4, 31: 1,
}


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def extension_table(base: FiniteGroup, p: int, tau: np.ndarray, n0: int) -> np.ndarray:
    """Cayley table of <N, g>; element g^i a is numbered i*|N| + a."""
    m = base.order
    t = base.table
    powers = [np.arange(m)]
    for _ in range(p - 1):
        powers.append(tau[powers[-1]])
    idx = np.arange(p * m)
    i, a = idx // m, idx % m
    table = np.empty((p * m, p * m), dtype=np.int64)
    for j in range(p):
        tj = powers[j]
        # (g^i a)(g^j b) = g^(i+j) tau^j(a) b
        left = tj[a]                                  # tau^j(a) per row
        wrap = (i + j) >= p
        left = np.where(wrap, t[n0, left], left)      # g^p = n0 sits in front
        block = t[left[:, None], np.arange(m)[None, :]]
        table[:, j * m:(j + 1) * m] = ((i + j) % p)[:, None] * m + block
    return table


def cyclic_extensions(base: FiniteGroup, p: int):
    """Yield the table of every cyclic extension of ``base`` by C_p (with repeats)."""
    m = base.order
    t = base.table
    auts = [np.asarray(a.map) for a in automorphisms(base)]
    for tau in auts:
        tp = np.arange(m)
        for _ in range(p):
            tp = tau[tp]
        for n0 in range(m):
            if tau[n0] != n0:
                continue
            conj = t[t[base.inv(n0), np.arange(m)], n0]   # n0^-1 a n0
            if np.array_equal(tp, conj):
                yield extension_table(base, p, tau, n0)


def _named_library(order: int, known: dict[int, list[FiniteGroup]]) -> list[FiniteGroup]:
    lib: list[FiniteGroup] = [cyclic(order)]
    if order == 6:
        lib.append(symmetric(3))
    if order % 2 == 0 and order >= 6:
        lib.append(dihedral(order))
    if order % 4 == 0 and order >= 8:
        lib.append(dicyclic(order))
    if order == 12:
        lib.append(alternating(4))
    if order == 24:
        lib.append(symmetric(4))
        lib.append(_sl23())
    for a, groups_a in known.items():
        if a < 2 or order % a or order // a < 2 or a > order // a:
            continue
        for ga in groups_a:
            for gb in known.get(order // a, []):
                if ga.name and gb.name:
                    lib.append(direct_product(ga, gb))
    return lib


def _sl23() -> FiniteGroup:
    # SL(2,3) acting on the 8 nonzero vectors of F_3^2
    vecs = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def perm(a, b, c, d):
        return Permutation(tuple(pos[((a * x + b * y) % 3, (c * x + d * y) % 3)] for x, y in vecs))

    g = group_from_permutations([perm(1, 1, 0, 1), perm(0, 1, 2, 0)], name="SL(2,3)")
    return g


def _abelian_name(g: FiniteGroup) -> str:
    # invariant factors from the order statistics
    n = g.order
    counts = g.order_statistics()
    for factors in _abelian_factorisations(n):
        h = abelian(*factors)
        if h.order_statistics() == counts:
            return "x".join(f"C{f}" for f in factors)
    return f"Ab{n}"


def _abelian_factorisations(n: int, smallest: int = 2) -> list[tuple[int, ...]]:
    if n == 1:
        return [()]
    out = []
    for f in range(smallest, n + 1):
        if n % f == 0:
            for rest in _abelian_factorisations(n // f, f):
                if all(r % f == 0 for r in rest):
                    out.append((f,) + rest)
    return out


def enumerate_groups(max_order: int) -> dict[int, list[FiniteGroup]]:
    """All groups of order 1..max_order up to isomorphism (max_order < 60)."""
    if max_order >= 60:
        raise ValueError("extension search only covers solvable orders (< 60)")
    found: dict[int, list[FiniteGroup]] = {1: [cyclic(1)]}
    found[1][0] = _build(found[1][0].table, name="C1")
    for n in range(2, max_order + 1):
        buckets: dict[tuple, list[FiniteGroup]] = defaultdict(list)
        reps: list[FiniteGroup] = []
        for p in _primes(n):
            for base in found[n // p]:
                for table in cyclic_extensions(base, p):
                    cand = _build(table)
                    key = cand.invariant_key()
                    if any(are_isomorphic(cand, h) for h in buckets[key]):
                        continue
                    buckets[key].append(cand)
                    reps.append(cand)
        named = []
        library = _named_library(n, found)
        for g in reps:
            name = None
            if g.is_abelian:
                name = _abelian_name(g)
            else:
                for h in library:
                    if not h.is_abelian and h.invariant_key() == g.invariant_key() \
                            and are_isomorphic(g, h):
                        name = h.name
                        break
            named.append(_build(g.table, name=name))
        named.sort(key=lambda g: (not g.is_abelian, g.name is None, g.name or ""))
        found[n] = _dedupe_names(named)
        log.info("order %d: %d groups", n, len(found[n]))
    return found


def _dedupe_names(groups: list[FiniteGroup]) -> list[FiniteGroup]:
    out, counter = [], 0
    for g in groups:
        if g.name is None:
            counter += 1
            g = _build(g.table, name=f"G{g.order}_{counter}")
        out.append(g)
    return out
