"""Finite groups as explicit multiplication tables.

Elements are the integers ``0..n-1`` inside Python; every text format and the
CLI shift them to ``1..n`` so element numbers match published tables.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ClosureMismatch, FlockError, NoIdentity, NotAssociative, NotLatin
from .perm import Permutation


def _latin_violation(table: np.ndarray) -> tuple[int, int] | None:
    """First cell (row, col) whose entry repeats in its row or column."""
    n = table.shape[0]
    first = None
    for axis in (1, 0):
        for line in range(n):
            vals = table[line] if axis == 1 else table[:, line]
            seen = {}
            for pos, v in enumerate(vals):
                if v in seen:
                    cell = (line, pos) if axis == 1 else (pos, line)
                    if first is None or cell < first:
                        first = cell
                    break
                seen[v] = pos
    return first


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated group on ``0..order-1``.

    Build through :func:`group_from_table` or :func:`group_from_permutations`
    (or the family constructors below); the raw constructor trusts its input.
    """

    table: np.ndarray
    identity: int
    inverse: np.ndarray
    labels: tuple[str, ...] | None = None
    name: str | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def mul(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = int(self.table[acc, x])
        return acc

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        acc = self.identity
        for _ in range(k):
            acc = int(self.table[acc, x])
        return acc

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        for k in range(1, n + 1):
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.table[cur, np.arange(n)]
        return orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(g, x, self.inv(g))

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x + 1)

    @cached_property
    def signatures(self) -> tuple[tuple[int, int, int], ...]:
        """Isomorphism-invariant per-element data: order, centralizer size, number of square roots."""
        t = self.table
        central = (t == t.T).sum(axis=1)
        roots = np.bincount(np.diagonal(t), minlength=self.order)
        return tuple(
            (int(o), int(c), int(r)) for o, c, r in zip(self.element_orders, central, roots)
        )

    def order_statistics(self) -> Counter:
        return Counter(int(o) for o in self.element_orders)

    def invariant_key(self) -> tuple:
        return (self.order, self.is_abelian, tuple(sorted(Counter(self.signatures).items())))


def _build(table: np.ndarray, labels=None, name=None) -> FiniteGroup:
    n = table.shape[0]
    ident = None
    for e in range(n):
        if (table[e] == np.arange(n)).all() and (table[:, e] == np.arange(n)).all():
            ident = e
            break
    if ident is None:
        raise NoIdentity("table has no two-sided identity")
    inverse = np.argmax(table == ident, axis=1)
    table = table.copy()
    table.setflags(write=False)
    inverse.setflags(write=False)
    return FiniteGroup(table, ident, inverse, tuple(labels) if labels else None, name)


def associativity_violation(table: np.ndarray) -> tuple[int, int, int] | None:
    """First triple (x, y, z) with (xy)z != x(yz), or None."""
    n = table.shape[0]
    left = table[table[:, :, None], np.arange(n)[None, None, :]]
    right = table[np.arange(n)[:, None, None], table[None, :, :]]
    bad = left != right
    if not bad.any():
        return None
    return tuple(int(i) for i in np.unravel_index(int(np.flatnonzero(bad)[0]), bad.shape))


def group_from_table(table: Sequence[Sequence[int]] | np.ndarray, *, base: int = 1,
                     labels: Sequence[str] | None = None, name: str | None = None) -> FiniteGroup:
    """Validate a Cayley table (entries ``base..base+n-1``) and build the group.

    Raises NotLatin, NoIdentity or NotAssociative naming the first offending
    cell or triple (reported 0-based in ``witness``).
    """
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise NotLatin("group table must be a non-empty square array")
    arr = arr - base
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        cell = tuple(int(i) for i in np.argwhere((arr < 0) | (arr >= n))[0])
        raise NotLatin(f"entry out of range at cell {cell}", cell)
    cell = _latin_violation(arr)
    if cell is not None:
        raise NotLatin(f"table is not a Latin square (repeat at cell {cell})", cell)
    group = _build(arr, labels, name)
    triple = associativity_violation(arr)
    if triple is not None:
        raise NotAssociative(f"associativity fails at {triple}", triple)
    return group


def group_from_permutations(gens: Sequence[Permutation], elements: Sequence[Permutation] | None = None,
                            name: str | None = None) -> FiniteGroup:
    """Close ``gens`` under composition.

    Without ``elements`` the identity comes first and the rest follow in
    breadth-first discovery order.  With an explicit element list the indices
    follow that list, which must coincide with the generated set.
    """
    gens = list(gens)
    if elements is not None and not gens:
        gens = list(elements)
    if not gens:
        raise FlockError("need at least one permutation")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens) or (
            elements is not None and any(g.degree != degree for g in elements)):
        raise FlockError("permutations act on different point sets")
    ident = Permutation.identity(degree)
    found = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in index:
                index[y] = len(found)
                found.append(y)
                queue.append(y)
    if elements is not None:
        elements = list(elements)
        if len(set(elements)) != len(elements) or set(elements) != set(found):
            extra = [str(p) for p in set(found) - set(elements)][:1]
            raise ClosureMismatch(
                f"explicit list ({len(elements)} elements) differs from the generated group "
                f"({len(found)} elements)", extra[0] if extra else None)
        found = elements
        index = {p: i for i, p in enumerate(found)}
    n = len(found)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(found):
        for j, q in enumerate(found):
            table[i, j] = index[p * q]
    return _build(table, [str(p) for p in found], name)


# ---------------------------------------------------------------- families

def cyclic(n: int) -> FiniteGroup:
    a = np.arange(n)
    return _build((a[:, None] + a[None, :]) % n, name=f"C{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Elements (x, y) are numbered x * |h| + y."""
    m = h.order
    a = np.arange(g.order * m)
    x, y = a // m, a % m
    table = g.table[x[:, None], x[None, :]] * m + h.table[y[:, None], y[None, :]]
    name = f"{g.name}x{h.name}" if g.name and h.name else None
    return _build(table, name=name)


def abelian(*factors: int) -> FiniteGroup:
    out = cyclic(factors[0])
    for f in factors[1:]:
        out = direct_product(out, cyclic(f))
    return out


def dihedral(order: int) -> FiniteGroup:
    """Symmetries of a regular (order/2)-gon: r^i s^j numbered i + j*m."""
    m = order // 2
    if order % 2 or m < 1:
        raise FlockError("dihedral order must be even")
    n = 2 * m
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        i, j = x % m, x // m
        for y in range(n):
            k, l = y % m, y // m
            # s r^k = r^-k s
            rot = (i + (k if j == 0 else -k)) % m
            table[x, y] = rot + ((j + l) % 2) * m
    return _build(table, name=f"D{order}")


def dicyclic(order: int) -> FiniteGroup:
    """Dic_m of order 4m: <a, x | a^2m = 1, x^2 = a^m, x^-1 a x = a^-1>; Q8 at order 8."""
    if order % 4 or order < 4:
        raise FlockError("dicyclic order must be a multiple of 4")
    m2 = order // 2
    half = m2 // 2
    n = order
    table = np.empty((n, n), dtype=np.int64)
    for u in range(n):
        i, j = u % m2, u // m2
        for v in range(n):
            k, l = v % m2, v // m2
            if j == 0:
                table[u, v] = (i + k) % m2 + l * m2
            elif l == 0:
                table[u, v] = (i - k) % m2 + m2
            else:
                table[u, v] = (i - k + half) % m2
    return _build(table, name="Q8" if order == 8 else f"Dic{order}")


def symmetric(points: int) -> FiniteGroup:
    if points == 1:
        return group_from_permutations([Permutation.identity(1)], name="S1")
    gens = [Permutation.from_cycles("(1,2)", points),
            Permutation.from_cycles("(" + ",".join(map(str, range(1, points + 1))) + ")", points)]
    return group_from_permutations(gens, name=f"S{points}")


def alternating(points: int) -> FiniteGroup:
    gens = [Permutation.from_cycles(f"(1,2,{i})", points) for i in range(3, points + 1)]
    if not gens:
        return group_from_permutations([Permutation.identity(points)], name=f"A{points}")
    return group_from_permutations(gens, name=f"A{points}")


# ------------------------------------------------------- subgroups, center

def closure(g: FiniteGroup, elements: Iterable[int]) -> list[int]:
    """Sorted element list of the subgroup generated by ``elements``."""
    gens = [int(x) for x in elements]
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(g.table[x, s])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def center(g: FiniteGroup) -> set[int]:
    t = g.table
    return {int(z) for z in np.flatnonzero((t == t.T).all(axis=1))}


def admissible_b(g: FiniteGroup) -> set[int]:
    """The identity together with every central involution."""
    return {g.identity} | {z for z in center(g) if z != g.identity and g.mul(z, z) == g.identity}


def generating_set(g: FiniteGroup) -> list[int]:
    """Greedy small generating set: repeatedly add the element whose
    adjunction gives the largest subgroup (lowest index on ties)."""
    gens: list[int] = []
    current = closure(g, gens)
    while len(current) < g.order:
        members = set(current)
        best, best_size = None, -1
        for x in range(g.order):
            if x in members:
                continue
            size = len(closure(g, gens + [x]))
            if size > best_size:
                best, best_size = x, size
        gens.append(best)
        current = closure(g, gens)
    return gens


# ----------------------------------------------------- homomorphism search

@dataclass(frozen=True, eq=False)
class GroupIso:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_homomorphism(self) -> bool:
        m = np.asarray(self.map)
        s, t = self.source.table, self.target.table
        return bool((m[s] == t[m[:, None], m[None, :]]).all()) and len(set(self.map)) == len(self.map)


def _extend(src: FiniteGroup, dst: FiniteGroup, gens: Sequence[int], images: Sequence[int]):
    """Extend generator images to <gens> by f(x s) = f(x) f(s); None on conflict."""
    fmap = {src.identity: dst.identity}
    used = {dst.identity}
    queue = deque([src.identity])
    while queue:
        x = queue.popleft()
        fx = fmap[x]
        for s, fs in zip(gens, images):
            y = int(src.table[x, s])
            fy = int(dst.table[fx, fs])
            got = fmap.get(y)
            if got is None:
                if fy in used:
                    return None
                fmap[y] = fy
                used.add(fy)
                queue.append(y)
            elif got != fy:
                return None
    return fmap


def _search(src: FiniteGroup, dst: FiniteGroup, first_only: bool) -> list[tuple[int, ...]]:
    gens = generating_set(src)
    sig_src, sig_dst = src.signatures, dst.signatures
    candidates = [[y for y in range(dst.order) if sig_dst[y] == sig_src[s]] for s in gens]
    found: list[tuple[int, ...]] = []

    def rec(level: int, chosen: list[int]) -> bool:
        if level == len(gens):
            fmap = _extend(src, dst, gens, chosen)
            if fmap is not None and len(fmap) == src.order:
                found.append(tuple(fmap[x] for x in range(src.order)))
                return first_only
            return False
        for y in candidates[level]:
            chosen.append(y)
            if _extend(src, dst, gens[:level + 1], chosen) is not None:
                if rec(level + 1, chosen):
                    return True
            chosen.pop()
        return False

    rec(0, [])
    return found


def automorphisms(g: FiniteGroup) -> list[GroupIso]:
    """Every automorphism, sorted by image tuple."""
    maps = sorted(_search(g, g, first_only=False))
    return [GroupIso(g, g, m) for m in maps]


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> GroupIso | None:
    if g.invariant_key() != h.invariant_key():
        return None
    found = _search(g, h, first_only=True)
    return GroupIso(g, h, found[0]) if found else None
