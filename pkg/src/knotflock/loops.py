"""Loops, extra loops and the doubling construction M(G, 2)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from ._check import PASS, Check, first_failure
from .errors import FlockError, NoIdentity, NotLatin
from .groups import FiniteGroup, _latin_violation


@dataclass(frozen=True, eq=False)
class LoopTable:
    table: np.ndarray
    identity: int
    left_inverse: np.ndarray
    right_inverse: np.ndarray
    name: str | None = None

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def mul(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = int(self.table[acc, x])
        return acc

    @cached_property
    def is_associative(self) -> bool:
        t = self.table
        n = self.order
        return bool((t[t[:, :, None], np.arange(n)] == t[np.arange(n)[:, None, None], t[None]]).all())

    @cached_property
    def has_two_sided_inverses(self) -> bool:
        return bool((self.left_inverse == self.right_inverse).all())

    def inv(self, x: int) -> int:
        if not self.has_two_sided_inverses:
            raise FlockError("loop lacks two-sided inverses")
        return int(self.right_inverse[x])


def loop_from_table(table, *, base: int = 1, name: str | None = None) -> LoopTable:
    arr = np.asarray(table, dtype=np.int64) - base
    n = arr.shape[0]
    if arr.ndim != 2 or arr.shape[1] != n or arr.min() < 0 or arr.max() >= n:
        raise NotLatin("loop table must be a square array of valid indices")
    cell = _latin_violation(arr)
    if cell is not None:
        raise NotLatin(f"table is not a Latin square (repeat at cell {cell})", cell)
    ident = None
    for e in range(n):
        if (arr[e] == np.arange(n)).all() and (arr[:, e] == np.arange(n)).all():
            ident = e
            break
    if ident is None:
        raise NoIdentity("table has no two-sided identity")
    right_inverse = np.argmax(arr == ident, axis=1)   # x * x' = e
    left_inverse = np.argmax(arr == ident, axis=0)    # x' * x = e
    arr.setflags(write=False)
    return LoopTable(arr, ident, left_inverse, right_inverse, name)


def loop_of_group(g: FiniteGroup) -> LoopTable:
    return LoopTable(g.table, g.identity, g.inverse, g.inverse, g.name)


@dataclass(frozen=True)
class ExtraLoopCheck:
    """Result of :func:`is_extra_loop`: ``ok`` mirrors identity 1."""

    ok: bool
    witness: tuple | None
    identities: tuple[bool, bool, bool]

    def __bool__(self) -> bool:
        return self.ok

    @property
    def consistent(self) -> bool:
        return len(set(self.identities)) == 1


def _extra_identities(t: np.ndarray) -> list[Check]:
    n = t.shape[0]
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    # 1. (x(yz))y = (xy)(zy)
    one = t[t[x, t[y, z]], y] != t[t[x, y], t[z, y]]
    # 2. (yz)(yx) = y((zy)x)
    two = t[t[y, z], t[y, x]] != t[y, t[t[z, y], x]]
    # 3. ((xy)z)x = x(y(zx))
    three = t[t[t[x, y], z], x] != t[x, t[y, t[z, x]]]
    return [first_failure(b) for b in (one, two, three)]


def is_extra_loop(loop: LoopTable) -> ExtraLoopCheck:
    """Check (x(yz))y = (xy)(zy) on all triples (x, y, z).

    The two equivalent forms are evaluated too; ``identities`` reports all
    three so callers can assert they agree.
    """
    checks = _extra_identities(loop.table)
    return ExtraLoopCheck(checks[0].ok, checks[0].witness, tuple(c.ok for c in checks))


def m_construction(g: FiniteGroup) -> LoopTable:
    """M(G, 2) on G x {0, 1}; element (h, i) is numbered h + i*|G|."""
    m = g.order
    t, inv = g.table, g.inverse
    n = 2 * m
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        ga, ia = a % m, a // m
        for b in range(n):
            h, ib = b % m, b // m
            if ia == 0 and ib == 0:
                table[a, b] = t[ga, h]
            elif ia == 0:
                table[a, b] = t[h, ga] + m
            elif ib == 0:
                table[a, b] = t[ga, inv[h]] + m
            else:
                table[a, b] = t[inv[h], ga]
    name = f"M({g.name},2)" if g.name else None
    return loop_from_table(table, base=0, name=name)


def associator(loop: LoopTable, x: int, y: int, z: int) -> int:
    """The unique a with (xy)z = a (x(yz))."""
    t = loop.table
    lhs = t[t[x, y], z]
    rhs = t[x, t[y, z]]
    return int(np.flatnonzero(t[:, rhs] == lhs)[0])


def _associator_array(loop: LoopTable) -> np.ndarray:
    t = loop.table
    n = loop.order
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    lhs = t[t[x, y], z]
    rhs = t[x, t[y, z]]
    # left division: solve a * rhs = lhs via the column permutation of rhs
    solve = np.empty((n, n), dtype=np.int64)
    for c in range(n):
        solve[t[:, c], c] = np.arange(n)
    return solve[lhs, rhs]


def nucleus(loop: LoopTable) -> set[int]:
    a = _associator_array(loop) == loop.identity
    left = a.all(axis=(1, 2))
    middle = a.all(axis=(0, 2))
    right = a.all(axis=(0, 1))
    return {int(x) for x in np.flatnonzero(left & middle & right)}


def loop_center(loop: LoopTable) -> set[int]:
    t = loop.table
    commuting = {int(x) for x in np.flatnonzero((t == t.T).all(axis=1))}
    return nucleus(loop) & commuting


def central_involutions(loop: LoopTable) -> list[int]:
    """Candidates for k: central elements of order exactly two."""
    return sorted(z for z in loop_center(loop)
                  if z != loop.identity and loop.mul(z, z) == loop.identity)


def inverse_properties(loop: LoopTable) -> Check:
    """x^-1 (x y) = y and (y x) x^-1 = y for all x, y."""
    if not loop.has_two_sided_inverses:
        return Check(False, None)
    t, inv = loop.table, loop.right_inverse
    n = loop.order
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    left = t[inv[x], t[x, y]] != y
    if left.any():
        return first_failure(left, (1,))
    right = t[t[y, x], inv[x]] != y
    return first_failure(right, (2,)) if right.any() else PASS
