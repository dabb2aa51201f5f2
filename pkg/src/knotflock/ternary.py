"""Ternary operation tables and the knot-theoretic flock axioms.

A :class:`TernaryTable` stores ``values[x, y, z] = [xyz]`` for 0-based
elements.  Every checker returns a :class:`~knotflock._check.Check` whose
witness is the lexicographically first failing tuple.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._check import PASS, Check, first_failure
from .errors import (BNotAdmissible, FlockError, KNotCentralInvolution, NotExtraLoop,
                     NotQuasigroup, ReconstructionFailed)
from .groups import FiniteGroup, _build, admissible_b, associativity_violation, center
from .loops import LoopTable, is_extra_loop, loop_center

#: n^5 scans above this order need an explicit ``max_order`` override.
QUINTUPLE_SCAN_LIMIT = 16


@dataclass(frozen=True, eq=False)
class FlockSpec:
    """A group together with an admissible element b (identity or central involution)."""

    group: FiniteGroup
    b: int

    def __post_init__(self):
        if self.b not in admissible_b(self.group):
            if self.b not in center(self.group):
                raise BNotAdmissible(f"b = {self.b + 1} is not central", self.b)
            raise BNotAdmissible(f"b = {self.b + 1} does not square to the identity", self.b)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def idempotent(self) -> bool:
        return self.b == self.group.identity


@dataclass(frozen=True)
class LoopVariant:
    loop: LoopTable
    k: int
    variant: int


@dataclass(frozen=True, eq=False)
class TernaryTable:
    values: np.ndarray
    provenance: FlockSpec | LoopVariant | None = None

    def __post_init__(self):
        v = self.values
        if v.ndim != 3 or len(set(v.shape)) != 1:
            raise FlockError("ternary table must have shape (n, n, n)")
        n = v.shape[0]
        if n == 0 or v.min() < 0 or v.max() >= n:
            raise FlockError("ternary table entries out of range")
        v.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.values.shape[0])

    def __call__(self, x: int, y: int, z: int) -> int:
        return int(self.values[x, y, z])

    def __eq__(self, other) -> bool:
        return isinstance(other, TernaryTable) and np.array_equal(self.values, other.values)

    __hash__ = None

    @property
    def group_spec(self) -> FlockSpec | None:
        return self.provenance if isinstance(self.provenance, FlockSpec) else None

    @classmethod
    def from_function(cls, n: int, fn, provenance=None) -> TernaryTable:
        vals = np.fromiter((fn(x, y, z) for x, y, z in itertools.product(range(n), repeat=3)),
                           dtype=np.int64, count=n ** 3).reshape(n, n, n)
        return cls(vals, provenance)


def flock_from_group(spec: FlockSpec) -> TernaryTable:
    """[xyz] = x y^-1 z b."""
    g = spec.group
    t, inv = g.table, g.inverse
    xy = t[:, inv]                      # xy[x, y] = x y^-1
    xyz = t[xy[:, :, None], np.arange(g.order)[None, None, :]]
    return TernaryTable(t[xyz, spec.b], spec)


def flock(group: FiniteGroup, b: int | None = None) -> TernaryTable:
    return flock_from_group(FlockSpec(group, group.identity if b is None else b))


# ------------------------------------------------------------------ axioms

def _grid(n: int, k: int) -> list[np.ndarray]:
    shape = [1] * k
    out = []
    for i in range(k):
        s = list(shape)
        s[i] = n
        out.append(np.arange(n).reshape(s))
    return out


def is_ternary_quasigroup(t: TernaryTable) -> Check:
    """Each of [z a b] = c, [a z b] = c, [a b z] = c uniquely solvable.

    Witness: (equation, a, b, c) with equation 1..3 naming the free slot and
    c the first unreachable value.
    """
    v = t.values
    n = t.order
    for eq, axis in enumerate((0, 1, 2), start=1):
        moved = np.moveaxis(v, axis, 2)           # moved[a, b, :] varies the free slot
        hits = np.zeros((n, n, n), dtype=bool)
        a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        hits[a[:, :, None], b[:, :, None], moved] = True
        if not hits.all():
            w = first_failure(~hits).witness
            return Check(False, (eq,) + w)
    return PASS


def _check_quintuples(t: TernaryTable, middle, max_order: int | None) -> Check:
    n = t.order
    limit = QUINTUPLE_SCAN_LIMIT if max_order is None else max_order
    if n > limit:
        raise FlockError(f"n^5 scan refused for order {n} > {limit}; pass max_order to override")
    v = t.values
    _, b, c, d, e = _grid(n, 5)
    b, c, d, e = b[0], c[0], d[0], e[0]
    for a in range(n):
        left = v[v[a, b, c], d, e]
        mid = middle(v, a, b, c, d, e)
        right = v[a, b, v[c, d, e]]
        bad = (left != mid) | (left != right)
        if bad.any():
            return Check(False, (a,) + first_failure(bad).witness)
    return PASS


def is_associative(t: TernaryTable, max_order: int | None = None) -> Check:
    """[[abc]de] = [a[bcd]e] = [ab[cde]] on all quintuples."""
    return _check_quintuples(t, lambda v, a, b, c, d, e: v[a, v[b, c, d], e], max_order)


def is_para_associative(t: TernaryTable, max_order: int | None = None) -> Check:
    """[[abc]de] = [a[dcb]e] = [ab[cde]] on all quintuples."""
    return _check_quintuples(t, lambda v, a, b, c, d, e: v[a, v[d, c, b], e], max_order)


def satisfies_LN(t: TernaryTable) -> Check:
    """[ab[bcd]] = [a[abc][[abc]cd]]."""
    v = t.values
    a, b, c, d = _grid(t.order, 4)
    abc = v[a, b, c]
    return first_failure(v[a, b, v[b, c, d]] != v[a, abc, v[abc, c, d]])


def satisfies_RN(t: TernaryTable) -> Check:
    """[[abc]cd] = [[ab[bcd]][bcd]d]."""
    v = t.values
    a, b, c, d = _grid(t.order, 4)
    bcd = v[b, c, d]
    return first_failure(v[v[a, b, c], c, d] != v[v[a, b, bcd], bcd, d])


def is_knot_theoretic(t: TernaryTable) -> bool:
    return bool(satisfies_LN(t)) and bool(satisfies_RN(t))


def is_idempotent(t: TernaryTable) -> Check:
    a = np.arange(t.order)
    return first_failure(t.values[a, a, a] != a)


def is_semi_commutative(t: TernaryTable) -> Check:
    """[abc] = [cba]."""
    return first_failure(t.values != t.values.transpose(2, 1, 0))


def is_heap(t: TernaryTable) -> Check:
    """[aax] = x = [xaa]; witness (1, a, x) or (2, a, x)."""
    v = t.values
    a, x = _grid(t.order, 2)
    left = v[a, a, x] != x
    if left.any():
        return first_failure(left, (1,))
    return first_failure(v[x, a, a] != x, (2,))


def skew(t: TernaryTable, a: int) -> int:
    """The unique z with [a z a] = a."""
    sols = np.flatnonzero(t.values[a, :, a] == a)
    if len(sols) != 1:
        raise NotQuasigroup(f"[a z a] = a has {len(sols)} solutions for a = {a + 1}", a)
    return int(sols[0])


def skew_map(t: TernaryTable) -> np.ndarray:
    return np.array([skew(t, a) for a in range(t.order)], dtype=np.int64)


def all_special(t: TernaryTable) -> Check:
    """[aax] = [xaa] for all a, x."""
    v = t.values
    a, x = _grid(t.order, 2)
    return first_failure(v[a, a, x] != v[x, a, a])


def skew_law(t: TernaryTable) -> Check:
    """[aab] = skew(b) = [baa] for all a, b."""
    v = t.values
    s = skew_map(t)
    a, b = _grid(t.order, 2)
    return first_failure((v[a, a, b] != s[b]) | (v[b, a, a] != s[b]))


def skew_identities(t: TernaryTable) -> Check:
    """[y x' x] = [y x x'] = [x x' y] = [x' x y] = y, x'' = x and
    skew([xyz]) = [x' y' z'], with x' the skew element of x.

    Witness tags: 1 for the four cancellation laws (x, y), 2 for the
    involution (x,), 3 for the homomorphism law (x, y, z).
    """
    v = t.values
    s = skew_map(t)
    x, y = _grid(t.order, 2)
    sx = s[x]
    bad = ((v[y, sx, x] != y) | (v[y, x, sx] != y) | (v[x, sx, y] != y) | (v[sx, x, y] != y))
    if bad.any():
        return first_failure(bad, (1,))
    bad = s[s] != np.arange(t.order)
    if bad.any():
        return first_failure(bad, (2,))
    xs, ys, zs = _grid(t.order, 3)
    return first_failure(s[v] != v[s[xs], s[ys], s[zs]], (3,))


def recovery_equations_hold(t: TernaryTable) -> Check:
    """[[abc]cb] = a, [c[abc]a] = b, [ba[abc]] = c; witness (eq, a, b, c)."""
    v = t.values
    a, b, c = _grid(t.order, 3)
    abc = v[a, b, c]
    for eq, bad in enumerate((v[abc, c, b] != a, v[c, abc, a] != b, v[b, a, abc] != c), start=1):
        if bad.any():
            return first_failure(bad, (eq,))
    return PASS


def is_colorable(t: TernaryTable) -> bool:
    if is_ternary_quasigroup(t):
        return True
    return bool(satisfies_LN(t)) and bool(satisfies_RN(t)) and bool(recovery_equations_hold(t))


def is_knot_theoretic_flock(t: TernaryTable, max_order: int | None = None) -> bool:
    return (bool(is_ternary_quasigroup(t)) and bool(is_para_associative(t, max_order))
            and bool(satisfies_LN(t)) and bool(satisfies_RN(t)))


# -------------------------------------------------------------- retraction

def retract_group(t: TernaryTable, a: int = 0) -> FlockSpec:
    """Recover (G, b) with F(G, b) == t, using x.y = [x a y].

    The identity of the retract is skew(a) and b = [e e e].  Raises
    ReconstructionFailed whenever the round trip does not reproduce ``t``.
    """
    if not is_ternary_quasigroup(t):
        raise ReconstructionFailed("not a ternary quasigroup")
    table = np.array(t.values[:, a, :])
    try:
        g = _build(table)
    except FlockError as exc:
        raise ReconstructionFailed(f"retract at {a + 1} is not a loop: {exc}") from exc
    triple = associativity_violation(table)
    if triple is not None:
        raise ReconstructionFailed(f"retract at {a + 1} is not associative", triple)
    e = g.identity
    b = t(e, e, e)
    try:
        spec = FlockSpec(g, b)
    except BNotAdmissible as exc:
        raise ReconstructionFailed(f"recovered b is not admissible: {exc}") from exc
    if flock_from_group(spec) != t:
        bad = np.argwhere(flock_from_group(spec).values != t.values)[0]
        raise ReconstructionFailed("round trip F(retract) differs from the table",
                                   tuple(int(i) for i in bad))
    return spec


# ------------------------------------------------------------ extra loops

def extra_loop_ternary(loop: LoopTable, k: int, variant: int = 1) -> TernaryTable:
    """variant 1: ((x y^-1) z) k;  variant 2: (x (y^-1 z)) k."""
    if variant not in (1, 2):
        raise FlockError("variant must be 1 or 2")
    check = is_extra_loop(loop)
    if not check:
        raise NotExtraLoop("loop fails (x(yz))y = (xy)(zy)", check.witness)
    if k not in loop_center(loop) or loop.mul(k, k) != loop.identity:
        raise KNotCentralInvolution(f"k = {k + 1} is not a central element of order <= 2", k)
    m = loop.table
    inv = loop.right_inverse
    n = loop.order
    x, y, z = _grid(n, 3)
    if variant == 1:
        vals = m[m[m[x, inv[y]], z], k]
    else:
        vals = m[m[x, m[inv[y], z]], k]
    return TernaryTable(np.ascontiguousarray(vals), LoopVariant(loop, k, variant))


# ------------------------------------------------------- exhaustive search

def latin_cubes(n: int) -> Iterator[TernaryTable]:
    """Every ternary quasigroup on n elements, by backtracking over cells."""
    cube = -np.ones((n, n, n), dtype=np.int64)
    cells = list(itertools.product(range(n), repeat=3))

    def rec(pos: int):
        if pos == len(cells):
            yield TernaryTable(cube.copy())
            return
        x, y, z = cells[pos]
        used = set(cube[x, y, :z]) | set(cube[x, :y, z]) | set(cube[:x, y, z])
        for val in range(n):
            if val in used:
                continue
            cube[x, y, z] = val
            yield from rec(pos + 1)
        cube[x, y, z] = -1

    yield from rec(0)
