"""Region colorings of closed braid diagrams and group actions on them.

A coloring assigns an element of the flock to every region so that each
crossing satisfies its relation (see :mod:`knotflock.braids`).  The colors of
the top row of gaps determine everything else, so enumeration pushes every
top tuple down through the braid at once and keeps the tuples that come back
to themselves.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .braids import ClosedBraidDiagram
from .errors import (ActingSetNotClosed, FlockError, NoGroupProvenance, NotCentralColoring,
                     NotColorable, NotInSubgroup, SizeBudgetExceeded)
from .groups import FiniteGroup, _build, center, closure
from .ternary import FlockSpec, TernaryTable, flock, is_colorable

#: Largest number of top tuples enumerated (|X| ** (strands + 1)).
DEFAULT_BUDGET = 50_000_000
_CHUNK = 1 << 20


@dataclass(frozen=True, eq=False)
class ColoringSet:
    """All colorings; ``colors[k, r]`` is the color of region r in coloring k.

    Rows are in lexicographic order of the top-gap colors.
    """

    diagram: ClosedBraidDiagram
    table: TernaryTable
    colors: np.ndarray

    def __len__(self) -> int:
        return int(self.colors.shape[0])

    def __iter__(self):
        return iter(self.colors)

    def index(self) -> dict[bytes, int]:
        return {row.tobytes(): k for k, row in enumerate(self.colors)}


def _push(diagram: ClosedBraidDiagram, v: np.ndarray, top: np.ndarray):
    """Propagate a block of top tuples; returns (region colors, closes mask)."""
    gaps = [top[:, j] for j in range(top.shape[1])]
    regions = np.full((top.shape[0], diagram.num_regions), -1, dtype=np.int64)
    for j, r in enumerate(diagram.gap_map[0]):
        regions[:, r] = gaps[j]
    for cr in diagram.crossings:
        i = cr.gap
        left, above, right = gaps[i - 1], gaps[i], gaps[i + 1]
        below = v[left, above, right] if not cr.over_from_left else v[right, above, left]
        gaps[i] = below
        regions[:, cr.around[3]] = below
    closes = np.ones(top.shape[0], dtype=bool)
    for j in range(len(gaps)):
        closes &= gaps[j] == top[:, j]
    return regions, closes


def enumerate_colorings(diagram: ClosedBraidDiagram, table: TernaryTable, *,
                        budget: int = DEFAULT_BUDGET, check_table: bool = True) -> ColoringSet:
    if check_table and not is_colorable(table):
        raise NotColorable("table fails the axioms needed for region colorings")
    n = table.order
    width = diagram.strands + 1
    total = n ** width
    if total > budget:
        raise SizeBudgetExceeded(f"{n}^{width} = {total} top tuples exceeds budget {budget}", total)
    v = table.values
    found = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        top = np.stack(np.unravel_index(idx, (n,) * width), axis=1).astype(np.int64)
        regions, closes = _push(diagram, v, top)
        found.append(regions[closes])
    colors = np.concatenate(found) if found else np.empty((0, diagram.num_regions), np.int64)
    colors.setflags(write=False)
    return ColoringSet(diagram, table, colors)


def count_colorings(diagram: ClosedBraidDiagram, table: TernaryTable, **kw) -> int:
    return len(enumerate_colorings(diagram, table, **kw))


def coloring_violation(diagram: ClosedBraidDiagram, table: TernaryTable, coloring) -> int | None:
    """Index of the first crossing whose relation fails, or None."""
    c = np.asarray(coloring)
    for cr in diagram.crossings:
        x, y, z = (c[cr.around[s]] for s in cr.relation_slots)
        if table(int(x), int(y), int(z)) != c[cr.around[3]]:
            return cr.index
    return None


def is_valid_coloring(diagram: ClosedBraidDiagram, table: TernaryTable, coloring) -> bool:
    return len(coloring) == diagram.num_regions and coloring_violation(diagram, table, coloring) is None


# ------------------------------------------------------------------ actions

def _require_group(table: TernaryTable) -> FlockSpec:
    spec = table.group_spec
    if spec is None:
        raise NoGroupProvenance("this action needs a flock built from a group")
    return spec


def subgroup_of(g: FiniteGroup, elements) -> tuple[FiniteGroup, list[int]]:
    """The subgroup generated by ``elements`` as a group of its own, plus the embedding."""
    members = sorted(closure(g, list(elements)))
    pos = {x: i for i, x in enumerate(members)}
    table = np.array([[pos[g.mul(a, b)] for b in members] for a in members], dtype=np.int64)
    return _build(table, labels=[g.label(x) for x in members]), members


def central_colorings(diagram: ClosedBraidDiagram, table: TernaryTable) -> np.ndarray:
    """Colorings of the diagram by F(Z(G), e), written with elements of G."""
    spec = _require_group(table)
    zgroup, embed = subgroup_of(spec.group, center(spec.group))
    zs = enumerate_colorings(diagram, flock(zgroup), check_table=False)
    return np.asarray(embed, dtype=np.int64)[zs.colors]


def act_central(spec: FlockSpec, coloring, z) -> np.ndarray:
    """Region-wise product c(r) z(r); z must take central values."""
    z = np.asarray(z)
    zc = center(spec.group)
    bad = [int(v) for v in z.ravel() if int(v) not in zc]
    if bad:
        raise NotCentralColoring(f"element {bad[0] + 1} is not central", bad[0])
    return spec.group.table[np.asarray(coloring), z]


def act_conjugation(spec: FlockSpec, coloring, s: int) -> np.ndarray:
    """Region-wise s c(r) s^-1."""
    g = spec.group
    return g.table[g.table[s, np.asarray(coloring)], g.inverse[s]]


def act_two_sided(spec: FlockSpec, coloring, h: int, s: int, left=None, right=None) -> np.ndarray:
    """Region-wise h c(r) s^-1, for h in ``left`` and s in ``right`` when given."""
    g = spec.group
    if left is not None and h not in set(left):
        raise NotInSubgroup(f"element {h + 1} is not in the left subgroup", h)
    if right is not None and s not in set(right):
        raise NotInSubgroup(f"element {s + 1} is not in the right subgroup", s)
    return g.table[g.table[h, np.asarray(coloring)], g.inverse[s]]


@dataclass(frozen=True, eq=False)
class ActionSpec:
    """A finite acting set on the colorings of one flock.

    kind "central": ``elements`` is an (m, regions) array of central colorings.
    kind "conjugation": ``elements`` lists group elements s.
    kind "two-sided": ``elements`` lists pairs (h, s) from left x right.
    """

    kind: str
    spec: FlockSpec
    elements: tuple
    left: tuple = ()
    right: tuple = ()

    @property
    def size(self) -> int:
        return len(self.elements)

    def apply(self, element, colors: np.ndarray) -> np.ndarray:
        if self.kind == "central":
            return act_central(self.spec, colors, np.asarray(element)[None, :])
        if self.kind == "conjugation":
            return act_conjugation(self.spec, colors, element)
        h, s = element
        return act_two_sided(self.spec, colors, h, s)

    def validate(self) -> None:
        g = self.spec.group
        if self.kind == "central":
            keys = {np.asarray(z).tobytes() for z in self.elements}
            for a, za in enumerate(self.elements):
                for b, zb in enumerate(self.elements):
                    if g.table[np.asarray(za), np.asarray(zb)].tobytes() not in keys:
                        raise ActingSetNotClosed("central colorings not closed under product", (a, b))
            return
        items = set(self.elements)
        for a, b in itertools.product(self.elements, repeat=2):
            prod = g.mul(a, b) if self.kind == "conjugation" else (g.mul(a[0], b[0]), g.mul(a[1], b[1]))
            if prod not in items:
                raise ActingSetNotClosed(f"{self.kind} acting set not closed under the group operation",
                                         (a, b))


def central_action(table: TernaryTable, zs) -> ActionSpec:
    spec = _require_group(table)
    zs = np.asarray(zs, dtype=np.int64)
    zc = center(spec.group)
    for z in zs:
        for v in z:
            if int(v) not in zc:
                raise NotCentralColoring(f"element {int(v) + 1} is not central", int(v))
    return ActionSpec("central", spec, tuple(np.array(z) for z in zs))


def conjugation_action(table: TernaryTable, subgroup, *, generate: bool = True) -> ActionSpec:
    """Conjugation by a subgroup; with ``generate`` the list is closed up first."""
    spec = _require_group(table)
    elems = _check_elements(spec.group, subgroup)
    if generate:
        elems = sorted(closure(spec.group, elems))
    return ActionSpec("conjugation", spec, tuple(elems))


def two_sided_action(table: TernaryTable, left, right, *, generate: bool = True) -> ActionSpec:
    spec = _require_group(table)
    g = spec.group
    left, right = _check_elements(g, left), _check_elements(g, right)
    if generate:
        left, right = sorted(closure(g, left)), sorted(closure(g, right))
    pairs = tuple(itertools.product(left, right))
    return ActionSpec("two-sided", spec, pairs, tuple(left), tuple(right))


def _check_elements(g: FiniteGroup, elems) -> list[int]:
    out = []
    for x in elems:
        if not 0 <= int(x) < g.order:
            raise NotInSubgroup(f"element {int(x) + 1} is not in the group", int(x))
        out.append(int(x))
    return out


@dataclass(frozen=True)
class OrbitPartition:
    """``labels[k]`` is the orbit number of coloring k; orbits are numbered by first member."""

    labels: np.ndarray
    orbits: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def size_histogram(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.sizes:
            out[s] = out.get(s, 0) + 1
        return dict(sorted(out.items()))


def orbit_partition(colorings: ColoringSet, action: ActionSpec) -> OrbitPartition:
    cols = colorings.colors
    k = len(cols)
    lookup = colorings.index()
    parent = np.arange(k)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    action.validate()
    for element in action.elements:
        moved = np.ascontiguousarray(action.apply(element, cols))
        for i in range(k):
            j = lookup.get(moved[i].tobytes())
            if j is None:
                raise FlockError("acting map does not preserve colorings", i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(k)], dtype=np.int64)
    order: dict[int, int] = {}
    members: list[list[int]] = []
    labels = np.empty(k, dtype=np.int64)
    for i, r in enumerate(roots):
        if r not in order:
            order[r] = len(members)
            members.append([])
        labels[i] = order[r]
        members[order[r]].append(i)
    return OrbitPartition(labels, tuple(tuple(m) for m in members))
