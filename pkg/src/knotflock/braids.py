"""Braid words and the region structure of their closures.

Geometry
--------
Strands run downward at positions 1..n; gap j (0..n) is the strip between
strand j and strand j+1, gap 0 being left of everything.  Letter number t
sits between sweep levels t and t+1; a letter g crosses the strands at
positions |g| and |g|+1, so it lives in gap i = |g|.  Around that crossing

    left  = gap i-1,  above = gap i at level t,
    right = gap i+1,  below = gap i at level t+1 (a fresh region).

Closure arcs run around the right-hand side, identifying gap j at the bottom
level with gap j at the top.  Gap 0 is the unbounded region.

Crossing conventions
--------------------
For a positive letter the over-strand enters from the upper right and leaves
to the lower left; with both strands oriented downward that is a positive
crossing.  The over-arc then separates left from below and above from right,
and the coloring rule reads  below = [left above right].  Negative letters are
the mirror image:  below = [right above left].

Each strand is co-oriented to the right of its direction of travel, so both
co-orientation arrows leave the right region (the source r_s) and enter the
left region (the target r_t).  r_m is the region sharing an under-arc with r_s:
below for positive letters, above for negative ones.

These choices reproduce the published values of the 12-element example
(see tests/test_acceptance.py); left/right source choice does not change the
invariant.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import EmptyTokens, FlockError, LetterOutOfRange

LEFT, ABOVE, RIGHT, BELOW = range(4)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise LetterOutOfRange("a braid needs at least one strand", self.strands)
        for pos, g in enumerate(self.letters):
            if g == 0 or abs(g) > self.strands - 1:
                raise LetterOutOfRange(
                    f"letter {g} at position {pos + 1} is out of range for {self.strands} strands", pos)

    def __str__(self) -> str:
        return " ".join(map(str, self.letters)) if self.letters else f"strands={self.strands}"

    def mirror(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-g for g in self.letters))

    def rotate(self, k: int = 1) -> BraidWord:
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.strands, self.letters[k:] + self.letters[:k])


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``"[strands=n] g1 g2 ..."``; without a strand count n = max|g| + 1."""
    toks = text.replace(",", " ").split()
    letters = []
    for tok in toks:
        if tok.startswith("strands="):
            strands = int(tok.split("=", 1)[1])
            continue
        try:
            letters.append(int(tok))
        except ValueError as exc:
            raise FlockError(f"cannot parse braid letter {tok!r}") from exc
    if not letters and strands is None:
        raise EmptyTokens("empty braid word needs an explicit strand count")
    if strands is None:
        strands = max(abs(g) for g in letters) + 1
    return BraidWord(strands, tuple(letters))


@dataclass(frozen=True)
class CrossingRecord:
    index: int
    level: int
    gap: int
    sign: int
    around: tuple[int, int, int, int]       # (left, above, right, below)
    roles: tuple[int, int, int]             # (r_s, r_m, r_t)
    over_from_left: bool

    @property
    def relation_slots(self) -> tuple[int, int, int]:
        """Positions in ``around`` of (x, y, z) with below = [x y z]."""
        return (LEFT, ABOVE, RIGHT) if not self.over_from_left else (RIGHT, ABOVE, LEFT)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True, eq=False)
class ClosedBraidDiagram:
    braid: BraidWord
    gap_map: np.ndarray                  # (levels, gaps) -> region id
    crossings: tuple[CrossingRecord, ...]
    num_regions: int
    component_count: int

    @property
    def strands(self) -> int:
        return self.braid.strands

    @property
    def unbounded_region(self) -> int:
        return int(self.gap_map[0, 0])

    @property
    def region_ids(self) -> range:
        return range(self.num_regions)

    @cached_property
    def top_regions(self) -> tuple[int, ...]:
        return tuple(int(r) for r in self.gap_map[0])

    def euler_characteristic(self) -> int:
        v = len(self.crossings)
        return v - 2 * v + self.num_regions

    def dump(self) -> str:
        """One crossing per line: sign a b c d r_s r_m r_t (1-based region ids)."""
        rows = []
        for cr in self.crossings:
            vals = (cr.sign,) + tuple(r + 1 for r in cr.around) + tuple(r + 1 for r in cr.roles)
            rows.append(" ".join(str(v) for v in vals))
        return "\n".join(rows)

    def describe(self) -> str:
        out = [f"braid: {self.braid} on {self.strands} strands",
               f"regions: {self.num_regions} (unbounded: {self.unbounded_region + 1})",
               f"crossings: {len(self.crossings)}",
               f"components: {self.component_count}"]
        for cr in self.crossings:
            l, a, r, b = (x + 1 for x in cr.around)
            s, m, t = (x + 1 for x in cr.roles)
            out.append(f"  #{cr.index + 1} gap {cr.gap} sign {cr.sign:+d}  left {l} above {a} "
                       f"right {r} below {b}  roles (s,m,t) = ({s},{m},{t})")
        return "\n".join(out)


def _components(word: BraidWord) -> int:
    perm = list(range(word.strands))           # perm[pos] = strand currently at pos
    for g in word.letters:
        i = abs(g)
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    # strand at bottom position p reconnects to top position p
    follow = {perm[p]: p for p in range(word.strands)}
    seen, count = set(), 0
    for s in range(word.strands):
        if s in seen:
            continue
        count += 1
        x = s
        while x not in seen:
            seen.add(x)
            x = follow[x]
    return count


def close_braid(word: BraidWord) -> ClosedBraidDiagram:
    n, m = word.strands, len(word.letters)
    raw = np.empty((m + 1, n + 1), dtype=np.int64)
    raw[0] = np.arange(n + 1)
    fresh = n + 1
    for t, g in enumerate(word.letters):
        raw[t + 1] = raw[t]
        raw[t + 1, abs(g)] = fresh
        fresh += 1
    uf = _UnionFind(fresh)
    for j in range(n + 1):
        uf.union(int(raw[m, j]), int(raw[0, j]))
    canon: dict[int, int] = {}
    gap_map = np.empty_like(raw)
    for lvl in range(m + 1):
        for j in range(n + 1):
            root = uf.find(int(raw[lvl, j]))
            gap_map[lvl, j] = canon.setdefault(root, len(canon))
    gap_map.setflags(write=False)
    crossings = []
    for t, g in enumerate(word.letters):
        i = abs(g)
        around = (int(gap_map[t, i - 1]), int(gap_map[t, i]), int(gap_map[t, i + 1]),
                  int(gap_map[t + 1, i]))
        positive = g > 0
        sign = 1 if positive else -1
        r_m = around[BELOW] if positive else around[ABOVE]
        roles = (around[RIGHT], r_m, around[LEFT])
        crossings.append(CrossingRecord(t, t, i, sign, around, roles, over_from_left=not positive))
    return ClosedBraidDiagram(word, gap_map, tuple(crossings), len(canon), _components(word))


def crossing_records(diagram: ClosedBraidDiagram) -> tuple[CrossingRecord, ...]:
    return diagram.crossings
