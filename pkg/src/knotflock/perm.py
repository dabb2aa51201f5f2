"""Permutations in disjoint-cycle notation.

Points are written 1-based in text ("(1,2,3)(4,5)"), stored 0-based.
Products follow the GAP convention: ``p * q`` applies ``p`` first, then ``q``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FlockError

_CYCLE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise FlockError(f"not a bijection of 1..{len(self.images)}", self.images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> Permutation:
        text = text.strip()
        body = _CYCLE.sub("", text).strip()
        if body:
            raise FlockError(f"cannot parse cycle notation {text!r}")
        cycles = []
        for chunk in _CYCLE.findall(text):
            if chunk.strip():
                cycles.append([int(tok) - 1 for tok in chunk.split(",")])
        top = max((p for c in cycles for p in c), default=-1) + 1
        if degree is None:
            degree = top
        elif top > degree:
            raise FlockError(f"point {top} exceeds degree {degree} in {text!r}")
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            if seen.intersection(cyc) or len(set(cyc)) != len(cyc):
                raise FlockError(f"cycles are not disjoint in {text!r}")
            seen.update(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(tuple(images))

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise FlockError("permutations act on different point sets")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)
