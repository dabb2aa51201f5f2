"""Cocycle invariants of closed braids and their orbit refinements.

Each coloring C gives the 1-chain  sum_cr sign(cr) (C(r_s), C(r_m), C(r_t)).
Evaluating a Z/p-valued 1-cocycle on it gives one value per coloring; the
invariant is the histogram of those values, written as a polynomial in t
whose t^a coefficient counts colorings with value a.
"""
from __future__ import annotations

import csv
import io
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .braids import ClosedBraidDiagram, close_braid, parse_braid
from .colorings import ActionSpec, ColoringSet, enumerate_colorings, orbit_partition
from .errors import ArityMismatch, FlockError
from .homology import Chain, CochainTable, check_1cocycle, evaluate_on_chain
from .ternary import TernaryTable


def coloring_cycle(diagram: ClosedBraidDiagram, coloring) -> Chain:
    c = np.asarray(coloring)
    out = Chain(1)
    for cr in diagram.crossings:
        out.add(tuple(int(c[r]) for r in cr.roles), cr.sign)
    return out


def evaluate_cocycle(f: CochainTable, ch: Chain) -> int:
    return evaluate_on_chain(f, ch)


def cycle_values(colorings: ColoringSet, f: CochainTable) -> np.ndarray:
    """Cocycle value of every coloring's cycle, reduced mod f.modulus."""
    if f.arity != 3:
        raise ArityMismatch(f"link invariants need a 1-cocycle (arity 3), got arity {f.arity}")
    cols = colorings.colors
    total = np.zeros(len(cols), dtype=np.int64)
    for cr in colorings.diagram.crossings:
        s, m, t = cr.roles
        total += cr.sign * f.values[cols[:, s], cols[:, m], cols[:, t]]
    return total % f.modulus if f.modulus else total


def _term(coeff: int, power: int) -> str:
    if power == 0:
        return str(coeff)
    var = "t" if power == 1 else f"t^{power}"
    return var if coeff == 1 else f"{coeff}{var}"


@dataclass(frozen=True)
class InvariantPolynomial:
    modulus: int
    coefficients: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.coefficients)

    def __str__(self) -> str:
        parts = [_term(c, a) for a, c in enumerate(self.coefficients) if c]
        return " + ".join(parts) if parts else "0"

    def as_csv_fields(self) -> list[int]:
        return list(self.coefficients)


_TERM = re.compile(r"^(\d*)\s*(?:t(?:\^(\d+)|([²³⁴⁵⁶⁷⁸⁹]))?)?$")
_SUPERSCRIPT = {c: i for i, c in enumerate("⁰¹²³⁴⁵⁶⁷⁸⁹")}


def parse_polynomial(text: str, modulus: int) -> InvariantPolynomial:
    """Read "480 + 264t + 120t^2" (superscript exponents are accepted too)."""
    coeffs = [0] * modulus
    for raw in text.replace("−", "-").split("+"):
        tok = raw.strip().replace(" ", "")
        if not tok:
            continue
        m = _TERM.match(tok)
        if not m or not tok:
            raise FlockError(f"cannot parse polynomial term {raw.strip()!r}")
        num, caret, sup = m.groups()
        has_t = "t" in tok
        power = int(caret) if caret else (_SUPERSCRIPT[sup] if sup else (1 if has_t else 0))
        if power >= modulus:
            raise FlockError(f"power t^{power} is out of range for modulus {modulus}")
        coeffs[power] += int(num) if num else 1
    return InvariantPolynomial(modulus, tuple(coeffs))


def invariant_from_values(values: np.ndarray, modulus: int) -> InvariantPolynomial:
    return InvariantPolynomial(modulus, tuple(int(x) for x in np.bincount(values, minlength=modulus)))


def _check_cocycle(table: TernaryTable, f: CochainTable) -> None:
    if f.modulus < 1:
        raise FlockError("the invariant needs a cocycle with a positive modulus")
    if f.order != table.order:
        raise ArityMismatch(f"cocycle order {f.order} differs from flock order {table.order}")
    spec = table.group_spec
    if spec is not None:
        check = check_1cocycle(spec, f)
        if not check:
            raise FlockError("cochain fails the 1-cocycle conditions", check.witness)


def cocycle_invariant(diagram: ClosedBraidDiagram, table: TernaryTable, f: CochainTable,
                      *, verify: bool = True, colorings: ColoringSet | None = None) -> InvariantPolynomial:
    if verify:
        _check_cocycle(table, f)
    cs = colorings if colorings is not None else enumerate_colorings(diagram, table)
    return invariant_from_values(cycle_values(cs, f), f.modulus)


@dataclass(frozen=True)
class RefinedInvariant:
    """Orbit polynomials with multiplicities.

    Each entry is (coefficients, multiplicity): ``coefficients[a]`` counts the
    colorings of one orbit with cocycle value a.
    """

    modulus: int
    entries: tuple[tuple[tuple[int, ...], int], ...]

    def expand(self) -> InvariantPolynomial:
        total = np.zeros(self.modulus, dtype=np.int64)
        for coeffs, mult in self.entries:
            total += mult * np.asarray(coeffs)
        return InvariantPolynomial(self.modulus, tuple(int(x) for x in total))

    def orbit_sizes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for coeffs, mult in self.entries:
            out[sum(coeffs)] = out.get(sum(coeffs), 0) + mult
        return dict(sorted(out.items()))

    def __str__(self) -> str:
        items = [f"{mult}[{InvariantPolynomial(self.modulus, coeffs)}]" for coeffs, mult in self.entries]
        return "{" + ", ".join(items) + "}"


def refined_key(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    # reading coefficients from the top power down lists 1, 3, t, 3t, t^2, 3t^2
    return tuple(reversed(coeffs))


def refined_invariant(diagram: ClosedBraidDiagram, table: TernaryTable, f: CochainTable,
                      action: ActionSpec, *, verify: bool = True,
                      colorings: ColoringSet | None = None) -> RefinedInvariant:
    if verify:
        _check_cocycle(table, f)
    cs = colorings if colorings is not None else enumerate_colorings(diagram, table)
    values = cycle_values(cs, f)
    part = orbit_partition(cs, action)
    counts: dict[tuple[int, ...], int] = {}
    for orbit in part.orbits:
        coeffs = tuple(int(x) for x in np.bincount(values[list(orbit)], minlength=f.modulus))
        counts[coeffs] = counts.get(coeffs, 0) + 1
    entries = tuple(sorted(counts.items(), key=lambda kv: refined_key(kv[0])))
    return RefinedInvariant(f.modulus, entries)


def parse_refined(text: str, modulus: int) -> RefinedInvariant:
    """Read "{132[1], 212[3], 60[t], ...}"."""
    body = text.strip().lstrip("{").rstrip("}")
    counts: dict[tuple[int, ...], int] = {}
    for m in re.finditer(r"(\d+)\s*\[([^\]]*)\]", body):
        coeffs = parse_polynomial(m.group(2), modulus).coefficients
        counts[coeffs] = counts.get(coeffs, 0) + int(m.group(1))
    entries = tuple(sorted(counts.items(), key=lambda kv: refined_key(kv[0])))
    return RefinedInvariant(modulus, entries)


# ------------------------------------------------------------------ batches

@dataclass(frozen=True)
class BatchRow:
    word: str
    polynomial: InvariantPolynomial
    expected: InvariantPolynomial | None

    @property
    def matches(self) -> bool | None:
        return None if self.expected is None else self.expected == self.polynomial


@dataclass(frozen=True)
class BatchReport:
    rows: tuple[BatchRow, ...]

    @property
    def distinct_polynomials(self) -> int:
        return len({r.polynomial for r in self.rows})

    @property
    def distinct_counts(self) -> int:
        return len({r.polynomial.total for r in self.rows})

    @property
    def mismatches(self) -> list[BatchRow]:
        return [r for r in self.rows if r.matches is False]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        p = self.rows[0].polynomial.modulus if self.rows else 0
        w.writerow(["braid", "p"] + [f"c{a}" for a in range(p)])
        for r in self.rows:
            w.writerow([r.word, r.polynomial.modulus] + r.polynomial.as_csv_fields())
        return buf.getvalue()

    def summary(self) -> str:
        lines = [f"braids: {len(self.rows)}",
                 f"distinct polynomials: {self.distinct_polynomials}",
                 f"distinct coloring counts: {self.distinct_counts}"]
        checked = [r for r in self.rows if r.expected is not None]
        if checked:
            lines.append(f"rows matching the expected value: {len(checked) - len(self.mismatches)}"
                         f"/{len(checked)}")
            for r in self.mismatches:
                lines.append(f"  mismatch: {r.word}: computed {r.polynomial}, expected {r.expected}")
        return "\n".join(lines)


def _one(args) -> InvariantPolynomial:
    word, table, f = args
    return cocycle_invariant(close_braid(parse_braid(word)), table, f, verify=False)


def batch_table2(braids: list[tuple[str, str]] | list[str], table: TernaryTable, f: CochainTable,
                 *, workers: int = 1) -> BatchReport:
    """Invariant of every braid; ``braids`` holds words or (word, expected) pairs."""
    _check_cocycle(table, f)
    pairs = [(b, "") if isinstance(b, str) else b for b in braids]
    jobs = [(w, table, f) for w, _ in pairs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            polys = list(pool.map(_one, jobs))
    else:
        polys = [_one(j) for j in jobs]
    rows = tuple(BatchRow(w, poly, parse_polynomial(exp, f.modulus) if exp else None)
                 for (w, exp), poly in zip(pairs, polys))
    return BatchReport(rows)
