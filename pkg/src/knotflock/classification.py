"""Knot-theoretic flocks up to isomorphism, from a catalog of small groups.

F(G, b1) and F(H, b2) are isomorphic exactly when some group isomorphism
G -> H sends b1 to b2, so the classes coming from one group are the orbits of
Aut(G) on its admissible elements, and classes from non-isomorphic groups
never merge.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import CoverageIncomplete, DuplicateIsomorphismClass, InvalidGroupFile
from .fileio import format_group, read_group
from .groups import FiniteGroup, admissible_b, are_isomorphic, automorphisms
from .ternary import FlockSpec

log = logging.getLogger(__name__)

MANIFEST = "manifest.txt"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    group: FiniteGroup
    abelian: bool
    note: str = ""


@dataclass
class GroupCatalog:
    entries: list[CatalogEntry] = field(default_factory=list)
    complete: dict[int, bool] = field(default_factory=dict)

    def of_order(self, n: int) -> list[CatalogEntry]:
        return [e for e in self.entries if e.group.order == n]

    def is_complete(self, n: int) -> bool:
        return self.complete.get(n, False)

    def __getitem__(self, ident: str) -> CatalogEntry:
        for e in self.entries:
            if e.id == ident:
                return e
        raise KeyError(ident)


@dataclass(frozen=True)
class CatalogReport:
    counts: dict[int, int]
    duplicates: list[tuple[str, str]]
    complete: dict[int, bool]

    def __str__(self) -> str:
        lines = [f"order {n}: {c} entries{'' if self.complete.get(n) else ' (partial)'}"
                 for n, c in sorted(self.counts.items())]
        lines += [f"duplicate isomorphism class: {a} ~ {b}" for a, b in self.duplicates]
        return "\n".join(lines)


def default_catalog_dir() -> Path:
    return Path(str(resources.files("knotflock") / "data" / "catalog"))


def load_catalog(path: str | Path | None = None, *, validate: bool = True) -> GroupCatalog:
    """Read ``<order>_<id>.group`` files plus the manifest.

    With ``validate`` (the default) equal-order entries are checked pairwise
    for isomorphism and DuplicateIsomorphismClass is raised on a repeat.
    """
    root = Path(path) if path is not None else default_catalog_dir()
    catalog = GroupCatalog()
    manifest = root / MANIFEST
    flags: dict[str, tuple[bool, str]] = {}
    if manifest.exists():
        for raw in manifest.read_text().splitlines():
            line = raw.split("#", 1)[0].split()
            if not line:
                continue
            if line[0] == "complete" and len(line) == 3:
                catalog.complete[int(line[1])] = line[2] == "yes"
            elif line[0] == "entry" and len(line) >= 4:
                flags[line[1]] = (line[3] == "yes", " ".join(line[4:]))
            else:
                raise InvalidGroupFile(f"bad manifest line {raw!r}")
    files = sorted(root.glob("*.group"), key=_file_key)
    if not files:
        log.warning("catalog %s contains no group files", root)
    for f in files:
        order_txt, _, ident = f.stem.partition("_")
        try:
            g = read_group(f)
        except Exception as exc:  # noqa: BLE001 - any parse/validation error is a bad file
            raise InvalidGroupFile(f"{f.name}: {exc}") from exc
        if not order_txt.isdigit() or int(order_txt) != g.order:
            raise InvalidGroupFile(f"{f.name}: filename order does not match table order {g.order}")
        abelian, note = flags.get(ident, (g.is_abelian, ""))
        if abelian != g.is_abelian:
            raise InvalidGroupFile(f"{f.name}: manifest abelian flag disagrees with the table")
        g = FiniteGroup(g.table, g.identity, g.inverse, g.labels, ident)
        catalog.entries.append(CatalogEntry(ident, g, g.is_abelian, note))
    if validate:
        report = validate_catalog(catalog)
        if report.duplicates:
            a, b = report.duplicates[0]
            raise DuplicateIsomorphismClass(f"catalog entries {a} and {b} are isomorphic", (a, b))
    return catalog


def _file_key(path: Path):
    order, _, ident = path.stem.partition("_")
    return (int(order) if order.isdigit() else 0, ident)


def validate_catalog(catalog: GroupCatalog) -> CatalogReport:
    counts: dict[int, int] = {}
    dups = []
    by_order: dict[int, list[CatalogEntry]] = {}
    for e in catalog.entries:
        by_order.setdefault(e.group.order, []).append(e)
    for n, entries in sorted(by_order.items()):
        counts[n] = len(entries)
        for i, a in enumerate(entries):
            for b in entries[i + 1:]:
                if are_isomorphic(a.group, b.group) is not None:
                    dups.append((a.id, b.id))
    return CatalogReport(counts, dups, dict(catalog.complete))


def write_catalog(groups: dict[int, list[FiniteGroup]], root: str | Path) -> None:
    """Write ``<order>_<name>.group`` files and a manifest marking every order complete."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    lines = ["# knotflock small-group catalog",
             "# complete <order> yes|no",
             "# entry <id> <order> <abelian yes|no> [note]"]
    for n in sorted(groups):
        lines.append(f"complete {n} yes")
    for n in sorted(groups):
        for g in groups[n]:
            ident = g.name.replace("(", "").replace(")", "").replace(",", "_")
            (root / f"{n}_{ident}.group").write_text(format_group(g))
            lines.append(f"entry {ident} {n} {'yes' if g.is_abelian else 'no'} {g.name}")
    (root / MANIFEST).write_text("\n".join(lines) + "\n")


# ------------------------------------------------------------ classification

@dataclass(frozen=True)
class FlockClass:
    group_id: str
    group: FiniteGroup
    representative: int
    orbit: tuple[int, ...]

    @property
    def idempotent(self) -> bool:
        return self.representative == self.group.identity

    @property
    def spec(self) -> FlockSpec:
        return FlockSpec(self.group, self.representative)


def flock_classes(group: FiniteGroup, group_id: str = "") -> list[FlockClass]:
    """Orbits of Aut(group) on the admissible elements, identity first."""
    adm = sorted(admissible_b(group))
    if len(adm) == 1:
        return [FlockClass(group_id, group, adm[0], (adm[0],))]
    auts = automorphisms(group)
    seen: set[int] = set()
    out = []
    for b in sorted(adm, key=lambda x: (x != group.identity, x)):
        if b in seen:
            continue
        orbit = tuple(sorted({a.map[b] for a in auts}))
        seen.update(orbit)
        out.append(FlockClass(group_id, group, b, orbit))
    return out


def enumerate_flocks(catalog: GroupCatalog, order: int, nonabelian_only: bool = True) -> list[FlockClass]:
    out = []
    for e in catalog.of_order(order):
        if nonabelian_only and e.abelian:
            continue
        out.extend(flock_classes(e.group, e.id))
    return out


def flocks_isomorphic(s1: FlockSpec, s2: FlockSpec) -> bool:
    """True iff a group isomorphism carries b1 to b2."""
    g, h = s1.group, s2.group
    if (s1.b == g.identity) != (s2.b == h.identity):
        return False
    iso = are_isomorphic(g, h)
    if iso is None:
        return False
    target = iso.map[s1.b]
    if target == s2.b:
        return True
    # any other isomorphism is iso followed by an automorphism of h
    return any(a.map[target] == s2.b for a in automorphisms(h))


@dataclass(frozen=True)
class CountRow:
    order: int
    all: int
    idempotent: int


def count_table(catalog: GroupCatalog, orders: Iterable[int]) -> list[CountRow]:
    rows = []
    for n in orders:
        if not catalog.is_complete(n):
            raise CoverageIncomplete(f"catalog does not cover all groups of order {n}", n)
        classes = enumerate_flocks(catalog, n, nonabelian_only=True)
        rows.append(CountRow(n, len(classes), sum(c.idempotent for c in classes)))
    return rows


def format_count_table(rows: list[CountRow], csv: bool = False) -> str:
    if csv:
        return "\n".join(["order,all,idempotent"] + [f"{r.order},{r.all},{r.idempotent}" for r in rows]) + "\n"
    width = max([5] + [len(str(r.all)) + 1 for r in rows])
    head = "n".rjust(11) + "".join(str(r.order).rjust(width) for r in rows)
    line_all = "all".rjust(11) + "".join(str(r.all).rjust(width) for r in rows)
    line_idem = "idempotent".rjust(11) + "".join(str(r.idempotent).rjust(width) for r in rows)
    return "\n".join([head, line_all, line_idem]) + "\n"
