"""Command line interface: ``knotflock <command> ...``.

Element numbers on the command line and in every file are 1-based.  Paths may
name a packaged data file with an ``@`` prefix: ``@paper12.flock``,
``@phi.cocycle``, ``@table2.txt``.  Validation errors exit with status 2.
"""
from __future__ import annotations

import argparse
import logging
import sys
from importlib import resources
from pathlib import Path

from .braids import close_braid, parse_braid
from .classification import (count_table, default_catalog_dir, format_count_table, load_catalog,
                             validate_catalog, write_catalog)
from .colorings import (central_action, central_colorings, conjugation_action, enumerate_colorings,
                        orbit_partition, two_sided_action)
from .errors import FlockError
from .fileio import read_braid_list, read_cochain, read_flock, write_cochain
from .homology import check_1cocycle, check_2cocycle, cocycle_space_1, homology_groups
from .invariants import batch_table2, cocycle_invariant, refined_invariant
from .ternary import (is_heap, is_idempotent, is_knot_theoretic, is_para_associative,
                      is_semi_commutative, is_ternary_quasigroup, recovery_equations_hold,
                      satisfies_LN, satisfies_RN)


def data_path(name: str) -> Path:
    if name.startswith("@"):
        return Path(str(resources.files("knotflock") / "data" / name[1:]))
    return Path(name)


def _elements(text: str) -> list[int]:
    out = []
    for tok in text.replace(",", " ").split():
        out.append(int(tok) - 1)
    return out


def _orders(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _witness(w) -> str:
    if isinstance(w, tuple):
        return "(" + ", ".join(str(x + 1) if isinstance(x, int) else str(x) for x in w) + ")"
    return str(w)


def _braid(args):
    return close_braid(parse_braid(args.braid, getattr(args, "strands", None)))


def _action(args, table, diagram):
    if args.action == "conj":
        return conjugation_action(table, _elements(args.subgroup))
    if args.action == "two-sided":
        return two_sided_action(table, _elements(args.subgroup), _elements(args.right or "1"))
    return central_action(table, central_colorings(diagram, table))


# ---------------------------------------------------------------- commands

def cmd_diagram(args) -> int:
    d = _braid(args)
    print(d.dump() if args.dump else d.describe())
    return 0


def cmd_color(args) -> int:
    d = _braid(args)
    cs = enumerate_colorings(d, read_flock(data_path(args.flock)))
    if args.dump:
        top = [int(r) for r in d.gap_map[0]]
        for row in cs.colors:
            print(" ".join(str(int(row[r]) + 1) for r in top))
    else:
        print(len(cs))
    return 0


def cmd_orbits(args) -> int:
    d = _braid(args)
    table = read_flock(data_path(args.flock))
    cs = enumerate_colorings(d, table)
    part = orbit_partition(cs, _action(args, table, d))
    print(f"colorings: {len(cs)}")
    for size, count in part.size_histogram().items():
        print(f"size {size}: {count} orbits")
    return 0


def cmd_invariant(args) -> int:
    d = _braid(args)
    table = read_flock(data_path(args.flock))
    f = read_cochain(data_path(args.cocycle))
    if args.action:
        print(refined_invariant(d, table, f, _action(args, table, d)))
    else:
        print(cocycle_invariant(d, table, f))
    return 0


def cmd_batch(args) -> int:
    table = read_flock(data_path(args.flock))
    f = read_cochain(data_path(args.cocycle))
    report = batch_table2(read_braid_list(data_path(args.braids)), table, f, workers=args.workers)
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    for r in report.rows:
        flag = "" if r.matches is None else ("  ok" if r.matches else f"  MISMATCH (expected {r.expected})")
        print(f"{r.word:<28} {r.polynomial}{flag}")
    print(report.summary())
    return 0


def cmd_classify(args) -> int:
    catalog = load_catalog(args.catalog, validate=not args.no_validate)
    rows = count_table(catalog, _orders(args.orders))
    sys.stdout.write(format_count_table(rows, csv=args.csv))
    return 0


def cmd_catalog(args) -> int:
    if args.catalog_cmd == "build":
        from .extensions import enumerate_groups

        groups = enumerate_groups(args.max_order)
        write_catalog(groups, args.out)
        print(f"wrote {sum(len(v) for v in groups.values())} groups to {args.out}")
    else:
        print(validate_catalog(load_catalog(args.catalog or default_catalog_dir(), validate=False)))
    return 0


def cmd_cocycle(args) -> int:
    table = read_flock(data_path(args.flock))
    spec = table.group_spec
    if spec is None:
        raise FlockError("cocycle commands need a flock given by a group")
    if args.cocycle_cmd == "verify":
        f = read_cochain(data_path(args.cocycle))
        check = (check_1cocycle if f.arity == 3 else check_2cocycle)(spec, f)
        if check:
            print("cocycle: ok")
            return 0
        cond, *tup = check.witness
        print(f"cocycle: fails condition ({cond}) at {_witness(tuple(tup))}")
        return 1
    basis = cocycle_space_1(spec, args.modulus)
    print(f"dimension of the 1-cocycle space over Z/{args.modulus}: {len(basis)}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, f in enumerate(basis, start=1):
            write_cochain(f, out / f"basis_{i:04d}.cocycle")
    return 0


def cmd_homology(args) -> int:
    table = read_flock(data_path(args.flock))
    if table.group_spec is None:
        raise FlockError("homology needs a flock given by a group")
    h = homology_groups(table.group_spec, args.degree, args.normalized)
    kind = "normalized" if args.normalized else "full"
    print(f"H_{args.degree} ({kind}): {h}")
    return 0


def cmd_check(args) -> int:
    t = read_flock(data_path(args.flock))
    checks = [("ternary quasigroup", is_ternary_quasigroup(t)),
              ("para-associative", is_para_associative(t, max_order=args.max_order)),
              ("LN", satisfies_LN(t)), ("RN", satisfies_RN(t)),
              ("recovery equations", recovery_equations_hold(t)),
              ("idempotent", is_idempotent(t)), ("semi-commutative", is_semi_commutative(t)),
              ("heap", is_heap(t))]
    for name, c in checks:
        print(f"{name:<20} {'yes' if c else 'no  ' + _witness(c.witness)}")
    print(f"{'knot-theoretic':<20} {'yes' if is_knot_theoretic(t) else 'no'}")
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotflock", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def braid_args(sp):
        sp.add_argument("--braid", required=True, help='signed letters, e.g. "1 1 -2"')
        sp.add_argument("--strands", type=int, default=None)

    def action_args(sp, required):
        sp.add_argument("--action", choices=["conj", "two-sided", "central"], required=required)
        sp.add_argument("--subgroup", default="1", help="generators (1-based); left factor for two-sided")
        sp.add_argument("--right", default=None, help="right-factor generators for two-sided")

    sp = sub.add_parser("diagram", help="regions, crossings and roles of a closed braid")
    braid_args(sp)
    sp.add_argument("--dump", action="store_true", help="one crossing per line: sign a b c d r_s r_m r_t")
    sp.set_defaults(func=cmd_diagram)

    sp = sub.add_parser("color", help="count or list flock colorings")
    braid_args(sp)
    sp.add_argument("--flock", required=True)
    sp.add_argument("--dump", action="store_true", help="print each coloring's top tuple")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("orbits", help="orbit-size histogram of an action on colorings")
    braid_args(sp)
    sp.add_argument("--flock", required=True)
    action_args(sp, required=True)
    sp.set_defaults(func=cmd_orbits)

    sp = sub.add_parser("invariant", help="cocycle invariant, optionally orbit-refined")
    braid_args(sp)
    sp.add_argument("--flock", required=True)
    sp.add_argument("--cocycle", required=True)
    action_args(sp, required=False)
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("batch", help="invariants for a list of braids")
    sp.add_argument("--braids", required=True)
    sp.add_argument("--flock", required=True)
    sp.add_argument("--cocycle", required=True)
    sp.add_argument("--csv", default=None, help="write braid,p,c0..c(p-1) rows here")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_batch)

    sp = sub.add_parser("classify", help="counts of knot-theoretic flocks by order")
    sp.add_argument("--orders", required=True, help='e.g. "6,8,12" or "6-24"')
    sp.add_argument("--catalog", default=None)
    sp.add_argument("--csv", action="store_true")
    sp.add_argument("--no-validate", action="store_true", help="skip the pairwise isomorphism check")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("catalog", help="build or validate a group catalog")
    csub = sp.add_subparsers(dest="catalog_cmd", required=True)
    b = csub.add_parser("build")
    b.add_argument("--max-order", type=int, required=True)
    b.add_argument("--out", required=True)
    v = csub.add_parser("validate")
    v.add_argument("--catalog", default=None)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("cocycle", help="verify a cocycle or search for all of them")
    csub = sp.add_subparsers(dest="cocycle_cmd", required=True)
    v = csub.add_parser("verify")
    v.add_argument("--flock", required=True)
    v.add_argument("--cocycle", required=True)
    s = csub.add_parser("search")
    s.add_argument("--flock", required=True)
    s.add_argument("--modulus", type=int, required=True)
    s.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_cocycle)

    sp = sub.add_parser("homology", help="integral homology of a flock")
    sp.add_argument("--flock", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--normalized", action="store_true")
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("check", help="axiom report for a flock file")
    sp.add_argument("--flock", required=True)
    sp.add_argument("--max-order", type=int, default=None, help="allow n^5 scans above order 16")
    sp.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FlockError as exc:
        msg = f"error: {exc}"
        if exc.witness is not None:
            msg += f"\nwitness: {_witness(exc.witness)}"
        print(msg, file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
