import itertools
import logging
import shutil

import pytest

from knotflock.classification import (count_table, enumerate_flocks, flock_classes, flocks_isomorphic,
                                      format_count_table, load_catalog, validate_catalog)
from knotflock.errors import CoverageIncomplete, DuplicateIsomorphismClass
from knotflock.groups import admissible_b, dicyclic, dihedral
from knotflock.ternary import FlockSpec, flock_from_group
from oracles import ternary_isomorphic


def test_order_8_has_two_nonabelian_entries(catalog):
    assert sorted(e.id for e in catalog.of_order(8) if not e.abelian) == ["D8", "Q8"]


def test_catalog_has_no_duplicates(catalog):
    assert not validate_catalog(catalog).duplicates


def test_duplicate_entries_raise(tmp_path, data_dir):
    src = data_dir / "catalog" / "8_D8.group"
    shutil.copy(src, tmp_path / "8_D8.group")
    shutil.copy(src, tmp_path / "8_D8copy.group")
    with pytest.raises(DuplicateIsomorphismClass):
        load_catalog(tmp_path)


def test_empty_directory_warns(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        cat = load_catalog(tmp_path)
    assert cat.entries == []
    assert "no group files" in caplog.text


@pytest.mark.parametrize("order, classes, idempotent", [(6, 1, 1), (8, 4, 2), (12, 5, 3)])
def test_enumerate_flocks_small_orders(catalog, order, classes, idempotent):
    found = enumerate_flocks(catalog, order)
    assert len(found) == classes
    assert sum(c.idempotent for c in found) == idempotent


def test_enumeration_is_stable(catalog):
    a = [(c.group_id, c.representative, c.orbit) for c in enumerate_flocks(catalog, 16)]
    b = [(c.group_id, c.representative, c.orbit) for c in enumerate_flocks(catalog, 16)]
    assert a == b


@pytest.mark.parametrize("order, expected", [(16, (23, 9)), (10, (1, 1)), (21, (1, 1))])
def test_count_table_examples(catalog, order, expected):
    (row,) = count_table(catalog, [order])
    assert (row.all, row.idempotent) == expected


def test_idempotent_count_equals_nonabelian_groups(catalog):
    for n in range(1, 32):
        (row,) = count_table(catalog, [n])
        assert row.idempotent == sum(1 for e in catalog.of_order(n) if not e.abelian)
        if n % 2:
            assert row.all == row.idempotent


def test_zero_rows_and_coverage(catalog):
    rows = count_table(catalog, [7, 9])
    assert [(r.all, r.idempotent) for r in rows] == [(0, 0), (0, 0)]
    with pytest.raises(CoverageIncomplete):
        count_table(catalog, [32])


def test_count_table_formats(catalog):
    rows = count_table(catalog, [6, 8])
    assert format_count_table(rows, csv=True) == "order,all,idempotent\n6,1,1\n8,4,2\n"
    text = format_count_table(rows).splitlines()
    assert text[0].split() == ["n", "6", "8"]
    assert text[1].split() == ["all", "1", "4"]
    assert text[2].split() == ["idempotent", "1", "2"]


def test_flocks_isomorphic_examples():
    d8, q8 = dihedral(8), dicyclic(8)
    r2 = next(b for b in admissible_b(d8) if b != d8.identity)
    minus_one = next(b for b in admissible_b(q8) if b != q8.identity)
    assert flocks_isomorphic(FlockSpec(d8, r2), FlockSpec(d8, r2))
    assert not flocks_isomorphic(FlockSpec(d8, d8.identity), FlockSpec(d8, r2))
    assert not flocks_isomorphic(FlockSpec(d8, r2), FlockSpec(q8, minus_one))


def test_flocks_isomorphic_matches_brute_force(catalog):
    specs = [FlockSpec(e.group, b) for e in catalog.entries if e.group.order <= 8
             for b in sorted(admissible_b(e.group))]
    tables = [flock_from_group(s).values for s in specs]
    for (i, s1), (j, s2) in itertools.combinations_with_replacement(enumerate(specs), 2):
        if s1.order != s2.order:
            continue
        assert flocks_isomorphic(s1, s2) == ternary_isomorphic(tables[i], tables[j]), (s1, s2)


def test_flock_classes_partition_admissible_elements(catalog):
    for e in catalog.entries:
        classes = flock_classes(e.group, e.id)
        members = sorted(x for c in classes for x in c.orbit)
        assert members == sorted(admissible_b(e.group))
        assert classes[0].representative == e.group.identity
