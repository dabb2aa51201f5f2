import numpy as np
import pytest

from knotflock.errors import InvalidFile, InvalidGroupFile
from knotflock.fileio import (format_cochain, format_group, format_ternary, parse_cochain, parse_flock,
                              parse_group, read_braid_list, read_cochain, write_cochain, write_group,
                              read_group)
from knotflock.groups import dihedral
from knotflock.homology import CochainTable
from knotflock.ternary import flock


def test_group_round_trip(tmp_path):
    g = dihedral(8)
    write_group(g, tmp_path / "d8.group")
    h = read_group(tmp_path / "d8.group")
    assert (h.table == g.table).all()
    assert parse_group(format_group(g, with_labels=False)).order == 8


def test_group_file_errors():
    with pytest.raises(InvalidGroupFile):
        parse_group("")
    with pytest.raises(InvalidGroupFile):
        parse_group("grp\norder 2\n1 2\n2 1\n")
    with pytest.raises(InvalidGroupFile):
        parse_group("group\norder 2\n1 2\n")
    with pytest.raises(InvalidGroupFile):
        parse_group("group\norder 2\n1 2\n2 1\nlabels\ne\n")


def test_compact_digit_rows():
    g = parse_group("group\norder 3\n# a comment\n123\n231\n312\n")
    assert g.order == 3 and g.is_abelian


def test_flock_with_inline_table():
    t = parse_flock("flock\norder 2\nb 2\ntable\n1 2\n2 1\n")
    assert t.group_spec.b == 1
    assert t(0, 0, 0) == 1


def test_flock_ternary_section_round_trip():
    t = flock(dihedral(8), 2)
    back = parse_flock(format_ternary(t))
    assert back == t and back.group_spec is None


def test_flock_errors(tmp_path):
    with pytest.raises(InvalidFile):
        parse_flock("flok\norder 2\n")
    with pytest.raises(InvalidFile):
        parse_flock("flock\norder 2\nb 1\nsomething\n")
    with pytest.raises(InvalidFile):
        parse_flock("flock\norder 2\nternary\n1 2\n")
    (tmp_path / "z2.group").write_text("group\norder 2\n1 2\n2 1\n")
    (tmp_path / "f.flock").write_text("flock\norder 3\nb 1\ngroup z2.group\n")
    from knotflock.fileio import read_flock
    with pytest.raises(InvalidFile):
        read_flock(tmp_path / "f.flock")


def test_cochain_round_trip(tmp_path, phi):
    write_cochain(phi, tmp_path / "phi.cocycle")
    assert read_cochain(tmp_path / "phi.cocycle") == phi
    rng = np.random.default_rng(0)
    two = CochainTable(rng.integers(0, 13, size=(3, 3, 3, 3)), 13)
    assert parse_cochain(format_cochain(two)) == two


def test_cochain_errors():
    with pytest.raises(InvalidFile):
        parse_cochain("cocycle3\norder 2\nmodulus 3\n")
    with pytest.raises(InvalidFile):
        parse_cochain("cocycle1\norder 2\nmodulus 3\n01\n")


def test_braid_list(tmp_path, data_dir):
    rows = read_braid_list(data_dir / "table2.txt")
    assert len(rows) == 48
    assert rows[0] == ("1 1", "480 + 264t + 120t^2")
    (tmp_path / "b.txt").write_text("# words\n1 1\n1 -2 1 -2 | 3\n")
    assert read_braid_list(tmp_path / "b.txt") == [("1 1", ""), ("1 -2 1 -2", "3")]
