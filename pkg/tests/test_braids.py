import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotflock.braids import ABOVE, BELOW, LEFT, RIGHT, close_braid, crossing_records, parse_braid
from knotflock.errors import EmptyTokens, FlockError, LetterOutOfRange


def test_parsing():
    w = parse_braid("1 1")
    assert w.strands == 2 and w.letters == (1, 1)
    empty = parse_braid("strands=2")
    assert empty.strands == 2 and empty.letters == ()
    assert parse_braid("1 -3").strands == 4
    assert parse_braid("1", strands=5).strands == 5


def test_parse_errors():
    with pytest.raises(EmptyTokens):
        parse_braid("   ")
    with pytest.raises(LetterOutOfRange):
        parse_braid("strands=2 2")
    with pytest.raises(LetterOutOfRange):
        parse_braid("0 1")
    with pytest.raises(FlockError):
        parse_braid("1 x")


def test_empty_braid_regions():
    for n in (1, 2, 3, 5):
        d = close_braid(parse_braid(f"strands={n}"))
        assert d.num_regions == n + 1
        assert not d.crossings
        assert d.component_count == n


def test_hopf_link_regions():
    d = close_braid(parse_braid("1 1"))
    assert d.num_regions == 4 and len(d.crossings) == 2
    assert d.component_count == 2
    a, b = (cr.around for cr in d.crossings)
    assert len(set(a)) == 4 and len(set(b)) == 4
    # as sets the crossings share all four regions; positionally left and right agree
    assert set(a) == set(b)
    assert (a[LEFT], a[RIGHT]) == (b[LEFT], b[RIGHT])
    assert (a[ABOVE], a[BELOW]) == (b[BELOW], b[ABOVE])
    assert d.crossings[0].sign == d.crossings[1].sign == 1


def test_trefoil_components_and_euler():
    d = close_braid(parse_braid("1 1 1"))
    assert d.component_count == 1
    assert d.num_regions == 5


@given(st.integers(2, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, n - 1).flatmap(
        lambda g: st.sampled_from([g, -g])), min_size=1, max_size=10))))
def test_region_count_matches_euler_relation(case):
    n, letters = case
    d = close_braid(parse_braid(" ".join(map(str, letters)), strands=n))
    used = {abs(g) for g in letters}
    # every used gap contributes one bounded face per crossing; unused gaps stay a single region
    assert d.num_regions == len(letters) + (n + 1 - len(used))
    assert d.euler_characteristic() == d.num_regions - len(letters)
    if used == set(range(1, n)):
        # a connected diagram on the sphere: V - E + F = 2 with E = 2V
        assert d.num_regions == len(letters) + 2


def test_mirror_flips_signs():
    d = close_braid(parse_braid("1 1"))
    m = close_braid(parse_braid("1 1").mirror())
    assert [cr.sign for cr in m.crossings] == [-cr.sign for cr in d.crossings]
    assert str(parse_braid("1 -2 3").mirror()) == "-1 2 -3"


def test_roles_use_the_side_regions():
    d = close_braid(parse_braid("1 -2 1 2 -1"))
    for cr in crossing_records(d):
        r_s, r_m, r_t = cr.roles
        assert r_s == cr.around[RIGHT] and r_t == cr.around[LEFT]
        # r_m is one of the two regions off the strand sides, never the source's opposite
        assert r_m in (cr.around[ABOVE], cr.around[BELOW])
        assert r_m == (cr.around[BELOW] if cr.sign > 0 else cr.around[ABOVE])


def test_dump_format():
    d = close_braid(parse_braid("1 1"))
    lines = d.dump().splitlines()
    assert len(lines) == 2
    fields = [int(x) for x in lines[0].split()]
    assert len(fields) == 8 and fields[0] == 1
    assert all(1 <= r <= d.num_regions for r in fields[1:])
    assert d.unbounded_region == 0


def test_rotation_is_cyclic():
    w = parse_braid("1 1 -2 1 -2")
    assert w.rotate(1).letters == (1, -2, 1, -2, 1)
    assert w.rotate(5) == w
