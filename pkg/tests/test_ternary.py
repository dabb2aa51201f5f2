import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotflock.classification import flocks_isomorphic, load_catalog
from knotflock.errors import (FlockError, KNotCentralInvolution, NotExtraLoop, NotQuasigroup,
                              ReconstructionFailed)
from knotflock.groups import admissible_b, cyclic, dihedral, symmetric
from knotflock.loops import central_involutions, loop_from_table, loop_of_group, m_construction
from knotflock.ternary import (FlockSpec, TernaryTable, all_special, extra_loop_ternary, flock,
                               flock_from_group, is_associative, is_colorable, is_heap, is_idempotent,
                               is_para_associative, is_semi_commutative, is_ternary_quasigroup,
                               latin_cubes, recovery_equations_hold, retract_group, satisfies_LN,
                               satisfies_RN, skew, skew_identities, skew_law, skew_map)
from oracles import is_associative_table, latin_squares


def product_table(g):
    """[xyz] = x y z, associative but not a flock when g is nonabelian."""
    t = g.table
    return TernaryTable(t[t[:, :, None], np.arange(g.order)])


def test_small_values():
    z2 = flock(cyclic(2))
    assert all(z2(x, y, z) == (x - y + z) % 2 for x in range(2) for y in range(2) for z in range(2))
    assert z2(0, 0, 0) == 0
    z4 = flock(cyclic(4), 2)
    assert z4(0, 0, 0) == 2 != 0
    assert not is_idempotent(z4)


def test_paper_flock_sample_value(paper_flock, paper_group):
    # 1-based [1,2,3] is element 5, which is the inverse of element 2
    assert paper_flock(0, 1, 2) == 4
    assert paper_group.inverse[1] == 4


def test_quasigroup_checker():
    assert is_ternary_quasigroup(flock(symmetric(3)))
    const = TernaryTable(np.zeros((3, 3, 3), dtype=np.int64))
    assert not is_ternary_quasigroup(const)
    first = TernaryTable.from_function(3, lambda x, y, z: x)
    check = is_ternary_quasigroup(first)
    assert not check and check.witness[0] == 2


def test_associativity_variants():
    z4 = flock(cyclic(4), 2)
    assert is_associative(z4) and is_para_associative(z4)
    s3 = flock(symmetric(3))
    assert is_para_associative(s3)
    assert not is_associative(s3)
    prod = product_table(symmetric(3))
    assert is_associative(prod)
    check = is_para_associative(prod)
    assert not check
    a, b, c, d, e = check.witness
    v = prod.values
    assert v[v[a, b, c], d, e] != v[a, v[d, c, b], e] or v[v[a, b, c], d, e] != v[a, b, v[c, d, e]]


def test_quintuple_scan_limit():
    with pytest.raises(FlockError):
        is_para_associative(flock(cyclic(17)))
    assert is_para_associative(flock(cyclic(17)), max_order=17)


def test_nesting_conditions():
    assert satisfies_LN(flock(symmetric(3))) and satisfies_RN(flock(symmetric(3)))
    sum3 = TernaryTable.from_function(3, lambda x, y, z: (x + y + z) % 3)
    check = satisfies_LN(sum3)
    assert not check
    a, b, c, d = check.witness
    v = sum3.values
    assert v[a, b, v[b, c, d]] != v[a, v[a, b, c], v[v[a, b, c], c, d]]
    # over Z2, x+y+z = x-y+z is the heap F(Z2, e)
    assert satisfies_LN(TernaryTable.from_function(2, lambda x, y, z: (x + y + z) % 2))


def test_idempotent_heap_semicommutative():
    s3, z4 = symmetric(3), cyclic(4)
    assert is_idempotent(flock(s3)) and is_heap(flock(s3))
    assert not is_idempotent(flock(z4, 2)) and not is_heap(flock(z4, 2))
    assert is_semi_commutative(flock(z4, 2))
    assert not is_semi_commutative(flock(s3))


def test_skew_elements(paper_flock, paper_group):
    s3 = flock(symmetric(3))
    assert list(skew_map(s3)) == list(range(6))
    k = 2
    assert all(skew(paper_flock, a) == paper_group.mul(a, k) for a in range(12))
    s = skew_map(paper_flock)
    assert (s[s] == np.arange(12)).all()
    with pytest.raises(NotQuasigroup):
        skew(TernaryTable(np.zeros((2, 2, 2), dtype=np.int64)), 1)


def test_core_operation(paper_flock, paper_group):
    g, s = paper_group, skew_map(paper_flock)
    for x in range(12):
        for y in range(12):
            assert paper_flock(x, y, s[x]) == g.mul(x, g.inverse[y], x)


def test_recovery_equations():
    assert recovery_equations_hold(flock(dihedral(8), 2))
    third = TernaryTable.from_function(2, lambda x, y, z: z)
    assert not recovery_equations_hold(third)


def test_colorable_predicate():
    assert is_colorable(flock(symmetric(3)))
    loop = m_construction(dihedral(8))
    assert is_colorable(extra_loop_ternary(loop, central_involutions(loop)[0], 1))
    assert not is_colorable(TernaryTable(np.zeros((2, 2, 2), dtype=np.int64)))


def test_theorem_forward_on_catalog(catalog):
    for e in catalog.entries:
        for b in sorted(admissible_b(e.group)):
            t = flock_from_group(FlockSpec(e.group, b))
            assert is_ternary_quasigroup(t), e.id
            assert satisfies_LN(t) and satisfies_RN(t), e.id
            assert skew_law(t) and skew_identities(t) and all_special(t), e.id
            assert bool(is_heap(t)) == (b == e.group.identity)
            if e.group.order <= 12:
                assert is_para_associative(t), e.id


_LARGE = [(e.id, b) for e in load_catalog(validate=False).entries if e.group.order > 12
          for b in sorted(admissible_b(e.group))]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(_LARGE), st.lists(st.integers(0, 10 ** 6), min_size=5, max_size=5))
def test_para_associativity_sampled_above_12(catalog, case, raw):
    ident, b = case
    t = flock_from_group(FlockSpec(catalog[ident].group, b))
    a, b_, c, d, e = (x % t.order for x in raw)
    v = t.values
    assert v[v[a, b_, c], d, e] == v[a, v[d, c, b_], e] == v[a, b_, v[c, d, e]]


def test_exhaustive_search_order_le_3():
    counts = {}
    for n in (1, 2, 3):
        cubes = list(latin_cubes(n))
        flocks = [t for t in cubes if is_para_associative(t)]
        knot = [t for t in flocks if satisfies_LN(t) and satisfies_RN(t)]
        counts[n] = (len(cubes), len(flocks), len(knot))
        for t in knot:
            spec = retract_group(t)
            assert flock_from_group(spec) == t
        # quasigroup + para-associative + skew law forces both nesting conditions
        for t in flocks:
            if skew_law(t):
                assert satisfies_LN(t) and satisfies_RN(t)
    assert counts == {1: (1, 1, 1), 2: (2, 2, 2), 3: (24, 4, 1)}


def test_retract_round_trip_and_base_points(catalog):
    for ident in ("D8", "Q8", "A4"):
        g = catalog[ident].group
        for b in sorted(admissible_b(g)):
            t = flock_from_group(FlockSpec(g, b))
            s1, s2 = retract_group(t, g.identity), retract_group(t, g.order - 1)
            assert flock_from_group(s1) == t
            assert flocks_isomorphic(s1, s2)
            assert flocks_isomorphic(s1, FlockSpec(g, b))


def test_retract_rejects_non_flocks():
    with pytest.raises(ReconstructionFailed):
        retract_group(product_table(symmetric(3)))


def test_extra_loop_ternary_on_a_group_is_the_flock():
    g = dihedral(8)
    for variant in (1, 2):
        assert extra_loop_ternary(loop_of_group(g), g.identity, variant) == flock(g)


def test_extra_loop_variants_differ():
    loop = m_construction(dihedral(8))
    k = central_involutions(loop)[0]
    t1, t2 = extra_loop_ternary(loop, k, 1), extra_loop_ternary(loop, k, 2)
    assert (t1.values != t2.values).any()
    for t in (t1, t2):
        assert satisfies_LN(t) and satisfies_RN(t) and recovery_equations_hold(t)


def test_extra_loop_ternary_errors():
    loop = m_construction(dihedral(8))
    noncentral = next(x for x in range(16) if x not in central_involutions(loop) and x != loop.identity)
    with pytest.raises(KNotCentralInvolution):
        extra_loop_ternary(loop, noncentral, 1)
    bad = next(s for s in latin_squares(5, identity_first=True) if not is_associative_table(s.tolist()))
    with pytest.raises(NotExtraLoop):
        extra_loop_ternary(loop_from_table(bad, base=0), 0, 1)
    with pytest.raises(FlockError):
        extra_loop_ternary(loop, central_involutions(loop)[0], 3)
