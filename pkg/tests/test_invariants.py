import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotflock.braids import close_braid, parse_braid
from knotflock.colorings import conjugation_action, enumerate_colorings
from knotflock.errors import ArityMismatch, FlockError
from knotflock.homology import Chain, CochainTable, boundary_of_chain, coboundary
from knotflock.invariants import (BatchReport, BatchRow, InvariantPolynomial, batch_table2,
                                  coloring_cycle, cocycle_invariant, cycle_values, evaluate_cocycle,
                                  invariant_from_values, parse_polynomial, parse_refined,
                                  refined_invariant)


def diagram(word):
    return close_braid(parse_braid(word))


def test_cycles_of_simple_diagrams(paper_flock, phi):
    d = diagram("strands=2")
    cs = enumerate_colorings(d, paper_flock)
    assert all(coloring_cycle(d, c).is_zero() for c in cs.colors[:20])
    d = diagram("1 -1")
    cs = enumerate_colorings(d, paper_flock)
    assert not np.any(cycle_values(cs, phi))
    assert all(evaluate_cocycle(phi, coloring_cycle(d, c)) == 0 for c in cs.colors[::17])


@pytest.mark.parametrize("word", ["1 1", "1 1 -2 1 -2", "1 1 1 2 1 1 2"])
def test_coloring_cycles_are_cycles(paper_flock, word):
    d = diagram(word)
    spec = paper_flock.group_spec
    for c in enumerate_colorings(d, paper_flock).colors:
        assert boundary_of_chain(spec, coloring_cycle(d, c)).is_zero()


def test_vectorized_values_match_chain_evaluation(paper_flock, phi):
    d = diagram("1 1 1 2 -1 -1 2")
    cs = enumerate_colorings(d, paper_flock)
    vals = cycle_values(cs, phi)
    for k in range(0, len(cs), 23):
        assert vals[k] == evaluate_cocycle(phi, coloring_cycle(d, cs.colors[k]))


def test_evaluation_of_zeros(phi):
    assert evaluate_cocycle(phi, Chain(1)) == 0
    zero = CochainTable.zeros(12, 3, 3)
    assert evaluate_cocycle(zero, Chain(1, {(0, 1, 2): 5, (3, 3, 3): -1})) == 0


def test_cohomologous_cocycles_agree_on_cycles(paper_flock, phi):
    rng = np.random.default_rng(2)
    g = CochainTable(rng.integers(0, 3, size=(12, 12)), 3)
    shifted = CochainTable(phi.values + coboundary(paper_flock.group_spec, g).values, 3)
    assert (shifted.values != phi.values).any()
    cs = enumerate_colorings(diagram("1 1"), paper_flock)
    assert (cycle_values(cs, shifted) == cycle_values(cs, phi)).all()


@pytest.mark.parametrize("word, expected", [("strands=2", "1728"), ("1 1", "480 + 264t + 120t^2"),
                                            ("1 1 1 1 1 1", "1152")])
def test_invariant_examples(paper_flock, phi, word, expected):
    poly = cocycle_invariant(diagram(word), paper_flock, phi)
    assert str(poly) == expected
    assert poly.total == len(enumerate_colorings(diagram(word), paper_flock))


def test_invariant_of_moves(paper_flock, phi):
    def psi(w):
        return cocycle_invariant(diagram(w), paper_flock, phi)

    assert psi("1 1") == psi("1 1 2") == psi("-2 1 1")
    assert psi("1 -1") == psi("strands=2")
    word = parse_braid("1 1 -2 1 -2")
    base = psi(str(word))
    for k in range(1, 5):
        assert psi(str(word.rotate(k))) == base


def test_refined_invariant_with_trivial_action(paper_flock, phi):
    d = diagram("1 1 1 1")
    refined = refined_invariant(d, paper_flock, phi, conjugation_action(paper_flock, [0]))
    assert refined.expand() == cocycle_invariant(d, paper_flock, phi)
    assert refined.orbit_sizes() == {1: 1440}


def test_refined_invariant_expands_to_psi(paper_flock, phi):
    for word in ("1 1 1 2 1 1 2", "1 1 -2 1 -2"):
        d = diagram(word)
        for sub in ([3], [1], [3, 1]):
            refined = refined_invariant(d, paper_flock, phi, conjugation_action(paper_flock, sub))
            assert refined.expand() == cocycle_invariant(d, paper_flock, phi)


def test_refined_display_round_trip(paper_flock, phi):
    d = diagram("1 1 1 1 1 1 2 -1 2")
    refined = refined_invariant(d, paper_flock, phi, conjugation_action(paper_flock, [3]))
    assert str(refined) == "{132[1], 212[3], 24[t], 80[3t], 60[t^2], 116[3t^2]}"
    assert parse_refined(str(refined), 3) == refined


def test_polynomial_format_and_parse():
    p = InvariantPolynomial(3, (480, 264, 120))
    assert str(p) == "480 + 264t + 120t^2"
    assert parse_polynomial("480+264t+120t²", 3) == p
    assert str(InvariantPolynomial(3, (0, 1, 0))) == "t"
    assert str(InvariantPolynomial(3, (0, 0, 0))) == "0"
    assert parse_polynomial("t^2", 3).coefficients == (0, 0, 1)
    with pytest.raises(FlockError):
        parse_polynomial("5t^3", 3)
    with pytest.raises(FlockError):
        parse_polynomial("5x", 3)


@given(st.lists(st.integers(0, 4), min_size=0, max_size=60))
def test_histogram_round_trip(values):
    poly = invariant_from_values(np.array(values, dtype=np.int64), 5)
    assert poly.total == len(values)
    if values:
        assert parse_polynomial(str(poly), 5) == poly
    else:
        assert str(poly) == "0"


def test_invariant_rejects_bad_cochains(paper_flock, phi):
    d = diagram("1 1")
    vals = np.array(phi.values)
    vals[0, 0, 1] = (vals[0, 0, 1] + 1) % 3
    with pytest.raises(FlockError) as info:
        cocycle_invariant(d, paper_flock, CochainTable(vals, 3))
    assert info.value.witness is not None
    cs = enumerate_colorings(d, paper_flock)
    with pytest.raises(ArityMismatch):
        cycle_values(cs, CochainTable.zeros(12, 4, 3))
    with pytest.raises(ArityMismatch):
        cocycle_invariant(d, paper_flock, CochainTable.zeros(6, 3, 3))


def test_batch_report(paper_flock, phi):
    braids = [("1 1", "480 + 264t + 120t^2"), ("1 1 1 1 1 1", "1000"), "1 -1"]
    report = batch_table2(braids, paper_flock, phi)
    assert [r.matches for r in report.rows] == [True, False, None]
    assert report.distinct_polynomials == 3
    assert report.distinct_counts == 3
    assert [r.word for r in report.mismatches] == ["1 1 1 1 1 1"]
    lines = report.to_csv().splitlines()
    assert lines[0] == "braid,p,c0,c1,c2"
    assert lines[1] == "1 1,3,480,264,120"
    assert "rows matching the expected value: 1/2" in report.summary()


def test_batch_workers_agree(paper_flock, phi):
    words = ["1 1", "1 1 1 1", "1 -2 1 -2", "1 1 1"]
    one = batch_table2(words, paper_flock, phi, workers=1)
    two = batch_table2(words, paper_flock, phi, workers=2)
    assert [r.polynomial for r in one.rows] == [r.polynomial for r in two.rows]
    assert isinstance(one, BatchReport) and isinstance(one.rows[0], BatchRow)
