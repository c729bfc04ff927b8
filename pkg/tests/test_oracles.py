import pytest

from ppmoments import (
    LatticePath,
    Marking,
    MomentPolynomial,
    Partition,
    RookPlacement,
    UnbalancedPath,
    catalan_number,
    count_markings,
    count_rook_placements,
    enum_paths,
    iter_paths,
    iter_rook_placements,
    marking_counts,
    moment_polynomial,
    partitions_of,
    path_to_partition,
    rook_counts,
    rook_polynomial,
    staircase_partitions,
    word_moment,
)
from ppmoments.oracles import _rook_counts_exhaustive, _rook_counts_transfer

from helpers import brute_marking_count

P = LatticePath.from_string


def test_partition_validation():
    assert Partition((3, 1, 0)).parts == (3, 1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    assert Partition(()).size == 0
    assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))
    assert Partition((2, 1)).fits_staircase(3)
    assert not Partition((3,)).fits_staircase(3)


def test_partition_corner_contents():
    assert Partition(()).addable_contents() == [0]
    assert Partition(()).removable_contents() == []
    lam = Partition((2, 1))
    assert lam.addable_contents() == [2, 0, -2]
    assert lam.removable_contents() == [1, -1]


def test_partitions_of_counts():
    assert [sum(1 for _ in partitions_of(m)) for m in range(8)] == \
        [1, 1, 2, 3, 5, 7, 11, 15]


def test_lattice_path_validation():
    assert P("UUDD").steps == (1, 1, -1, -1)
    with pytest.raises(ValueError):
        LatticePath((1, -1, -1))
    with pytest.raises(ValueError):
        LatticePath((2,))
    assert P("UUD").end_height == 1
    assert P("UDUD").heights() == [0, 1, 0, 1, 0]


def test_enum_paths_examples():
    assert enum_paths(0, 3, 3) == 1
    assert enum_paths(4, 0, 0) == 2
    assert enum_paths(2, 1, 1) == 2
    with pytest.raises(ValueError):
        enum_paths(-1, 0, 0)


def test_enum_paths_catalan_row():
    for k in range(9):
        assert enum_paths(2 * k, 0, 0) == catalan_number(k)


def test_odd_length_balanced_paths_vanish():
    for length in (1, 3, 5, 7):
        assert enum_paths(length, 0, 0) == 0
        assert list(iter_paths(length)) == []


def test_iter_paths_agrees_with_enum():
    for length in range(7):
        for start in range(3):
            for end in range(4):
                assert sum(1 for _ in iter_paths(length, start, end)) == \
                    enum_paths(length, start, end)


def test_path_to_partition_examples():
    assert path_to_partition(P("UUDD")) == Partition(())
    assert path_to_partition(P("UDUD")) == Partition((1,))
    assert path_to_partition(P("UDUDUD")) == Partition((2, 1))
    with pytest.raises(UnbalancedPath):
        path_to_partition(P("UUD"))


def test_path_to_partition_lands_in_staircase():
    for k in (2, 3, 4):
        seen = set()
        for steps in iter_paths(2 * k):
            lam = path_to_partition(LatticePath(steps))
            assert lam.fits_staircase(k)
            seen.add(lam)
        assert len(seen) == catalan_number(k)


def test_marking_validation():
    p = P("UDUD")
    m = Marking(p, [(1, 2)])
    assert len(m) == 1
    with pytest.raises(ValueError):
        Marking(p, [(2, 1)])  # down index is an up step
    with pytest.raises(ValueError):
        Marking(p, [(3, 2)])  # up step before the down step
    with pytest.raises(ValueError):
        Marking(p, [(1, 2), (3, 2)])  # reused up step


def test_count_markings_examples():
    assert count_markings(P("UUDD"), 0) == 1
    assert count_markings(P("UUDD"), 1) == 0
    assert count_markings(P("UDUD"), 1) == 1
    with pytest.raises(UnbalancedPath):
        count_markings(P("UU"), 0)


def test_count_markings_brute_force_agreement():
    for k in (1, 2, 3, 4):
        for steps in iter_paths(2 * k):
            p = LatticePath(steps)
            tallies = marking_counts(p)
            for g in range(k + 1):
                assert tallies.get(g, 0) == brute_marking_count(p, g)


def test_rook_placement_validation():
    lam = Partition((2, 1))
    assert len(RookPlacement(lam, [(1, 2), (2, 1)])) == 2
    with pytest.raises(ValueError):
        RookPlacement(lam, [(2, 2)])  # outside the diagram
    with pytest.raises(ValueError):
        RookPlacement(lam, [(1, 1), (1, 2)])  # shared row
    with pytest.raises(ValueError):
        RookPlacement(lam, [(1, 1), (2, 1)])  # shared column


def test_rook_polynomial_against_enumeration():
    for lam in (Partition(()), Partition((1,)), Partition((2, 1)),
                Partition((3, 2, 1)), Partition((4, 2, 1)), Partition((2, 2))):
        poly = rook_polynomial(lam)
        for g in range(len(poly) + 1):
            explicit = sum(1 for _ in iter_rook_placements(lam, g))
            assert count_rook_placements(lam, g) == explicit
            if g < len(poly):
                assert poly[g] == explicit


def test_staircase_partition_counts():
    for k in range(1, 8):
        shapes = list(staircase_partitions(k))
        assert len(shapes) == catalan_number(k)
        assert all(s.fits_staircase(k) for s in shapes)


def test_rook_counts_examples():
    assert rook_counts(2, 1) == 1
    assert rook_counts(2, 0) == 2
    assert rook_counts(3, 2) == 1
    assert rook_counts(1, 1) == 0
    with pytest.raises(ValueError):
        rook_counts(0, 0)


def test_rook_counts_leading_is_catalan():
    for k in range(1, 10):
        assert rook_counts(k, 0) == catalan_number(k)


def test_rook_count_strategies_agree_on_overlap():
    for k in range(1, 10):
        a = _rook_counts_exhaustive(k)
        b = _rook_counts_transfer(k)
        assert list(a) + [0] * (len(b) - len(a)) == \
            list(b) + [0] * (len(a) - len(b))


def test_marking_rook_bijection_per_path():
    for k in (2, 3, 4, 5):
        totals = {}
        for steps in iter_paths(2 * k):
            p = LatticePath(steps)
            lam = path_to_partition(p)
            for g in range(k):
                assert count_markings(p, g) == count_rook_placements(lam, g)
            for g, n in marking_counts(p).items():
                totals[g] = totals.get(g, 0) + n
        for g, n in totals.items():
            assert n == rook_counts(k, g)


def test_moment_polynomial_small_values():
    assert moment_polynomial(1).counts == {0: 1}
    assert moment_polynomial(2).counts == {0: 2, 1: 1}
    assert moment_polynomial(3).counts == {0: 5, 1: 8, 2: 1}
    with pytest.raises(ValueError):
        moment_polynomial(0)


def test_moment_polynomial_invariants():
    for k in range(1, 9):
        mp = moment_polynomial(k)
        assert mp.counts[0] == catalan_number(k)
        top = max(mp.counts)
        assert top <= max(k - 1, 0) or k == 1
        assert rook_counts(k, k) == 0


def test_moment_polynomial_evaluate():
    from fractions import Fraction
    assert moment_polynomial(2).evaluate(2) == Fraction(5, 2)
    assert moment_polynomial(3).evaluate(2) == Fraction(37, 4)


def test_moment_polynomial_serialization():
    assert moment_polynomial(2).to_json() == {"k": 2, "counts": {"0": 2, "1": 1}}
    mp = MomentPolynomial(3, {0: 5, 1: 0})
    assert mp.counts == {0: 5}


def test_word_moment_small_values():
    assert word_moment(1).counts == {0: 1}
    assert word_moment(2).counts == {0: 2, 1: 1}
    assert word_moment(3).counts == {0: 5, 1: 8, 2: 1}


def test_word_moment_matches_rook_route():
    for k in range(1, 7):
        assert word_moment(k).counts == moment_polynomial(k).counts
