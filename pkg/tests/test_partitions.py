"""Downward-closed partition enumeration against a brute-force oracle."""

import itertools

import pytest

from dt4calc.errors import BoundExceeded
from dt4calc.exact import Laurent
from dt4calc.partitions import (DEFAULT_BOUNDS, DPartition, ENV_BOUND_VAR,
                                MonomialIdeal, count_partitions,
                                enumerate_partitions, is_downward_closed,
                                size_bound)


def brute_force_sets(d, n):
    """All downward-closed n-subsets of the grid, by exhaustion over a box
    large enough to contain any of them.  Completely independent of the
    growth-based enumerator."""
    cells = [c for c in itertools.product(range(n if n else 1), repeat=d)
             if sum(c) < n or n == 0]
    out = set()
    for combo in itertools.combinations(cells, n):
        chosen = set(combo)
        ok = all(
            all(tuple(x - (1 if i == j else 0) for i, x in enumerate(c)) in chosen
                for j in range(d) if c[j] > 0)
            for c in chosen)
        if ok:
            out.add(tuple(sorted(combo)))
    return out


@pytest.mark.parametrize("d,n", [(d, n) for d in (2, 3, 4) for n in range(5)])
def test_enumeration_matches_brute_force(d, n):
    got = {pi.boxes for pi in enumerate_partitions(d, n)}
    assert got == brute_force_sets(d, n)


def test_counts_frozen_small_tables():
    assert [count_partitions(2, n) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert [count_partitions(3, n) for n in range(6)] == [1, 1, 3, 6, 13, 24]
    assert [count_partitions(4, n) for n in range(5)] == [1, 1, 4, 10, 26]


def test_two_row_counts_match_the_recurrence_far_past_enumeration():
    # d = 2 counts come from a parts recurrence; spot check deep values
    assert count_partitions(2, 50) == 204226
    assert count_partitions(2, 60) == 966467


def test_count_agrees_with_enumeration_length():
    for d in (3, 4):
        for n in range(6 if d == 3 else 5):
            assert count_partitions(d, n) == len(enumerate_partitions(d, n))


def test_enumeration_is_sorted_and_valid():
    for n in range(5):
        seen = []
        for pi in enumerate_partitions(4, n):
            assert pi.size == n
            assert is_downward_closed(pi.boxes, 4)
            seen.append(pi.id())
        assert seen == sorted(seen)
        assert len(set(seen)) == len(seen)


def test_identifier_round_trip():
    for pi in enumerate_partitions(4, 3):
        token = pi.id()
        if token == "empty":
            boxes = ()
        else:
            boxes = tuple(tuple(int(x) for x in part.split(","))
                          for part in token.split(";"))
        assert boxes == pi.boxes


def test_character_counts_boxes():
    for pi in enumerate_partitions(3, 4):
        ch = pi.character()
        assert ch.coeff_sum() == 4
        assert ch.is_effective_integral()
        for box, _ in ch.items_sorted():
            assert len(box) == 4 and box[3] == 0


def test_addable_and_removable_boxes():
    pi = DPartition(4, [(0, 0, 0, 0)])
    assert len(pi.addable_boxes()) == 4
    assert pi.removable_boxes() == [(0, 0, 0, 0)]
    grown = pi.with_box((1, 0, 0, 0))
    assert grown.size == 2
    assert (1, 0, 0, 0) in grown.removable_boxes()


def test_relabeling_permutes_axes():
    pi = DPartition(4, [(0, 0, 0, 0), (1, 0, 0, 0)])
    swapped = pi.relabeled((1, 0, 2, 3))
    assert swapped.boxes == ((0, 0, 0, 0), (0, 1, 0, 0))


def test_ideal_round_trip():
    for pi in enumerate_partitions(4, 4):
        assert pi.to_ideal().to_partition().boxes == pi.boxes


def test_monomial_ideal_validation():
    with pytest.raises(ValueError):
        MonomialIdeal(2, [(1, 0), (2, 0)])  # second generator is redundant
    with pytest.raises(ValueError):
        MonomialIdeal(2, [(1, -1)])
    with pytest.raises(ValueError):
        MonomialIdeal(2, [(1, 0)]).staircase()  # infinite in the y direction


def test_embedding_into_four_variables():
    ideal = DPartition(3, [(0, 0, 0)]).to_ideal().embed_in_four()
    assert ideal.nvars == 4
    assert DPartition(4, ideal.staircase()).size == 1
    unit = MonomialIdeal(3, [(0, 0, 0)]).embed_in_four()
    assert unit.staircase() == ()


def test_size_bound_and_env_override(monkeypatch):
    monkeypatch.delenv(ENV_BOUND_VAR, raising=False)
    assert size_bound(4) == DEFAULT_BOUNDS[4]
    with pytest.raises(BoundExceeded):
        enumerate_partitions(4, DEFAULT_BOUNDS[4] + 1)
    with pytest.raises(BoundExceeded):
        count_partitions(3, DEFAULT_BOUNDS[3] + 1)
    monkeypatch.setenv(ENV_BOUND_VAR, "9")
    assert size_bound(4) == 9
    assert size_bound(3) == DEFAULT_BOUNDS[3]  # override is d = 4 only
    assert count_partitions(4, 9) == 1464
