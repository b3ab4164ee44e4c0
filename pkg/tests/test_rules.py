import itertools

import numpy as np
import pytest

import oracle
from yinyang.grid import BLACK, EMPTY, WHITE, Color, Coloring, DimensionError, PartialColoring, Puzzle, parse_puzzle
from yinyang.rules import (
    PropagationStatus,
    Variant,
    check_connectivity,
    check_diagonal_lemma,
    check_no_mono_2x2,
    check_tree_partition,
    connectivity_feasible,
    propagate,
    verify,
)

B, W, U = BLACK, WHITE, EMPTY


def col(rows):
    return Coloring([[{"B": B, "W": W}[ch] for ch in r] for r in rows])


def test_variant_parse():
    assert Variant.parse("YinYang") is Variant.YIN_YANG
    assert Variant.parse("connected") is Variant.CONNECTED_ONLY
    assert Variant.parse("tree_partition") is Variant.TREE_PARTITION
    with pytest.raises(ValueError):
        Variant.parse("hex")


def test_connectivity_examples():
    assert not check_connectivity(col(["BWB"]), Color.BLACK)
    all_black = col(["BB", "BB"])
    assert check_connectivity(all_black, Color.BLACK)
    assert check_connectivity(all_black, Color.WHITE)  # empty class counts as connected
    checker = col(["BWB", "WBW", "BWB"])
    assert not check_connectivity(checker, Color.BLACK)


def test_mono_square_examples():
    assert not check_no_mono_2x2(col(["BB", "BB"]))
    assert check_no_mono_2x2(col(["BB", "WW"]))
    assert check_no_mono_2x2(col(["BWBBW"]))


def test_diagonal_lemma_examples():
    assert not check_diagonal_lemma(col(["BW", "WB"]))
    assert not check_diagonal_lemma(col(["WB", "BW"]))
    assert check_diagonal_lemma(col(["BB", "WB"]))
    assert check_diagonal_lemma(col(["WW", "WW"]))


def test_tree_partition_examples():
    assert not check_tree_partition(col(["BB", "BB"]))
    assert check_tree_partition(col(["BB", "WW"]))
    ring = col(["BBB", "BWB", "BBB"])
    assert not check_tree_partition(ring)


def test_verify_examples():
    p = Puzzle.empty(2, 2)
    c = col(["BB", "BB"])
    assert verify(p, c, Variant.CONNECTED_ONLY).valid
    rep = verify(p, c, Variant.YIN_YANG)
    assert not rep.valid
    assert [(v.kind, v.row, v.col) for v in rep.violations] == [("mono_square", 0, 0)]
    clue = parse_puzzle("B.\n")
    for v in Variant:
        rep = verify(clue, col(["WB"]), v)
        assert "clue_violated" in rep.kinds()
        assert any((x.row, x.col) == (0, 0) for x in rep.violations if x.kind == "clue_violated")
    with pytest.raises(DimensionError):
        verify(p, col(["BW"]), Variant.YIN_YANG)


def test_verify_tree_reports_cycle():
    rep = verify(Puzzle.empty(3, 3), col(["BBB", "BWB", "BBB"]), Variant.TREE_PARTITION)
    assert "induced_cycle" in rep.kinds()


def _shapes(limit):
    return [(r, c) for r in range(1, limit + 1) for c in range(1, limit + 1) if r * c <= limit]


def test_verify_matches_oracle_exhaustively():
    # every board up to 12 cells, all three variants
    for r, c in _shapes(12):
        boards = oracle.all_colorings(r, c)
        p = Puzzle.empty(r, c)
        for variant in Variant:
            want = oracle.valid_mask(boards, variant.value)
            got = np.array([verify(p, Coloring(b), variant).valid for b in boards])
            assert np.array_equal(got, want), (r, c, variant)


@pytest.mark.slow
def test_yinyang_verify_matches_oracle_up_to_16_cells():
    for r, c in _shapes(16):
        if r * c <= 12:
            continue
        boards = oracle.all_colorings(r, c)
        p = Puzzle.empty(r, c)
        want = oracle.valid_mask(boards, "yinyang")
        got = np.array([verify(p, Coloring(b), Variant.YIN_YANG).valid for b in boards])
        assert np.array_equal(got, want), (r, c)


def test_lemma_one_on_small_boards():
    for r, c in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 3)]:
        boards = oracle.all_colorings(r, c)
        ok = oracle.valid_mask(boards, "connected")
        for b in boards[ok]:
            assert check_diagonal_lemma(Coloring(b))


def test_feasibility_examples():
    assert connectivity_feasible(PartialColoring([[B, U, B]]), Color.BLACK)
    assert not connectivity_feasible(PartialColoring([[B, W, B]]), Color.BLACK)
    pc = PartialColoring([[B, U, U], [W, W, W], [U, U, B]])
    assert not connectivity_feasible(pc, Color.BLACK)


def test_feasibility_is_sound_on_masked_solutions():
    rng = np.random.default_rng(7)
    for r, c in [(3, 3), (3, 4), (4, 3), (2, 5)]:
        sols = oracle.solutions(np.zeros((r, c), np.int8), "yinyang")
        for s in sols[:: max(1, len(sols) // 40)]:
            for _ in range(5):
                a = s.copy()
                a[rng.random(a.shape) < 0.5] = U
                pc = PartialColoring(a)
                assert connectivity_feasible(pc, Color.BLACK)
                assert connectivity_feasible(pc, Color.WHITE)


def test_propagation_examples():
    res = propagate(PartialColoring([[B, B], [B, U]]), Variant.YIN_YANG)
    assert res.status is PropagationStatus.PROGRESS
    assert res.forced == ((1, 1, Color.WHITE),)
    for v in Variant:
        res = propagate(PartialColoring([[B, W], [U, B]]), v)
        assert res.forced == ((1, 0, Color.BLACK),)
        assert propagate(PartialColoring([[B, W], [W, B]]), v).status is PropagationStatus.CONTRADICTION
    # the mono rule stays off without the 2x2 constraint
    res = propagate(PartialColoring([[B, B], [B, U]]), Variant.CONNECTED_ONLY)
    assert res.status is PropagationStatus.STABLE


def _partials(r, c):
    for vals in itertools.product((U, B, W), repeat=r * c):
        yield np.array(vals, dtype=np.int8).reshape(r, c)


@pytest.mark.parametrize("variant", list(Variant))
def test_propagation_is_sound(variant):
    rng = np.random.default_rng(3)
    cases = list(_partials(2, 2)) + list(_partials(2, 3))
    cases += [rng.integers(0, 3, size=(3, 3)).astype(np.int8) for _ in range(1500)]
    for a in cases:
        sols = oracle.solutions(a, variant.value)
        res = propagate(PartialColoring(a), variant)
        if res.status is PropagationStatus.CONTRADICTION:
            assert len(sols) == 0
            continue
        for r, c, color in res.forced:
            # flipping a forced cell leaves nothing valid
            assert (sols[:, r, c] == int(color)).all()
