import random

import pytest

from tests.conftest import K1
from twistknot.exceptions import NotApplicable, StaleMove, TraceFormatError
from twistknot.gauss import BAR, Passage, Role, TwistedGaussCode, canonicalize, parse_gauss_code, serialize, validate
from twistknot.invariants import BarParity, odd_writhe, q_delta_class, q_polynomial
from twistknot.moves import (ARC_SHIFT_MOVES, FORBIDDEN_MOVES, FORWARD, FREE_MOVES, INSERT, MoveInstance, MoveKind,
                             apply, apply_unchecked, arc_shift_sites, enumerate_moves, virtual_arc_shift_sites)
from twistknot.poly import ST_SQUARED, Poly2

FREE_WITHOUT_ADD = FREE_MOVES - {MoveKind.R1_ADD, MoveKind.R2_ADD}
DELTA_CHECKED = (MoveKind.F1, MoveKind.F2, MoveKind.F3, MoveKind.F4, MoveKind.T4_DEL)
TRANSPOSITIONS = (MoveKind.F1, MoveKind.F2, MoveKind.F3, MoveKind.F4)


def invariants_of(code):
    return odd_writhe(code), q_polynomial(code)


@pytest.mark.parametrize("line", ["R3@0,1,2,3,4,5", "ArcShift2@3 -1", "BarCancel@2 insert", "R1Del@4,5"])
def test_trace_lines_parse_back(line):
    assert str(MoveInstance.parse(line)) == line


@pytest.mark.parametrize("line", ["bogus", "R1Del@", "Foo@1", "R1Del@1,,2"])
def test_bad_trace_lines(line):
    with pytest.raises(TraceFormatError):
        MoveInstance.parse(line)


def test_r1_del():
    code = parse_gauss_code("O1+ U1+")
    moves = enumerate_moves(code, {MoveKind.R1_DEL})
    assert moves == [MoveInstance(MoveKind.R1_DEL, (0, 1))]
    assert len(apply(code, moves[0])) == 0


def test_r1_del_across_the_seam():
    code = parse_gauss_code("U1+ O2+ U2+ O1+")
    assert [str(move) for move in enumerate_moves(code, {MoveKind.R1_DEL})] == ["R1Del@1,2", "R1Del@3,0"]


def test_r2_del():
    code = parse_gauss_code("O1+ O2- U1+ U2-")
    moves = enumerate_moves(code, {MoveKind.R2_DEL})
    assert moves == [MoveInstance(MoveKind.R2_DEL, (0, 1, 2, 3))]
    assert len(apply(code, moves[0])) == 0


def test_r2_needs_opposite_signs():
    assert enumerate_moves(parse_gauss_code("O1+ O2+ U1+ U2+"), {MoveKind.R2_DEL}) == []


def test_r3_on_k1():
    code = parse_gauss_code(K1)
    moves = enumerate_moves(code, {MoveKind.R3})
    assert moves == [MoveInstance(MoveKind.R3, (3, 4, 1, 2, 6, 7))]
    moved = apply(code, moves[0])
    assert " ".join(moved.tokens()) == "* O2+ U1+ O3+ O1+ * U2+ U3+"
    assert invariants_of(moved) == invariants_of(code)


def test_bar_cancel_wraps_around():
    code = parse_gauss_code("* O1+ U1+ *")
    moves = enumerate_moves(code, {MoveKind.BAR_CANCEL})
    assert moves == [MoveInstance(MoveKind.BAR_CANCEL, (3, 0))]
    assert serialize(apply(code, moves[0])) == "O1+ U1+"


def test_bar_insertion_only_on_request():
    code = parse_gauss_code("O1+ U1+")
    assert enumerate_moves(code, {MoveKind.BAR_CANCEL}) == []
    inserted = enumerate_moves(code, {MoveKind.BAR_CANCEL}, insertions=True)
    assert [move.payload for move in inserted] == ["insert", "insert"]
    assert apply(code, inserted[1]).bar_count == 2


def test_bar_slide_swaps_roles_and_keeps_sign():
    code = parse_gauss_code("* O1- * U1-")
    moves = enumerate_moves(code, {MoveKind.BAR_SLIDE})
    assert moves == [
        MoveInstance(MoveKind.BAR_SLIDE, (1, 3), "backward"),
        MoveInstance(MoveKind.BAR_SLIDE, (1, 3), "forward"),
    ]
    slid = apply(code, moves[1])
    assert slid.entries == (Passage(1, Role.UNDER), BAR, Passage(1, Role.OVER), BAR)
    assert dict(slid.signs) == {1: -1}


def test_forbidden_transpositions():
    code = parse_gauss_code("O1+ O2+ U1+ U2+")
    f1 = MoveInstance(MoveKind.F1, (0, 1))
    f2 = MoveInstance(MoveKind.F2, (2, 3))
    assert {f1, f2} <= set(enumerate_moves(code, FORBIDDEN_MOVES))
    assert serialize(apply(code, f2)) == "O1+ O2+ U2+ U1+"


def test_f3_keeps_the_bar_in_place():
    code = parse_gauss_code("O1+ * O2+ U1+ U2+")
    move = MoveInstance(MoveKind.F3, (0, 2))
    assert move in enumerate_moves(code, {MoveKind.F3})
    assert " ".join(apply(code, move).tokens()) == "O2+ * O1+ U1+ U2+"


def test_t4_delete_and_add():
    code = parse_gauss_code("O1+ * U1+")
    moves = enumerate_moves(code, {MoveKind.T4_DEL})
    assert moves == [MoveInstance(MoveKind.T4_DEL, (0, 1, 2))]
    assert serialize(apply(code, moves[0])) == "*"

    bar = parse_gauss_code("*")
    added = apply(bar, MoveInstance(MoveKind.T4_ADD, (0,), "U-"))
    assert serialize(added) == "O1- U1- *"
    assert " ".join(added.tokens()) == "U1- * O1-"


def test_arc_shift_sites():
    code = parse_gauss_code("O1+ * U2+ O2+ U1+")
    paired = arc_shift_sites(code)
    assert [str(site) for site in paired] == ["ArcShift2@0,2", "ArcShift1@2,3 kink", "ArcShift1@3,4", "ArcShift1@4,0 kink"]
    virtual = [str(move) for move in virtual_arc_shift_sites(code)]
    assert "ArcShift1@0" in virtual
    assert "ArcShift2@0 +1" in virtual
    assert "ArcShift2@2 -1" in virtual
    assert "ArcShift2@3 -1" not in virtual


def test_kink_arc_shift():
    code = parse_gauss_code("O1+ U1+ O2+ O3+ U2+ U3+")
    kinks = [move for move in arc_shift_sites(code) if move.payload == "kink"]
    assert [move.site for move in kinks] == [(0, 1)]


def test_paired_arc_shift_negates_both_chords():
    code = parse_gauss_code("O1+ O2+ U1+ U2+")
    shifted = apply(code, MoveInstance(MoveKind.ARC_SHIFT1, (1, 2)))
    assert " ".join(shifted.tokens()) == "O1- U1- O2- U2-"


def test_virtual_arc_shift_across_bars():
    code = parse_gauss_code("O1+ * * U1+ O2+ U2+")
    shifted = apply(code, MoveInstance(MoveKind.ARC_SHIFT2, (0,), "+2"))
    assert canonicalize(shifted) == canonicalize(parse_gauss_code("* * O1- U1- O2+ U2+"))
    flipped = apply(code, MoveInstance(MoveKind.ARC_SHIFT1, (4,)))
    assert dict(flipped.signs) == {1: 1, 2: -1}


def test_stale_and_inapplicable_moves():
    code = parse_gauss_code("O1+ O2+ U1+ U2+")
    with pytest.raises(StaleMove):
        apply(code, MoveInstance(MoveKind.R1_DEL, (5, 6)))
    with pytest.raises(NotApplicable):
        apply(code, MoveInstance(MoveKind.R1_DEL, (0, 1)))
    with pytest.raises(NotApplicable):
        apply(code, MoveInstance(MoveKind.ARC_SHIFT2, (0,), "+1"))


def test_enumeration_is_sorted_and_deterministic(corpus):
    for code in corpus[:50]:
        moves = enumerate_moves(code, FREE_WITHOUT_ADD | FORBIDDEN_MOVES | ARC_SHIFT_MOVES)
        assert moves == sorted(moves, key=MoveInstance.sort_key)
        assert moves == enumerate_moves(code, FREE_WITHOUT_ADD | FORBIDDEN_MOVES | ARC_SHIFT_MOVES)


def test_moves_keep_codes_valid(corpus):
    for code in corpus[:200]:
        for move in enumerate_moves(code, FREE_WITHOUT_ADD | FORBIDDEN_MOVES | ARC_SHIFT_MOVES):
            assert validate(apply_unchecked(code, move)) == [], (serialize(code), str(move))


def test_free_moves_keep_j_and_q(corpus):
    applied = 0
    for code in corpus:
        before = invariants_of(code)
        for move in enumerate_moves(code, FREE_WITHOUT_ADD):
            assert invariants_of(apply_unchecked(code, move)) == before, (serialize(code), str(move))
            applied += 1
    assert applied > 100


def test_growing_free_moves_keep_j_and_q(small_corpus):
    for code in small_corpus:
        before = invariants_of(code)
        moves = enumerate_moves(code, {MoveKind.R1_ADD, MoveKind.R2_ADD, MoveKind.BAR_CANCEL}, insertions=True)
        for move in moves:
            assert invariants_of(apply_unchecked(code, move)) == before, (serialize(code), str(move))


def test_forbidden_move_deltas_are_classified(corpus):
    seen = set()
    for code in corpus:
        moves = enumerate_moves(code, DELTA_CHECKED)
        if not moves:
            continue
        parity = BarParity.of(code)
        before = q_polynomial(code)
        for move in moves:
            verdict = q_delta_class(before, q_polynomial(apply_unchecked(code, move)), parity)
            assert verdict.admits(move.kind), (serialize(code), str(move), str(verdict.difference))
            seen.add(move.kind)
    assert seen >= {MoveKind.F1, MoveKind.F2, MoveKind.F3, MoveKind.F4}


def test_t4_add_delta_is_classified(small_corpus):
    for code in small_corpus:
        before = q_polynomial(code)
        for move in enumerate_moves(code, {MoveKind.T4_ADD}):
            verdict = q_delta_class(before, q_polynomial(apply_unchecked(code, move)), BarParity.of(code))
            assert verdict.admits(move.kind)


def test_arc_shifts_change_j_by_zero_or_two(corpus):
    rng = random.Random(9)
    applied = 0
    for code in corpus:
        moves = enumerate_moves(code, ARC_SHIFT_MOVES)
        if not moves:
            continue
        move = rng.choice(moves)
        delta = odd_writhe(apply_unchecked(code, move)) - odd_writhe(code)
        assert abs(delta) in (0, 2), (serialize(code), str(move))
        applied += 1
    assert applied > 800


def test_transpositions_and_paired_shifts_undo_themselves(corpus):
    applied = 0
    for code in corpus[:300]:
        moves = enumerate_moves(code, TRANSPOSITIONS) + arc_shift_sites(code)
        for move in moves:
            once = apply(code, move)
            assert apply(once, move) == code
            assert apply_unchecked(apply_unchecked(code, move), move) == code
            applied += 1
    assert applied > 0


def test_only_bar_cancel_changes_the_bar_count(small_corpus):
    for code in small_corpus:
        for move in enumerate_moves(code, list(MoveKind), insertions=True):
            delta = apply_unchecked(code, move).bar_count - code.bar_count
            if move.kind is MoveKind.BAR_CANCEL:
                assert delta == (2 if move.payload == INSERT else -2)
            else:
                assert delta == 0, str(move)


def sign_flipping_slide(code, move):
    """Slide the bars but flip the crossing sign instead of exchanging over and under."""
    slid = apply_unchecked(code, move)
    chord_id = code.entries[move.site[0]].chord_id
    entries = [entry.swapped() if entry is not BAR and entry.chord_id == chord_id else entry for entry in slid.entries]
    signs = dict(slid.signs)
    signs[chord_id] = -signs[chord_id]
    return TwistedGaussCode(entries, signs)


def test_bar_slide_exchanges_roles_rather_than_flipping_the_sign(corpus):
    code = parse_gauss_code("* O1+ O2+ * U1+ U2+")
    move = MoveInstance(MoveKind.BAR_SLIDE, (1, 4), FORWARD)
    assert move in enumerate_moves(code, {MoveKind.BAR_SLIDE})
    assert " ".join(apply(code, move).tokens()) == "U1+ * O2+ O1+ * U2+"
    assert invariants_of(apply(code, move)) == invariants_of(code)
    flipped = sign_flipping_slide(code, move)
    assert " ".join(flipped.tokens()) == "O1- * O2+ U1- * U2+"
    assert invariants_of(code) == (2, 2 * ST_SQUARED)
    assert invariants_of(flipped) == (0, Poly2.zero())

    broken = 0
    for code in corpus:
        for move in enumerate_moves(code, {MoveKind.BAR_SLIDE}):
            assert invariants_of(apply_unchecked(code, move)) == invariants_of(code)
            broken += invariants_of(sign_flipping_slide(code, move)) != invariants_of(code)
    assert broken > 0
