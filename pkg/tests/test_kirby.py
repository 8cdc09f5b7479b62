from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobkit.composition import s_invariant, signature_plus
from cobkit.generators import gen_semilagrangian, random_pair, random_params
from cobkit.kirby import (
    Destabilize,
    FlipOrientation,
    KirbyMoveError,
    SlideGraphOverLink,
    SlideLinkOverLink,
    Stabilize,
    apply,
    apply_all,
    format_move,
    format_moves,
    is_destabilizable,
    legal_moves,
    parse_move,
    parse_moves,
    random_moves,
)
from cobkit.linalg import determinant
from cobkit.suite import invariant_snapshot
from cobkit.triplet import Z4_EXAMPLE, HomologySummary, classify, h1_filling, schur_terms, validate


def test_stabilize_keeps_z4():
    T = apply(Z4_EXAMPLE, Stabilize(1))
    assert T.n_link == 3
    assert h1_filling(T) == HomologySummary(0, (4,))
    assert is_destabilizable(T, 2)
    assert apply(T, Destabilize(2)) == Z4_EXAMPLE


def test_destabilize_requires_isolated_unknot():
    with pytest.raises(KirbyMoveError):
        apply(Z4_EXAMPLE, Destabilize(0))


@pytest.mark.parametrize("seed", range(15))
def test_link_slide_preserves_det(seed):
    rng = random.Random(seed)
    T = gen_semilagrangian(random_params(rng, max_n=5, max_g=2))
    if T.n_link < 2:
        return
    i, j = rng.sample(range(T.n_link), 2)
    U = apply(T, SlideLinkOverLink(i, j, rng.choice((1, -1))))
    assert determinant(U.A) == determinant(T.A)


@pytest.mark.parametrize("seed", range(15))
def test_graph_slide_preserves_defects(seed):
    rng = random.Random(seed)
    T = gen_semilagrangian(random_params(rng, max_n=4, max_g=3, g_bottom=2, g_top=2))
    if T.n_link == 0:
        return
    for side in ("bottom", "top"):
        U = apply(T, SlideGraphOverLink(side, rng.randrange(2), rng.randrange(T.n_link),
                                        rng.choice((1, -1))))
        assert validate(U) == []
        assert schur_terms(U)[:2] == schur_terms(T)[:2]


def test_graph_slide_block_formula():
    # bottom circle 1 over link component 2 with eps = +1
    T = Z4_EXAMPLE
    U = apply(T, SlideGraphOverLink("bottom", 0, 1, 1))
    assert U.B.tolist() == [[1 + 1, -1 - 3]]
    assert U.D.tolist() == [[0 + 2 * (-1) + (-3)]]
    assert U.E.tolist() == [[-1 + 0]]


def test_flip_is_involution():
    T = gen_semilagrangian(random_params(random.Random(2), max_n=4, max_g=2))
    for j in range(T.n_link):
        assert apply(apply(T, FlipOrientation(j)), FlipOrientation(j)) == T


@pytest.mark.parametrize("eps", [1, -1])
def test_slide_then_inverse_slide_is_identity(eps):
    T = Z4_EXAMPLE
    U = apply_all(T, [SlideLinkOverLink(0, 1, eps), SlideLinkOverLink(0, 1, -eps)])
    assert U == T
    V = apply_all(T, [SlideGraphOverLink("top", 0, 0, eps), SlideGraphOverLink("top", 0, 0, -eps)])
    assert V == T


@pytest.mark.parametrize("seed", range(30))
def test_each_move_preserves_invariants_and_tracks_sign_plus(seed):
    rng = random.Random(seed)
    T = gen_semilagrangian(random_params(rng, max_n=4, max_g=2))
    T = apply(T, Stabilize(rng.choice((1, -1))))
    before = invariant_snapshot(T)
    for move in legal_moves(T):
        U = apply(T, move)
        assert invariant_snapshot(U) == before, format_move(move)
        delta = signature_plus(U.A) - signature_plus(T.A)
        if isinstance(move, Stabilize):
            assert delta == (1 if move.sign > 0 else 0)
        elif isinstance(move, Destabilize):
            assert delta == (-1 if T.A[move.index, move.index] > 0 else 0)
        else:
            assert delta == 0


def test_random_moves_zero_count():
    U, log = random_moves(Z4_EXAMPLE, 7, 0)
    assert U == Z4_EXAMPLE and log == []


def test_random_moves_deterministic():
    assert random_moves(Z4_EXAMPLE, 42, 25) == random_moves(Z4_EXAMPLE, 42, 25)


def test_thirty_moves_keep_z4_flags():
    U, log = random_moves(Z4_EXAMPLE, 2026, 30)
    assert len(log) == 30
    assert classify(U).flags() == classify(Z4_EXAMPLE).flags()
    assert apply_all(Z4_EXAMPLE, parse_moves(format_moves(log))) == U


@pytest.mark.parametrize("seed", range(20))
def test_moves_on_both_sides_keep_s_zero(seed):
    rng = random.Random(seed)
    T1, T2 = random_pair(rng, max_n=4, max_g=3)
    U1, _ = random_moves(T1, rng.getrandbits(32), 15)
    U2, _ = random_moves(T2, rng.getrandbits(32), 15)
    assert s_invariant(T1, T2) == s_invariant(U1, U2) == 0


# --- text format -------------------------------------------------------------

@pytest.mark.parametrize("line, move", [
    ("stab +", Stabilize(1)),
    ("stab -", Stabilize(-1)),
    ("destab 3", Destabilize(2)),
    ("slide L 3 over 1 +", SlideLinkOverLink(2, 0, 1)),
    ("slide G 1 over 2 -", SlideGraphOverLink("bottom", 0, 1, -1)),
    ("slide G' 2 over 1 +", SlideGraphOverLink("top", 1, 0, 1)),
    ("flip 2", FlipOrientation(1)),
])
def test_move_text_round_trip(line, move):
    assert parse_move(line) == move
    assert format_move(move) == line


def test_parse_moves_skips_comments():
    text = "# warm-up\nstab +\n\nflip 1  # then flip\n"
    assert parse_moves(text) == [Stabilize(1), FlipOrientation(0)]


@pytest.mark.parametrize("bad", ["stab 0", "destab 0", "slide X 1 over 2 +", "flip", "twist 1"])
def test_bad_move_lines(bad):
    with pytest.raises(KirbyMoveError):
        parse_move(bad)


def test_out_of_range_and_self_slide():
    with pytest.raises(KirbyMoveError):
        apply(Z4_EXAMPLE, SlideLinkOverLink(0, 0, 1))
    with pytest.raises(KirbyMoveError):
        apply(Z4_EXAMPLE, FlipOrientation(5))
    with pytest.raises(KirbyMoveError):
        apply(Z4_EXAMPLE, SlideGraphOverLink("top", 1, 0, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 63), st.integers(0, 30))
def test_fuzzed_sequences_preserve_invariants(seed, count):
    T = gen_semilagrangian(random_params(random.Random(seed), max_n=4, max_g=2))
    U, _ = random_moves(T, seed, count)
    assert invariant_snapshot(U) == invariant_snapshot(T)
