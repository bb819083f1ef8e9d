"""Free group words, Magnus expansion, weight and equality tests."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jfilt.errors import PreconditionError, ValidationError
from jfilt.words import (
    Alphabet,
    GroupWord,
    commutator,
    embed_word,
    generator,
    lcs_weight,
    magnus_expand,
    nilpotent_equal,
    omega,
    parse_word,
    project_y,
    render_word,
    word,
)

FULL1 = Alphabet(1)
FULL2 = Alphabet(2)
Y3 = Alphabet(3, "y")


def words_over(alphabet, max_len=6, max_exp=2):
    letter = st.tuples(
        st.integers(0, alphabet.size - 1),
        st.integers(-max_exp, max_exp).filter(lambda e: e != 0),
    )
    return st.lists(letter, max_size=max_len).map(lambda ls: GroupWord(alphabet, tuple(ls)))


def test_reduction_cancels_adjacent_letters():
    w = word(FULL1, (0, 1), (0, -1))
    assert w.is_empty
    w = word(FULL1, (0, 2), (1, 1), (1, -1), (0, -1))
    assert w.letters == ((0, 1),)


def test_reduction_is_idempotent_and_merges():
    w = word(FULL2, (0, 1), (0, 1), (3, -2))
    assert w.letters == ((0, 2), (3, -2))
    assert GroupWord(FULL2, w.letters) == w


def test_commutator_magnus_q3():
    x1 = generator(FULL1, 0)
    y1 = generator(FULL1, 1)
    series = magnus_expand(commutator(x1, y1), 3)
    assert series.terms == {(): 1, (0, 1): 1, (1, 0): -1}


def test_omega_genus1_word_and_expansion():
    w = omega(1)
    # (y1)^-1 x1 y1 x1^-1
    assert w.letters == ((1, -1), (0, 1), (1, 1), (0, -1))
    series = magnus_expand(w, 3)
    assert series.terms == {(): 1, (0, 1): 1, (1, 0): -1}
    assert series.lowest_positive_degree() == 2


def test_omega_exponent_sums_vanish():
    for g in (1, 2, 3):
        assert omega(g).abelianization() == (0,) * (2 * g)


def test_lcs_weight_examples():
    x1 = generator(FULL1, 0)
    y1 = generator(FULL1, 1)
    c = commutator(x1, y1)
    assert lcs_weight(x1, 5) == 1
    assert lcs_weight(c, 5) == 2
    assert lcs_weight(commutator(c, y1), 5) == 3
    assert lcs_weight(GroupWord(FULL1), 5) == 5


def test_lcs_weight_basic_commutator_ladder():
    # Left-normed [..[[x1,y1],y1]..,y1] has weight exactly its depth.
    x1 = generator(FULL1, 0)
    y1 = generator(FULL1, 1)
    w = x1
    for depth in range(2, 6):
        w = commutator(w, y1)
        assert lcs_weight(w, 6) == depth


def test_nilpotent_equal_detects_abelian_and_deeper_levels():
    x1 = generator(FULL1, 0)
    y1 = generator(FULL1, 1)
    assert nilpotent_equal(x1 * y1, y1 * x1, 2)
    assert not nilpotent_equal(x1 * y1, y1 * x1, 3)


def test_magnus_constant_term_is_one():
    for w in (GroupWord(FULL2), omega(2), generator(FULL2, 1) ** -3):
        assert magnus_expand(w, 4).terms[()] == 1


def test_magnus_rejects_small_cutoff():
    with pytest.raises(PreconditionError):
        magnus_expand(generator(FULL1, 0), 1)
    with pytest.raises(PreconditionError):
        lcs_weight(generator(FULL1, 0), 1)


def test_alphabet_mismatch_raises():
    with pytest.raises(ValidationError):
        generator(FULL1, 0) * generator(FULL2, 0)


@settings(max_examples=60, deadline=None)
@given(words_over(FULL2), words_over(FULL2))
def test_magnus_is_a_homomorphism(u, v):
    q = 4
    assert magnus_expand(u * v, q) == magnus_expand(u, q) * magnus_expand(v, q)


@settings(max_examples=40, deadline=None)
@given(words_over(FULL2))
def test_inverse_cancels_under_magnus(u):
    assert magnus_expand(u * u.inverse(), 4).is_one
    assert u.inverse().inverse() == u


@settings(max_examples=40, deadline=None)
@given(words_over(FULL1, max_len=4), st.integers(-3, 3))
def test_power_matches_repeated_product(u, n):
    expected = GroupWord(FULL1)
    step = u if n >= 0 else u.inverse()
    for _ in range(abs(n)):
        expected = expected * step
    assert u ** n == expected


def _random_nested_commutator(rng, alphabet, depth):
    if depth == 1:
        return generator(alphabet, rng.randrange(alphabet.size))
    split = rng.randrange(1, depth)
    return commutator(
        _random_nested_commutator(rng, alphabet, split),
        _random_nested_commutator(rng, alphabet, depth - split),
    )


def test_nested_commutators_respect_depth_bound():
    import random

    rng = random.Random(0)
    qmax = 6
    for _ in range(40):
        depth = rng.randrange(2, 6)
        w = _random_nested_commutator(rng, FULL1, depth)
        weight = lcs_weight(w, qmax)
        assert weight >= depth
        for q in range(2, qmax + 1):
            assert nilpotent_equal(w, GroupWord(FULL1), q) == (weight >= q)


def test_parse_and_render_round_trip():
    ab = Alphabet(3)
    w = parse_word("[x1,y1]^-2 y3", ab)
    x1 = generator(ab, 0)
    y1 = generator(ab, 3)
    y3 = generator(ab, 5)
    assert w == commutator(x1, y1) ** -2 * y3
    assert parse_word(render_word(w), ab) == w
    assert parse_word("", ab).is_empty
    assert parse_word("(x1 y2)^2", ab) == (generator(ab, 0) * generator(ab, 4)) ** 2


def test_parse_rejects_malformed_input():
    for text in ("x0", "z1", "[x1 y1]", "x1^", "(x1", "x9", "x1]"):
        with pytest.raises(ValidationError):
            parse_word(text, FULL2)


def test_projection_and_embedding():
    ab = Alphabet(2)
    w = parse_word("x1 y1 x2^-1 y2^3", ab)
    p = project_y(w)
    assert p.alphabet == Alphabet(2, "y")
    assert render_word(p) == "y1 y2^3"
    back = embed_word(p, ab)
    assert render_word(back) == "y1 y2^3"
    xw = parse_word("x1 x2^-2", Alphabet(2, "x"))
    assert render_word(embed_word(xw, ab)) == "x1 x2^-2"
