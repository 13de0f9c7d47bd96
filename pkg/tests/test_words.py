import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cyclic_words, raw_text, words
from transeq.words import (
    CyclicWord,
    Letter,
    Word,
    WordParseError,
    canonical_rotation,
    count_letter,
    count_pair,
    cyclic_length,
    cyclic_reduce,
    free_reduce,
    least_rotation,
    pair_counts,
    parse_word,
    random_cyclic_word,
    random_word,
)

KEY = str.maketrans("xXyY", "abcd")


def brute_least(text):
    if not text:
        return ""
    return min((text[i:] + text[:i] for i in range(len(text))), key=lambda r: r.translate(KEY))


def naive_reduce(text):
    while True:
        for i in range(len(text) - 1):
            if text[i] == text[i + 1].swapcase():
                text = text[:i] + text[i + 2 :]
                break
        else:
            return text


class TestLetter:
    def test_inverse_and_sign(self):
        assert Letter.x.inverse() is Letter.X
        assert Letter.Y.inverse() is Letter.y
        assert Letter.X.sign == -1 and Letter.y.sign == 1
        assert Letter.Y.base == "y"


class TestParsing:
    def test_reduces(self):
        assert parse_word("xXyyY").text == "y"
        assert parse_word("").text == ""

    def test_error_position_is_one_based(self):
        with pytest.raises(WordParseError) as exc:
            parse_word("xz")
        assert exc.value.position == 2 and exc.value.char == "z"
        assert "position 2" in str(exc.value)

    def test_constructor_rejects_unreduced(self):
        with pytest.raises(ValueError):
            Word("xX")
        with pytest.raises(ValueError):
            CyclicWord("xyX")


@given(raw_text(20))
def test_free_reduce_matches_naive(text):
    assert free_reduce(text).text == naive_reduce(text)


@given(words(), words())
def test_group_laws(a, b):
    assert (a * b) * b.inverse() == a
    assert a * a.inverse() == Word()
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(raw_text(14))
def test_least_rotation_against_brute_force(text):
    assert canonical_rotation(text) == brute_least(text)


def test_least_rotation_periodic():
    assert least_rotation("yxyx") in (1, 3)
    assert canonical_rotation("YxYx") == "xYxY"


@given(words())
def test_cyclic_reduce_invariant_under_conjugation(w):
    g = random_word(random.Random(len(w.text)), 3)
    assert cyclic_reduce(w.conjugate(g)) == cyclic_reduce(w)
    assert cyclic_length(w) == len(cyclic_reduce(w))


@given(cyclic_words())
def test_cyclic_word_is_canonical(c):
    t = c.text
    assert t == brute_least(t)
    assert len(t) < 2 or t[0] != t[-1].swapcase()
    rotated = CyclicWord(t[1:] + t[:1]) if t else c
    assert rotated == c


@given(cyclic_words())
def test_inverse_is_involution(c):
    assert c.inverse().inverse() == c
    assert len(c.inverse()) == len(c)


def test_cyclic_reduce_fixtures(derived):
    for w in ("Yxyy", "xyX", "yxYxXy"):
        assert cyclic_reduce(parse_word(w)).text == derived[f"cyclic_reduce/{w}"]["value"]


def test_count_pair_fixtures(derived):
    for text, a, b in [("xy", "x", "y"), ("xyxY", "y", "X"), ("x", "x", "x"), ("x", "x", "y"), ("x", "x", "X")]:
        expected = derived[f"count_pair/{text}/{a}{b}"]["value"]
        assert count_pair(CyclicWord(text), a, b) == expected


@given(cyclic_words(), st.sampled_from("xXyY"), st.sampled_from("xXyY"))
def test_count_pair_symmetry(c, a, b):
    assert count_pair(c, a, b) == count_pair(c, b.swapcase(), a.swapcase())
    assert pair_counts(c).pair(a, b) == count_pair(c, a, b)


@given(cyclic_words())
def test_letter_counts_partition_length(c):
    assert count_letter(c, "x") + count_letter(c, "y") == len(c)
    assert count_letter(c, "X") == count_letter(c, "x")


def test_random_words_are_reduced():
    rng = random.Random(3)
    for n in range(0, 30):
        w = random_word(rng, n)
        assert len(w) == n and Word(w.text) == w
        cw = random_cyclic_word(rng, n)
        assert len(cw) == n and CyclicWord(cw.text) == cw


def test_immutable():
    w = Word("xy")
    with pytest.raises(AttributeError):
        w.text = "x"
    assert {Word("xy"), Word("xy")} == {w}
    assert w.reversed().text == "yx"
