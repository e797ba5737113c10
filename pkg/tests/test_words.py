import pytest

from ncverify.errors import CapExceededError, InvalidLetterError, RankMismatchError
from ncverify.words import (
    Word,
    ball_size,
    enumerate_ball,
    format_letters,
    generator,
    identity,
    inverse,
    is_positive,
    multiply,
    parse_word,
    reduce,
    rotation_exponent,
    word_length,
)


def test_reduce_cancels_adjacent_inverses():
    assert reduce([1, 2, -2, -1, 1], 2).letters == (1,)
    assert reduce([1, -1], 2) == identity(2)
    assert reduce([2, 1, -1, -2, 2], 2).letters == (2,)


def test_invalid_letters_rejected():
    for bad in ([0], [3], [-3]):
        with pytest.raises(InvalidLetterError):
            reduce(bad, 2)
    with pytest.raises(InvalidLetterError):
        Word((1, -1), 2)


def test_multiply_and_inverse():
    a = parse_word("g1*g2^-1", 2)
    b = parse_word("g2*g1", 2)
    assert multiply(a, b).letters == (1, 1)
    assert multiply(a, inverse(a)) == identity(2)
    with pytest.raises(RankMismatchError):
        multiply(generator(1, 2), generator(1, 3))


def test_length_and_rotation_exponent():
    w = parse_word("g1^2*g2^-3", 2)
    assert word_length(w) == 5
    assert rotation_exponent(w) == -1
    assert not is_positive(w)
    assert is_positive(parse_word("g1*g2^2", 2))
    assert is_positive(identity(2))


def test_format_parse_round_trip():
    for text in ["e", "g1", "g1^2*g2^-1*g1", "g2^-3"]:
        assert format_letters(parse_word(text, 2).letters) == text


@pytest.mark.parametrize("n,R,size", [(1, 3, 7), (2, 0, 1), (2, 1, 5), (2, 2, 17), (2, 3, 53), (3, 2, 37)])
def test_ball_sizes(n, R, size):
    assert ball_size(n, R) == size
    ball = enumerate_ball(n, R)
    assert len(ball) == size == len(set(ball))
    assert [len(w) for w in ball] == sorted(len(w) for w in ball)


def test_ball_cap():
    with pytest.raises(CapExceededError):
        enumerate_ball(3, 10, cap=1000)
