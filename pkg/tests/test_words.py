import pytest

from fordpu.errors import WordSyntaxError
from fordpu.words import a_conjugate, invert_word, join_words, normal_form, parse_word


def test_parse_tokens_and_powers():
    assert parse_word("I1 I4 A^-3 c") == [("I1", 1), ("I4", 1), ("A", -3), ("c", 1)]
    assert parse_word("CBc") == [("C", 1), ("B", 1), ("c", 1)]
    assert parse_word("") == []


@pytest.mark.parametrize("bad,pos", [("X", 0), ("CB?", 2), ("A^", 0), ("I5", 0)])
def test_syntax_errors_carry_position(bad, pos):
    with pytest.raises(WordSyntaxError) as exc:
        parse_word(bad)
    assert exc.value.position >= pos


def test_normal_form_reduces():
    assert normal_form("A a C") == "C"
    assert normal_form("I1 I1 B") == "B"
    assert normal_form("A^2 a") == "A"
    assert normal_form("C^-2") == "cc"


def test_invert_and_conjugate():
    assert invert_word("CBc") == "Cbc"
    assert invert_word("I1I4") == "I4I1"
    assert a_conjugate("C", 2) == "AACaa"
    assert a_conjugate("CBC", -1) == "aCBCA"
    assert a_conjugate("C", 0) == "C"
    assert join_words("A", "a") == ""
