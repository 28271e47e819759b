"""Word grammar: letters I1..I4, A, B, C, inverses a, b, c, integer powers."""
from __future__ import annotations

import re

from .errors import WordSyntaxError

_TOKEN = re.compile(r"(I[1-4]|[ABCabc])(?:\^(-?\d+))?")


def parse_word(word: str) -> list[tuple[str, int]]:
    """Split a word into (letter, power) tokens.

    Tokens may be separated by whitespace or written together ("CBc").  Lower
    case letters are inverses; ``^k`` gives integer powers.
    """
    out = []
    pos = 0
    while pos < len(word):
        if word[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(word, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected {word[pos]!r}", pos)
        if word[m.end():m.end() + 1] == "^":
            raise WordSyntaxError("malformed exponent", m.end())
        out.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
        pos = m.end()
    return out


def letters(word: str) -> list[str]:
    """Expand to single letters with inverses in lower case (I_i stay as is)."""
    out = []
    for letter, power in parse_word(word):
        if letter.startswith("I"):
            out.extend([letter] * (abs(power) % 2))
            continue
        sym = letter if power > 0 else letter.swapcase()
        out.extend([sym] * abs(power))
    return out


def reduce_letters(seq: list[str]) -> list[str]:
    """Free reduction: cancel x X pairs and repeated involutions."""
    out: list[str] = []
    for x in seq:
        if out and (out[-1] == x.swapcase() and x != x.swapcase() or (x.startswith("I") and out[-1] == x)):
            out.pop()
        else:
            out.append(x)
    return out


def normal_form(word: str) -> str:
    """Freely reduced word written with single letters, no separators."""
    return "".join(reduce_letters(letters(word)))


def invert_word(word: str) -> str:
    inv = []
    for x in reversed(letters(word)):
        inv.append(x if x.startswith("I") else x.swapcase())
    return "".join(inv)


def join_words(*words: str) -> str:
    return normal_form("".join(w.replace(" ", "") for w in words))


def a_conjugate(word: str, k: int) -> str:
    """A^k word A^{-k}, freely reduced."""
    left = "A" * k if k >= 0 else "a" * (-k)
    right = "a" * k if k >= 0 else "A" * (-k)
    return join_words(left, word, right)
