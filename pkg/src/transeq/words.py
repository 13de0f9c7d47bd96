"""Word algebra in the free group F2 = <x, y>.

Words are stored as text over the alphabet ``x y X Y`` where a capital
letter is the inverse of the lower-case one.  The text form is the
internal representation too: it is immutable, hashable, and lets the
heavier routines lean on ``str.translate``.

The fixed letter order is x < X < y < Y; cyclic words are stored in their
lexicographically least rotation under that order.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union

ALPHABET = "xXyY"

# Randomized suites default to this seed so runs are reproducible.
DEFAULT_SEED = 20070417

_INVERSE = str.maketrans("xXyY", "XxYy")
# Maps the letter order x < X < y < Y onto plain character order.
_ORDER_KEY = str.maketrans("xXyY", "abcd")


class Letter(str, Enum):
    x = "x"
    X = "X"
    y = "y"
    Y = "Y"

    @property
    def base(self) -> str:
        return self.value.lower()

    @property
    def sign(self) -> int:
        return 1 if self.value.islower() else -1

    def inverse(self) -> "Letter":
        return Letter(self.value.translate(_INVERSE))

    def __str__(self) -> str:
        return self.value


class WordParseError(ValueError):
    """Raised for text that is not in the word format."""

    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"invalid letter {char!r} at position {position}")


LetterLike = Union[Letter, str]


def _reduce_text(text: str) -> str:
    stack: list[str] = []
    push, pop = stack.append, stack.pop
    for c in text:
        if stack and stack[-1] == c.swapcase():
            pop()
        else:
            push(c)
    return "".join(stack)


def _cyclic_core(text: str) -> tuple[int, int]:
    """Return (i, j) so that text[i:j] is the cyclically reduced core.

    ``text`` must be freely reduced.
    """
    i, j = 0, len(text)
    while j - i >= 2 and text[i] == text[j - 1].swapcase():
        i += 1
        j -= 1
    return i, j


def least_rotation(text: str) -> int:
    """Index of the lexicographically least rotation (Booth's algorithm).

    Comparison uses the letter order x < X < y < Y.
    """
    n = len(text)
    if n < 2:
        return 0
    s = text.translate(_ORDER_KEY)
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        c = s[j % n]
        i = fail[j - k - 1]
        while i != -1 and c != s[(k + i + 1) % n]:
            if c < s[(k + i + 1) % n]:
                k = j - i - 1
            i = fail[i]
        if i == -1 and c != s[k % n]:
            if c < s[k % n]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k % n


def canonical_rotation(text: str) -> str:
    k = least_rotation(text)
    return text[k:] + text[:k]


def _is_reduced(text: str) -> bool:
    return all(a != b.swapcase() for a, b in zip(text, text[1:]))


class Word:
    """A freely reduced element of F2."""

    __slots__ = ("text",)

    def __init__(self, letters: Iterable[LetterLike] = ""):
        text = _as_text(letters)
        if not _is_reduced(text):
            raise ValueError(f"word {text!r} is not freely reduced")
        object.__setattr__(self, "text", text)

    @classmethod
    def _trusted(cls, text: str) -> "Word":
        w = object.__new__(cls)
        object.__setattr__(w, "text", text)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(c) for c in self.text)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter(c) for c in self.text)

    def __len__(self) -> int:
        return len(self.text)

    def __bool__(self) -> bool:
        return bool(self.text)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and other.text == self.text

    def __hash__(self) -> int:
        return hash(("Word", self.text))

    def __mul__(self, other: "Word") -> "Word":
        return Word._trusted(_reduce_text(self.text + other.text))

    def inverse(self) -> "Word":
        return Word._trusted(self.text[::-1].translate(_INVERSE))

    def reversed(self) -> "Word":
        """The word read backwards (an anti-automorphism, not the inverse)."""
        return Word._trusted(self.text[::-1])

    def conjugate(self, g: "Word") -> "Word":
        """g * self * g^-1."""
        return g * self * g.inverse()

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Word({self.text!r})"


class CyclicWord:
    """Conjugacy class of a word, held as its least cyclically reduced rotation."""

    __slots__ = ("text",)

    def __init__(self, letters: Iterable[LetterLike] = ""):
        text = _as_text(letters)
        if not _is_reduced(text) or (len(text) > 1 and text[0] == text[-1].swapcase()):
            raise ValueError(f"{text!r} is not cyclically reduced")
        object.__setattr__(self, "text", canonical_rotation(text))

    @classmethod
    def _trusted(cls, text: str) -> "CyclicWord":
        w = object.__new__(cls)
        object.__setattr__(w, "text", text)
        return w

    def __setattr__(self, name, value):
        raise AttributeError("CyclicWord is immutable")

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(c) for c in self.text)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter(c) for c in self.text)

    def __len__(self) -> int:
        return len(self.text)

    def __bool__(self) -> bool:
        return bool(self.text)

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicWord) and other.text == self.text

    def __hash__(self) -> int:
        return hash(("CyclicWord", self.text))

    def as_word(self) -> Word:
        return Word._trusted(self.text)

    def inverse(self) -> "CyclicWord":
        return CyclicWord._trusted(canonical_rotation(self.text[::-1].translate(_INVERSE)))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"CyclicWord({self.text!r})"


def _as_text(letters: Iterable[LetterLike]) -> str:
    if isinstance(letters, str) and not isinstance(letters, Letter):
        text = letters
    else:
        text = "".join(letters)
    for c in text:
        if c not in ALPHABET:
            raise ValueError(f"not a letter: {c!r}")
    return text


def free_reduce(raw: Iterable[LetterLike]) -> Word:
    return Word._trusted(_reduce_text(_as_text(raw)))


def cyclic_reduce(w: Word) -> CyclicWord:
    i, j = _cyclic_core(w.text)
    return CyclicWord._trusted(canonical_rotation(w.text[i:j]))


def cyclic_length(w: Word | CyclicWord) -> int:
    if isinstance(w, CyclicWord):
        return len(w)
    i, j = _cyclic_core(w.text)
    return j - i


def parse_word(text: str) -> Word:
    """Parse the external word format; positions in errors are 1-based."""
    for pos, c in enumerate(text, start=1):
        if c not in ALPHABET:
            raise WordParseError(c, pos)
    return Word._trusted(_reduce_text(text))


def count_letter(w: CyclicWord, a: LetterLike) -> int:
    """n(w; a): occurrences of a and a^-1."""
    base = str(a).lower()
    return w.text.count(base) + w.text.count(base.upper())


def count_pair(w: CyclicWord, a: LetterLike, b: LetterLike) -> int:
    """n(w; a, b): cyclic positions holding ab or b^-1 a^-1.

    A position matching both patterns counts once.
    """
    a, b = str(a), str(b)
    patterns = {a + b, b.swapcase() + a.swapcase()}
    t = w.text
    n = len(t)
    return sum(1 for i in range(n) if t[i] + t[(i + 1) % n] in patterns)


@dataclass(frozen=True)
class PairCounts:
    letters: dict[str, int]
    pairs: dict[tuple[str, str], int]

    def letter(self, a: LetterLike) -> int:
        return self.letters[str(a)]

    def pair(self, a: LetterLike, b: LetterLike) -> int:
        return self.pairs[str(a), str(b)]


def pair_counts(w: CyclicWord) -> PairCounts:
    t = w.text
    adjacent = Counter(zip(t, t[1:] + t[:1]))
    letters = {c: count_letter(w, c) for c in ALPHABET}
    pairs = {}
    for a in ALPHABET:
        for b in ALPHABET:
            mirror = (b.swapcase(), a.swapcase())
            total = adjacent[a, b]
            if mirror != (a, b):
                total += adjacent[mirror]
            pairs[a, b] = total
    return PairCounts(letters, pairs)


def random_word(rng: random.Random, length: int) -> Word:
    """Uniform freely reduced word of the given length."""
    out: list[str] = []
    for _ in range(length):
        choices = ALPHABET if not out else ALPHABET.replace(out[-1].swapcase(), "")
        out.append(rng.choice(choices))
    return Word._trusted("".join(out))


def random_cyclic_word(rng: random.Random, length: int) -> CyclicWord:
    """Random cyclically reduced word of the given length."""
    if length == 0:
        return CyclicWord._trusted("")
    out = [rng.choice(ALPHABET)]
    for i in range(1, length):
        banned = {out[-1].swapcase()}
        if i == length - 1:
            banned.add(out[0].swapcase())
        out.append(rng.choice([c for c in ALPHABET if c not in banned]))
    return CyclicWord("".join(out))
