"""Whitehead automorphisms of F2 and chains of the generators sigma, tau.

Composition follows function notation: the chain text ``ts`` is tau after
sigma, so the rightmost symbol is applied first.  Chain symbols are ``s S t
T p P`` for sigma, sigma^-1, tau, tau^-1, pi, pi^-1, where

    sigma = ({x}, y):  x -> xy
    tau   = ({y}, x):  y -> yx
    pi    (type W1):   x -> y, y -> x^-1
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union

from .words import (
    ALPHABET,
    CyclicWord,
    LetterLike,
    Word,
    _cyclic_core,
    _reduce_text,
    canonical_rotation,
    count_letter,
    count_pair,
)

CHAIN_SYMBOLS = "sStTpP"


class ChainParseError(ValueError):
    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"invalid chain symbol {char!r} at position {position}")


def _inv(text: str) -> str:
    return text[::-1].swapcase()


class _Automorphism:
    """Mixin for automorphisms given by the images of the four letters."""

    def image(self, letter: LetterLike) -> str:
        raise NotImplementedError

    @property
    def table(self) -> dict[int, str]:
        return str.maketrans({c: self.image(c) for c in ALPHABET})

    def __call__(self, w):
        return apply(self, w)


@dataclass(frozen=True)
class WhiteheadW1(_Automorphism):
    """Inversion-respecting permutation of x, X, y, Y.

    ``perm`` lists the images of x, X, y, Y in that order.
    """

    perm: str

    def __post_init__(self):
        if sorted(self.perm) != sorted(ALPHABET):
            raise ValueError(f"{self.perm!r} is not a permutation of {ALPHABET!r}")
        for c, img in zip(ALPHABET, self.perm):
            if self.perm[ALPHABET.index(c.swapcase())] != img.swapcase():
                raise ValueError(f"{self.perm!r} does not commute with inversion")

    @classmethod
    def from_images(cls, x_image: LetterLike, y_image: LetterLike) -> "WhiteheadW1":
        x_image, y_image = str(x_image), str(y_image)
        return cls(x_image + x_image.swapcase() + y_image + y_image.swapcase())

    def image(self, letter: LetterLike) -> str:
        return self.perm[ALPHABET.index(str(letter))]

    def compose(self, other: "WhiteheadW1") -> "WhiteheadW1":
        """self after other."""
        return WhiteheadW1("".join(self.image(other.image(c)) for c in ALPHABET))

    def inverse(self) -> "WhiteheadW1":
        out = [""] * 4
        for c, img in zip(ALPHABET, self.perm):
            out[ALPHABET.index(img)] = c
        return WhiteheadW1("".join(out))

    def power(self, k: int) -> "WhiteheadW1":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = base.compose(out)
        return out

    def __repr__(self) -> str:
        return f"WhiteheadW1(x->{self.perm[0]}, y->{self.perm[2]})"


IDENTITY = WhiteheadW1("xXyY")
PI = WhiteheadW1.from_images("y", "X")
PI_INV = PI.inverse()


def all_w1() -> list[WhiteheadW1]:
    out = []
    for xi in ALPHABET:
        for yi in ALPHABET:
            if yi.lower() != xi.lower():
                out.append(WhiteheadW1.from_images(xi, yi))
    return out


@dataclass(frozen=True)
class WhiteheadW2(_Automorphism):
    """The map (S, a): c -> ca, a^-1 c a, a^-1 c, or c depending on S."""

    subset: frozenset
    multiplier: str

    def __init__(self, subset: Iterable[LetterLike], multiplier: LetterLike):
        subset = frozenset(str(c) for c in subset)
        multiplier = str(multiplier)
        if multiplier not in ALPHABET or not subset <= set(ALPHABET):
            raise ValueError("letters must be among x, X, y, Y")
        if multiplier in subset or multiplier.swapcase() in subset:
            raise ValueError("S must avoid the multiplier and its inverse")
        if not subset:
            raise ValueError("empty S gives the identity; use IDENTITY")
        object.__setattr__(self, "subset", subset)
        object.__setattr__(self, "multiplier", multiplier)

    def image(self, letter: LetterLike) -> str:
        c = str(letter)
        a = self.multiplier
        inside, inv_inside = c in self.subset, c.swapcase() in self.subset
        if inside and not inv_inside:
            return c + a
        if inside and inv_inside:
            return a.swapcase() + c + a
        if inv_inside:
            # forced by c -> ca on c^-1
            return a.swapcase() + c
        return c

    def __repr__(self) -> str:
        return f"({{{', '.join(sorted(self.subset))}}}, {self.multiplier})"


def all_w2() -> list[WhiteheadW2]:
    out = []
    for a in ALPHABET:
        other = [c for c in ALPHABET if c.lower() != a.lower()]
        for r in (1, 2):
            for subset in itertools.combinations(other, r):
                out.append(WhiteheadW2(subset, a))
    return out


class Generator(Enum):
    SIGMA = "s"
    SIGMA_INV = "S"
    TAU = "t"
    TAU_INV = "T"

    @property
    def w2(self) -> WhiteheadW2:
        return _GEN_W2[self]

    @property
    def sign(self) -> int:
        return 1 if self.value.islower() else -1

    @property
    def is_sigma(self) -> bool:
        return self.value in "sS"

    @property
    def active(self) -> str:
        """The base letter whose occurrences get multiplied."""
        return "x" if self.is_sigma else "y"

    @property
    def multiplier(self) -> str:
        return self.w2.multiplier

    def inverse(self) -> "Generator":
        return Generator(self.value.swapcase())

    def image(self, letter: LetterLike) -> str:
        return _GEN_IMAGES[self][str(letter)]

    @property
    def table(self) -> dict[int, str]:
        return _GEN_TABLES[self]

    def __call__(self, w):
        return apply(self, w)

    def __str__(self) -> str:
        return self.value


_GEN_W2 = {
    Generator.SIGMA: WhiteheadW2("x", "y"),
    Generator.SIGMA_INV: WhiteheadW2("x", "Y"),
    Generator.TAU: WhiteheadW2("y", "x"),
    Generator.TAU_INV: WhiteheadW2("y", "X"),
}
_GEN_IMAGES = {g: {c: w2.image(c) for c in ALPHABET} for g, w2 in _GEN_W2.items()}
_GEN_TABLES = {g: str.maketrans(images) for g, images in _GEN_IMAGES.items()}

Automorphism = Union[WhiteheadW1, WhiteheadW2, Generator]


def _apply_text(aut: Automorphism, text: str) -> str:
    return _reduce_text(text.translate(aut.table))


def _apply_cyclic_text(aut: Automorphism, text: str) -> str:
    """Image of a cyclically reduced text, cyclically reduced, not canonical."""
    out = _reduce_text(text.translate(aut.table))
    i, j = _cyclic_core(out)
    return out[i:j]


def apply(aut: Automorphism, w: Word | CyclicWord) -> Word | CyclicWord:
    if isinstance(w, CyclicWord):
        return apply_to_cyclic(aut, w)
    return Word._trusted(_apply_text(aut, w.text))


def apply_w1(beta: WhiteheadW1, w: Word | CyclicWord) -> Word | CyclicWord:
    text = w.text.translate(beta.table)
    if isinstance(w, CyclicWord):
        return CyclicWord._trusted(canonical_rotation(text))
    return Word._trusted(text)


def apply_w2(alpha: WhiteheadW2, w: Word) -> Word:
    return Word._trusted(_apply_text(alpha, w.text))


def apply_to_cyclic(aut: Automorphism, w: CyclicWord) -> CyclicWord:
    return CyclicWord._trusted(canonical_rotation(_apply_cyclic_text(aut, w.text)))


def bar(alpha: WhiteheadW2) -> WhiteheadW2 | WhiteheadW1:
    """(S-bar, a^-1); returns IDENTITY when the complement is empty."""
    a = alpha.multiplier
    rest = set(ALPHABET) - alpha.subset - {a, a.swapcase()}
    if not rest:
        return IDENTITY
    return WhiteheadW2(rest, a.swapcase())


def classify_w2(alpha: WhiteheadW2) -> Generator | WhiteheadW1:
    """The one of 1, sigma^+-1, tau^+-1 that agrees with alpha on cyclic words."""
    if len(alpha.subset) == 2:
        return IDENTITY
    (c,) = alpha.subset
    a = alpha.multiplier
    if c.isupper():
        c, a = c.swapcase(), a.swapcase()
    for g, w2 in _GEN_W2.items():
        if w2.subset == {c} and w2.multiplier == a:
            return g
    raise AssertionError(f"unclassified {alpha!r}")


@dataclass(frozen=True)
class CancellationReport:
    trivial_count: int
    proper_count: int

    @property
    def total(self) -> int:
        return self.trivial_count + self.proper_count


def apply_generator(g: Generator, w: CyclicWord) -> tuple[CyclicWord, CancellationReport]:
    """Apply g and classify every cancellation as trivial or proper.

    With c the active letter and m the multiplier, g appends m after each c
    and prepends m^-1 before each c^-1.  Between consecutive active letters A
    and B sits a power m^r of the passive letter; all cancellation happens
    inside such a gap.  The gap c m^r c^-1 is left unchanged by g and its one
    cancellation is trivial; every other cancellation is proper.
    """
    text = w.text
    c = g.active
    m = g.multiplier
    active = [i for i, ch in enumerate(text) if ch.lower() == c]
    if not active:
        return w, CancellationReport(0, 0)
    first = active[0]
    text = text[first:] + text[:first]
    starts = [i - first for i in active]
    starts.append(len(text))
    pieces = []
    trivial = proper = 0
    for k in range(len(starts) - 1):
        head = text[starts[k]]
        gap = text[starts[k] + 1 : starts[k + 1]]
        tail = text[starts[k + 1] % len(text)]
        r = gap.count(m) - gap.count(m.swapcase())
        pre = 1 if head == c else 0
        post = 1 if tail == c.upper() else 0
        e = r + pre - post
        cancelled = (abs(r) + pre + post - abs(e)) // 2
        if head == c and tail == c.upper():
            trivial += cancelled
        else:
            proper += cancelled
        pieces.append(head + (m if e > 0 else m.swapcase()) * abs(e))
    return CyclicWord("".join(pieces)), CancellationReport(trivial, proper)


_PAIR_FOR_LENGTH = {
    Generator.TAU: ("y", "X"),
    Generator.TAU_INV: ("y", "x"),
    Generator.SIGMA: ("x", "Y"),
    Generator.SIGMA_INV: ("x", "y"),
}


def predicted_length(g: Generator, w: CyclicWord) -> int:
    """||g(w)|| from letter and pair counts of w, without applying g."""
    a, b = _PAIR_FOR_LENGTH[g]
    return len(w) + count_letter(w, g.active) - 2 * count_pair(w, a, b)


# ---------------------------------------------------------------------------
# chains


class Family(Enum):
    C1 = "C1"
    C2 = "C2"

    @property
    def generators(self) -> tuple[Generator, Generator]:
        if self is Family.C1:
            return Generator.SIGMA, Generator.TAU
        return Generator.SIGMA_INV, Generator.TAU_INV

    @property
    def index(self) -> int:
        return 0 if self is Family.C1 else 1

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GeneratorChain:
    """A (C1) or (C2) chain; ``steps`` is in notation order (last applied first)."""

    family: Family
    steps: tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        allowed = self.family.generators
        for g in self.steps:
            if g not in allowed:
                raise ValueError(f"{g.value!r} does not belong to family {self.family}")

    @classmethod
    def from_text(cls, text: str, family: Family | None = None) -> "GeneratorChain":
        symbols = parse_chain(text)
        if any(s in "pP" for s in symbols):
            raise ValueError("a generator chain cannot contain pi")
        steps = tuple(Generator(s) for s in symbols)
        if family is None:
            family = Family.C2 if steps and steps[0].sign < 0 else Family.C1
        return cls(family, steps)

    @classmethod
    def from_path(cls, family: Family, path: Sequence[int]) -> "GeneratorChain":
        """Build from choices in application order, 0 = sigma-type, 1 = tau-type."""
        gens = family.generators
        return cls(family, tuple(gens[b] for b in reversed(path)))

    @property
    def text(self) -> str:
        return "".join(g.value for g in self.steps)

    @property
    def path(self) -> tuple[int, ...]:
        return tuple(0 if g.is_sigma else 1 for g in reversed(self.steps))

    def sort_key(self) -> tuple:
        return (len(self.steps), self.family.index, self.path)

    def __len__(self) -> int:
        return len(self.steps)

    def apply(self, w):
        for g in reversed(self.steps):
            w = apply(g, w)
        return w

    def __call__(self, w):
        return self.apply(w)

    def __str__(self) -> str:
        return self.text or "1"


def parse_chain(text: str) -> list[str]:
    for pos, ch in enumerate(text, start=1):
        if ch not in CHAIN_SYMBOLS:
            raise ChainParseError(ch, pos)
    return list(text)


def symbol_automorphism(symbol: str) -> Automorphism:
    if symbol == "p":
        return PI
    if symbol == "P":
        return PI_INV
    return Generator(symbol)


def apply_symbols(symbols: Iterable[str], w: Word | CyclicWord) -> Word | CyclicWord:
    """Apply a chain text (or list of symbols), rightmost first."""
    for s in reversed(list(symbols)):
        w = apply(symbol_automorphism(s), w)
    return w


def invert_symbols(symbols: Iterable[str]) -> str:
    return "".join(symbols)[::-1].swapcase()


# Relations that agree on cyclic words, written in notation order.
RELATIONS: dict[str, str] = {
    "Ts": "pt",
    "Tp": "ps",
    "Sp": "pt",
    "sT": "pS",
    "tp": "pS",
    "sp": "pT",
    "tS": "PT",
    "tP": "PS",
    "sP": "PT",
    "St": "Ps",
    "TP": "Ps",
    "SP": "Pt",
}

_CANCEL = {"sS", "Ss", "tT", "Tt", "pP", "Pp"}


def normalize_chain(symbols: Iterable[str] | str) -> tuple[WhiteheadW1, GeneratorChain]:
    """Rewrite a chain over s S t T p P as beta * chain with a single sign.

    Repeatedly rewrites the leftmost pair that is an inverse pair, a
    generator followed by pi^+-1, or two generators of opposite sign.  Every
    rewrite lowers (generator count, total offset of the pi symbols), so the
    loop terminates with all pi symbols in front of one-signed generators.
    """
    seq = "".join(symbols) if not isinstance(symbols, str) else symbols
    parse_chain(seq)
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            pair = seq[i : i + 2]
            if pair in _CANCEL:
                seq = seq[:i] + seq[i + 2 :]
            elif pair in RELATIONS:
                seq = seq[:i] + RELATIONS[pair] + seq[i + 2 :]
            else:
                continue
            changed = True
            break
    gens = seq.lstrip("pP")
    head = seq[: len(seq) - len(gens)]
    beta = PI.power((head.count("p") - head.count("P")) % 4)
    return beta, GeneratorChain.from_text(gens)


def chain_images(symbols: Iterable[str] | str) -> tuple[Word, Word]:
    """Images of x and y under the composed automorphism."""
    symbols = list(symbols)
    return apply_symbols(symbols, Word("x")), apply_symbols(symbols, Word("y"))


def is_inner(x_image: Word, y_image: Word) -> bool:
    """True when x -> x_image, y -> y_image is conjugation by some word."""
    t = x_image.text
    i, j = _cyclic_core(t)
    if t[i:j] != "x":
        return False
    p = Word._trusted(t[:i])
    d = (p.inverse() * y_image * p).text
    m = re.fullmatch(r"(x*|X*)y(x*|X*)", d)
    if not m:
        return False
    left, right = m.groups()
    return len(left) == len(right) and (not left or left[0] != right[0])


def agree_on_cyclic_words(first: Iterable[str] | str, second: Iterable[str] | str) -> bool:
    """Exact test that two chains differ by an inner automorphism."""
    rho = invert_symbols(second) + "".join(first)
    return is_inner(*chain_images(rho))
