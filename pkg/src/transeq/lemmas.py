"""Randomized checks of the identities the decision procedure rests on.

Every check draws from one seeded ``random.Random`` so a run is
reproducible from its seed.  A check returns a :class:`PropertyResult`
holding up to a handful of counterexamples rendered as text.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .whitehead import (
    PI,
    RELATIONS,
    Family,
    Generator,
    _apply_cyclic_text,
    agree_on_cyclic_words,
    all_w1,
    all_w2,
    apply_generator,
    apply_symbols,
    apply_to_cyclic,
    apply_w1,
    bar,
    classify_w2,
    normalize_chain,
    predicted_length,
)
from .words import (
    ALPHABET,
    DEFAULT_SEED,
    CyclicWord,
    count_letter,
    cyclic_reduce,
    pair_counts,
    random_cyclic_word,
    random_word,
)

MAX_COUNTEREXAMPLES = 5


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    failed: int = 0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def fail(self, message: str) -> None:
        self.failed += 1
        if len(self.failures) < MAX_COUNTEREXAMPLES:
            self.failures.append(message)


def _word(rng: random.Random, max_len: int, min_len: int = 0) -> CyclicWord:
    return random_cyclic_word(rng, rng.randint(min_len, max(min_len, max_len)))


def check_bar_identity(rng, samples, max_len) -> PropertyResult:
    res = PropertyResult("complement identity (S,a)(w) = (S-bar,a^-1)(w)")
    for alpha in all_w2():
        other = bar(alpha)
        for _ in range(samples):
            w = _word(rng, max_len)
            res.checked += 1
            if apply_to_cyclic(alpha, w) != apply_to_cyclic(other, w):
                res.fail(f"alpha={alpha!r} w={w.text}")
    return res


def check_w2_classification(rng, samples, max_len) -> PropertyResult:
    res = PropertyResult("W2 classification into 1, sigma^+-1, tau^+-1")
    classes = {}
    for alpha in all_w2():
        rep = classify_w2(alpha)
        classes.setdefault(rep, []).append(alpha)
        for _ in range(samples):
            w = _word(rng, max_len)
            res.checked += 1
            if apply_to_cyclic(alpha, w) != apply_to_cyclic(rep, w):
                res.fail(f"alpha={alpha!r} class={rep} w={w.text}")
    if len(classes) != 5:
        res.fail(f"expected 5 classes, got {len(classes)}")
    corpus = [_word(rng, 6, 1) for _ in range(50)] + [CyclicWord(t) for t in ("x", "y", "xy", "xY")]
    for a, b in itertools.combinations(classes, 2):
        res.checked += 1
        if all(apply_to_cyclic(a, w) == apply_to_cyclic(b, w) for w in corpus):
            res.fail(f"classes {a} and {b} agree on the whole corpus")
    return res


def check_relations(rng, samples, max_len) -> PropertyResult:
    res = PropertyResult("twelve sigma/tau/pi relations")
    for lhs, rhs in RELATIONS.items():
        res.checked += 1
        if not agree_on_cyclic_words(lhs, rhs):
            res.fail(f"{lhs} vs {rhs}: not equal up to an inner automorphism")
        for _ in range(samples):
            w = _word(rng, max_len)
            res.checked += 1
            if apply_symbols(lhs, w) != apply_symbols(rhs, w):
                res.fail(f"{lhs} vs {rhs} w={w.text}")
    return res


def check_normalization(rng, samples, max_len, max_chain: int = 12) -> PropertyResult:
    res = PropertyResult(f"chain normalization (chains up to length {max_chain})")
    word_len = min(max_len, 20)
    for _ in range(samples):
        symbols = "".join(rng.choice("sStTpP") for _ in range(rng.randint(0, max_chain)))
        beta, chain = normalize_chain(symbols)
        res.checked += 1
        if not agree_on_cyclic_words(symbols, "p" * _pi_power(beta) + chain.text):
            res.fail(f"chain={symbols!r} normal form {beta!r} {chain.text!r}")
            continue
        for _ in range(3):
            w = _word(rng, word_len)
            res.checked += 1
            if apply_symbols(symbols, w) != apply_w1(beta, chain.apply(w)):
                res.fail(f"chain={symbols!r} w={w.text}")
    return res


def _pi_power(beta) -> int:
    for r in range(4):
        if PI.power(r) == beta:
            return r
    raise ValueError(f"{beta!r} is not a power of pi")


def _orbit_nodes(tu: str, tv: str, family: Family, depth: int):
    """Yield (chain text, image of u, image of v) over one tree, depth first."""
    stack = [("", tu, tv)]
    while stack:
        chain, a, b = stack.pop()
        yield chain, a, b
        if len(chain) < depth:
            for g in reversed(family.generators):
                stack.append((g.value + chain, _apply_cyclic_text(g, a), _apply_cyclic_text(g, b)))


def _partner(rng, u):
    kind = rng.randrange(4)
    if kind == 0:
        return u.reversed()
    if kind == 1:
        return u.inverse().conjugate(random_word(rng, rng.randint(0, 4)))
    if kind == 2:
        return u.reversed().inverse()
    return random_word(rng, len(u))


def check_orbit_counts(rng, samples, max_len, depth: int = 4) -> PropertyResult:
    res = PropertyResult("letter counts agree along equal-length orbits")
    word_len = min(max_len, 16)
    held = 0
    for _ in range(samples):
        u = random_word(rng, rng.randint(1, word_len))
        v = _partner(rng, u)
        cu, cv = cyclic_reduce(u).text, cyclic_reduce(v).text
        nodes = [node for f in (Family.C1, Family.C2) for node in _orbit_nodes(cu, cv, f, depth)]
        if any(len(a) != len(b) for _, a, b in nodes):
            continue
        held += 1
        for chain, a, b in nodes:
            res.checked += 1
            wa, wb = CyclicWord._trusted(a), CyclicWord._trusted(b)
            for letter in "xy":
                if count_letter(wa, letter) != count_letter(wb, letter):
                    res.fail(f"u={u.text} v={v.text} chain={chain or '1'} letter={letter}")
    res.note = f"{held} of {samples} pairs satisfied the equal-length hypothesis"
    return res


def check_no_proper_cancellation(rng, samples, max_len) -> PropertyResult:
    res = PropertyResult("no proper cancellation after ||w|| factors of a generator")
    word_len = min(max_len, 8)
    for target in (Generator.SIGMA, Generator.TAU, Generator.SIGMA_INV, Generator.TAU_INV):
        family = Family.C1 if target.sign > 0 else Family.C2
        other = next(g for g in family.generators if g is not target)
        for _ in range(samples):
            w = _word(rng, word_len, 1)
            steps = [target] * (len(w) + rng.randint(0, 2)) + [other] * rng.randint(0, 4)
            rng.shuffle(steps)
            text = w.text
            for g in steps:
                text = _apply_cyclic_text(g, text)
            _, report = apply_generator(target, CyclicWord(text))
            res.checked += 1
            if report.proper_count:
                chain = "".join(g.value for g in reversed(steps))
                res.fail(f"generator={target} chain={chain} w={w.text}: {report.proper_count} proper")
    return res


def check_predicted_length(rng, samples, max_len) -> PropertyResult:
    res = PropertyResult("predicted cyclic length of a generator image")
    for g in Generator:
        for _ in range(samples):
            w = _word(rng, max_len)
            res.checked += 1
            actual = len(apply_to_cyclic(g, w))
            if predicted_length(g, w) != actual:
                res.fail(f"generator={g} w={w.text}: predicted {predicted_length(g, w)}, actual {actual}")
    return res


def check_cancellation_accounting(rng, samples, max_len) -> PropertyResult:
    res = PropertyResult("cancellation report matches direct application")
    for g in Generator:
        for _ in range(samples):
            w = _word(rng, max_len)
            image, report = apply_generator(g, w)
            res.checked += 1
            raw = len(w) + count_letter(w, g.active)
            if image != apply_to_cyclic(g, w) or raw - len(image) != 2 * report.total:
                res.fail(f"generator={g} w={w.text}")
    return res


def check_pair_counts(rng, samples, max_len) -> PropertyResult:
    res = PropertyResult("pair and letter count identities")
    for _ in range(samples):
        w = _word(rng, max_len)
        pc = pair_counts(w)
        res.checked += 1
        ok = pc.letter("x") + pc.letter("y") == len(w)
        ok &= all(pc.letter(a) == pc.letter(a.swapcase()) for a in ALPHABET)
        ok &= all(
            pc.pair(a, b) == pc.pair(b.swapcase(), a.swapcase())
            for a in ALPHABET
            for b in ALPHABET
        )
        if not ok:
            res.fail(f"w={w.text}")
    return res


def check_w1_length(rng, samples, max_len) -> PropertyResult:
    res = PropertyResult("W1 maps preserve cyclic length")
    for beta in all_w1():
        for _ in range(samples):
            w = _word(rng, max_len)
            res.checked += 1
            if len(apply_w1(beta, w)) != len(w):
                res.fail(f"beta={beta!r} w={w.text}")
    return res


CHECKS: list[Callable[[random.Random, int, int], PropertyResult]] = [
    check_bar_identity,
    check_w2_classification,
    check_relations,
    check_normalization,
    check_orbit_counts,
    check_no_proper_cancellation,
    check_predicted_length,
    check_cancellation_accounting,
    check_pair_counts,
    check_w1_length,
]


def run_all(samples: int = 1000, max_len: int = 100, seed: int = DEFAULT_SEED) -> list[PropertyResult]:
    rng = random.Random(seed)
    return [check(rng, samples, max_len) for check in CHECKS]
