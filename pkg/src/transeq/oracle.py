"""Brute-force second opinion over mixed-sign generator chains.

The oracle walks every freely reduced sequence over sigma, sigma^-1, tau,
tau^-1 up to a depth and compares cyclic lengths by direct application.
It does not use the sign separation of one-signed chains nor the length
formula, so it can catch mistakes in either.
"""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numba as nb
import numpy as np

from .whitehead import (
    CHAIN_SYMBOLS,
    Generator,
    WhiteheadW2,
    apply_symbols,
    apply_w1,
    normalize_chain,
)
from .words import DEFAULT_SEED, Word, cyclic_reduce, random_cyclic_word

ORACLE_MAX_DEPTH = 12

# sigma < sigma^-1 < tau < tau^-1; the inverse of code g is g ^ 1.
ORDER = (Generator.SIGMA, Generator.SIGMA_INV, Generator.TAU, Generator.TAU_INV)
_LETTER = {"x": 0, "X": 1, "y": 2, "Y": 3}
_NONE = 1 << 62


@dataclass(frozen=True)
class MixedChain:
    """Freely reduced generator sequence in notation order."""

    steps: tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for a, b in zip(self.steps, self.steps[1:]):
            if a.inverse() is b:
                raise ValueError(f"adjacent inverse steps {a}{b}")

    @classmethod
    def from_text(cls, text: str) -> "MixedChain":
        return cls(tuple(Generator(c) for c in text))

    @property
    def text(self) -> str:
        return "".join(g.value for g in self.steps)

    def sort_key(self) -> tuple:
        return (len(self.steps), tuple(ORDER.index(g) for g in reversed(self.steps)))

    def apply(self, w):
        return apply_symbols(self.text, w)

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return self.text or "1"


def _image_table():
    # Built straight from the (S, a) definitions.
    maps = [
        WhiteheadW2({"x"}, "y"),
        WhiteheadW2({"x"}, "Y"),
        WhiteheadW2({"y"}, "x"),
        WhiteheadW2({"y"}, "X"),
    ]
    table = np.full((4, 4, 3), -1, np.int8)
    for gi, alpha in enumerate(maps):
        for c, ci in _LETTER.items():
            for k, ch in enumerate(alpha.image(c)):
                table[gi, ci, k] = _LETTER[ch]
    return table


_TABLE = _image_table()


@nb.njit(nogil=True, cache=True)
def _image_of(src, n, gen, dst, table):
    """Cyclically reduced image, compacted to the front of dst; returns length."""
    top = 0
    for i in range(n):
        c = src[i]
        for k in range(3):
            d = table[gen, c, k]
            if d < 0:
                break
            # x,X sum to 1 and y,Y to 5; no other pair does
            if top > 0 and (dst[top - 1] + d == 1 or dst[top - 1] + d == 5):
                top -= 1
            else:
                dst[top] = d
                top += 1
    lo = 0
    hi = top
    while hi - lo >= 2 and dst[lo] ^ 1 == dst[hi - 1]:
        lo += 1
        hi -= 1
    if lo:
        for i in range(hi - lo):
            dst[i] = dst[lo + i]
    return hi - lo


@nb.njit(nogil=True, cache=True)
def _walk(u, v, first, max_depth, shared, table):
    levels = max_depth + 1
    ub = [np.empty(2 * u.shape[0] + 8, np.int8) for _ in range(levels)]
    vb = [np.empty(2 * v.shape[0] + 8, np.int8) for _ in range(levels)]
    ul = np.zeros(levels, np.int64)
    vl = np.zeros(levels, np.int64)
    last = np.full(levels, -1, np.int64)
    codes = np.zeros(levels, np.int64)
    nxt = np.zeros(levels, np.int64)
    ub[0][: u.shape[0]] = u
    vb[0][: v.shape[0]] = v
    ul[0] = u.shape[0]
    vl[0] = v.shape[0]
    root = 0
    if first >= 0:
        if ub[1].shape[0] < 2 * ul[0] + 2:
            ub[1] = np.empty(4 * ul[0] + 4, np.int8)
        if vb[1].shape[0] < 2 * vl[0] + 2:
            vb[1] = np.empty(4 * vl[0] + 4, np.int8)
        ul[1] = _image_of(ub[0], ul[0], first, ub[1], table)
        vl[1] = _image_of(vb[0], vl[0], first, vb[1], table)
        last[1] = first
        codes[1] = first
        root = 1

    best_d = _NONE
    best_code = -1
    best_lu = -1
    best_lv = -1
    examined = 1
    if ul[root] != vl[root]:
        if root <= shared[0]:
            best_d, best_code, best_lu, best_lv = root, codes[root], ul[root], vl[root]
            if root < shared[0]:
                shared[0] = root
        return best_d, best_code, best_lu, best_lv, examined
    d = root
    nxt[d] = 0
    while True:
        if d == max_depth or nxt[d] >= 4 or d + 1 >= best_d or d + 1 > shared[0]:
            if d == root:
                break
            d -= 1
            continue
        g = nxt[d]
        nxt[d] += 1
        if last[d] >= 0 and g == (last[d] ^ 1):
            continue
        if ub[d + 1].shape[0] < 2 * ul[d] + 2:
            ub[d + 1] = np.empty(4 * ul[d] + 4, np.int8)
        if vb[d + 1].shape[0] < 2 * vl[d] + 2:
            vb[d + 1] = np.empty(4 * vl[d] + 4, np.int8)
        ul[d + 1] = _image_of(ub[d], ul[d], g, ub[d + 1], table)
        vl[d + 1] = _image_of(vb[d], vl[d], g, vb[d + 1], table)
        examined += 1
        c = 4 * codes[d] + g
        if ul[d + 1] != vl[d + 1]:
            best_d, best_code, best_lu, best_lv = d + 1, c, ul[d + 1], vl[d + 1]
            if d + 1 < shared[0]:
                shared[0] = d + 1
            nxt[d] = 4
            continue
        d += 1
        codes[d] = c
        last[d] = g
        nxt[d] = 0
    return best_d, best_code, best_lu, best_lv, examined


@dataclass(frozen=True)
class OracleResult:
    witness: Optional[MixedChain]
    length_u: int
    length_v: int
    depth: int
    nodes_examined: int


def search_mixed(u: Word, v: Word, depth: int, *, threads: int = 1) -> OracleResult:
    """Least mismatching mixed chain of length <= depth, with its lengths."""
    if depth > ORACLE_MAX_DEPTH:
        raise ValueError(
            f"depth {depth} exceeds the oracle cap of {ORACLE_MAX_DEPTH} "
            f"(4*3^{depth - 1} leaves)"
        )
    if depth < 0:
        raise ValueError("depth must be non-negative")
    cu, cv = cyclic_reduce(u), cyclic_reduce(v)
    a = np.array([_LETTER[c] for c in cu.text], np.int8)
    b = np.array([_LETTER[c] for c in cv.text], np.int8)
    shared = np.full(1, _NONE, np.int64)

    if threads <= 1 or depth == 0:
        runs = [_walk(a, b, -1, depth, shared, _TABLE)]
    else:
        # root alone, then the four subtrees under the first step
        jobs = [(-1, 0)] + [(g, depth) for g in range(4)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(lambda j: _walk(a, b, j[0], j[1], shared, _TABLE), jobs))

    examined = sum(r[4] for r in runs)
    found = [r for r in runs if r[0] != _NONE]
    if not found:
        return OracleResult(None, len(cu), len(cv), depth, examined)
    d, code, lu, lv, _ = min(found, key=lambda r: (r[0], r[1]))
    digits = [(code >> (2 * (d - 1 - i))) & 3 for i in range(d)]
    chain = MixedChain(tuple(ORDER[g] for g in reversed(digits)))
    return OracleResult(chain, int(lu), int(lv), depth, examined)


def decide_mixed(u: Word, v: Word, depth: int, *, threads: int = 1) -> Optional[MixedChain]:
    """None when every mixed chain of length <= depth gives equal cyclic lengths."""
    return search_mixed(u, v, depth, threads=threads).witness


@dataclass
class NormalizationReport:
    passed: int = 0
    failed: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def random_symbols(rng: random.Random, length: int, with_pi: bool = True) -> str:
    alphabet = CHAIN_SYMBOLS if with_pi else "sStT"
    return "".join(rng.choice(alphabet) for _ in range(length))


def normalization_consistency(
    samples: int, max_len: int, depth: int, seed: int = DEFAULT_SEED
) -> NormalizationReport:
    """Check that dropping the W1 part of a normalized chain keeps cyclic lengths.

    Each sample is a random chain over s S t T p P of length <= depth and a
    random cyclic word of length <= max_len.
    """
    rng = random.Random(seed)
    report = NormalizationReport()
    for _ in range(samples):
        symbols = random_symbols(rng, rng.randint(0, depth))
        w = random_cyclic_word(rng, rng.randint(0, max_len))
        beta, chain = normalize_chain(symbols)
        direct = apply_symbols(symbols, w)
        reduced = chain.apply(w)
        if len(direct) == len(reduced) and direct == apply_w1(beta, reduced):
            report.passed += 1
        else:
            report.failed += 1
            report.failures.append((symbols, w.text))
    return report
