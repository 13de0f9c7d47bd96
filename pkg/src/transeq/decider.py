"""Bounded enumeration of (C1)/(C2) chains deciding translation equivalence.

Two cyclic words u, v are compared at every node of the two binary trees
of one-signed chains of length at most 2||u|| + 3.  The compiled search
keeps one buffer per tree level and never materializes the deepest level:
leaf lengths come from the letter and pair counts of their parent.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numba as nb
import numpy as np

from .whitehead import (
    Family,
    Generator,
    GeneratorChain,
    _apply_cyclic_text,
    predicted_length,
)
from .words import CyclicWord, Word, cyclic_length, cyclic_reduce

# Beyond this cyclic length the full tree exceeds 2^28 nodes.
MAX_INPUT_LENGTH = 12
MAX_DEFAULT_BOUND = 2 * MAX_INPUT_LENGTH + 3
SPECTRUM_MAX_DEPTH = 16

_CODE = {"x": 0, "X": 1, "y": 2, "Y": 3}
_NONE = 1 << 62


def omega_bound(u: Word | CyclicWord) -> int:
    return 2 * cyclic_length(u) + 3


@dataclass(frozen=True)
class Witness:
    chain: GeneratorChain
    length_u: int
    length_v: int


@dataclass(frozen=True)
class SearchStats:
    # Position of the witness in canonical chain order, or the full tree size.
    nodes_visited: int
    max_word_length: int
    bound_used: int
    # Nodes the search actually touched; depends on pruning and threads.
    nodes_examined: int = 0
    consistency_violations: int = 0


@dataclass(frozen=True)
class DecisionResult:
    equivalent: bool
    witness: Optional[Witness]
    stats: SearchStats


def tree_size(bound: int) -> int:
    """Nodes in one family's tree of chains of length <= bound."""
    return (1 << (bound + 1)) - 1


def canonical_position(depth: int, family: Family, code: int) -> int:
    """1-based rank of a chain among all chains of both families."""
    return 2 * ((1 << depth) - 1) + family.index * (1 << depth) + code + 1


# ---------------------------------------------------------------------------
# compiled search


def _tables():
    img = np.zeros((4, 4, 2), np.int8)
    size = np.zeros((4, 4), np.int8)
    pairs = np.zeros((4, 4), np.int8)
    gens = [Generator.SIGMA, Generator.TAU, Generator.SIGMA_INV, Generator.TAU_INV]
    mirror = {
        Generator.SIGMA: ("xY", "yX"),
        Generator.TAU: ("yX", "xY"),
        Generator.SIGMA_INV: ("xy", "YX"),
        Generator.TAU_INV: ("yx", "XY"),
    }
    for gi, g in enumerate(gens):
        for c, ci in _CODE.items():
            image = g.image(c)
            size[gi, ci] = len(image)
            for k, ch in enumerate(image):
                img[gi, ci, k] = _CODE[ch]
        p, q = mirror[g]
        pairs[gi] = [_CODE[p[0]], _CODE[p[1]], _CODE[q[0]], _CODE[q[1]]]
    return img, size, pairs


_IMG, _SIZE, _PAIRS = _tables()


@nb.njit(nogil=True, cache=True)
def _apply(src, start, n, gen, dst, img, size):
    top = 0
    for i in range(start, start + n):
        c = src[i]
        for k in range(size[gen, c]):
            d = img[gen, c, k]
            if top > 0 and dst[top - 1] == (d ^ 1):
                top -= 1
            else:
                dst[top] = d
                top += 1
    lo = 0
    hi = top - 1
    while hi > lo and dst[lo] == (dst[hi] ^ 1):
        lo += 1
        hi -= 1
    return lo, hi + 1 - lo


@nb.njit(nogil=True, cache=True)
def _child_lengths(buf, start, n, fam, pairs):
    """Cyclic lengths of the sigma-type and tau-type children."""
    if n == 0:
        return 0, 0
    gs = 2 * fam
    gt = gs + 1
    nx = 0
    ps = 0
    pt = 0
    for i in range(n):
        a = buf[start + i]
        b = buf[start + i + 1] if i + 1 < n else buf[start]
        if a < 2:
            nx += 1
        if (a == pairs[gs, 0] and b == pairs[gs, 1]) or (a == pairs[gs, 2] and b == pairs[gs, 3]):
            ps += 1
        if (a == pairs[gt, 0] and b == pairs[gt, 1]) or (a == pairs[gt, 2] and b == pairs[gt, 3]):
            pt += 1
    return n + nx - 2 * ps, n + (n - nx) - 2 * pt


@nb.njit(nogil=True, cache=True)
def _allowed(d, fam, local_best, shared):
    if d >= local_best:
        return False
    if fam == 0:
        return d <= shared[0] and d <= shared[1]
    return d < shared[0] and d <= shared[1]


@nb.njit(nogil=True, cache=True)
def _search(u, v, fam, prefix, max_depth, shared, verify, img, size, pairs):
    levels = max_depth + 1
    ub = [np.empty(2 * u.shape[0] + 8, np.int8) for _ in range(levels)]
    vb = [np.empty(2 * v.shape[0] + 8, np.int8) for _ in range(levels)]
    us = np.zeros(levels, np.int64)
    ul = np.zeros(levels, np.int64)
    vs = np.zeros(levels, np.int64)
    vl = np.zeros(levels, np.int64)
    codes = np.zeros(levels, np.int64)
    nxt = np.zeros(levels, np.int64)
    ub[0][: u.shape[0]] = u
    vb[0][: v.shape[0]] = v
    ul[0] = u.shape[0]
    vl[0] = v.shape[0]

    root = prefix.shape[0]
    code = 0
    for i in range(root):
        gen = 2 * fam + prefix[i]
        need = 2 * ul[i] + 2
        if ub[i + 1].shape[0] < need:
            ub[i + 1] = np.empty(2 * need, np.int8)
        lo, ln = _apply(ub[i], us[i], ul[i], gen, ub[i + 1], img, size)
        us[i + 1] = lo
        ul[i + 1] = ln
        need = 2 * vl[i] + 2
        if vb[i + 1].shape[0] < need:
            vb[i + 1] = np.empty(2 * need, np.int8)
        lo, ln = _apply(vb[i], vs[i], vl[i], gen, vb[i + 1], img, size)
        vs[i + 1] = lo
        vl[i + 1] = ln
        code = 2 * code + prefix[i]
    codes[root] = code

    best_d = _NONE
    best_code = -1
    best_lu = -1
    best_lv = -1
    examined = 1
    violations = 0
    maxlen = max(ul[root], vl[root])
    if ul[root] != vl[root]:
        if _allowed(root, fam, best_d, shared):
            best_d = root
            best_code = code
            best_lu = ul[root]
            best_lv = vl[root]
            if root < shared[fam]:
                shared[fam] = root
        return best_d, best_code, best_lu, best_lv, examined, maxlen, violations
    if root == max_depth:
        return best_d, best_code, best_lu, best_lv, examined, maxlen, violations

    d = root
    nxt[d] = 0
    while True:
        if nxt[d] >= 2 or not _allowed(d + 1, fam, best_d, shared):
            if d == root:
                break
            d -= 1
            continue
        if d + 1 == max_depth and not verify:
            cu0, cu1 = _child_lengths(ub[d], us[d], ul[d], fam, pairs)
            cv0, cv1 = _child_lengths(vb[d], vs[d], vl[d], fam, pairs)
            nxt[d] = 2
            examined += 1
            maxlen = max(maxlen, cu0, cv0)
            if cu0 != cv0:
                best_d, best_code, best_lu, best_lv = d + 1, 2 * codes[d], cu0, cv0
                if d + 1 < shared[fam]:
                    shared[fam] = d + 1
                continue
            examined += 1
            maxlen = max(maxlen, cu1, cv1)
            if cu1 != cv1:
                best_d, best_code, best_lu, best_lv = d + 1, 2 * codes[d] + 1, cu1, cv1
                if d + 1 < shared[fam]:
                    shared[fam] = d + 1
            continue

        g = nxt[d]
        nxt[d] += 1
        gen = 2 * fam + g
        if verify:
            pu0, pu1 = _child_lengths(ub[d], us[d], ul[d], fam, pairs)
            pv0, pv1 = _child_lengths(vb[d], vs[d], vl[d], fam, pairs)
        need = 2 * ul[d] + 2
        if ub[d + 1].shape[0] < need:
            ub[d + 1] = np.empty(2 * need, np.int8)
        lo, ln = _apply(ub[d], us[d], ul[d], gen, ub[d + 1], img, size)
        us[d + 1] = lo
        ul[d + 1] = ln
        need = 2 * vl[d] + 2
        if vb[d + 1].shape[0] < need:
            vb[d + 1] = np.empty(2 * need, np.int8)
        lo, ln = _apply(vb[d], vs[d], vl[d], gen, vb[d + 1], img, size)
        vs[d + 1] = lo
        vl[d + 1] = ln
        lu = ul[d + 1]
        lv = vl[d + 1]
        if verify:
            if g == 0 and (lu != pu0 or lv != pv0):
                violations += 1
            if g == 1 and (lu != pu1 or lv != pv1):
                violations += 1
        examined += 1
        maxlen = max(maxlen, lu, lv)
        c = 2 * codes[d] + g
        if lu != lv:
            best_d, best_code, best_lu, best_lv = d + 1, c, lu, lv
            if d + 1 < shared[fam]:
                shared[fam] = d + 1
            nxt[d] = 2
            continue
        if d + 1 < max_depth:
            d += 1
            codes[d] = c
            nxt[d] = 0
    return best_d, best_code, best_lu, best_lv, examined, maxlen, violations


def _codes(w: CyclicWord) -> np.ndarray:
    return np.array([_CODE[c] for c in w.text], dtype=np.int8)


def _tasks(bound: int, threads: int) -> list[tuple[Family, tuple[int, ...], int]]:
    """(family, prefix, max depth) triples covering both trees exactly once."""
    split = 0 if threads <= 1 else min(2, bound)
    tasks = []
    for family in (Family.C1, Family.C2):
        if split == 0:
            tasks.append((family, (), bound))
            continue
        tasks.append((family, (), split - 1))
        for code in range(1 << split):
            prefix = tuple((code >> (split - 1 - i)) & 1 for i in range(split))
            tasks.append((family, prefix, bound))
    return tasks


def _run_search(cu: CyclicWord, cv: CyclicWord, bound: int, threads: int, verify: bool):
    u, v = _codes(cu), _codes(cv)
    shared = np.full(2, _NONE, dtype=np.int64)

    def run(task):
        family, prefix, depth = task
        return family, _search(
            u, v, family.index, np.array(prefix, dtype=np.int64), depth, shared,
            verify, _IMG, _SIZE, _PAIRS,
        )

    tasks = _tasks(bound, threads)
    if threads <= 1:
        results = [run(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, tasks))

    best = None
    examined = maxlen = violations = 0
    for family, (d, code, lu, lv, n, m, bad) in results:
        examined += n
        maxlen = max(maxlen, m)
        violations += bad
        if d != _NONE:
            key = (d, family.index, code)
            if best is None or key < best[0]:
                best = (key, family, lu, lv)
    return best, examined, maxlen, violations


def decide(
    u: Word,
    v: Word,
    bound_override: int | None = None,
    *,
    threads: int = 1,
    verify: bool = False,
) -> DecisionResult:
    """Check ||psi(u)|| = ||psi(v)|| over every one-signed chain of length <= bound.

    Without ``bound_override`` the bound is 2||u|| + 3, which decides
    translation equivalence.  A failing result carries the canonical least
    witness.  ``verify`` recomputes every materialized length from the
    parent's counts and reports disagreements in the stats.
    """
    cu, cv = cyclic_reduce(u), cyclic_reduce(v)
    bound = omega_bound(cu) if bound_override is None else bound_override
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if len(cu) != len(cv):
        witness = Witness(GeneratorChain(Family.C1), len(cu), len(cv))
        stats = SearchStats(1, max(len(cu), len(cv)), bound, 1)
        return DecisionResult(False, witness, stats)

    best, examined, maxlen, violations = _run_search(cu, cv, bound, threads, verify)
    if best is None:
        stats = SearchStats(2 * tree_size(bound), maxlen, bound, examined, violations)
        return DecisionResult(True, None, stats)
    (depth, _, code), family, lu, lv = best
    path = [(code >> (depth - 1 - i)) & 1 for i in range(depth)]
    witness = Witness(GeneratorChain.from_path(family, path), int(lu), int(lv))
    stats = SearchStats(
        canonical_position(depth, family, code), maxlen, bound, examined, violations
    )
    return DecisionResult(False, witness, stats)


# ---------------------------------------------------------------------------
# reference traversal


def search_tree(
    u: CyclicWord,
    v: CyclicWord,
    family: Family,
    bound: int,
    on_node: Callable[[GeneratorChain, int, int], None] | None = None,
    *,
    check_predicted: bool = False,
) -> Optional[Witness]:
    """Visit every chain of ``family`` with length <= bound, depth first.

    Plain Python, no pruning, for cross-checking the compiled search.
    Returns the canonical least mismatch, if any.
    """
    gens = family.generators
    best: list = []

    def visit(path: list[int], tu: str, tv: str):
        lu, lv = len(tu), len(tv)
        chain = None
        if on_node is not None or lu != lv:
            chain = GeneratorChain.from_path(family, path)
        if on_node is not None:
            on_node(chain, lu, lv)
        if lu != lv:
            key = chain.sort_key()
            if not best or key < best[0][0]:
                best[:] = [(key, Witness(chain, lu, lv))]
        if len(path) == bound:
            return
        for b, g in enumerate(gens):
            cu = _apply_cyclic_text(g, tu)
            cv = _apply_cyclic_text(g, tv)
            if check_predicted:
                for parent, child in ((tu, cu), (tv, cv)):
                    expected = predicted_length(g, CyclicWord._trusted(parent))
                    if expected != len(child):
                        raise RuntimeError(
                            f"predicted length {expected} != {len(child)} for {g} on {parent!r}"
                        )
            path.append(b)
            visit(path, cu, cv)
            path.pop()

    visit([], u.text, v.text)
    return best[0][1] if best else None


def decide_reference(u: Word, v: Word, bound_override: int | None = None) -> DecisionResult:
    """Same contract as :func:`decide`, via the Python traversal of both trees."""
    cu, cv = cyclic_reduce(u), cyclic_reduce(v)
    bound = omega_bound(cu) if bound_override is None else bound_override
    counter = {"nodes": 0, "max": 0}

    def count(chain, lu, lv):
        counter["nodes"] += 1
        counter["max"] = max(counter["max"], lu, lv)

    found = [search_tree(cu, cv, f, bound, count) for f in (Family.C1, Family.C2)]
    found = [w for w in found if w is not None]
    if not found:
        stats = SearchStats(2 * tree_size(bound), counter["max"], bound, counter["nodes"])
        return DecisionResult(True, None, stats)
    w = min(found, key=lambda w: w.chain.sort_key())
    code = int("".join(map(str, w.chain.path)) or "0", 2)
    stats = SearchStats(
        canonical_position(len(w.chain), w.chain.family, code),
        counter["max"], bound, counter["nodes"],
    )
    return DecisionResult(False, w, stats)


def orbit_length_spectrum(u: Word, depth: int) -> dict[GeneratorChain, int]:
    """||psi(u)|| for every one-signed chain psi of length <= depth, canonical order."""
    if depth > SPECTRUM_MAX_DEPTH:
        raise ValueError(
            f"depth {depth} exceeds the spectrum cap of {SPECTRUM_MAX_DEPTH} "
            f"({2 * tree_size(depth)} chains)"
        )
    if depth < 0:
        raise ValueError("depth must be non-negative")
    cu = cyclic_reduce(u)
    out: dict[GeneratorChain, int] = {}

    def record(chain, lu, _lv):
        out[chain] = lu

    for family in (Family.C1, Family.C2):
        search_tree(cu, cu, family, depth, record)
    return dict(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


def timed_decide(u: Word, v: Word, bound_override: int | None = None, **kw):
    """decide() plus elapsed wall time in milliseconds."""
    t0 = time.perf_counter()
    result = decide(u, v, bound_override, **kw)
    return result, int((time.perf_counter() - t0) * 1000)
