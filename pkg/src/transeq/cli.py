"""Command line entry point: ``transeq <command> ...``.

Exit status: 0 equivalent / all checks pass, 1 not equivalent / mismatch
found / a check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import decider, lemmas, oracle
from .whitehead import PI, ChainParseError, normalize_chain
from .words import DEFAULT_SEED, WordParseError, cyclic_length, parse_word

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _word(text: str, label: str):
    try:
        return parse_word(text)
    except WordParseError as e:
        raise UsageError(f"{label}: {e}") from None


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _check_size(u, bound: int, force: bool) -> None:
    if bound <= decider.MAX_DEFAULT_BOUND:
        return
    message = (
        f"bound {bound} (||u|| = {cyclic_length(u)}) exceeds the default cap of "
        f"{decider.MAX_DEFAULT_BOUND}; the search visits {2 * decider.tree_size(bound)} chains"
    )
    if not force:
        raise UsageError(message + "; pass --force to run anyway")
    _warn(message)


def decide_record(u_text: str, v_text: str, bound: int | None, threads: int, force: bool) -> tuple[dict, bool]:
    u, v = _word(u_text, "u"), _word(v_text, "v")
    effective = decider.omega_bound(u) if bound is None else bound
    if cyclic_length(u) == cyclic_length(v):
        _check_size(u, effective, force)
    t0 = time.perf_counter()
    result = decider.decide(u, v, bound, threads=threads)
    ms = int((time.perf_counter() - t0) * 1000)
    witness = None
    if result.witness is not None:
        witness = {
            "family": result.witness.chain.family.value,
            "chain": result.witness.chain.text,
            "len_u": result.witness.length_u,
            "len_v": result.witness.length_v,
        }
    record = {
        "u": u.text,
        "v": v.text,
        "equivalent": result.equivalent,
        "bound": result.stats.bound_used,
        "witness": witness,
        "nodes": result.stats.nodes_visited,
        "ms": ms,
    }
    return record, result.equivalent


def cmd_decide(args) -> int:
    if args.bound is not None and args.bound < 0:
        raise UsageError("--bound must be non-negative")
    record, equivalent = decide_record(args.u, args.v, args.bound, args.threads, args.force)
    if args.json:
        print(json.dumps(record))
    else:
        verdict = "equivalent" if equivalent else "not equivalent"
        print(f"{verdict} (bound {record['bound']}, {record['nodes']} chains)")
        if args.witness and record["witness"]:
            w = record["witness"]
            print(f"witness: {w['chain'] or '1'} [{w['family']}]  len_u={w['len_u']} len_v={w['len_v']}")
    return EXIT_OK if equivalent else EXIT_MISMATCH


def cmd_batch(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e.strerror}") from None
    counts = {"pairs": 0, "equivalent": 0, "not_equivalent": 0, "errors": 0}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        counts["pairs"] += 1
        parts = line.split("\t") if "\t" in line else line.split()
        try:
            if len(parts) != 2:
                raise UsageError("expected two words separated by a tab")
            record, equivalent = decide_record(
                parts[0].strip(), parts[1].strip(), args.bound, args.threads, args.force
            )
        except UsageError as e:
            counts["errors"] += 1
            print(json.dumps({"line": lineno, "error": str(e)}))
            continue
        counts["equivalent" if equivalent else "not_equivalent"] += 1
        print(json.dumps(record))
    print(json.dumps({"summary": counts}))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    u = _word(args.u, "u")
    try:
        spectrum = decider.orbit_length_spectrum(u, args.depth)
    except ValueError as e:
        raise UsageError(str(e)) from None
    rows = [
        {"family": chain.family.value, "chain": chain.text, "length": length}
        for chain, length in spectrum.items()
    ]
    if args.json:
        print(json.dumps({"u": u.text, "depth": args.depth, "spectrum": rows}))
    else:
        for row in rows:
            print(f"{row['family']}\t{row['chain'] or '1'}\t{row['length']}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    u, v = _word(args.u, "u"), _word(args.v, "v")
    try:
        result = oracle.search_mixed(u, v, args.depth, threads=args.threads)
    except ValueError as e:
        raise UsageError(str(e)) from None
    witness = None
    if result.witness is not None:
        witness = {"chain": result.witness.text, "len_u": result.length_u, "len_v": result.length_v}
    if args.json:
        print(json.dumps({"u": u.text, "v": v.text, "depth": args.depth, "witness": witness}))
    elif witness is None:
        print(f"no mismatch among mixed chains of length <= {args.depth}")
    else:
        print(f"mismatch: {witness['chain'] or '1'}  len_u={witness['len_u']} len_v={witness['len_v']}")
    return EXIT_OK if witness is None else EXIT_MISMATCH


def cmd_verify_lemmas(args) -> int:
    if args.samples < 0 or args.max_len < 0:
        raise UsageError("--samples and --max-len must be non-negative")
    print(f"seed: {args.seed}")
    if args.samples == 0:
        _warn("--samples 0 draws no random cases; sampled checks pass vacuously")
    all_ok = True
    for res in lemmas.run_all(args.samples, args.max_len, args.seed):
        status = "PASS" if res.passed else "FAIL"
        note = f"; {res.note}" if res.note else ""
        print(f"{status}  {res.name}  ({res.checked} checked{note})")
        for failure in res.failures:
            print(f"      counterexample: {failure}")
        if res.failed > len(res.failures):
            print(f"      ... {res.failed - len(res.failures)} more")
        all_ok &= res.passed
    return EXIT_OK if all_ok else EXIT_MISMATCH


def cmd_normalize_chain(args) -> int:
    try:
        beta, chain = normalize_chain(args.chain)
    except ChainParseError as e:
        raise UsageError(str(e)) from None
    r = next(k for k in range(4) if PI.power(k) == beta)
    if args.json:
        print(json.dumps({"pi_power": r, "chain": chain.text, "family": chain.family.value}))
    else:
        print(f"beta: pi^{r}  (x -> {beta.image('x')}, y -> {beta.image('y')})")
        print(f"chain: {chain.text or '1'}  [{chain.family.value}]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transeq",
        description="Decide translation equivalence in the free group F2 = <x, y>. "
        "Words use x, y and X = x^-1, Y = y^-1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def threads(p):
        p.add_argument("--threads", type=int, default=1, metavar="N", help="worker threads")

    p = sub.add_parser("decide", help="decide whether U and V are translation equivalent")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--witness", action="store_true", help="print the shortest failing chain")
    p.add_argument("--json", action="store_true", help="emit one JSON record")
    p.add_argument("--bound", type=int, metavar="N", help="override the chain length bound")
    p.add_argument("--force", action="store_true", help="allow searches above the size cap")
    threads(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("batch", help="decide every tab-separated pair in FILE (JSON lines out)")
    p.add_argument("file")
    p.add_argument("--bound", type=int, metavar="N")
    p.add_argument("--force", action="store_true")
    threads(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("spectrum", help="cyclic lengths of U over all chains up to a depth")
    p.add_argument("u")
    p.add_argument("--depth", type=int, required=True, metavar="D")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("oracle", help="compare U and V over all mixed-sign chains up to a depth")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--depth", type=int, required=True, metavar="D")
    p.add_argument("--json", action="store_true")
    threads(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify-lemmas", help="run the randomized identity checks")
    p.add_argument("--samples", type=int, default=1000, metavar="N")
    p.add_argument("--max-len", type=int, default=100, metavar="L")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, metavar="S")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("normalize-chain", help="rewrite a chain over s S t T p P as pi^r * one-signed chain")
    p.add_argument("chain")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_normalize_chain)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
