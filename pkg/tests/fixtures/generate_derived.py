"""Regenerate derived.json.

Run from the repository root:

    python tests/fixtures/generate_derived.py

CLI-backed values are produced by running the recorded command; the rest
come from the brute-force helpers below, which only use plain string
manipulation (no transeq code).
"""
from __future__ import annotations

import itertools
import json
import shlex
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
SELF = "python tests/fixtures/generate_derived.py"


def _reduce(text: str) -> str:
    changed = True
    while changed:
        changed = False
        for i in range(len(text) - 1):
            if text[i] == text[i + 1].swapcase():
                text = text[:i] + text[i + 2 :]
                changed = True
                break
    return text


def _inverse(text: str) -> str:
    return text[::-1].swapcase()


def _rotations(text: str) -> list[str]:
    return [text[i:] + text[:i] for i in range(len(text))] or [""]


def brute_count_pair(w: str, a: str, b: str) -> int:
    """Scan every cyclic position of w for ab or b^-1 a^-1."""
    hits = 0
    n = len(w)
    for i in range(n):
        pair = w[i] + w[(i + 1) % n]
        if pair == a + b or pair == b.swapcase() + a.swapcase():
            hits += 1
    return hits


def brute_cyclic_reduce(w: str) -> str:
    """Shortest word all of whose rotations are reduced among conjugates g w g^-1, |g| <= |w|."""
    best = None
    for k in range(len(w) + 1):
        for g in itertools.product("xXyY", repeat=k):
            g = _reduce("".join(g))
            c = _reduce(g + w + _inverse(g))
            if all(_reduce(r) == r for r in _rotations(c)):
                if best is None or len(c) < len(best):
                    best = c
    key = str.maketrans("xXyY", "abcd")
    return min(_rotations(best), key=lambda r: r.translate(key))


SIGMA = {"x": "xy", "X": "YX", "y": "y", "Y": "Y"}
TAU = {"x": "x", "X": "X", "y": "yx", "Y": "XY"}


def brute_cyclic_image(images: dict, w: str) -> str:
    c = _reduce("".join(images[ch] for ch in w))
    while len(c) > 1 and c[0] == c[-1].swapcase():
        c = c[1:-1]
    return c


def brute_tree_nodes(bound: int) -> int:
    """Count nodes of the one-family chain tree by walking it."""
    count = 0
    stack = [0]
    while stack:
        depth = stack.pop()
        count += 1
        if depth < bound:
            stack.extend([depth + 1, depth + 1])
    return count


def run_cli(command: str):
    argv = shlex.split(command)
    assert argv[0] == "transeq"
    proc = subprocess.run(
        [sys.executable, "-m", "transeq", *argv[1:]], capture_output=True, text=True
    )
    return proc.returncode, json.loads(proc.stdout)


def main() -> None:
    entries = []

    def add(key, command, value, note=""):
        entries.append({"id": key, "command": command, "value": value, "note": note})

    for w, a, b in [("xy", "x", "y"), ("xyxY", "y", "X"), ("x", "x", "x"), ("x", "x", "y"), ("x", "x", "X")]:
        add(
            f"count_pair/{w}/{a}{b}",
            f"{SELF}  # brute_count_pair({w!r}, {a!r}, {b!r})",
            brute_count_pair(w, a, b),
            "scan of both patterns over all cyclic positions",
        )

    for w in ["Yxyy", "xyX", "yxYxXy"]:
        add(
            f"cyclic_reduce/{w}",
            f"{SELF}  # brute_cyclic_reduce({w!r})",
            brute_cyclic_reduce(w),
            "exhaustive conjugator search up to |w|",
        )

    for name, images, w in [("t", TAU, "yX"), ("t", TAU, "xy"), ("s", SIGMA, "x")]:
        image = brute_cyclic_image(images, w)
        add(
            f"image/{name}/{w}",
            f"{SELF}  # brute_cyclic_image({name}, {w!r})",
            {"image": image, "length": len(image)},
            "direct substitution and reduction",
        )

    for bound in range(0, 7):
        add(f"tree_nodes/{bound}", f"{SELF}  # brute_tree_nodes({bound})", brute_tree_nodes(bound))

    for command in [
        "transeq spectrum x --depth 1 --json",
        "transeq spectrum y --depth 1 --json",
        "transeq spectrum '' --depth 3 --json",
        "transeq decide xxyxyy yyxyxx --bound 15 --json",
        "transeq oracle xxyxyy yyxyxx --depth 8 --json",
        "transeq oracle xxyxyy yyxyxx --depth 9 --json",
    ]:
        status, out = run_cli(command)
        out.pop("ms", None)
        add(command.replace(" --json", ""), command, {"status": status, "output": out})

    path = HERE / "derived.json"
    path.write_text(json.dumps(entries, indent=2) + "\n")
    print(f"wrote {len(entries)} entries to {path}")


if __name__ == "__main__":
    main()
