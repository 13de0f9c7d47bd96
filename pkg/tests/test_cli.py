import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from transeq import cli, lemmas
from transeq.cli import main

GOLDEN = json.loads((FIXTURES / "golden_cli.json").read_text())


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


@pytest.mark.parametrize("case", GOLDEN, ids=lambda c: " ".join(c["argv"]) or "empty")
def test_golden(capsys, case):
    status, out, err = run(capsys, *case["argv"])
    assert status == case["status"]
    assert out == case["stdout"]
    if status == 2:
        assert err.startswith("error:")


def test_parse_error_message(capsys):
    _, _, err = run(capsys, "decide", "xz", "y")
    assert err.strip() == "error: u: invalid letter 'z' at position 2"


def strip_ms(text):
    record = json.loads(text)
    record.pop("ms")
    return record


def test_json_record(capsys):
    status, out, _ = run(capsys, "decide", "x", "y", "--witness", "--json")
    record = json.loads(out)
    assert list(record) == ["u", "v", "equivalent", "bound", "witness", "nodes", "ms"]
    assert record["witness"] == {"family": "C1", "chain": "s", "len_u": 2, "len_v": 1}
    assert status == 1


def test_json_threads_identical(capsys):
    _, a, _ = run(capsys, "decide", "xyXY", "yxYX", "--json")
    _, b, _ = run(capsys, "decide", "xyXY", "yxYX", "--json", "--threads", "4")
    assert strip_ms(a) == strip_ms(b)


def test_force_allows_large_bound(capsys):
    status, out, err = run(capsys, "decide", "x", "y", "--bound", "28")
    assert status == 2 and "--force" in err
    status, out, err = run(capsys, "decide", "x", "y", "--bound", "28", "--force")
    assert status == 1 and "warning" in err


def test_unequal_lengths_skip_cap(capsys):
    status, out, _ = run(capsys, "decide", "xyxyxyxyxyxyx", "y", "--json")
    assert status == 1 and json.loads(out)["nodes"] == 1


def test_batch(capsys, tmp_path):
    path = tmp_path / "pairs.tsv"
    path.write_text("x\ty\nxyX\ty\n\nxy yx\nxq\ty\nonly\n")
    status, out, _ = run(capsys, "batch", str(path))
    lines = [json.loads(line) for line in out.splitlines()]
    assert status == 0
    assert [r.get("equivalent") for r in lines[:3]] == [False, True, True]
    assert lines[3] == {"line": 5, "error": "u: invalid letter 'q' at position 2"}
    assert lines[4]["line"] == 6 and "error" in lines[4]
    assert lines[-1] == {"summary": {"pairs": 5, "equivalent": 2, "not_equivalent": 1, "errors": 2}}


def test_batch_empty(capsys, tmp_path):
    path = tmp_path / "empty.tsv"
    path.write_text("")
    status, out, _ = run(capsys, "batch", str(path))
    assert status == 0
    assert json.loads(out) == {"summary": {"pairs": 0, "equivalent": 0, "not_equivalent": 0, "errors": 0}}


def test_batch_unreadable(capsys, tmp_path):
    status, out, err = run(capsys, "batch", str(tmp_path / "missing.tsv"))
    assert status == 2 and out == "" and "cannot read" in err


def test_batch_lines_match_decide(capsys, tmp_path):
    path = tmp_path / "one.tsv"
    path.write_text("xyy\tyyx\n")
    _, batch_out, _ = run(capsys, "batch", str(path))
    _, decide_out, _ = run(capsys, "decide", "xyy", "yyx", "--json")
    assert strip_ms(batch_out.splitlines()[0]) == strip_ms(decide_out)


def test_spectrum(capsys, derived):
    _, out, _ = run(capsys, "spectrum", "x", "--depth", "1", "--json")
    expected = derived["transeq spectrum x --depth 1"]["value"]["output"]
    assert json.loads(out) == expected
    _, text, _ = run(capsys, "spectrum", "x", "--depth", "1")
    assert text.splitlines()[0] == "C1\t1\t1"
    assert len(text.splitlines()) == len(expected["spectrum"])


def test_oracle_json(capsys):
    status, out, _ = run(capsys, "oracle", "x", "y", "--depth", "3", "--json")
    assert status == 1
    assert json.loads(out)["witness"] == {"chain": "s", "len_u": 2, "len_v": 1}


def test_normalize_json(capsys):
    _, out, _ = run(capsys, "normalize-chain", "tS", "--json")
    assert json.loads(out) == {"pi_power": 3, "chain": "T", "family": "C2"}


def test_verify_lemmas_small(capsys):
    status, out, _ = run(capsys, "verify-lemmas", "--samples", "20", "--max-len", "12")
    lines = out.splitlines()
    assert status == 0
    assert lines[0] == f"seed: {cli.DEFAULT_SEED}"
    assert sum(line.startswith("PASS") for line in lines) == len(lemmas.CHECKS)


def test_verify_lemmas_zero_samples_warns(capsys):
    status, out, err = run(capsys, "verify-lemmas", "--samples", "0")
    assert status == 0 and "warning" in err


def test_verify_lemmas_catches_injected_fault(capsys, monkeypatch):
    real = lemmas.predicted_length

    def off_by_one(g, w):
        return real(g, w) + (1 if len(w) % 3 == 1 else 0)

    monkeypatch.setattr(lemmas, "predicted_length", off_by_one)
    status, out, _ = run(capsys, "verify-lemmas", "--samples", "50", "--max-len", "20")
    assert status == 1
    failing = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert len(failing) == 1 and "predicted" in failing[0]
    assert "counterexample" in out


def test_entry_point_module():
    proc = subprocess.run(
        [sys.executable, "-m", "transeq", "decide", "x", "y"], capture_output=True, text=True
    )
    assert proc.returncode == 1
    assert proc.stdout.startswith("not equivalent")
