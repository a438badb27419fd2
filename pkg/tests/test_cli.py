import json
import re
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from kemperman.certify import batch_verify, parse
from kemperman.cli import run
from kemperman import verify_certificate

README = Path(__file__).resolve().parents[1] / "README.md"


def kk(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, expected", [
    (["sumset", "-g", "Z6", "{0,1}", "{0,2}"], "{0,1,2,3}\n"),
    (["stab", "-g", "Z6", "{0,3,1,4}"], "{0,3}\n"),
    (["closure", "-g", "Z6", "{0,2}"], "0 + {0,2,4}\n"),
    (["deficiency", "-g", "Z5", "{0,1}"], "1 (H={0})\n"),
    (["deficiency", "-g", "Z5", "{0,1}", "{0,1}"], "1\n"),
    (["trio", "-g", "Z6", "{0}", "{0,1}"], "{0};{0,1};{1,2,3,4}  deficiency=1\n"),
    (["saturate", "-g", "Z6", "{0};{0,1};{1,2}"], "{0};{0,1};{1,2,3,4}  deficiency=1\n"),
    (["check", "-g", "Z7", "cauchy-davenport"], "cauchy-davenport Z7: instances: 16129, violations: 0\n"),
    (["enumerate", "--dedup", "-g", "Z2"], "{0};{0};{1}\n"),
])
def test_golden_outputs(capsys, argv, expected):
    code, out, _ = kk(capsys, *argv)
    assert (code, out) == (0, expected)


def test_json_records(capsys):
    _, out, _ = kk(capsys, "sumset", "--json", "-g", "Z6", "{0,1}", "{0,2}")
    assert json.loads(out) == {"sumset": [0, 1, 2, 3]}
    _, out, _ = kk(capsys, "trio", "--json", "-g", "Z6", "{0}", "{0,1}")
    assert json.loads(out) == {"A": [0], "B": [0, 1], "C": [1, 2, 3, 4], "deficiency": 1}
    _, out, _ = kk(capsys, "check", "--json", "-g", "Z5", "kneser")
    assert json.loads(out)["type"] == "summary"


def test_classify_all_lists_every_tag(capsys):
    _, first, _ = kk(capsys, "classify", "-g", "Z6", "{0,2};{0,1,3,5};{2}")
    _, every, _ = kk(capsys, "classify", "--all", "-g", "Z6", "{0,2};{0,1,3,5};{2}")
    assert first.startswith("pure-beat") and len(first.splitlines()) == 1
    assert "impure-beat H={0,2,4}" in every


def test_decompose_emits_two_step_document(capsys, tmp_path):
    code, out, _ = kk(capsys, "decompose", "-g", "Z8", "{0,1,5};{0,1,5};{4,1,5}")
    cert = parse(out)
    assert code == 0 and len(cert.steps) == 2 and verify_certificate(cert).ok
    target = tmp_path / "c.json"
    assert kk(capsys, "decompose", "-g", "Z8", "{0,1,5};{0,1,5};{4,1,5}", "--out", str(target))[0] == 0
    assert target.read_text() == out
    code, out, _ = kk(capsys, "verify", str(target))
    assert code == 0 and out == "c.json: OK\n"


def test_at_file_indirection(capsys, tmp_path):
    f = tmp_path / "trio.txt"
    f.write_text("{0};{0,1};{1,2}\n")
    code, out, _ = kk(capsys, "saturate", "-g", "Z6", f"@{f}")
    assert code == 0 and out.startswith("{0};{0,1};{1,2,3,4}")


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["sumset", "-g", "Z6", "{0,1}"],
    ["sumset", "-g", "Z6", "{0,9}", "{0}"],
    ["sumset", "-g", "Q8", "{0}", "{0}"],
    ["decompose", "-g", "Z6", "{0};{0,1};{1,2}"],
    ["check", "-g", "Z8", "vosper"],
    ["check", "-g", "Z8", "not-a-theorem"],
    ["enumerate", "-g", "Z13"],
    ["saturate", "-g", "Z6", "@/nonexistent/file"],
])
def test_domain_and_usage_errors_exit_one(capsys, argv):
    code, out, err = kk(capsys, *argv)
    assert code == 1 and err and not out


def test_verify_failures_exit_one(capsys, tmp_path):
    _, out, _ = kk(capsys, "decompose", "-g", "Z8", "{0,1,5};{0,1,5};{4,1,5}")
    doc = json.loads(out)
    doc["steps"] = doc["steps"][:1]
    (tmp_path / "cut.json").write_text(json.dumps(doc))
    code, out, _ = kk(capsys, "verify", str(tmp_path))
    assert code == 1 and "FAILED cut.json: step 0: final step not pure" in out


def test_violation_exits_two_with_report_path(capsys, tmp_path, monkeypatch):
    from kemperman import oracle

    def broken(G, rep, **_):
        rep.instances = 1
        rep.violations.append({"A": "{0}"})

    monkeypatch.setitem(oracle._CHECKS, "kneser", broken)
    monkeypatch.chdir(tmp_path)
    code, out, err = kk(capsys, "check", "-g", "Z4", "kneser")
    assert code == 2 and "kk-kneser-Z4.jsonl" in err
    record = json.loads((tmp_path / "kk-kneser-Z4.jsonl").read_text().splitlines()[0])
    assert record["repro"] == "kk check -g Z4 kneser"
    code, _, err = kk(capsys, "check", "-g", "Z4", "kneser", "--report", str(tmp_path / "r.jsonl"))
    assert code == 2 and "r.jsonl" in err


def test_atlas_writes_verifiable_representatives(capsys, tmp_path):
    code, out, _ = kk(capsys, "atlas", "--max-order", "4", "--out", str(tmp_path))
    assert code == 0 and len(out.splitlines()) == 5
    rows = [json.loads(x) for x in (tmp_path / "atlas.jsonl").read_text().splitlines()]
    assert [r["group"] for r in rows] == ["Z2", "Z3", "Z4", "Z2xZ2"]
    summary = batch_verify(tmp_path / "certificates")
    assert summary.total > 0 and not summary.failed and not summary.unreadable


def test_atlas_order_eight_rows(capsys):
    code, out, _ = kk(capsys, "atlas", "--json", "--max-order", "8")
    groups = [json.loads(x)["group"] for x in out.splitlines()]
    assert code == 0 and {"Z8", "Z2xZ4", "Z2xZ2xZ2"} <= set(groups)


def test_atlas_unwritable_path(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = kk(capsys, "atlas", "--max-order", "2", "--out", str(blocker / "sub"))
    assert code == 1 and "cannot" in err


@pytest.mark.parametrize("argv", [
    ["check", "-g", "Z16", "kneser", "--seed", "3", "--trials", "500", "--json"],
    ["check", "-g", "Z10", "purification", "--seed", "3", "--trials", "100", "--json"],
    ["enumerate", "-g", "Z5", "--dedup", "--json"],
    ["atlas", "--max-order", "5", "--json"],
])
def test_reruns_are_byte_identical(capsys, argv):
    assert kk(capsys, *argv) == kk(capsys, *argv)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kemperman.cli", "sumset", "-g", "Z6", "{0,1}", "{0,2}"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "{0,1,2,3}\n"


def _readme_examples():
    """``$ kk ...`` lines in README code blocks, each followed by its expected output."""
    text = README.read_text(encoding="utf-8")
    out = []
    for block in re.findall(r"```console\n(.*?)```", text, flags=re.S):
        current = None
        for line in block.splitlines():
            if line.startswith("$ kk "):
                current = [line[5:], []]
                out.append(current)
            elif current is not None:
                current[1].append(line)
    return [(cmd, "".join(line + "\n" for line in lines)) for cmd, lines in out]


def test_readme_has_examples():
    assert len(_readme_examples()) >= 5


@pytest.mark.parametrize("command, expected", _readme_examples() if README.exists() else [])
def test_readme_examples_match(capsys, command, expected):
    code, out, _ = kk(capsys, *shlex.split(command))
    assert code == 0
    assert out == expected
