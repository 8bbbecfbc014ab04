import subprocess
import sys

import pytest

from conftest import INFERENCE_KB_TEXT, PK1_TEXT
from penaltylogic.cli import run

FIVE_VERTEX_GRAPH = "p edge 5 5\ne 1 2\ne 2 3\ne 2 4\ne 3 4\ne 4 5\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "pk1": PK1_TEXT,
        "inf": INFERENCE_KB_TEXT,
        "pk2": "5 a\n3 a\n10 b\n",
        "pk3": "8 a\n10 b\n",
        "pk4": "18 a & b\n",
        "graph": FIVE_VERTEX_GRAPH,
        "bad": "5 a &\n",
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


@pytest.mark.parametrize(
    "argv, out, status",
    [
        (["solve", "{pk1}"], "optimum 5\na b !c\n", 0),
        (["solve", "{pk1}", "--one", "--order", "lexicographic"], "optimum 5\na b !c\n", 0),
        (["cost", "{pk1}", "--formula", "a -> c"], "7\n", 0),
        (["cost", "{pk1}", "--formula", "!a"], "inf\n", 0),
        (["cost", "{pk1}"], "5\n", 0),
        (["cost", "{pk1}", "--world", "a b c"], "12\n", 0),
        (["cost", "{pk1}", "--subtheory", "1,2,3"], "7\n", 0),
        (["cost", "{pk1}", "--subtheory", "2,4"], "inf\n", 0),
        (["entail", "{inf}", "--conclusion", "!c"], "true\n", 0),
        (["entail", "{inf}", "--premise", "a", "--conclusion", "c"], "true\n", 0),
        (["entail", "{inf}", "--premise", "a & b", "--conclusion", "!c", "--by-subtheories"], "true\n", 0),
        (["entail", "{inf}", "--premise", "a & b", "--conclusion", "c", "--reduction"], "false\n", 1),
        (["subtheories", "{pk1}"], "{1,2,4} cost 5\n", 0),
        (["subtheories", "{pk1}", "--formula", "a -> c"], "{1,2,3} cost 7\n", 0),
        (["equiv", "{pk2}", "{pk3}"], "true\n", 0),
        (["equiv", "{pk3}", "{pk4}"], "false\n", 1),
        (["cheaper", "{pk3}", "{pk4}"], "true\n", 0),
        (["normalize", "{pk2}"], "8 a\n10 b\n", 0),
        (["clique", "{graph}"], "clique v2 v3 v4\nsize 3\ncost 2\n", 0),
        (["ds-order", "{pk1}", "--formula", "a & b"], "exponent 5 multiplicity 1\n", 0),
        (["ds-order", "{pk1}", "--formula", "!a"], "exponent inf multiplicity 0\n", 0),
        (["ds-check", "{pk1}"], "max_deviation 0\n", 0),
    ],
)
def test_golden(files, argv, out, status):
    argv = [a.format(**files) for a in argv]
    got = run(argv)
    assert got[0] == out
    assert got[2] == status


def test_oracle_flags_agree(files):
    for argv in (["solve", files["pk1"]], ["cost", files["pk1"], "--formula", "a & b"]):
        assert run(argv)[0] == run(argv + ["--oracle"])[0]
    argv = ["entail", files["inf"], "--premise", "a", "--conclusion", "c"]
    assert run(argv)[0] == run(argv + ["--oracle"])[0]


def test_postulates_command(files):
    out, _, status = run(["entail", files["inf"], "--postulates", "T", "a", "b", "!c"])
    assert status == 0
    assert "rational_monotony: pass" in out


def test_encode_and_export(files):
    out, _, status = run(["encode-clique", files["graph"]])
    assert status == 0
    assert out.splitlines()[0] == "1 v1"
    assert len(out.splitlines()) == 10
    out, _, _ = run(["export-wcnf", files["pk1"]])
    assert "p wcnf 3 4 23" in out
    _, err, status = run(["export-wcnf", files["pk4"]])
    assert status == 2
    assert "not a clause" in err


def test_stdin_input():
    out, _, status = run(["cost", "-", "--formula", "a & b"], stdin=PK1_TEXT)
    assert (out, status) == ("5\n", 0)


def test_ds_order_with_plausibility(files):
    out, _, _ = run(["ds-order", files["pk1"], "--plausibility"])
    lines = out.splitlines()
    assert lines[0] == "exponent 5 multiplicity 1"
    assert lines[1].startswith("plausibility ")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["solve"],
        ["entail", "{pk1}"],
        ["cost", "{pk1}", "--formula", "a &&"],
        ["solve", "{bad}"],
        ["solve", "/nonexistent/file"],
        ["cost", "{pk1}", "--subtheory", "9"],
    ],
)
def test_usage_errors(files, argv):
    _, err, status = run([a.format(**files) for a in argv])
    assert status == 2
    assert err


def test_parse_error_reports_position(files):
    _, err, _ = run(["solve", files["bad"]])
    assert "line 1" in err and "column" in err


def test_cap_exceeded(tmp_path):
    p = tmp_path / "wide.txt"
    p.write_text("".join(f"1 x{i}\n" for i in range(25)))
    _, err, status = run(["solve", str(p)])
    assert status == 3
    assert "cap" in err


def test_reruns_are_byte_identical(files):
    argv = ["solve", files["inf"]]
    assert run(argv) == run(argv)


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "penaltylogic", "cost", files["pk1"], "--formula", "a & b"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "5\n"
