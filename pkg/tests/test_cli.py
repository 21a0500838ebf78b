import json
import subprocess
import sys

import pytest

from ramsey3.cli import main
from ramsey3.constructions import fano
from ramsey3.core import read_hypergraph

from conftest import validate


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_classify_text(capsys, tmp_path):
    path = tmp_path / "fano.h3"
    path.write_text(fano().to_text())
    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0
    assert out.strip() == "regime=SingleExpZone min_ell=2 bound=2^{O(q^2 log q)}"


def test_classify_json_schema(capsys):
    for g in ("fano", "fig2", "star:h=4", "blowup_example"):
        code, doc = run_json(capsys, "classify", g, "--l1")
        assert code == 0
        validate(doc, "verdict")
    assert doc["l1_member"] is False


def test_classify_json_to_file(capsys, tmp_path):
    out = tmp_path / "v.json"
    code, _, _ = run(capsys, "classify", "clique:n=4", "--json", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["min_ell"] == "inf" and doc["regime"] == "DoubleExp"


def test_check_round_trip(capsys, tmp_path):
    out = tmp_path / "v.json"
    run(capsys, "classify", "fig2", "--json", str(out))
    assert run(capsys, "check", "fig2", str(out))[0] == 0
    code, _, _ = run(capsys, "check", "fano", str(out))
    assert code == 1


def test_gen_writes_text(capsys, tmp_path):
    out = tmp_path / "g.h3"
    assert run(capsys, "gen", "steiner_f2", "--m", "3", "-o", str(out))[0] == 0
    assert read_hypergraph(out).m == 7
    code, text, _ = run(capsys, "gen", "star", "--h", "4")
    assert code == 0 and text.startswith("4 3\n")
    code, text, _ = run(capsys, "gen", "random", "--n", "8", "--p", "1/2", "--seed", "3")
    assert code == 0


def test_color(capsys):
    code, out, _ = run(capsys, "color", "--oracle", "phi-q:q=4", "--triple", "1", "4", "6")
    assert code == 0 and out.strip() == "(1,1)"
    code, doc = run_json(capsys, "color", "--oracle", "phi-q:q=4", "--triple", "1", "4", "6")
    validate(doc, "color")
    assert doc["label"] == {"kind": "Pair", "t": 1, "s": 1}


def test_search(capsys):
    code, doc = run_json(capsys, "search", "--oracle", "phi-q:q=4", "--pattern", "star:h=4", "--window", "0", "16")
    assert code == 0 and doc["embedding"] == [0, 4, 5, 6]
    validate(doc, "search")
    code, doc = run_json(capsys, "search", "--oracle", "phi-q:q=4", "--pattern", "clique:n=4", "--window", "0", "16")
    assert code == 1 and doc["found"] is False
    validate(doc, "search")


def test_audit(capsys):
    code, doc = run_json(capsys, "audit", "--oracle", "phi-q:q=4", "--window", "0", "16", "--h", "4")
    assert code == 0 and doc["all_pass"] and doc["subsets_examined"] == 1820
    validate(doc, "audit")


def test_bound(capsys):
    code, doc = run_json(capsys, "bound", "upper", "--q", "2", "--h", "4", "--ell", "1", "--t", "8")
    assert code == 0 and int(doc["value"]) == 2**384
    validate(doc, "bound")
    code, out, _ = run(capsys, "bound", "tower", "--k", "3", "--x", "2")
    assert out.strip() == "16"
    assert run(capsys, "bound", "tower", "--k", "6", "--x", "3", "--budget", "1000")[0] == 3


def test_arrows(capsys):
    code, doc = run_json(capsys, "arrows", "--N", "6", "--pattern", "star:h=4", "--q", "2")
    assert code == 1 and doc["arrows"] is False and len(doc["coloring"]) == 20
    validate(doc, "arrows")
    code, doc = run_json(capsys, "arrows", "--pattern", "star:h=4", "--q", "1", "--cap", "6")
    assert code == 0 and doc["ramsey"] == 4
    validate(doc, "arrows")
    assert run(capsys, "arrows", "--N", "6", "--pattern", "star:h=4", "--budget", "3")[0] == 3


def test_suite_examples(capsys):
    code, doc = run_json(capsys, "suite", "paper")
    validate(doc, "suite")
    assert code == (0 if doc["all_pass"] else 1)


def test_suite_random(capsys):
    code, doc = run_json(capsys, "suite", "random", "--n", "8", "--C", "20", "--samples", "4", "--seed", "2")
    assert code == 0
    validate(doc, "suite")
    assert "runtimes" not in doc


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "no/such/file.h3"],
        ["color", "--oracle", "phi-q:q=5", "--triple", "0", "1", "2"],
        ["color", "--oracle", "phi-q:q=4", "--triple", "2", "1", "0"],
        ["search", "--oracle", "nope", "--pattern", "fano"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv", [["frobnicate"], ["classify"], ["classify", "fano", "--nope"], ["bound", "upper", "--q", "2"]])
def test_parser_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_malformed_file_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.h3"
    path.write_text("3 2\n0 1 2\n")
    assert run(capsys, "classify", str(path))[0] == 2


def test_cap_exit_3(capsys):
    assert run(capsys, "classify", "clique:n=9", "--max-n", "5")[0] == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ramsey3", "classify", "fano"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.startswith("regime=SingleExpZone")
