import io
import json

import pytest

from poset_rainbow.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_ar_diamond():
    code, out = run_json("ar", "--n", "3", "--poset", "diamond", "--mode", "weak")
    assert code == 0 and out["value"] == 5 and out["exact"]


def test_certify_butterfly():
    code, out = run_json("certify", "--coloring", "butterfly:4", "--poset", "crown:2", "--mode", "strong")
    assert code == 0 and out == {"colors": 11, "rainbow": None}


def test_certify_failure_exit_code():
    code, out = run_json("certify", "--coloring", "broom_chain:5:2", "--poset", "broom:2", "--mode", "strong")
    assert code == 1 and out["rainbow"] is not None


def test_poset_hasse():
    code, out = run_json("poset", "--catalog", "crown:3", "--show", "hasse")
    assert code == 0 and len(out["hasse"]) == 6


def test_poset_writes_json(tmp_path):
    path = tmp_path / "p.json"
    code, _ = run("poset", "--catalog", "diamond", "--out", str(path))
    assert code == 0
    code, out = run_json("poset", "--catalog", str(path), "--show", "all")
    assert out["minimal"] == ["a"] and out["maximal"] == ["d"]


def test_la_and_csv():
    code, text = run("la", "--n", "4", "--posets", "fork:2,broom:2", "--format", "csv")
    assert code == 0
    header, row = text.strip().splitlines()
    assert "value" in header.split(",")
    assert row.split(",")[header.split(",").index("value")] == "6"


def test_global_format_flag():
    code, text = run("--format", "csv", "ar", "--n", "2", "--poset", "chain:2")
    assert code == 0 and text.startswith("exact,")


def test_construct(tmp_path):
    path = tmp_path / "col.txt"
    code, out = run_json("construct", "--kind", "antichain_chain", "--n", "6", "--param", "3", "--out", str(path))
    assert code == 0 and out["colors"] == 8
    code, out = run_json("certify", "--coloring", str(path), "--poset", "antichain:3", "--mode", "strong")
    assert code == 0


def test_find_copy():
    code, out = run_json("find-copy", "--family", "middle:4:2", "--poset", "butterfly", "--mode", "strong")
    assert code == 0 and out["found"] is False
    code, out = run_json("find-copy", "--family", "layer:4:2", "--poset", "antichain:3", "--mode", "strong")
    assert out["found"] is True and len(out["embedding"]) == 3


def test_embed_commands():
    code, out = run_json("embed-spider", "--family", "middle:12:2", "--j", "1", "--legs", "3", "--leglen", "2")
    assert code == 0 and out["verified"]
    code, out = run_json("embed-crown", "--family", "middle:12:2", "--k", "3")
    assert code == 0 and out["verified"] and len(out["embedding"]) == 6


def test_estimates_and_partition():
    code, out = run_json("lemma10", "--n", "1000000", "--k", "3", "--j", "1000")
    assert code == 1
    code, out = run_json("partition", "--family", "layer:6:3", "--epsilon", "0.5", "--k", "3")
    assert code == 0


def test_sandwich():
    code, out = run_json("sandwich", "--n", "3", "--poset", "diamond")
    assert code == 0 and out["violations"] == []


def test_repro_single():
    code, out = run_json("repro", "AC1")
    assert code == 0 and out[0]["criterion"] == "AC1" and out[0]["passed"]


@pytest.mark.parametrize(
    "argv",
    [
        ["repro", "AC99"],
        ["ar", "--n", "3"],
        ["nonesuch"],
        ["poset", "--catalog", "crown:1"],
        ["--threads", "0", "poset", "--catalog", "diamond"],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("POSET_RAINBOW_THREADS", "many")
    assert run("poset", "--catalog", "diamond")[0] == 2


def test_timeout_exit_code():
    code, out = run_json("ar", "--n", "5", "--poset", "broom:2", "--mode", "strong", "--time-limit", "0.2")
    assert code == 3 and not out["exact"]
