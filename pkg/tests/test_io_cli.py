import json

import pytest
from hypothesis import given, settings, strategies as st

from mpvrel import io as mio
from mpvrel.cli import EXIT_CONFIG, EXIT_MISMATCH, EXIT_OK, EXIT_RESIDUAL, generate, main
from mpvrel.relations import Relation


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@settings(max_examples=10)
@given(st.sampled_from([(2, 3), (2, 4), (3, 2), (2, 6)]), st.data())
def test_relation_round_trip(wN, data):
    w, N = wN
    rels = generate(w, N, ("fds", "rds", "fdt", "rdt", "seed"))
    sample = data.draw(st.lists(st.sampled_from(rels), min_size=1, max_size=5))
    text = mio.dumps_relations(sample)
    back = [mio.relation_from_dict(json.loads(line)) for line in text.splitlines()]
    assert back == sample
    assert mio.dumps_relations(back) == text


def test_read_write_file(tmp_path):
    rels = generate(2, 5, ("fds", "extra"))
    path = tmp_path / "r.jsonl"
    mio.write_relations(path, rels)
    assert mio.read_relations(path) == rels
    (tmp_path / "empty.jsonl").write_text("")
    assert mio.read_relations(tmp_path / "empty.jsonl") == []


def test_reject_bad_records():
    good = {"w": 2, "N": 3, "family": "X", "params": {}, "terms": [{"s": [2], "i": [1], "coef": "1/2"}]}
    assert mio.relation_from_dict(good).terms
    bad = dict(good, terms=[{"s": [1], "i": [0], "coef": "1"}])
    with pytest.raises(ValueError):
        mio.relation_from_dict(bad)
    with pytest.raises(ValueError):
        mio.relation_from_dict(dict(good, terms=[{"s": [2], "i": [1], "coef": "0"}]))
    with pytest.raises(ValueError):
        mio.relation_from_dict(dict(good, w=3))


@pytest.mark.parametrize("w,N,rows", [(2, 3, 9), (1, 5, 4), (4, 3, 144)])
def test_enumerate(capsys, w, N, rows):
    code, out, _ = run(capsys, "enumerate", "-w", str(w), "-N", str(N))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == rows
    assert lines[0].split("\t")[0] == "0"


def test_bound(capsys, tmp_path):
    code, out, _ = run(capsys, "bound", "-w", "2", "-N", "12", "--matrix", str(tmp_path / "m.csv"))
    s = json.loads(out)
    assert code == EXIT_OK and (s["SR"], s["D"]) == (18, 15)
    assert sum(x["rank_gain"] for x in s["increments"]) == s["rank"]
    assert (tmp_path / "m.csv").read_text().count("\n") > 0
    code, out, _ = run(capsys, "bound", "-w", "3", "-N", "4")
    s = json.loads(out)
    assert (s["SR"], s["D"]) == (9, 8)


def test_generate_and_verify(capsys, tmp_path):
    path = tmp_path / "rels.jsonl"
    assert main(["generate", "-w", "2", "-N", "4", "--out", str(path)]) == EXIT_OK
    code, out, err = run(capsys, "verify", "--in", str(path), "--precision", "30")
    assert code == EXIT_OK
    records = [json.loads(x) for x in out.splitlines()]
    assert len(records) == len(mio.read_relations(path))
    assert all(float(r["residual"]) < 1e-20 for r in records)
    assert "max residual" in err


def test_verify_threads_agree(capsys):
    _, one, _ = run(capsys, "verify", "-w", "2", "-N", "3", "--precision", "25")
    _, two, _ = run(capsys, "verify", "-w", "2", "-N", "3", "--precision", "25", "--threads", "2")
    assert [json.loads(x)["params"] for x in one.splitlines()] == [json.loads(x)["params"] for x in two.splitlines()]


def test_verify_empty_and_failing(capsys, tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    code, out, _ = run(capsys, "verify", "--in", str(empty))
    assert code == EXIT_OK and out == ""
    bad = Relation.from_lincomb({(0, 2): 1}, 2, "X")  # L_2(2|1) alone is not zero
    path = tmp_path / "bad.jsonl"
    mio.write_relations(path, [bad])
    code, _, _ = run(capsys, "verify", "--in", str(path))
    assert code == EXIT_RESIDUAL


def test_table(capsys):
    code, out, _ = run(capsys, "table", "-w", "2", "--levels", "1-6")
    assert code == EXIT_OK
    rows = [json.loads(x) for x in out.splitlines()]
    assert [r["SR"] for r in rows] == [1, 2, 4, 4, 8, 8]
    code, out, _ = run(capsys, "table", "-w", "3", "--levels", "1-13", "--d-only")
    assert code == EXIT_OK
    code, _, _ = run(capsys, "table", "-w", "2", "--levels", "3", "--families", "fds")
    assert code == EXIT_MISMATCH


def test_report(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "-N", "8", "--k-table", "paper")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["d"] == 9 and rep["nonstandard"] == 1
    path = tmp_path / "k.json"
    path.write_text('{"5": 1}')
    code, out, _ = run(capsys, "report", "-N", "5", "--k-table", str(path))
    assert json.loads(out)["nonstandard"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "-w", "2"],
        ["bound", "-w", "0", "-N", "3"],
        ["bound", "-w", "2", "-N", "3", "--families", "nope"],
        ["verify", "-w", "2", "-N", "3", "--precision", "2"],
        ["table", "--levels", "x"],
        ["report", "-N", "5", "--k-table", "/nonexistent.json"],
        ["frobnicate"],
    ],
)
def test_config_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    assert code == EXIT_CONFIG
