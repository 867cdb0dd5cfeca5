import json

import pytest

from classtower.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_build_and_info(capsys):
    code, out, _ = run(capsys, "group", "build", "--tree", "Q", "--kind", "mainline", "--class", "3")
    assert code == 0 and out.startswith("pc p=3 n=5")
    code, out, _ = run(capsys, "--format", "json", "group", "info", "--id", "F", "--tree", "U")
    info = json.loads(out)
    assert (info["log_order"], info["class"], info["nu"]) == (6, 4, 2)


def test_pattern_json(capsys):
    code, out, _ = run(capsys, "pattern", "--tree", "Q", "--kind", "metab", "--class", "5",
                       "--variant", "E6", "--format", "json")
    data = json.loads(out)
    assert data["ati"] == "[32,111,21,21]" and data["tkt"] == "1122"


def test_sigma_fields(capsys):
    code, out, _ = run(capsys, "--format", "json", "sigma", "--tree", "U", "--id", "F[-#2;3]",
                       "--check-h2")
    data = json.loads(out)
    assert {k: data[k] for k in ("sigma", "d1", "d2", "nu", "class")} == \
        {"sigma": True, "d1": 2, "d2": 2, "nu": 0, "class": "Schur"}


def test_sigma_capacity_is_an_error(capsys):
    code, _, err = run(capsys, "sigma", "--tree", "Q", "--kind", "mainline", "--class", "9",
                       "--max-lo", "10")
    assert code == 1 and "ceiling" in err


def test_classify_exit_codes(capsys):
    code, out, _ = run(capsys, "classify", "--tkt", "2231", "--signature", "real",
                       "--ati2", "([32;221,(311)^3],[21;221,(21)^3]^3)")
    assert code == 0 and out.startswith("Exactly2")
    code, out, _ = run(capsys, "classify", "--tkt", "2231", "--signature", "real")
    assert code == 2 and out.startswith("Unknown")


def test_ingest_and_tree(capsys, tmp_path):
    f = tmp_path / "fields.txt"
    f.write_text("disc=-9748 ipad=[11;21,21,21,32] tkt=2231\n")
    code, out, _ = run(capsys, "ingest", str(f))
    assert code == 0 and "Exactly3" in out
    code, out, _ = run(capsys, "tree-dot", "--tree", "Q", "--max-lo", "8")
    assert out.startswith('digraph "Q"')


def test_unconstructible_id(capsys):
    code, _, err = run(capsys, "group", "build", "--tree", "Q", "--id", "F[-#2;4]")
    assert code == 1 and "no presentation" in err


def test_pq_from_file(capsys, tmp_path):
    f = tmp_path / "g.fp"
    f.write_text("fp n=2\ngens a b\na^3\nb^3\n[a,b,a]\n[a,b,b]\n")
    code, out, _ = run(capsys, "pq", str(f), "--class-bound", "5")
    assert code == 0 and out.startswith("pc p=3 n=3")


def test_missing_command():
    with pytest.raises(SystemExit):
        main([])
