import csv
import io

import pytest

from classtower.fixtures import (IPAD_FREQUENCIES, IPAD_Q_EXCITED, IPAD_Q_GROUND,
                                 IPAD_U_EXCITED, IPAD_U_GROUND, SCREEN_EXPECTED)
from classtower.families import Unconstructible, resolve_identifier, UnrecognizedIdentifier
from classtower.ingest import (RecordSyntaxError, emit_tree_dot, frequencies_of,
                               parse_frequencies, parse_records, report, report_rows,
                               serialize_records, tkt_histogram, with_ati2, _tree_vertices)
from classtower.classify import screen_ipad

ALL = IPAD_U_GROUND + IPAD_Q_GROUND + IPAD_U_EXCITED + IPAD_Q_EXCITED


def test_record_line():
    (r,) = parse_records("disc=342664 ipad=[11;21,21,21,32]  # first U-tree field\n")
    assert r.disc == 342664 and r.signature == "real"
    assert str(screen_ipad(r.ipad)) == "U-tree, GS"
    (r,) = parse_records("disc=-9748 ipad=[11;21,21,21,32] tkt=2231")
    assert r.signature == "imaginary" and str(r.tkt) == "2231"
    assert parse_records("") == []


def test_round_trip():
    recs = parse_records(ALL)
    text = serialize_records(recs)
    assert serialize_records(parse_records(text)) == text
    assert parse_records("disc=5 ipad=[11;21,21,21,32] len=2")[0].length_claim == "Exactly2"


@pytest.mark.parametrize("text, line, col", [
    ("disc=1 ipad=[11;21,21,21,32]\ndisc=1 ipad=[11;21,21,21,32]", 2, 1),
    ("disc=0 ipad=[11;21,21,21,32]", 1, 6),
    ("disc=7 ipad=[11;21,21,21]", 1, 13),
    ("disc=7 ipad=[11;21,21,21,32] tkt=12", 1, 34),
    ("# note\ndisc=7 ipad=[11;21,21,21,32] color=red", 2, 30),
    ("disc=7", 1, 1),
])
def test_errors_have_positions(text, line, col):
    with pytest.raises(RecordSyntaxError) as exc:
        parse_records(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_q_ground_stats():
    recs = parse_records(IPAD_Q_GROUND)
    (row,) = report_rows(recs, "stats")
    assert row["count"] == 10 and row["min_disc"] == 1162949
    assert tkt_histogram(recs) == {"H.4": 4, "E.14": 3, "E.6": 3}


def test_q_excited_all_es1():
    rows = report_rows(parse_records(IPAD_Q_EXCITED), "classify")
    assert len(rows) == 7 and {r["state"] for r in rows} == {"ES1"}


def test_blank_lengths_stay_unknown():
    recs = parse_records(IPAD_U_EXCITED)
    blank = [r for r in recs if r.length_claim is None]
    assert [r.disc for r in blank] == [230668493, 248917036, 249304648, 264062393]
    rows = {r["disc"]: r for r in report_rows(blank, "classify")}
    assert all(rows[r.disc]["verdict"] == "Unknown" for r in blank)


def test_classify_row_uses_attached_ati2():
    (r,) = parse_records("disc=4760877 ipad=[11;21,21,21,32] tkt=2231 len=2")
    r = with_ati2(r, "([32;221,(311)^3],[21;221,(21)^3]^3)")
    (row,) = report_rows([r], "classify")
    assert row["verdict"] == "Exactly2" and row["state"] == "GS"


def test_report_csv_columns_and_order():
    text = report(parse_records(ALL), "screen")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["disc", "ipad", "screen", "state", "tkt", "verdict", "reason"]
    discs = [int(r["disc"]) for r in rows]
    assert discs == sorted(discs)


def test_frequency_table():
    rows = parse_frequencies(IPAD_FREQUENCIES)
    assert len(rows) == len(SCREEN_EXPECTED) == 35
    pairs = {(r.count, r.min_disc) for r in rows}
    assert (208236, 32009) in pairs and (1, 705576037) in pairs
    # grouping individual records reproduces count and minimum
    recs = parse_records(IPAD_Q_GROUND)
    (f,) = frequencies_of(recs)
    assert (f.count, f.min_disc) == (10, 1162949)


def test_dot_small_and_stable():
    dot = emit_tree_dot("Q", 5)
    assert '"R"' in dot and "->" not in dot
    assert emit_tree_dot("U", 14) == emit_tree_dot("U", 14)
    with pytest.raises(ValueError):
        emit_tree_dot("Q", 21)


def test_dot_fork_and_leaves():
    dot = emit_tree_dot("Q", 8)
    assert "(fork)" in dot and '"F" -> "F[-#2;2]" [label="2"]' in dot
    dot = emit_tree_dot("U", 14)
    for n, parent in ((0, "F"), (1, "F(-#1;1-#1;1)"), (2, "F(-#1;1-#1;1)^2")):
        for i in (2, 3, 4):
            assert f'"{parent}" -> "{parent}[-#1;{i}]" [label="1"]' in dot
    assert "shape=diamond" in dot


@pytest.mark.parametrize("tree", ["Q", "U"])
def test_dot_nodes_resolve(tree):
    nodes, edges = _tree_vertices(tree, 20)
    for nd in nodes.values():
        try:
            d = resolve_identifier(nd.ident, tree)
        except UnrecognizedIdentifier:
            assert not nd.constructible
            continue
        assert isinstance(d, Unconstructible) != nd.constructible
        if not isinstance(d, Unconstructible):
            assert d.expected_log_order == nd.lo
    for a, b, s in edges:
        assert nodes[b].lo - nodes[a].lo == s


CATEGORY = {
    "maximal class": "maximal class, cc=1", "sporadic4": "sporadic <243,4> branch",
    "branch73": "<243,7> or <243,3> branch", "Q": "Q-tree", "U": "U-tree",
    "homocyclic": "excluded: homocyclic polarization", "other": "other",
}


def test_screening_of_frequency_rows():
    ranks = [int(line.split("#")[1]) for line in IPAD_FREQUENCIES.splitlines() if line]
    for rank, row in zip(ranks, parse_frequencies(IPAD_FREQUENCIES)):
        assert screen_ipad(row.ipad).category == CATEGORY[SCREEN_EXPECTED[rank]], rank
