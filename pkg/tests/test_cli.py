import io
import json

import pytest

from fanoindex.cli import EX_DIVERGED, EX_MISMATCH, EX_OK, EX_USAGE, RunConfig, main, run
from fanoindex.report import CSV_COLUMNS, golden_path, snapshot_text


def call(argv, capsys):
    rc = main(argv)
    out, err = capsys.readouterr()
    return rc, out, err


def test_prop_table_markdown(capsys):
    rc, out, _ = call(["table", "--preset", "prop-comput", "--format", "markdown"], capsys)
    assert rc == EX_OK
    lines = out.strip().splitlines()
    assert lines[0] == "| q | B | A^3 | A | 2A | 3A | 4A | 5A | 6A | 7A | -K |"
    assert len(lines) == 12
    assert "| 19 | (3, 4, 5, 7) | 1/420 | -1 | -1 | 0 | 0 | 0 | 0 | 1 | 8 |" in lines
    assert "| 10 | (7, 11) | 2/77 | -1 | 0 | 1 | 1 | 3 | 4 | 6 | 13 |" in lines


def test_reports_are_byte_stable(capsys):
    for fmt in ("json", "csv", "markdown"):
        a = call(["classify", "--preset", "lemma-comput", "--format", fmt], capsys)[1]
        b = call(["classify", "--preset", "lemma-comput", "--format", fmt], capsys)[1]
        assert a == b and a


def test_csv_columns_and_exact_fractions(capsys):
    rc, out, _ = call(["classify", "--q-min", "9", "--q-max", "19", "--format", "csv"], capsys)
    assert rc == EX_OK
    rows = out.strip().splitlines()
    assert rows[0].split(",") == CSV_COLUMNS
    assert "." not in out


def test_json_output_parses(capsys):
    rc, out, _ = call(["classify", "--q-min", "17", "--q-max", "17"], capsys)
    [row] = json.loads(out)
    assert rc == EX_OK and row["a_cubed"] == "1/210" and row["q"] == 17


def test_min_dim_filter(capsys):
    rc, out, _ = call(["classify", "--q-min", "7", "--q-max", "19", "--min-dim-a", "1"], capsys)
    rows = json.loads(out)
    assert [(r["q"], r["a_cubed"]) for r in rows] == [(7, "1/6")]


def test_wps_compare(capsys):
    rc, out, _ = call(["wps", "--weights", "3,4,5,7", "--compare", "--kmax", "38"], capsys)
    doc = json.loads(out)
    assert rc == EX_OK and doc["mismatches"] == [] and len(doc["rows"]) == 39


def test_wps_hilbert(capsys):
    rc, out, _ = call(["wps", "--weights", "1,1,1,1", "--kmax", "3"], capsys)
    assert json.loads(out)["hilbert"] == [1, 4, 10, 20]


def test_wps_mismatch_exit_code(monkeypatch, capsys):
    import fanoindex.cli as cli
    from fanoindex.wps import OracleReport

    fake = OracleReport((1, 1, 1, 1), 4, None, 1, 1, [(0, 2, 1)])
    monkeypatch.setattr(cli, "oracle_compare", lambda w, k: fake)
    monkeypatch.setattr(OracleReport, "to_dict", lambda self: {"ok": self.ok})
    assert call(["wps", "--weights", "1,1,1,1", "--compare"], capsys)[0] == EX_MISMATCH


def test_link_audit(capsys):
    rc, out, _ = call(["link", "--case", "q10-r11", "--audit"], capsys)
    assert rc == EX_OK and out.startswith("q10-r11: 0 solutions")
    assert "killed by" in out


def test_link_json_and_list(capsys):
    rc, out, _ = call(["link", "--case", "q19-r5", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["solutions"][0]["values"] == {"e": 3, "qhat": 7, "u": 0, "v": 1, "w": 2, "x": 1}
    rc, out, _ = call(["link", "--list"], capsys)
    assert "q19-r7" in out.split()


def test_torsion_commands(capsys):
    rc, out, _ = call(["torsion", "--supports", "--n", "7", "--n", "5"], capsys)
    assert json.loads(out) == {"5": [[5, 5, 5, 5], [5, 5, 10], [10, 10]], "7": [[7, 7, 7]]}
    rc, out, _ = call(["torsion", "--basket", "3:1+4:1+5:2+7:3"], capsys)
    assert not any(v["feasible"] for v in json.loads(out).values())


def test_enumerate_count(capsys):
    assert call(["enumerate", "--count"], capsys)[1] == "8338\n"
    assert call(["enumerate", "--max-weight", "3/2"], capsys)[1] == "0\n2:1\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["torsion", "--basket", "3:x"],
        ["torsion", "--basket", "4:2"],
        ["wps", "--weights", "1,2,x,4"],
        ["wps", "--weights", "2,4,5,7"],
        ["classify", "--max-weight", "abc"],
        ["classify", "--q-min", "2"],
        ["link", "--case", "nope"],
        ["bogus-command"],
        [],
    ],
)
def test_malformed_input_exits_64(argv, capsys):
    rc, _, err = call(argv, capsys)
    assert rc == EX_USAGE and err


def test_snapshot_round_trip(tmp_path, capsys):
    path = tmp_path / "snap.json"
    assert call(["classify", "--preset", "prop-comput", "--snapshot", str(path)], capsys)[0] == EX_OK
    assert call(["classify", "--preset", "prop-comput", "--verify-snapshot", str(path)], capsys)[0] == EX_OK
    path.write_text(path.read_text().replace("1/420", "1/421"))
    rc, _, err = call(["classify", "--preset", "prop-comput", "--verify-snapshot", str(path)], capsys)
    assert rc == EX_DIVERGED and "1/421" in err


def test_golden_snapshots_verify(capsys):
    rc, out, _ = call(["verify-snapshot"], capsys)
    assert rc == EX_OK and out == "lemma-comput: ok\nprop-comput: ok\n"
    for name in ("lemma-comput", "prop-comput"):
        assert golden_path(name).read_text() == snapshot_text(name)


def test_drifted_golden_exits_2(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(snapshot_text("lemma-comput").replace('"q": 19', '"q": 18'))
    rc, out, _ = call(["verify-snapshot", "--preset", "lemma-comput", "--snapshot", str(path)], capsys)
    assert rc == EX_DIVERGED and "DIVERGED" in out


def test_run_config_presets():
    cfg = RunConfig("classify", preset="prop-comput")
    assert cfg.q_range() == (9, 19) and {"suzuki", "torsion_free"} <= cfg.filters()
    cfg = RunConfig("classify", preset="lemma-comput")
    assert cfg.q_range() == (8, 19) and not {"suzuki", "torsion_free"} & cfg.filters()
    buf = io.StringIO()
    assert run(RunConfig("classify", q_min=19, q_max=19, fmt="markdown"), buf) == EX_OK
    assert "1/420" in buf.getvalue()
