"""Exit codes, JSON reports, and flag handling of the command-line front end."""

import json

from commuting_ci.cli import EXIT_INCOMPLETE, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_decide_u3(capsys):
    code, out = run(capsys, "decide", "--group", "un", "--n", "3", "--genus", "1", "--field", "q")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["verdict"] == "CI"
    assert (report["nvars"], report["generators"], report["dim"]) == (6, 1, 5)


def test_decide_u2_high_genus(capsys):
    code, out = run(capsys, "decide", "--group", "un", "--n", "2", "--genus", "5")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["verdict"] == "CI" and report["generators"] == 0


def test_decide_incomplete_exit_code(capsys):
    code, out = run(
        capsys,
        "decide", "--group", "un", "--n", "5", "--genus", "1", "--timeout", "0.000001",
    )
    assert code == EXIT_INCOMPLETE
    assert json.loads(out)["verdict"] == "Incomplete"


def test_decide_usage_errors(capsys):
    assert main(["decide", "--group", "un"]) == EXIT_USAGE  # missing --n
    assert main(["decide", "--group", "gl5", "--n", "3"]) == EXIT_USAGE
    assert main(["decide", "--group", "un", "--n", "3", "--field", "gf:15"]) == EXIT_USAGE
    assert main(["decide", "--group", "un", "--n", "1"]) == EXIT_USAGE
    assert main(["nonsense"]) == EXIT_USAGE


def test_witness_u6(capsys):
    code, out = run(capsys, "witness-u6", "--field", "q")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["conclusion"] == "NotCI"
    assert len(report["memberships"]) == 7


def test_witness_u6_seeded(capsys):
    code, out = run(capsys, "witness-u6", "--order-seed", "7")
    assert code == EXIT_OK
    assert json.loads(out)["conclusion"] == "NotCI"


def test_koszul_u3(capsys):
    code, out = run(
        capsys,
        "koszul", "--group", "un", "--n", "3", "--genus", "1", "--max-weight", "6",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["exterior_factors"] == 2
    assert [row["h_dim"] for row in payload["slices"]] == [0] * 7
    assert all(row["status"] == "ok" for row in payload["slices"])


def test_koszul_rejects_borel(capsys):
    code = main(["koszul", "--group", "bn", "--n", "2", "--max-weight", "3"])
    assert code == EXIT_USAGE


def test_koszul_slice_cap_incomplete(capsys):
    code, out = run(
        capsys,
        "koszul", "--group", "un", "--n", "4", "--genus", "1",
        "--max-weight", "6", "--slice-cap", "10",
    )
    assert code == EXIT_INCOMPLETE


def test_dump_u3(capsys):
    code, out = run(capsys, "dump", "--group", "un", "--n", "3", "--genus", "1")
    assert code == EXIT_OK
    line = out.strip()
    assert line.startswith("f[1][3]: ")
    assert set(line.split(": ", 1)[1].replace(" ", "").split("+")[0]) <= set("x_123y*-")


def test_table_small(capsys):
    code, out = run(
        capsys,
        "table", "--family", "un", "--max-n", "3", "--genus", "1", "--jobs", "1",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert [row["n"] for row in payload["rows"]] == [2, 3]
    assert all(row["verdict"] == "CI" for row in payload["rows"])


def test_table_through_u6(capsys):
    code, out = run(
        capsys,
        "table", "--family", "un", "--max-n", "6", "--genus", "1", "--jobs", "2",
    )
    assert code == EXIT_OK
    rows = {row["n"]: row for row in json.loads(out)["rows"]}
    assert rows[6]["verdict"] == "NotCI"
    assert rows[6]["witness"]["conclusion"] == "NotCI"
    assert rows[6]["exterior_factors"] == 5
    assert all(rows[n]["verdict"] == "CI" for n in (2, 3, 4, 5))


def test_output_file_round_trip(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, _ = run(
        capsys,
        "decide", "--group", "un", "--n", "3", "--output", str(target),
    )
    assert code == EXIT_OK
    on_disk = json.loads(target.read_text(encoding="utf-8"))
    assert on_disk["verdict"] == "CI"


def test_env_timeout_override(capsys, monkeypatch):
    monkeypatch.setenv("COMMUTING_CI_TIMEOUT", "0.000001")
    code, out = run(capsys, "decide", "--group", "un", "--n", "5")
    assert code == EXIT_INCOMPLETE
    # explicit flag wins over the environment
    code, out = run(capsys, "decide", "--group", "un", "--n", "5", "--timeout", "600")
    assert code == EXIT_OK
