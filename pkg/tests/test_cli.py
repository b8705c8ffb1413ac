"""Command-line interface: subcommands, exit codes, JSON reports, errors."""

import json
import os
import subprocess
import sys

import pytest

from kkmfix import parse_scalar, serialize
from kkmfix.cli import Report, UsageError, main, run_command

_IDENTITY_MAP = """\
label identity on the unit interval
domain [0, 1]
piece [0, 1] all: x
"""

_BAD_MAP = """\
domain [0, 1]
piece [0, 1] all: x + 4
"""


@pytest.fixture(scope="module")
def maps(tmp_path_factory):
    from kkmfix.verdict import corpus_entry

    d = tmp_path_factory.mktemp("maps")
    paths = {}
    for n in (2, 4, 8, 9, 14):
        p = d / f"ex{n:02d}.map"
        p.write_text(serialize(corpus_entry(n).spec), encoding="utf-8")
        paths[n] = str(p)
    identity = d / "identity.map"
    identity.write_text(_IDENTITY_MAP, encoding="utf-8")
    paths["identity"] = str(identity)
    bad = d / "bad.map"
    bad.write_text(_BAD_MAP, encoding="utf-8")
    paths["bad"] = str(bad)
    return paths


def test_corpus_all_match():
    report = run_command(["corpus"])
    assert isinstance(report, Report) and report.exit_code == 0
    lines = report.rendered.splitlines()
    rows = [line for line in lines if line.endswith("MATCH")]
    assert len(rows) == 14
    assert not any(line.endswith("MISMATCH") for line in lines)
    assert "14/14 entries match" in report.rendered
    assert "seed 0" in report.rendered


def test_corpus_only():
    report = run_command(["corpus", "--only", "9"])
    assert report.exit_code == 0
    assert "1/1 entries match" in report.rendered
    assert len(report.verdicts["entries"]) == 1
    assert report.verdicts["entries"][0]["fixed_points"] == ["5"]


def test_corpus_budget_zero_degrades_honestly():
    report = run_command(["corpus", "--budget", "0"])
    assert report.exit_code == 1
    missed = {
        row["index"] for row in report.verdicts["entries"] if not row["match"]
    }
    # with no search budget the two subset falsifications cannot be found
    assert missed == {4, 14}


def test_check_falsified(maps):
    report = run_command(["check", "--map", maps[4], "--theorem", "t1"])
    assert report.exit_code == 1
    assert "kkm_anchor" in report.rendered
    assert "Falsified" in report.rendered
    assert "violated by 1/2 at u = 6" in report.rendered
    assert "u = 6; points = 0, 15/2; weights = 1/5, 4/5" in report.rendered
    assert "fixed points: (none)" in report.rendered
    assert "consistent: yes" in report.rendered


def test_check_favorable(maps):
    report = run_command(["check", "--map", maps[9], "--theorem", "t5"])
    assert report.exit_code == 0
    assert "fixed points: 5" in report.rendered
    assert "consistent: yes" in report.rendered
    assert "seed 0, budget 2000" in report.rendered


def test_check_json_round_trip(maps):
    argv = ["check", "--map", maps[4], "--theorem", "t1", "--json"]
    report = run_command(argv)
    body = json.loads(report.rendered)
    assert set(body) == {"command", "inputs", "verdicts", "exit_code"}
    assert body["command"] == "check" and body["exit_code"] == 1
    witness = body["verdicts"]["verdict"]["conditions"]["kkm_anchor"]["witness"]
    assert parse_scalar(witness["u"]) == 6
    assert [parse_scalar(p) for p in witness["points"]] == [
        0,
        parse_scalar("15/2"),
    ]
    assert sum(parse_scalar(w) for w in witness["weights"]) == 1
    # byte-identical rerun
    assert run_command(argv).rendered == report.rendered


def test_fixed_points(maps):
    assert run_command(["fixed-points", "--map", maps[8]]).rendered == "0, 10"
    assert run_command(["fixed-points", "--map", maps[4]]).rendered == "(none)"
    infinite = run_command(["fixed-points", "--map", maps["identity"]])
    assert infinite.exit_code == 0
    assert infinite.rendered == "fixed-point set (infinite): [0, 1]"


def test_kkm_gap_failure(maps):
    argv = ["kkm", "--map", maps[14], "--kind", "g3", "--delta", "2",
            "--points", "3,7"]
    report = run_command(argv)
    assert report.exit_code == 1
    assert "FAILS, uncovered 5" in report.rendered
    assert "intersection of witness sets: [0, 4] U [6, 10]" in report.rendered
    uncovered = parse_scalar(report.verdicts["uncovered"])
    assert 4 < uncovered < 6


def test_kkm_gap_default_delta(maps):
    report = run_command(["kkm", "--map", maps[14], "--kind", "g3",
                          "--points", "3,7"])
    # twice the infimum displacement is the default gap
    assert "delta: 4" in report.rendered
    assert report.exit_code == 1


def test_kkm_anchor_holds(maps):
    report = run_command(["kkm", "--map", maps[2], "--kind", "g1",
                          "--points", "0, 5, 7"])
    assert report.exit_code == 0
    assert "covers the hull" in report.rendered
    assert report.verdicts["uncovered"] is None


def test_parse_reports_shape(maps):
    report = run_command(["parse", "--map", maps[9]])
    assert report.exit_code == 0
    assert "violations: none" in report.rendered
    assert "pieces: 3, overrides: 2" in report.rendered


def test_parse_reports_violations(maps):
    report = run_command(["parse", "--map", maps["bad"]])
    assert report.exit_code == 1
    assert "not-self-map" in report.rendered


def test_plot_writes_file(maps, tmp_path):
    out = tmp_path / "plot.svg"
    report = run_command(["plot", "--map", maps[9], "--out", str(out)])
    assert report.exit_code == 0
    assert out.read_text(encoding="utf-8").startswith("<svg")
    assert f"wrote {out}" in report.rendered

    csv_out = tmp_path / "plot.csv"
    run_command(["plot", "--map", maps[9], "--out", str(csv_out),
                 "--format", "csv", "--samples", "11"])
    lines = csv_out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("x,f_rational_branch")
    assert len(lines) == 12


def test_main_prints_rendered(maps, capsys):
    code = main(["fixed-points", "--map", maps[8]])
    assert code == 0
    assert capsys.readouterr().out == "0, 10\n"


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["check", "--theorem", "t1"], "--map"),
        (["check", "--map", "nowhere.map", "--theorem", "t1"], "--map"),
        (["check", "--map", "x", "--theorem", "t9"], "--theorem"),
        (["corpus", "--only", "15"], "--only"),
        (["kkm", "--map", "x", "--kind", "g1", "--delta", "2",
          "--points", "1"], "--delta"),
        (["plot", "--map", "x", "--out", "/no/such/dir/a.svg"], "--out"),
        (["plot", "--map", "x", "--out", "a", "--samples", "0"], "--samples"),
    ],
)
def test_usage_errors(maps, capsys, argv, flag):
    argv = [maps[9] if token == "x" else token for token in argv]
    code = main(argv)
    assert code == 2
    err = capsys.readouterr().err
    assert err.startswith("kkmfix: error:")
    assert err.count("\n") == 1
    assert flag in err


def test_usage_error_is_exception(maps):
    with pytest.raises(UsageError):
        run_command(["kkm", "--map", maps[9], "--kind", "g3", "--delta", "-1",
                     "--points", "1"])


def test_module_entry_point(maps):
    env = dict(os.environ, PYTHONPATH=os.pathsep.join(sys.path))
    proc = subprocess.run(
        [sys.executable, "-m", "kkmfix", "corpus", "--only", "9"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0
    assert "MATCH" in proc.stdout


def test_rendered_determinism(maps):
    argv = ["check", "--map", maps[2], "--theorem", "t1"]
    assert run_command(argv).rendered == run_command(argv).rendered
