import json
import subprocess
import sys

import pytest

from ribbon_genus.cli import main, run
from ribbon_genus.corpus import CORPUS


def test_genus_baumslag_solitar():
    code, out = run(["genus", "<a,b | a b^2 a^-1 b^-3>"])
    d = json.loads(out)
    assert code == 0 and d["genus"] == 1 and d["schema_version"] == 1


def test_facepair_count():
    code, out = run(["facepair", "count", "--n", "2"])
    assert code == 0 and json.loads(out)["count"] == 27


def test_report_free_group():
    code, out = run(["report", "<a,b | >"])
    assert code == 0 and json.loads(out)["chain"] == [0, 0, 0]


def test_input_error_exit_code(capsys):
    code, _ = run(["genus", "<a | b>"])
    assert code == 1
    assert "undeclared generator" in capsys.readouterr().err


def test_require_exact_exit_code():
    args = ["shuffle-min", CORPUS["p_amalgam"], "--budget", "100"]
    assert run(args)[0] == 0
    assert run(args + ["--require-exact"])[0] == 2


def test_batch_file_and_csv(tmp_path):
    f = tmp_path / "corpus.txt"
    f.write_text("# fixtures\n" + CORPUS["bs_2_3"] + "\n" + CORPUS["utilities"] + "\n")
    code, out = run(["genus", "--file", str(f), "--format", "csv"])
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[0].startswith("presentation,genus")
    code, out = run(["genus", "--file", str(f)])
    assert [r["genus"] for r in json.loads(out)["results"]] == [1, 2]


def test_jobs_keep_order(tmp_path):
    names = ["bs_2_3", "z6_amalgam", "utilities", "trivial", "rp2"]
    f = tmp_path / "batch.txt"
    f.write_text("\n".join(CORPUS[n] for n in names) + "\n")
    serial = run(["report", "--file", str(f)])[1]
    parallel = run(["report", "--file", str(f), "--jobs", "3"])[1]
    assert serial == parallel


def test_same_seed_same_bytes(monkeypatch):
    args = ["shuffle-min", CORPUS["p_amalgam"], "--budget", "500"]
    monkeypatch.setenv("RIBBON_GENUS_SEED", "11")
    a = run(args)[1]
    b = run(args)[1]
    assert a == b
    monkeypatch.setenv("RIBBON_GENUS_SEED", "oops")
    assert run(args)[0] == 1


@pytest.mark.parametrize("kind,expected", [
    ("exp", "<a,b | a^2, b^2, a^2 b^-2>"),
    ("connect", "<a,b,c | a^6, b^6, a^2 b^-2, c b^-2 a^-2>"),
])
def test_normalize(kind, expected):
    code, out = run(["normalize", kind, "<a,b | a^6, b^6, a^2 b^-2>"])
    d = json.loads(out)
    assert code == 0 and d["normalized"] == expected


def test_normalize_deg3_error():
    assert run(["normalize", "deg3", "<a,b | a^2>"])[0] == 1


def test_plumb_and_dot():
    code, out = run(["plumb", "<a,b | a^2>", "<a,b | a^2 b^2>"])
    assert code == 0 and json.loads(out)["genus"] == 1  # same surface as <a,b | a^2, a^2 b^2>
    code, out = run(["export-dot", CORPUS["bs_2_3"]])
    assert code == 0 and out.startswith("graph ribbon {")


def test_census_json_and_sphere_file(tmp_path):
    code, out = run(["facepair", "census", "--n", "2"])
    d = json.loads(out)
    assert code == 0 and len(d["rows"]) == 27 and d["truncated"] is False
    f = tmp_path / "tet.txt"
    f.write_text("0 2 1\n0 1 3\n1 2 3\n0 3 2\n")
    assert json.loads(run(["facepair", "census", "--sphere", str(f)])[1])["rows"] == d["rows"]
    assert run(["facepair", "census", "--n", "3", "--budget", "5", "--require-exact"])[0] == 2


def test_convention_flag():
    a = json.loads(run(["genus", CORPUS["z6_amalgam"], "--convention", "A"])[1])
    b = json.loads(run(["genus", CORPUS["z6_amalgam"]])[1])
    assert (a["genus"], b["genus"]) == (2, 1)


def test_module_entry_point_and_version():
    res = subprocess.run([sys.executable, "-m", "ribbon_genus", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "default convention B" in res.stdout


def test_no_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
