import json

import pytest
from click.testing import CliRunner

from hopfcyc.cli import GOLDEN, RUNNERS, golden_dir, main, run_golden
from hopfcyc.config import ConfigError, RunConfig
from hopfcyc.io import builtin, emit_presentation
from hopfcyc.reports import dumps


def run(args, env=None):
    r = CliRunner().invoke(main, args, env=env or {}, catch_exceptions=False)
    return r.exit_code, r.output


def report(args, env=None):
    code, out = run(args, env)
    return code, json.loads(out)


@pytest.mark.parametrize("args", [
    ["axioms", "--hopf", "builtin:s3", "--delta", "sign"],
    ["axioms", "--hopf", "builtin:heisenberg3", "--delta", "x=2", "--D", "3"],
    ["axioms", "--hopf", "builtin:uqsl2", "--sigma", "K", "--D", "2"],
    ["cyclic", "--hopf", "builtin:z3", "--nmax", "4"],
    ["cyclic", "--hopf", "builtin:sym2", "--D", "3", "--nmax", "3"],
    ["cotor", "--hopf", "builtin:z3", "--alpha", "g1", "--sigma", "g1"],
    ["cotor", "--hopf", "builtin:uqsl2", "--sigma", "K", "--nmax", "1"],
    ["weil", "--coalgebra", "builtin:point", "--dtot", "6", "--check", "acyclic", "--check", "cs"],
    ["charmap", "--hopf", "builtin:z3"],
    ["charmap", "--hopf", "builtin:sl2", "--algebra", "m2-ad"],
    ["verify", "--only", "4"],
], ids=lambda a: " ".join(a[:3]))
def test_commands_pass(args):
    code, rep = report(args)
    assert code == 0 and rep["passed"]
    assert rep["checks"]
    assert rep["config"]["seed"] == 0


def test_uq_cyclic_window():
    code, rep = report(["cyclic", "--hopf", "builtin:uqsl2", "--q", "3/2", "--sigma", "K", "--nmax", "3"])
    assert code == 0
    assert rep["hp_window"] == {"HC0": 0, "degree-1 generators": ["E", "KF"]}
    assert rep["exactness"] == "filtered"


def test_weil_tower_rank_table():
    code, rep = report(["weil", "--coalgebra", "builtin:point", "--dtot", "8", "--check", "tower"])
    assert code == 0
    table = rep["weil"]["tower"]["rank table"]
    assert table["0"]["0"] == [1, 1] and table["1"]["1"] == [0, 0] and table["2"]["4"] == [1, 1]


def test_charmap_with_cochain_file(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"wedges": [[["e", "f"], "1/1"]]}))
    code, rep = report(["charmap", "--hopf", "builtin:sl2", "--algebra", "m2-ad", "--cochain", str(f)])
    # e^f is not a Lie cycle: the map still equals k(A x) but the output is not cyclic
    assert code == 0
    assert rep["certificates"]["equals k(A x)"] and not rep["certificates"]["lambda-invariant"]


def test_failing_check_exits_nonzero(tmp_path):
    spec = json.loads(emit_presentation(builtin("z2-table")))
    f = tmp_path / "t.json"
    f.write_text(json.dumps(spec, indent=2))
    assert run(["axioms", "--hopf", str(f)])[0] == 0
    # Z2 with sigma = g1 is not a modular pair for eps: the modular check fails
    code, rep = report(["axioms", "--hopf", "builtin:z2", "--sigma", "g1", "--delta", "g0=1,g1=-1"])
    assert code == 1 and not rep["passed"]


@pytest.mark.parametrize("args,needle", [
    (["cyclic", "--hopf", "missing.json"], "cannot read"),
    (["cyclic", "--hopf", "builtin:z3", "--q", "2"], "--q only applies"),
    (["cyclic", "--hopf", "builtin:uqsl2", "--sigma", "1"], "--sigma K"),
    (["cyclic", "--hopf", "builtin:z3", "--nmax", "-1"], "n_max must be >= 0"),
    (["axioms", "--hopf", "builtin:sl2", "--delta", "e=1"], "does not vanish on [e0,e2]"),
    (["axioms", "--hopf", "builtin:z3", "--delta", "g0=1,g1=-1,g2=1"], "not multiplicative"),
    (["charmap", "--hopf", "builtin:z3", "--algebra", "m2-ad"], "builtin:sl2"),
])
def test_config_errors(args, needle):
    r = CliRunner().invoke(main, args)
    assert r.exit_code == 2
    assert needle in r.output


def test_bad_thread_env():
    r = CliRunner().invoke(main, ["verify", "--only", "4"], env={"HOPFCYC_THREADS": "zero"})
    assert r.exit_code == 2 and "HOPFCYC_THREADS" in r.output


def test_reports_identical_across_runs_and_threads():
    a = run(["verify", "--only", "4", "--only", "5"], {"HOPFCYC_THREADS": "1"})
    b = run(["verify", "--only", "4", "--only", "5"], {"HOPFCYC_THREADS": "2"})
    c = run(["verify", "--only", "4", "--only", "5"], {"HOPFCYC_THREADS": "1"})
    assert a == b == c


def test_csv_output(tmp_path):
    out = tmp_path / "r.csv"
    code, _ = run(["cyclic", "--hopf", "builtin:z2", "--nmax", "2", "--format", "csv", "-o", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "kind,degree,dim,exactness,truncation"
    assert "cyclic,2,1,exact,D=None;n_max=2" in lines


def test_seed_recorded():
    _, rep = report(["axioms", "--hopf", "builtin:z3", "--seed", "17"])
    assert rep["config"]["seed"] == 17 and rep["sampled"]["seed"] == 17


def test_golden_files_match():
    res = run_golden()
    assert res["passed"], res


def test_golden_detects_drift(tmp_path, monkeypatch):
    import hopfcyc.cli as cli
    for name in GOLDEN:
        (tmp_path / name).write_text((golden_dir() / name).read_text())
    p = tmp_path / "point_weil_tower.json"
    p.write_text(p.read_text().replace('"ok": true', '"ok": false', 1))
    monkeypatch.setattr(cli, "golden_dir", lambda: tmp_path)
    res = run_golden()
    assert not res["golden"]["point_weil_tower.json"]["ok"]
    assert res["golden"]["point_weil_tower.json"]["diff"]
    assert res["golden"]["symmetric_algebra.json"]["ok"]


def test_golden_is_byte_stable():
    cfg = GOLDEN["point_weil_tower.json"]
    assert dumps(RUNNERS[cfg.command](cfg)) == dumps(RUNNERS[cfg.command](cfg))


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig("cyclic", D=-1)
    with pytest.raises(ConfigError):
        RunConfig("cyclic", fmt="xml")
    assert "threads" not in RunConfig("cyclic").record()
