"""Corpus determinism, reports, configuration, and the CLI contract."""

import json
import subprocess
import sys

import numpy as np
import pytest

from phaseweyl.config import load_config
from phaseweyl.corpus import generate
from phaseweyl.errors import DimensionError
from phaseweyl.report import IdentityResult, VerificationReport, InstanceCorpus


def test_corpus_determinism():
    spec = {"kind": "symplectic", "n_min": 1, "n_max": 3, "count": 12}
    a = generate(spec, 99)
    b = generate(spec, 99)
    assert json.dumps(a.to_dict(), sort_keys=True) == json.dumps(b.to_dict(), sort_keys=True)
    c = generate(spec, 100)
    assert json.dumps(a.to_dict(), sort_keys=True) != json.dumps(c.to_dict(), sort_keys=True)


def test_corpus_strata():
    spec = {"kind": "lagrangian-pairs", "n_min": 3, "n_max": 3, "count": 16}
    corpus = generate(spec, 7)
    ks = {inst["k"] for inst in corpus.instances}
    assert ks == {0, 1, 2, 3}
    near = generate({"kind": "near-degenerate", "n_min": 1, "n_max": 2, "count": 8, "det_floor": 1e-6}, 7)
    for inst in near.instances:
        assert 0 < abs(inst["det_si"]) < 0.2


def test_corpus_validation():
    with pytest.raises(DimensionError):
        InstanceCorpus(seed=1, spec={"n_min": 0})
    with pytest.raises(DimensionError):
        generate({"kind": "bogus", "count": 1}, 0)
    with pytest.raises(DimensionError):
        generate({"kind": "symplectic", "count": 0}, 0)


def test_report_roundtrip(tmp_path):
    rep = VerificationReport(
        suite="cayley",
        seed=42,
        identities=[IdentityResult("roundtrip", 500, 0, 3.51e-14)],
        config={"tol": {"sym": 1e-10}},
        wall_time=0.51,
    )
    path = tmp_path / "rep.json"
    rep.write(path)
    back = VerificationReport.read(path)
    assert back.suite == rep.suite
    assert back.identities == rep.identities
    assert back.wall_time == rep.wall_time  # bit-identical float round-trip
    path2 = tmp_path / "rep2.json"
    back.write(path2)
    assert path.read_text() == path2.read_text()


def test_config_loading(tmp_path):
    cfg_file = tmp_path / "cfg.toml"
    cfg_file.write_text(
        """
seed = 7
[tol]
integer = 1e-5
[grid]
points_x = 128
halfwidth_x = 8.0
"""
    )
    cfg = load_config(str(cfg_file))
    assert cfg.seed == 7
    assert cfg.tol.integer == 1e-5
    assert cfg.grid.points_x == 128
    assert cfg.grid.step == pytest.approx(0.125)
    bad = tmp_path / "bad.toml"
    bad.write_text("[tol]\nnonsense = 1\n")
    with pytest.raises(ValueError):
        load_config(str(bad))


def test_worker_env_override(monkeypatch):
    monkeypatch.setenv("PHASEWEYL_WORKERS", "6")
    assert load_config().workers == 6
    monkeypatch.setenv("PHASEWEYL_WORKERS", "junk")
    assert load_config().workers == 1


def _cli(*args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "phaseweyl.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("cli")


def test_cli_compute_cayley(workdir):
    (workdir / "J.json").write_text(json.dumps({"n": 1, "rows": [[0.0, 1.0], [-1.0, 0.0]]}))
    out = _cli("compute", "cayley", str(workdir / "J.json"), cwd=workdir)
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    np.testing.assert_allclose(payload["value"], 0.5 * np.eye(2), atol=1e-12)


def test_cli_compute_tau(workdir):
    frames = {
        "xstar.json": [[0.0, 1.0]],
        "graph2.json": [[1.0, 2.0]],
        "xaxis.json": [[1.0, 0.0]],
    }
    for name, cols in frames.items():
        (workdir / name).write_text(json.dumps({"n": 1, "columns": cols}))
    out = _cli(
        "compute", "tau",
        str(workdir / "xstar.json"), str(workdir / "graph2.json"), str(workdir / "xaxis.json"),
        cwd=workdir,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["value"] == 1


def test_cli_nu_quarter_rotation(workdir):
    import numpy as np

    H = (np.pi / 2) * np.eye(2)
    (workdir / "quarter.json").write_text(json.dumps({"n": 1, "generator": H.tolist()}))
    out = _cli("nu", "--path", str(workdir / "quarter.json"), "--route", "both", cwd=workdir)
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["value"] == -1
    assert payload["route"] == "both"


def test_cli_exit_codes(workdir):
    # unknown suite: usage error (2)
    out = _cli("verify", "bogus", cwd=workdir)
    assert out.returncode == 2
    # missing file: 2
    out = _cli("compute", "cayley", str(workdir / "missing.json"), cwd=workdir)
    assert out.returncode == 2
    # precondition failure inside the math: 1
    (workdir / "I.json").write_text(json.dumps({"n": 1, "rows": [[1.0, 0.0], [0.0, 1.0]]}))
    out = _cli("compute", "cayley", str(workdir / "I.json"), cwd=workdir)
    assert out.returncode == 1
    assert "error" in out.stderr


def test_cli_gen_and_report(workdir):
    out = _cli(
        "gen", "--kind", "symplectic", "--n-min", "1", "--n-max", "2",
        "--count", "5", "--seed", "3", "--out", str(workdir / "corpus.json"),
        cwd=workdir,
    )
    assert out.returncode == 0
    corpus = InstanceCorpus.read(workdir / "corpus.json")
    assert len(corpus.instances) == 5
    assert corpus.seed == 3


def test_cli_mp_symbol(workdir):
    (workdir / "J.json").write_text(json.dumps({"n": 1, "rows": [[0.0, 1.0], [-1.0, 0.0]]}))
    out = _cli("mp", "symbol", "--matrix", str(workdir / "J.json"), "--nu", "3", cwd=workdir)
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["nu"] == 3
    assert payload["amplitude"] == pytest.approx(2**-0.5)


def test_cli_mp_apply_and_ps(workdir):
    from phaseweyl.config import GridConfig
    from phaseweyl.grids import coherent_state, standard_axes, write_grid, read_grid

    cfg = GridConfig(points_x=128, halfwidth_x=8.0, points_z=256)
    axes_x, _ = standard_axes(cfg)
    f = coherent_state(axes_x, [0.5], [0.0])
    write_grid(f, workdir / "f.bin")
    word = {
        "factors": [
            {"type": "QFT", "P": [[0.0]], "L": [[1.0]], "Q": [[0.0]], "m": 0}
        ]
    }
    (workdir / "word.json").write_text(json.dumps(word))
    cfgfile = workdir / "grid.toml"
    cfgfile.write_text("[grid]\npoints_x = 128\nhalfwidth_x = 8.0\npoints_z = 256\n")
    out = _cli(
        "mp", "apply", "--config", str(cfgfile),
        "--word", str(workdir / "word.json"),
        "--in", str(workdir / "f.bin"), "--out", str(workdir / "g.bin"),
        cwd=workdir,
    )
    assert out.returncode == 0, out.stderr
    g = read_grid(workdir / "g.bin")
    assert abs(g.norm() - 1.0) < 1e-8
    out = _cli(
        "ps", "uphi", "--config", str(cfgfile),
        "--in", str(workdir / "f.bin"), "--out", str(workdir / "F.bin"),
        cwd=workdir,
    )
    assert out.returncode == 0, out.stderr
    F = read_grid(workdir / "F.bin")
    assert abs(F.norm() - 1.0) < 1e-6
    out = _cli("ps", "cr-residual", "--config", str(cfgfile), "--in", str(workdir / "F.bin"), cwd=workdir)
    assert out.returncode == 0, out.stderr
    assert json.loads(out.stdout)["cr_residual"] < 1e-4


def test_suite_worker_invariance():
    import dataclasses as dc

    from phaseweyl.config import DEFAULT
    from phaseweyl.suites import run_suite

    rep1 = run_suite("alm", DEFAULT)
    rep2 = run_suite("alm", dc.replace(DEFAULT, workers=3))
    assert [dc.asdict(a) for a in rep1.identities] == [dc.asdict(b) for b in rep2.identities]


def test_cli_compute_alm_and_mu_ell(workdir):
    # alm of the transversal pair (X*, X) with principal lifts: -1
    (workdir / "lift_star.json").write_text(
        json.dumps({"w_re": [[1.0]], "w_im": [[0.0]], "theta": 0.0})
    )
    (workdir / "lift_x.json").write_text(
        json.dumps({"w_re": [[-1.0]], "w_im": [[0.0]], "theta": np.pi})
    )
    out = _cli(
        "compute", "alm", str(workdir / "lift_star.json"), str(workdir / "lift_x.json"),
        cwd=workdir,
    )
    assert out.returncode == 0, out.stderr
    assert json.loads(out.stdout)["value"] == -1
    # mu-ell of the quarter rotation relative to X*: -1
    H = (np.pi / 2) * np.eye(2)
    (workdir / "quarter.json").write_text(json.dumps({"n": 1, "generator": H.tolist()}))
    (workdir / "xstar.json").write_text(json.dumps({"n": 1, "columns": [[0.0, 1.0]]}))
    out = _cli(
        "compute", "mu-ell", str(workdir / "quarter.json"), str(workdir / "xstar.json"),
        cwd=workdir,
    )
    assert out.returncode == 0, out.stderr
    assert json.loads(out.stdout)["value"] == -1
    # sampled-path schema: static sample lists work wherever no dyadic
    # refinement is required
    from phaseweyl.sympcore import rotation_path

    samples = rotation_path(1, np.pi / 2).samples(64)
    (workdir / "quarter_samples.json").write_text(
        json.dumps({"n": 1, "samples": [m.tolist() for m in samples]})
    )
    out = _cli(
        "compute", "mu-ell", str(workdir / "quarter_samples.json"), str(workdir / "xstar.json"),
        cwd=workdir,
    )
    assert out.returncode == 0, out.stderr
    assert json.loads(out.stdout)["value"] == -1


def test_cli_verify_writes_report(workdir):
    out = _cli("verify", "cayley", "--json", str(workdir / "cayley.json"), cwd=workdir)
    assert out.returncode == 0, out.stderr
    assert "PASS suite cayley" in out.stdout
    reports = json.loads((workdir / "cayley.json").read_text())
    assert reports[0]["passed"] is True
    out = _cli("report", str(workdir / "cayley.json"), cwd=workdir)
    assert out.returncode == 0
