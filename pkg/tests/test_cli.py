import json
import subprocess
import sys

import pytest

from oiglab.cli import main
from oiglab.config import Config
from oiglab.exceptions import OIGError

FIG = {"points": ["a", "b", "c"], "labels": [0, 1], "hypotheses": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]}


@pytest.fixture
def files(tmp_path):
    cls = tmp_path / "fig.json"
    cls.write_text(json.dumps(FIG))
    graph = tmp_path / "g.json"
    assert main(["oig", "build", "--class", str(cls), "--sample", "a,b,c", "-o", str(graph)]) == 0
    return tmp_path, cls, graph


def test_hall_brute_prints_rational(files, capsys):
    _, _, graph = files
    assert main(["hall", str(graph), "--method", "brute"]) == 0
    assert capsys.readouterr().out.startswith("7/3 (≈ 2.33333)")
    assert main(["hall", str(graph), "--deterministic"]) == 0
    assert capsys.readouterr().out.startswith("2 ")


def test_verify_best_indegree(files, capsys):
    tmp, _, graph = files
    best = tmp / "best.json"
    assert main(["orient", str(graph), "--algo", "flow", "--alpha", "2", "-o", str(best)]) == 0
    assert json.loads(best.read_text())["type"] == "det"
    assert main(["verify", str(graph), "--orient", str(best), "--alpha", "2"]) == 0
    assert main(["verify", str(graph), "--orient", str(best), "--alpha", "7/3"]) == 1
    assert main(["verify", str(graph), "--orient", str(best), "--alpha", "1", "--coorient"]) == 0


def test_demo_cantor(capsys):
    assert main(["demo", "cantor", "--d", "8", "--m", "2"]) == 0
    assert "9/16" in capsys.readouterr().out
    assert main(["demo", "cantor", "--d", "16", "--m", "3", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["expected_error"] == "343/512" and out["threshold_exceeded"] is True
    assert main(["demo", "cantor", "--d", "7", "--m", "1"]) == 1


def test_pipeline_is_reproducible(tmp_path, capsys):
    def run(tag):
        d = tmp_path / tag
        d.mkdir()
        main(["class", "gen", "--kind", "random", "--points", "4", "--labels", "3",
              "--hypotheses", "6", "--seed", "9", "-o", str(d / "c.json")])
        main(["oig", "build", "--class", str(d / "c.json"), "--sample", "0,1,3", "-o", str(d / "g.json")])
        main(["orient", str(d / "g.json"), "--algo", "maxent", "--solution", str(d / "s.json"),
              "-o", str(d / "o.json")])
        capsys.readouterr()
        main(["simulate", str(d / "g.json"), "--learner", str(d / "o.json")])
        sim = capsys.readouterr().out
        return [(d / f).read_bytes() for f in ("c.json", "g.json", "s.json", "o.json")] + [sim]
    assert run("one") == run("two")


def test_other_subcommands(files, capsys):
    tmp, cls, graph = files
    assert main(["class", "validate", str(cls)]) == 0
    assert main(["hall-complexity", "--class", str(cls), "--n", "3", "--threads", "1"]) == 0
    assert json.loads(capsys.readouterr().out.splitlines()[-1])["pi"] == "2/3"
    assert main(["regularizer", "extract", str(graph)]) == 0
    assert json.loads(capsys.readouterr().out) == {"phi": ["1/9", "1/12", "0"], "layers": [3, 2, 1]}
    assert main(["orient", str(graph), "--algo", "kcore", "-o", str(tmp / "k.json")]) == 0
    assert main(["simulate", str(graph), "--learner", str(tmp / "k.json")]) == 0
    assert json.loads(capsys.readouterr().out)["error_rate"] == "1/3"
    assert main(["export", str(graph), "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("graph oig {")
    assert main(["class", "gen", "--kind", "cantor", "--d", "4"]) == 0
    assert len(json.loads(capsys.readouterr().out)["hypotheses"]) == 6


def test_domain_and_usage_errors(tmp_path, files):
    _, cls, _ = files
    assert main(["hall", str(tmp_path / "missing.json")]) == 1
    assert main(["oig", "build", "--class", str(cls), "--sample", "0,7"]) == 1
    r = subprocess.run([sys.executable, "-m", "oiglab", "hall"], capture_output=True)
    assert r.returncode == 2
    r = subprocess.run([sys.executable, "-m", "oiglab", "demo", "cantor", "--d", "8", "--m", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "9/16" in r.stdout


def test_config_precedence(tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"threads": 3, "seed": 5}))
    cfg = Config.load(path)
    monkeypatch.delenv("OIGLAB_THREADS", raising=False)
    assert cfg.resolve_threads() == 3
    monkeypatch.setenv("OIGLAB_THREADS", "2")
    assert cfg.resolve_threads() == 2
    assert cfg.resolve_threads(4) == 4
    with pytest.raises(OIGError):
        Config.from_dict({"kkt_tol": 2.0})
    with pytest.raises(OIGError):
        Config.from_dict({"bogus": 1})


def test_config_file_flag(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"seed": 1}))
    assert main(["--config", str(path), "demo", "cantor", "--d", "8", "--m", "1", "--trials", "100"]) == 0
    assert "monte_carlo" in capsys.readouterr().out
