import json
from contextlib import nullcontext
from pathlib import Path

import pytest

from kpearson.cli import main

DATA = Path(__file__).resolve().parents[1] / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_family_list(capsys):
    code, out, _ = run(capsys, "family", "list")
    assert code == 0
    assert set(json.loads(out)["families"]) >= {"ball", "biangle", "triangle", "laguerre_jacobi",
                                                "laguerre_laguerre", "tensor"}


def test_build_counts(capsys):
    code, out, _ = run(capsys, "build", "--family", "ball", "--param", "alpha=1", "--nmax", "3")
    assert code == 0 and json.loads(out)["polynomials"]["count"] == 10
    code, out, _ = run(capsys, "build", "--family", "triangle", "--param", "alpha=1/2", "beta=1/3", "gamma=2",
                       "--nmax", "2")
    polys = json.loads(out)["polynomials"]["polynomials"]
    assert len(polys) == 6
    assert (polys[2]["n"], polys[2]["m"], polys[2]["P"]) == (1, 1, "y - 9/13*x")


def test_output_is_deterministic(capsys, tmp_path):
    args = ["operator", "classify", "--family", "ball", "--nmax", "3"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "ball", "nmax": 3}))
    _, c, _ = run(capsys, "operator", "classify", "--config", str(cfg))
    assert c == a


def test_flags_override_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "ball", "params": {"alpha": "2"}, "nmax": 2}))
    _, out, _ = run(capsys, "build", "--config", str(cfg), "--param", "alpha=1/2")
    assert json.loads(out)["metadata"]["config"]["params"] == {"alpha": "1/2"}


@pytest.mark.parametrize("argv", [
    ["build", "--family", "nope"],
    ["build", "--family", "ball", "--param", "alpha=-1"],
    ["build", "--family", "ball", "--param", "alpha=abc"],
    ["build", "--family", "ball", "--nmax", "13"],
    ["pearson", "verify", "--family", "ball"],
    ["pearson", "verify", "--family", "ball", "--pair", "/nonexistent.json"],
    ["frobnicate"],
])
def test_errors_are_single_line(capsys, argv):
    with pytest.raises(SystemExit) if argv == ["frobnicate"] else nullcontext():
        code = main(argv)
        assert code != 0
    err = capsys.readouterr().err
    assert err.startswith("error:") and err.count("\n") == 1


def test_pearson_derive_biangle(capsys):
    code, out, _ = run(capsys, "pearson", "derive", "--family", "biangle", "--no-search")
    rep = json.loads(out)["pearson"]
    final = next(p for p in rep["printed_pairs"] if p["final"])
    assert final["passed"]
    assert final["pair"]["Phi"] == [["-x^2 + x", "-1/2*x*y + 1/2*y"], ["-1/2*x*y + 1/2*y", "-1/4*y^2 + 1/4"]]
    assert [s["passed"] for s in rep["symmetrizers"]] == [False, True]


def test_pearson_derive_ball_includes_symmetric_pair(capsys):
    code, out, _ = run(capsys, "pearson", "derive", "--family", "ball")
    rep = json.loads(out)["pearson"]
    phis = [c["pair"]["Phi"] for c in rep["search"]["candidates"]]
    assert [["-x^2 + 1", "-x*y"], ["-x*y", "-y^2 + 1"]] in phis


def test_verify_laguerre_laguerre_intermediate(capsys):
    code, out, _ = run(capsys, "pearson", "verify", "--family", "laguerre_laguerre",
                       "--pair", str(DATA / "laguerre_laguerre_paper_intermediate.json"))
    rep = json.loads(out)["verify"]
    assert code == 0 and not rep["passed"] and rep["erratum_flag"]
    assert rep["residual"] == ["0", "x"]
    code, out, _ = run(capsys, "pearson", "verify", "--family", "laguerre_laguerre", "--strict",
                       "--pair", str(DATA / "laguerre_laguerre_paper_intermediate.json"))
    assert code == 1
    code, out, _ = run(capsys, "pearson", "verify", "--family", "laguerre_laguerre",
                       "--pair", str(DATA / "laguerre_laguerre_corrected_intermediate.json"))
    assert json.loads(out)["verify"]["passed"]


def test_verify_divergence_kind(capsys, tmp_path):
    f = tmp_path / "pair.json"
    f.write_text(json.dumps({"kind": "divergence", "matrix": [["1-x^2", "-x*y"], ["-x*y", "1-y^2"]],
                             "vector": ["-(2*alpha+3)*x", "-(2*alpha+3)*y"]}))
    _, out, _ = run(capsys, "pearson", "verify", "--family", "ball", "--param", "alpha=3/2", "--pair", str(f))
    assert json.loads(out)["verify"]["passed"]


def test_classify_cli(capsys):
    _, out, _ = run(capsys, "operator", "classify", "--family", "triangle", "--nmax", "6")
    c = json.loads(out)["operator"]["classification"]
    assert c["kind"] == "krall_sheffer" and c["formula"] == "-n(n+alpha+beta+gamma+2)"
    _, out, _ = run(capsys, "operator", "classify", "--family", "laguerre_laguerre", "--nmax", "5")
    c = json.loads(out)["operator"]["classification"]
    assert c["kind"] == "semiclassical"
    assert any(t["n"] == r["n"] + 1 for r in c["reports"] for t in r["coefficients"])


def test_orthocheck_cli(capsys):
    code, out, _ = run(capsys, "orthocheck", "--family", "biangle", "--nmax", "5", "--tol", "1e-10")
    rep = json.loads(out)["orthocheck"]
    assert code == 0 and rep["passed"] and rep["precision"] == 34


def test_markdown_report_layout(capsys, tmp_path):
    code, _, _ = run(capsys, "report", "all", "--family", "ball", "--nmax", "3", "--format", "markdown",
                     "--out", str(tmp_path) + "/")
    text = (tmp_path / "ball.md").read_text()
    headings = [line for line in text.splitlines() if line.startswith("## ")]
    order = ["## Weight", "## Raw system", "## Symmetrizer (printed)", "## Pearson pair (symmetrized pair)",
             "## Operator", "## Eigenvalues"]
    idx = [headings.index(h) for h in order]
    assert idx == sorted(idx)
