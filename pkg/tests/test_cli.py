import json

import pytest
from click.testing import CliRunner

from catalog.repo import save_catalog
from cli import ggb

OMEGA2_P3 = json.dumps({"ker": {"matrix": {"koszul": {"forms": ["x0", "x1", "x2", "x3"], "diff": 1, "twist": 2}}}})


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(ggb, ["--trials", "10", *args])
    return invoke


# -------------------------
# Chern data and spectra
# -------------------------

def test_chern(run):
    result = run("chern", "4", "8", "8", "0", "--rank", "5")
    assert result.exit_code == 0, result.output
    assert "chern (5; 4, 8, 8, 0)" in result.output
    assert "schwarzenberger ok" in result.output


def test_chern_of_a_surface(run):
    result = run("--json", "chern", "--surface", "8", "5", "1", "0", "--h1-oy1", "1")
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["surface"]["rank"] == 5
    assert payload["chern"]["c"] == [4, 8, 8, 0]


def test_rr_json(run):
    result = run("--json", "rr", "0", "1", "0", "--rank", "2")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["chi"]["-1"] == -1


def test_spectra(run):
    result = run("spectra", "2", "--kmin=-2", "--kmax=1", "--c3-nonneg")
    assert result.exit_code == 0, result.output
    assert result.output.splitlines() == ["(0, 0)  c3 = 0", "(0, -1)  c3 = 2", "(-1, -1)  c3 = 4"]


def test_classify_pencil(run):
    result = run("classify-pencil", "x0,x1,0,x2", "0,x0,x1,x3")
    assert result.exit_code == 0, result.output
    assert result.output.startswith("Case7")


# -------------------------
# Sheaves
# -------------------------

def test_coh(run):
    result = run("--json", "--window=-2:0", "coh", "--n", "3", "--construction", OMEGA2_P3)
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["h"]["0"]["0"] == 6
    assert payload["h"]["1"]["-2"] == 1
    assert payload["chern"]["c"] == [2, 2, 0]
    assert payload["dual"] == {"h0_dual_vanishes": True, "h1_dual_vanishes": True}


def test_coh_needs_a_node(run):
    assert run("coh", "--n", "3").exit_code == 2


def test_gg_exit_codes(run):
    ok = run("gg", "--n", "2", "--construction", '{"sum": [1, 1]}')
    assert ok.exit_code == 0, ok.output
    assert ok.output.startswith("generated")
    bad = run("gg", "--n", "2", "--construction", '{"sum": [1, -1]}', "--line", "1,0,0;0,0,1")
    assert bad.exit_code == 1
    assert "splits as" in bad.output


def test_splits(run):
    result = run("splits", "--n", "3", "--construction", OMEGA2_P3, "--line", "1,0,0,0;0,1,0,0")
    assert result.exit_code == 0, result.output
    assert result.output.startswith("O(1) + O(1) + O(0)")


# -------------------------
# Points, lines, Beilinson, liaison
# -------------------------

def test_cayley_bacharach(run):
    assert run("cb", "1,0,0", "0,1,0", "0,0,1", "1,1,1", "--degree", "1").exit_code == 0
    failing = run("cb", "1,0,0", "0,1,0", "1,1,0", "0,0,1", "--degree", "1")
    assert failing.exit_code == 1
    assert "(0:0:1)" in failing.output


def test_edges(run):
    corners = ["1,0,0,0", "0,1,0,0", "0,0,1,0", "0,0,0,1"]
    assert run("edges", *corners, "--line", "1,0,1,2;0,1,3,1").exit_code == 0
    assert run("edges", *corners, "--line", "1,1,0,0;0,0,1,1").exit_code == 1
    assert run("edges", *corners, "--line", "1,0,0,0;0,1,1,1").exit_code == 2


def test_beilinson(run, tmp_path):
    path = tmp_path / "table.json"
    path.write_text(json.dumps({"n": 4, "window": [-4, 0], "default": 0,
                                "h": {"1": {"-1": 3, "0": 5}, "2": {"-3": 1}}}))
    result = run("beilinson", str(path))
    assert result.exit_code == 0, result.output
    assert "Omega^3(3) -> Omega^1(1)^3 -> O^5" in result.output

    omega = run("beilinson", "--omega", "0,1", "--omega", "2,3", "--omega", "4,5")
    assert omega.exit_code == 0, omega.output
    assert omega.output.startswith("skew rank 6")


def test_liaison(run):
    link = {
        "n": 3,
        "resolution": [
            {"src": [-2, -2, -2], "tgt": [0], "rows": [["x1*x3 - x2^2", "-x0*x3 + x1*x2", "x0*x2 - x1^2"]]},
            {"src": [-3, -3], "tgt": [-2, -2, -2], "rows": [["x0", "x1"], ["x1", "x2"], ["x2", "x3"]]},
        ],
        "a": "x0*x2 - x1^2",
        "b": "x1*x3 - x2^2",
    }
    result = run("--json", "liaison", json.dumps(link))
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["exact"] is True
    assert payload["degree"] + payload["linked_degree"] == 4

    link["a"] = "x0^2"
    assert run("liaison", json.dumps(link)).exit_code == 2


# -------------------------
# Catalog and input errors
# -------------------------

def test_catalog_list_and_verify(run):
    listed = run("catalog", "list", "--n", "5")
    assert listed.exit_code == 0
    assert listed.output.startswith("omega2-p5")
    assert run("catalog", "verify", "--entry", "pencil-line").exit_code == 0
    assert run("catalog", "verify", "--entry", "nope").exit_code == 2


def test_catalog_verify_reports_failures(run, tmp_path):
    path = tmp_path / "catalog.json"
    save_catalog(path, [{
        "id": "o4-p3",
        "n": 3,
        "construction": {"sum": [4]},
        "expected": {"chern": {"rank": 1, "c": [5, 0, 0]}},
    }])
    result = run("catalog", "verify", "--catalog", str(path))
    assert result.exit_code == 1
    assert "FAIL o4-p3" in result.output


def test_domain_errors_exit_2(run):
    assert run("--prime", "4", "spectra", "1").exit_code == 2
    assert run("chern", "1", "2", "3", "--n", "2").exit_code == 2
    assert run("spectra", "0").exit_code == 2
