import json

import pytest

from paradelta.cli import build_parser, main
from paradelta.cyclotomic import euler_phi


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, expected", [
    (["compute", "delta", "--m", "3"], "x^2 - 2*x*C - 16*x + C^3 + 8*C^2 + 16*C + 64\n"),
    (["compute", "delta-factor", "--n", "3", "--m", "3"], "C + 7\n"),
    (["compute", "gamma", "--k", "2"], "t^3 - t^2 + 7*t + 2\n"),
    (["compute", "iterate", "--n", "1"], "z^2 + c\n"),
    (["compute", "dynatomic", "--n", "2"], "z^2 + z + c + 1\n"),
])
def test_compute_text(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "delta", "--m", "2", "--format", "json")
    assert json.loads(out) == {"vars": ["x", "C"], "terms": [[1, 0, "1"], [0, 1, "-1"], [0, 0, "-4"]]}


def test_compute_csv(capsys):
    code, out, _ = run(capsys, "compute", "gamma", "--k", "2", "--format", "csv")
    assert out.splitlines() == ["exp_t,coefficient", "3,1", "2,-1", "1,7", "0,2"]


@pytest.mark.parametrize("argv", [
    ["compute", "delta", "--m", "7"],
    ["compute", "delta"],
    ["compute", "delta-factor", "--n", "6", "--m", "4"],
    ["compute", "gamma", "--k", "1"],
    ["table1", "--m", "7", "--k", "2", "--pmax", "10"],
    ["congruence", "--m", "3", "--k", "2", "--p", "2"],
    ["figure", "--kmax", "0"],
    ["roots", "--k", "1"],
    ["verify", "--precision", "20", "--suite", "constants"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table1", "--k", "2"])
    assert exc.value.code == 2


def test_table1(capsys):
    code, out, _ = run(capsys, "table1", "--m", "4", "--k", "2", "--pmax", "120")
    assert code == 0
    assert out.splitlines() == ["m,k,p"] + [f"4,2,{p}" for p in (11, 37, 71, 83, 101, 103, 109)]


def test_table1_empty(capsys):
    code, out, _ = run(capsys, "table1", "--m", "4", "--k", "8", "--pmax", "200")
    assert code == 0 and out.splitlines() == ["m,k,p"]


def test_table1_parallel(capsys):
    code, out, _ = run(capsys, "table1", "--m", "4", "--k", "2", "--pmax", "120", "--jobs", "2",
                       "--format", "json")
    assert json.loads(out)["primes"] == [11, 37, 71, 83, 101, 103, 109]


def test_congruence(capsys):
    code, out, _ = run(capsys, "congruence", "--m", "3", "--k", "2", "--p", "5")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "OK"
    assert json.loads(lines[1]) == {"m": 3, "k": 2, "p": 5, "e": 1, "ok": True}


def test_figure_single(capsys):
    code, out, _ = run(capsys, "figure", "--kmax", "1")
    assert code == 0 and out.splitlines() == ["k,re_c,im_c", "1,-1.75,0"]


def test_figure_with_grid(tmp_path, capsys):
    fig, grid = tmp_path / "fig.csv", tmp_path / "grid.csv"
    code, _, _ = run(capsys, "figure", "--kmax", "5", "--mandelbrot", "--output", str(fig),
                     "--grid-output", str(grid), "--grid-step", "0.1")
    assert code == 0
    assert len(fig.read_text().splitlines()) == 2 + sum(3 * euler_phi(k) for k in range(2, 6))
    lines = grid.read_text().splitlines()
    assert lines[0] == "re_c,im_c,iterations,inside" and len(lines) > 1


def test_figure_deterministic(capsys):
    first = run(capsys, "figure", "--kmax", "12")[1]
    assert run(capsys, "figure", "--kmax", "12")[1] == first


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--k", "7")
    lines = out.splitlines()
    assert lines[0] == "k,j,re_t,im_t,region,re_c,im_c"
    regions = [line.split(",")[4] for line in lines[1:]]
    assert regions.count("A") == 6 and regions.count("B") == 12


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "identities")
    assert code == 0 and "ok X3-parametrization" in out.splitlines()


def test_verify_regions(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "regions", "--kmax", "50")
    assert code == 0 and "ok census k=7 (6,12)" in out.splitlines()


def test_verify_constants(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "constants")
    lines = out.splitlines()
    assert "ok G1(s1,-1)=0.04330" in lines
    # G1 at (s2, T+(s2)) is 0.2027...; only |g|^2 = G1 + 1 reproduces 1.2027
    assert "ok |g|^2(s2,T+(s2))=1.2027" in lines
    assert any(line.startswith("not ok G1(s2,T+(s2))=1.2027") for line in lines)
    assert code == 1


def test_cache_flag(tmp_path, capsys):
    code, _, _ = run(capsys, "compute", "delta", "--m", "2", "--cache", str(tmp_path))
    assert code == 0 and (tmp_path / "delta_m2.v1.json").exists()


def test_parser_has_all_subcommands():
    sub = next(a for a in build_parser()._actions if a.dest == "command")
    assert set(sub.choices) == {"compute", "verify", "table1", "figure", "roots", "congruence"}
