import csv

import pytest

from mvi_tseng.cli import main


def test_bench_example41(tmp_path, capsys):
    code = main(["bench", "--example", "41", "--eps-list", "1e-1,1e-2", "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert out.count("status=Converged") == 2
    with open(tmp_path / "summary.csv", newline="") as fh:
        assert len(list(csv.reader(fh))) == 3
    assert (tmp_path / "trace_0.1.csv").exists() and (tmp_path / "trace_0.01.csv").exists()


def test_bench_seeded_selection(tmp_path):
    args = ["bench", "--example", "41", "--eps-list", "1e-2", "--selection", "random",
            "--seed", "7", "--no-verify"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    a = (tmp_path / "a" / "trace_0.01.csv").read_text().splitlines()
    b = (tmp_path / "b" / "trace_0.01.csv").read_text().splitlines()
    assert [r.rsplit(",", 1)[0] for r in a] == [r.rsplit(",", 1)[0] for r in b]


@pytest.mark.parametrize("eps", ["", "1e-2,1e-1", "abc"])
def test_bench_bad_eps_list(tmp_path, eps):
    assert main(["bench", "--example", "41", "--eps-list", eps, "--out", str(tmp_path)]) == 2


def test_unknown_example():
    assert main(["bench", "--example", "7"]) == 2


def test_solve_with_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("problem = example42\ntolerances = 1e-7\noutput = res\n")
    assert main(["solve", "--config", str(cfg)]) == 0
    assert (tmp_path / "res" / "summary.csv").exists()
    assert "verified=True" in capsys.readouterr().out


def test_solve_bad_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("problem = example41\nfoo = 1\n")
    assert main(["solve", "--config", str(cfg)]) == 2


@pytest.mark.parametrize("point,code,word", [("0,0", 0, "PASS"), ("1,1", 1, "FAIL")])
def test_verify(capsys, point, code, word):
    assert main(["verify", "--example", "41", "--point", point, "--samples", "2000"]) == code
    assert capsys.readouterr().out.startswith(word)


@pytest.mark.parametrize("point", ["-1,0", "0,0,0"])
def test_verify_rejects_bad_point(point):
    assert main(["verify", "--example", "41", "--point", point]) == 2


def test_no_subcommand():
    assert main([]) == 2
