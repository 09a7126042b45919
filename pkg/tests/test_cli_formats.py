import io

import pytest

from altconn.cli import main
from altconn.errors import ParameterError
from altconn.formats import (read_codebook, read_graph, read_path_system, write_codebook,
                             write_graph, write_path_system)
from altconn.graph_core import ColoredGraph, Graph, color_uniform, gnp_generate
from altconn.oracle import CodeBook
from altconn.pathsys import PathSystem


def test_graph_round_trip(tmp_path):
    g = gnp_generate(40, 0.2, 1)
    write_graph(g, tmp_path / "g.txt")
    assert read_graph(tmp_path / "g.txt") == g
    cg = color_uniform(g, 3, 2)
    write_graph(cg, tmp_path / "cg.txt")
    assert read_graph(tmp_path / "cg.txt") == cg
    lines = (tmp_path / "cg.txt").read_text().splitlines()
    assert lines[0] == f"40 {g.m}"
    pairs = [tuple(map(int, ln.split()[:2])) for ln in lines[1:]]
    assert pairs == sorted(pairs) and all(u < v for u, v in pairs)


def test_graph_reader_errors():
    with pytest.raises(ParameterError):
        read_graph(io.StringIO("3 2\n0 1\n"))
    with pytest.raises(ParameterError):
        read_graph(io.StringIO("3 2\n0 1\n1 2 0\n"))
    with pytest.raises(ParameterError):
        read_graph(io.StringIO("3 1\n0 x\n"))
    with pytest.raises(ParameterError):
        read_graph(io.StringIO(""))


def test_color_count_inference():
    cg = read_graph(io.StringIO("3 2\n0 1 0\n1 2 0\n"))
    assert isinstance(cg, ColoredGraph) and cg.r == 2
    assert read_graph(io.StringIO("3 2\n0 1 0\n1 2 4\n")).r == 5
    assert read_graph(io.StringIO("3 2\n0 1 0\n1 2 0\n"), r=3).r == 3


def test_path_system_round_trip():
    ps = PathSystem(0, 5, 3, [(0, 1, 2, 5), (0, 3, 4, 5)])
    buf = io.StringIO()
    write_path_system(ps, buf)
    assert buf.getvalue().splitlines()[0] == "0 5 3 2"
    assert read_path_system(io.StringIO(buf.getvalue())) == ps
    with pytest.raises(ParameterError):
        read_path_system(io.StringIO("0 5 3 2\n0 1 2 5\n"))


def test_codebook_round_trip():
    cb = CodeBook(3, 4, ((0, 1, 3), (2, 2, 0)))
    buf = io.StringIO()
    write_codebook(cb, buf)
    assert buf.getvalue().splitlines()[0] == "3 2 4"
    assert read_codebook(io.StringIO(buf.getvalue())) == cb
    with pytest.raises(ParameterError):
        read_codebook(io.StringIO("3 1 2\n0 1\n"))


def test_cli_pipeline(tmp_path, capsys):
    g, cg, ps = tmp_path / "g.txt", tmp_path / "cg.txt", tmp_path / "ps.txt"
    assert main(["gen", "--n", "60", "--p", "0.5", "--seed", "1", "--out", str(g)]) == 0
    assert main(["color", "--graph", str(g), "--seed", "2", "--out", str(cg)]) == 0
    assert main(["dense", "--graph", str(cg), "--u", "0", "--v", "1", "--ell", "4",
                 "--out", str(ps)]) == 0
    assert main(["verify", "--graph", str(cg), "--paths", str(ps)]) == 0
    assert "ok:" in capsys.readouterr().out
    assert main(["sparse", "--graph", str(cg), "--u", "0", "--v", "1", "--ell", "3",
                 "--k", "2", "--out", str(ps)]) == 0
    assert main(["verify", "--graph", str(cg), "--paths", str(ps)]) == 0


def test_cli_exit_codes(tmp_path):
    assert main(["gen", "--n", "5", "--p", "1.5"]) == 2
    cfg = tmp_path / "gap.cfg"
    cfg.write_text("mode = kappa2\nn_grid = 200\np = 0.01\ntrials = 1\npair_sample = 3\n"
                   "seed = 1\n")
    assert main(["experiment", "--config", str(cfg), "--out", str(tmp_path / "o.csv")]) == 3
    cgf = tmp_path / "cg.txt"
    write_graph(color_uniform(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), 2, 0), cgf)
    bad = tmp_path / "bad.txt"
    bad.write_text("0 3 2 1\n0 3 3\n")
    assert main(["verify", "--graph", str(cgf), "--paths", str(bad)]) == 4
    big = tmp_path / "big.txt"
    write_graph(gnp_generate(12, 0.9, 0), big)
    assert main(["oracle", "--graph", str(big), "--ell", "2", "--r", "2"]) == 5


def test_cli_oracle_and_kappa2(tmp_path, capsys):
    k4 = tmp_path / "k4.txt"
    write_graph(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]), k4)
    assert main(["oracle", "--graph", str(k4), "--ell", "2", "--r", "2"]) == 0
    assert capsys.readouterr().out.strip() == "1"
    out = tmp_path / "k.csv"
    assert main(["kappa2", "--n", "200", "--p", "0.4", "--pairs", "10", "--out", str(out)]) == 0
    assert out.read_text().startswith("mode,n,p,r,ell,k,trial,pair_u")
    assert main(["pseudo", "--n", "300", "--p", "0.5", "--pairs", "4",
                 "--out", str(tmp_path / "p.csv")]) == 0


def test_cli_packaged_experiment(tmp_path):
    out = tmp_path / "oracle.csv"
    assert main(["experiment", "--config", "oracle", "--out", str(out)]) == 0
    first = out.read_bytes()
    assert main(["experiment", "--config", "oracle", "--out", str(out)]) == 0
    assert out.read_bytes() == first
    assert main(["experiment", "--config", "no-such-config"]) == 2
