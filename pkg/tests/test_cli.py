import importlib.resources as resources

import pytest

from dgl.cli import run_cli
from dgl.families import CSV_HEADER


@pytest.fixture
def datadir():
    return resources.files("dgl") / "data"


@pytest.fixture
def proofdir():
    return resources.files("dgl") / "proofs"


def test_subst_clash_exit_and_diagnostic(datadir, capsys):
    code = run_cli(["subst", "--sigma", str(datadir / "clash.sig"),
                    "--input", str(datadir / "ds.dgl")])
    out = capsys.readouterr().out
    assert code == 2
    assert "f" in out and "{x,x'}" in out and "{x}" in out


def test_subst_sound_output(datadir, capsys):
    code = run_cli(["subst", "--sigma", str(datadir / "sound.sig"),
                    "--input", str(datadir / "ds.dgl")])
    assert code == 0
    assert capsys.readouterr().out == (
        "<v:=-v>[{x:=x+v; x'=v}*]x+v>=0 <-> [{x:=x-v; x'=-v}*]x-v>=0\n")


def test_engines_print_identical_bytes(datadir, capsys):
    run_cli(["subst", "--sigma", str(datadir / "sound.sig"),
             "--input", str(datadir / "ds.dgl")])
    onepass = capsys.readouterr().out
    run_cli(["subst", "--sigma", str(datadir / "sound.sig"),
             "--input", str(datadir / "ds.dgl"), "--engine", "church"])
    assert capsys.readouterr().out == onepass


def test_subst_with_taboo_list(datadir, tmp_path, capsys):
    sig = tmp_path / "t.sig"
    sig.write_text("f() ~> y\n")
    inp = tmp_path / "t.dgl"
    inp.write_text("f()>=0\n")
    assert run_cli(["subst", "--sigma", str(sig), "--input", str(inp),
                    "--taboo", "y"]) == 2
    capsys.readouterr()
    assert run_cli(["subst", "--sigma", str(sig), "--input", str(inp),
                    "--taboo", "x,z'"]) == 0
    assert capsys.readouterr().out == "y>=0\n"
    assert run_cli(["subst", "--sigma", str(sig), "--input", str(inp),
                    "--taboo", "all"]) == 2


def test_fv_game_output(capsys):
    assert run_cli(["fv", "--input", "x:=x+1; {x'=-x}", "--kind", "game"]) == 0
    assert capsys.readouterr().out == "fv={x} bv={x,x'}\n"


def test_bv_output(capsys):
    assert run_cli(["bv", "--input", "x:=1 ++ y:=2"]) == 0
    assert capsys.readouterr().out == "bv={x,y}\n"


def test_check_accepts_bundled_proof(proofdir, capsys):
    assert run_cli(["check", str(proofdir / "stutter.dglp")]) == 0
    assert "ACCEPTED" in capsys.readouterr().out


def test_check_rejects_broken_proof(tmp_path, capsys):
    script = (resources.files("dgl") / "proofs" / "assign_br.dglp").read_text()
    broken = tmp_path / "broken.dglp"
    broken.write_text(script.replace('qed "v+1', 'qed "v+2'))
    assert run_cli(["check", str(broken)]) == 1


def test_missing_file_exit_code(capsys):
    assert run_cli(["subst", "--sigma", "no-such.sig",
                    "--input", "no-such.dgl"]) == 66


def test_usage_exit_code(capsys):
    assert run_cli(["subst"]) == 64
    assert run_cli([]) == 64
    assert run_cli(["subst", "--engine", "bogus", "--sigma", "a", "--input", "b"]) == 64


def test_parse_error_exit_code(tmp_path, capsys):
    sig = tmp_path / "bad.sig"
    sig.write_text("f() ~> )(\n")
    inp = tmp_path / "ok.dgl"
    inp.write_text("x>=0\n")
    assert run_cli(["subst", "--sigma", str(sig), "--input", str(inp)]) == 1


def test_fuzz_summary(tmp_path, capsys):
    code = run_cli(["fuzz", "--trials", "60", "--seed", "5",
                    "--out", str(tmp_path / "repros")])
    assert code == 0
    out = capsys.readouterr().out
    assert "60 trials" in out


def test_oracle_summary(capsys):
    code = run_cli(["oracle", "--trials", "40", "--qff-trials", "20",
                    "--seed", "6"])
    assert code == 0
    assert "0 failures" in capsys.readouterr().out


def test_bench_csv(tmp_path, capsys):
    csv = tmp_path / "bench.csv"
    code = run_cli(["bench", "--families", "seq", "--ns", "8,16",
                    "--engines", "onepass", "--reps", "5",
                    "--out", str(csv)])
    assert code == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3
    family, n, nodes_in, nodes_out, engine, median_ns, clash = \
        lines[1].split(",")
    assert (family, n, engine, clash) == ("seq", "8", "onepass", "false")
    assert int(median_ns) > 0
