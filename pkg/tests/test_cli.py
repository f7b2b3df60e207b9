import pytest

from narayana.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_convert(capsys):
    assert run(capsys, "convert", "27") == (0, "10010010\n")
    code, out = run(capsys, "convert", "--from-digits", "10010010")
    assert code == 0 and out.strip() == "27"


def test_eval_exit_codes(capsys):
    code, out = run(capsys, "eval", "?msd_nara Ax Ey y=x+1")
    assert code == 0 and "TRUE" in out
    code, out = run(capsys, "eval", "?msd_nara Ex x+1=0")
    assert code == 1 and "FALSE" in out


def test_usage_errors(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["eval", "?msd_nara x="]) == 2
    capsys.readouterr()


def test_word_and_seq(capsys):
    code, out = run(capsys, "word", "NA", "--prefix", "14")
    assert code == 0 and out.strip() == "01200101201200"
    code, out = run(capsys, "seq", "p1", "--range", "1..4")
    assert code == 0 and [line.split()[1] for line in out.splitlines()] == ["2", "6", "8", "11"]


def test_script(tmp_path, capsys):
    f = tmp_path / "t.wal"
    f.write_text('def two "?msd_nara y=2*x":\neval ok "?msd_nara Ax $two(x,x+x)":\n'
                 'eval bad "?msd_nara Ex x>0 & $two(x,x)":\n')
    code, out = run(capsys, "script", str(f))
    assert code == 0 and "ok" in out
    code, _ = run(capsys, "script", "--strict", str(f))
    assert code == 1


def test_bounds(capsys):
    code, out = run(capsys, "bounds", "--k", "1")
    assert code == 0 and "-0.7975208238" in out


def test_oracle(capsys):
    code, out = run(capsys, "oracle", "canonical", "27")
    assert code == 0 and "10010010" in out
