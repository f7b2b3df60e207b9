import numpy as np
import pytest

from narayana import automata as fa
from narayana.logic import (CompileError, QuerySyntaxError, Registry, compile_query,
                            default_registry, evaluate, run_script)
from narayana.sequences import na_prefix


@pytest.mark.parametrize("text,line,col", [
    ("?msd_nara x=", 1, 13),
    ("?msd_nara Ax x<", 1, 16),
    ("?msd_nara (x=1", 1, 15),
    ("?msd_nara x=1\n & & y=2", 2, 4),
])
def test_syntax_errors_report_position(text, line, col):
    with pytest.raises(QuerySyntaxError) as err:
        compile_query(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_closed_queries():
    assert evaluate("?msd_nara Ax Ey y=x+1")
    assert not evaluate("?msd_nara Ex x+1=0")
    assert evaluate("?msd_nara Ax,y x+y=y+x")
    assert evaluate("?msd_nara Ax (x/2)*2=x | (x/2)*2+1=x")


def test_free_variables_are_sorted_tracks():
    a = compile_query("?msd_nara y=2*x")
    assert a.tracks == ("x", "y")


def test_unknown_names():
    with pytest.raises(CompileError):
        compile_query("?msd_nara $nope(x)")
    with pytest.raises(CompileError):
        compile_query("?msd_nara NOPE[x]=@1")
    with pytest.raises(CompileError):
        evaluate("?msd_nara x=1")


def test_subtraction_is_guarded():
    a = compile_query("?msd_nara y=x-3")
    x = np.arange(50)
    assert np.array_equal(fa.accepts_batch(a, [x, np.zeros_like(x)]), x == 3)
    # no y exists for x < 3
    e = compile_query("?msd_nara Ey y=x-3")
    assert np.array_equal(fa.accepts_batch(e, [x]), x >= 3)


def test_sequence_atoms_match_word():
    reg = default_registry()
    a = compile_query("?msd_nara NA[i]=@2", reg)
    i = np.arange(3000)
    assert np.array_equal(fa.accepts_batch(a, [i]), na_prefix(3000) == 2)
    b = compile_query("?msd_nara NA[i]=NA[i+1]", reg)
    w = na_prefix(3001)
    assert np.array_equal(fa.accepts_batch(b, [i]), w[:-1] == w[1:])


def test_script_commands():
    reg = default_registry()
    res = run_script('''
        reg even1 msd_nara "(0|1)*1":   # regex relation
        def twice "?msd_nara y=2*x":
        def nz "?msd_nara x>0":
        def zr "?msd_nara x=0":
        combine Z nz=1 zr=0:
        eval t1 "?msd_nara Ax $twice(x,x+x)":
        eval t2 "?msd_nara Ex x>0 & $twice(x,x)":
    ''', reg)
    assert [r.command for r in res] == ["reg", "def", "def", "def", "combine", "eval", "eval"]
    assert res[-2].verdict is True and res[-1].verdict is False
    assert reg.sequence("Z").n_states >= 2


def test_script_errors():
    with pytest.raises(QuerySyntaxError):
        run_script("frobnicate x \"?msd_nara x=1\"")
    with pytest.raises(QuerySyntaxError):
        run_script("def x ?msd_nara x=1")
    reg = Registry()
    run_script('def one "?msd_nara x=1"', reg)
    with pytest.raises(CompileError):
        run_script('def one "?msd_nara x=2"', reg)


def test_count_variable_must_be_free():
    reg = default_registry()
    with pytest.raises(CompileError):
        reg.define("bad", "?msd_nara Ex x=y", count_var="x")
