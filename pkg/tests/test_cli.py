from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from lieforms.cli import (SCHEMA_VERSION, decode_form, decode_scalar, dumps, encode, encode_form, main,
                          parse_input)
from lieforms.exterior import Form
from lieforms.lie import ParseError
from lieforms.linalg import QQ, QQI, Scalar

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tables_golden(capsys):
    code, out, _ = run(capsys, "tables", "--catalog", "iwasawa", "--format", "md")
    assert code == 0
    assert out == (GOLDEN / "iwasawa_tables.md").read_text()


def test_class_sweep_golden(capsys):
    code, out, _ = run(capsys, "sweep", "--catalog", "iwasawa_def", "--over", "class=i,ii.a,ii.b,iii.a,iii.b")
    assert code == 0
    assert out == (GOLDEN / "iwasawa_classes.md").read_text()


def test_deldelbar_torus(capsys):
    code, out, _ = run(capsys, "deldelbar", "--catalog", "torus", "--param", "n=2")
    assert code == 0 and "lemma: true" in out.splitlines()


@pytest.mark.parametrize("name,values,expected", [
    ("dcx_solv", "0,1/2,1", [(0, 2), (1, 1), (1, 1)]),
    ("dcx_6a", "0,1/2,1", [(3, 3), (4, 3), (4, 2)]),
])
def test_dcx_sweeps(capsys, name, values, expected):
    code, out, _ = run(capsys, "sweep", "--catalog", name, "--over", f"t={values}", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [(r["plus"], r["minus"]) for r in doc["summary"]] == expected


def test_json_deterministic_and_versioned(capsys):
    _, a, _ = run(capsys, "symplectic", "--catalog", "sympl_n1", "--format", "json")
    _, b, _ = run(capsys, "symplectic", "--catalog", "sympl_n1", "--format", "json")
    assert a == b
    doc = json.loads(a)
    assert doc["schema_version"] == SCHEMA_VERSION
    assert dumps(doc) == a


def test_json_roundtrip_of_witnesses(capsys):
    _, out, _ = run(capsys, "lizhang", "--catalog", "h2", "--degree", "2", "--format", "json")
    doc = json.loads(out)
    w = doc["result"]["stages"]["2"]["full_witness"]
    f = decode_form(w)
    assert encode_form(f) ["terms"] == w["terms"]
    assert json.loads(dumps(doc)) == doc


@given(st.fractions(max_denominator=9), st.fractions(max_denominator=9))
def test_scalar_wire_format(re_, im_):
    s = Scalar(re_, im_, True)
    assert decode_scalar(encode(s)) == s


def test_form_wire_format():
    f = Form(6, {(1, 4): QQI("1/2-i"), (2, 3, 5): QQI("3")}, QQI)
    assert decode_form(json.loads(json.dumps(encode(f)))) == f


@pytest.mark.parametrize("argv,code", [
    (["bogus"], 3),
    (["betti", "--catalog", "nope"], 3),
    (["catalog", "show", "nope"], 3),
    (["betti"], 1),
    (["betti", "--catalog", "torus", "--param", "n"], 1),
    (["hodge", "--catalog", "kt"], 2),
    (["symplectic", "--catalog", "h16"], 2),
    (["betti", "--catalog", "h7", "--param", "alpha=1"], 2),
    (["lizhang", "--catalog", "iwasawa", "--S", "(2,0),(0,x)"], 1),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_input_document(tmp_path, capsys):
    p = tmp_path / "kt.txt"
    p.write_text("algebra: (0,0,12,0)\n"
                 "J:\n  0 -1 0 0\n  1 0 0 0\n  0 0 0 -1\n  0 0 1 0\n"
                 "symplectic: 14+23\n"
                 "dcomplex:\n  plus: 1, 4\n  minus: 2, 3\n")
    code, out, _ = run(capsys, "validate", str(p), "--format", "json")
    assert code == 0
    r = json.loads(out)["result"]
    assert r["complex"]["integrable"] and r["symplectic"]["nondegenerate"] and r["dcomplex"]["integrable"]
    code, out, _ = run(capsys, "hodge", str(p), "--format", "json")
    assert json.loads(out)["result"]["totals"] == [1, 3, 4, 3, 1]


def test_input_validation_errors(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("algebra: (0^3,12,13,15+34)\n")
    assert run(capsys, "betti", str(p))[0] == 2
    p.write_text("algebra: (0,0,12\n")
    assert run(capsys, "betti", str(p))[0] == 1
    p.write_text("algebra: (0^4,12,13)\nsymplectic: 12+34\n")
    code, _, err = run(capsys, "symplectic", str(p))
    assert code == 2 and "degenerate" in err
    p.write_text("algebra: (0,0,12,0)\nJ:\n 0 1 0 0\n 1 0 0 0\n 0 0 0 -1\n 0 0 1 0\n")
    code, _, err = run(capsys, "hodge", str(p))
    assert code == 2 and "J^2" in err


def test_complex_input_with_params(tmp_path, capsys):
    p = tmp_path / "def.txt"
    p.write_text("algebra:\n  complex 3\n  df1 = 0\n  df2 = 0\n  df3 = s*f1f2 + f1F1\nparams: s = -1\n")
    code, out, _ = run(capsys, "bottchern", str(p), "--format", "json")
    assert code == 0
    assert json.loads(out)["result"]["dims"]["2,2"] == 7


def test_parse_input_blocks():
    doc = parse_input("algebra: (0,0,12,0)  # heisenberg x R\nparams: a = 1, b = 1/2\ndcomplex: (+-+-)\n")
    assert doc.params == {"a": "1", "b": "1/2"} and doc.dcomplex == "+-+-"
    with pytest.raises(ParseError):
        parse_input("symplectic: 12\n")
    with pytest.raises(ParseError):
        parse_input("algebra: (0,0,12)\nfoo: 1\n")


def test_other_commands(capsys):
    for argv in (["betti", "--catalog", "iwasawa", "--field", "qi", "--with-reps"],
                 ["aeppli", "--catalog", "h16"], ["varouchas", "--catalog", "iwasawa"],
                 ["frolicher", "--catalog", "iwasawa"], ["harmonic", "--catalog", "h2"],
                 ["dcomplex", "--catalog", "dcx_1"], ["massey", "--catalog", "h7", "--triple", "1;3;2"],
                 ["catalog", "list"], ["catalog", "show", "iwasawa_def", "--param", "class=ii.b"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and out, argv
        code, out, _ = run(capsys, *argv, "--format", "json")
        assert code == 0 and json.loads(out)["schema_version"] == SCHEMA_VERSION


def test_lizhang_single_subgroup(capsys):
    code, out, _ = run(capsys, "lizhang", "--catalog", "iwasawa", "--S", "(2,0),(0,2)", "--degree", "2",
                       "--field", "r", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"]["dim"] == 4


def test_massey_search(capsys):
    code, out, _ = run(capsys, "massey", "--catalog", "iwasawa", "--field", "qi", "--format", "json")
    assert json.loads(out)["result"]["nonzero_triples"] > 0
    code, out, _ = run(capsys, "massey", "--catalog", "iwasawa", "--field", "q", "--format", "json")
    assert json.loads(out)["result"]["nonzero_triples"] == 0
