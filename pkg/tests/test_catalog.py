from __future__ import annotations

import pytest

from lieforms.catalog import UnknownEntry, catalog, names, parse_form
from lieforms.lie import ValidationError
from lieforms.linalg import QQ


@pytest.mark.parametrize("name", names())
def test_entries_build(name):
    e = catalog(name)
    assert e.algebra.n >= 2
    for label in e.complex:
        e.complex_structure(label)
    for label in e.symplectic:
        assert e.omega(label).degrees() == {2}
    for label in e.dcomplex:
        e.dcx(label)


def test_unknown_and_bad_params():
    with pytest.raises(UnknownEntry):
        catalog("nope")
    with pytest.raises(ValidationError):
        catalog("iwasawa", x=1)
    with pytest.raises(ValidationError):
        catalog("h7", alpha=1)


def test_parametrized_entries():
    assert catalog("torus", n=1).algebra.n == 2
    assert catalog("dcx_solv", t="1/2").params
    assert catalog("n6c", c=2).algebra.n == 6


def test_parse_form():
    f = parse_form("16+25-1/2*34", 6)
    assert f.terms[(3, 4)] == QQ("-1/2")
    assert parse_form("0", 4).is_zero()
    assert parse_form("1.10", 10).terms == {(1, 10): QQ.one}
