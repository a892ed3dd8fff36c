from __future__ import annotations

import itertools

import pytest

from lieforms.catalog import catalog, parse_form
from lieforms.cohom import (DeRham, aeppli, bott_chern, complex_derham, conj_dolbeault, deldelbar_lemma,
                            derham, dolbeault, frolicher_report, massey_triple, varouchas_checks)
from lieforms.lie import ValidationError, parse_salamon, torus
from lieforms.regress import integrable_structures

INTEGRABLE = integrable_structures()
IDS = [d for d, _ in INTEGRABLE]


def test_known_betti_numbers():
    assert derham(parse_salamon("(0,0,12)")).dims == {0: 1, 1: 2, 2: 2, 3: 1}
    assert DeRham(torus(2)).bettis() == [1, 4, 6, 4, 1]
    assert DeRham(parse_salamon("(0^3,12,13,23)")).bettis() == [1, 3, 8, 12, 8, 3, 1]
    assert DeRham(parse_salamon("(0^2,23,-24)")).bettis() == [1, 2, 2, 2, 1]


@pytest.mark.parametrize("text", ["(0^3,12,13,23)", "(0^4,12,13)", "(-13,23,0,-56,46,0)"])
def test_poincare_duality_unimodular(text):
    b = DeRham(parse_salamon(text)).bettis()
    assert b == b[::-1]


def test_non_unimodular_breaks_duality():
    b = DeRham(parse_salamon("(0^3,13+34)")).bettis()
    assert b[0] == 1 and b[-1] == 0


def test_derham_membership():
    g = parse_salamon("(0^3,12,13,23)")
    dr = DeRham(g)
    assert dr.is_exact(g.form(1, 2)) and dr.is_closed(g.form(1, 2))
    assert not dr.is_closed(g.gen(4))
    assert dr.preimage_of(g.form(1, 2)) is not None
    assert g.d_form(dr.preimage_of(g.form(1, 3))) == g.form(1, 3)


@pytest.mark.parametrize("desc,c", INTEGRABLE, ids=IDS)
def test_hodge_symmetries(desc, c):
    bc, ae, dol, dolc = bott_chern(c).dims, aeppli(c).dims, dolbeault(c).dims, conj_dolbeault(c).dims
    n = c.crank
    for (p, q), v in bc.items():
        assert bc[(q, p)] == v
        assert ae[(n - p, n - q)] == v
        assert dolc[(q, p)] == dol[(p, q)]


@pytest.mark.parametrize("desc,c", INTEGRABLE, ids=IDS)
def test_frolicher_and_varouchas(desc, c):
    assert frolicher_report(c)["ok"]
    r = varouchas_checks(c)
    assert r["exact1"] and r["exact2"] and r["relations"] and r["identity"], r["failures"]


@pytest.mark.parametrize("desc,c", INTEGRABLE, ids=IDS)
def test_deldelbar_tests_agree(desc, c):
    r = deldelbar_lemma(c)
    assert r["agree"]
    if r["lemma"]:
        assert r["e1_degeneration"]


def test_complex_derham_matches_real():
    for desc, c in INTEGRABLE:
        if c.real is not None:
            assert complex_derham(c).bettis() == DeRham(c.real).bettis(), desc


def test_iwasawa_reps_are_closed():
    c = catalog("iwasawa").complex_structure()
    t = bott_chern(c, with_reps=True)
    for (p, q), reps in t.reps.items():
        assert len(reps) == t.dims[(p, q)]
        for f in reps:
            assert not c.cx.d_form(f)


def test_massey_h7_and_torus():
    g = catalog("h7").algebra
    vanish, rep = massey_triple(g, g.gen(1), g.gen(3), g.gen(2))
    assert not vanish
    assert rep == parse_form("-2*14-25", 6)
    t = torus(2)
    for a, b, c in itertools.product([t.gen(i) for i in range(1, 5)], repeat=3):
        if not a.wedge(b) and not b.wedge(c):
            assert massey_triple(t, a, b, c)[0]


def test_massey_iwasawa_complex_model():
    cx = catalog("iwasawa").complex_structure().cx
    vanish, rep = massey_triple(cx, cx.gen(1), cx.gen(1), cx.gen(2))
    assert not vanish


def test_massey_undefined():
    g = parse_salamon("(0^4,12,13)")
    with pytest.raises(ValidationError):
        massey_triple(g, g.gen(1), g.gen(4), g.gen(2))
    with pytest.raises(ValidationError):
        massey_triple(g, g.gen(4), g.gen(1), g.gen(2))
