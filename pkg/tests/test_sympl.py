from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from lieforms.catalog import catalog, parse_form
from lieforms.exterior import Form, monomials
from lieforms.lie import ValidationError, parse_salamon
from lieforms.linalg import QQ, ssum
from lieforms.regress import symplectic_structures
from lieforms.sympl import SymplecticStructure

STRUCTURES = [(d, SymplecticStructure(g, om)) for d, g, om in symplectic_structures()]
IDS = [d for d, _ in STRUCTURES]


@pytest.mark.parametrize("desc,s", STRUCTURES, ids=IDS)
def test_operator_identities(desc, s):
    bad = [k for k, ok in s.operator_identities().items() if not ok]
    assert not bad


@pytest.mark.parametrize("desc,s", STRUCTURES, ids=IDS)
def test_primitive_characterizations(desc, s):
    for k in range(s.dim + 1):
        assert s.primitive(k) == s.primitive_via_L(k)
        if k > s.n:
            assert s.primitive(k).dim == 0


@pytest.mark.parametrize("desc,s", STRUCTURES, ids=IDS)
def test_tseng_yau_consistency(desc, s):
    t = s.tseng_yau_tables()
    assert t.harmonic_d_plus_dLambda == t.d_plus_dLambda
    assert t.harmonic_ddLambda == t.ddLambda
    for k in t.b:
        assert t.dLambda[k] == t.b[s.dim - k]
        assert t.tseng_yau_sum(k) == t.d_plus_dLambda[k]
    if s.g.is_unimodular():
        assert t.equivalence()["agree"]


def _random_form(n, k, coeffs):
    mons = monomials(n, k)
    return Form(n, {m: QQ(c) for m, c in zip(mons, coeffs)}, QQ)


@given(st.sampled_from(STRUCTURES), st.integers(0, 6), st.lists(st.integers(-3, 3), min_size=20, max_size=20))
def test_primitive_decomposition_formula_matches_solver(pair, k, coeffs):
    _, s = pair
    k = min(k, s.dim)
    a = _random_form(s.dim, k, coeffs)
    comps = s.primitive_decompose(a)
    assert s.reconstruct(comps) == a
    assert all(not s.Lambda.apply(B) for _, B in comps)
    assert comps == s.primitive_decompose_solve(a)


@given(st.sampled_from(STRUCTURES), st.integers(0, 6), st.lists(st.integers(-3, 3), min_size=20, max_size=20))
def test_star_involution_and_pairing(pair, k, coeffs):
    _, s = pair
    k = min(k, s.dim)
    a = _random_form(s.dim, k, coeffs)
    assert s.sympl_star(s.sympl_star(a)) == a


def test_sympl_n1_values():
    e = catalog("sympl_n1")
    s = SymplecticStructure(e.algebra, e.omega())
    t = s.tseng_yau_tables(harmonic_check=False)
    assert [t.b[k] for k in range(7)] == [1, 3, 4, 4, 4, 3, 1]
    assert [t.d_plus_dLambda[k] for k in range(7)] == [1, 3, 7, 7, 7, 3, 1]
    assert not t.hlc and not t.ddlambda_lemma
    comps = s.primitive_decompose(parse_form("126-145-2*235", 6))
    assert comps == [(0, parse_form("-1/2*126-145-1/2*235", 6)), (1, parse_form("-3/2*2", 6))]
    subs = s.omega_subgroups()
    assert subs.direct[2] and subs.full[2]
    assert not subs.direct[3] and not subs.full[3]
    f = parse_form("136", 6).to_vector(3)
    assert subs.spaces[(0, 3)].contains(f) and subs.spaces[(1, 1)].contains(f)


def test_solv_h3_and_g34():
    e = catalog("solv_h3")
    s = SymplecticStructure(e.algebra, e.omega())
    t = s.tseng_yau_tables(harmonic_check=False)
    assert [t.d_plus_dLambda[k] for k in range(7)] == [1, 3, 6, 6, 6, 3, 1]
    subs = s.omega_subgroups()
    assert not ssum(subs.spaces[(0, 3)], subs.spaces[(1, 1)]).contains(parse_form("136", 6).to_vector(3))
    e = catalog("g34_g35")
    s = SymplecticStructure(e.algebra, e.omega())
    t = s.tseng_yau_tables(harmonic_check=False)
    assert t.hlc and t.ddlambda_lemma and t.d_plus_dLambda_is_b
    assert [t.b[k] for k in range(7)] == [1, 2, 3, 4, 3, 2, 1]


def test_h7_hlc_pattern():
    e = catalog("h7")
    assert SymplecticStructure(e.algebra, e.omega()).hlc_check() == {0: True, 1: True, 2: False, 3: True}


def test_validation():
    g = parse_salamon("(0^4,12,13)")
    with pytest.raises(ValidationError):
        SymplecticStructure(g, parse_form("12+34", 6))
    with pytest.raises(ValidationError):
        SymplecticStructure(g, parse_form("15", 6))
    with pytest.raises(ValidationError):
        SymplecticStructure(parse_salamon("(0,0,12)"), parse_form("12", 3))
