from __future__ import annotations

import pytest

from lieforms.catalog import NILPOTENT_4D, catalog, parse_form
from lieforms.dcx import DComplexStructure, random_integrable_4d
from lieforms.lie import ValidationError, parse_salamon
from lieforms.linalg import QQ, Matrix
from lieforms.regress import DCX_EXPECTED, dcx_structures

STRUCTURES = dcx_structures()
IDS = [d for d, _, _ in STRUCTURES]


@pytest.mark.parametrize("desc,e,k", STRUCTURES, ids=IDS)
def test_involution_and_grading(desc, e, k):
    assert k.is_involution()
    assert k.K @ k.K == Matrix.identity(k.g.n, QQ)
    assert k.grading_consistent()


@pytest.mark.parametrize("desc,e,k", STRUCTURES, ids=IDS)
def test_structural_lemmas(desc, e, k):
    for name, r in k.structural_lemmas().items():
        assert r["holds"], name


@pytest.mark.parametrize("key", list(DCX_EXPECTED), ids=[f"{n}{dict(p)}" for n, p in DCX_EXPECTED])
def test_stage2_values(key):
    name, params = key
    st = catalog(name, **dict(params)).dcx().stage(2)
    assert (st.plus, st.minus, st.pure, st.full) == DCX_EXPECTED[key]


def test_witnesses():
    k = catalog("dcx_1").dcx()
    st = k.stage(2)
    assert st.full_witness is not None
    assert k.contains_class(2, 1, parse_form("14", 6))
    k = catalog("dcx_2").dcx()
    assert not k.abelian and k.stage(2).pure_witness is not None


def test_dkahler():
    e = catalog("dcx_1")
    assert e.dcx().dkahler_check(e.omega())
    assert not e.dcx().dkahler_check(parse_form("12+34+56", 6))


def test_splitting_validation():
    g = parse_salamon("(0,0,12,0)")
    with pytest.raises(ValidationError):
        DComplexStructure.from_signs(g, "++-")
    with pytest.raises(ValidationError):
        DComplexStructure(g, [{1: QQ.one}, {1: QQ(2)}], [{2: QQ.one}, {3: QQ.one}])
    with pytest.raises(ValidationError):
        DComplexStructure(g, [{1: QQ.one}, {2: QQ.one}], [{1: QQ.one}, {3: QQ.one}])
    assert not catalog("dcx_4d").dcx().integrable


def test_eigenforms_match_dual_coframe_bidegrees():
    k = catalog("dcx_6a", t="1/2").dcx()
    for ell in range(k.g.n + 1):
        plus = k.eigenforms(ell, 1)
        assert plus.dim == sum(k.bidegree_space(p, ell - p).dim for p in range(ell + 1) if (ell - p) % 2 == 0)


@pytest.mark.parametrize("name", NILPOTENT_4D)
def test_random_4d_sampler(name):
    e = catalog(name, n=2) if name == "torus" else catalog(name)
    ks = random_integrable_4d(e.algebra, 40, seed=7)
    assert len(ks) == 40
    assert all(k.integrable for k in ks)
    again = random_integrable_4d(e.algebra, 40, seed=7)
    assert [x.K for x in ks] == [x.K for x in again]
    for k in ks:
        st = k.stage(2)
        assert st.pure and st.full
