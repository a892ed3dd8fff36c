from __future__ import annotations

import pytest

from lieforms.catalog import catalog, parse_form
from lieforms.cohom import DeRham
from lieforms.cplx import CLASS_REPRESENTATIVES
from lieforms.lie import ValidationError
from lieforms.lizhang import (is_almost_kahler, plus_minus, pure_full_report, stage_blocks, stage_report,
                              type_subgroup)


def test_iwasawa_pure_and_full_all_stages():
    c = catalog("iwasawa").complex_structure()
    assert plus_minus(c) == (4, 4)
    for k, st in pure_full_report(c, range(1, 6)).items():
        assert st.pure and st.full, k


def test_real_and_complex_coefficients_agree():
    for name in ("iwasawa", "h16", "h2"):
        c = catalog(name).complex_structure()
        for S in stage_blocks(3, 2):
            assert type_subgroup(c, S, 2, "real").dim == type_subgroup(c, S, 2, "complex").dim


@pytest.mark.parametrize("label,h_minus", [("ii.a", 3), ("ii.b", 4), ("iii.a", 1), ("iii.b", 2)])
def test_deformation_classes_stage2(label, h_minus):
    c = catalog("iwasawa_def", sigma=CLASS_REPRESENTATIVES[label]).complex_structure()
    st = stage_report(c, 2)
    assert st.b == 8 and not st.pure and not st.full
    assert st.dims[((0, 2), (2, 0))] == h_minus


def test_class_i_stays_pure_and_full():
    c = catalog("iwasawa_def", sigma=CLASS_REPRESENTATIVES["i"]).complex_structure()
    st = stage_report(c, 2)
    assert st.pure and st.full


def test_small_examples():
    st = stage_report(catalog("h16").complex_structure(), 2)
    assert st.full and not st.pure
    st = stage_report(catalog("h2").complex_structure(), 2)
    assert st.pure and not st.full and st.full_witness == parse_form("15", 6)
    st = stage_report(catalog("h_0413").complex_structure(), 2)
    assert not st.pure and not st.full
    c = catalog("n6c").complex_structure()
    assert plus_minus(c) == (2, 1)
    assert plus_minus(catalog("h7").complex_structure()) == (5, 3)


def test_almost_kahler_iwasawa():
    e = catalog("iwasawa")
    c = e.complex_structure("almost_kahler")
    assert is_almost_kahler(e.algebra, e.omega(), c.J)
    st2 = stage_report(c, 2)
    assert not st2.full and st2.full_witness == parse_form("12", 6)
    st4 = stage_report(c, 4)
    assert not st4.pure
    f = parse_form("3456", 6)
    assert all(type_subgroup(c, S, 4).contains_class(f) for S in stage_blocks(3, 4))
    assert not DeRham(e.algebra).is_exact(f)


def test_bad_bidegree_rejected():
    c = catalog("iwasawa").complex_structure()
    with pytest.raises(ValidationError):
        type_subgroup(c, [(2, 1)], 2)
