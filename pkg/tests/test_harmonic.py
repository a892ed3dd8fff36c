from __future__ import annotations

import pytest

from lieforms.catalog import catalog
from lieforms.cohom import DeRham, aeppli, bott_chern, dolbeault
from lieforms.harmonic import (harmonic_dims, harmonic_space, is_psd_sampled, is_self_adjoint,
                               kernel_characterizations, laplacian, lefschetz_type_check)
from lieforms.lie import ValidationError
from lieforms.regress import integrable_structures

INTEGRABLE = integrable_structures()


@pytest.mark.parametrize("desc,c", INTEGRABLE, ids=[d for d, _ in INTEGRABLE])
def test_laplacians_self_adjoint_psd(desc, c):
    for kind in ("deRham", "Dolbeault", "BottChern", "Aeppli"):
        L = laplacian(kind, c if kind != "deRham" else c.cx)
        assert is_self_adjoint(L)
        assert is_psd_sampled(L, samples=3)


@pytest.mark.parametrize("desc,c", INTEGRABLE, ids=[d for d, _ in INTEGRABLE])
def test_harmonic_dims_equal_subquotients(desc, c):
    assert harmonic_dims("Dolbeault", c) == dolbeault(c).dims
    assert harmonic_dims("BottChern", c) == bott_chern(c).dims
    assert harmonic_dims("Aeppli", c) == aeppli(c).dims
    assert list(harmonic_dims("deRham", c.cx).values()) == DeRham(c.cx).bettis()
    kc = kernel_characterizations(c)
    assert all(kc.values())


def test_harmonic_forms_closed_and_coclosed():
    g = catalog("h7").algebra
    H = harmonic_space("deRham", g, 2)
    dr = DeRham(g)
    assert H.dim == dr.betti(2)
    for v in H.basis():
        assert dr.Z(2).contains(v)


def test_non_integrable_rejected():
    c = catalog("kt").complex_structure()
    with pytest.raises(ValidationError):
        laplacian("Dolbeault", c)


def test_lefschetz_type():
    e = catalog("iwasawa")
    r = lefschetz_type_check(e.algebra, e.omega())
    assert not r["holds"] and r["harmonic_2"] == 8
    e = catalog("nakamura_cs")
    assert lefschetz_type_check(e.algebra, e.omega())["holds"]
    e = catalog("h7")
    assert lefschetz_type_check(e.algebra, e.omega())["holds"]
