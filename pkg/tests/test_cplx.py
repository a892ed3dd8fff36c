from __future__ import annotations

import pytest

from lieforms.catalog import catalog
from lieforms.cplx import CLASS_REPRESENTATIVES, ComplexStructure, class_label, iwasawa_family
from lieforms.lie import ValidationError, parse_salamon
from lieforms.linalg import QQ, QQI, Matrix
from lieforms.regress import complex_structures

STRUCTURES = complex_structures()


@pytest.mark.parametrize("desc,c", STRUCTURES, ids=[d for d, _ in STRUCTURES])
def test_integrability_criteria_agree(desc, c):
    assert c.integrable_coframe == c.integrable_split
    if c.real is not None and c.J is not None:
        assert c.integrable_coframe == c.integrable_nijenhuis


@pytest.mark.parametrize("desc,c", STRUCTURES, ids=[d for d, _ in STRUCTURES])
def test_d_decomposition_identities(desc, c):
    assert all(c.split.d_squared_identities().values())


@pytest.mark.parametrize("desc,c", STRUCTURES, ids=[d for d, _ in STRUCTURES])
def test_J_squares_to_minus_one(desc, c):
    if c.J is not None:
        assert c.J @ c.J == Matrix.identity(c.n, QQ).scale(QQ(-1))


def test_known_integrability():
    integ = {d: c.integrable for d, c in STRUCTURES}
    assert integ["iwasawa/standard"] and integ["h16/J"] and integ["h2/J"]
    assert not integ["iwasawa/almost_kahler"] and not integ["nakamura_cs/J_prime"]
    assert not integ["kt/J"] and not integ["s3t3/J"]


def test_real_complex_roundtrip():
    c = catalog("iwasawa").complex_structure()
    f = c.real.form(1, 4) + c.real.form(2, 5)
    assert c.to_real(c.to_complex(f)) == f


def test_class_labels():
    for label, sigma in CLASS_REPRESENTATIVES.items():
        assert class_label(sigma) == label
        assert iwasawa_family(sigma)[2] == label
    with pytest.raises(ValidationError):
        class_label((0, 0, 0, 0, 0))


def test_J_matrix_validation():
    g = parse_salamon("(0,0,12,0)")
    bad = Matrix.from_rows([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], QQ)
    with pytest.raises(ValidationError):
        ComplexStructure.from_J_matrix(g, bad)
    good = Matrix.from_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], QQ)
    c = ComplexStructure.from_J_matrix(g, good)
    assert c.integrable


def test_phi_notation():
    c = catalog("iwasawa").complex_structure()
    assert c.phi(1, 2) == c.cx.form(1, 2)
    assert c.phi(1, -2) == c.cx.form(1, 5)
    assert c.phi(-1, coeff=QQI.i) == c.cx.form(4, coeff=QQI.i)
