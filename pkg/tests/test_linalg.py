from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lieforms.linalg import (QQ, QQI, FieldMismatch, Matrix, Scalar, Subspace, image, intersect,
                             kernel, preimage, quotient_dim, ssum)
from oracle import sympy_matrix, sympy_rank, to_sympy

rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)
small = st.integers(min_value=-3, max_value=3)


def gauss(draw_re, draw_im):
    return Scalar(Fraction(draw_re), Fraction(draw_im), True)


gauss_st = st.builds(gauss, rats, rats)
real_st = st.builds(lambda r: QQ(r), rats)


@given(gauss_st, gauss_st, gauss_st)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert (a * b).conj() == a.conj() * b.conj()


@given(gauss_st)
def test_scalar_text_roundtrip(a):
    assert Scalar.parse(str(a), True) == a
    assert to_sympy(Scalar.parse(str(a), True)) == to_sympy(a)


def test_scalar_formatting():
    assert str(QQ("1/2")) == "1/2"
    assert str(QQI("1+2/3i")) == "1+2/3i"
    assert str(QQI("-1/2i")) == "-1/2i"
    assert str(QQ(0)) == "0"


def test_field_mixing_rejected():
    with pytest.raises(FieldMismatch):
        QQ(1) + QQI.i
    with pytest.raises(FieldMismatch):
        QQ(QQI("1+i"))


def _matrix(draw_rows, field):
    return Matrix.from_rows(draw_rows, field)


int_matrix = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(int_matrix)
def test_rank_matches_sympy(rows):
    m = Matrix.from_rows(rows, QQ)
    assert m.rank() == sympy_rank(m)


@given(int_matrix, int_matrix)
def test_gaussian_rank_matches_sympy(re_rows, im_rows):
    r = min(len(re_rows), len(im_rows))
    c = min(len(re_rows[0]), len(im_rows[0]))
    rows = [[Scalar(re_rows[i][j], im_rows[i][j], True) for j in range(c)] for i in range(r)]
    m = Matrix.from_rows(rows, QQI)
    assert m.rank() == sympy_rank(m)


@given(int_matrix)
def test_rank_nullity_and_kernel(rows):
    m = Matrix.from_rows(rows, QQ)
    k = m.kernel()
    assert k.dim + m.rank() == m.ncols
    for v in k.basis():
        assert not m.apply(v)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                   min_size=n, max_size=n)))
def test_det_and_inverse(rows):
    m = Matrix.from_rows(rows, QQ)
    assert to_sympy(m.det()) == sympy_matrix(m).det()
    if m.det():
        assert m @ m.inverse() == Matrix.identity(m.nrows, QQ)


vec_lists = st.lists(st.dictionaries(st.integers(0, 4), small.filter(bool), max_size=5), max_size=4)


def _span(vs):
    return Subspace.span(5, [{i: QQ(c) for i, c in v.items()} for v in vs], QQ)


@given(vec_lists, vec_lists)
def test_sum_intersection_dimension_formula(a, b):
    A, B = _span(a), _span(b)
    assert ssum(A, B).dim + intersect(A, B).dim == A.dim + B.dim
    assert ssum(A, B).contains_space(A) and A.contains_space(intersect(A, B))


@given(vec_lists)
def test_subspace_canonical_form(a):
    A = _span(a)
    assert A == _span(list(reversed(a)))
    assert A == Subspace.span(5, A.basis(), QQ)
    assert quotient_dim(A, Subspace.zero(5, QQ)) == A.dim


@given(int_matrix, vec_lists)
def test_preimage(rows, vs):
    m = Matrix.from_rows(rows, QQ)
    W = Subspace.span(m.nrows, [{i: QQ(c) for i, c in v.items() if i < m.nrows} for v in vs], QQ)
    P = preimage(m, W)
    for v in P.basis():
        assert W.contains(m.apply(v))
    assert P.contains_space(kernel(m))
    assert image(m, P) == intersect(image(m), W)


def test_solve():
    m = Matrix.from_rows([[2, 1], [1, 3]], QQ)
    x = m.solve({0: QQ(3), 1: QQ(4)})
    assert m.apply(x) == {0: QQ(3), 1: QQ(4)}
    sing = Matrix.from_rows([[1, 1], [1, 1]], QQ)
    assert sing.solve({0: QQ(1), 1: QQ(2)}) is None
