from __future__ import annotations

from math import comb

from hypothesis import given, strategies as st

from lieforms.exterior import (Form, complex_pairing, conjugate_form, e, monomials, slice_dim,
                               wedge_operator)
from lieforms.linalg import QQ, QQI

N = 5
coeff = st.integers(-3, 3)


def forms(k, n=N):
    mons = monomials(n, k)
    return st.dictionaries(st.sampled_from(mons), coeff, max_size=4).map(lambda d: Form(n, d, QQ))


def test_monomial_counts():
    for n in range(7):
        for k in range(n + 1):
            assert len(monomials(n, k)) == comb(n, k) == slice_dim(n, k)


def test_basic_signs():
    assert e(4, 2).wedge(e(4, 1)) == -e(4, 1, 2)
    assert e(4, 1).wedge(e(4, 1)).is_zero()
    assert e(4, 3, 1, 2) == e(4, 1, 2, 3)
    assert e(4, 2, 1, 3) == -e(4, 1, 2, 3)


@given(forms(1), forms(2), forms(2))
def test_wedge_associative(a, b, c):
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@given(st.integers(0, 3), st.integers(0, 2), st.data())
def test_graded_commutative(p, q, data):
    a, b = data.draw(forms(p)), data.draw(forms(q))
    sign = -1 if p * q % 2 else 1
    assert a.wedge(b) == b.wedge(a).scale(QQ(sign))


@given(st.integers(1, N), forms(2), forms(1))
def test_interior_is_antiderivation(i, a, b):
    lhs = a.wedge(b).interior_vec(i)
    rhs = a.interior_vec(i).wedge(b) + a.wedge(b.interior_vec(i))
    assert lhs == rhs


@given(st.integers(0, N), st.data())
def test_vector_roundtrip(k, data):
    a = data.draw(forms(k))
    assert Form.from_vector(N, k, a.to_vector(k), QQ) == a


@given(forms(2, 6))
def test_conjugation_involutive(a):
    pairing = complex_pairing(3)
    b = a.with_field(QQI).scale(QQI("1+2i"))
    assert conjugate_form(conjugate_form(b, pairing), pairing) == b


@given(forms(1), forms(2))
def test_wedge_operator_matches_wedge(w, a):
    op = wedge_operator(N, w)
    assert op.apply(a) == w.wedge(a)
