"""Type subgroups of de Rham cohomology for (almost-)complex structures.

H^S is the set of de Rham classes with a representative in ⊕_{(p,q)∈S} Λ^{p,q}.
Subgroups are stored as subspaces Z_S + B of the closed forms, so sums and
intersections of subgroups are plain subspace operations and dimensions are
taken modulo B.

Real coefficients are computed twice: in the real model (rational conditions
obtained from the transition matrix) and in the complex model (real points of
the complex subgroup); the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .cohom import DeRham, complex_derham
from .cplx import ComplexStructure, bidegree_of_slice, bidegrees
from .exterior import Form, realify, slice_dim
from .lie import ValidationError
from .linalg import Matrix, QQ, QQI, Subspace, intersect, kernel, ssum


@dataclass
class TypeSubgroup:
    S: tuple
    k: int
    field: str
    space: Subspace          # Z_S + B inside the degree-k slice
    B: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim - self.B.dim

    def contains_class(self, f: Form) -> bool:
        return self.space.contains(f.to_vector(self.k))


def _normalize_S(S, k: int) -> tuple:
    S = tuple(sorted({(int(p), int(q)) for p, q in S}))
    for p, q in S:
        if p + q != k or p < 0 or q < 0:
            raise ValidationError(f"bidegree ({p},{q}) does not have total degree {k}")
    return S


def _conj_closed(S) -> bool:
    return all((q, p) in S for p, q in S)


def _complex_ZS(c: ComplexStructure, S, k: int) -> Subspace:
    n = c.n
    bid = bidegree_of_slice(c.crank, k)
    one = QQI.one
    W = Subspace.span(slice_dim(n, k), [{i: one} for i, b in enumerate(bid) if b in S], QQI)
    return intersect(complex_derham(c).Z(k), W)


def _real_derham(c: ComplexStructure) -> DeRham:
    eng = getattr(c, "_real_derham", None)
    if eng is None:
        if c.real is None:
            raise ValidationError("no real model")
        eng = DeRham(c.real)
        c._real_derham = eng
    return eng


def _real_WS(c: ComplexStructure, S, k: int) -> Subspace:
    """Real forms whose complexification lies in ⊕_S Λ^{p,q}."""
    E = c.realification.block(k)
    bid = bidegree_of_slice(c.crank, k)
    rows = E.rows()
    conds = []
    for i, b in enumerate(bid):
        if b in S:
            continue
        r = rows[i]
        re = {j: QQ(v.re) for j, v in r.items() if v.re}
        im = {j: QQ(v.im) for j, v in r.items() if v.im}
        if re:
            conds.append(re)
        if im:
            conds.append(im)
    m = slice_dim(c.n, k)
    if not conds:
        return Subspace.full(m, QQ)
    return kernel(Matrix.from_sparse_rows(conds, m, QQ))


def type_subgroup(c: ComplexStructure, S, k: int, field: str = "real", check: bool = True) -> TypeSubgroup:
    S = _normalize_S(S, k)
    if field in ("complex", "c", "qi"):
        dr = complex_derham(c)
        Z = _complex_ZS(c, S, k)
        return TypeSubgroup(S, k, "complex", ssum(Z, dr.B(k)), dr.B(k))
    if not _conj_closed(S):
        raise ValidationError("real coefficients need a conjugation-closed set of bidegrees")
    dr = _real_derham(c)
    Zr = intersect(_real_WS(c, S, k), dr.Z(k))
    if check:
        Zc = _complex_ZS(c, S, k)
        rp = realify(Zc, c.n, k, c.cx.pairing)
        back = c.complexification_inverse.block(k)
        vecs = []
        for v in rp.basis:
            w = back.apply(v)
            if any(x.im for x in w.values()):
                raise AssertionError("real point did not map to a real form")
            vecs.append({j: QQ(x.re) for j, x in w.items()})
        Zalt = Subspace.span(slice_dim(c.n, k), vecs, QQ)
        if Zalt != Zr:
            raise AssertionError("real and complex routes disagree on Z_S")
    return TypeSubgroup(S, k, "real", ssum(Zr, dr.B(k)), dr.B(k))


def stage_blocks(crank: int, k: int) -> list:
    """Conjugation-closed blocks {(p,q),(q,p)} with p >= q of total degree k."""
    out = []
    for p, q in bidegrees(crank, k):
        if p >= q:
            out.append(tuple(sorted({(p, q), (q, p)})))
    return out


@dataclass
class StageReport:
    k: int
    dims: dict
    b: int
    pure: bool
    full: bool
    pure_witness: Form | None = None
    full_witness: Form | None = None


def stage_report(c: ComplexStructure, k: int, field: str = "real") -> StageReport:
    blocks = stage_blocks(c.crank, k)
    subs = [type_subgroup(c, S, k, field) for S in blocks]
    dr = complex_derham(c) if field != "real" else _real_derham(c)
    B, Z = dr.B(k), dr.Z(k)
    fld = QQI if field != "real" else QQ
    total = B
    for s in subs:
        total = ssum(total, s.space)
    sumdim = total.dim - B.dim
    pure = sumdim == sum(s.dim for s in subs)
    full = total.dim == Z.dim
    pw = fw = None
    n = c.n
    if not pure:
        for i, s in enumerate(subs):
            others = B
            for j, t in enumerate(subs):
                if j != i:
                    others = ssum(others, t.space)
            inter = intersect(s.space, others)
            if inter.dim > B.dim:
                v = inter.complement_reps(B)[0]
                pw = Form.from_vector(n, k, v, fld)
                break
    if not full:
        for v in dr.basis(k):
            if not total.contains(v):
                fw = Form.from_vector(n, k, v, fld)
                break
    return StageReport(k, {S: s.dim for S, s in zip(blocks, subs)}, Z.dim - B.dim, pure, full, pw, fw)


def pure_full_report(c: ComplexStructure, stages=None, field: str = "real") -> dict:
    if stages is None:
        stages = range(1, c.n)
    return {k: stage_report(c, k, field) for k in stages}


def plus_minus(c: ComplexStructure, field: str = "real") -> tuple:
    hp = type_subgroup(c, [(1, 1)], 2, field).dim
    hm = type_subgroup(c, [(2, 0), (0, 2)], 2, field).dim
    return hp, hm


# ---------------------------------------------------------------------------
# taming and compatibility


def omega_matrix(omega: Form) -> Matrix:
    """W_ij = ω(e_i, e_j)."""
    n = omega.n
    cols = [dict() for _ in range(n)]
    for m, c in omega.terms.items():
        if len(m) != 2:
            raise ValidationError("omega must be a 2-form")
        i, j = m[0] - 1, m[1] - 1
        cols[j][i] = c
        cols[i][j] = -c
    return Matrix(n, n, cols, omega.field)


def leading_minors_positive(G: Matrix) -> bool:
    n = G.nrows
    rows = G.to_lists()
    for k in range(1, n + 1):
        sub = Matrix.from_rows([r[:k] for r in rows[:k]], G.field)
        d = sub.det()
        if d.im or d.re <= 0:
            return False
    return True


def taming_form(omega: Form, J: Matrix) -> Matrix:
    """Symmetric part of (x, y) -> ω(x, Jy)."""
    W = omega_matrix(omega)
    A = W @ J
    return (A + A.transpose()).scale(QQ(1) / 2 if not W.field.gaussian else QQI(1) / 2)


def is_taming(omega: Form, J: Matrix) -> bool:
    return leading_minors_positive(taming_form(omega, J))


def is_J_invariant(omega: Form, J: Matrix) -> bool:
    W = omega_matrix(omega)
    return J.transpose() @ W @ J == W


def is_compatible(omega: Form, J: Matrix) -> bool:
    return is_J_invariant(omega, J) and is_taming(omega, J)


def is_almost_kahler(g, omega: Form, J: Matrix) -> bool:
    return not g.d_form(omega) and is_compatible(omega, J)
