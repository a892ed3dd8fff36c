"""Laplacian-type operators and their kernels.

The stored monomial basis is declared orthonormal, so adjoints are conjugate
transposes.  Kernels of Δ, □̄, Δ̃_BC and Δ̃_A give a second, independent route
to the cohomology dimensions computed as subquotients in cohom.
"""

from __future__ import annotations

import random

from .cohom import DeRham
from .cplx import ComplexStructure, bi_block, bidegrees
from .exterior import Form, GradedOperator, slice_dim
from .lie import LieAlgebra, ValidationError
from .linalg import Matrix, QQ, QQI, Subspace, intersect, kernel

KINDS = ("deRham", "Dolbeault", "BottChern", "Aeppli")


def adjoint(op: GradedOperator) -> GradedOperator:
    return op.H()


def inner(x: dict, y: dict, field=QQI):
    """Hermitian product with the monomial basis orthonormal (antilinear in y)."""
    s = field.zero
    for i, v in x.items():
        w = y.get(i)
        if w is not None:
            s = s + v * w.conj()
    return s


def _ops(c: ComplexStructure):
    sp = c.split
    return sp.delop, sp.delbar


def laplacian(kind: str, structure) -> GradedOperator:
    """Δ for a LieAlgebra; □̄, Δ̃_BC, Δ̃_A for an integrable ComplexStructure."""
    if kind == "deRham":
        g = structure if isinstance(structure, LieAlgebra) else structure.cx
        d = g.d
        ds = d.H()
        return d @ ds + ds @ d
    if not isinstance(structure, ComplexStructure):
        raise ValidationError(f"{kind} Laplacian needs a complex structure")
    structure.require_integrable()
    D, Db = _ops(structure)
    Ds, Dbs = D.H(), Db.H()
    if kind == "Dolbeault":
        return Db @ Dbs + Dbs @ Db
    DDb = D @ Db
    DDbs = DDb.H()
    if kind == "BottChern":
        X = Dbs @ D
        Xs = X.H()
        return (DDb @ DDbs + DDbs @ DDb + X @ Xs + Xs @ X + Dbs @ Db + Ds @ D)
    if kind == "Aeppli":
        Y = Db @ Ds
        Ys = Y.H()
        return (D @ Ds + Db @ Dbs + DDbs @ DDb + DDb @ DDbs + Ys @ Y + Y @ Ys)
    raise ValueError(f"unknown Laplacian kind {kind!r}")


def harmonic_dims(kind: str, structure) -> dict:
    """Kernel dimensions per degree (deRham) or per bidegree (complex kinds)."""
    L = laplacian(kind, structure)
    if kind == "deRham":
        n = L.n
        return {k: kernel(L.block(k)).dim for k in range(n + 1)}
    c = structure
    out = {}
    for k in range(c.n + 1):
        for p, q in bidegrees(c.crank, k):
            out[(p, q)] = kernel(bi_block(L, c.crank, p, q, (p, q))).dim
    return out


def harmonic_space(kind: str, structure, k: int) -> Subspace:
    return kernel(laplacian(kind, structure).block(k))


def kernel_characterizations(c: ComplexStructure) -> dict:
    """ker Δ̃_BC = ker∂ ∩ ker∂̄ ∩ ker(∂∂̄)*, ker Δ̃_A = ker∂∂̄ ∩ ker∂* ∩ ker∂̄*."""
    D, Db = _ops(c)
    DDb = D @ Db
    LBC = laplacian("BottChern", c)
    LA = laplacian("Aeppli", c)
    ok_bc, ok_a = True, True
    for k in range(c.n + 1):
        kbc = kernel(LBC.block(k))
        alt = intersect(intersect(kernel(D.block(k)), kernel(Db.block(k))), kernel(DDb.H().block(k)))
        ok_bc = ok_bc and kbc == alt
        ka = kernel(LA.block(k))
        alt = intersect(intersect(kernel(DDb.block(k)), kernel(D.H().block(k))), kernel(Db.H().block(k)))
        ok_a = ok_a and ka == alt
    return {"BottChern": ok_bc, "Aeppli": ok_a}


def is_self_adjoint(L: GradedOperator) -> bool:
    return all(L.block(k) == L.block(k).H() for k in L.degrees())


def is_psd_sampled(L: GradedOperator, samples: int = 5, seed: int = 0) -> bool:
    """x†Lx >= 0 on basis vectors and seeded random rational vectors."""
    rng = random.Random(seed)
    fld = L.field
    for k in L.degrees():
        M = L.block(k)
        for j in range(M.ncols):
            v = M.entry(j, j)
            if v.im or v.re < 0:
                return False
        for _ in range(samples):
            x = {j: fld(rng.randint(-3, 3), rng.randint(-3, 3) if fld.gaussian else 0) for j in range(M.ncols)}
            x = {j: v for j, v in x.items() if v}
            val = inner(M.apply(x), x, fld) if fld.gaussian else _real_inner(M.apply(x), x)
            if val.im or val.re < 0:
                return False
    return True


def _real_inner(x, y):
    s = QQ.zero
    for i, v in x.items():
        if i in y:
            s = s + v * y[i]
    return s


def lefschetz_type_check(g: LieAlgebra, omega: Form) -> dict:
    """Does ω^{n-2}∧· send Δ-harmonic 2-forms to Δ-harmonic (2n-2)-forms?

    The coframe of g is taken as orthonormal for the metric.
    """
    if g.d_form(omega):
        raise ValidationError("omega is not closed")
    n = g.n // 2
    if not omega.power(n):
        raise ValidationError("omega is degenerate")
    L = laplacian("deRham", g)
    H2 = kernel(L.block(2))
    top = kernel(L.block(2 * n - 2))
    Lk = omega.power(n - 2)
    witnesses = []
    for r in H2.rows:
        f = Form.from_vector(g.n, 2, r, g.field)
        img = Lk.wedge(f)
        if not top.contains(img.to_vector(2 * n - 2)):
            witnesses.append((f, img))
    return {"holds": not witnesses, "witnesses": witnesses, "harmonic_2": H2.dim}
