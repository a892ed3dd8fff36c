"""Subquotient cohomologies of the Chevalley-Eilenberg complex.

Everything is an exact quotient of subspaces: de Rham, Dolbeault (and its
conjugate), Bott-Chern, Aeppli, the six Varouchas spaces, plus the
Frölicher-type reports, the ∂∂̄-Lemma and triple Massey products.
Bigraded computations run in bidegree-local coordinates of the complex model.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from functools import cached_property

from .cplx import ComplexStructure, bi_block, bidegree_indices, bidegrees, from_bidegree
from .exterior import Form, GradedOperator, slice_dim
from .lie import LieAlgebra, ValidationError
from .linalg import Matrix, QQI, Subspace, image, intersect, kernel, quotient_dim, ssum


@dataclass
class CohomologyTable:
    kind: str
    dims: dict
    reps: dict | None = None

    def total(self, k: int) -> int:
        """Sum over p+q = k of a bigraded table (or the degree-k entry)."""
        if k in self.dims:
            return self.dims[k]
        return sum(v for (p, q), v in self.dims.items() if p + q == k)

    def totals(self, top: int) -> list:
        return [self.total(k) for k in range(top + 1)]

    def as_list(self, order: list) -> list:
        return [self.dims[b] for b in order]


# ---------------------------------------------------------------------------
# de Rham


class DeRham:
    """Cocycles, coboundaries and cohomology of a LieAlgebra's own complex."""

    def __init__(self, g: LieAlgebra):
        self.g = g
        self.n = g.n
        self.field = g.field

    def Z(self, k: int) -> Subspace:
        return self._Z(k)

    def B(self, k: int) -> Subspace:
        return self._B(k)

    @cached_property
    def _cache(self) -> dict:
        return {}

    def _Z(self, k):
        key = ("Z", k)
        if key not in self._cache:
            self._cache[key] = kernel(self.g.d.block(k)) if k < self.n else Subspace.full(slice_dim(self.n, k), self.field)
        return self._cache[key]

    def _B(self, k):
        key = ("B", k)
        if key not in self._cache:
            if k == 0:
                self._cache[key] = Subspace.zero(1, self.field)
            else:
                self._cache[key] = image(self.g.d.block(k - 1))
        return self._cache[key]

    def betti(self, k: int) -> int:
        return quotient_dim(self.Z(k), self.B(k))

    def bettis(self) -> list:
        return [self.betti(k) for k in range(self.n + 1)]

    def basis(self, k: int) -> list:
        """Canonical closed representatives (coordinate vectors) of a basis of H^k."""
        return self.Z(k).complement_reps(self.B(k))

    def basis_forms(self, k: int) -> list:
        return [Form.from_vector(self.n, k, v, self.field) for v in self.basis(k)]

    def is_exact(self, f: Form) -> bool:
        k = f.degree()
        return self.B(k).contains(f.to_vector(k))

    def is_closed(self, f: Form) -> bool:
        return not self.g.d_form(f)

    def class_coords(self, f: Form) -> list:
        """Coordinates of [f] in the canonical basis of H^k."""
        k = f.degree()
        v = f.to_vector(k)
        if not self.Z(k).contains(v):
            raise ValueError("form is not closed")
        reps = self.basis(k)
        space = Subspace.span(slice_dim(self.n, k), list(self.B(k).rows) + reps, self.field)
        coords = space.coordinates(v)
        # coordinates are in the echelon basis of B + reps; recover rep coefficients by solving
        mat = Matrix.from_sparse_rows(list(self.B(k).rows) + reps, slice_dim(self.n, k), self.field).transpose()
        x = mat.solve(v)
        nb = self.B(k).dim
        return [x.get(nb + i, self.field.zero) for i in range(len(reps))]

    def preimage_of(self, f: Form) -> Form | None:
        """Some x with dx = f, or None."""
        k = f.degree()
        if k == 0:
            return None if f else Form.zero(self.n, self.field)
        x = self.g.d.block(k - 1).solve(f.to_vector(k))
        if x is None:
            return None
        return Form.from_vector(self.n, k - 1, x, self.field)

    def table(self, with_reps: bool = False) -> CohomologyTable:
        dims = {k: self.betti(k) for k in range(self.n + 1)}
        reps = {k: self.basis_forms(k) for k in range(self.n + 1)} if with_reps else None
        return CohomologyTable("deRham", dims, reps)


def derham(g: LieAlgebra, with_reps: bool = False) -> CohomologyTable:
    return DeRham(g).table(with_reps)


# ---------------------------------------------------------------------------
# bigraded engine


class Bigraded:
    """Kernels and images of ∂, ∂̄, ∂∂̄ bidegree by bidegree."""

    def __init__(self, c: ComplexStructure):
        c.require_integrable()
        self.c = c
        self.crank = c.crank
        self.del_ = c.split.delop
        self.delbar = c.split.delbar
        self.ddbar = self.del_ @ self.delbar
        self._cache: dict = {}

    def dim(self, p: int, q: int) -> int:
        return len(bidegree_indices(self.crank, p, q))

    def valid(self, p, q) -> bool:
        return 0 <= p <= self.crank and 0 <= q <= self.crank

    def _op(self, name):
        return {"del": (self.del_, (1, 0)), "delbar": (self.delbar, (0, 1)), "ddbar": (self.ddbar, (1, 1))}[name]

    def block(self, name: str, p: int, q: int) -> Matrix:
        key = ("blk", name, p, q)
        if key not in self._cache:
            op, (a, b) = self._op(name)
            self._cache[key] = bi_block(op, self.crank, p, q, (p + a, q + b))
        return self._cache[key]

    def ker(self, name: str, p: int, q: int) -> Subspace:
        key = ("ker", name, p, q)
        if key not in self._cache:
            self._cache[key] = kernel(self.block(name, p, q))
        return self._cache[key]

    def im(self, name: str, p: int, q: int) -> Subspace:
        """Image of the operator landing in bidegree (p, q)."""
        key = ("im", name, p, q)
        if key not in self._cache:
            _, (a, b) = self._op(name)
            sp, sq = p - a, q - b
            if self.valid(sp, sq):
                self._cache[key] = image(self.block(name, sp, sq))
            else:
                self._cache[key] = Subspace.zero(self.dim(p, q), QQI)
        return self._cache[key]

    def lift(self, s: Subspace, p: int, q: int) -> Subspace:
        """Bidegree-local subspace -> subspace of the total slice."""
        k = p + q
        return Subspace.span(slice_dim(2 * self.crank, k),
                             [from_bidegree(r, self.crank, p, q) for r in s.rows], QQI)

    def reps_forms(self, top: Subspace, bottom: Subspace, p: int, q: int) -> list:
        n2 = 2 * self.crank
        return [Form.from_vector(n2, p + q, from_bidegree(r, self.crank, p, q), QQI)
                for r in top.complement_reps(bottom)]

    def all_bidegrees(self):
        for k in range(2 * self.crank + 1):
            for pq in bidegrees(self.crank, k):
                yield pq

    # -- the cohomologies -------------------------------------------------

    def dolbeault_spaces(self, p, q):
        return self.ker("delbar", p, q), self.im("delbar", p, q)

    def conj_dolbeault_spaces(self, p, q):
        return self.ker("del", p, q), self.im("del", p, q)

    def bc_spaces(self, p, q):
        return self.ker("del", p, q) & self.ker("delbar", p, q), self.im("ddbar", p, q)

    def aeppli_spaces(self, p, q):
        return self.ker("ddbar", p, q), self.im("del", p, q) + self.im("delbar", p, q)

    def table(self, kind: str, with_reps: bool = False) -> CohomologyTable:
        fn = {
            "Dolbeault": self.dolbeault_spaces,
            "DolbeaultConj": self.conj_dolbeault_spaces,
            "BottChern": self.bc_spaces,
            "Aeppli": self.aeppli_spaces,
        }[kind]
        dims, reps = {}, {} if with_reps else None
        for p, q in self.all_bidegrees():
            top, bottom = fn(p, q)
            dims[(p, q)] = quotient_dim(top, bottom)
            if with_reps:
                reps[(p, q)] = self.reps_forms(top, bottom, p, q)
        return CohomologyTable(kind, dims, reps)

    def varouchas(self) -> "VarouchasTable":
        t = {x: {} for x in "abcdef"}
        for p, q in self.all_bidegrees():
            kd, kdb, kdd = self.ker("del", p, q), self.ker("delbar", p, q), self.ker("ddbar", p, q)
            idl, idb, idd = self.im("del", p, q), self.im("delbar", p, q), self.im("ddbar", p, q)
            t["a"][(p, q)] = quotient_dim(idb & idl, idd)
            t["b"][(p, q)] = quotient_dim(kdb & idl, idd)
            t["c"][(p, q)] = quotient_dim(kdd, kdb + idl)
            t["d"][(p, q)] = quotient_dim(idb & kd, idd)
            t["e"][(p, q)] = quotient_dim(kdd, kd + idb)
            t["f"][(p, q)] = quotient_dim(kdd, kdb + kd)
        return VarouchasTable(**t)


def _engine(c: ComplexStructure) -> Bigraded:
    eng = getattr(c, "_bigraded", None)
    if eng is None:
        eng = Bigraded(c)
        c._bigraded = eng
    return eng


def dolbeault(c: ComplexStructure, with_reps: bool = False) -> CohomologyTable:
    return _engine(c).table("Dolbeault", with_reps)


def conj_dolbeault(c: ComplexStructure, with_reps: bool = False) -> CohomologyTable:
    return _engine(c).table("DolbeaultConj", with_reps)


def bott_chern(c: ComplexStructure, with_reps: bool = False) -> CohomologyTable:
    return _engine(c).table("BottChern", with_reps)


def aeppli(c: ComplexStructure, with_reps: bool = False) -> CohomologyTable:
    return _engine(c).table("Aeppli", with_reps)


def complex_derham(c: ComplexStructure) -> DeRham:
    eng = getattr(c, "_derham", None)
    if eng is None:
        eng = DeRham(c.cx)
        c._derham = eng
    return eng


@dataclass
class VarouchasTable:
    a: dict
    b: dict
    c: dict
    d: dict
    e: dict
    f: dict

    def total(self, name: str, k: int) -> int:
        return sum(v for (p, q), v in getattr(self, name).items() if p + q == k)


def varouchas(c: ComplexStructure) -> VarouchasTable:
    return _engine(c).varouchas()


def varouchas_checks(c: ComplexStructure) -> dict:
    """Exactness bookkeeping, symmetry relations and the degree identity."""
    v = varouchas(c)
    dol = dolbeault(c).dims
    bc = bott_chern(c).dims
    ae = aeppli(c).dims
    n = c.crank
    out = {"exact1": True, "exact2": True, "relations": True, "identity": True,
           "duality": True, "failures": []}

    def get(t, p, q):
        return t.get((p, q), 0)

    for (p, q) in dol:
        if v.a[(p, q)] - v.b[(p, q)] + dol[(p, q)] - ae[(p, q)] + v.c[(p, q)] != 0:
            out["exact1"] = False
            out["failures"].append(("exact1", (p, q)))
        if v.d[(p, q)] - bc[(p, q)] + dol[(p, q)] - v.e[(p, q)] + v.f[(p, q)] != 0:
            out["exact2"] = False
            out["failures"].append(("exact2", (p, q)))
        rel = [
            v.a[(p, q)] == get(v.a, q, p),
            v.f[(p, q)] == get(v.f, q, p),
            v.d[(p, q)] == get(v.b, q, p),
            v.e[(p, q)] == get(v.c, q, p),
            v.c[(p, q)] == get(v.d, p, q + 1),
            v.e[(p, q)] == get(v.b, p + 1, q),
        ]
        if not all(rel):
            out["relations"] = False
            out["failures"].append(("relations", (p, q), rel))
        if v.a[(p, q)] != get(v.f, n - q, n - p):
            out["duality"] = False
            out["failures"].append(("duality", (p, q)))
    for k in range(2 * n + 1):
        lhs = sum(bc[b] + ae[b] for b in bc if sum(b) == k)
        rhs = 2 * sum(dol[b] for b in dol if sum(b) == k) + v.total("a", k) + v.total("f", k)
        if lhs != rhs:
            out["identity"] = False
            out["failures"].append(("identity", k))
    return out


# ---------------------------------------------------------------------------
# reports


def frolicher_report(c: ComplexStructure) -> dict:
    dol = dolbeault(c)
    dolc = conj_dolbeault(c)
    bc = bott_chern(c)
    ae = aeppli(c)
    b = complex_derham(c).bettis()
    deg = []
    for k in range(c.n + 1):
        h = dol.total(k)
        s = bc.total(k) + ae.total(k)
        deg.append({"k": k, "h_delbar": h, "b": b[k], "slack_frolicher": h - b[k],
                    "bc_plus_a": s, "two_b": 2 * b[k], "slack_bc": s - 2 * b[k]})
    bideg = []
    for pq in bc.dims:
        lhs = bc.dims[pq] + ae.dims[pq]
        rhs = dol.dims[pq] + dolc.dims[pq]
        bideg.append({"pq": pq, "bc_plus_a": lhs, "delbar_plus_del": rhs, "slack": lhs - rhs})
    ok = all(r["slack_frolicher"] >= 0 and r["slack_bc"] >= 0 for r in deg) and all(r["slack"] >= 0 for r in bideg)
    return {"degrees": deg, "bidegrees": bideg, "ok": ok}


def deldelbar_lemma(c: ComplexStructure) -> dict:
    """Dimension test, direct subspace test and E1-degeneration."""
    eng = _engine(c)
    dr = complex_derham(c)
    b = dr.bettis()
    bc = bott_chern(c)
    ae = aeppli(c)
    dol = dolbeault(c)
    first_fail = None
    dim_test = True
    for k in range(c.n + 1):
        if bc.total(k) + ae.total(k) != 2 * b[k]:
            dim_test = False
            if first_fail is None:
                first_fail = {"k": k, "bc_plus_a": bc.total(k) + ae.total(k), "two_b": 2 * b[k]}
    direct = True
    direct_fail = None
    for p, q in eng.all_bidegrees():
        k = p + q
        closed = eng.lift(eng.ker("del", p, q) & eng.ker("delbar", p, q), p, q)
        exact = dr.B(k)
        lhs = intersect(closed, exact)
        rhs = eng.lift(eng.im("ddbar", p, q), p, q)
        if lhs != rhs:
            direct = False
            if direct_fail is None:
                direct_fail = (p, q)
    e1 = all(dol.total(k) == b[k] for k in range(c.n + 1))
    return {"dimension_test": dim_test, "direct_test": direct, "agree": dim_test == direct,
            "lemma": dim_test and direct, "first_failure": first_fail, "direct_failure": direct_fail,
            "e1_degeneration": e1}


# ---------------------------------------------------------------------------
# Massey products


def massey_triple(g: LieAlgebra, a: Form, b: Form, c: Form) -> tuple:
    """(vanishes modulo indeterminacy, representative form) for ⟨[a],[b],[c]⟩."""
    dr = _derham_of(g)
    for f in (a, b, c):
        if not dr.is_closed(f):
            raise ValidationError("Massey product inputs must be closed")
    pa, pb, pc = a.degree(), b.degree(), c.degree()
    sa = -1 if pa % 2 else 1
    sb = -1 if pb % 2 else 1
    ab = a.wedge(b).scale(sa)
    bc = b.wedge(c).scale(sb)
    x = dr.preimage_of(ab)
    y = dr.preimage_of(bc)
    if x is None or y is None:
        raise ValidationError("Massey product not defined: [a][b] or [b][c] is nonzero")
    px = pa + pb - 1
    sx = -1 if px % 2 else 1
    m = a.wedge(y).scale(sa) + x.wedge(c).scale(sx)
    if not dr.is_closed(m):
        raise AssertionError("Massey representative is not closed")
    deg = pa + pb + pc - 1
    ind = list(dr.B(deg).rows)
    for z in dr.basis_forms(pb + pc - 1):
        ind.append(a.wedge(z).to_vector(deg))
    for w in dr.basis_forms(pa + pb - 1):
        ind.append(w.wedge(c).to_vector(deg))
    space = Subspace.span(slice_dim(g.n, deg), [v for v in ind if v], g.field)
    red = space.reduce(m.to_vector(deg))
    return (not red), Form.from_vector(g.n, deg, red, g.field)


def _derham_of(g: LieAlgebra) -> DeRham:
    eng = getattr(g, "_derham_engine", None)
    if eng is None:
        eng = DeRham(g)
        g._derham_engine = eng
    return eng
