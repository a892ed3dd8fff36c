"""Symplectic linear structures on Lie algebras.

L = ω∧·, Λ = −ι_Π with Π the inverse bivector, H = Σ_k (n−k) π_k.  The
symplectic star is found by solving the wedge pairing, dΛ comes from the star
and is cross-checked against [d, Λ].  Tseng–Yau cohomologies are computed as
subquotients and again as kernels of their fourth-order Laplacians.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from math import factorial

from .cohom import DeRham
from .exterior import Form, GradedOperator, commutator, interior, monomials, slice_dim, wedge_operator
from .lie import LieAlgebra, ValidationError
from .linalg import QQ, Matrix, Subspace, image, intersect, kernel, ssum
from .lizhang import omega_matrix


class SymplecticStructure:
    def __init__(self, g: LieAlgebra, omega: Form, check: bool = True):
        if g.n % 2:
            raise ValidationError("odd-dimensional algebra carries no symplectic form")
        if omega.field.gaussian:
            raise ValidationError("omega must be a real form")
        if omega.degrees() - {2}:
            raise ValidationError("omega must be a 2-form")
        if g.d_form(omega):
            raise ValidationError("omega is not closed")
        self.g = g
        self.omega = omega
        self.dim = g.n
        self.n = g.n // 2
        self.volume = omega.power(self.n).scale(QQ(Fraction(1, factorial(self.n))))
        if not self.volume:
            raise ValidationError("omega is degenerate")
        W = omega_matrix(omega)
        Winv = W.inverse()
        terms = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = Winv.entry(j, i)
                if v:
                    terms[(i + 1, j + 1)] = v
        self.poisson = Form(self.dim, terms, QQ)
        self._cache = {}
        if check:
            bad = self.sl2_failures()
            if bad:
                raise AssertionError(f"sl(2) relations fail: {bad}")

    # -- the sl(2) triple -------------------------------------------------

    def _c(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def L(self) -> GradedOperator:
        return self._c("L", lambda: wedge_operator(self.dim, self.omega))

    @property
    def Lambda(self) -> GradedOperator:
        return self._c("Lambda", lambda: GradedOperator.from_form_map(
            self.dim, -2, lambda a: -interior(self.poisson, a), QQ))

    @property
    def H(self) -> GradedOperator:
        n = self.n
        return self._c("H", lambda: GradedOperator.scalar_per_degree(self.dim, lambda k: n - k, QQ))

    @property
    def d(self) -> GradedOperator:
        return self.g.d

    def sl2_failures(self) -> list:
        L, Lam, H = self.L, self.Lambda, self.H
        out = []
        if commutator(L, H) != L.scale(QQ(2)):
            out.append("[L,H]=2L")
        if commutator(Lam, H) != Lam.scale(QQ(-2)):
            out.append("[Λ,H]=-2Λ")
        if commutator(L, Lam) != H:
            out.append("[L,Λ]=H")
        return out

    # -- star and dΛ ------------------------------------------------------

    def pairing(self, a_idx: tuple, b_idx: tuple):
        """(ω^{-1})^k on monomials: det[Π(e^{a_i}, e^{b_j})]."""
        P = self._c("Pmat", lambda: omega_matrix(self.poisson))
        k = len(a_idx)
        if k == 0:
            return QQ.one
        rows = [[P.entry(a - 1, b - 1) for b in b_idx] for a in a_idx]
        return Matrix.from_rows(rows, QQ).det()

    def star_block(self, k: int) -> Matrix:
        def build():
            N = self.dim
            top = tuple(range(1, N + 1))
            v = self.volume.terms.get(top, QQ.zero)
            src = monomials(N, k)
            tgt = monomials(N, N - k)
            # P[α, γ] = coefficient of α∧γ on the top monomial
            prow = []
            for a in src:
                fa = Form._raw(N, {a: QQ.one}, QQ)
                row = {}
                for j, gm in enumerate(tgt):
                    w = fa.wedge(Form._raw(N, {gm: QQ.one}, QQ)).terms.get(top)
                    if w:
                        row[j] = w
                prow.append(row)
            P = Matrix.from_sparse_rows(prow, len(tgt), QQ)
            G = Matrix.from_rows([[self.pairing(a, b) * v for b in src] for a in src], QQ)
            return P.inverse() @ G
        return self._c(("star", k), build)

    @property
    def star(self) -> dict:
        """Star blocks by source degree (degree k goes to 2n-k)."""
        return {k: self.star_block(k) for k in range(self.dim + 1)}

    def sympl_star(self, a: Form) -> Form:
        if not a.is_homogeneous():
            raise ValidationError("star needs a homogeneous form")
        k = a.degree()
        return Form.from_vector(self.dim, self.dim - k, self.star_block(k).apply(a.to_vector(k)), QQ)

    @property
    def dLambda(self) -> GradedOperator:
        def build():
            N = self.dim
            d = self.d
            blocks = {}
            for k in range(1, N + 1):
                M = self.star_block(N - k + 1) @ d.block(N - k) @ self.star_block(k)
                blocks[k] = M if k % 2 else M.scale(QQ(-1))
            return GradedOperator(N, -1, blocks, QQ)
        return self._c("dLambda", build)

    def dlambda_matches_commutator(self) -> bool:
        return self.dLambda == commutator(self.d, self.Lambda)

    @property
    def ddLambda(self) -> GradedOperator:
        return self._c("ddL", lambda: self.d @ self.dLambda)

    def operator_identities(self) -> dict:
        d, L, Lam, H, dl, ddl = self.d, self.L, self.Lambda, self.H, self.dLambda, self.ddLambda
        return {
            "[L,H]=2L": commutator(L, H) == L.scale(QQ(2)),
            "[Λ,H]=-2Λ": commutator(Lam, H) == Lam.scale(QQ(-2)),
            "[L,Λ]=H": commutator(L, Lam) == H,
            "[d,L]=0": commutator(d, L).is_zero(),
            "[dΛ,L]=-d": commutator(dl, L) == -d,
            "[d,Λ]=dΛ": commutator(d, Lam) == dl,
            "[ddΛ,L]=0": commutator(ddl, L).is_zero(),
            "[ddΛ,Λ]=0": commutator(ddl, Lam).is_zero(),
            "[ddΛ,H]=0": commutator(ddl, H).is_zero(),
            "star^2=id": all((self.star_block(self.dim - k) @ self.star_block(k)) == Matrix.identity(
                slice_dim(self.dim, k), QQ) for k in range(self.dim + 1)),
            "d dΛ + dΛ d = 0": (d @ dl + dl @ d).is_zero(),
            "dΛ^2 = 0": (dl @ dl).is_zero(),
        }

    # -- primitive forms --------------------------------------------------

    def primitive(self, k: int) -> Subspace:
        return kernel(self.Lambda.block(k))

    def primitive_via_L(self, k: int) -> Subspace:
        N = self.dim
        e = self.n - k + 1
        if e <= 0:
            # no primitive forms above the middle degree
            return Subspace.zero(slice_dim(N, k), QQ)
        Lp = wedge_operator(N, self.omega.power(e))
        return kernel(Lp.block(k))

    def primitive_decompose(self, a: Form) -> list:
        """[(r, B)] with a = Σ (1/r!) L^r B and ΛB = 0, via the closed coefficient formula."""
        if not a.is_homogeneous():
            raise ValidationError("decomposition needs a homogeneous form")
        k = a.degree() if a else 0
        n = self.n
        out = []
        for r in range(max(k - n, 0), k // 2 + 1):
            B = Form.zero(self.dim, QQ)
            lam_pow = a
            for _ in range(r):
                lam_pow = self.Lambda(lam_pow)
            ell = 0
            while lam_pow:
                term = lam_pow
                for _ in range(ell):
                    term = self.L(term)
                B = B + term.scale(_coeff(r, ell, n, k) * QQ(Fraction(1, factorial(ell))))
                lam_pow = self.Lambda(lam_pow)
                ell += 1
            if B:
                out.append((r, B))
        return out

    def primitive_decompose_solve(self, a: Form) -> list:
        """Same decomposition obtained by solving in a basis of ⊕ L^r P^{k-2r}."""
        k = a.degree() if a else 0
        N, n = self.dim, self.n
        cols, tags = [], []
        for r in range(max(k - n, 0), k // 2 + 1):
            P = self.primitive(k - 2 * r)
            for v in P.basis():
                f = Form.from_vector(N, k - 2 * r, v, QQ)
                img = f
                for _ in range(r):
                    img = self.L(img)
                cols.append(img.scale(QQ(Fraction(1, factorial(r)))).to_vector(k))
                tags.append((r, f))
        M = Matrix(slice_dim(N, k), len(cols), cols, QQ)
        x = M.solve(a.to_vector(k))
        if x is None:
            raise AssertionError("Lefschetz decomposition failed")
        comps = {}
        for j, c in x.items():
            r, f = tags[j]
            comps[r] = comps.get(r, Form.zero(N, QQ)) + f.scale(c)
        return sorted((r, B) for r, B in comps.items() if B)

    def reconstruct(self, comps: list) -> Form:
        out = Form.zero(self.dim, QQ)
        for r, B in comps:
            x = B
            for _ in range(r):
                x = self.L(x)
            out = out + x.scale(QQ(Fraction(1, factorial(r))))
        return out

    def L_power_iso(self, k: int) -> bool:
        """L^k: Λ^{n-k} → Λ^{n+k} is bijective on forms."""
        M = wedge_operator(self.dim, self.omega.power(k)).block(self.n - k) if k else Matrix.identity(
            slice_dim(self.dim, self.n), QQ)
        return M.rank() == M.ncols == M.nrows

    # -- cohomology -------------------------------------------------------

    @property
    def derham(self) -> DeRham:
        return self._c("derham", lambda: DeRham(self.g))

    def tseng_yau_tables(self, harmonic_check: bool = True) -> "SymplecticTables":
        N = self.dim
        d, dl, ddl = self.d, self.dLambda, self.ddLambda
        dr = self.derham
        t = SymplecticTables(n=self.n)
        for k in range(N + 1):
            kd, kdl, kddl = kernel(d.block(k)), kernel(dl.block(k)), kernel(ddl.block(k))
            im_ddl = image(ddl.block(k))
            im_d = image(d.block(k - 1)) if k >= 1 else Subspace.zero(slice_dim(N, k), QQ)
            im_dl = image(dl.block(k + 1)) if k < N else Subspace.zero(slice_dim(N, k), QQ)
            P = self.primitive(k)
            t.b[k] = dr.betti(k)
            t.dLambda[k] = kdl.dim - im_dl.dim
            t.d_plus_dLambda[k] = intersect(kd, kdl).dim - im_ddl.dim
            t.ddLambda[k] = kddl.dim - ssum(im_d, im_dl).dim
            t.PH_d_plus_dLambda[k] = intersect(kd, P).dim - intersect(im_ddl, P).dim
            t.PH_ddLambda[k] = intersect(kddl, P).dim - intersect(ssum(im_d, im_dl), P).dim
            t.ddLambda_lemma_at[k] = intersect(im_d, kdl) == im_ddl
        if harmonic_check:
            Dp, Dm = self.tseng_yau_laplacians()
            for k in range(N + 1):
                t.harmonic_d_plus_dLambda[k] = kernel(Dp.block(k)).dim
                t.harmonic_ddLambda[k] = kernel(Dm.block(k)).dim
        t.hlc_at = self.hlc_check()
        t.hlc = all(t.hlc_at.values())
        t.ddlambda_lemma = all(t.ddLambda_lemma_at.values())
        t.unimodular = self.g.is_unimodular()
        return t

    def tseng_yau_laplacians(self) -> tuple:
        d, dl = self.d, self.dLambda
        ds, dls = d.H(), dl.H()
        X = d @ dl
        Xs = X.H()
        Y = ds @ dl
        Ys = Y.H()
        Dp = X @ Xs + Xs @ X + Y @ Ys + Ys @ Y + ds @ d + dls @ dl
        Z = d @ dls
        Zs = Z.H()
        Dm = X @ Xs + Xs @ X + Z @ Zs + Zs @ Z + d @ ds + dl @ dls
        return Dp, Dm

    def hlc_check(self) -> dict:
        dr = self.derham
        n = self.n
        out = {}
        for k in range(n + 1):
            src = dr.basis(n - k)
            if dr.betti(n - k) != dr.betti(n + k):
                out[k] = False
                continue
            Lk = self.omega.power(k)
            imgs = [Lk.wedge(Form.from_vector(self.dim, n - k, v, QQ)).to_vector(n + k) for v in src]
            B = dr.B(n + k)
            span = ssum(B, Subspace.span(slice_dim(self.dim, n + k), imgs, QQ))
            out[k] = span.dim - B.dim == len(src)
        return out

    def omega_subgroups(self) -> "OmegaSubgroups":
        dr = self.derham
        N, n = self.dim, self.n
        res = OmegaSubgroups()
        for r in range(n + 1):
            for s in range(n + 1):
                k = 2 * r + s
                if k > N or r > n - s:
                    continue
                P = self.primitive(s)
                Lr = wedge_operator(N, self.omega.power(r)) if r else None
                imgs = Subspace.span(slice_dim(N, k), [Lr.block(s).apply(v) if Lr else v for v in P.basis()], QQ)
                space = ssum(intersect(imgs, dr.Z(k)), dr.B(k))
                res.spaces[(r, s)] = space
                res.dims[(r, s)] = space.dim - dr.B(k).dim
        for k in range(N + 1):
            B, Z = dr.B(k), dr.Z(k)
            parts = [sp for (r, s), sp in res.spaces.items() if 2 * r + s == k]
            tot = B
            for sp in parts:
                tot = ssum(tot, sp)
            res.direct[k] = tot.dim - B.dim == sum(sp.dim - B.dim for sp in parts)
            res.full[k] = tot == Z
        res.B = {k: dr.B(k) for k in range(N + 1)}
        return res

    def class_in(self, space: Subspace, f: Form) -> bool:
        return space.contains(f.to_vector(f.degree()))


def _coeff(r: int, ell: int, n: int, k: int):
    """Lefschetz coefficient for the convention [L, Λ] = H.

    The classical closed formula is written for the opposite sign of Λ; with
    Λ^{r+ℓ} replaced by (−Λ)^{r+ℓ} the (−1)^ℓ factor cancels and (−1)^r remains.
    """
    m = n - k + 2 * r + 1
    c = Fraction((-1) ** r * m * m)
    for i in range(r + 1):
        c /= (m - i)
    for j in range(ell + 1):
        c /= (m + j)
    return QQ(c)


@dataclass
class SymplecticTables:
    n: int
    b: dict = dfield(default_factory=dict)
    dLambda: dict = dfield(default_factory=dict)
    d_plus_dLambda: dict = dfield(default_factory=dict)
    ddLambda: dict = dfield(default_factory=dict)
    PH_d_plus_dLambda: dict = dfield(default_factory=dict)
    PH_ddLambda: dict = dfield(default_factory=dict)
    harmonic_d_plus_dLambda: dict = dfield(default_factory=dict)
    harmonic_ddLambda: dict = dfield(default_factory=dict)
    ddLambda_lemma_at: dict = dfield(default_factory=dict)
    hlc_at: dict = dfield(default_factory=dict)
    hlc: bool = False
    ddlambda_lemma: bool = False
    unimodular: bool = True

    @property
    def d_plus_dLambda_is_b(self) -> bool:
        return all(self.d_plus_dLambda[k] == self.b[k] for k in self.b)

    def equivalence(self) -> dict:
        flags = (self.hlc, self.ddlambda_lemma, self.d_plus_dLambda_is_b)
        return {"hlc": flags[0], "ddLambda_lemma": flags[1], "H_d+dLambda=b": flags[2],
                "agree": len(set(flags)) == 1, "asserted": self.unimodular}

    def tseng_yau_sum(self, k: int) -> int:
        return sum(self.PH_d_plus_dLambda[k - 2 * r] for r in range(max(k - self.n, 0), k // 2 + 1))


@dataclass
class OmegaSubgroups:
    spaces: dict = dfield(default_factory=dict)
    dims: dict = dfield(default_factory=dict)
    direct: dict = dfield(default_factory=dict)
    full: dict = dfield(default_factory=dict)
    B: dict = dfield(default_factory=dict)


def build(g: LieAlgebra, omega: Form) -> SymplecticStructure:
    return SymplecticStructure(g, omega)


def sympl_star(s: SymplecticStructure, a: Form) -> Form:
    return s.sympl_star(a)


def d_lambda(s: SymplecticStructure) -> GradedOperator:
    return s.dLambda


def primitive_decompose(s: SymplecticStructure, a: Form) -> list:
    return s.primitive_decompose(a)


def tseng_yau_tables(s: SymplecticStructure) -> SymplecticTables:
    return s.tseng_yau_tables()


def omega_subgroups(s: SymplecticStructure) -> OmegaSubgroups:
    return s.omega_subgroups()


def hlc_check(s: SymplecticStructure) -> dict:
    return s.hlc_check()
