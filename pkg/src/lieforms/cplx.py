"""Linear (almost-)complex structures on Lie algebras.

Every structure is carried by a complex model: the complexified algebra in a
coframe (φ^1..φ^n, φ̄^1..φ̄^n), so a monomial has bidegree
(#indices <= n, #indices > n).  When a real presentation is available the
transition matrix from the real coframe is kept, which gives the real route
to real-coefficient subgroups.

J is stored by its action on vectors (columns are J e_j); on covectors it acts
by the transpose, and the (1,0)-forms are the +i eigenvectors of that action.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

from .exterior import Form, GradedOperator, monomials, slice_dim
from .lie import LieAlgebra, ValidationError
from .linalg import Matrix, QQ, QQI, Scalar, Subspace


@lru_cache(maxsize=None)
def bidegree_indices(crank: int, p: int, q: int) -> tuple:
    """Positions inside the degree-(p+q) slice of monomials of bidegree (p, q)."""
    n = 2 * crank
    out = []
    for i, m in enumerate(monomials(n, p + q)):
        if sum(1 for x in m if x <= crank) == p:
            out.append(i)
    return tuple(out)


@lru_cache(maxsize=None)
def bidegree_of_slice(crank: int, k: int) -> tuple:
    return tuple((sum(1 for x in m if x <= crank), sum(1 for x in m if x > crank))
                 for m in monomials(2 * crank, k))


def bidegrees(crank: int, k: int) -> list:
    return [(p, k - p) for p in range(k + 1) if p <= crank and k - p <= crank]


def bi_block(op: GradedOperator, crank: int, p: int, q: int, target: tuple) -> Matrix:
    """Matrix of op from Λ^{p,q} to Λ^{target} in bidegree-local coordinates."""
    k = p + q
    tk = k + op.shift
    src = bidegree_indices(crank, p, q)
    if tk < 0 or tk > 2 * crank or target[0] < 0 or target[1] < 0 or target[0] > crank or target[1] > crank:
        return Matrix.zero(0, len(src), op.field)
    dst = bidegree_indices(crank, *target)
    pos = {g: i for i, g in enumerate(dst)}
    blk = op.block(k)
    cols = []
    for j in src:
        col = {}
        for r, v in blk.cols[j].items():
            if r in pos:
                col[pos[r]] = v
        cols.append(col)
    return Matrix(len(dst), len(src), cols, op.field)


def to_bidegree(vec: dict, crank: int, p: int, q: int) -> dict:
    pos = {g: i for i, g in enumerate(bidegree_indices(crank, p, q))}
    out = {}
    for j, v in vec.items():
        if j not in pos:
            raise ValueError(f"vector has components outside bidegree ({p},{q})")
        out[pos[j]] = v
    return out


def from_bidegree(vec: dict, crank: int, p: int, q: int) -> dict:
    idx = bidegree_indices(crank, p, q)
    return {idx[i]: v for i, v in vec.items()}


def split_operator(op: GradedOperator, crank: int) -> dict:
    """Decompose op into bidegree-homogeneous pieces keyed by (dp, dq)."""
    n = 2 * crank
    parts: dict = {}
    for k in op.degrees():
        tk = k + op.shift
        sb = bidegree_of_slice(crank, k)
        tb = bidegree_of_slice(crank, tk)
        blk = op.block(k)
        for j, col in enumerate(blk.cols):
            for r, v in col.items():
                key = (tb[r][0] - sb[j][0], tb[r][1] - sb[j][1])
                parts.setdefault(key, {}).setdefault(k, [dict() for _ in range(blk.ncols)])[j][r] = v
    out = {}
    for key, blocks in parts.items():
        mats = {k: Matrix(slice_dim(n, k + op.shift), slice_dim(n, k), cols, op.field)
                for k, cols in blocks.items()}
        out[key] = GradedOperator(n, op.shift, mats, op.field)
    return out


class DifferentialSplit:
    """d = A + ∂ + ∂̄ + Ā with bidegree shifts (2,-1), (1,0), (0,1), (-1,2)."""

    KEYS = {(2, -1): "A", (1, 0): "del", (0, 1): "delbar", (-1, 2): "Abar"}

    def __init__(self, d: GradedOperator, crank: int):
        n = 2 * crank
        pieces = split_operator(d, crank)
        for key in pieces:
            if key not in self.KEYS:
                raise ValidationError(f"differential has a component of bidegree {key}")
        zero = GradedOperator(n, 1, {}, d.field)
        self.A = pieces.get((2, -1), zero)
        self.delop = pieces.get((1, 0), zero)
        self.delbar = pieces.get((0, 1), zero)
        self.Abar = pieces.get((-1, 2), zero)
        self.d = d
        if self.A + self.delop + self.delbar + self.Abar != d:
            raise ValidationError("bidegree components do not reassemble d")

    def d_squared_identities(self) -> dict:
        A, D, Db, Ab = self.A, self.delop, self.delbar, self.Abar
        return {
            "A^2": (A @ A).is_zero(),
            "A del + del A": (A @ D + D @ A).is_zero(),
            "del^2 + A delbar + delbar A": (D @ D + A @ Db + Db @ A).is_zero(),
            "del delbar + delbar del + A Abar + Abar A": (D @ Db + Db @ D + A @ Ab + Ab @ A).is_zero(),
            "delbar^2 + Abar del + del Abar": (Db @ Db + Ab @ D + D @ Ab).is_zero(),
            "Abar delbar + delbar Abar": (Ab @ Db + Db @ Ab).is_zero(),
            "Abar^2": (Ab @ Ab).is_zero(),
        }


def _forms_to_matrix(forms: list, n: int, field) -> Matrix:
    """Rows = coordinates of degree-1 forms."""
    return Matrix.from_sparse_rows([{m[0] - 1: c for m, c in f.terms.items()} for f in forms], n, field)


class ComplexStructure:
    """A linear (almost-)complex structure together with its complex model.

    real:    real LieAlgebra (Q), possibly None for purely complex data
    cx:      complex-presentation LieAlgebra over Q(i) in the (φ, φ̄) coframe
    Phi:     2n x 2n matrix whose rows are φ^1..φ^n, φ̄^1..φ̄^n in the real coframe
    J:       action on vectors of the real algebra
    """

    native = False   # True when built from a complex-coframe presentation

    def __init__(self, real: LieAlgebra | None, cx: LieAlgebra, Phi: Matrix | None, name: str = ""):
        self.real = real
        self.cx = cx
        self.Phi = Phi
        self.name = name or cx.name
        self.crank = cx.crank
        self.n = cx.n

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_coframe(cls, g: LieAlgebra, phis: list, name: str = "") -> "ComplexStructure":
        """phis: (1,0)-forms φ^1..φ^n written in the real coframe of g."""
        if g.presentation != "real" or g.field.gaussian:
            raise ValidationError("from_coframe expects a real presentation")
        n2 = g.n
        if n2 % 2:
            raise ValidationError("odd-dimensional algebra carries no complex structure")
        crank = n2 // 2
        if len(phis) != crank:
            raise ValidationError(f"need {crank} forms of type (1,0)")
        phis = [f.with_field(QQI) for f in phis]
        bars = [f.conj_coeffs() for f in phis]
        Phi = _forms_to_matrix(phis + bars, n2, QQI)
        if Phi.rank() != n2:
            raise ValidationError("(1,0)-forms and their conjugates do not form a coframe")
        Pinv = Phi.inverse()
        # e^i = sum_a Pinv[i][a] * (a-th complex generator)
        e_in_cx = [Form(n2, {(a + 1,): Pinv.entry(i, a) for a in range(n2) if Pinv.entry(i, a)}, QQI)
                   for i in range(n2)]
        gq = LieAlgebra(g.name, [s.with_field(QQI) for s in g.structure], QQI, "real", validate=False)
        dphi = [gq.d_form(f).substitute(e_in_cx) for f in phis]
        cx = LieAlgebra(g.name, dphi, QQI, "complex", dict(g.params))
        dbar_direct = [gq.d_form(f).substitute(e_in_cx) for f in bars]
        if dbar_direct != cx.structure[crank:]:
            raise ValidationError("conjugation is not compatible with the structure equations")
        return cls(g, cx, Phi, name or g.name)

    @classmethod
    def from_J_matrix(cls, g: LieAlgebra, J: Matrix, on: str = "vectors", name: str = "") -> "ComplexStructure":
        """J given on vectors (columns J e_j) or, with on='covectors', on 1-forms."""
        if g.n % 2:
            raise ValidationError("odd dimension")
        if J.shape != (g.n, g.n):
            raise ValidationError("J has the wrong size")
        Jq = _to_real(J) if J.field.gaussian else J
        if not (Jq @ Jq == Matrix.identity(g.n, Jq.field).scale(-1)):
            raise ValidationError("J^2 != -I")
        C = Jq.transpose() if on == "vectors" else Jq
        Cg = _to_gauss(C)
        shifted = Cg - Matrix.identity(g.n, QQI).scale(QQI.i)
        ker = shifted.kernel()
        if ker.dim != g.n // 2:
            raise ValidationError("J has the wrong eigenspace dimensions")
        phis = [Form(g.n, {(j + 1,): c for j, c in r.items()}, QQI) for r in ker.rows]
        return cls.from_coframe(g, phis, name)

    @classmethod
    def from_native(cls, cx: LieAlgebra, name: str = "") -> "ComplexStructure":
        """Coframe presentation; the real model uses e^{2j-1} = Re φ^j, e^{2j} = Im φ^j."""
        if cx.presentation != "complex":
            raise ValidationError("from_native expects a complex-coframe presentation")
        crank, n2 = cx.crank, cx.n
        img = []
        for a in range(1, n2 + 1):
            j = a if a <= crank else a - crank
            s = QQI.i if a <= crank else -QQI.i
            img.append(Form(n2, {(2 * j - 1,): QQI.one, (2 * j,): s}, QQI))
        real_structure = [None] * n2
        for j in range(1, crank + 1):
            f = cx.structure[j - 1].substitute(img)
            re_part = Form(n2, {m: QQ(c.re) for m, c in f.terms.items() if c.re}, QQ)
            im_part = Form(n2, {m: QQ(c.im) for m, c in f.terms.items() if c.im}, QQ)
            real_structure[2 * j - 2] = re_part
            real_structure[2 * j - 1] = im_part
        real = LieAlgebra(cx.name, real_structure, QQ, "real", dict(cx.params))
        rows = []
        for a in range(1, n2 + 1):
            j = a if a <= crank else a - crank
            s = QQI.i if a <= crank else -QQI.i
            rows.append({2 * j - 2: QQI.one, 2 * j - 1: s})
        Phi = Matrix.from_sparse_rows(rows, n2, QQI)
        cs = cls(real, cx, Phi, name or cx.name)
        cs.native = True
        return cs

    # -- derived data -----------------------------------------------------

    @cached_property
    def J(self) -> Matrix | None:
        """Action on vectors of the real algebra: M = Phi^{-1} D Phi."""
        if self.Phi is None:
            return None
        n2, c = self.n, self.crank
        D = Matrix(n2, n2, [{a: (QQI.i if a < c else -QQI.i)} for a in range(n2)], QQI)
        M = self.Phi.inverse() @ D @ self.Phi
        return _to_real(M)

    @cached_property
    def split(self) -> DifferentialSplit:
        return DifferentialSplit(self.cx.d, self.crank)

    @property
    def d(self) -> GradedOperator:
        return self.cx.d

    @cached_property
    def integrable_coframe(self) -> bool:
        """No (0,2)-component in any dφ^j."""
        c = self.crank
        for s in self.cx.structure[:c]:
            for m in s.terms:
                if m[0] > c:
                    return False
        return True

    @cached_property
    def integrable_split(self) -> bool:
        return self.split.A.is_zero() and self.split.Abar.is_zero()

    def nijenhuis(self, x: dict, y: dict) -> dict:
        """Nij(x,y) = [x,y] + J[Jx,y] + J[x,Jy] - [Jx,Jy] on frame vectors (1-based dicts)."""
        g, M = self.real, self.J
        if g is None or M is None:
            raise ValidationError("no real model")

        def Jv(v):
            out = M.apply({i - 1: c for i, c in v.items()})
            return {i + 1: c for i, c in out.items()}

        def add(a, b, s=1):
            out = dict(a)
            for k, v in b.items():
                w = out.get(k, QQ.zero) + (v if s > 0 else -v)
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
            return out

        r = g.bracket(x, y)
        r = add(r, Jv(g.bracket(Jv(x), y)))
        r = add(r, Jv(g.bracket(x, Jv(y))))
        r = add(r, g.bracket(Jv(x), Jv(y)), -1)
        return r

    def nijenhuis_witnesses(self) -> list:
        if self.real is None:
            return []
        out = []
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                v = self.nijenhuis({i: QQ.one}, {j: QQ.one})
                if v:
                    out.append((i, j, v))
        return out

    @cached_property
    def integrable_nijenhuis(self) -> bool:
        return not self.nijenhuis_witnesses()

    @property
    def integrable(self) -> bool:
        return self.integrable_coframe

    def require_integrable(self):
        if not self.integrable:
            raise ValidationError("complex structure is not integrable")

    def wedge_pq(self, p: int, q: int) -> Subspace:
        k = p + q
        one = QQI.one
        return Subspace.span(slice_dim(self.n, k), [{i: one} for i in bidegree_indices(self.crank, p, q)], QQI)

    @cached_property
    def realification(self) -> GradedOperator:
        """Real coordinates (over Q(i)) -> complex-model coordinates."""
        if self.Phi is None:
            raise ValidationError("no real model")
        n2 = self.n
        Pinv = self.Phi.inverse()
        e_in_cx = [Form(n2, {(a + 1,): Pinv.entry(i, a) for a in range(n2) if Pinv.entry(i, a)}, QQI)
                   for i in range(n2)]
        return GradedOperator.from_form_map(n2, 0, lambda f: f.substitute(e_in_cx), QQI)

    @cached_property
    def complexification_inverse(self) -> GradedOperator:
        """Complex-model coordinates -> real coordinates (over Q(i))."""
        n2 = self.n
        phis = [Form(n2, {(i + 1,): v for i, v in self.Phi.rows()[a].items()}, QQI) for a in range(n2)]
        return GradedOperator.from_form_map(n2, 0, lambda f: f.substitute(phis), QQI)

    def to_complex(self, f: Form) -> Form:
        """Real-model form (any field) -> complex-model form."""
        return self.realification.apply(f.with_field(QQI))

    def to_real(self, f: Form) -> Form:
        """Complex-model form -> real-model form; errors if it is not real."""
        r = self.complexification_inverse.apply(f)
        if any(c.im for c in r.terms.values()):
            raise ValueError("form is not real")
        return Form(self.n, {m: QQ(c.re) for m, c in r.terms.items()}, QQ)

    def phi(self, *idx, coeff=1) -> Form:
        """Monomial in the complex model; negative index -j stands for φ̄^j."""
        real_idx = [i if i > 0 else self.crank - i for i in idx]
        return Form.basis(self.n, real_idx, QQI, coeff)


def _to_gauss(m: Matrix) -> Matrix:
    if m.field.gaussian:
        return m
    return Matrix(m.nrows, m.ncols, [{r: QQI(v) for r, v in c.items()} for c in m.cols], QQI)


def _to_real(m: Matrix) -> Matrix:
    cols = []
    for c in m.cols:
        col = {}
        for r, v in c.items():
            if v.im:
                raise ValidationError("matrix is not real")
            col[r] = QQ(v.re)
        cols.append(col)
    return Matrix(m.nrows, m.ncols, cols, QQ)


def from_J_matrix(g: LieAlgebra, J: Matrix, on: str = "vectors") -> ComplexStructure:
    return ComplexStructure.from_J_matrix(g, J, on)


def split_differential(c: ComplexStructure) -> DifferentialSplit:
    return c.split


def sign_matrix(n: int, entries: dict, field=QQ) -> Matrix:
    """Matrix from {(row, col): value} with 1-based indices."""
    cols = [dict() for _ in range(n)]
    for (r, c), v in entries.items():
        cols[c - 1][r - 1] = field(v)
    return Matrix(n, n, cols, field)


# ---------------------------------------------------------------------------
# Iwasawa deformation family

SIGMA_NAMES = ("s12", "s11b", "s12b", "s21b", "s22b")

IWASAWA_TEMPLATE = (
    "complex 3\n"
    "df1 = 0\n"
    "df2 = 0\n"
    "df3 = s12*f1f2 + s11b*f1F1 + s12b*f1F2 + s21b*f2F1 + s22b*f2F2\n"
)


def class_label(sigma) -> str:
    """Deformation class from the rank data of a σ-tuple (σ12, σ11̄, σ12̄, σ21̄, σ22̄)."""
    s12, s11, s12b, s21, s22 = [QQI(x) for x in sigma]
    if not any((s11, s12b, s21, s22)):
        if not s12:
            raise ValidationError("degenerate deformation: all σ vanish")
        return "i"
    block = Matrix.from_rows([[-s21, s11], [-s22, s12b]], QQI)
    S = Matrix.from_rows([[s11.conj(), s22.conj(), s12b.conj(), s21.conj()],
                          [s11, s22, s21, s12b]], QQI)
    base = "ii" if block.rank() == 1 else "iii"
    sub = "a" if S.rank() == 1 else "b"
    return f"{base}.{sub}"


def iwasawa_family(sigma) -> tuple:
    """(complex algebra, structure, class label) for dφ³ = σ12 φ^{12} + Σ σ_{ab̄} φ^{ab̄}."""
    from .lie import parse_complex_coframe

    if len(sigma) != 5:
        raise ValueError("sigma must have five entries")
    label = class_label(sigma)
    params = {k: QQI(v) for k, v in zip(SIGMA_NAMES, sigma)}
    g = parse_complex_coframe(IWASAWA_TEMPLATE, params, name=f"iwasawa_def[{label}]")
    return g, ComplexStructure.from_native(g), label


CLASS_REPRESENTATIVES = {
    "i": (-1, 0, 0, 0, 0),
    "ii.a": (-1, 1, 0, 0, 0),
    "ii.b": (-1, 1, QQI("1/2i"), 0, 0),
    "iii.a": (-1, 1, 0, 0, 1),
    "iii.b": (-1, 1, 0, 0, QQI.i),
}
