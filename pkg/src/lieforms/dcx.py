"""D-complex (para-complex) linear structures on Lie algebras.

K is an involution of g with ±1-eigenspaces g+ and g- of equal dimension.  It
acts on forms by pullback, so the ±1-eigenspaces Λ^{ℓ±} of Λ^ℓ g* collect the
bidegrees (p, q) with q even or odd.  H^{ℓ±} are the de Rham classes with a
representative in Λ^{ℓ±}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield

from .cohom import DeRham
from .exterior import Form, GradedOperator, slice_dim
from .lie import LieAlgebra, ValidationError
from .linalg import QQ, Matrix, Subspace, intersect, kernel, preimage, ssum


def _clean(v: dict) -> dict:
    return {int(i): QQ(c) for i, c in v.items() if QQ(c)}


def _vspace(n: int, vecs: list) -> Subspace:
    return Subspace.span(n, [{i - 1: c for i, c in v.items()} for v in vecs], QQ)


def _one_based(v: dict) -> dict:
    return {i + 1: c for i, c in v.items()}


class DComplexStructure:
    def __init__(self, g: LieAlgebra, plus: list, minus: list):
        if g.field.gaussian:
            raise ValidationError("D-complex structures live on real algebras")
        N = g.n
        if N % 2:
            raise ValidationError("odd-dimensional algebra")
        h = N // 2
        plus = [_clean(v) for v in plus]
        minus = [_clean(v) for v in minus]
        if len(plus) != h or len(minus) != h:
            raise ValidationError(f"g+ and g- need {h} basis vectors each")
        for v in plus + minus:
            if any(i < 1 or i > N for i in v):
                raise ValidationError("basis vector index out of range")
        gp, gm = _vspace(N, plus), _vspace(N, minus)
        if gp.dim != h or gm.dim != h:
            raise ValidationError("basis vectors are linearly dependent")
        if ssum(gp, gm).dim != N:
            raise ValidationError("g+ and g- are not complementary")
        self.g = g
        self.n = h
        self.plus, self.minus = plus, minus
        self.g_plus, self.g_minus = gp, gm
        cols = [{i - 1: c for i, c in v.items()} for v in plus + minus]
        P = Matrix(N, N, cols, QQ)
        D = Matrix(N, N, [{j: QQ.one if j < h else -QQ.one} for j in range(N)], QQ)
        self.K = P @ D @ P.inverse()
        Q = P.inverse()
        rows = Q.rows()
        # dual coframe: first h annihilate g-, last h annihilate g+
        self.coframe = [Form(N, {(j + 1,): c for j, c in r.items()}, QQ) for r in rows]
        self._cache = {}

    @classmethod
    def from_splitting(cls, g: LieAlgebra, plus_basis, minus_basis) -> "DComplexStructure":
        return cls(g, list(plus_basis), list(minus_basis))

    @classmethod
    def from_signs(cls, g: LieAlgebra, signs: str) -> "DComplexStructure":
        s = signs.strip().strip("()").replace(" ", "").replace("−", "-")
        if len(s) != g.n or set(s) - set("+-"):
            raise ValidationError(f"bad sign string {signs!r}")
        plus = [{j + 1: QQ.one} for j, c in enumerate(s) if c == "+"]
        minus = [{j + 1: QQ.one} for j, c in enumerate(s) if c == "-"]
        return cls(g, plus, minus)

    def _c(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # -- algebraic properties ---------------------------------------------

    def is_involution(self) -> bool:
        return self.K @ self.K == Matrix.identity(self.g.n, QQ)

    def integrability_witness(self):
        for name, basis, space in (("+", self.plus, self.g_plus), ("-", self.minus, self.g_minus)):
            for i, x in enumerate(basis):
                for y in basis[i + 1:]:
                    b = self.g.bracket(x, y)
                    if b and not space.contains({k - 1: c for k, c in b.items()}):
                        return name, x, y, b
        return None

    @property
    def integrable(self) -> bool:
        return self._c("integrable", lambda: self.integrability_witness() is None)

    @property
    def abelian(self) -> bool:
        g = self.g
        return (g.bracket_span(self.plus, self.plus).dim == 0
                and g.bracket_span(self.minus, self.minus).dim == 0)

    def commuting(self) -> bool:
        """[g+, g-] = 0."""
        return self.g.bracket_span(self.plus, self.minus).dim == 0

    def step(self, sign: str):
        """Nilpotent step s = inf{m : a^m = 0}, a^0 = a, a^{m+1} = [a^m, a]; None if not nilpotent."""
        if not self.integrable:
            raise ValidationError("eigenspaces are not subalgebras")
        basis = self.plus if sign == "+" else self.minus
        cur = _vspace(self.g.n, basis)
        m = 0
        while cur.dim:
            nxt = self.g.bracket_span([_one_based(r) for r in cur.basis()], basis)
            if nxt.dim == cur.dim:
                return None
            cur = nxt
            m += 1
        return m

    @property
    def steps(self) -> tuple:
        return self.step("+"), self.step("-")

    # -- forms ------------------------------------------------------------

    @property
    def action(self) -> GradedOperator:
        """Pullback K* on forms: e^i -> e^i ∘ K."""
        def build():
            N = self.g.n
            K = self.K
            images = [Form(N, {(j + 1,): K.entry(i, j) for j in range(N) if K.entry(i, j)}, QQ)
                      for i in range(N)]
            return GradedOperator.from_form_map(N, 0, lambda a: a.substitute(images), QQ)
        return self._c("action", build)

    def eigenforms(self, ell: int, sign: int) -> Subspace:
        def build():
            M = self.action.block(ell)
            I = Matrix.identity(M.ncols, QQ)
            return kernel(M - I if sign > 0 else M + I)
        return self._c(("eig", ell, sign), build)

    def bidegree_space(self, p: int, q: int) -> Subspace:
        """Λ^{p,q}_{+-} spanned by wedges of p plus-covectors and q minus-covectors."""
        from itertools import combinations

        N, h = self.g.n, self.n
        vecs = []
        for a in combinations(range(h), p):
            for b in combinations(range(h, 2 * h), q):
                f = Form.one(N, QQ)
                for i in a + b:
                    f = f.wedge(self.coframe[i])
                vecs.append(f.to_vector(p + q))
        return Subspace.span(slice_dim(N, p + q), vecs, QQ)

    def grading_consistent(self) -> bool:
        """Λ^{ℓ±} equals the sum of Λ^{p,q} with q even / odd, and they span Λ^ℓ."""
        N, h = self.g.n, self.n
        for ell in range(N + 1):
            sp = {1: Subspace.zero(slice_dim(N, ell), QQ), -1: Subspace.zero(slice_dim(N, ell), QQ)}
            for q in range(max(0, ell - h), min(ell, h) + 1):
                sgn = 1 if q % 2 == 0 else -1
                sp[sgn] = ssum(sp[sgn], self.bidegree_space(ell - q, q))
            if sp[1] != self.eigenforms(ell, 1) or sp[-1] != self.eigenforms(ell, -1):
                return False
            if self.eigenforms(ell, 1).dim + self.eigenforms(ell, -1).dim != slice_dim(N, ell):
                return False
        return True

    # -- cohomology -------------------------------------------------------

    @property
    def derham(self) -> DeRham:
        return self._c("derham", lambda: DeRham(self.g))

    def subgroup(self, ell: int, sign: int) -> Subspace:
        """(ker d ∩ Λ^{ℓ±}) + B^ℓ."""
        dr = self.derham
        return ssum(intersect(dr.Z(ell), self.eigenforms(ell, sign)), dr.B(ell))

    def stage(self, ell: int) -> "DcxStage":
        dr = self.derham
        N = self.g.n
        B, Z = dr.B(ell), dr.Z(ell)
        Hp, Hm = self.subgroup(ell, 1), self.subgroup(ell, -1)
        inter = intersect(Hp, Hm)
        tot = ssum(Hp, Hm)
        st = DcxStage(ell, Hp.dim - B.dim, Hm.dim - B.dim, Z.dim - B.dim,
                      pure=inter.dim == B.dim, full=tot.dim == Z.dim)
        if not st.pure:
            st.pure_witness = Form.from_vector(N, ell, inter.complement_reps(B)[0], QQ)
        if not st.full:
            for v in dr.basis(ell):
                if not tot.contains(v):
                    st.full_witness = Form.from_vector(N, ell, v, QQ)
                    break
        st.spaces = {"+": Hp, "-": Hm, "B": B}
        return st

    def report(self, stages=None) -> "DcxReport":
        if stages is None:
            stages = range(1, self.g.n)
        return DcxReport({ell: self.stage(ell) for ell in stages})

    def contains_class(self, ell: int, sign: int, f: Form) -> bool:
        return self.subgroup(ell, sign).contains(f.to_vector(ell))

    # -- D-Kähler ---------------------------------------------------------

    def anti_invariant(self, omega: Form) -> bool:
        return self.action(omega) == -omega

    def dkahler_check(self, omega: Form) -> bool:
        if omega.degrees() - {2}:
            return False
        return (not self.g.d_form(omega)) and bool(omega.power(self.n)) and self.anti_invariant(omega)

    # -- structural statements ------------------------------------------

    def structural_lemmas(self) -> dict:
        """Hypothesis, conclusion and implication status of the structural results."""
        g = self.g
        h = self.n
        out = {}
        abel = self.integrable and self.abelian
        uni = g.is_unimodular()
        top_plus = self.bidegree_space(h, 0)
        top_minus = self.bidegree_space(0, h)
        d = g.d.block(h)
        conc = all(not d.apply(v) for v in top_plus.basis() + top_minus.basis())
        out["abelian_unimodular_top_closed"] = _imp(abel and uni, conc)
        st2 = self.stage(2) if g.n >= 2 else None
        out["abelian_pure_stage2"] = _imp(abel, st2.pure if st2 else True)
        if self.integrable and g.is_nilpotent() and h >= 2:
            sp, sm = self.steps
            conc = all(s is not None and 1 <= s <= h - 1 for s in (sp, sm))
            out["nilpotent_steps_bound"] = _imp(True, conc)
        else:
            out["nilpotent_steps_bound"] = _imp(False, True)
        if self.integrable and self.commuting():
            rep = self.report()
            out["commuting_pure_full"] = _imp(True, all(s.pure and s.full for s in rep.stages.values()))
        else:
            out["commuting_pure_full"] = _imp(False, True)
        return out


def _imp(hyp: bool, conc: bool) -> dict:
    return {"hypothesis": bool(hyp), "conclusion": bool(conc), "holds": (not hyp) or bool(conc)}


@dataclass
class DcxStage:
    ell: int
    plus: int
    minus: int
    b: int
    pure: bool
    full: bool
    pure_witness: Form | None = None
    full_witness: Form | None = None
    spaces: dict = dfield(default_factory=dict, repr=False)


@dataclass
class DcxReport:
    stages: dict

    def __getitem__(self, ell):
        return self.stages[ell]


def from_splitting(g: LieAlgebra, plus_basis, minus_basis) -> DComplexStructure:
    return DComplexStructure.from_splitting(g, plus_basis, minus_basis)


def dcx_report(k: DComplexStructure, stages=None) -> DcxReport:
    return k.report(stages)


def dkahler_check(k: DComplexStructure, omega: Form) -> bool:
    return k.dkahler_check(omega)


def structural_lemmas(k: DComplexStructure) -> dict:
    return k.structural_lemmas()


def _random_vec(rng, n, lo=-3, hi=3) -> dict:
    while True:
        v = {i: QQ(rng.randint(lo, hi)) for i in range(n)}
        v = {i: c for i, c in v.items() if c}
        if v:
            return v


def _random_subalgebra_plane(g: LieAlgebra, rng) -> list:
    """span(u, v) with [u, v] ∈ span(u): a 2-dimensional subalgebra."""
    n = g.n
    while True:
        u = _random_vec(rng, n)
        pre = preimage(g.ad(_one_based(u)), Subspace.span(n, [u], QQ))
        basis = pre.basis()
        if not basis:
            continue
        v = {}
        for b in basis:
            c = QQ(rng.randint(-3, 3))
            for i, x in b.items():
                v[i] = v.get(i, QQ.zero) + c * x
        v = {i: c for i, c in v.items() if c}
        if Subspace.span(n, [u, v], QQ).dim == 2:
            return [_one_based(u), _one_based(v)]


def random_integrable_4d(g: LieAlgebra, count: int = 200, seed: int = 0, max_tries: int = 20000) -> list:
    """Seeded sample of integrable D-complex structures on a 4-dimensional algebra."""
    if g.n != 4:
        raise ValidationError("sampler is for 4-dimensional algebras")
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        plus = _random_subalgebra_plane(g, rng)
        minus = _random_subalgebra_plane(g, rng)
        try:
            k = DComplexStructure(g, plus, minus)
        except ValidationError:
            continue
        if k.integrable:
            out.append(k)
    return out
