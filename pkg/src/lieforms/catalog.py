"""Built-in algebras with the structures attached to them.

Each entry is produced by a builder taking keyword parameters.  Complex
structures are given by their (1,0)-coframe written in the real coframe, by a
J matrix, or natively by complex structure equations; symplectic forms are
real 2-forms; D-complex structures are pairs of bases (g+, g-).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .exterior import Form
from .lie import LieAlgebra, ValidationError, parse_complex_coframe, parse_salamon, torus
from .linalg import QQ, QQI, Matrix


class UnknownEntry(KeyError):
    pass


@dataclass
class Entry:
    name: str
    algebra: LieAlgebra
    complex: dict = dfield(default_factory=dict)      # label -> builder() -> ComplexStructure
    symplectic: dict = dfield(default_factory=dict)   # label -> Form on algebra (real model)
    dcomplex: dict = dfield(default_factory=dict)     # label -> (plus basis, minus basis)
    pinned: dict = dfield(default_factory=dict)
    metric_orthonormal: bool = True
    params: dict = dfield(default_factory=dict)
    notes: str = ""

    def complex_structure(self, label: str | None = None):
        if not self.complex:
            raise ValidationError(f"{self.name} has no complex structure")
        key = label or next(iter(self.complex))
        if key not in self.complex:
            raise ValidationError(f"{self.name} has no complex structure {key!r}")
        cache = self.__dict__.setdefault("_cs_cache", {})
        if key not in cache:
            cache[key] = self.complex[key]()
        return cache[key]

    def omega(self, label: str | None = None) -> Form:
        if not self.symplectic:
            raise ValidationError(f"{self.name} has no symplectic form")
        key = label or next(iter(self.symplectic))
        return self.symplectic[key]

    def dcx(self, label: str | None = None):
        from .dcx import DComplexStructure

        if not self.dcomplex:
            raise ValidationError(f"{self.name} has no D-complex structure")
        key = label or next(iter(self.dcomplex))
        plus, minus = self.dcomplex[key]
        return DComplexStructure.from_splitting(self.algebra, plus, minus)

    @property
    def flags(self):
        return self.algebra.flags(self.pinned)


def _f(g: LieAlgebra, text: str) -> Form:
    """Real form from Salamon pair syntax, e.g. '16+25+34' or '-1/2*126'."""
    return parse_form(text, g.n)


def parse_form(text: str, n: int, field=QQ) -> Form:
    """Signed sum of monomials written as digit strings (or dotted for n > 9)."""
    s = text.replace(" ", "").replace("−", "-")
    if not s or s == "0":
        return Form.zero(n, field)
    out = Form.zero(n, field)
    i = 0
    while i < len(s):
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
        j = i
        while j < len(s) and s[j] not in "+-":
            if s[j] == "(":
                j = s.index(")", j)
            j += 1
        term = s[i:j]
        i = j
        if "*" in term:
            cs, mon = term.rsplit("*", 1)
            coeff = field(cs.strip("()"))
        else:
            coeff, mon = field.one, term
        idx = [int(x) for x in mon.split(".")] if "." in mon else [int(x) for x in mon]
        out = out + Form.basis(n, idx, field, coeff if sign > 0 else -coeff)
    return out


def _cof(n: int, pairs) -> list:
    """(1,0)-forms a + i b from [(a_idx, b_idx), ...] in a real coframe of dim n."""
    return [Form(n, {(a,): QQI.one, (b,): QQI.i}, QQI) for a, b in pairs]


def _vec(n: int, entries: dict) -> dict:
    return {i: QQ(v) for i, v in entries.items()}


def _sign_split(n: int, signs: str) -> tuple:
    plus = [{j + 1: QQ.one} for j, s in enumerate(signs) if s == "+"]
    minus = [{j + 1: QQ.one} for j, s in enumerate(signs) if s == "-"]
    if len(plus) + len(minus) != n:
        raise ValidationError("sign string has the wrong length")
    return plus, minus


def _from_coframe(g, phis):
    from .cplx import ComplexStructure

    return lambda: ComplexStructure.from_coframe(g, phis)


def _from_native(g):
    from .cplx import ComplexStructure

    return lambda: ComplexStructure.from_native(g)


def _from_J(g, J, on="vectors"):
    from .cplx import ComplexStructure

    return lambda: ComplexStructure.from_J_matrix(g, J, on)


def _matrix(n: int, entries: dict) -> Matrix:
    cols = [dict() for _ in range(n)]
    for (r, c), v in entries.items():
        cols[c - 1][r - 1] = QQ(v)
    return Matrix(n, n, cols, QQ)


def _std_pairs(crank: int):
    return [(2 * j - 1, 2 * j) for j in range(1, crank + 1)]


# ---------------------------------------------------------------------------
# builders


def _torus(n=3):
    n = int(n)
    g = torus(n)
    om = Form.zero(2 * n, QQ)
    for j in range(1, n + 1):
        om = om + Form.basis(2 * n, (2 * j - 1, 2 * j), QQ)
    signs = "+-" * n
    return Entry(f"torus({n})", g,
                 complex={"standard": _from_coframe(g, _cof(2 * n, _std_pairs(n)))},
                 symplectic={"standard": om},
                 dcomplex={"standard": _sign_split(2 * n, signs)},
                 params={"n": n})


def _iwasawa():
    cx = parse_complex_coframe("complex 3\ndf1 = 0\ndf2 = 0\ndf3 = -f1f2", name="iwasawa")
    from .cplx import ComplexStructure

    cs = ComplexStructure.from_native(cx)
    g = cs.real
    e = Entry("iwasawa", g, notes="real model e^{2j-1} = Re φ^j, e^{2j} = Im φ^j")
    e.complex["standard"] = lambda: cs
    e.complex["almost_kahler"] = _from_coframe(g, _cof(6, [(1, 6), (2, 5), (3, 4)]))
    e.symplectic["almost_kahler"] = _f(g, "16+25+34")
    return e


def _iwasawa_def(s12=-1, s11b=0, s12b=0, s21b=0, s22b=0, sigma=None):
    from .cplx import ComplexStructure, iwasawa_family

    sig = tuple(sigma) if sigma is not None else (s12, s11b, s12b, s21b, s22b)
    cx, cs, label = iwasawa_family(sig)
    e = Entry(f"iwasawa_def[{label}]", cs.real, params={"sigma": sig, "class": label})
    e.complex["deformed"] = lambda: cs
    return e


def _h7(alpha=2):
    a = QQ(alpha)
    if a == QQ(0) or a == QQ(1):
        raise ValidationError("alpha must differ from 0 and 1")
    base = parse_salamon("(0^3,23,13,12)", name="h7")
    n = 6
    E = [Form(n, {(1,): QQ.one}, QQ), Form(n, {(2,): a}, QQ), Form(n, {(3,): a - 1}, QQ),
         Form(n, {(4,): QQ.one}, QQ), Form(n, {(5,): QQ.one}, QQ), Form(n, {(6,): QQ.one}, QQ)]
    g = base.substitute_coframe(E, name="h7")
    e = Entry(f"h7(alpha={alpha})", g, params={"alpha": a},
              notes="coframe E = (e1, a e2, (a-1) e3, e4, e5, e6), orthonormal for the metric")
    e.complex["J_alpha"] = _from_coframe(g, _cof(6, [(1, 4), (2, 5), (3, 6)]))
    e.symplectic["omega_alpha"] = _f(g, "14+25+36")
    return e


def _h16():
    g = parse_salamon("(0^3,12,14,24)", name="h16")
    return Entry("h16", g, complex={"J": _from_coframe(g, _cof(6, _std_pairs(3)))})


def _h2():
    g = parse_salamon("(0^4,12,34)", name="h2")
    return Entry("h2", g, complex={"J": _from_coframe(g, _cof(6, _std_pairs(3)))})


def _h_0413():
    g = parse_salamon("(0^4,12,13)", name="h_0413")
    return Entry("h_0413", g, complex={"J_prime": _from_coframe(g, _cof(6, _std_pairs(3)))})


def _etabeta5():
    cx = parse_complex_coframe("complex 5\ndf5 = -f1f2-f3f4", name="etabeta5")
    from .cplx import ComplexStructure

    cs = ComplexStructure.from_native(cx)
    e = Entry("etabeta5", cs.real)
    e.complex["standard"] = lambda: cs
    return e


def _n6c(c=1):
    cc = QQ(c)
    if not cc:
        raise ValidationError("c must be nonzero")
    g = parse_salamon("(c*13,-c*23,0,c*46,-c*56,0)", {"c": cc}, name="n6c")
    J = _matrix(6, {(2, 1): 1, (1, 2): -1, (4, 3): 1, (3, 4): -1, (6, 5): 1, (5, 6): -1})
    e = Entry(f"n6c(c={c})", g, params={"c": cc})
    e.complex["J"] = _from_J(g, J)
    e.symplectic["hermitian_pairing"] = _f(g, "12+34+56")
    e.notes = "hermitian_pairing is the fundamental form of Σ e^j⊙e^j with J; it is not closed"
    return e


def _nakamura():
    g = parse_salamon("(0,0,13,-14,15,-16)", name="nakamura_cs")
    e = Entry("nakamura_cs", g, pinned={"completely_solvable": True})
    e.complex["J_prime"] = _from_coframe(g, _cof(6, _std_pairs(3)))
    e.symplectic["omega_prime"] = _f(g, "12+34+56")
    return e


def _sympl_n1():
    g = parse_salamon("(0^3,12,14-23,15+34)", name="sympl_n1")
    return Entry("sympl_n1", g, symplectic={"omega": _f(g, "16+35+24")})


def _g34_g35():
    g = parse_salamon("(-13,23,0,-56,46,0)", name="g34_g35")
    return Entry("g34_g35", g, symplectic={"omega": _f(g, "12+36+45")}, pinned={"completely_solvable": True})


def _solv_h3():
    g = parse_salamon("(-23,0,0,-46,56,0)", name="solv_h3")
    return Entry("solv_h3", g, symplectic={"omega": _f(g, "12+36+45")}, pinned={"completely_solvable": True})


def _dcx_1():
    g = parse_salamon("(0^4,12,13)", name="dcx_1")
    return Entry("dcx_1", g, dcomplex={"K": _sign_split(6, "-++--+")},
                 symplectic={"omega": _f(g, "16+25+34")})


def _dcx_2():
    g = parse_salamon("(0^3,12,13+14,24)", name="dcx_2")
    return Entry("dcx_2", g, dcomplex={"K": _sign_split(6, "+-+-+-")})


def _dcx_4d():
    g = parse_salamon("(0,0,12,0)", name="dcx_4d")
    plus = [_vec(4, {1: 1}), _vec(4, {4: 1, 2: -1})]
    minus = [_vec(4, {2: 1}), _vec(4, {3: 1})]
    return Entry("dcx_4d", g, dcomplex={"K": (plus, minus)})


def _dcx_solv(t=0):
    tt = QQ(t)
    g = parse_salamon("(0^2,23,-24)", name="dcx_solv")
    plus = [_vec(4, {2: 1}), _vec(4, {3: 1})]
    minus = [_vec(4, {1: 1}), {4: QQ.one, 2: tt} if tt else {4: QQ.one}]
    e = Entry(f"dcx_solv(t={t})", g, dcomplex={"K_t": (plus, minus)}, params={"t": tt},
              pinned={"completely_solvable": True})
    e.symplectic["omega"] = _f(g, "12+34")
    return e


def _dcx_6a(t=0):
    tt = QQ(t)
    g = parse_salamon("(0^3,12,13,24)", name="dcx_6a")
    one = QQ.one
    plus = [{1: one}, {k: v for k, v in ((3, one - tt), (4, tt)) if v}, {5: one}]
    minus = [{2: one}, {k: v for k, v in ((3, tt), (4, -(one - tt))) if v}, {6: one}]
    return Entry(f"dcx_6a(t={t})", g, dcomplex={"K_t": (plus, minus)}, params={"t": tt})


def _dcx_6b(t=0):
    tt = QQ(t)
    g = parse_salamon("(0^3,12,13,24)", name="dcx_6b")
    one = QQ.one
    plus = [{1: one}, {4: one}, {k: v for k, v in ((5, one - tt), (6, tt)) if v}]
    minus = [{2: one}, {3: one}, {k: v for k, v in ((5, tt), (6, -(one - tt))) if v}]
    return Entry(f"dcx_6b(t={t})", g, dcomplex={"K_t": (plus, minus)}, params={"t": tt})


def _dcx_nonunimod():
    g = parse_salamon("(0^3,13+34)", name="dcx_nonunimod")
    return Entry("dcx_nonunimod", g, dcomplex={"K": _sign_split(4, "++--")})


def _dcx_product():
    g = parse_salamon("(0^2,12,0^2,45)", name="dcx_product")
    return Entry("dcx_product", g, dcomplex={"K": _sign_split(6, "+++---")})


def _n4_heis():
    g = parse_salamon("(0,0,12,0)", name="n4_heis")
    return Entry("n4_heis", g, dcomplex={"K": _sign_split(4, "+-+-")})


def _n4_filiform():
    g = parse_salamon("(0,0,12,13)", name="n4_filiform")
    return Entry("n4_filiform", g, dcomplex={"K": (
        [_vec(4, {1: 1}), _vec(4, {4: 1})], [_vec(4, {2: 1}), _vec(4, {3: 1})])})


def _kt():
    g = parse_salamon("(0^2,14,12)", name="kt")
    J = _matrix(4, {(2, 1): -1, (1, 2): 1, (4, 3): -1, (3, 4): 1})
    return Entry("kt", g, complex={"J": _from_J(g, J)})


def _s3t3():
    g = parse_salamon("(23,-13,12,0^3)", name="s3t3")
    return Entry("s3t3", g, complex={"J": _from_coframe(g, _cof(6, [(1, 4), (2, 5), (3, 6)]))})


BUILDERS = {
    "torus": _torus,
    "iwasawa": _iwasawa,
    "iwasawa_def": _iwasawa_def,
    "h7": _h7,
    "h16": _h16,
    "h2": _h2,
    "h_0413": _h_0413,
    "etabeta5": _etabeta5,
    "n6c": _n6c,
    "nakamura_cs": _nakamura,
    "nakamura_J'": _nakamura,
    "sympl_n1": _sympl_n1,
    "g34_g35": _g34_g35,
    "solv_h3": _solv_h3,
    "dcx_1": _dcx_1,
    "dcx_2": _dcx_2,
    "dcx_4d": _dcx_4d,
    "dcx_solv": _dcx_solv,
    "dcx_6a": _dcx_6a,
    "dcx_6b": _dcx_6b,
    "dcx_nonunimod": _dcx_nonunimod,
    "dcx_product": _dcx_product,
    "n4_heis": _n4_heis,
    "n4_filiform": _n4_filiform,
    "kt": _kt,
    "s3t3": _s3t3,
}

NILPOTENT_4D = ("torus", "n4_heis", "n4_filiform")


def catalog(name: str, **params) -> Entry:
    if name not in BUILDERS:
        raise UnknownEntry(name)
    try:
        return BUILDERS[name](**params)
    except TypeError as exc:
        raise ValidationError(f"bad parameters for {name}: {exc}") from None


def names() -> list:
    return sorted(BUILDERS)
