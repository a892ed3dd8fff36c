"""Lie algebras given by structure equations, and their Chevalley-Eilenberg complex.

Conventions: de^k(x, y) = -e^k([x, y]), so with de^k = sum_{i<j} a^k_ij e^{ij}
the bracket is [e_i, e_j] = -sum_k a^k_ij e_k.

Two presentations exist.  A real presentation lists de^1..de^n over Q.  A
complex-coframe presentation lists dφ^1..dφ^n over Q(i); the model then has
2n generators (φ^1..φ^n, φ̄^1..φ̄^n) and dφ̄^j is the conjugate of dφ^j.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .exterior import (
    Form, GradedOperator, complex_pairing, conjugate_form, format_form,
    merge_sign, monomial_index, monomials, slice_dim,
)
from .linalg import Field, Matrix, QQ, QQI, Scalar, Subspace, kernel, parse_gauss


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None, text: str = ""):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}")


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class StructureFlags:
    nilpotent: bool
    nilpotency_step: int | None
    solvable: bool
    completely_solvable: bool
    unimodular: bool


class LieAlgebra:
    """Structure equations de^k (or dφ^k) plus everything derived from them."""

    def __init__(self, name: str, structure: list, field: Field = QQ,
                 presentation: str = "real", params: dict | None = None,
                 validate: bool = True):
        self.name = name
        self.field = field
        self.presentation = presentation
        self.params = dict(params or {})
        if presentation == "complex":
            self.crank = len(structure)
            n = 2 * self.crank
            pairing = complex_pairing(self.crank)
            full = [s.with_field(field) if s.n == n else s for s in structure]
            full = full + [conjugate_form(s, pairing) for s in full]
            self.pairing = pairing
        elif presentation == "real":
            self.crank = 0
            n = len(structure)
            full = list(structure)
            self.pairing = None
        else:
            raise ValueError(f"unknown presentation {presentation!r}")
        self.n = n
        for k, s in enumerate(full):
            if s.n != n:
                raise ValidationError(f"de^{k + 1} lives in dimension {s.n}, expected {n}")
            if s.field != field:
                raise ValidationError("structure equations over the wrong field")
            if s.terms and s.degrees() != {2}:
                raise ValidationError(f"de^{k + 1} is not a 2-form")
        self.structure = full
        if validate:
            self.check_jacobi()

    # -- basic data -------------------------------------------------------

    @property
    def dim(self) -> int:
        """Real dimension of the underlying algebra."""
        return self.n

    @property
    def style(self) -> str:
        return "complex" if self.presentation == "complex" else "real"

    def fmt(self, f: Form) -> str:
        return format_form(f, self.style, self.crank)

    def gen(self, i: int) -> Form:
        return Form.basis(self.n, (i,), self.field)

    def form(self, *idx, coeff=1) -> Form:
        return Form.basis(self.n, idx, self.field, coeff)

    def zero_form(self) -> Form:
        return Form.zero(self.n, self.field)

    def d_form(self, f: Form) -> Form:
        """Chevalley-Eilenberg differential of an arbitrary form (Leibniz rule)."""
        t: dict = {}
        for m, c in f.terms.items():
            for p, j in enumerate(m):
                dj = self.structure[j - 1]
                if not dj.terms:
                    continue
                left, right = m[:p], m[p + 1:]
                sgn = -1 if p % 2 else 1
                for pair, cc in dj.terms.items():
                    s1, mm = merge_sign(left, pair)
                    if s1 == 0:
                        continue
                    s2, mm = merge_sign(mm, right)
                    if s2 == 0:
                        continue
                    v = c * cc
                    if sgn * s1 * s2 < 0:
                        v = -v
                    if mm in t:
                        v = t[mm] + v
                        if v:
                            t[mm] = v
                        else:
                            del t[mm]
                    else:
                        t[mm] = v
        return Form._raw(self.n, t, self.field)

    def check_jacobi(self):
        for k, s in enumerate(self.structure):
            if self.d_form(s):
                raise ValidationError(f"not a Lie algebra: d(d e^{k + 1}) = {self.fmt(self.d_form(s))} != 0")

    @cached_property
    def d(self) -> GradedOperator:
        return GradedOperator.from_form_map(self.n, 1, self.d_form, self.field)

    # -- bracket ----------------------------------------------------------

    def bracket_coeffs(self, i: int, j: int) -> dict:
        """[e_i, e_j] as {k: coeff} (1-based frame indices)."""
        if i == j:
            return {}
        sign = 1
        if i > j:
            i, j = j, i
            sign = -1
        out = {}
        for k, s in enumerate(self.structure):
            c = s.terms.get((i, j))
            if c:
                out[k + 1] = -c if sign > 0 else c
        return out

    def bracket(self, x: dict, y: dict) -> dict:
        """Bracket of frame vectors given as {index (1-based): Scalar}."""
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket_coeffs(i, j).items():
                    v = out.get(k, self.field.zero) + a * b * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def ad(self, x: dict) -> Matrix:
        """ad_x on the frame basis, 0-based rows and columns."""
        cols = []
        for j in range(1, self.n + 1):
            v = self.bracket(x, {j: self.field.one})
            cols.append({k - 1: c for k, c in v.items()})
        return Matrix(self.n, self.n, cols, self.field)

    def bracket_span(self, a: list, b: list) -> Subspace:
        """span [a, b] for lists of frame vectors (1-based dicts)."""
        vecs = []
        for x in a:
            for y in b:
                v = self.bracket(x, y)
                if v:
                    vecs.append({k - 1: c for k, c in v.items()})
        return Subspace.span(self.n, vecs, self.field)

    # -- structural predicates --------------------------------------------

    def lower_central_series(self) -> list:
        """Dimensions of g = g^1 ⊇ g^2 = [g, g] ⊇ ... until it stabilizes."""
        one = self.field.one
        basis = [{i: one} for i in range(1, self.n + 1)]
        cur = Subspace.full(self.n, self.field)
        dims = [cur.dim]
        while True:
            vecs = [{k + 1: c for k, c in r.items()} for r in cur.rows]
            nxt = self.bracket_span(vecs, basis)
            if nxt.dim == cur.dim:
                return dims
            dims.append(nxt.dim)
            cur = nxt
            if nxt.dim == 0:
                return dims

    def derived_series(self) -> list:
        cur = Subspace.full(self.n, self.field)
        dims = [cur.dim]
        while True:
            vecs = [{k + 1: c for k, c in r.items()} for r in cur.rows]
            nxt = self.bracket_span(vecs, vecs)
            if nxt.dim == cur.dim:
                return dims
            dims.append(nxt.dim)
            cur = nxt
            if nxt.dim == 0:
                return dims

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1] == 0

    def nilpotency_step(self) -> int | None:
        lcs = self.lower_central_series()
        if lcs[-1] != 0:
            return None
        return len(lcs) - 1 if self.n else 0

    def is_solvable(self) -> bool:
        return self.derived_series()[-1] == 0

    def trace_ad(self, i: int) -> Scalar:
        t = self.field.zero
        for j in range(1, self.n + 1):
            t = t + self.bracket_coeffs(i, j).get(j, self.field.zero)
        return t

    def is_unimodular(self) -> bool:
        return all(not self.trace_ad(i) for i in range(1, self.n + 1))

    def d_vanishes_top_minus_one(self) -> bool:
        """Koszul's criterion: d = 0 on degree n-1."""
        return self.d.block(self.n - 1).is_zero()

    def is_completely_solvable(self) -> bool:
        if self.is_nilpotent():
            return True
        if not self.is_solvable() or self.field.gaussian:
            return False
        return _real_spectrum_certificate(self)

    def flags(self, pinned: dict | None = None) -> StructureFlags:
        nil = self.is_nilpotent()
        cs = self.is_completely_solvable()
        if pinned and "completely_solvable" in pinned:
            cs = pinned["completely_solvable"]
        return StructureFlags(
            nilpotent=nil,
            nilpotency_step=self.nilpotency_step(),
            solvable=self.is_solvable(),
            completely_solvable=cs,
            unimodular=self.is_unimodular(),
        )

    # -- change of frame --------------------------------------------------

    def substitute_coframe(self, images: list, name: str | None = None) -> "LieAlgebra":
        """Algebra in a new coframe f^j = sum_i P_ji e^i (images[j] = f^j as Form).

        The structure equations are recomputed by expressing d f^j in the new
        coframe; images must be linearly independent degree-1 forms.
        """
        n = self.n
        if len(images) != n:
            raise ValueError("need n new coframe elements")
        fld = images[0].field
        P = Matrix.from_sparse_rows([{m[0] - 1: c for m, c in f.terms.items()} for f in images], n, fld)
        Pinv = P.inverse()
        old_in_new = []
        for i in range(n):
            row = {j: Pinv.entry(i, j) for j in range(n) if Pinv.entry(i, j)}
            old_in_new.append(Form(n, {(j + 1,): c for j, c in row.items()}, fld))
        new = []
        for f in images:
            df = self.d_form(f.with_field(fld) if f.field != self.field else f)
            new.append(df.substitute(old_in_new))
        return LieAlgebra(name or self.name, new, fld, "real")

    # -- text forms -------------------------------------------------------

    def to_salamon(self) -> str:
        if self.presentation != "real":
            return self.to_coframe_text()
        entries = [_salamon_entry(s, self.n) for s in self.structure]
        out = []
        i = 0
        while i < len(entries):
            if entries[i] == "0":
                j = i
                while j < len(entries) and entries[j] == "0":
                    j += 1
                out.append("0" if j - i == 1 else f"0^{j - i}")
                i = j
            else:
                out.append(entries[i])
                i += 1
        return "(" + ",".join(out) + ")"

    def to_coframe_text(self) -> str:
        lines = [f"complex {self.crank}"]
        for j in range(self.crank):
            s = self.structure[j]
            lines.append(f"df{j + 1} = " + _coframe_sum(s, self.crank))
        return "\n".join(lines)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, {self.to_salamon() if self.presentation == 'real' else 'complex ' + str(self.crank)})"


def _real_spectrum_certificate(g: LieAlgebra) -> bool:
    """ad x has only real eigenvalues for every basis vector and pairwise sum."""
    import sympy

    lam = sympy.Symbol("lam")
    xs = [{i: QQ.one} for i in range(1, g.n + 1)]
    xs += [{i: QQ.one, j: QQ.one} for i in range(1, g.n + 1) for j in range(i + 1, g.n + 1)]
    for x in xs:
        m = g.ad(x)
        sm = sympy.Matrix(m.nrows, m.ncols,
                          lambda r, c: sympy.Rational(int(m.entry(r, c).re.numerator), int(m.entry(r, c).re.denominator)))
        poly = sympy.Poly(sm.charpoly(lam).as_expr(), lam)
        if len(sympy.real_roots(poly)) != poly.degree():
            return False
    return True


def _pair_text(m: tuple, n: int) -> str:
    return f"{m[0]}{m[1]}" if n <= 9 else f"{m[0]}.{m[1]}"


def _salamon_entry(s: Form, n: int) -> str:
    if not s.terms:
        return "0"
    parts = []
    for m, c in sorted(s.terms.items()):
        pt = _pair_text(m, n)
        if c == QQ.one or c == QQI.one:
            t = pt
        elif c == -QQ.one or c == -QQI.one:
            t = "-" + pt
        else:
            t = f"{c}*{pt}"
        parts.append(t)
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def _coframe_sum(s: Form, crank: int) -> str:
    if not s.terms:
        return "0"
    parts = []
    for m, c in sorted(s.terms.items()):
        units = "".join(f"f{i}" if i <= crank else f"F{i - crank}" for i in m)
        cs = str(c)
        if cs == "1":
            t = units
        elif cs == "-1":
            t = "-" + units
        elif c.re and c.im:
            t = f"({cs})*{units}"
        else:
            t = f"{cs}*{units}"
        parts.append(t)
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


# ---------------------------------------------------------------------------
# parsing

_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<unit>[fF]\d+)|(?P<ident>[^\W\d][\w\u0300-\u036f]*)"
    r"|(?P<op>[-+*/^().,=]))"
)


def _normalize_text(text: str) -> str:
    out = []
    for ch in text:
        if ch in "⁰¹²³⁴⁵⁶⁷⁸⁹":
            if not out or out[-1] != "^":
                out.append("^")
            out.append(ch.translate(_SUPERSCRIPTS))
        elif ch in "−–":
            out.append("-")
        else:
            out.append(ch)
    return "".join(out)


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, params: dict, field: Field, used: set):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.params = params
        self.field = field
        self.used = used

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        t = self.take()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2], self.text)
        return t

    def fail(self, msg: str):
        raise ParseError(msg, self.peek()[2], self.text)

    def param(self, name: str, pos: int) -> Scalar:
        if name not in self.params:
            raise ParseError(f"unbound parameter {name!r}", pos, self.text)
        self.used.add(name)
        v = self.params[name]
        if not isinstance(v, Scalar):
            v = Scalar.parse(str(v)) if isinstance(v, str) else self.field(v)
        if v.gaussian and not self.field.gaussian:
            if v.im:
                raise ParseError(f"parameter {name!r} must be rational here", pos, self.text)
            v = QQ(v.re)
        return self.field(v) if not v.gaussian == self.field.gaussian else v

    def rational(self) -> Scalar:
        t = self.take()
        if t[0] != "num":
            raise ParseError("expected a number", t[2], self.text)
        val = QQ(int(t[1]))
        if self.peek()[1] == "/" and self.peek(1)[0] == "num":
            self.take()
            den = int(self.take()[1])
            if den == 0:
                raise ParseError("zero denominator", t[2], self.text)
            val = val / den
        return val


def _salamon_pair(p: _Parser, n_hint: int | None):
    t = p.take()
    if t[0] != "num":
        raise ParseError("expected an index pair", t[2], p.text)
    if p.peek()[1] == "." and p.peek(1)[0] == "num":
        p.take()
        j = int(p.take()[1])
        i = int(t[1])
    else:
        if len(t[1]) != 2:
            raise ParseError(f"index pair {t[1]!r} must have two digits (use i.j for larger indices)", t[2], p.text)
        i, j = int(t[1][0]), int(t[1][1])
    if i >= j:
        raise ParseError(f"index pair {i}{j} must be increasing", t[2], p.text)
    return i, j, t[2]


def _salamon_entry_parse(p: _Parser) -> list:
    """signed-sum or 0 / 0^m; returns list of terms (coeff, i, j) or ('zeros', m)."""
    t = p.peek()
    if t[0] == "num" and t[1] == "0":
        p.take()
        if p.peek()[1] == "^":
            p.take()
            m = p.take()
            if m[0] != "num":
                raise ParseError("expected exponent after ^", m[2], p.text)
            return [("zeros", int(m[1]))]
        return [("zeros", 1)]
    terms = []
    first = True
    while True:
        sign = 1
        t = p.peek()
        if t[1] in "+-" and t[0] == "op":
            if t[1] == "+" and first:
                raise ParseError("unexpected '+'", t[2], p.text)
            p.take()
            sign = -1 if t[1] == "-" else 1
        elif not first:
            break
        first = False
        coeff = QQ.one if not p.field.gaussian else QQI.one
        t = p.peek()
        if t[0] == "ident":
            p.take()
            coeff = p.param(t[1], t[2])
            p.expect("*")
        elif t[0] == "num" and (p.peek(1)[1] == "*" or (p.peek(1)[1] == "/" and p.peek(3)[1] == "*")):
            coeff = p.field(p.rational())
            p.expect("*")
        i, j, pos = _salamon_pair(p, None)
        terms.append((coeff if sign > 0 else -coeff, i, j, pos))
        if p.peek()[1] not in "+-" or p.peek()[0] != "op":
            break
    return terms


def parse_salamon(text: str, params: dict | None = None, name: str = "g") -> LieAlgebra:
    """Parse '(0^4, 12, 13)'-style structure equations into a real LieAlgebra."""
    params = dict(params or {})
    used: set = set()
    p = _Parser(_normalize_text(text), params, QQ, used)
    p.expect("(")
    entries = []
    while True:
        entries.append(_salamon_entry_parse(p))
        t = p.take()
        if t[1] == ")":
            break
        if t[1] != ",":
            raise ParseError(f"expected ',' or ')', found {t[1]!r}", t[2], p.text)
    t = p.peek()
    if t[0] != "end":
        raise ParseError(f"trailing input {t[1]!r}", t[2], p.text)
    rows = []
    for e in entries:
        if e and e[0][0] == "zeros":
            rows.extend([[]] * e[0][1])
        else:
            rows.append(e)
    n = len(rows)
    structure = []
    for k, terms in enumerate(rows):
        f = Form.zero(n, QQ)
        for c, i, j, pos in terms:
            if j > n:
                raise ParseError(f"index {j} out of range for dimension {n}", pos, p.text)
            f = f + Form(n, {(i, j): c}, QQ)
        structure.append(f)
    return LieAlgebra(name, structure, QQ, "real", {k: params[k] for k in used})


def _gcoeff(p: _Parser) -> Scalar | None:
    """Optional coefficient followed by '*'; returns None if the term has none."""
    t = p.peek()
    if t[0] == "op" and t[1] == "(":
        p.take()
        val = _gauss_inner(p)
        p.expect(")")
        p.expect("*")
        return val
    if t[0] == "ident" and t[1] != "i":
        p.take()
        val = p.param(t[1], t[2])
        p.expect("*")
        return val
    if t[0] == "ident" and t[1] == "i":
        p.take()
        p.expect("*")
        return QQI.i
    if t[0] == "num":
        save = p.i
        val = _gauss_inner(p)
        if p.peek()[1] != "*":
            p.i = save
            p.fail("expected '*' after coefficient")
        p.take()
        return val
    return None


def _gauss_inner(p: _Parser) -> Scalar:
    """RAT | RAT 'i' | 'i' | RAT (+|-) RAT 'i' | RAT (+|-) 'i'."""
    t = p.peek()
    neg = False
    if t[1] == "-":
        p.take()
        neg = True
    t = p.peek()
    if t[0] == "ident" and t[1] == "i":
        p.take()
        v = QQI.i
        return -v if neg else v
    r = QQI(p.rational())
    if p.peek()[0] == "ident" and p.peek()[1] == "i":
        p.take()
        r = r * QQI.i
        return -r if neg else r
    if neg:
        r = -r
    t = p.peek()
    if t[1] in "+-" and t[0] == "op":
        nxt = p.peek(1)
        if nxt[0] == "ident" and nxt[1] == "i" and p.peek(2)[1] in ("*", ")"):
            p.take()
            p.take()
            im = QQI.i
            return r + im if t[1] == "+" else r - im
        if nxt[0] == "num":
            save = p.i
            p.take()
            im = p.rational()
            if p.peek()[0] == "ident" and p.peek()[1] == "i" and p.peek(1)[1] in ("*", ")"):
                p.take()
                im = QQI(im) * QQI.i
                return r + im if t[1] == "+" else r - im
            p.i = save
    return r


def _coframe_sum_parse(p: _Parser, crank: int) -> Form:
    n = 2 * crank
    out = Form.zero(n, QQI)
    t = p.peek()
    if t[0] == "num" and t[1] == "0" and p.peek(1)[0] in ("end",):
        p.take()
        return out
    first = True
    while True:
        t = p.peek()
        sign = 1
        if t[0] == "op" and t[1] in "+-":
            p.take()
            sign = -1 if t[1] == "-" else 1
        elif not first:
            break
        first = False
        coeff = _gcoeff(p)
        if coeff is None:
            coeff = QQI.one
        units = []
        while p.peek()[0] == "unit":
            u = p.take()
            k = int(u[1][1:])
            if k < 1 or k > crank:
                raise ParseError(f"unit {u[1]} out of range for complex rank {crank}", u[2], p.text)
            units.append(k if u[1][0] == "f" else k + crank)
        if len(units) != 2:
            p.fail("expected a product of two units such as f1F2")
        out = out + Form.basis(n, units, QQI, coeff if sign > 0 else -coeff)
        if p.peek()[0] == "end":
            break
    return out


def parse_complex_coframe(text: str, params: dict | None = None, name: str = "g") -> LieAlgebra:
    """Parse 'complex n' followed by lines 'df3 = -f1f2' into a coframe LieAlgebra."""
    params = dict(params or {})
    used: set = set()
    lines = [ln.split("#")[0].strip() for ln in _normalize_text(text).splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty input", 0, text)
    m = re.fullmatch(r"complex\s+(\d+)", lines[0])
    if not m:
        raise ParseError("expected header 'complex <rank>'", 0, lines[0])
    crank = int(m.group(1))
    eqs: dict = {}
    for ln in lines[1:]:
        m = re.fullmatch(r"d\s*(?:f|φ|phi)?\s*(\d+)\s*=\s*(.*)", ln)
        if not m:
            raise ParseError("expected a line 'df<k> = ...'", 0, ln)
        k = int(m.group(1))
        if not 1 <= k <= crank:
            raise ParseError(f"index {k} out of range for complex rank {crank}", 0, ln)
        if k in eqs:
            raise ParseError(f"d f{k} given twice", 0, ln)
        body = m.group(2)
        p = _Parser(body, params, QQI, used)
        if p.peek()[0] == "num" and p.peek()[1] == "0" and p.peek(1)[0] == "end":
            eqs[k] = Form.zero(2 * crank, QQI)
            continue
        f = _coframe_sum_parse(p, crank)
        if p.peek()[0] != "end":
            t = p.peek()
            raise ParseError(f"trailing input {t[1]!r}", m.start(2) + t[2], ln)
        eqs[k] = f
    structure = [eqs.get(k, Form.zero(2 * crank, QQI)) for k in range(1, crank + 1)]
    return LieAlgebra(name, structure, QQI, "complex", {k: params[k] for k in used})


def parse_algebra(text: str, params: dict | None = None, name: str = "g") -> LieAlgebra:
    t = text.strip()
    if t.startswith("complex"):
        return parse_complex_coframe(t, params, name)
    return parse_salamon(t, params, name)


def torus(n: int) -> LieAlgebra:
    """Abelian algebra of real dimension 2n."""
    return LieAlgebra(f"torus{n}", [Form.zero(2 * n, QQ) for _ in range(2 * n)], QQ, "real")


def ce_differential(g: LieAlgebra) -> GradedOperator:
    return g.d


def structure_flags(g: LieAlgebra, pinned: dict | None = None) -> StructureFlags:
    return g.flags(pinned)
