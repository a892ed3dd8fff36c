"""Exterior algebra over a fixed dual basis e^1..e^n.

Monomials are strictly increasing index tuples (1-based) ordered
lexicographically inside each degree; that order fixes the coordinates of
every degree slice and therefore of every operator matrix.

Interior products follow one convention everywhere: ι_x is the degree -1
antiderivation with ι_{e_i} e^j = δ_ij, and on a bivector
ι_{x∧y} := ι_y ∘ ι_x, so that ι_{e_1∧e_2} e^{12} = 1.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

from .linalg import Field, Matrix, QQ, QQI, Scalar, Subspace, FieldMismatch, rref, vec_conj


@lru_cache(maxsize=None)
def monomials(n: int, k: int) -> tuple:
    if k < 0 or k > n:
        return ()
    return tuple(combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def monomial_index(n: int, k: int) -> dict:
    return {m: i for i, m in enumerate(monomials(n, k))}


def slice_dim(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


@lru_cache(maxsize=1 << 16)
def merge_sign(a: tuple, b: tuple):
    """(sign, merged) for e^a ∧ e^b, or (0, None) if they share an index."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    sa = set(a)
    for x in b:
        if x in sa:
            return 0, None
    inv = 0
    for x in b:
        for y in a:
            if y > x:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(a + b))


@lru_cache(maxsize=None)
def sort_sign(idx: tuple):
    """(sign, sorted tuple) of a permutation of distinct indices, or (0, None)."""
    if len(set(idx)) != len(idx):
        return 0, None
    lst = list(idx)
    sign = 1
    for i in range(len(lst)):
        for j in range(len(lst) - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return sign, tuple(lst)


class Form:
    """Sparse element of Λ(V*) with exact coefficients.

    terms maps monomial tuples to nonzero Scalars; the form need not be
    homogeneous.  Forms are treated as immutable.
    """

    __slots__ = ("n", "terms", "field")

    def __init__(self, n: int, terms: dict | None = None, field: Field = QQ):
        self.n = n
        self.field = field
        t = {}
        if terms:
            for m, c in terms.items():
                c = field(c)
                if c:
                    if m and (m[-1] > n or m[0] < 1):
                        raise ValueError(f"monomial {m} outside dimension {n}")
                    t[m] = c
        self.terms = t

    @classmethod
    def _raw(cls, n: int, terms: dict, field: Field) -> "Form":
        f = cls.__new__(cls)
        f.n = n
        f.field = field
        f.terms = terms
        return f

    @classmethod
    def zero(cls, n: int, field: Field = QQ) -> "Form":
        return cls._raw(n, {}, field)

    @classmethod
    def one(cls, n: int, field: Field = QQ) -> "Form":
        return cls._raw(n, {(): field.one}, field)

    @classmethod
    def basis(cls, n: int, idx, field: Field = QQ, coeff=1) -> "Form":
        """coeff * e^{i1} ∧ e^{i2} ∧ ... for an arbitrary index sequence."""
        idx = tuple(idx)
        s, m = sort_sign(idx)
        if s == 0:
            return cls.zero(n, field)
        return cls(n, {m: field(coeff) * s}, field)

    @classmethod
    def from_vector(cls, n: int, k: int, vec: dict, field: Field) -> "Form":
        mons = monomials(n, k)
        return cls._raw(n, {mons[i]: v for i, v in vec.items() if v}, field)

    def to_vector(self, k: int) -> dict:
        idx = monomial_index(self.n, k)
        return {idx[m]: c for m, c in self.terms.items() if len(m) == k}

    def degrees(self) -> set:
        return {len(m) for m in self.terms}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("form is not homogeneous")
        return ds.pop() if ds else 0

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def part(self, k: int) -> "Form":
        return Form._raw(self.n, {m: c for m, c in self.terms.items() if len(m) == k}, self.field)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _compat(self, other: "Form"):
        if self.n != other.n:
            raise ValueError(f"ambient mismatch {self.n} != {other.n}")
        if self.field != other.field:
            raise FieldMismatch("forms over different fields")

    def __add__(self, other: "Form") -> "Form":
        self._compat(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t[m] + c if m in t else c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Form._raw(self.n, t, self.field)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form._raw(self.n, {m: -c for m, c in self.terms.items()}, self.field)

    def scale(self, s) -> "Form":
        s = self.field(s)
        if not s:
            return Form.zero(self.n, self.field)
        return Form._raw(self.n, {m: s * c for m, c in self.terms.items()}, self.field)

    def __mul__(self, s):
        if isinstance(s, Form):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def wedge(self, other: "Form") -> "Form":
        self._compat(other)
        t: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s, m = merge_sign(a, b)
                if s == 0:
                    continue
                v = ca * cb
                if s < 0:
                    v = -v
                if m in t:
                    v = t[m] + v
                    if v:
                        t[m] = v
                    else:
                        del t[m]
                else:
                    t[m] = v
        return Form._raw(self.n, t, self.field)

    def __xor__(self, other: "Form") -> "Form":
        return self.wedge(other)

    def power(self, k: int) -> "Form":
        r = Form.one(self.n, self.field)
        for _ in range(k):
            r = r.wedge(self)
        return r

    def interior_vec(self, i: int) -> "Form":
        """ι_{e_i} as a degree -1 antiderivation."""
        t: dict = {}
        for m, c in self.terms.items():
            if i in m:
                p = m.index(i)
                key = m[:p] + m[p + 1:]
                v = c if p % 2 == 0 else -c
                if key in t:
                    v = t[key] + v
                    if v:
                        t[key] = v
                    else:
                        del t[key]
                else:
                    t[key] = v
        return Form._raw(self.n, t, self.field)

    def conj_coeffs(self) -> "Form":
        return Form._raw(self.n, {m: c.conj() for m, c in self.terms.items()}, self.field)

    def substitute(self, images: list) -> "Form":
        """Algebra map sending e^j to images[j-1] (degree-1 forms, possibly in another dimension)."""
        if len(images) != self.n:
            raise ValueError("need one image per generator")
        n2 = images[0].n
        fld = images[0].field
        out = Form.zero(n2, fld)
        for m, c in self.terms.items():
            piece = Form.one(n2, fld).scale(fld(c))
            for j in m:
                piece = piece.wedge(images[j - 1])
                if not piece:
                    break
            out = out + piece
        return out

    def with_field(self, field: Field) -> "Form":
        return Form(self.n, {m: field(c) for m, c in self.terms.items()}, field)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms))))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"Form({format_form(self)})"


def e(n: int, *idx, field: Field = QQ, coeff=1) -> Form:
    """Shorthand: e(6, 1, 2) is e^{12} in dimension 6."""
    return Form.basis(n, idx, field, coeff)


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def interior(bivector: Form, a: Form) -> Form:
    """ι_ξ a for a bivector ξ = Σ ξ^{ij} e_i∧e_j given in the frame basis."""
    if bivector.n != a.n:
        raise ValueError("ambient mismatch")
    out = Form.zero(a.n, a.field)
    for m, c in bivector.terms.items():
        if len(m) != 2:
            raise ValueError("interior expects a bivector")
        i, j = m
        out = out + a.interior_vec(i).interior_vec(j).scale(a.field(c))
    return out


def _label(i: int, n: int, style: str, crank: int) -> str:
    if style == "complex":
        return f"f{i}" if i <= crank else f"F{i - crank}"
    return str(i)


def format_monomial(m: tuple, n: int, style: str = "real", crank: int = 0) -> str:
    if not m:
        return "1"
    if style == "complex":
        return "".join(_label(i, n, style, crank) for i in m)
    sep = "" if n <= 9 else "."
    return "e" + sep.join(str(i) for i in m)


def format_form(f: Form, style: str = "real", crank: int = 0) -> str:
    if not f.terms:
        return "0"
    parts = []
    for m, c in f.sorted_terms():
        mon = format_monomial(m, f.n, style, crank)
        cs = str(c)
        if c.im and c.re:
            cs = "(" + cs + ")"
        if mon == "1":
            body = cs
        elif cs == "1":
            body = mon
        elif cs == "-1":
            body = "-" + mon
        else:
            body = cs + "*" + mon
        parts.append(body)
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def check_pairing(pairing: dict, n: int):
    for i in range(1, n + 1):
        j = pairing.get(i, i)
        if pairing.get(j, j) != i:
            raise ValueError("conjugation pairing is not an involution")


def conjugate_form(a: Form, pairing: dict) -> Form:
    """Swap paired indices, conjugate coefficients and restore canonical order."""
    check_pairing(pairing, a.n)
    t: dict = {}
    for m, c in a.terms.items():
        s, key = sort_sign(tuple(pairing.get(i, i) for i in m))
        v = c.conj() if s > 0 else -c.conj()
        if key in t:
            v = t[key] + v
            if v:
                t[key] = v
            else:
                del t[key]
        else:
            t[key] = v
    return Form._raw(a.n, t, a.field)


def complex_pairing(crank: int) -> dict:
    p = {}
    for j in range(1, crank + 1):
        p[j] = j + crank
        p[j + crank] = j
    return p


@lru_cache(maxsize=None)
def _conj_perm(n: int, k: int, pairing_items: tuple):
    pairing = dict(pairing_items)
    idx = monomial_index(n, k)
    perm = []
    for m in monomials(n, k):
        s, key = sort_sign(tuple(pairing.get(i, i) for i in m))
        perm.append((idx[key], s))
    return tuple(perm)


def conj_vector(vec: dict, n: int, k: int, pairing: dict) -> dict:
    """Conjugation on coordinates of the degree-k slice."""
    perm = _conj_perm(n, k, tuple(sorted(pairing.items())))
    out = {}
    for i, c in vec.items():
        j, s = perm[i]
        out[j] = c.conj() if s > 0 else -c.conj()
    return out


def conj_matrix(n: int, k: int, pairing: dict, field: Field = QQI) -> Matrix:
    """Signed permutation part of conjugation (coefficients still need conj)."""
    perm = _conj_perm(n, k, tuple(sorted(pairing.items())))
    cols = [{j: field(s)} for j, s in perm]
    return Matrix(len(perm), len(perm), cols, field)


class RealPoints:
    """Q-basis of the conjugation-fixed points of a Q(i)-subspace.

    basis: gaussian vectors fixed by conjugation, linearly independent over Q;
    their number equals the complex dimension of the space.
    """

    def __init__(self, space: Subspace, basis: list, n: int, k: int, pairing: dict):
        self.space = space
        self.basis = basis
        self.n = n
        self.k = k
        self.pairing = pairing

    @property
    def dim(self) -> int:
        return len(self.basis)

    def embed(self, coords: dict) -> dict:
        """Gaussian vector for rational coordinates on the real basis."""
        out: dict = {}
        for a, x in coords.items():
            for j, v in self.basis[a].items():
                w = v * QQI(x)
                out[j] = out[j] + w if j in out else w
        return {j: v for j, v in out.items() if v}

    def coordinates(self, vec: dict) -> list | None:
        """Rational coordinates of a real gaussian vector, None if outside."""
        m = slice_dim(self.n, self.k)
        rows = [_split(b, m) for b in self.basis]
        target = _split(vec, m)
        mat = Matrix.from_sparse_rows(rows, 2 * m, QQ).transpose()
        x = mat.solve(target)
        if x is None:
            return None
        check = {}
        for a, c in x.items():
            for j, v in rows[a].items():
                check[j] = check.get(j, QQ.zero) + c * v
        if {j: v for j, v in check.items() if v} != target:
            return None
        return [x.get(a, QQ.zero) for a in range(len(self.basis))]


def _split(vec: dict, m: int) -> dict:
    out = {}
    for j, v in vec.items():
        if v.re:
            out[j] = QQ(v.re)
        if v.im:
            out[m + j] = QQ(v.im)
    return out


def realify(space: Subspace, n: int, k: int, pairing: dict) -> RealPoints:
    """Real points of a conjugation-stable subspace of the degree-k slice."""
    if not space.field.gaussian:
        raise FieldMismatch("realify expects a gaussian subspace")
    check_pairing(pairing, n)
    m = slice_dim(n, k)
    if space.ambient != m:
        raise ValueError("subspace is not in the degree-k slice")
    cands = []
    i = QQI.i
    for w in space.rows:
        cw = conj_vector(w, n, k, pairing)
        if not space.contains(cw):
            raise ValueError("space is not conjugation-stable")
        s = {j: v for j, v in _vadd(w, cw).items() if v}
        d = {j: v * i for j, v in _vadd(w, {a: -b for a, b in cw.items()}).items() if v}
        cands.extend([s, d])
    rows, _ = rref([_split(c, m) for c in cands if c], False)
    basis = []
    for r in rows:
        g = {}
        for j, v in r.items():
            if j < m:
                g[j] = g.get(j, QQI.zero) + QQI(v.re)
            else:
                g[j - m] = g.get(j - m, QQI.zero) + QQI(0, v.re)
        basis.append({j: v for j, v in g.items() if v})
    if len(basis) != space.dim:
        raise ValueError("real points have the wrong dimension")
    return RealPoints(space, basis, n, k, pairing)


def _vadd(a: dict, b: dict) -> dict:
    out = dict(a)
    for j, v in b.items():
        out[j] = out[j] + v if j in out else v
    return out


class GradedOperator:
    """Homogeneous operator on Λ(V*) given by one matrix per source degree.

    blocks[k] maps the degree-k slice to the degree-(k+shift) slice.  Missing
    blocks are zero.
    """

    def __init__(self, n: int, shift: int, blocks: dict, field: Field):
        self.n = n
        self.shift = shift
        self.field = field
        for k, b in blocks.items():
            if b.shape != (slice_dim(n, k + shift), slice_dim(n, k)):
                raise ValueError(f"block {k} has shape {b.shape}")
        self.blocks = blocks

    @classmethod
    def from_form_map(cls, n: int, shift: int, fn, field: Field, degrees=None) -> "GradedOperator":
        blocks = {}
        for k in (range(n + 1) if degrees is None else degrees):
            tk = k + shift
            if tk < 0 or tk > n:
                continue
            cols = []
            for m in monomials(n, k):
                img = fn(Form._raw(n, {m: field.one}, field))
                cols.append(img.to_vector(tk))
            blocks[k] = Matrix(slice_dim(n, tk), slice_dim(n, k), cols, field)
        return cls(n, shift, blocks, field)

    @classmethod
    def scalar_per_degree(cls, n: int, values, field: Field) -> "GradedOperator":
        blocks = {}
        for k in range(n + 1):
            c = field(values(k))
            d = slice_dim(n, k)
            blocks[k] = Matrix(d, d, [{j: c} if c else {} for j in range(d)], field)
        return cls(n, 0, blocks, field)

    @classmethod
    def identity(cls, n: int, field: Field) -> "GradedOperator":
        return cls.scalar_per_degree(n, lambda k: 1, field)

    def block(self, k: int) -> Matrix:
        b = self.blocks.get(k)
        if b is None:
            return Matrix.zero(slice_dim(self.n, k + self.shift), slice_dim(self.n, k), self.field)
        return b

    def degrees(self):
        return [k for k in range(self.n + 1) if 0 <= k + self.shift <= self.n]

    def apply(self, f: Form) -> Form:
        out = Form.zero(self.n, self.field)
        for k in f.degrees():
            if not 0 <= k + self.shift <= self.n:
                continue
            v = self.block(k).apply(f.to_vector(k))
            out = out + Form.from_vector(self.n, k + self.shift, v, self.field)
        return out

    def __call__(self, f: Form) -> Form:
        return self.apply(f)

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        blocks = {}
        for k in other.degrees():
            mid = k + other.shift
            if not 0 <= mid + self.shift <= self.n:
                continue
            blocks[k] = self.block(mid) @ other.block(k)
        return GradedOperator(self.n, self.shift + other.shift, blocks, self.field)

    def _combine(self, other: "GradedOperator", sign: int) -> "GradedOperator":
        if self.shift != other.shift:
            raise ValueError("cannot add operators of different degree")
        blocks = {}
        for k in self.degrees():
            a, b = self.block(k), other.block(k)
            blocks[k] = a + b if sign > 0 else a - b
        return GradedOperator(self.n, self.shift, blocks, self.field)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "GradedOperator":
        return GradedOperator(self.n, self.shift,
                              {k: b.scale(s) for k, b in self.blocks.items()}, self.field)

    def H(self) -> "GradedOperator":
        """Adjoint for the inner product making the monomial basis orthonormal."""
        blocks = {}
        for k in self.degrees():
            blocks[k + self.shift] = self.block(k).H()
        return GradedOperator(self.n, -self.shift, blocks, self.field)

    def per_degree_scaled(self, fn) -> "GradedOperator":
        """Multiply the degree-k block by fn(k)."""
        return GradedOperator(self.n, self.shift,
                              {k: b.scale(fn(k)) for k, b in self.blocks.items()}, self.field)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def __eq__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.shift != other.shift:
            return self.is_zero() and other.is_zero()
        return all(self.block(k) == other.block(k) for k in self.degrees())

    def __repr__(self):
        return f"GradedOperator(n={self.n}, shift={self.shift})"


def commutator(a: GradedOperator, b: GradedOperator, graded: bool = False) -> GradedOperator:
    """[a, b] = ab - (-1)^{|a||b|} ba when graded, else ab - ba."""
    sign = -1
    if graded and (a.shift * b.shift) % 2:
        sign = 1
    ab = a @ b
    ba = b @ a
    return ab + ba if sign > 0 else ab - ba


def wedge_operator(n: int, f: Form) -> GradedOperator:
    """Left multiplication by a homogeneous form."""
    return GradedOperator.from_form_map(n, f.degree(), lambda x: f.wedge(x), f.field)


def pairing_matrix(n: int, k: int, field: Field) -> Matrix:
    """Wedge pairing Λ^k × Λ^{n-k} → Λ^n as a C(n,k) x C(n,n-k) matrix."""
    rows = []
    idx = monomial_index(n, n - k)
    full = tuple(range(1, n + 1))
    for a in monomials(n, k):
        comp = tuple(i for i in full if i not in a)
        s, _ = merge_sign(a, comp)
        rows.append({idx[comp]: field(s)})
    return Matrix.from_sparse_rows(rows, slice_dim(n, n - k), field)
