"""Exact scalars over Q and Q(i), sparse matrices and subspaces.

Every vector space in the package is a slice of some exterior power with a
fixed monomial basis, so vectors are sparse dicts {index: Scalar} and
subspaces are stored as row spaces in reduced row-echelon form.  Two
subspaces are equal exactly when their echelon bases are equal.

Elimination is fraction-free: rows are scaled to (Gaussian) integers, combined
with integer multipliers and divided by their content after each step, and
only at the very end normalized to pivot 1 over the rationals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from gmpy2 import mpq, mpz, gcd, lcm


class FieldMismatch(ValueError):
    pass


class Scalar:
    """a + b i with a, b exact rationals.

    The `gaussian` flag is the field tag: real scalars live in Q, gaussian
    ones in Q(i).  Binary operations between Scalars with different tags raise
    FieldMismatch; plain ints and rationals adopt the tag of the Scalar.
    """

    __slots__ = ("re", "im", "gaussian")

    def __init__(self, re=0, im=0, gaussian: bool | None = None):
        self.re = re if type(re) is type(_Q0) else mpq(re)
        self.im = im if type(im) is type(_Q0) else mpq(im)
        if gaussian is None:
            gaussian = bool(self.im)
        elif not gaussian and self.im:
            raise FieldMismatch("nonzero imaginary part in a real scalar")
        self.gaussian = gaussian

    # construction helpers
    @classmethod
    def parse(cls, text: str, gaussian: bool | None = None) -> "Scalar":
        re_, im_ = parse_gauss(text)
        if gaussian is None:
            gaussian = im_ != 0
        return cls(re_, im_, gaussian)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.gaussian != self.gaussian:
                raise FieldMismatch("cannot mix real and gaussian scalars")
            return other
        if isinstance(other, (int, Fraction)) or type(other) in (type(_Q0), type(mpz(0))):
            return Scalar(mpq(other), _Q0, self.gaussian)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im, self.gaussian)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im, self.gaussian)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(o.re - self.re, o.im - self.im, self.gaussian)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return Scalar(a * c, _Q0, self.gaussian)
        return Scalar(a * c - b * d, a * d + b * c, self.gaussian)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.re / n, -self.im / n, self.gaussian)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return Scalar(-self.re, -self.im, self.gaussian)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        r = Scalar(1, 0, self.gaussian)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            r = r * base
        return r

    def conj(self) -> "Scalar":
        if not self.im:
            return self
        return Scalar(self.re, -self.im, self.gaussian)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) or type(other) in (type(_Q0), type(mpz(0))):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((int(self.re.numerator), int(self.re.denominator),
                     int(self.im.numerator), int(self.im.denominator)))

    def __str__(self):
        return format_gauss(self.re, self.im)

    def __repr__(self):
        return f"Scalar({self})"


_Q0 = mpq(0)


def _fmt_q(x) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_gauss(re_, im_) -> str:
    """Canonical string form: "a/b" or "a/b+c/di" (a omitted when zero)."""
    if not im_:
        return _fmt_q(re_)
    if im_ == 1:
        ims = "i"
    elif im_ == -1:
        ims = "-i"
    else:
        ims = _fmt_q(im_) + "i"
    if not re_:
        return ims
    if ims.startswith("-"):
        return _fmt_q(re_) + ims
    return _fmt_q(re_) + "+" + ims


_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _rat(t: str):
    if not _RAT_RE.match(t):
        raise ValueError(f"bad rational literal {t!r}")
    if t.startswith("+"):
        t = t[1:]
    return mpq(t)


def parse_gauss(text: str):
    """Parse "3", "-1/2", "i", "-2i", "1/2+3/4i", "1-i" into (re, im) rationals."""
    t = text.replace(" ", "")
    if not t:
        raise ValueError("empty scalar literal")
    if not t.endswith("i"):
        return _rat(t), mpq(0)
    body = t[:-1]
    k = max(body.rfind("+"), body.rfind("-"))
    if k > 0:
        re_s, im_s = body[:k], body[k:]
    else:
        re_s, im_s = "", body
    if im_s in ("", "+", "-"):
        im_ = mpq(-1) if im_s == "-" else mpq(1)
    else:
        im_ = _rat(im_s)
    re_ = _rat(re_s) if re_s else mpq(0)
    return re_, im_


class Field:
    """Field tag with constructors; QQ and QQI are the only instances."""

    def __init__(self, gaussian: bool):
        self.gaussian = gaussian
        self.zero = Scalar(0, 0, gaussian)
        self.one = Scalar(1, 0, gaussian)

    @property
    def name(self) -> str:
        return "qi" if self.gaussian else "q"

    @property
    def i(self) -> Scalar:
        if not self.gaussian:
            raise FieldMismatch("no imaginary unit in the real field")
        return Scalar(0, 1, True)

    def __call__(self, re=0, im=0) -> Scalar:
        if isinstance(re, Scalar):
            if re.gaussian == self.gaussian:
                return re
            if not self.gaussian and re.im:
                raise FieldMismatch("gaussian scalar in a real computation")
            return Scalar(re.re, re.im, self.gaussian)
        if isinstance(re, str):
            a, b = parse_gauss(re)
            return Scalar(a, b, self.gaussian)
        return Scalar(re, im, self.gaussian)

    def __eq__(self, other):
        return isinstance(other, Field) and other.gaussian == self.gaussian

    def __hash__(self):
        return hash(self.gaussian)

    def __repr__(self):
        return "QQI" if self.gaussian else "QQ"


QQ = Field(False)
QQI = Field(True)


def field_of(gaussian: bool) -> Field:
    return QQI if gaussian else QQ


def conj(s: Scalar) -> Scalar:
    return s.conj()


# ---------------------------------------------------------------------------
# fraction-free elimination on integer rows
#
# real rows:     {col: mpz}
# gaussian rows: {col: (mpz, mpz)}


def _to_int_row(vec: dict, gaussian: bool) -> dict:
    den = mpz(1)
    for v in vec.values():
        den = lcm(den, v.re.denominator)
        if gaussian:
            den = lcm(den, v.im.denominator)
    out = {}
    if gaussian:
        for k, v in vec.items():
            if v.re or v.im:
                out[k] = ((v.re * den).numerator, (v.im * den).numerator)
    else:
        for k, v in vec.items():
            if v.re:
                out[k] = (v.re * den).numerator
    return out


def _prim_real(row: dict) -> dict:
    g = mpz(0)
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g == 0 or g == 1:
        return row
    return {k: v // g for k, v in row.items()}


def _gdivround(a, b):
    """Nearest Gaussian-integer quotient a / b."""
    ar, ai = a
    br, bi = b
    n = br * br + bi * bi
    xr = ar * br + ai * bi
    xi = ai * br - ar * bi
    return ((2 * xr + n) // (2 * n), (2 * xi + n) // (2 * n))


def _ggcd(a, b):
    while b[0] or b[1]:
        q = _gdivround(a, b)
        r = (a[0] - (q[0] * b[0] - q[1] * b[1]), a[1] - (q[0] * b[1] + q[1] * b[0]))
        a, b = b, r
    return a


def _prim_gauss(row: dict) -> dict:
    """Divide by the Gaussian-integer content of the row."""
    g = (mpz(0), mpz(0))
    for v in row.values():
        g = _ggcd(v, g) if (g[0] or g[1]) else v
        if g[0] * g[0] + g[1] * g[1] == 1:
            return row
    if not (g[0] or g[1]):
        return row
    n = g[0] * g[0] + g[1] * g[1]
    out = {}
    for k, (x, y) in row.items():
        # (x + iy) * conj(g) / n is exact
        out[k] = ((x * g[0] + y * g[1]) // n, (y * g[0] - x * g[1]) // n)
    return out


def _comb_real(a, r: dict, b, p: dict) -> dict:
    """a*r - b*p with integers a, b."""
    out = {k: a * v for k, v in r.items()} if a != 1 else dict(r)
    for k, v in p.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return _prim_real(out)


def _comb_gauss(a, r: dict, b, p: dict) -> dict:
    """a*r - b*p with Gaussian integers a, b given as pairs."""
    ar, ai = a
    br, bi = b
    if ai == 0 and ar == 1:
        out = dict(r)
    elif ai == 0:
        out = {k: (ar * x, ar * y) for k, (x, y) in r.items()}
    else:
        out = {k: (ar * x - ai * y, ar * y + ai * x) for k, (x, y) in r.items()}
    for k, (x, y) in p.items():
        cx = br * x - bi * y
        cy = br * y + bi * x
        ox, oy = out.get(k, (0, 0))
        nx, ny = ox - cx, oy - cy
        if nx or ny:
            out[k] = (nx, ny)
        else:
            out.pop(k, None)
    return _prim_gauss(out)


def _echelon_int(rows: Iterable[dict], gaussian: bool) -> dict:
    """Return {pivot_col: integer row} for the row space, fully reduced.

    Forward pass inserts rows one at a time against the current pivots;
    the backward pass clears every pivot column from the other rows.
    """
    comb = _comb_gauss if gaussian else _comb_real
    prim = _prim_gauss if gaussian else _prim_real
    piv: dict = {}
    for r in rows:
        r = prim(r)
        while r:
            c = min(r)
            p = piv.get(c)
            if p is None:
                piv[c] = r
                break
            r = comb(p[c], r, r[c], p)
    cols = sorted(piv)
    pivset = set(cols)
    for c in reversed(cols):
        r = piv[c]
        hits = [k for k in r if k != c and k in pivset]
        for k in hits:
            if k in r:
                p = piv[k]
                r = comb(p[k], r, r[k], p)
        piv[c] = r
    return piv


def _normalize(piv: dict, gaussian: bool) -> tuple:
    rows = []
    pivots = sorted(piv)
    if gaussian:
        for c in pivots:
            r = piv[c]
            a, b = r[c]
            n = a * a + b * b
            # multiply by conj(pivot)/|pivot|^2
            out = {}
            for k, (x, y) in r.items():
                out[k] = Scalar(mpq(x * a + y * b, n), mpq(y * a - x * b, n), True)
            rows.append(out)
    else:
        for c in pivots:
            r = piv[c]
            d = r[c]
            rows.append({k: Scalar(mpq(v, d), _Q0, False) for k, v in r.items()})
    return tuple(rows), tuple(pivots)


def rref(vectors: Iterable[dict], gaussian: bool) -> tuple:
    """Reduced row-echelon basis (rows, pivots) of the span of sparse vectors."""
    ints = (_to_int_row(v, gaussian) for v in vectors)
    return _normalize(_echelon_int((r for r in ints if r), gaussian), gaussian)


def _rank_int(vectors: Iterable[dict], gaussian: bool) -> int:
    comb = _comb_gauss if gaussian else _comb_real
    prim = _prim_gauss if gaussian else _prim_real
    piv: dict = {}
    for v in vectors:
        r = prim(_to_int_row(v, gaussian))
        while r:
            c = min(r)
            p = piv.get(c)
            if p is None:
                piv[c] = r
                break
            r = comb(p[c], r, r[c], p)
    return len(piv)


# ---------------------------------------------------------------------------
# sparse vectors


def vec_add(a: dict, b: dict, scale=None) -> dict:
    """a + scale*b (scale defaults to 1)."""
    out = dict(a)
    for k, v in b.items():
        w = v if scale is None else scale * v
        nv = out[k] + w if k in out else w
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def vec_scale(a: dict, s) -> dict:
    if not s:
        return {}
    return {k: s * v for k, v in a.items()}


def vec_conj(a: dict) -> dict:
    return {k: v.conj() for k, v in a.items()}


def dense_to_sparse(values, field: Field) -> dict:
    out = {}
    for k, v in enumerate(values):
        s = field(v)
        if s:
            out[k] = s
    return out


def sparse_to_dense(vec: dict, n: int, field: Field) -> list:
    out = [field.zero] * n
    for k, v in vec.items():
        out[k] = v
    return out


def _check_field(vec: dict, gaussian: bool):
    for v in vec.values():
        if v.gaussian != gaussian:
            raise FieldMismatch("vector entry has the wrong field tag")


# ---------------------------------------------------------------------------
# matrices, stored by columns


class Matrix:
    """Sparse matrix over QQ or QQI, stored as a list of column dicts.

    Column j is the image of the j-th basis vector, which is how every
    operator in the package is naturally built.
    """

    __slots__ = ("nrows", "ncols", "cols", "field")

    def __init__(self, nrows: int, ncols: int, cols: list | None = None, field: Field = QQ):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if cols is None:
            cols = [{} for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.cols = cols

    @classmethod
    def from_rows(cls, rows, field: Field = QQ, ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        cols = [{} for _ in range(nc)]
        for i, r in enumerate(rows):
            if len(r) != nc:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                s = field(v)
                if s:
                    cols[j][i] = s
        return cls(nr, nc, cols, field)

    @classmethod
    def from_sparse_rows(cls, rows: list, ncols: int, field: Field) -> "Matrix":
        cols = [{} for _ in range(ncols)]
        for i, r in enumerate(rows):
            for j, v in r.items():
                cols[j][i] = v
        return cls(len(rows), ncols, cols, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls(n, n, [{j: field.one} for j in range(n)], field)

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        return cls(nrows, ncols, None, field)

    def entry(self, i: int, j: int) -> Scalar:
        return self.cols[j].get(i, self.field.zero)

    def rows(self) -> list:
        out = [{} for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def to_lists(self) -> list:
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, x in vec.items():
            for i, v in self.cols[j].items():
                w = v * x
                if i in out:
                    w = out[i] + w
                    if w:
                        out[i] = w
                    else:
                        del out[i]
                elif w:
                    out[i] = w
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.field != other.field:
            raise FieldMismatch("matrix fields differ")
        return Matrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols], self.field)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        if self.field != other.field:
            raise FieldMismatch("matrix fields differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.nrows, self.ncols,
                      [vec_add(a, b) for a, b in zip(self.cols, other.cols)], self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        m1 = self.field(-1)
        return Matrix(self.nrows, self.ncols,
                      [vec_add(a, b, m1) for a, b in zip(self.cols, other.cols)], self.field)

    def __neg__(self) -> "Matrix":
        return self.scale(self.field(-1))

    def scale(self, s) -> "Matrix":
        s = self.field(s)
        return Matrix(self.nrows, self.ncols, [vec_scale(c, s) for c in self.cols], self.field)

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.rows(), self.field)

    def conj(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [vec_conj(c) for c in self.cols], self.field)

    def H(self) -> "Matrix":
        """Conjugate transpose."""
        return Matrix(self.ncols, self.nrows, [vec_conj(r) for r in self.rows()], self.field)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.field!r})"

    def rank(self) -> int:
        if self.ncols <= self.nrows:
            return _rank_int(self.cols, self.field.gaussian)
        return _rank_int(self.rows(), self.field.gaussian)

    def kernel(self) -> "Subspace":
        return kernel(self)

    def image(self) -> "Subspace":
        return Subspace.span(self.nrows, self.cols, self.field)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.ncols
        aug = []
        one = self.field.one
        for i, r in enumerate(self.rows()):
            row = dict(r)
            row[n + i] = one
            aug.append(row)
        rows, pivots = rref(aug, self.field.gaussian)
        if len(pivots) < n or pivots[n - 1] >= n:
            raise ZeroDivisionError("singular matrix")
        inv_rows = [{k - n: v for k, v in r.items() if k >= n} for r in rows]
        return Matrix.from_sparse_rows(inv_rows, n, self.field)

    def solve(self, rhs: dict) -> dict | None:
        """Some x with self·x = rhs (None if inconsistent); minimal support on pivots."""
        n = self.ncols
        aug = []
        for i, r in enumerate(self.rows()):
            row = dict(r)
            if i in rhs:
                row[n] = rhs[i]
            aug.append(row)
        rows, pivots = rref(aug, self.field.gaussian)
        if pivots and pivots[-1] == n:
            return None
        x = {}
        for r, p in zip(rows, pivots):
            if n in r:
                x[p] = r[n]
        return x

    def det(self) -> Scalar:
        if self.nrows != self.ncols:
            raise ValueError("det of a non-square matrix")
        a = self.to_lists()
        n = self.nrows
        d = self.field.one
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return self.field.zero
            if p != c:
                a[c], a[p] = a[p], a[c]
                d = -d
            d = d * a[c][c]
            inv = a[c][c].inverse()
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return d


def rank(m: Matrix) -> int:
    return m.rank()


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Row space in canonical reduced echelon form inside field^ambient."""

    __slots__ = ("ambient", "rows", "pivots", "field")

    def __init__(self, ambient: int, rows: tuple, pivots: tuple, field: Field):
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots
        self.field = field

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[dict], field: Field) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            _check_field(v, field.gaussian)
            if v and max(v) >= ambient:
                raise ValueError("vector index outside the ambient space")
        rows, piv = rref(vectors, field.gaussian)
        return cls(ambient, rows, piv, field)

    @classmethod
    def zero(cls, ambient: int, field: Field) -> "Subspace":
        return cls(ambient, (), (), field)

    @classmethod
    def full(cls, ambient: int, field: Field) -> "Subspace":
        one = field.one
        return cls(ambient, tuple({j: one} for j in range(ambient)), tuple(range(ambient)), field)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list:
        return [dict(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.field == other.field
                and self.pivots == other.pivots and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient, self.pivots))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {self.field!r})"

    def _compat(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch {self.ambient} != {other.ambient}")
        if self.field != other.field:
            raise FieldMismatch("subspace fields differ")

    def reduce(self, vec: dict) -> dict:
        """Canonical representative of vec modulo this subspace."""
        out = dict(vec)
        for r, p in zip(self.rows, self.pivots):
            c = out.get(p)
            if c:
                out = vec_add(out, r, -c)
        return out

    def contains(self, vec: dict) -> bool:
        _check_field(vec, self.field.gaussian)
        return not self.reduce(vec)

    def contains_space(self, other: "Subspace") -> bool:
        self._compat(other)
        return all(not self.reduce(r) for r in other.rows)

    def coordinates(self, vec: dict) -> list | None:
        """Coefficients of vec in the echelon basis (None if vec not inside)."""
        coords = [vec.get(p, self.field.zero) for p in self.pivots]
        rem = dict(vec)
        for r, c in zip(self.rows, coords):
            if c:
                rem = vec_add(rem, r, -c)
        return None if rem else coords

    def __add__(self, other: "Subspace") -> "Subspace":
        return ssum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def annihilator(self) -> "Subspace":
        """{a : sum_k a_k v_k = 0 for all v in self} (bilinear pairing)."""
        one = self.field.one
        pivset = set(self.pivots)
        vecs = []
        for f in range(self.ambient):
            if f in pivset:
                continue
            v = {f: one}
            for r, p in zip(self.rows, self.pivots):
                x = r.get(f)
                if x:
                    v[p] = -x
            vecs.append(v)
        return Subspace.span(self.ambient, vecs, self.field)

    def complement_reps(self, sub: "Subspace") -> list:
        """Canonical representatives of a basis of self / sub (sub must lie inside)."""
        if not self.contains_space(sub):
            raise ValueError("not a subspace")
        reduced = [sub.reduce(r) for r in self.rows]
        rows, piv = rref(reduced, self.field.gaussian)
        return [sub.reduce(r) for r in rows]

    def conj(self) -> "Subspace":
        return Subspace.span(self.ambient, [vec_conj(r) for r in self.rows], self.field)


def ssum(a: Subspace, b: Subspace) -> Subspace:
    a._compat(b)
    if not b.rows:
        return a
    if not a.rows:
        return b
    return Subspace.span(a.ambient, list(a.rows) + list(b.rows), a.field)


def span_all(ambient: int, spaces: list, field: Field) -> Subspace:
    vecs = []
    for s in spaces:
        if s.ambient != ambient:
            raise ValueError("ambient mismatch")
        vecs.extend(s.rows)
    return Subspace.span(ambient, vecs, field)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    a._compat(b)
    if not a.rows or not b.rows:
        return Subspace.zero(a.ambient, a.field)
    if a.contains_space(b):
        return b
    if b.contains_space(a):
        return a
    ann = ssum(a.annihilator(), b.annihilator())
    return ann.annihilator()


def quotient_dim(v: Subspace, w: Subspace) -> int:
    v._compat(w)
    if not v.contains_space(w):
        raise ValueError("quotient_dim: w is not contained in v")
    return v.dim - w.dim


def kernel(m: Matrix) -> Subspace:
    rows, pivots = rref(m.rows(), m.field.gaussian)
    s = Subspace(m.ncols, rows, pivots, m.field)
    return s.annihilator()


def image(m: Matrix, v: Subspace | None = None) -> Subspace:
    if v is None:
        return m.image()
    if v.ambient != m.ncols:
        raise ValueError("ambient mismatch")
    return Subspace.span(m.nrows, [m.apply(r) for r in v.rows], m.field)


def preimage(m: Matrix, w: Subspace) -> Subspace:
    """{x : m x in w}."""
    if w.ambient != m.nrows:
        raise ValueError("ambient mismatch")
    if w.dim == w.ambient:
        return Subspace.full(m.ncols, m.field)
    ann = w.annihilator()
    # rows a^T m for a in ann(w)
    rows = []
    for a in ann.rows:
        r = {}
        for j, c in enumerate(m.cols):
            s = None
            for i, v in c.items():
                x = a.get(i)
                if x:
                    s = v * x if s is None else s + v * x
            if s:
                r[j] = s
        rows.append(r)
    srows, piv = rref(rows, m.field.gaussian)
    return Subspace(m.ncols, srows, piv, m.field).annihilator()


def contains(v: Subspace, x) -> bool:
    if not isinstance(x, dict):
        x = dense_to_sparse(x, v.field)
    return v.contains(x)
