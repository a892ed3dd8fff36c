"""Independent arithmetic for cross-checks (sympy)."""

from __future__ import annotations

import sympy


def to_sympy(s):
    return sympy.Rational(str(s.re)) + sympy.I * sympy.Rational(str(s.im))


def sympy_matrix(m):
    return sympy.Matrix([[to_sympy(x) for x in row] for row in m.to_lists()])


def sympy_rank(m) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return sympy_matrix(m).rank(simplify=True)
