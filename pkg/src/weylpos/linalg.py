"""Small exact linear algebra over any field whose elements support ``+ - * /``.

Matrices are lists of rows.  Nothing here pivots for numerical reasons; the
callers work over exact fields (``Fraction``, sympy rational function fields),
so a zero test is a real zero test.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Sequence

Matrix = list[list[Any]]


class ZeroPivotError(ArithmeticError):
    """Raised by :func:`lu_nopivot` when a leading principal minor vanishes."""


def identity(n: int, one: Any = 1, zero: Any = 0) -> Matrix:
    return [[one if r == c else zero for c in range(n)] for r in range(n)]


def zeros(n: int, m: int | None = None, zero: Any = 0) -> Matrix:
    return [[zero] * (n if m is None else m) for _ in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for c in range(cols):
            acc = row[0] * b[0][c]
            for k in range(1, inner):
                acc = acc + row[k] * b[k][c]
            new.append(acc)
        out.append(new)
    return out


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scalar(s: Any, a: Matrix) -> Matrix:
    return [[s * x for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def as_fractions(a: Sequence[Sequence[Any]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (Gauss-Jordan, exact)."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((k for k in range(r, rows) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for k in range(rows):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(as_fractions(a) if _is_plain(a) else a)[1])


def nullspace(a: Matrix) -> list[list[Fraction]]:
    """Basis of the right kernel of an integer/rational matrix."""
    m, pivots = rref(as_fractions(a))
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[Any]) -> list[Fraction] | None:
    """One exact solution of ``a x = b`` (free variables set to 0), or None."""
    aug = [list(row) + [rhs] for row, rhs in zip(as_fractions(a), (Fraction(x) for x in b))]
    m, pivots = rref(aug)
    cols = len(a[0])
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][cols]
    return x


def det(a: Matrix) -> Any:
    """Determinant by Gaussian elimination, exact over a field."""
    m = [list(row) for row in a]
    n = len(m)
    sign = 1
    result = None
    for c in range(n):
        p = next((k for k in range(c, n) if m[k][c] != 0), None)
        if p is None:
            return m[0][0] * 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        result = piv if result is None else result * piv
        for k in range(c + 1, n):
            if m[k][c] != 0:
                f = m[k][c] / piv
                m[k] = [x - f * y for x, y in zip(m[k], m[c])]
    return result if sign == 1 else -result


def leading_minors(a: Matrix) -> list[Any]:
    return [det([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def lu_nopivot(a: Matrix, zero: Any = 0, one: Any = 1) -> tuple[Matrix, Matrix]:
    """Doolittle factorization ``a = L R``, L lower unitriangular, R upper.

    Raises ZeroPivotError on a vanishing pivot (other than the last) instead of
    permuting rows.
    """
    n = len(a)
    r = [list(row) for row in a]
    low = identity(n, one, zero)
    for c in range(n):
        piv = r[c][c]
        if piv == 0 and c < n - 1:  # the last pivot is never divided by
            raise ZeroPivotError(f"zero pivot in column {c}")
        for k in range(c + 1, n):
            if r[k][c] != 0:
                f = r[k][c] / piv
                low[k][c] = f
                r[k] = [x - f * y for x, y in zip(r[k], r[c])]
    return low, r


def inverse_unitriangular(a: Matrix, lower: bool, zero: Any = 0, one: Any = 1) -> Matrix:
    """Inverse of a unitriangular matrix by substitution; no divisions."""
    n = len(a)
    inv = identity(n, one, zero)
    if lower:
        for c in range(n):
            for r in range(c + 1, n):
                acc = zero
                for k in range(c, r):
                    acc = acc + a[r][k] * inv[k][c]
                inv[r][c] = -acc
    else:
        for c in range(n):
            for r in range(c - 1, -1, -1):
                acc = zero
                for k in range(r + 1, c + 1):
                    acc = acc + a[r][k] * inv[k][c]
                inv[r][c] = -acc
    return inv


def nilpotent_exp(nmat: Matrix, one: Any = Fraction(1), zero: Any = Fraction(0)) -> Matrix:
    """``exp`` of a nilpotent matrix as a finite sum."""
    n = len(nmat)
    result = identity(n, one, zero)
    term = identity(n, one, zero)
    for k in range(1, n + 1):
        term = scalar(Fraction(1, k), matmul(term, nmat))
        if all(x == 0 for row in term for x in row):
            break
        result = matadd(result, term)
    return result


def same_span(cols_a: Matrix, cols_b: Matrix) -> bool:
    """True when two lists of column vectors span the same subspace."""
    ra = rank(transpose(cols_a)) if cols_a else 0
    rb = rank(transpose(cols_b)) if cols_b else 0
    both = rank(transpose(cols_a + cols_b)) if cols_a or cols_b else 0
    return ra == rb == both


def _is_plain(a: Matrix) -> bool:
    return all(isinstance(x, (int, Fraction)) for row in a for x in row)


def column(a: Matrix, c: int) -> list[Any]:
    return [row[c] for row in a]


def is_zero_matrix(a: Matrix, pred: Callable[[Any], bool] | None = None) -> bool:
    return all((x == 0) if pred is None else pred(x) for row in a for x in row)
