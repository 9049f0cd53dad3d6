"""The involution phi of U_{>0} and its semifield versions.

Three computable forms are provided:

* closed formulas in ranks 1 and 2, valid over any semifield;
* a matrix oracle in type A_{n-1} (n <= 5) over exact rationals: with
  ``u+ = x_{i1}(c1)...x_{iv}(cv)`` factor ``(u+)^{-1} J = L R`` (J the
  antidiagonal permutation, L lower unitriangular, R upper triangular), then
  ``phi(u)^- = L^{-1}`` and the coordinates are read off by factoring that
  lower unitriangular matrix into ``y_i`` generators;
* the tropical version in type A, running the same pipeline over the field
  Q(t) at ``c_k = t^{x_k}`` and reading each coordinate's order of vanishing.
  The coordinates of phi are subtraction-free in the inputs, so positive
  coefficients cannot cancel and ``ord_t`` equals the tropicalization.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Callable, Mapping, Sequence

import numpy as np
from sympy import QQ
from sympy.polys.fields import field as sympy_field

from . import linalg
from .diagrams import Graph, is_type_a, path_order
from .semifields import POSRAT, TROPARRAY, TROPINT, Semifield, SemifieldError
from .upoints import (
    UPoint,
    apply_coordinate_moves,
    inverse_scaling,
    psi,
    scale,
    transition,
    u_p,
)
from .weyl import CapabilityError, WeylGroup, Word, weyl_group

MAX_MATRIX_SIZE = 5


class NotTotallyPositiveError(ArithmeticError):
    """Input matrix or point is not in the totally positive cell."""


# -- closed forms in rank <= 2 ---------------------------------------------------


def closed_form_available(diagram: Graph) -> bool:
    return diagram.rank == 1 or (diagram.rank == 2)


def phi_closed(x: UPoint) -> UPoint:
    """phi by explicit formulas (A1, A2, A1xA1), in any semifield.

    In A2, for the chart ``(i, j, i)``::

        (a, b, c) -> (a / (c (a + c)),  (a + c) / (a b),  1 / (a + c))
    """
    W, K = x.weyl, x.K
    d = W.diagram
    if d.rank == 1:
        return x._replace(x.word, (K.inv(x.coords[0]),))
    if d.rank == 2 and not d.edges:
        return x._replace(x.word, tuple(K.inv(c) for c in x.coords))
    if d.rank == 2:
        i, j = d.vertices
        y = transition(x, (i, j, i))
        a, b, c = y.coords
        s = K.add(a, c)
        out = (
            K.div(a, K.mul(c, s)),
            K.div(s, K.mul(a, b)),
            K.inv(s),
        )
        return transition(y._replace((i, j, i), out), x.word)
    raise CapabilityError("closed formulas for phi exist only in rank <= 2")


def phi_closed_alt(x: UPoint) -> UPoint:
    """The second displayed A2 form, leading with ``j``: ``(c/(ab), 1/c, 1/b)`` in chart ``(j, i, j)``."""
    W, K = x.weyl, x.K
    d = W.diagram
    if d.rank != 2 or not d.edges:
        raise CapabilityError("the j-leading form is specific to A2")
    i, j = d.vertices
    a, b, c = transition(x, (i, j, i)).coords
    out = (K.div(c, K.mul(a, b)), K.inv(c), K.inv(b))
    return transition(x._replace((j, i, j), out), x.word)


# -- type A pinning --------------------------------------------------------------


class TypeAPinning:
    """Elementary matrices for a path diagram: ``x_k(a) = Id + a E_{k,k+1}``, ``y_k(a) = Id + a E_{k+1,k}``.

    ``k`` is the 0-based position of a vertex along the path.
    """

    def __init__(self, diagram: Graph):
        if not is_type_a(diagram):
            raise CapabilityError("the matrix realization is implemented for type A only")
        self.diagram = diagram
        self.order = path_order(diagram)
        self.n = len(self.order) + 1
        if self.n > MAX_MATRIX_SIZE:
            raise CapabilityError(f"matrix computations are limited to n <= {MAX_MATRIX_SIZE}")
        self.pos = {v: k for k, v in enumerate(self.order)}

    def x(self, i: str, a, zero=Fraction(0), one=Fraction(1)) -> linalg.Matrix:
        m = linalg.identity(self.n, one, zero)
        k = self.pos[i]
        m[k][k + 1] = a
        return m

    def y(self, i: str, a, zero=Fraction(0), one=Fraction(1)) -> linalg.Matrix:
        m = linalg.identity(self.n, one, zero)
        k = self.pos[i]
        m[k + 1][k] = a
        return m

    def e(self, i: str) -> linalg.Matrix:
        return self.x(i, Fraction(1), one=Fraction(0))

    def f(self, i: str) -> linalg.Matrix:
        return self.y(i, Fraction(1), one=Fraction(0))

    def h(self, i: str) -> linalg.Matrix:
        e, f = self.e(i), self.f(i)
        ef, fe = linalg.matmul(e, f), linalg.matmul(f, e)
        return [[p - q for p, q in zip(r1, r2)] for r1, r2 in zip(ef, fe)]

    def x_product(self, word: Sequence[str], coords: Sequence, zero=Fraction(0), one=Fraction(1)):
        """``u+``: product of ``x_{i_k}(c_k)`` as right column operations."""
        m = linalg.identity(self.n, one, zero)
        for i, c in zip(word, coords):
            k = self.pos[i]
            for row in m:
                row[k + 1] = row[k + 1] + c * row[k]
        return m

    def y_product(self, word: Sequence[str], coords: Sequence, zero=Fraction(0), one=Fraction(1)):
        """``u-``: product of ``y_{i_k}(c_k)``."""
        m = linalg.identity(self.n, one, zero)
        for i, c in zip(word, coords):
            k = self.pos[i]
            for row in m:
                row[k] = row[k] + c * row[k + 1]
        return m

    def antidiagonal(self, zero=Fraction(0), one=Fraction(1)) -> linalg.Matrix:
        n = self.n
        return [[one if r + c == n - 1 else zero for c in range(n)] for r in range(n)]

    @cached_property
    def elimination_word(self) -> Word:
        """Word produced by adjacent-row elimination, column by column, bottom up."""
        out = []
        for c in range(self.n - 1):
            for r in range(self.n - 1, c, -1):
                out.append(self.order[r - 1])
        return tuple(out)


@lru_cache(maxsize=32)
def pinning(diagram: Graph) -> TypeAPinning:
    return TypeAPinning(diagram)


def matrix_available(diagram: Graph) -> bool:
    try:
        pinning(diagram)
    except CapabilityError:
        return False
    return True


def _is_positive_fraction(v) -> bool:
    return v > 0


def factor_unipotent(
    v: linalg.Matrix,
    diagram: Graph,
    word: Sequence[str] | None = None,
    zero=Fraction(0),
    one=Fraction(1),
    positive: Callable[[Any], bool] | None = _is_positive_fraction,
) -> tuple:
    """Coordinates of a totally positive lower unitriangular ``v`` in the chart ``word``.

    Adjacent-row elimination peels one generator per entry below the diagonal;
    the multipliers are the coordinates in :attr:`TypeAPinning.elimination_word`.
    The result is always re-multiplied and compared with ``v``.
    """
    P = pinning(diagram)
    n = P.n
    m = [list(row) for row in v]
    coords = []
    for c in range(n - 1):
        for r in range(n - 1, c, -1):
            above = m[r - 1][c]
            if above == 0:
                raise NotTotallyPositiveError("not in the positive cell: zero entry during elimination")
            mult = m[r][c] / above
            if positive is not None and not positive(mult):
                raise NotTotallyPositiveError("not in the positive cell: nonpositive parameter")
            m[r] = [x - mult * y for x, y in zip(m[r], m[r - 1])]
            coords.append(mult)
    elim = P.elimination_word
    if P.y_product(elim, coords, zero, one) != [list(row) for row in v]:
        raise NotTotallyPositiveError("not in the positive cell: re-multiplication mismatch")
    W = weyl_group(diagram)
    if word is None or tuple(word) == elim:
        return tuple(coords)
    moves = W.braid_path(elim, W.check_word(word))
    return tuple(apply_coordinate_moves(coords, moves, POSRAT))


def _phi_pipeline(diagram: Graph, word: Sequence[str], coords: Sequence, zero, one, positive) -> tuple:
    """Coordinates of phi(u) in ``word`` over any exact field containing the inputs."""
    P = pinning(diagram)
    u_plus = P.x_product(word, coords, zero, one)
    n_mat = linalg.matmul(linalg.inverse_unitriangular(u_plus, lower=False, zero=zero, one=one), P.antidiagonal(zero, one))
    try:
        low, _ = linalg.lu_nopivot(n_mat, zero, one)
    except linalg.ZeroPivotError:
        raise NotTotallyPositiveError("input not totally positive (zero LU pivot)") from None
    v = linalg.inverse_unitriangular(low, lower=True, zero=zero, one=one)
    return factor_unipotent(v, diagram, word, zero, one, positive)


def phi_matrix(x: UPoint) -> UPoint:
    """phi from the flag equation, exact over the rationals (type A, n <= 5)."""
    if x.K is not POSRAT:
        raise SemifieldError("phi_matrix works over posrat; use phi_tropical for tropint")
    out = _phi_pipeline(x.weyl.diagram, x.word, x.coords, Fraction(0), Fraction(1), _is_positive_fraction)
    return x._replace(x.word, out)


# -- tropical phi via orders of vanishing -----------------------------------------

_T_FIELD, _T = sympy_field("t", QQ)


def ord_t(f) -> int:
    """Order of vanishing at ``t = 0`` of a nonzero element of Q(t)."""
    if f == 0:
        raise ArithmeticError("ord_t of zero")
    return min(m[0] for m in f.numer.monoms()) - min(m[0] for m in f.denom.monoms())


def _lowest_coefficient(p) -> Any:
    return min(p.terms(), key=lambda term: term[0][0])[1]


def _positive_near_zero(f) -> bool:
    return (_lowest_coefficient(f.numer) > 0) == (_lowest_coefficient(f.denom) > 0)


def t_power(e: int):
    return _T**e


def phi_tropical(x: UPoint) -> UPoint:
    """Tropical phi by the matrix pipeline over Q(t) at ``c_k = t^{x_k}``."""
    if x.K is not TROPINT:
        raise SemifieldError("phi_tropical needs a tropint point")
    values = [t_power(c) for c in x.coords]
    out = _phi_pipeline(x.weyl.diagram, x.word, values, _T_FIELD.zero, _T_FIELD.one, _positive_near_zero)
    return x._replace(x.word, tuple(ord_t(f) for f in out))


class CompiledTropicalPhi:
    """Tropical phi in the reference chart, compiled once from symbolic coordinates.

    The pipeline is run a single time over Q(z_1, ..., z_nu); each output
    coordinate is a quotient of polynomials, and its tropical value at an
    integer point ``x`` is ``ord_t`` of that quotient at ``z = t^x``.  When all
    coefficients of both polynomials are positive this is a plain min-plus
    evaluation and is vectorized with numpy.
    """

    def __init__(self, diagram: Graph):
        self.diagram = diagram
        self.weyl = weyl_group(diagram)
        self.word = self.weyl.longest_word
        nu = self.weyl.nu
        F, *zs = sympy_field(",".join(f"z{k}" for k in range(nu)), QQ)
        out = _phi_pipeline(diagram, self.word, zs, F.zero, F.one, None)
        self.numerators = [self._terms(f.numer) for f in out]
        self.denominators = [self._terms(f.denom) for f in out]
        self.subtraction_free = all(
            (coefs > 0).all() or (coefs < 0).all()
            for _, coefs in self.numerators + self.denominators
        )

    @staticmethod
    def _terms(p) -> tuple[np.ndarray, np.ndarray]:
        terms = p.terms()
        exps = np.array([m for m, _ in terms], dtype=np.int64)
        coefs = np.array([Fraction(int(c.numerator), int(c.denominator)) for _, c in terms], dtype=object)
        return exps, coefs

    @staticmethod
    def _ord(exps: np.ndarray, coefs: np.ndarray, x: np.ndarray) -> int:
        vals = exps @ x
        sums: dict[int, Any] = {}
        for v, c in zip(vals.tolist(), coefs):
            sums[v] = sums.get(v, 0) + c
        return min(v for v, c in sums.items() if c != 0)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        xv = np.asarray(x, dtype=np.int64)
        return tuple(
            self._ord(*num, xv) - self._ord(*den, xv)
            for num, den in zip(self.numerators, self.denominators)
        )

    def batch(self, X: np.ndarray) -> np.ndarray:
        """Rows of ``X`` are reference-chart points; returns phi of each row."""
        X = np.asarray(X, dtype=np.int64)
        if not self.subtraction_free:
            return np.array([self(row) for row in X], dtype=np.int64).reshape(X.shape)
        cols = []
        for (ne, _), (de, _) in zip(self.numerators, self.denominators):
            cols.append((X @ ne.T).min(axis=1) - (X @ de.T).min(axis=1))
        return np.stack(cols, axis=1) if cols else X.copy()


@lru_cache(maxsize=16)
def compiled_tropical_phi(diagram: Graph) -> CompiledTropicalPhi:
    return CompiledTropicalPhi(diagram)


# -- dispatch -------------------------------------------------------------------------


def phi_available(diagram: Graph, K: Semifield) -> bool:
    if closed_form_available(diagram):
        return True
    return K in (POSRAT, TROPINT) and matrix_available(diagram)


def phi(x: UPoint, method: str = "auto") -> UPoint:
    """phi_K by the requested method: ``closed``, ``matrix``, ``tropical`` or ``auto``."""
    if method == "auto":
        if closed_form_available(x.weyl.diagram):
            method = "closed"
        elif x.K is POSRAT:
            method = "matrix"
        elif x.K is TROPINT:
            method = "tropical"
        else:
            raise CapabilityError(f"phi is not available for {x.K.name} on this diagram")
    if method == "closed":
        return phi_closed(x)
    if method == "matrix":
        return phi_matrix(x)
    if method == "tropical":
        return phi_tropical(x)
    raise ValueError(f"unknown phi method {method!r}")


def phi_prime(x: UPoint, method: str = "auto") -> UPoint:
    """``psi . phi . psi``."""
    return psi(phi(psi(x), method))


# -- identity checks ---------------------------------------------------------------


def q_identity(W: WeylGroup) -> dict[str, bool]:
    """``sum_i q_i a_ij = 2`` for every column ``j``."""
    q = W.q
    out = {}
    for jj, j in enumerate(W.vertices):
        out[j] = sum(q[i] * W.cartan[ii][jj] for ii, i in enumerate(W.vertices)) == 2
    return out


def nilpotent_sum(P: TypeAPinning, weights: Mapping[str, Any], lower: bool = False) -> linalg.Matrix:
    total = linalg.zeros(P.n, zero=Fraction(0))
    for i, w in weights.items():
        gen = P.f(i) if lower else P.e(i)
        total = linalg.matadd(total, linalg.scalar(Fraction(w), gen))
    return total


def a1_identity_checks(diagram: Graph) -> dict:
    """Report on ``sum_i q_i a_ij = 2`` (all types) and ``u(1)+ = exp(sum q_i e_i)`` (type A).

    Also checks ``u(q^-1)+ = exp(sum e_i)`` and the sl2-triple relations for
    ``omega = sum q_i e_i``, ``omega' = sum f_i``.
    """
    W = weyl_group(diagram)
    report: dict[str, Any] = {"q": dict(W.q), "q_identity": q_identity(W)}
    if matrix_available(diagram):
        P = pinning(diagram)
        u1 = u_p({i: 1 for i in W.vertices}, diagram, POSRAT)
        lhs = P.x_product(u1.word, u1.coords)
        omega = nilpotent_sum(P, W.q)
        report["u1_exp"] = lhs == linalg.nilpotent_exp(omega)
        uq = u_p({i: Fraction(1, W.q[i]) for i in W.vertices}, diagram, POSRAT)
        report["uqinv_exp"] = P.x_product(uq.word, uq.coords) == linalg.nilpotent_exp(
            nilpotent_sum(P, {i: 1 for i in W.vertices})
        )
        omega_p = nilpotent_sum(P, {i: 1 for i in W.vertices}, lower=True)
        h = _bracket(omega, omega_p)
        report["sl2_triple"] = _bracket(h, omega) == linalg.scalar(2, omega) and _bracket(
            h, omega_p
        ) == linalg.scalar(-2, omega_p)
    ok = all(report["q_identity"].values()) and all(
        report.get(k, True) for k in ("u1_exp", "uqinv_exp", "sl2_triple")
    )
    report["ok"] = ok
    return report


def _bracket(a: linalg.Matrix, b: linalg.Matrix) -> linalg.Matrix:
    ab, ba = linalg.matmul(a, b), linalg.matmul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def flag_columns(m: linalg.Matrix, from_end: bool) -> list[list[list]]:
    """The complete flag ``g F`` as nested column lists (first ``k`` or last ``k`` columns)."""
    n = len(m)
    cols = [linalg.column(m, c) for c in range(n)]
    if from_end:
        cols = cols[::-1]
    return [cols[:k] for k in range(1, n)]


def a3_orbit_check(p: Mapping[str, Any], diagram: Graph) -> bool:
    """Flag of ``u(p)+ B- (u(p)+)^-1`` equals flag of ``u(q^-1 p^-1)- B+ (...)^-1``."""
    W = weyl_group(diagram)
    P = pinning(diagram)
    p = {i: POSRAT.coerce(v) for i, v in p.items()}
    up = u_p(p, diagram, POSRAT)
    g = P.x_product(up.word, up.coords)
    qp = {i: 1 / (W.q[i] * p[i]) for i in W.vertices}
    uq = u_p(qp, diagram, POSRAT)
    h = P.y_product(uq.word, uq.coords)
    # B- fixes span(e_n, ..., e_{n-k+1}); B+ fixes span(e_1, ..., e_k)
    return all(
        linalg.same_span(a, b)
        for a, b in zip(flag_columns(g, from_end=True), flag_columns(h, from_end=False))
    )


def phi_of_u(p: Mapping[str, Any], diagram: Graph, K: Semifield = POSRAT) -> UPoint:
    """``u(q^-1 p^-1)``, the predicted value of phi(u(p))."""
    W = weyl_group(diagram)
    q = {i: K.embed_posint(W.q[i]) for i in W.vertices}
    target = {i: K.inv(K.mul(q[i], K.coerce(p[i]))) for i in W.vertices}
    return u_p(target, diagram, K)


__all__ = [
    "phi", "phi_closed", "phi_closed_alt", "phi_matrix", "phi_tropical", "phi_prime",
    "factor_unipotent", "TypeAPinning", "pinning", "CompiledTropicalPhi",
    "compiled_tropical_phi", "a1_identity_checks", "a3_orbit_check", "q_identity",
    "ord_t", "phi_of_u", "NotTotallyPositiveError", "phi_available", "matrix_available",
    "scale", "inverse_scaling", "TROPARRAY",
]
