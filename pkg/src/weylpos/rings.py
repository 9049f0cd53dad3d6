"""Two-chart descriptions of coordinate rings in rank one and two.

Type A2 (unipotent group).  A regular function is a pair ``[P; P']`` of
polynomials in ``a, b, c`` with ``P(bc/(a+c), a+c, ab/(a+c)) = P'(a, b, c)``.
The pairs ``f_{i,j,k}`` and ``f'_{i,j,k}`` (``j >= i + k``) form a basis, and a
pair has nonnegative coefficients in both charts exactly when it is a
nonnegative combination of that basis.

Type A1 (whole group).  Pairs of Laurent polynomials in ``b`` with
``P(a, 1/b, c) = P'(c/D, b/D, a/D)`` where ``D = ac + b^2``; the families are
``g_{i,j,k}`` and ``g'_{i,j,k}`` (``i, k >= 0``, ``i + j + k <= 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from . import linalg
from .polynomial import Poly

A = Poly.var(3, 0)
B = Poly.var(3, 1)
C = Poly.var(3, 2)
ONE = Poly.const(3, 1)

Label = tuple[str, int, int, int]


class PairError(ValueError):
    pass


@dataclass(frozen=True)
class Pair:
    """Element ``[first; second]`` written in the two charts, optionally labelled."""

    first: Poly
    second: Poly
    label: Label | None = None

    def __add__(self, other: "Pair") -> "Pair":
        return Pair(self.first + other.first, self.second + other.second)

    def __sub__(self, other: "Pair") -> "Pair":
        return Pair(self.first - other.first, self.second - other.second)

    def __rmul__(self, s) -> "Pair":
        return Pair(self.first * Fraction(s), self.second * Fraction(s))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pair):
            return NotImplemented
        return self.first == other.first and self.second == other.second

    def __hash__(self) -> int:
        return hash((self.first, self.second))

    def to_json(self) -> dict:
        out = {"first": self.first.to_json(), "second": self.second.to_json()}
        if self.label:
            out["family"], out["index"] = self.label[0], list(self.label[1:])
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Pair":
        try:
            return cls(Poly.from_json(3, data["first"]), Poly.from_json(3, data["second"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise PairError(f"bad pair JSON: {exc}") from None

    def pretty(self) -> str:
        name = ""
        if self.label:
            fam, i, j, k = self.label
            name = f"{fam}_{{{i},{j},{k}}} = "
        return f"{name}[{self.first.format()}; {self.second.format()}]"


@dataclass(frozen=True)
class GlueCheck:
    ok: bool
    diff: Poly

    def __bool__(self) -> bool:
        return self.ok


# -- the unipotent group of type A2 -------------------------------------------------


def _require_f_indices(i: int, j: int, k: int) -> None:
    if min(i, j, k) < 0 or j < i + k:
        raise PairError(f"need i, j, k >= 0 and j >= i + k, got ({i}, {j}, {k})")


def _other_chart(i: int, j: int, k: int) -> Poly:
    """``(bc/(a+c))^i (a+c)^j (ab/(a+c))^k`` expanded; a polynomial when ``j >= i + k``."""
    return B ** (i + k) * C**i * A**k * (A + C) ** (j - i - k)


def make_f(i: int, j: int, k: int) -> Pair:
    _require_f_indices(i, j, k)
    return Pair(A**i * B**j * C**k, _other_chart(i, j, k), ("f", i, j, k))


def make_fprime(i: int, j: int, k: int) -> Pair:
    _require_f_indices(i, j, k)
    return Pair(_other_chart(i, j, k), A**i * B**j * C**k, ("f'", i, j, k))


def check_pair_OU(p: Pair) -> GlueCheck:
    """``P(bc/(a+c), a+c, ab/(a+c)) == P'(a, b, c)`` after multiplying by ``(a+c)^D``."""
    if not (p.first.is_polynomial() and p.second.is_polynomial()):
        raise PairError("both components must be polynomials in a, b, c")
    s = A + C
    depth = max((e[0] + e[2] for e in p.first.terms), default=0)
    lhs = Poly.const(3, 0)
    for (i, j, k), coef in p.first.terms.items():
        lhs = lhs + (B * C) ** i * (A * B) ** k * s ** (j + depth - i - k) * coef
    diff = lhs - p.second * s**depth
    return GlueCheck(not diff, diff)


def weight_f(exps: tuple[int, int, int]) -> tuple[int, int]:
    """Weight of a first-chart monomial ``a^i b^j c^k``."""
    i, j, k = exps
    return (i + k, j)


def weight_fsecond(exps: tuple[int, int, int]) -> tuple[int, int]:
    i, j, k = exps
    return (j, i + k)


def weight_of(p: Pair) -> tuple[int, int]:
    if p.label is not None:
        fam, i, j, k = p.label
        if fam == "f":
            return (i + k, j)
        if fam == "f'":
            return (j, i + k)
    weights = {weight_f(e) for e in p.first.terms} | {weight_fsecond(e) for e in p.second.terms}
    if len(weights) != 1:
        raise PairError(f"pair is not homogeneous (weights {sorted(weights)})")
    return weights.pop()


def basis(m: int, n: int) -> list[Pair]:
    """Basis pairs of weight ``(m, n)``: the f-family when ``n >= m``, else the f'-family."""
    if n >= m:
        return [make_f(i, n, m - i) for i in range(m + 1)]
    return [make_fprime(i, m, n - i) for i in range(n + 1)]


def canonical_label(label: Label) -> Label:
    """``f'_{k,j,i}`` and ``f_{i,j,k}`` coincide when ``j = i + k``; prefer the f name."""
    fam, i, j, k = label
    if fam == "f'" and j == i + k:
        return ("f", k, j, i)
    return label


def weight_projection(p: Pair, weight: tuple[int, int]) -> Pair:
    first = Poly(3, {e: c for e, c in p.first.terms.items() if weight_f(e) == weight})
    second = Poly(3, {e: c for e, c in p.second.terms.items() if weight_fsecond(e) == weight})
    return Pair(first, second)


def weights_of(p: Pair) -> list[tuple[int, int]]:
    return sorted({weight_f(e) for e in p.first.terms} | {weight_fsecond(e) for e in p.second.terms})


def _solve_in_basis(target: Pair, elems: list[Pair]) -> list[Fraction] | None:
    monos = sorted(
        {("1", e) for q in elems + [target] for e in q.first.terms}
        | {("2", e) for q in elems + [target] for e in q.second.terms}
    )

    def vec(q: Pair) -> list[Fraction]:
        return [(q.first if side == "1" else q.second).coefficient(e) for side, e in monos]

    cols = [vec(q) for q in elems]
    mat = [[col[r] for col in cols] for r in range(len(monos))]
    rhs = vec(target)
    sol = linalg.solve(mat, rhs) if monos else [Fraction(0)] * len(elems)
    if sol is None:
        return None
    check = [sum((mat[r][c] * sol[c] for c in range(len(elems))), Fraction(0)) for r in range(len(monos))]
    return sol if check == rhs else None


def decompose(v: Pair) -> dict[Label, Fraction]:
    """Coefficients of ``v`` in the f/f' basis, weight space by weight space."""
    if not (v.first.is_polynomial() and v.second.is_polynomial()):
        raise PairError("both components must be polynomials")
    out: dict[Label, Fraction] = {}
    for m, n in weights_of(v):
        elems = basis(m, n)
        sol = _solve_in_basis(weight_projection(v, (m, n)), elems)
        if sol is None:
            raise PairError(f"pair is not in the span of the basis (weight {(m, n)})")
        for e, c in zip(elems, sol):
            if c:
                out[canonical_label(e.label)] = c
    return out


def combine(coeffs: Mapping[Label, object]) -> Pair:
    """Linear combination of labelled f/f' basis pairs."""
    total = Pair(Poly.const(3, 0), Poly.const(3, 0))
    for (fam, i, j, k), c in coeffs.items():
        elem = make_f(i, j, k) if fam == "f" else make_fprime(i, j, k)
        total = total + Fraction(c) * elem
    return total


@dataclass(frozen=True)
class ConeVerdict:
    chart_nonneg: bool  # every coefficient of both components is >= 0
    basis_nonneg: bool  # every f/f' coefficient is >= 0

    @property
    def agree(self) -> bool:
        return self.chart_nonneg == self.basis_nonneg


def cone_membership(v: Pair, degree_bound: int) -> ConeVerdict:
    if v.first.degree() > degree_bound or v.second.degree() > degree_bound:
        raise PairError(f"degree exceeds the bound {degree_bound}")
    chart = all(c >= 0 for c in v.first.coefficients() + v.second.coefficients())
    coeffs = decompose(v)
    return ConeVerdict(chart, all(c >= 0 for c in coeffs.values()))


def weight_space_dim(m: int, n: int) -> int:
    """Dimension of weight ``(m, n)`` pairs, from the chart model alone.

    A first component of that weight is ``b^n sum_i x_i a^i c^(m-i)``; its second
    component is ``b^m (a+c)^(n-m) sum_i x_i c^i a^(m-i)``, a polynomial iff
    ``(1+c)^(m-n)`` divides ``sum_i x_i c^i`` when ``n < m``.  The dimension is
    ``m + 1`` minus the rank of the remainder map.
    """
    if n >= m:
        return m + 1
    e = m - n
    divisor = [comb(e, r) for r in range(e + 1)]  # (1+c)^e, low degree first
    rows = []
    for i in range(m + 1):
        rows.append(_remainder([Fraction(1) if r == i else Fraction(0) for r in range(m + 1)], divisor))
    mat = linalg.transpose(rows)
    return m + 1 - linalg.rank(mat)


def _remainder(p: list[Fraction], d: list[int]) -> list[Fraction]:
    """Remainder of univariate ``p`` modulo monic ``d`` (coefficients low degree first)."""
    p = list(p)
    deg_d = len(d) - 1
    for top in range(len(p) - 1, deg_d - 1, -1):
        c = p[top]
        if c:
            for r in range(deg_d + 1):
                p[top - deg_d + r] -= c * d[r]
    return p[:deg_d] + [Fraction(0)] * max(0, deg_d - len(p))


def matrix_coordinate_dim(m: int, n: int) -> int:
    """Monomials ``x12^p x23^q x13^r`` of weight ``(m, n)`` in the upper unitriangular 3x3 model."""
    # x12, x23, x13 have weights (1,0), (0,1), (1,1); r is the power of x13
    return sum(1 for r in range(min(m, n) + 1))


def f_family(max_j: int) -> list[Pair]:
    out = []
    for j in range(max_j + 1):
        for i in range(j + 1):
            for k in range(j - i + 1):
                out.append(make_f(i, j, k))
                out.append(make_fprime(i, j, k))
    return out


# -- the group of type A1 ---------------------------------------------------------


def _require_g_indices(i: int, j: int, k: int) -> None:
    if i < 0 or k < 0 or i + j + k > 0:
        raise PairError(f"need i, k >= 0 and i + j + k <= 0, got ({i}, {j}, {k})")


def make_g(i: int, j: int, k: int) -> Pair:
    _require_g_indices(i, j, k)
    n = -i - j - k
    second = C**i * B**j * A**k * (A * C + B**2) ** n
    return Pair(A**i * B ** (-j) * C**k, second, ("g", i, j, k))


def make_gprime(i: int, j: int, k: int) -> Pair:
    _require_g_indices(i, j, k)
    n = -i - j - k
    first = C**i * B ** (-j) * A**k * (A * C + B ** (-2)) ** n
    return Pair(first, A**i * B**j * C**k, ("g'", i, j, k))


def _laurent_in_b_only(p: Poly) -> bool:
    return all(e[0] >= 0 and e[2] >= 0 for e in p.terms)


def check_pair_OG(p: Pair) -> GlueCheck:
    """``P(a, 1/b, c) == P'(c/D, b/D, a/D)``, ``D = ac + b^2``, after multiplying by ``D^M``."""
    if not (_laurent_in_b_only(p.first) and _laurent_in_b_only(p.second)):
        raise PairError("only b may carry negative exponents")
    d = A * C + B**2
    depth = max(0, max((sum(e) for e in p.second.terms), default=0))
    rhs = Poly.const(3, 0)
    for (i, j, k), coef in p.second.terms.items():
        rhs = rhs + C**i * B**j * A**k * d ** (depth - (i + j + k)) * coef
    lhs_first = Poly(3, {(i, -j, k): c for (i, j, k), c in p.first.terms.items()})
    diff = lhs_first * d**depth - rhs
    return GlueCheck(not diff, diff)


def g_family(max_ik: int = 3, min_j: int = -6) -> list[Pair]:
    out = []
    for i in range(max_ik + 1):
        for k in range(max_ik + 1):
            for j in range(min_j, 1):
                if i + j + k <= 0:
                    out.append(make_g(i, j, k))
                    out.append(make_gprime(i, j, k))
    return out


def make(family: str, i: int, j: int, k: int) -> Pair:
    makers = {"f": make_f, "f'": make_fprime, "fprime": make_fprime, "g": make_g, "g'": make_gprime, "gprime": make_gprime}
    try:
        return makers[family](i, j, k)
    except KeyError:
        raise PairError(f"unknown family {family!r}") from None


def check(p: Pair) -> GlueCheck:
    fam = p.label[0] if p.label else "f"
    return check_pair_OG(p) if fam.startswith("g") else check_pair_OU(p)


def nonneg_combinations(elems: Iterable[Pair]) -> Pair:
    total = Pair(Poly.const(3, 0), Poly.const(3, 0))
    for e in elems:
        total = total + e
    return total
