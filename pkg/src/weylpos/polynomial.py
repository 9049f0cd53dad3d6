"""Sparse Laurent polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .semifields import format_fraction

Exps = tuple[int, ...]


class Poly:
    """Immutable map from exponent tuples to nonzero ``Fraction`` coefficients.

    Exponents may be negative (Laurent monomials); callers that need honest
    polynomials check :meth:`is_polynomial`.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exps, Fraction] = {}
        for exps, coef in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} has wrong length for {nvars} variables")
            c = clean.get(exps, Fraction(0)) + Fraction(coef)
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.terms: dict[Exps, Fraction] = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, k: int, power: int = 1) -> "Poly":
        return cls(nvars, {tuple(power if i == k else 0 for i in range(nvars)): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coef=1) -> "Poly":
        return cls(len(exps), {tuple(exps): coef})

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different variable counts")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        return Poly(self.nvars, list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self.terms.items()
            return Poly(self.nvars, {tuple(n * x for x in e): Fraction(c) ** n})
        out = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coefficients(self) -> list[Fraction]:
        return list(self.terms.values())

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __repr__(self) -> str:
        return f"Poly({self.format()})"

    def format(self, names: Sequence[str] = ("a", "b", "c")) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coef in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))):
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(format_fraction(coef))
            elif coef == 1:
                parts.append(mono)
            elif coef == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_fraction(coef)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [[format_fraction(c), list(e)] for e, c in self.terms.items()]

    @classmethod
    def from_json(cls, nvars: int, data) -> "Poly":
        return cls(nvars, [(tuple(e), Fraction(c)) for c, e in data])
