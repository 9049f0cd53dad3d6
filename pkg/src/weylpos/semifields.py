"""Semifields and subtraction-free rational expressions.

A semifield here is a stateless strategy object; its values are plain Python
values (``Fraction`` for :data:`POSRAT`, ``int`` for :data:`TROPINT`, the
integer ``1`` for :data:`TRIVIAL`).  All maps in the package take the
semifield as a parameter so one code path serves every instance.

>>> f = SFRational.parse({"num": [[1, [0, 1, 1]]], "den": [[1, [1, 0, 0]], [1, [0, 0, 1]]]})
>>> eval_sf(f, [Fraction(1)] * 3, POSRAT)
Fraction(1, 2)
>>> eval_sf(f, [1, 2, 3], TROPINT)
4
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Mapping, Sequence

import numpy as np


class SemifieldError(ValueError):
    pass


class Semifield(ABC):
    """Operations ``add``, ``mul``, ``inv``, ``one`` and the map from positive integers."""

    name: str

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def mul(self, a, b): ...

    @abstractmethod
    def inv(self, a): ...

    @property
    @abstractmethod
    def one(self): ...

    @abstractmethod
    def embed_posint(self, n: int):
        """Image of ``n >= 1``: the ``n``-fold semifield sum of ``one``."""

    @abstractmethod
    def coerce(self, x) -> Any:
        """Validate and normalize an element; raises SemifieldError."""

    @abstractmethod
    def to_json(self, x) -> Any: ...

    def from_json(self, x) -> Any:
        return self.coerce(x)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.inv(self.pow(a, -e))
        out = self.one
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def sum(self, values: Iterable):
        return reduce(self.add, values)

    def prod(self, values: Iterable):
        return reduce(self.mul, values, self.one)

    def repeated_sum(self, a, n: int):
        """Literal ``n``-fold sum ``a + ... + a``."""
        if n < 1:
            raise SemifieldError("a semifield has no empty sum")
        return self.sum([a] * n)

    def __repr__(self) -> str:
        return f"<semifield {self.name}>"

    def __reduce__(self):
        return (by_name, (self.name,))


class PosRat(Semifield):
    """Positive rationals with ordinary ``+`` and ``*``.

    The operations are written with Python operators only, so they also work on
    elements of exact rational function fields (used by the matrix oracle).
    """

    name = "posrat"

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a

    @property
    def one(self):
        return Fraction(1)

    def embed_posint(self, n: int):
        if n < 1:
            raise SemifieldError("embed_posint needs n >= 1")
        return Fraction(n)

    def coerce(self, x) -> Fraction:
        try:
            v = Fraction(x)
        except (TypeError, ValueError):
            raise SemifieldError(f"not a rational: {x!r}") from None
        if v <= 0:
            raise SemifieldError(f"posrat values must be > 0, got {v}")
        return v

    def to_json(self, x) -> str:
        return format_fraction(x)


class TropInt(Semifield):
    """Integers with ``min`` as addition and ``+`` as multiplication."""

    name = "tropint"

    def add(self, a, b):
        return min(a, b)

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    @property
    def one(self):
        return 0

    def embed_posint(self, n: int):
        if n < 1:
            raise SemifieldError("embed_posint needs n >= 1")
        return 0

    def coerce(self, x) -> int:
        if isinstance(x, bool):
            raise SemifieldError("booleans are not tropical integers")
        if isinstance(x, (int, np.integer)):
            return int(x)
        if isinstance(x, str) and x.strip().lstrip("-").isdigit():
            return int(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise SemifieldError(f"not an integer: {x!r}")

    def to_json(self, x) -> int:
        return int(x)


class TropArray(TropInt):
    """Tropical integers acting elementwise on numpy integer arrays (batch evaluation)."""

    name = "troparray"

    def add(self, a, b):
        return np.minimum(a, b)

    def coerce(self, x):
        return np.asarray(x, dtype=np.int64)


class Trivial(Semifield):
    name = "trivial"

    def add(self, a, b):
        return 1

    def mul(self, a, b):
        return 1

    def inv(self, a):
        return 1

    @property
    def one(self):
        return 1

    def embed_posint(self, n: int):
        if n < 1:
            raise SemifieldError("embed_posint needs n >= 1")
        return 1

    def coerce(self, x) -> int:
        if x not in (1, "1"):
            raise SemifieldError(f"the trivial semifield has only the element 1, got {x!r}")
        return 1

    def to_json(self, x) -> int:
        return 1


POSRAT = PosRat()
TROPINT = TropInt()
TROPARRAY = TropArray()
TRIVIAL = Trivial()

SEMIFIELDS = {K.name: K for K in (POSRAT, TROPINT, TRIVIAL)}


def by_name(name: str) -> Semifield:
    if name == TROPARRAY.name:
        return TROPARRAY
    try:
        return SEMIFIELDS[name]
    except KeyError:
        raise SemifieldError(f"unknown semifield {name!r}; choose from {sorted(SEMIFIELDS)}") from None


def format_fraction(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- subtraction-free polynomials ------------------------------------------


@dataclass(frozen=True)
class SFPoly:
    """Nonzero polynomial with positive integer coefficients.

    ``terms`` maps exponent tuples (all of length ``nvars``) to coefficients and
    is stored sorted.  Negative or zero coefficients are rejected at
    construction, so no value of this type can encode a subtraction.
    """

    terms: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        merged: dict[tuple[int, ...], int] = {}
        width = None
        for exps, coef in self.terms:
            exps = tuple(int(e) for e in exps)
            if width is None:
                width = len(exps)
            elif len(exps) != width:
                raise SemifieldError("exponent vectors of different lengths")
            if any(e < 0 for e in exps):
                raise SemifieldError("negative exponent in a polynomial")
            if isinstance(coef, bool) or int(coef) != coef or coef <= 0:
                raise SemifieldError(f"coefficients must be positive integers, got {coef!r}")
            merged[exps] = merged.get(exps, 0) + int(coef)
        if not merged:
            raise SemifieldError("the zero polynomial is not a semifield element")
        object.__setattr__(self, "terms", tuple(sorted(merged.items())))

    @classmethod
    def from_dict(cls, d: Mapping[Sequence[int], int]) -> "SFPoly":
        return cls(tuple((tuple(k), v) for k, v in d.items()))

    @classmethod
    def monomial(cls, exps: Sequence[int], coef: int = 1) -> "SFPoly":
        return cls(((tuple(exps), coef),))

    @property
    def nvars(self) -> int:
        return len(self.terms[0][0])

    def __add__(self, other: "SFPoly") -> "SFPoly":
        return SFPoly(self.terms + other.terms)

    def __mul__(self, other: "SFPoly") -> "SFPoly":
        return SFPoly(
            tuple(
                (tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
                for e1, c1 in self.terms
                for e2, c2 in other.terms
            )
        )

    def to_json(self) -> list:
        return [[c, list(e)] for e, c in self.terms]

    @classmethod
    def from_json(cls, data) -> "SFPoly":
        try:
            return cls(tuple((tuple(e), c) for c, e in data))
        except (TypeError, ValueError) as exc:
            raise SemifieldError(f"bad polynomial JSON: {exc}") from None


@dataclass(frozen=True)
class SFRational:
    """Quotient ``num / den`` of two subtraction-free polynomials."""

    num: SFPoly
    den: SFPoly

    def __post_init__(self):
        if self.num.nvars != self.den.nvars:
            raise SemifieldError("numerator and denominator use different variable counts")

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def parse(cls, data: Mapping) -> "SFRational":
        try:
            return cls(SFPoly.from_json(data["num"]), SFPoly.from_json(data["den"]))
        except KeyError as exc:
            raise SemifieldError(f"missing key {exc}") from None


def _check_point(x: Sequence, n: int) -> None:
    if len(x) != n:
        raise SemifieldError(f"expected {n} values, got {len(x)}")


def eval_poly(p: SFPoly, x: Sequence, K: Semifield):
    """Evaluate in ``K``: monomials via ``mul``, coefficient ``m`` as an ``m``-fold sum, terms via ``add``."""
    if not isinstance(p, SFPoly):
        raise SemifieldError("eval_poly needs an SFPoly")
    _check_point(x, p.nvars)
    values = []
    for exps, coef in p.terms:
        mono = K.prod(K.pow(xi, e) for xi, e in zip(x, exps) if e)
        values.append(K.mul(K.embed_posint(coef), mono))
    return K.sum(values)


def eval_sf(f: SFRational, x: Sequence, K: Semifield):
    return K.div(eval_poly(f.num, x, K), eval_poly(f.den, x, K))


def eval_field(p: SFPoly, x: Sequence, one):
    """Evaluate with ordinary ring operations (for rational function fields)."""
    _check_point(x, p.nvars)
    total = None
    for exps, coef in p.terms:
        term = one * coef
        for xi, e in zip(x, exps):
            if e:
                term = term * xi**e
        total = term if total is None else total + term
    return total
