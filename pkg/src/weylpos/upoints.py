"""Points of U_K as coordinate vectors in one chart (a reduced word of w0).

A point stores a single chart; any other chart is reached by braid moves,
each of which transforms a window of coordinates by a subtraction-free map

    3-move  (a, b, c)  <->  (bc/(a+c), a+c, ab/(a+c))
    2-move  (a, b)     <->  (b, a)

evaluated in the point's semifield.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .diagrams import Graph
from .semifields import POSRAT, TROPINT, Semifield, SemifieldError
from .weyl import Move, WeylGroup, Word, WordError, weyl_group


def braid_move(kind: int, window: Sequence, K: Semifield) -> tuple:
    """Apply one braid move to a coordinate window; both moves are involutions."""
    if kind == 2:
        if len(window) != 2:
            raise ValueError("a 2-move acts on a window of length 2")
        a, b = window
        return (b, a)
    if kind == 3:
        if len(window) != 3:
            raise ValueError("a 3-move acts on a window of length 3")
        a, b, c = window
        s = K.add(a, c)
        si = K.inv(s)
        return (K.mul(K.mul(b, c), si), s, K.mul(K.mul(a, b), si))
    raise ValueError(f"unknown move kind {kind!r}")


def apply_coordinate_moves(coords: Sequence, moves: Sequence[Move], K: Semifield) -> list:
    out = list(coords)
    for mv in moves:
        p = mv.pos
        out[p : p + mv.kind] = braid_move(mv.kind, out[p : p + mv.kind], K)
    return out


@dataclass(frozen=True, eq=False)
class UPoint:
    """Element of U_K given by coordinates ``coords`` in the chart ``word``.

    Equality compares coordinates after moving both points to the reference
    (greedy) word of the diagram.
    """

    weyl: WeylGroup
    K: Semifield
    word: Word
    coords: tuple

    def __post_init__(self):
        word = self.weyl.check_word(self.word)
        if len(self.coords) != len(word):
            raise ValueError(f"{len(self.coords)} coordinates for a word of length {len(word)}")
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "coords", tuple(self.K.coerce(c) for c in self.coords))

    @classmethod
    def make(cls, diagram: Graph, K: Semifield, word: Sequence[str], coords: Sequence) -> "UPoint":
        return cls(weyl_group(diagram), K, tuple(word), tuple(coords))

    def _replace(self, word: Sequence[str], coords: Sequence) -> "UPoint":
        return UPoint(self.weyl, self.K, tuple(word), tuple(coords))

    def to(self, target: Sequence[str]) -> "UPoint":
        return transition(self, target)

    def canonical(self) -> tuple:
        return self.to(self.weyl.longest_word).coords

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UPoint):
            return NotImplemented
        if other.weyl.diagram != self.weyl.diagram or other.K is not self.K:
            return False
        return self.coords == other.to(self.word).coords

    def __hash__(self) -> int:
        return hash((self.weyl.diagram, self.K.name, self.canonical()))

    def __repr__(self) -> str:
        return f"UPoint({self.K.name}, word={list(self.word)}, coords={list(self.coords)})"

    def __mul__(self, other: "UPoint") -> "UPoint":
        return product(self, other)

    def to_json(self) -> dict:
        return {"word": list(self.word), "coords": [self.K.to_json(c) for c in self.coords]}

    @classmethod
    def from_json(cls, diagram: Graph, K: Semifield, data: Mapping) -> "UPoint":
        try:
            return cls.make(diagram, K, data["word"], [K.from_json(c) for c in data["coords"]])
        except KeyError as exc:
            raise ValueError(f"point JSON is missing {exc}") from None


def _same_diagram(x: UPoint, y: UPoint) -> None:
    if x.weyl.diagram != y.weyl.diagram:
        raise WordError("points belong to different diagrams")
    if x.K is not y.K:
        raise SemifieldError("points belong to different semifields")


def transition(x: UPoint, target: Sequence[str]) -> UPoint:
    """Change of chart along a braid path from ``x.word`` to ``target``."""
    target = x.weyl.check_word(target)
    if target == x.word:
        return x
    moves = x.weyl.braid_path(x.word, target)
    return x._replace(target, apply_coordinate_moves(x.coords, moves, x.K))


def psi(x: UPoint) -> UPoint:
    """Anti-automorphism: reversed coordinates in the reversed word."""
    return x._replace(x.word[::-1], x.coords[::-1])


def scale(p: Mapping[str, Any], x: UPoint) -> UPoint:
    """``S_p``: multiply the ``k``-th coordinate by ``p`` at the ``k``-th letter."""
    K = x.K
    return x._replace(x.word, [K.mul(K.coerce(p[i]), c) for i, c in zip(x.word, x.coords)])


def inverse_scaling(p: Mapping[str, Any], K: Semifield) -> dict[str, Any]:
    return {i: K.inv(K.coerce(v)) for i, v in p.items()}


def t_op(i: str, c, x: UPoint) -> UPoint:
    """``T_{i,c}``: move to a chart starting with ``i`` and multiply its first coordinate by ``c``."""
    word = x.word if x.word[0] == i else x.weyl.word_starting_with(i)
    y = transition(x, word)
    return y._replace(word, (x.K.mul(x.K.coerce(c), y.coords[0]),) + y.coords[1:])


def u_one(diagram: Graph, K: Semifield, word: Sequence[str] | None = None) -> UPoint:
    """``u(1)``: the heights of the positive coroots along a reduced word, embedded in ``K``."""
    W = weyl_group(diagram)
    word = W.longest_word if word is None else tuple(word)
    data = W.root_data(word)
    return UPoint(W, K, word, tuple(K.embed_posint(h) for h in data.heights))


def u_p(p: Mapping[str, Any], diagram: Graph, K: Semifield, word: Sequence[str] | None = None) -> UPoint:
    return scale(p, u_one(diagram, K, word))


def absorb(x: UPoint, i: str, a) -> UPoint:
    """Right-multiply by the generator ``i^a`` using ``i^b i^a = i^(b+a)``."""
    word = x.word if x.word[-1] == i else x.weyl.word_ending_in(i)
    y = transition(x, word)
    return y._replace(word, y.coords[:-1] + (x.K.add(y.coords[-1], x.K.coerce(a)),))


def product(x: UPoint, y: UPoint) -> UPoint:
    _same_diagram(x, y)
    acc = x
    for i, a in zip(y.word, y.coords):
        acc = absorb(acc, i, a)
    return acc


def z_coord(i: str, x: UPoint):
    """Last coordinate in a chart whose word ends in ``i``."""
    word = x.word if x.word[-1] == i else x.weyl.word_ending_in(i)
    return transition(x, word).coords[-1]


def is_in_U_N(x: UPoint) -> bool:
    if x.K is not TROPINT:
        raise SemifieldError("is_in_U_N is defined for tropical points only")
    return all(c >= 0 for c in x.coords)


def constant_scaling(diagram: Graph, value) -> dict[str, Any]:
    return {i: value for i in diagram.vertices}


__all__ = [
    "UPoint", "braid_move", "apply_coordinate_moves", "transition", "psi", "scale",
    "inverse_scaling", "t_op", "u_one", "u_p", "absorb", "product", "z_coord",
    "is_in_U_N", "constant_scaling", "POSRAT", "TROPINT",
]
