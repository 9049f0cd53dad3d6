"""Weyl group of a simply-laced diagram acting on its coroot lattice.

Group elements are permutations of the finite set of coroots (positive and
negative), so composition is tuple indexing and the length of ``w`` is the
number of positive coroots that ``w`` sends to negative ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .diagrams import Graph, GraphError, cartan, require_diagram

MAX_ROOT_RANK = 8
MAX_WORD_RANK = 4

Word = tuple[str, ...]
Perm = tuple[int, ...]


class CapabilityError(RuntimeError):
    """The requested feature is not available for this diagram (rank, type)."""


class WordError(ValueError):
    """A word is not a reduced expression of the longest element."""


@dataclass(frozen=True)
class Move:
    """A braid move at ``pos`` (0-based start of the window)."""

    kind: int  # 2: commutation ij <-> ji, 3: braid iji <-> jij
    pos: int


@dataclass(frozen=True)
class RootData:
    """Coroot coordinates along a reduced word.

    ``r[k][i]`` is the coefficient of the simple coroot ``i`` in the ``k``-th
    coroot ``s_{i_1} ... s_{i_{k-1}}(coroot_{i_k})``.
    """

    word: Word
    r: tuple[dict[str, int], ...]
    heights: tuple[int, ...]
    q: dict[str, int]


def apply_reflection(g: Graph, i: str, v: Mapping[str, Fraction | int]) -> dict[str, Fraction | int]:
    """``s_i`` on a coroot vector given as vertex -> coefficient."""
    g.index(i)
    for k in v:
        g.index(k)
    a = cartan(g)
    ii = g.index(i)
    out = {k: v.get(k, 0) for k in g.vertices}
    out[i] = out[i] - sum(a[ii][g.index(j)] * v.get(j, 0) for j in g.vertices)
    return out


class WeylGroup:
    """Coroot system and Weyl group of a simply-laced Dynkin diagram."""

    def __init__(self, diagram: Graph):
        require_diagram(diagram)
        if diagram.rank > MAX_ROOT_RANK:
            raise CapabilityError(f"rank {diagram.rank} exceeds the supported maximum {MAX_ROOT_RANK}")
        self.diagram = diagram
        self.vertices: Word = diagram.vertices
        self.cartan = cartan(diagram)
        self._vindex = {v: k for k, v in enumerate(self.vertices)}

    def __repr__(self) -> str:
        return f"WeylGroup({list(self.vertices)})"

    # -- coroots -------------------------------------------------------------

    @cached_property
    def coroots(self) -> list[tuple[int, ...]]:
        """All coroots, positive ones first (closure of the simple coroots under reflections)."""
        n = len(self.vertices)
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            v = queue.popleft()
            for i in range(n):
                w = self._reflect(i, v)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        # simple coroot k must sit at index k
        pos = sorted((v for v in seen if all(x >= 0 for x in v)), key=lambda v: (sum(v), [-x for x in v]))
        neg = [tuple(-x for x in v) for v in pos]
        assert len(pos) + len(neg) == len(seen)
        return pos + neg

    def _reflect(self, i: int, v: tuple[int, ...]) -> tuple[int, ...]:
        row = self.cartan[i]
        pairing = sum(row[j] * v[j] for j in range(len(v)))
        return tuple(x - pairing if k == i else x for k, x in enumerate(v))

    @cached_property
    def positive_coroots(self) -> list[tuple[int, ...]]:
        return self.coroots[: len(self.coroots) // 2]

    @cached_property
    def nu(self) -> int:
        return len(self.positive_coroots)

    @cached_property
    def _root_index(self) -> dict[tuple[int, ...], int]:
        return {v: k for k, v in enumerate(self.coroots)}

    def _is_positive(self, idx: int) -> bool:
        return idx < self.nu

    @cached_property
    def _simple_perms(self) -> list[Perm]:
        idx = self._root_index
        return [tuple(idx[self._reflect(i, v)] for v in self.coroots) for i in range(len(self.vertices))]

    @cached_property
    def identity(self) -> Perm:
        return tuple(range(len(self.coroots)))

    def letter(self, i: str) -> int:
        try:
            return self._vindex[i]
        except KeyError:
            raise GraphError(f"unknown vertex {i!r}") from None

    def element(self, word: Iterable[str]) -> Perm:
        w = self.identity
        for i in word:
            s = self._simple_perms[self.letter(i)]
            w = tuple(w[x] for x in s)
        return w

    def length(self, w: Perm) -> int:
        return sum(1 for k in range(self.nu) if not self._is_positive(w[k]))

    def is_right_descent(self, w: Perm, i: int) -> bool:
        return not self._is_positive(w[i])

    def reduced_word_of(self, w: Perm) -> Word:
        """Reduced word of ``w`` by stripping the smallest right descent repeatedly."""
        letters = []
        while self.length(w) > 0:
            i = next(k for k in range(len(self.vertices)) if self.is_right_descent(w, k))
            s = self._simple_perms[i]
            w = tuple(w[x] for x in s)
            letters.append(self.vertices[i])
        return tuple(reversed(letters))

    # -- longest element ---------------------------------------------------------

    @cached_property
    def longest_word(self) -> Word:
        """Greedy ascent: append the smallest ``i`` with ``l(w s_i) > l(w)``."""
        w = self.identity
        word = []
        n = len(self.vertices)
        while True:
            i = next((k for k in range(n) if not self.is_right_descent(w, k)), None)
            if i is None:
                break
            s = self._simple_perms[i]
            w = tuple(w[x] for x in s)
            word.append(self.vertices[i])
        assert len(word) == self.nu
        return tuple(word)

    @cached_property
    def w0(self) -> Perm:
        return self.element(self.longest_word)

    @cached_property
    def bang(self) -> dict[str, str]:
        """The involution ``i -> i!`` with ``w0 s_i w0 = s_{i!}``, read off from ``w0(coroot_i) = -coroot_{i!}``."""
        out = {}
        for k, v in enumerate(self.vertices):
            image = self.coroots[self.w0[k]]
            j = next(j for j, x in enumerate(image) if x != 0)
            assert image[j] == -1 and sum(image) == -1
            out[v] = self.vertices[j]
        return out

    def is_reduced_longest(self, word: Sequence[str]) -> bool:
        if len(word) != self.nu:
            return False
        try:
            return self.length(self.element(word)) == self.nu
        except GraphError:
            return False

    def check_word(self, word: Sequence[str]) -> Word:
        word = tuple(word)
        if not self.is_reduced_longest(word):
            raise WordError(f"{list(word)} is not a reduced word for the longest element")
        return word

    def word_ending_in(self, i: str) -> Word:
        return self._word_ending_in(i)

    @lru_cache(maxsize=None)
    def _word_ending_in(self, i: str) -> Word:
        s = self._simple_perms[self.letter(i)]
        return self.reduced_word_of(tuple(self.w0[x] for x in s)) + (i,)

    def word_starting_with(self, i: str) -> Word:
        return self._word_starting_with(i)

    @lru_cache(maxsize=None)
    def _word_starting_with(self, i: str) -> Word:
        s = self._simple_perms[self.letter(i)]
        return (i,) + self.reduced_word_of(tuple(s[x] for x in self.w0))

    # -- root data -----------------------------------------------------------

    def root_data(self, word: Sequence[str]) -> RootData:
        word = self.check_word(word)
        w = self.identity
        rows = []
        for i in word:
            k = self.letter(i)
            vec = self.coroots[w[k]]
            assert all(x >= 0 for x in vec)
            rows.append(dict(zip(self.vertices, vec)))
            s = self._simple_perms[k]
            w = tuple(w[x] for x in s)
        heights = tuple(sum(r.values()) for r in rows)
        q = {v: sum(r[v] for r in rows) for v in self.vertices}
        return RootData(word, tuple(rows), heights, q)

    @cached_property
    def q(self) -> dict[str, int]:
        return self.root_data(self.longest_word).q

    @cached_property
    def highest_coroot(self) -> tuple[int, ...]:
        return max(self.positive_coroots, key=sum)

    # -- reduced words and braid moves --------------------------------------

    def _require_words(self) -> None:
        if len(self.vertices) > MAX_WORD_RANK:
            raise CapabilityError(
                f"reduced-word enumeration is limited to rank <= {MAX_WORD_RANK} (got {len(self.vertices)})"
            )

    @cached_property
    def reduced_words(self) -> list[Word]:
        """All reduced words of ``w0``, sorted by vertex order."""
        self._require_words()
        n = len(self.vertices)
        out: list[Word] = []

        def extend(w: Perm, prefix: list[str]) -> None:
            if len(prefix) == self.nu:
                out.append(tuple(prefix))
                return
            for k in range(n):
                if not self.is_right_descent(w, k):
                    s = self._simple_perms[k]
                    prefix.append(self.vertices[k])
                    extend(tuple(w[x] for x in s), prefix)
                    prefix.pop()

        extend(self.identity, [])
        return out

    def moves_from(self, word: Word) -> list[tuple[Move, Word]]:
        out = []
        for p in range(len(word) - 1):
            a, b = word[p], word[p + 1]
            if a == b:
                continue
            if not self.diagram.adjacent(a, b):
                out.append((Move(2, p), word[:p] + (b, a) + word[p + 2 :]))
            elif p + 2 < len(word) and word[p + 2] == a:
                out.append((Move(3, p), word[:p] + (b, a, b) + word[p + 3 :]))
        return out

    def braid_path(self, w1: Sequence[str], w2: Sequence[str]) -> tuple[Move, ...]:
        """Shortest sequence of braid moves from ``w1`` to ``w2`` (breadth-first search)."""
        self._require_words()
        return self._braid_path(self.check_word(w1), self.check_word(w2))

    @lru_cache(maxsize=None)
    def _braid_path(self, w1: Word, w2: Word) -> tuple[Move, ...]:
        if w1 == w2:
            return ()
        parent: dict[Word, tuple[Word, Move] | None] = {w1: None}
        queue = deque([w1])
        while queue:
            cur = queue.popleft()
            for move, nxt in self.moves_from(cur):
                if nxt in parent:
                    continue
                parent[nxt] = (cur, move)
                if nxt == w2:
                    path = []
                    node = nxt
                    while parent[node] is not None:
                        prev, mv = parent[node]
                        path.append(mv)
                        node = prev
                    return tuple(reversed(path))
                queue.append(nxt)
        raise WordError(f"no braid path from {list(w1)} to {list(w2)}")

    def move_graph_diameter(self) -> int:
        words = self.reduced_words
        best = 0
        for w in words:
            dist = {w: 0}
            queue = deque([w])
            while queue:
                cur = queue.popleft()
                for _, nxt in self.moves_from(cur):
                    if nxt not in dist:
                        dist[nxt] = dist[cur] + 1
                        queue.append(nxt)
            best = max(best, max(dist.values()))
        return best


def apply_moves(word: Sequence[str], moves: Iterable[Move]) -> Word:
    word = list(word)
    for mv in moves:
        p = mv.pos
        if mv.kind == 2:
            word[p], word[p + 1] = word[p + 1], word[p]
        else:
            a, b = word[p], word[p + 1]
            word[p : p + 3] = [b, a, b]
    return tuple(word)


@lru_cache(maxsize=64)
def weyl_group(diagram: Graph) -> WeylGroup:
    """Shared, cached :class:`WeylGroup` per diagram."""
    return WeylGroup(diagram)


def longest_element(diagram: Graph) -> tuple[Word, int]:
    W = weyl_group(diagram)
    return W.longest_word, W.nu


def bang_involution(diagram: Graph) -> dict[str, str]:
    return dict(weyl_group(diagram).bang)


def root_data(diagram: Graph, word: Sequence[str]) -> RootData:
    return weyl_group(diagram).root_data(word)


def reduced_words(diagram: Graph) -> list[Word]:
    return list(weyl_group(diagram).reduced_words)


def braid_path(diagram: Graph, w1: Sequence[str], w2: Sequence[str]) -> tuple[Move, ...]:
    return weyl_group(diagram).braid_path(w1, w2)


def affine_extension(diagram: Graph, name: str = "0") -> Graph:
    """Attach the extra vertex of the affine diagram via the highest coroot.

    The new vertex is joined to every ``j`` with ``<highest, coroot_j> = 1``
    (the pairing is -2 for A1, whose affine graph is not simple).
    """
    W = weyl_group(diagram)
    theta = W.highest_coroot
    pairings = [sum(W.cartan[j][k] * theta[k] for k in range(len(theta))) for j in range(len(theta))]
    if any(p > 1 for p in pairings):
        raise CapabilityError("affine extension of A1 has a double edge")
    attach = [W.vertices[j] for j, p in enumerate(pairings) if p == 1]
    return Graph.from_edges(
        (name,) + diagram.vertices, list(diagram.edges) + [(name, v) for v in attach]
    )


__all__ = [
    "CapabilityError", "WordError", "Move", "RootData", "WeylGroup", "weyl_group",
    "apply_reflection", "longest_element", "bang_involution", "root_data",
    "reduced_words", "braid_path", "apply_moves", "affine_extension",
]
