"""Graphs, positive harmonic functions, simply-laced Dynkin diagrams, Cartan matrices.

A graph carrying a positive integer harmonic function (``2 h(i)`` equals the sum
of ``h`` over the neighbours of ``i``) is an affine ADE graph; deleting a vertex
where ``h`` is 1 leaves a finite ADE diagram.

>>> g = cycle_graph(3)
>>> find_harmonic(g)
{'1': 1, '2': 1, '3': 1}
>>> delete_low_vertex(g, find_harmonic(g), "1").vertices
('2', '3')
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from . import linalg


class GraphError(ValueError):
    """Malformed graph input (self-loop, unknown vertex, empty, ...)."""


class DisconnectedGraphError(GraphError):
    pass


class NotADiagramError(GraphError):
    """The graph is not a simply-laced finite-type Dynkin diagram."""


@dataclass(frozen=True)
class Graph:
    """Finite simple graph with opaque string vertex names, kept in input order."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]] = field(default_factory=frozenset)

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex names")
        edges = set()
        for e in self.edges:
            pair = frozenset(str(v) for v in e)
            if len(pair) != 2:
                raise GraphError(f"self-loop or malformed edge {sorted(e)}")
            if not pair <= set(verts):
                raise GraphError(f"edge {sorted(pair)} uses an unknown vertex")
            edges.add(pair)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable[Iterable]) -> "Graph":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self, v: str) -> list[str]:
        return [u for u in self.vertices if self.adjacent(u, v)]

    def adjacency(self) -> list[list[int]]:
        return [[1 if self.adjacent(u, v) else 0 for v in self.vertices] for u in self.vertices]

    def components(self) -> list[list[str]]:
        seen: set[str] = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.neighbours(v):
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append([v for v in self.vertices if v in comp])
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def induced(self, keep: Iterable[str]) -> "Graph":
        keep = set(keep)
        verts = tuple(v for v in self.vertices if v in keep)
        return Graph(verts, frozenset(e for e in self.edges if e <= keep))

    def to_json(self) -> dict:
        edges = sorted(sorted(e, key=self.index) for e in self.edges)
        return {"vertices": list(self.vertices), "edges": edges}

    @classmethod
    def from_json(cls, data: Mapping) -> "Graph":
        try:
            return cls.from_edges(data["vertices"], data.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"bad graph JSON: {exc}") from None


def load_graph(path: str | Path) -> Graph:
    return Graph.from_json(json.loads(Path(path).read_text()))


# -- harmonic functions ------------------------------------------------------


def find_harmonic(g: Graph) -> dict[str, int] | None:
    """Positive integer harmonic function normalized to minimum 1, or None.

    Solved exactly as the kernel of ``2 Id - adjacency``.  For a connected graph
    a positive kernel vector is unique up to scaling when it exists.
    """
    if not g.vertices:
        raise GraphError("empty graph")
    if not g.is_connected():
        raise DisconnectedGraphError("harmonic functions are only defined here for connected graphs")
    n = g.rank
    adj = g.adjacency()
    m = [[(2 if r == c else 0) - adj[r][c] for c in range(n)] for r in range(n)]
    kernel = linalg.nullspace(m)
    if len(kernel) != 1:
        return None
    vec = kernel[0]
    if all(x < 0 for x in vec):
        vec = [-x for x in vec]
    if not all(x > 0 for x in vec):
        return None
    denom = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * denom) for x in vec]
    g_ = math.gcd(*ints)
    ints = [x // g_ for x in ints]
    if min(ints) != 1:
        return None
    return dict(zip(g.vertices, ints))


def is_harmonic(g: Graph, h: Mapping[str, int]) -> bool:
    return all(2 * h[v] == sum(h[u] for u in g.neighbours(v)) for v in g.vertices)


def delete_low_vertex(g: Graph, h: Mapping[str, int], v: str) -> Graph:
    g.index(v)
    if h.get(v) != 1:
        raise GraphError(f"h({v}) = {h.get(v)}; only a vertex with h = 1 may be removed")
    out = g.induced(u for u in g.vertices if u != v)
    require_diagram(out)
    return out


# -- finite type diagrams ----------------------------------------------------


def cartan(g: Graph) -> list[list[int]]:
    """Cartan matrix in the vertex order of ``g``: 2 on the diagonal, -1 on edges."""
    require_diagram(g)
    return _cartan_entries(g)


def _cartan_entries(g: Graph) -> list[list[int]]:
    return [
        [2 if u == v else (-1 if g.adjacent(u, v) else 0) for v in g.vertices]
        for u in g.vertices
    ]


def is_diagram(g: Graph) -> bool:
    """Nonempty and positive definite Cartan matrix, i.e. a disjoint union of ADE diagrams."""
    if not g.vertices:
        return False
    mat = [[Fraction(x) for x in row] for row in _cartan_entries(g)]
    return all(m > 0 for m in linalg.leading_minors(mat))


def require_diagram(g: Graph) -> None:
    if not is_diagram(g):
        raise NotADiagramError(f"graph on {list(g.vertices)} is not a simply-laced Dynkin diagram")


def diagram_type(g: Graph) -> str:
    """Cartan type label such as ``'E8'`` or ``'A1xA1'``."""
    require_diagram(g)
    labels = []
    for comp in g.components():
        sub = g.induced(comp)
        n = len(comp)
        degrees = {v: len(sub.neighbours(v)) for v in comp}
        branch = [v for v, d in degrees.items() if d == 3]
        if not branch:
            labels.append(f"A{n}")
            continue
        arms = sorted(_arm_length(sub, branch[0], u) for u in sub.neighbours(branch[0]))
        if arms[0] == 1 and arms[1] == 1:
            labels.append(f"D{n}")
        else:
            labels.append(f"E{n}")
    return "x".join(labels)


def _arm_length(g: Graph, centre: str, start: str) -> int:
    length, prev, cur = 1, centre, start
    while True:
        nxt = [u for u in g.neighbours(cur) if u != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


def path_order(g: Graph) -> list[str]:
    """Vertices of a path graph from one end to the other (type A only).

    The walk starts at the end vertex that comes first in the input order.
    """
    if g.rank == 1:
        return list(g.vertices)
    if not g.is_connected() or any(len(g.neighbours(v)) > 2 for v in g.vertices) or len(g.edges) != g.rank - 1:
        raise NotADiagramError("not a path graph (type A)")
    start = next(v for v in g.vertices if len(g.neighbours(v)) == 1)
    order, prev = [start], None
    while len(order) < g.rank:
        nxt = [u for u in g.neighbours(order[-1]) if u != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def is_type_a(g: Graph) -> bool:
    try:
        path_order(g)
    except NotADiagramError:
        return False
    return True


# -- named graphs ------------------------------------------------------------


def path_graph(names: Iterable[str]) -> Graph:
    names = list(names)
    return Graph.from_edges(names, zip(names, names[1:]))


def cycle_graph(n: int) -> Graph:
    names = [str(k) for k in range(1, n + 1)]
    return Graph.from_edges(names, [(names[k], names[(k + 1) % n]) for k in range(n)])


def type_a(n: int) -> Graph:
    if n == 1:
        return Graph(("i",))
    if n == 2:
        return path_graph(["i", "j"])
    return path_graph(str(k) for k in range(1, n + 1))


def type_d(n: int) -> Graph:
    if n < 4:
        raise GraphError("D_n needs n >= 4")
    names = [str(k) for k in range(1, n + 1)]
    edges = list(zip(names[: n - 1], names[1 : n - 1])) + [(names[n - 3], names[n - 1])]
    return Graph.from_edges(names, edges)


def type_e(n: int) -> Graph:
    """Bourbaki labelling: chain 1-3-4-5-..., with 2 attached to 4."""
    if n not in (6, 7, 8):
        raise GraphError("E_n needs n in 6, 7, 8")
    names = [str(k) for k in range(1, n + 1)]
    chain = ["1"] + [str(k) for k in range(3, n + 1)]
    return Graph.from_edges(names, list(zip(chain, chain[1:])) + [("2", "4")])


def named_diagram(name: str) -> Graph:
    """Diagram for labels like ``A3``, ``D4``, ``E8`` or products ``A1xA1``."""
    parts = name.strip().upper().split("X")
    graphs = []
    for part in parts:
        if len(part) < 2 or part[0] not in "ADE" or not part[1:].isdigit():
            raise GraphError(f"unknown diagram name {name!r}")
        kind, n = part[0], int(part[1:])
        if n < 1:
            raise GraphError(f"unknown diagram name {name!r}")
        graphs.append({"A": type_a, "D": type_d, "E": type_e}[kind](n))
    if len(graphs) == 1:
        return graphs[0]
    if all(g.rank == 1 for g in graphs) and len(graphs) <= 3:
        names = ["i", "j", "k"][: len(graphs)]
        return Graph(tuple(names))
    return disjoint_union(graphs)


def disjoint_union(graphs: list[Graph]) -> Graph:
    verts, edges = [], []
    for idx, g in enumerate(graphs, start=1):
        rename = {v: f"{v}.{idx}" for v in g.vertices}
        verts += [rename[v] for v in g.vertices]
        edges += [[rename[v] for v in e] for e in g.edges]
    return Graph.from_edges(verts, edges)


def affine_graph(kind: str, n: int) -> Graph:
    """Structural affine ADE graph with ``n + 1`` vertices (the extra one named ``'0'``).

    Built from the arm shapes directly, without any root system computation.
    """
    if kind == "A":
        if n < 2:
            raise GraphError("affine A_n needs n >= 2 for a simple graph")
        g = cycle_graph(n + 1)
        return Graph.from_edges(
            [str(int(v) - 1) for v in g.vertices],
            [[str(int(v) - 1) for v in e] for e in g.edges],
        )
    if kind == "D":
        base = type_d(n)
        return Graph.from_edges(("0",) + base.vertices, list(base.edges) + [("0", "2")])
    if kind == "E":
        base = type_e(n)
        attach = {6: "2", 7: "1", 8: "8"}[n]
        return Graph.from_edges(("0",) + base.vertices, list(base.edges) + [("0", attach)])
    raise GraphError(f"unknown affine kind {kind!r}")


def affine_e8_display_graph() -> Graph:
    """The nine-vertex graph drawn as a chain of eight with a branch under the sixth."""
    chain = [f"c{k}" for k in range(1, 9)]
    return Graph.from_edges(chain + ["b"], list(zip(chain, chain[1:])) + [("c6", "b")])
