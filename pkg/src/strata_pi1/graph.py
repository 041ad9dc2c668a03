"""Dual graphs of the stratification by top cells and walls.

The top cells of the codimension-two complement are the all-ones patterns
(1^k); the walls between them are the patterns (1^i, 2, 1^j). The subdivided
graph has a vertex per cell and per wall; the multigraph contracts each wall
vertex into a labelled edge.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .compositions import canonical, enumerate_omega, sort_key
from .errors import PreconditionError


@dataclass(frozen=True)
class StrataGraph:
    vertices: tuple
    edges: tuple  # (u, v, label)
    subdivided: bool

    def degree(self, vertex) -> int:
        return sum((u == vertex) + (v == vertex) for u, v, _ in self.edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(self.vertices)

    def multiplicities(self) -> Counter:
        return Counter(frozenset((u, v)) for u, v, _ in self.edges)


def walls(d: int) -> list[tuple[int, int]]:
    """Valid wall indices (i, j): i + j <= d - 2 and i + j = d mod 2."""
    return [(i, s - i) for s in range(d % 2, d - 1, 2) for i in range(s + 1)]


def build_dual_graph(d: int, subdivided: bool = False) -> StrataGraph:
    if d < 2:
        raise PreconditionError("dual graph needs d >= 2")
    cells = enumerate_omega(d, eq=0)
    wall_set = set(enumerate_omega(d, eq=1))
    # a cell is joined to every wall one merge or insert below it
    half_edges = [(cell, w) for cell in cells for w in canonical(cell.descendants() & wall_set)]
    if subdivided:
        edges = [(cell, w, w) for cell, w in half_edges]
        vertices = tuple(canonical(list(cells) + list(wall_set)))
    else:
        ends: dict = {}
        for cell, w in half_edges:
            ends.setdefault(w, []).append(cell)
        edges = []
        for w, (a, b) in ends.items():
            low, high = sorted((a, b), key=sort_key)
            edges.append((low, high, w))
        vertices = tuple(cells)
    edges.sort(key=lambda e: (sort_key(e[2]), sort_key(e[0]), sort_key(e[1])))
    return StrataGraph(vertices, tuple(edges), subdivided)


def graph_rank(graph: StrataGraph) -> int:
    """First Betti number E - V + 1 of a connected graph."""
    if not graph.is_connected():
        raise PreconditionError("graph is disconnected")
    return len(graph.edges) - len(graph.vertices) + 1


def expected_rank(d: int) -> int:
    if d < 2:
        raise PreconditionError("expected_rank needs d >= 2")
    if d % 2 == 0:
        return d * (d - 2) // 4
    return (d - 1) ** 2 // 4


def to_dot(graph: StrataGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in graph.vertices:
        lines.append(f'  "{v}";')
    for u, v, label in graph.edges:
        lines.append(f'  "{u}" -- "{v}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(graph: StrataGraph) -> str:
    data = {
        "subdivided": graph.subdivided,
        "vertices": [list(v) for v in graph.vertices],
        "edges": [[list(u), list(v), list(label)] for u, v, label in graph.edges],
    }
    return json.dumps(data, sort_keys=True) + "\n"
