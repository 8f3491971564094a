"""Cyclic, commuting and enhanced power graphs with bit-row adjacency."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import AbelianGroup, GroupError, TrivialGroup
from .kernel import FiniteGroup, bits
from .structure import center_mask

CYCLIC = "cyclic"
COMMUTING = "commuting"
ENHANCED_POWER = "enhanced_power"
KINDS = (CYCLIC, COMMUTING, ENHANCED_POWER)


@dataclass(frozen=True)
class Graph:
    """Undirected graph whose vertices are group elements.

    ``rows[i]`` is a bitmask over vertex *positions*: bit ``j`` is set when
    ``vertices[i]`` and ``vertices[j]`` are adjacent.
    """

    vertices: tuple[int, ...]
    rows: tuple[int, ...]
    kind: str = CYCLIC
    group_name: str = ""

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def degree(self, v: int) -> int:
        return self.rows[self.position[v]].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[self.position[u]] >> self.position[v] & 1)

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as label pairs ``(u, v)`` with ``u < v``, sorted."""
        vs = self.vertices
        out = []
        for i, row in enumerate(self.rows):
            for j in bits(row):
                u, v = vs[i], vs[j]
                if u < v:
                    out.append((u, v))
        return iter(sorted(out))

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def without_edge(self, u: int, v: int) -> Graph:
        """Copy with the edge ``u -- v`` removed (used for fault injection)."""
        i, j = self.position[u], self.position[v]
        rows = list(self.rows)
        rows[i] &= ~(1 << j)
        rows[j] &= ~(1 << i)
        return Graph(self.vertices, tuple(rows), self.kind, self.group_name)

    def check_invariants(self) -> None:
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise GroupError("duplicate vertex labels")
        for i, row in enumerate(self.rows):
            if row >> i & 1:
                raise GroupError(f"self-loop at {self.vertices[i]}")
            if row >> n:
                raise GroupError("row refers to a missing vertex")
            for j in bits(row):
                if not self.rows[j] >> i & 1:
                    raise GroupError(f"asymmetric edge {self.vertices[i]}--{self.vertices[j]}")


@dataclass(frozen=True)
class DiameterResult:
    tag: str  # "finite" | "disconnected" | "empty"
    value: int | None = None

    @classmethod
    def finite(cls, d: int) -> DiameterResult:
        return cls("finite", d)

    @property
    def is_finite(self) -> bool:
        return self.tag == "finite"

    def __str__(self) -> str:
        return f"finite({self.value})" if self.is_finite else self.tag


def _compress(mask: int, vertices: tuple[int, ...]) -> int:
    out = 0
    for pos, v in enumerate(vertices):
        if mask >> v & 1:
            out |= 1 << pos
    return out


def _element_graph(G: FiniteGroup, elem_rows: list[int], vertices: tuple[int, ...], kind: str) -> Graph:
    rows = []
    # vertices are ascending; a contiguous run maps to positions by a shift
    if not vertices or vertices[-1] - vertices[0] == len(vertices) - 1:
        shift = vertices[0] if vertices else 0
        keep = (1 << len(vertices)) - 1
        for pos, v in enumerate(vertices):
            rows.append((elem_rows[v] >> shift) & keep & ~(1 << pos))
    else:
        for pos, v in enumerate(vertices):
            rows.append(_compress(elem_rows[v], vertices) & ~(1 << pos))
    return Graph(vertices, tuple(rows), kind, G.name)


def _cyclic_rows(G: FiniteGroup) -> list[int]:
    """``rows[x]``: elements y with <x, y> cyclic, i.e. lying in a common cyclic subgroup."""
    rows = [0] * G.order
    for m in set(G.cyclic_mask(z) for z in range(G.order)):
        for x in bits(m):
            rows[x] |= m
    return rows


def cyclic_graph(G: FiniteGroup) -> Graph:
    if G.order < 2:
        raise TrivialGroup("the cyclic graph of the trivial group has no vertices")
    return _element_graph(G, _cyclic_rows(G), tuple(range(1, G.order)), CYCLIC)


def enhanced_power_graph(G: FiniteGroup) -> Graph:
    return _element_graph(G, _cyclic_rows(G), tuple(range(G.order)), ENHANCED_POWER)


def commuting_graph(G: FiniteGroup) -> Graph:
    if G.is_abelian:
        raise AbelianGroup("the commuting graph is defined for nonabelian groups only")
    z = center_mask(G)
    vertices = tuple(x for x in range(G.order) if not z >> x & 1)
    return _element_graph(G, G.commute_masks, vertices, COMMUTING)


def _components_positions(graph: Graph) -> list[int]:
    rows = graph.rows
    unseen = (1 << len(rows)) - 1
    comps = []
    while unseen:
        low = unseen & -unseen
        comp = frontier = low
        while frontier:
            nxt = 0
            for i in bits(frontier):
                nxt |= rows[i]
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        unseen &= ~comp
    return comps


def connected_components(graph: Graph) -> list[tuple[int, ...]]:
    """Components as sorted label tuples, ordered by least label."""
    vs = graph.vertices
    comps = [tuple(sorted(vs[i] for i in bits(c))) for c in _components_positions(graph)]
    return sorted(comps)


def eccentricity(graph: Graph, pos: int) -> int | None:
    """BFS eccentricity of the vertex at ``pos``; None if some vertex is unreachable."""
    rows = graph.rows
    full = (1 << len(rows)) - 1
    seen = frontier = 1 << pos
    depth = 0
    while seen != full:
        nxt = 0
        for i in bits(frontier):
            nxt |= rows[i]
        frontier = nxt & ~seen
        if not frontier:
            return None
        seen |= frontier
        depth += 1
    return depth


def diameter(graph: Graph) -> DiameterResult:
    n = len(graph.vertices)
    if n == 0:
        return DiameterResult("empty")
    best = 0
    for pos in range(n):
        e = eccentricity(graph, pos)
        if e is None:
            return DiameterResult("disconnected")
        best = max(best, e)
    return DiameterResult.finite(best)


def dominating_vertices(graph: Graph) -> list[int]:
    want = len(graph.vertices) - 1
    return [v for v, row in zip(graph.vertices, graph.rows) if row.bit_count() == want]


# -- export -----------------------------------------------------------------

def to_dot(graph: Graph, orders: list[int] | None = None) -> str:
    title = f"{graph.kind}({graph.group_name})" if graph.group_name else graph.kind
    lines = [f'graph "{title}" {{']
    for v in graph.vertices:
        label = f"{v} (o={orders[v]})" if orders is not None else str(v)
        lines.append(f'  {v} [label="{label}"];')
    for u, v in graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(graph: Graph, path: str | os.PathLike, orders: list[int] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_dot(graph, orders))


def to_edge_list(graph: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in graph.edges())


def export_edge_list(graph: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_edge_list(graph))


_NODE = re.compile(r"^\s*(\d+)\s*\[")
_EDGE = re.compile(r"^\s*(\d+)\s*(?:--)?\s+(?:--\s*)?(\d+)\s*;?\s*$")


def read_edge_list(path: str | os.PathLike) -> tuple[list[int], list[tuple[int, int]]]:
    """Read vertices and sorted edges from an edge list or from DOT written by :func:`export_dot`.

    Plain edge lists carry no isolated vertices, so the vertex list is then
    just the union of edge endpoints.
    """
    vertices: set[int] = set()
    edges = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            m = _NODE.match(line)
            if m:
                vertices.add(int(m.group(1)))
                continue
            m = _EDGE.match(line)
            if m:
                u, v = sorted((int(m.group(1)), int(m.group(2))))
                edges.append((u, v))
                vertices.update((u, v))
    return sorted(vertices), sorted(edges)
