"""Effective graphs, finite truncations and the brute-force component oracle."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from . import _kernels

VertexPred = Callable[[int], bool]
EdgePred = Callable[[int, int], bool]


@dataclass(frozen=True)
class EffectiveGraph:
    """A countable graph given by decidable predicates on natural-number codes.

    ``neighbor_hint(v)``, when given, returns a finite iterable of candidate
    neighbours. It only has to *cover* the edges: for every edge ``{a, b}``
    either ``b in neighbor_hint(a)`` or ``a in neighbor_hint(b)``. Candidates
    are always confirmed with ``edge_pred``.

    ``vertex_bound`` marks a finite graph whose vertex codes are all below it.
    """

    vertex_pred: VertexPred
    edge_pred: EdgePred
    bound: Callable[[int], int] | None = None
    neighbor_hint: Callable[[int], Iterable[int]] | None = None
    labeler: Callable[[int], str] | None = None
    vertex_bound: int | None = None
    name: str = "graph"

    def is_vertex(self, v: int) -> bool:
        if v < 0 or (self.vertex_bound is not None and v >= self.vertex_bound):
            return False
        return bool(self.vertex_pred(v))

    def is_edge(self, a: int, b: int) -> bool:
        if a == b:
            return False
        return bool(self.edge_pred(a, b))

    def vertices_below(self, limit: int) -> list[int]:
        if self.vertex_bound is not None:
            limit = min(limit, self.vertex_bound)
        return [v for v in range(limit) if self.is_vertex(v)]


def finite_graph(n: int, edges: Iterable[tuple[int, int]], name: str = "finite") -> EffectiveGraph:
    """Graph on vertices ``0..n-1`` with the given undirected edges."""
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for a, b in edges:
        if a == b:
            raise ValueError(f"self-loop at {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"edge ({a}, {b}) leaves vertex range {n}")
        adj[a].add(b)
        adj[b].add(a)
    frozen = {v: frozenset(ns) for v, ns in adj.items()}
    return EffectiveGraph(
        vertex_pred=lambda v: 0 <= v < n,
        edge_pred=lambda a, b: a in frozen and b in frozen[a],
        neighbor_hint=lambda v: frozen.get(v, ()),
        vertex_bound=n,
        name=name,
    )


@dataclass(frozen=True)
class GraphSlice:
    """Finite induced subgraph: an ordered vertex list plus its edges, each
    stored once as ``(a, b)`` with ``a < b``."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    labels: Mapping[int, str] = field(default_factory=dict, compare=False)

    def __contains__(self, v: int) -> bool:
        return v in self.vertex_set

    @property
    def vertex_set(self) -> frozenset[int]:
        vs = self.__dict__.get("_vset")
        if vs is None:
            vs = frozenset(self.vertices)
            object.__setattr__(self, "_vset", vs)
        return vs

    @property
    def adjacency(self) -> dict[int, list[int]]:
        adj = self.__dict__.get("_adj")
        if adj is None:
            adj = {v: [] for v in self.vertices}
            for a, b in sorted(self.edges):
                adj[a].append(b)
                adj[b].append(a)
            object.__setattr__(self, "_adj", adj)
        return adj

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges


def slice_graph(g: EffectiveGraph, vertex_list: Iterable[int]) -> GraphSlice:
    """Induced truncation of ``g`` on ``vertex_list``.

    Raises ``ValueError`` if a listed natural is not a vertex of ``g``.
    """
    verts: list[int] = []
    seen: set[int] = set()
    for v in vertex_list:
        if v in seen:
            continue
        if not g.is_vertex(v):
            raise ValueError(f"{v} is not a vertex of {g.name}")
        seen.add(v)
        verts.append(v)
    edges: set[tuple[int, int]] = set()
    if g.neighbor_hint is not None:
        for a in verts:
            for b in g.neighbor_hint(a):
                if b != a and b in seen and g.is_edge(a, b):
                    edges.add((min(a, b), max(a, b)))
    else:
        for x, a in enumerate(verts):
            for b in verts[x + 1:]:
                if g.is_edge(a, b):
                    edges.add((min(a, b), max(a, b)))
    labels = {v: g.labeler(v) for v in verts} if g.labeler is not None else {}
    return GraphSlice(tuple(verts), frozenset(edges), labels)


def slice_graph_bruteforce(g: EffectiveGraph, vertex_list: Iterable[int]) -> GraphSlice:
    """Pairwise scan of ``edge_pred`` ignoring any neighbour hint."""
    plain = EffectiveGraph(g.vertex_pred, g.edge_pred, labeler=g.labeler,
                           vertex_bound=g.vertex_bound, name=g.name)
    return slice_graph(plain, vertex_list)


@dataclass(frozen=True)
class ComponentTable:
    """Exact component partition of a slice. Blocks are sorted by their least
    vertex, which is also the representative."""

    representative: Mapping[int, int]
    blocks: tuple[frozenset[int], ...]

    def __contains__(self, v: int) -> bool:
        return v in self.representative

    def block_of(self, v: int) -> frozenset[int]:
        rep = self.representative[v]
        return self._by_rep[rep]

    @property
    def _by_rep(self) -> dict[int, frozenset[int]]:
        d = self.__dict__.get("_rep_index")
        if d is None:
            d = {min(b): b for b in self.blocks}
            object.__setattr__(self, "_rep_index", d)
        return d

    def same(self, u: int, v: int) -> bool:
        return self.representative[u] == self.representative[v]


def components(s: GraphSlice) -> ComponentTable:
    verts = sorted(s.vertices)
    index = {v: k for k, v in enumerate(verts)}
    if s.edges:
        edge_arr = np.array([(index[a], index[b]) for a, b in s.edges], dtype=np.int64)
    else:
        edge_arr = np.zeros((0, 2), dtype=np.int64)
    labels = _kernels.label_components(len(verts), edge_arr)
    representative = {v: verts[int(labels[k])] for k, v in enumerate(verts)}
    groups: dict[int, list[int]] = {}
    for v in verts:
        groups.setdefault(representative[v], []).append(v)
    blocks = tuple(frozenset(groups[r]) for r in sorted(groups))
    return ComponentTable(representative, blocks)


def find_path(s: GraphSlice, u: int, v: int) -> tuple[int, ...] | None:
    """Shortest path from ``u`` to ``v`` inside the slice, or ``None``."""
    for x in (u, v):
        if x not in s:
            raise KeyError(f"vertex {x} not in slice")
    if u == v:
        return (u,)
    adj = s.adjacency
    prev = {u: u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y in prev:
                continue
            prev[y] = x
            if y == v:
                path = [v]
                while path[-1] != u:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            queue.append(y)
    return None


def is_path(g: EffectiveGraph | GraphSlice, path: Iterable[int]) -> bool:
    path = tuple(path)
    if not path:
        return False
    if isinstance(g, GraphSlice):
        return all(p in g for p in path) and all(
            g.has_edge(a, b) for a, b in zip(path, path[1:]))
    return all(g.is_vertex(p) for p in path) and all(
        g.is_edge(a, b) for a, b in zip(path, path[1:]))


def is_acyclic(s: GraphSlice) -> bool:
    # a simple graph is a forest iff |E| = |V| - #components
    table = components(s)
    return len(s.edges) == len(s.vertices) - len(table.blocks)


def check_bounded(s: GraphSlice, h: Callable[[int], int]) -> bool:
    """Every edge ``(a, b)`` satisfies ``b < h(a)`` and ``a < h(b)``."""
    return all(b < h(a) and a < h(b) for a, b in s.edges)


def iter_edges_sorted(s: GraphSlice) -> Iterator[tuple[int, int]]:
    return iter(sorted(s.edges))


def export_dot(s: GraphSlice, labels: Mapping[int, str] | None = None, name: str = "G") -> str:
    labels = s.labels if labels is None else labels
    lines = [f"graph {name} {{"]
    for v in sorted(s.vertices):
        if v in labels:
            lines.append(f'  {v} [label="{labels[v]}"];')
        else:
            lines.append(f"  {v};")
    for a, b in iter_edges_sorted(s):
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(s: GraphSlice, labels: Mapping[int, str] | None = None) -> str:
    labels = s.labels if labels is None else labels
    doc = {
        "vertices": sorted(s.vertices),
        "edges": [[a, b] for a, b in iter_edges_sorted(s)],
        "labels": {str(v): labels[v] for v in sorted(labels) if v in s},
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"
