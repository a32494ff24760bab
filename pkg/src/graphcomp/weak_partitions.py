"""Enumerated families of sets that cover N and are pairwise equal or
disjoint, the graph built from such a family, and the translations between
blocks of the family and components of graphs."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .codec import Horizon, pair, unpair
from .errors import Inconclusive
from .graph import ComponentTable, EffectiveGraph, GraphSlice, is_path, slice_graph


@dataclass(frozen=True)
class EnumeratedSequence:
    """A total map ``s -> (i, j)``; ``j`` belongs to ``D_i`` once enumerated.

    Built from a finite table, the last entry repeats forever.
    """

    fn: Callable[[int], tuple[int, int]]
    table: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @classmethod
    def from_table(cls, entries: Sequence[tuple[int, int]]) -> "EnumeratedSequence":
        entries = tuple((int(i), int(j)) for i, j in entries)
        if not entries:
            raise ValueError("an enumerated sequence needs at least one entry")
        if any(i < 0 or j < 0 for i, j in entries):
            raise ValueError("entries must be natural numbers")
        last = len(entries) - 1
        return cls(lambda s: entries[min(s, last)], entries)

    @classmethod
    def from_json(cls, text: str) -> "EnumeratedSequence":
        data = json.loads(text)
        if not isinstance(data, list) or not data:
            raise ValueError("expected a nonempty JSON list of [s, i, j] triples")
        entries = []
        for pos, item in enumerate(data):
            if (not isinstance(item, list) or len(item) != 3
                    or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0
                               for x in item)):
                raise ValueError(f"entry {pos}: expected [s, i, j] of naturals, got {item!r}")
            if item[0] != pos:
                raise ValueError(f"entry {pos}: stage {item[0]} out of order")
            entries.append((item[1], item[2]))
        return cls.from_table(entries)

    def __call__(self, s: int) -> tuple[int, int]:
        return self.fn(s)

    def prefix(self, stages: int) -> list[tuple[int, int]]:
        return [self(s) for s in range(stages)]

    def blocks(self, stages: int) -> dict[int, frozenset[int]]:
        """``D_i`` fragments enumerated below ``stages``."""
        out: dict[int, set[int]] = {}
        for i, j in self.prefix(stages):
            out.setdefault(i, set()).add(j)
        return {i: frozenset(js) for i, js in sorted(out.items())}

    def to_json(self, stages: int) -> str:
        return json.dumps([[s, i, j] for s, (i, j) in enumerate(self.prefix(stages))]) + "\n"


@dataclass(frozen=True)
class Verdict:
    kind: str  # "consistent" | "violation" | "incomplete-coverage"
    witness: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.kind == "consistent"


def check_weak_partition(D: EnumeratedSequence, horizon: Horizon) -> Verdict:
    """Check both conditions on the fragment enumerated below ``horizon.stages``.

    A violation witness is ``(i, j, shared, extra)``: ``shared`` lies in both
    ``D_i`` and ``D_j`` while ``extra`` lies in exactly one of them.
    Coverage is required for every ``n < horizon.width``.
    """
    blocks = D.blocks(horizon.stages)
    owner: dict[int, int] = {}
    for i, members in blocks.items():
        for x in sorted(members):
            k = owner.setdefault(x, i)
            if k != i and blocks[k] != members:
                extra = min(blocks[k] ^ members)
                return Verdict("violation", (k, i, x, extra))
    for n in range(horizon.width):
        if n not in owner:
            return Verdict("incomplete-coverage", (n,))
    return Verdict("consistent")


# ---------------------------------------------------------------------------
# the graph of a weak partition

D_TAG, N_TAG, A_TAG = 0, 1, 2


@dataclass(frozen=True)
class PartitionVertex:
    kind: str  # "d" | "n" | "a"
    i: int
    s: int = 0

    @property
    def code(self) -> int:
        if self.kind == "d":
            return 3 * self.i
        if self.kind == "n":
            return 3 * self.i + 1
        return 3 * pair(self.i, self.s) + 2

    @classmethod
    def from_code(cls, code: int) -> "PartitionVertex":
        q, tag = divmod(code, 3)
        if tag == D_TAG:
            return cls("d", q)
        if tag == N_TAG:
            return cls("n", q)
        return cls("a", *unpair(q))

    def label(self) -> str:
        if self.kind == "a":
            return f"a_{self.i},{self.s}"
        return f"{self.kind}_{self.i}"


def d_code(i: int) -> int:
    return 3 * i


def n_code(j: int) -> int:
    return 3 * j + 1


def a_code(i: int, s: int) -> int:
    return 3 * pair(i, s) + 2


def graph_from_weak_partition(D: EnumeratedSequence) -> EffectiveGraph:
    """``d_i - a_{i,0}``, ``a_{i,s} - a_{i,s+1}`` and ``a_{i,s} - n_j`` exactly
    when ``D(s) = (i, j)``."""

    def neighbors(code: int) -> list[int]:
        v = PartitionVertex.from_code(code)
        if v.kind == "d":
            return [a_code(v.i, 0)]
        if v.kind == "n":
            return []  # covered from the a-side
        out = [a_code(v.i, v.s + 1), d_code(v.i) if v.s == 0 else a_code(v.i, v.s - 1)]
        i, j = D(v.s)
        if i == v.i:
            out.append(n_code(j))
        return out

    def edge(a: int, b: int) -> bool:
        x, y = PartitionVertex.from_code(a), PartitionVertex.from_code(b)
        if x.kind == "a":
            x, y = y, x
        if y.kind != "a":
            return False
        if x.kind == "a":
            return x.i == y.i and abs(x.s - y.s) == 1
        if x.kind == "d":
            return x.i == y.i and y.s == 0
        return D(y.s) == (y.i, x.i)

    return EffectiveGraph(
        vertex_pred=lambda c: c >= 0,
        edge_pred=edge,
        neighbor_hint=neighbors,
        labeler=lambda c: PartitionVertex.from_code(c).label(),
        name="weak-partition",
    )


def partition_slice_vertices(D: EnumeratedSequence, horizon: Horizon) -> list[int]:
    """``d_i``, ``n_j`` for ``i, j < W`` and ``a_{i,s}`` for ``s < stages``,
    where ``W`` also covers every index enumerated below ``stages``."""
    top = horizon.width
    for i, j in D.prefix(horizon.stages):
        top = max(top, i + 1, j + 1)
    out = [d_code(i) for i in range(top)] + [n_code(j) for j in range(top)]
    out += [a_code(i, s) for i in range(top) for s in range(horizon.stages)]
    return out


def partition_slice(D: EnumeratedSequence, horizon: Horizon) -> GraphSlice:
    return slice_graph(graph_from_weak_partition(D), partition_slice_vertices(D, horizon))


def component_to_block(table: ComponentTable, anchor: int) -> tuple[int, frozenset[int]]:
    """Least ``p`` with ``d_p`` in the block of ``anchor`` and the set of
    ``j`` with ``n_j`` in that block."""
    block = table.block_of(anchor)
    kinds = [PartitionVertex.from_code(c) for c in block]
    ds = [v.i for v in kinds if v.kind == "d"]
    if not ds:
        raise Inconclusive(f"block of {PartitionVertex.from_code(anchor).label()} has no d-vertex")
    return min(ds), frozenset(v.i for v in kinds if v.kind == "n")


# ---------------------------------------------------------------------------
# rewriting paths to remove visits to n-vertices

def pattern(path: Sequence[int]) -> tuple[int, ...]:
    """Indices of the n-vertices visited by ``path``, in order."""
    return tuple(v.i for v in map(PartitionVertex.from_code, path) if v.kind == "n")


def _spine(p: int, s: int) -> list[int]:
    return [d_code(p)] + [a_code(p, t) for t in range(s + 1)]


def reduce_pattern(D: EnumeratedSequence, path: Sequence[int], horizon: Horizon) -> tuple[int, ...]:
    """A path with the same ends whose pattern drops the first entry.

    ``path`` must run from some ``d_p`` to an n-vertex and visit at least two
    n-vertices. Raises :class:`Inconclusive` if the rerouting stage is not
    enumerated below ``horizon.stages``.
    """
    g = graph_from_weak_partition(D)
    path = tuple(path)
    if not is_path(g, path):
        raise ValueError("not a path of the partition graph")
    start = PartitionVertex.from_code(path[0])
    if start.kind != "d" or PartitionVertex.from_code(path[-1]).kind != "n":
        raise ValueError("path must run from a d-vertex to an n-vertex")
    hits = [k for k, c in enumerate(path) if c % 3 == N_TAG]
    if len(hits) < 2:
        raise ValueError("pattern has no removable entry")
    p = start.i
    k0, k1 = hits[0], hits[1]
    if path[k0] == path[k1]:
        return path[:k0] + path[k1:]
    z = PartitionVertex.from_code(path[k0 + 1]).i
    if z == p:
        s_last = PartitionVertex.from_code(path[k1 - 1]).s
        return tuple(_spine(p, s_last)) + path[k1:]
    target = PartitionVertex.from_code(path[k1]).i
    for s in range(horizon.stages):
        if D(s) == (p, target):
            return tuple(_spine(p, s)) + path[k1:]
    raise Inconclusive(f"no stage below {horizon.stages} enumerates {target} into D_{p}")


def reduce_to_direct(D: EnumeratedSequence, path: Sequence[int], horizon: Horizon) -> tuple[int, ...]:
    """Iterate :func:`reduce_pattern` down to a single n-vertex."""
    path = tuple(path)
    while len(pattern(path)) > 1:
        path = reduce_pattern(D, path, horizon)
    return path


def certify_membership(D: EnumeratedSequence, path: Sequence[int]) -> tuple[int, int, int]:
    """For a path ``d_p, a_{p,0}, ..., a_{p,s}, n_j`` return ``(p, j, s)`` with
    ``D(s) = (p, j)``."""
    if len(pattern(path)) != 1:
        raise ValueError("path is not direct")
    last = PartitionVertex.from_code(path[-2])
    j = PartitionVertex.from_code(path[-1]).i
    p = PartitionVertex.from_code(path[0]).i
    if D(last.s) != (p, j):
        raise ValueError("final spine stage does not enumerate the endpoint")
    return p, j, last.s


# ---------------------------------------------------------------------------
# from a graph back to a weak partition

def weak_partition_from_graph(g: EffectiveGraph, horizon: Horizon) -> EnumeratedSequence:
    """``D_i`` lists vertex positions path-connected to the ``i``-th vertex.

    Vertices are the codes below ``horizon.width``, numbered in increasing
    order. Round ``r`` emits, for each ``i <= r``, every position reachable
    from ``i`` within ``r`` edges in increasing order; once reachability is
    saturated the last round repeats forever.
    """
    verts = g.vertices_below(horizon.width)
    if not verts:
        raise ValueError("no vertices below the horizon width")
    s = slice_graph(g, verts)
    index = {v: k for k, v in enumerate(verts)}
    adj = s.adjacency
    n = len(verts)
    dist: list[dict[int, int]] = []
    for src in verts:
        seen = {index[src]: 0}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if index[y] not in seen:
                    seen[index[y]] = seen[index[x]] + 1
                    queue.append(y)
        dist.append(seen)
    depth = max(max(d.values()) for d in dist)
    last_round = max(depth, n - 1)
    rounds = []
    for r in range(last_round + 1):
        rounds.append([(i, w) for i in range(min(r + 1, n))
                       for w in sorted(w for w, dd in dist[i].items() if dd <= r)])
    head = [e for rnd in rounds for e in rnd]
    tail = rounds[-1]

    def D(step: int) -> tuple[int, int]:
        if step < len(head):
            return head[step]
        return tail[(step - len(head)) % len(tail)]

    return EnumeratedSequence(D, tuple(head))


def saturation_stage(D: EnumeratedSequence) -> int:
    """Stages after which a sequence from :func:`weak_partition_from_graph`
    enumerates nothing new."""
    return len(D.table)
