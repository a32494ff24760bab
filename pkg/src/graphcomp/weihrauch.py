"""Problems as instance/solution relations and the instance and solution
transformations between them, each checkable against the exact component
oracle on a finite slice."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .codec import InjectionPrefix, encode_seq, pair, split_last, unpair, validate_injection
from .errors import Inconclusive
from .graph import (ComponentTable, EffectiveGraph, GraphSlice, components,
                    finite_graph, slice_graph)
from .range_encodings import Decomposition, decode_range, decode_vertices, v_code, _split

PROBLEMS = ("P", "D", "P_k", "D_k", "LPO", "LPOhat", "CN", "FC1", "FC2", "FC3")


@dataclass(frozen=True)
class ProblemId:
    tag: str
    k: int | None = None

    def __post_init__(self):
        if self.tag not in PROBLEMS:
            raise ValueError(f"unknown problem {self.tag!r}")
        if self.tag in ("P_k", "D_k") and (self.k is None or self.k < 2):
            raise ValueError(f"{self.tag} needs k >= 2")

    def __str__(self) -> str:
        return self.tag.replace("_k", f"_{self.k}") if self.k else self.tag


# ---------------------------------------------------------------------------
# products of graphs

def product_graph(g1: EffectiveGraph, g2: EffectiveGraph) -> EffectiveGraph:
    """Vertices ``pair(u, v)``; edges change one coordinate along an edge of
    that factor."""

    def is_vertex(c: int) -> bool:
        u, v = unpair(c)
        return g1.is_vertex(u) and g2.is_vertex(v)

    def edge(a: int, b: int) -> bool:
        (u, v), (x, y) = unpair(a), unpair(b)
        return (u == x and g2.is_edge(v, y)) or (v == y and g1.is_edge(u, x))

    hint = None
    if g1.neighbor_hint is not None and g2.neighbor_hint is not None:
        def hint(c: int) -> list[int]:
            u, v = unpair(c)
            return ([pair(u, y) for y in g2.neighbor_hint(v)]
                    + [pair(x, v) for x in g1.neighbor_hint(u)])

    bound = None
    if g1.vertex_bound is not None and g2.vertex_bound is not None:
        bound = pair(g1.vertex_bound - 1, g2.vertex_bound - 1) + 1
    return EffectiveGraph(is_vertex, edge, neighbor_hint=hint, vertex_bound=bound,
                          labeler=lambda c: "({},{})".format(*unpair(c)),
                          name=f"{g1.name}x{g2.name}")


def product_slice(g1: EffectiveGraph, g2: EffectiveGraph,
                  v1: Iterable[int], v2: Iterable[int]) -> GraphSlice:
    v2 = list(v2)
    return slice_graph(product_graph(g1, g2), [pair(u, v) for u in v1 for v in v2])


def project_component(table: ComponentTable, side: int, anchor: int) -> frozenset[int]:
    """The factor block through ``anchor`` read off a product block."""
    if anchor not in table:
        raise ValueError(f"anchor {unpair(anchor)} is not in the product slice")
    u, v = unpair(anchor)
    out = set()
    for c in table.block_of(anchor):
        x, y = unpair(c)
        if side == 1 and y == v:
            out.add(x)
        elif side == 2 and x == u:
            out.add(y)
        elif side not in (1, 2):
            raise ValueError("side must be 1 or 2")
    return frozenset(out)


# ---------------------------------------------------------------------------
# a pair of instances differing in one edge bit

def edge_index(a: int, b: int) -> int:
    """Index of the potential edge ``{a, b}``; ``{0, 1}`` gets 0."""
    a, b = min(a, b), max(a, b)
    if a == b:
        raise ValueError("no self-loops")
    return pair(a, b - a - 1)


def edge_of_index(e: int) -> tuple[int, int]:
    a, gap = unpair(e)
    return a, a + gap + 1


def tolerance_fixture() -> tuple[EffectiveGraph, EffectiveGraph, Callable[[int], bool]]:
    """Complete graphs on the evens and on the odds, then the same with the
    edge ``{0, 1}`` added; the third item decides membership in the evens."""
    b1 = EffectiveGraph(lambda v: v >= 0, lambda a, b: a % 2 == b % 2, name="B1")
    b2 = EffectiveGraph(lambda v: v >= 0,
                        lambda a, b: a % 2 == b % 2 or {a, b} == {0, 1}, name="B2")
    return b1, b2, lambda v: v % 2 == 0


def block_families_disjoint(h: int) -> bool:
    """No block of the first fixture graph on ``0..h-1`` is a block of the
    second."""
    b1, b2, _ = tolerance_fixture()
    verts = range(h)
    f1 = set(components(slice_graph(b1, verts)).blocks)
    f2 = set(components(slice_graph(b2, verts)).blocks)
    return not (f1 & f2)


def differing_edge_indices(limit: int) -> list[int]:
    b1, b2, _ = tolerance_fixture()
    return [e for e in range(limit) if b1.is_edge(*edge_of_index(e)) != b2.is_edge(*edge_of_index(e))]


# ---------------------------------------------------------------------------
# LPO streams and their parallelisation

@dataclass(frozen=True)
class LpoStream:
    p: Callable[[int], int]
    vector: Callable[[int], np.ndarray] | None = field(default=None, compare=False)

    def __call__(self, n: int) -> int:
        return self.p(n)

    def prefix(self, H: int) -> np.ndarray:
        if self.vector is not None:
            return np.asarray(self.vector(H))[:H]
        return np.fromiter((self.p(n) for n in range(H)), dtype=np.int64, count=H)

    def first_zero(self, H: int) -> int | None:
        hits = np.flatnonzero(self.prefix(H) == 0)
        return int(hits[0]) if hits.size else None

    @classmethod
    def zero_at(cls, z: int | None) -> "LpoStream":
        """``0`` exactly at position ``z`` (never if ``None``), else 1."""
        def vec(H: int) -> np.ndarray:
            out = np.ones(H, dtype=np.int64)
            if z is not None and z < H:
                out[z] = 0
            return out
        return cls(lambda n: 0 if n == z else 1, vec)


NEVER_ZERO = LpoStream.zero_at(None)


def family(streams: Sequence[LpoStream]) -> Callable[[int], LpoStream]:
    """A finite list as an infinite family, padded with never-zero streams."""
    streams = tuple(streams)
    return lambda i: streams[i] if i < len(streams) else NEVER_ZERO


def solve_lpohat(streams: Sequence[LpoStream] | Callable[[int], LpoStream],
                 H: int, indices: Iterable[int] | None = None) -> frozenset[int]:
    """Indices whose stream hits zero below ``H``."""
    if indices is None:
        indices = range(len(streams))  # type: ignore[arg-type]
    fam = streams if callable(streams) else family(streams)
    return frozenset(i for i in indices if fam(i).first_zero(H) is not None)


def lpohat_to_injection(streams: Sequence[LpoStream] | Callable[[int], LpoStream],
                        support: int) -> InjectionPrefix:
    """``f(pair(i, j)) = 2i+1`` when ``j`` is the first zero of stream ``i``,
    else ``2 pair(i, j)``, for pair codes below ``support``."""
    fam = streams if callable(streams) else family(streams)
    firsts: dict[int, int | None] = {}
    values = []
    for c in range(support):
        i, j = unpair(c)
        if i not in firsts:
            firsts[i] = fam(i).first_zero(_reach(i, support))
        values.append(2 * i + 1 if firsts[i] == j else 2 * c)
    return validate_injection(values)


def _reach(i: int, support: int) -> int:
    """Number of positions ``j`` with ``pair(i, j) < support``."""
    j = 0
    while pair(i, j) < support:
        j += 1
    return j


def support_for(width: int, H: int) -> int:
    """Least support covering ``pair(i, j)`` for all ``i < width``, ``j < H``."""
    return max(pair(i, H - 1) for i in range(width)) + 1


def decode_lpohat(table: ComponentTable, anchor: int, support: int, width: int) -> frozenset[int]:
    """``{i < width : 2i+1 is in the range}`` read off the block of the range
    encoder that contains ``anchor``."""
    kind, seq, _ = _split(anchor)
    if kind != 0:
        raise ValueError("anchor must be a v-vertex of the range encoder")
    return frozenset(i for i in range(width) if decode_range(table, seq, 2 * i + 1, support))


# ---------------------------------------------------------------------------
# path enumeration, connectivity streams and decompositions

class PathEnumeration:
    """All simple paths among the first ``n`` vertices of a finite graph.

    Paths are grouped by their largest vertex position, then ordered by
    length and lexicographically. ``t(n)`` is the ``n``-th path or ``None``
    past the end.
    """

    def __init__(self, g: EffectiveGraph, width: int):
        self.vertices = g.vertices_below(width)
        self.slice = slice_graph(g, self.vertices)
        self.index = {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def paths(self) -> tuple[tuple[int, ...], ...]:
        adj = {self.index[v]: sorted(self.index[w] for w in ws)
               for v, ws in self.slice.adjacency.items()}
        found: list[tuple[int, ...]] = []

        def walk(path: list[int], on: set[int]):
            found.append(tuple(path))
            for w in adj[path[-1]]:
                if w not in on:
                    path.append(w)
                    on.add(w)
                    walk(path, on)
                    on.discard(w)
                    path.pop()

        for start in range(len(self.vertices)):
            walk([start], {start})
        found.sort(key=lambda t: (max(t), len(t), t))
        return tuple(found)

    def __len__(self) -> int:
        return len(self.paths)

    def t(self, n: int) -> tuple[int, ...] | None:
        return self.paths[n] if n < len(self.paths) else None

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.paths)


def paths_to_lpo_instances(g: EffectiveGraph, width: int) -> Callable[[int], LpoStream]:
    """Stream ``pair(i, j)`` is 0 at ``n`` iff path ``n`` runs from vertex
    position ``i`` to ``j``."""
    en = PathEnumeration(g, width)

    def stream(code: int) -> LpoStream:
        i, j = unpair(code)
        return LpoStream(lambda n: 0 if (t := en.t(n)) is not None and t[0] == i and t[-1] == j else 1)

    return stream


def connected_pairs(g: EffectiveGraph, width: int, H: int | None = None) -> frozenset[int]:
    """Solve the connectivity family at horizon ``H`` (default: every path)."""
    en = PathEnumeration(g, width)
    H = len(en) if H is None else H
    fam = paths_to_lpo_instances(g, width)
    n = len(en.vertices)
    return solve_lpohat(fam, H, (pair(i, j) for i in range(n) for j in range(n)))


def decomposition_from_lpohat(n: int, S: frozenset[int]) -> Decomposition:
    """``d(n) = least i < n with pair(i, n) in S``, else ``n``; on positions."""
    return Decomposition({m: next((i for i in range(m) if pair(i, m) in S), m) for m in range(n)})


def decomposition_to_component(d: Decomposition, v: int) -> frozenset[int]:
    return frozenset(w for w in d.assignment if d(w) == d(v))


def oracle_decomposition(table: ComponentTable) -> Decomposition:
    return Decomposition(dict(table.representative))


# ---------------------------------------------------------------------------
# finite-component graphs against LPOhat

def fc1_to_lpohat(g: EffectiveGraph) -> Callable[[int], LpoStream]:
    """Stream ``i`` stays 1 at ``n`` iff ``i`` codes a finite set ``F`` on
    which ``g`` is connected and vertex ``n`` is in ``F`` or has no edge into
    ``F``; otherwise it is 0."""
    from .fc_forest import canonical_set

    def stream(i: int) -> LpoStream:
        F = canonical_set(i)
        ok = F is not None and all(g.is_vertex(v) for v in F) and _connected(g, F)
        if not ok:
            return LpoStream(lambda n: 0, lambda H: np.zeros(H, dtype=np.int64))
        members = sorted(F)
        return LpoStream(lambda n: 1 if n in F or not any(g.is_edge(n, x) for x in members) else 0)

    return stream


def _connected(g: EffectiveGraph, F: frozenset[int]) -> bool:
    return len(components(slice_graph(g, sorted(F))).blocks) == 1


# ---------------------------------------------------------------------------
# closed choice on N

@dataclass(frozen=True)
class CnInstance:
    """An enumeration ``p`` of a set with nonempty complement."""

    p: Callable[[int], int]
    name: str = "cn"

    @classmethod
    def complement_of(cls, missing: Iterable[int], order: Sequence[int] | None = None) -> "CnInstance":
        """Enumerate ``N`` minus ``missing`` increasingly, optionally after
        first listing ``order`` (which must avoid ``missing``)."""
        missing = frozenset(missing)
        if not missing:
            raise ValueError("closed choice needs a nonempty complement")
        head = tuple(order or ())
        if set(head) & missing:
            raise ValueError("order lists a missing value")
        seen = set(head)
        rest = (x for x in itertools.count() if x not in missing and x not in seen)
        cache = list(head)

        def p(t: int) -> int:
            while len(cache) <= t:
                cache.append(next(rest))
            return cache[t]

        return cls(p, "complement-of:" + ",".join(map(str, sorted(missing))))

    @classmethod
    def parse(cls, text: str) -> "CnInstance":
        kind, _, arg = text.partition(":")
        if kind != "complement-of" or not arg:
            raise ValueError(f"expected 'complement-of:a,b,...', got {text!r}")
        try:
            vals = [int(x) for x in arg.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad value list {arg!r}") from exc
        if any(v < 0 for v in vals):
            raise ValueError("missing values must be natural numbers")
        return cls.complement_of(vals)

    def enumerated(self, H: int) -> frozenset[int]:
        return frozenset(self.p(t) for t in range(H))


def solve_cn(p: CnInstance, H: int) -> int:
    """Least value not enumerated below ``H``."""
    seen = p.enumerated(H)
    return next(m for m in itertools.count() if m not in seen)


def b_sequence(p: CnInstance, T: int) -> list[int]:
    """Cap positions ``b_0 < b_1 < ...`` whose search ends below ``T``."""
    out: list[int] = []
    seen: set[int] = set()
    t = 0
    while t < T:
        seen.add(p.p(t))
        target = len(out)
        if target in seen and (not out or t > out[-1]):
            out.append(t)
        t += 1
    return out


def b_stabilized(p: CnInstance, T: int) -> bool:
    """The search for the next cap exhausts the horizon."""
    bs = b_sequence(p, T)
    return len(bs) not in p.enumerated(T)


class CnGraph:
    """``k-1`` copies of the cap graph joined at their first u-vertices.

    Vertex ``2 (n (k-1) + c) + tag`` is ``u^c_n`` (tag 0) or ``v^c_n``
    (tag 1).
    """

    def __init__(self, p: CnInstance, k: int = 2):
        if k < 2:
            raise ValueError("k must be >= 2")
        self.p, self.k, self.copies = p, k, k - 1
        self._caps: list[int] = []
        self._seen: set[int] = set()
        self._t = 0

    def code(self, kind: str, c: int, n: int) -> int:
        return 2 * (n * self.copies + c) + (kind == "v")

    def split(self, code: int) -> tuple[str, int, int]:
        q, tag = divmod(code, 2)
        n, c = divmod(q, self.copies)
        return ("v" if tag else "u"), c, n

    def is_cap(self, n: int) -> bool:
        while self._t <= n:
            self._seen.add(self.p.p(self._t))
            if len(self._caps) in self._seen and (not self._caps or self._t > self._caps[-1]):
                self._caps.append(self._t)
            self._t += 1
        return n in self._caps

    def neighbors(self, code: int) -> list[int]:
        kind, c, n = self.split(code)
        out = []
        if kind == "u":
            out.append(self.code("u", c, n + 1))
            if n:
                out.append(self.code("u", c, n - 1))
            if self.is_cap(n):
                out.append(self.code("v", c, n))
            if n == 0:
                out += ([self.code("u", d, 0) for d in range(1, self.copies)] if c == 0
                        else [self.code("u", 0, 0)])
        else:
            if self.is_cap(n):
                out.append(self.code("u", c, n))
            else:
                out.append(self.code("v", c, n + 1))
            if n and not self.is_cap(n - 1):
                out.append(self.code("v", c, n - 1))
        return out

    def edge(self, a: int, b: int) -> bool:
        return b in self.neighbors(a)

    def label(self, code: int) -> str:
        kind, c, n = self.split(code)
        return f"{kind}{c}_{n}" if self.copies > 1 else f"{kind}_{n}"

    def as_effective(self) -> EffectiveGraph:
        return EffectiveGraph(lambda c: c >= 0, self.edge, neighbor_hint=self.neighbors,
                              labeler=self.label, name=f"cn-p{self.k}")

    def slice_vertices(self, T: int) -> list[int]:
        return [self.code(kind, c, n) for n in range(T + 1)
                for c in range(self.copies) for kind in "uv"]

    def slice(self, T: int) -> GraphSlice:
        return slice_graph(self.as_effective(), self.slice_vertices(T))


def cn_to_p2_graph(p: CnInstance) -> EffectiveGraph:
    return CnGraph(p, 2).as_effective()


def cn_to_pk_graph(p: CnInstance, k: int) -> EffectiveGraph:
    return CnGraph(p, k).as_effective()


def decode_cn(s: GraphSlice, table: ComponentTable, anchor: int, k: int = 2) -> int:
    """Least value the instance misses, read off the block of ``anchor``."""
    g = CnGraph(CnInstance(lambda t: 0), k)  # coding only
    block = table.block_of(anchor)
    T = max(g.split(c)[2] for c in s.vertices)
    home = g.code("u", 0, 0)
    if home in block:
        copy = 0
        n0 = next((n for n in range(T + 1) if g.code("v", 0, n) not in block), None)
    else:
        hits = [(n, c) for n in range(T + 1) for c in range(g.copies) if g.code("v", c, n) in block]
        n0, copy = hits[0] if hits else (None, 0)
    if n0 is None or n0 >= T:
        raise Inconclusive("the slice does not reach a vertex separating the two sides")
    return sum(s.has_edge(g.code("u", copy, j), g.code("v", copy, j)) for j in range(n0 + 1))


# ---------------------------------------------------------------------------
# k-component decomposition through closed choice

def colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), k), key=lambda s: s[::-1])


@dataclass
class DkToCn:
    """The closed-choice instance of a graph with ``k`` blocks among its first
    ``width`` vertices, and the decoder from a missing value."""

    g: EffectiveGraph
    k: int
    width: int

    def __post_init__(self):
        self.paths = PathEnumeration(self.g, self.width)
        n = len(self.paths.vertices)
        blocks = components(self.paths.slice).blocks
        if len(blocks) != self.k:
            raise ValueError(f"graph has {len(blocks)} blocks among {n} vertices, expected {self.k}")
        self.subsets = colex_subsets(n, self.k)
        self.member_sets = [frozenset(s) for s in self.subsets]

    def p(self, code: int) -> int:
        i, j = unpair(code)
        t = self.paths.t(j)
        if i >= len(self.subsets) or t is None:
            return 0
        return i + 1 if len(self.member_sets[i].intersection(t)) >= 2 else 0

    @property
    def instance(self) -> CnInstance:
        return CnInstance(self.p, "dk")

    @property
    def horizon(self) -> int:
        """Stages after which every pair code has been enumerated."""
        return pair(len(self.subsets), len(self.paths)) + 1

    def decode(self, value: int) -> Decomposition:
        """Map each vertex position to the member of ``s_{value-1}`` joined to
        it by the first enumerated path."""
        if not 1 <= value <= len(self.subsets):
            raise ValueError(f"{value} does not name a subset")
        s = self.member_sets[value - 1]
        out = {}
        for v in range(len(self.paths.vertices)):
            if v in s:
                out[v] = v
                continue
            hit = next((t for t in self.paths if v in t and s.intersection(t)), None)
            if hit is None:
                raise Inconclusive(f"vertex {v} reaches no member of the subset")
            out[v] = next(iter(s.intersection(hit)))
        return Decomposition(out)


def dk_to_cn(g: EffectiveGraph, k: int, width: int) -> DkToCn:
    return DkToCn(g, k, width)


# ---------------------------------------------------------------------------
# reductions as checkable runs

@dataclass(frozen=True)
class Outcome:
    valid: bool
    inconclusive: bool = False
    answer: object = None


@dataclass(frozen=True)
class Reduction:
    name: str
    source: ProblemId
    target: ProblemId
    run: Callable[..., Outcome]


REGISTRY: dict[str, Reduction] = {}


def register(name: str, source: ProblemId, target: ProblemId):
    def deco(fn):
        REGISTRY[name] = Reduction(name, source, target, fn)
        return fn
    return deco


def _blocks_equal(table: ComponentTable, anchor: int, got: Iterable[int]) -> bool:
    return frozenset(got) == table.block_of(anchor)


@register("p_to_pxp", ProblemId("P"), ProblemId("P"))
def run_p_to_pxp(g: EffectiveGraph, width: int, anchor: int = 0) -> Outcome:
    """Feed one graph to both sides of the product problem; keep the first
    component."""
    table = components(slice_graph(g, g.vertices_below(width)))
    first, _second = table.block_of(anchor), table.block_of(anchor)
    return Outcome(_blocks_equal(table, anchor, first), answer=sorted(first))


@register("pxp_to_p", ProblemId("P"), ProblemId("P"))
def run_pxp_to_p(g1: EffectiveGraph, g2: EffectiveGraph, width: int,
                 anchor: tuple[int, int] = (0, 0)) -> Outcome:
    v1, v2 = g1.vertices_below(width), g2.vertices_below(width)
    table = components(product_slice(g1, g2, v1, v2))
    code = pair(*anchor)
    c1, c2 = project_component(table, 1, code), project_component(table, 2, code)
    t1 = components(slice_graph(g1, v1))
    t2 = components(slice_graph(g2, v2))
    return Outcome(_blocks_equal(t1, anchor[0], c1) and _blocks_equal(t2, anchor[1], c2),
                   answer=(sorted(c1), sorted(c2)))


@register("lpohat_to_p", ProblemId("LPOhat"), ProblemId("P"))
def run_lpohat_to_p(streams: Sequence[LpoStream], H: int, anchor_seq: tuple[int, ...] = ()) -> Outcome:
    width = len(streams)
    support = support_for(width, H)
    f = lpohat_to_injection(streams, support)
    from .range_encodings import encode_range_graph
    base = encode_seq(anchor_seq)
    verts = decode_vertices(f, base, [2 * i + 1 for i in range(width)])
    table = components(slice_graph(encode_range_graph(f), verts))
    try:
        got = decode_lpohat(table, v_code(base, 0), support, width)
    except Inconclusive:
        return Outcome(False, True)
    return Outcome(got == solve_lpohat(streams, H), answer=sorted(got))


@register("p_to_d", ProblemId("P"), ProblemId("D"))
def run_p_to_d(g: EffectiveGraph, width: int, anchor: int = 0) -> Outcome:
    table = components(slice_graph(g, g.vertices_below(width)))
    d = oracle_decomposition(table)
    return Outcome(_blocks_equal(table, anchor, decomposition_to_component(d, anchor)))


@register("d_to_lpohat", ProblemId("D"), ProblemId("LPOhat"))
def run_d_to_lpohat(g: EffectiveGraph, width: int) -> Outcome:
    verts = g.vertices_below(width)
    S = connected_pairs(g, width)
    d = decomposition_from_lpohat(len(verts), S)
    table = components(slice_graph(g, verts))
    positional = Decomposition({verts[m]: verts[x] for m, x in d.assignment.items()})
    return Outcome(positional.agrees_with(table), answer=[d(m) for m in range(len(verts))])


@register("lpohat_to_fc3", ProblemId("LPOhat"), ProblemId("FC3"))
def run_lpohat_to_fc3(streams: Sequence[LpoStream], H: int) -> Outcome:
    from .fc_forest import build_fc_graph, decode_range_from_tds, greedy_tds
    width = len(streams)
    # the padding codes only add values 2c above every interval start, so
    # intervals opened by the relevant codes get room to close
    support = 2 * support_for(width, H)
    f = lpohat_to_injection(streams, support)
    g = build_fc_graph(f, support + 1)
    A = greedy_tds(g.table, g.vertices)
    got = set()
    for i in range(width):
        try:
            if decode_range_from_tds(g, A, 2 * i + 1):
                got.add(i)
        except Inconclusive:
            return Outcome(False, True)
    return Outcome(frozenset(got) == solve_lpohat(streams, H), answer=sorted(got))


@register("fc3_to_fc1_chain", ProblemId("FC3"), ProblemId("FC1"))
def run_fc_chain(f: InjectionPrefix, stages: int) -> Outcome:
    """FC-1 indices of closed blocks, turned into membership rows, then into a
    totally disconnected set."""
    from .codec import Horizon
    from .fc_forest import (ComponentInterval, build_fc_graph, fc1_indices, fc1_to_fc2,
                            fc2_to_fc3, is_pending)
    g = build_fc_graph(f, stages)

    def closed(block: frozenset[int]) -> bool:
        return not is_pending(g, ComponentInterval(min(block), max(block) + 1))

    try:
        idx = fc1_indices(g.slice(), closed)
    except Inconclusive:
        return Outcome(False, True)
    C = fc1_to_fc2(idx)
    A = fc2_to_fc3(C, Horizon(1, len(idx), stages + 1))
    reps = [g.table.representative[a] for a in A.indices]
    return Outcome(len(set(reps)) == len(reps) and len(reps) >= 1, answer=list(A.indices))


@register("fc1_to_lpohat", ProblemId("FC1"), ProblemId("LPOhat"))
def run_fc1_to_lpohat(g: EffectiveGraph, width: int, queries: Sequence[int]) -> Outcome:
    """Queried indices whose stream never hits zero must be exactly the
    canonical indices of oracle blocks among the queries."""
    from .fc_forest import canonical_index
    fam = fc1_to_lpohat(g)
    H = width
    S = solve_lpohat(fam, H, queries)
    chosen = sorted(i for i in queries if i not in S)
    truth = {canonical_index(b) for b in components(slice_graph(g, g.vertices_below(width))).blocks}
    return Outcome(set(chosen) == truth & set(queries), answer=chosen)


@register("cn_to_p2", ProblemId("CN"), ProblemId("P_k", 2))
def run_cn_to_p2(p: CnInstance, T: int, block: int = 0) -> Outcome:
    return run_cn_to_pk(p, T, 2, block)


@register("cn_to_pk", ProblemId("CN"), ProblemId("P_k", 3))
def run_cn_to_pk(p: CnInstance, T: int, k: int = 3, block: int = 0) -> Outcome:
    """Decode from the ``block``-th oracle block (by least vertex)."""
    G = CnGraph(p, k)
    s = G.slice(T)
    table = components(s)
    if not b_stabilized(p, T):
        return Outcome(False, True)
    try:
        ans = decode_cn(s, table, min(table.blocks[block]), k)
    except Inconclusive:
        return Outcome(False, True)
    return Outcome(ans not in p.enumerated(T), answer=ans)


@register("pk_to_dk", ProblemId("P_k", 2), ProblemId("D_k", 2))
def run_pk_to_dk(g: EffectiveGraph, width: int, anchor: int = 0) -> Outcome:
    return run_p_to_d(g, width, anchor)


@register("dk_to_cn", ProblemId("D_k", 2), ProblemId("CN"))
def run_dk_to_cn(g: EffectiveGraph, k: int, width: int) -> Outcome:
    red = dk_to_cn(g, k, width)
    value = solve_cn(red.instance, red.horizon)
    d = red.decode(value)
    verts = red.paths.vertices
    positional = Decomposition({verts[m]: verts[x] for m, x in d.assignment.items()})
    return Outcome(positional.agrees_with(components(red.paths.slice)), answer=value)


def instance_hash(description: object) -> str:
    blob = json.dumps(description, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def report(name: str, description: object, outcome: Outcome) -> dict:
    out = {"reduction": name, "instance": instance_hash(description),
           "solution_valid": bool(outcome.valid), "inconclusive": bool(outcome.inconclusive)}
    if outcome.answer is not None:
        out["answer"] = outcome.answer
    return out
