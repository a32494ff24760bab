"""Graphs that hide an injection's range in their component structure, and
the finitely-many-components procedures (cover decomposition and the
capped/linked graph for Sigma-2 least-element search)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping

from .codec import (Horizon, InjectionPrefix, decode_seq, encode_seq, extend_seq,
                    pair, split_last, unpair)
from .errors import Inconclusive
from .graph import ComponentTable, EffectiveGraph, GraphSlice, components, slice_graph

# vertex kinds, packed as 3 * pair(seq_code, index) + tag
V, U, RHO = 0, 1, 2
RHO_CODE = 3 * pair(0, 0) + RHO
STANDARD, BOUNDED = "standard", "bounded"


@dataclass(frozen=True)
class SigmaVertex:
    kind: int
    seq: int = 0
    index: int = 0

    def __post_init__(self):
        if self.kind == RHO and (self.seq, self.index) != (0, 0):
            raise ValueError("the root carries the empty sequence and index 0")

    @property
    def code(self) -> int:
        return 3 * pair(self.seq, self.index) + self.kind

    @classmethod
    def from_code(cls, code: int) -> "SigmaVertex":
        body, kind = divmod(code, 3)
        seq, index = unpair(body)
        return cls(kind, seq, index)

    def label(self) -> str:
        if self.kind == RHO:
            return "rho"
        letter = "v" if self.kind == V else "u"
        digits = ",".join(str(x) for x in decode_seq(self.seq))
        return f"{letter}[{digits}]_{self.index}"


def v_code(seq: int, index: int) -> int:
    return 3 * pair(seq, index) + V


def u_code(seq: int, index: int) -> int:
    return 3 * pair(seq, index) + U


def vertex_label(code: int) -> str:
    return SigmaVertex.from_code(code).label()


def _split(code: int) -> tuple[int, int, int]:
    body, kind = divmod(code, 3)
    seq, index = unpair(body)
    return kind, seq, index


# ---------------------------------------------------------------------------
# injection-range encoder

class RangeGraph:
    """Spines ``v[s]_0 - v[s]_1 - ...`` for every finite sequence ``s``, plus a
    diagonal edge ``v[s]_i - v[s+<j>]_0`` whenever ``f(i) = j`` (target index
    ``i`` instead of 0 in bounded mode). Queries about ``f`` beyond its
    support see no diagonal edge."""

    def __init__(self, f: InjectionPrefix, mode: str = STANDARD):
        if mode not in (STANDARD, BOUNDED):
            raise ValueError(f"unknown mode {mode!r}")
        self.f = f
        self.mode = mode
        self._pre = {v: i for i, v in enumerate(f.values)}

    def _target_index(self, i: int) -> int:
        return 0 if self.mode == STANDARD else i

    def _diagonal(self, parent: tuple[int, int], child: tuple[int, int]) -> bool:
        ps, i = parent
        cs, m = child
        if cs == 0 or i >= self.f.support:
            return False
        up, j = split_last(cs)
        return up == ps and self.f(i) == j and m == self._target_index(i)

    def edge(self, a: int, b: int) -> bool:
        ka, sa, na = _split(a)
        kb, sb, nb = _split(b)
        if ka != V or kb != V:
            return False
        if sa == sb:
            return abs(na - nb) == 1
        return self._diagonal((sa, na), (sb, nb)) or self._diagonal((sb, nb), (sa, na))

    def neighbors(self, code: int) -> list[int]:
        kind, s, n = _split(code)
        if kind != V:
            return []
        out = [v_code(s, n + 1)]
        if n > 0:
            out.append(v_code(s, n - 1))
        if n < self.f.support:
            out.append(v_code(extend_seq(s, self.f(n)), self._target_index(n)))
        if s > 0:
            up, j = split_last(s)
            i = self._pre.get(j)
            if i is not None and n == self._target_index(i):
                out.append(v_code(up, i))
        return out

    def bound(self, code: int) -> int:
        """1 + the largest code any neighbour of ``code`` can have; needs only
        ``f(n)``, never a search for a preimage."""
        kind, s, n = _split(code)
        cands = [v_code(s, n + 1)]
        if n < self.f.support:
            cands.append(v_code(extend_seq(s, self.f(n)), self._target_index(n)))
        if s > 0 and self.mode == BOUNDED:
            up, _ = split_last(s)
            cands.append(v_code(up, n))
        return 1 + max(cands)

    def as_effective(self) -> EffectiveGraph:
        return EffectiveGraph(
            vertex_pred=lambda c: c % 3 == V,
            edge_pred=self.edge,
            bound=self.bound if self.mode == BOUNDED else None,
            neighbor_hint=self.neighbors,
            labeler=vertex_label,
            name=f"range-{self.mode}",
        )


def encode_range_graph(f: InjectionPrefix, mode: str = STANDARD) -> EffectiveGraph:
    return RangeGraph(f, mode).as_effective()


def sequences(depth: int, width: int) -> Iterator[int]:
    """Codes of all sequences of length <= depth with entries < width."""
    for length in range(depth + 1):
        for seq in itertools.product(range(width), repeat=length):
            yield encode_seq(seq)


def range_slice_vertices(f: InjectionPrefix, depth: int, width: int,
                         index_limit: int | None = None) -> list[int]:
    """``v[s]_n`` for sequences of length <= depth, entries < width, and
    ``n <= index_limit`` (default: the support of ``f``)."""
    top = f.support if index_limit is None else index_limit
    return [v_code(s, n) for s in sequences(depth, width) for n in range(top + 1)]


def decode_vertices(f: InjectionPrefix, base: int, js: Iterable[int]) -> list[int]:
    """The smallest vertex set that lets :func:`decode_range` answer for every
    ``j`` in ``js`` at ``base``."""
    top = max(f.support, 1)
    out = [v_code(base, n) for n in range(top)]
    for j in js:
        child = extend_seq(base, j)
        out.extend(v_code(child, n) for n in range(top))
    return out


def decode_range(table: ComponentTable, base: int, j: int, support: int) -> bool:
    """``j`` is in the range iff ``v[base+<j>]_0`` shares a block with
    ``v[base]_0``. Raises :class:`Inconclusive` if the slice misses a vertex
    the answer depends on."""
    child = extend_seq(base, j)
    top = max(support, 1)
    for n in range(top):
        for s in (base, child):
            if v_code(s, n) not in table:
                raise Inconclusive(
                    f"slice lacks {vertex_label(v_code(s, n))}; cannot decide j={j}")
    return table.same(v_code(base, 0), v_code(child, 0))


# ---------------------------------------------------------------------------
# finite cover decomposition

@dataclass(frozen=True)
class Decomposition:
    """Map from vertices to naturals; equal values exactly on components."""

    assignment: Mapping[int, int]

    def __call__(self, v: int) -> int:
        return self.assignment[v]

    def classes(self) -> list[frozenset[int]]:
        groups: dict[int, set[int]] = {}
        for v, x in self.assignment.items():
            groups.setdefault(x, set()).add(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)

    def agrees_with(self, table: ComponentTable) -> bool:
        verts = list(self.assignment)
        if set(verts) != set(table.representative):
            return False
        return sorted(self.classes(), key=min) == sorted(table.blocks, key=min)


def cover_subsets(cover: Iterable[int]) -> list[tuple[int, ...]]:
    """All subsets of ``cover``, larger first; ties by increasing bitmask over
    the sorted cover."""
    members = sorted(set(cover))
    masks = sorted(range(1 << len(members)), key=lambda m: (-bin(m).count("1"), m))
    return [tuple(x for k, x in enumerate(members) if m >> k & 1) for m in masks]


def decompose_with_cover(s: GraphSlice, cover: Iterable[int]) -> Decomposition:
    cover = sorted(set(cover))
    for x in cover:
        if x not in s:
            raise ValueError(f"cover vertex {x} is not in the slice")
    table = components(s)
    hit = {table.representative[x] for x in cover}
    for v in s.vertices:
        if table.representative[v] not in hit:
            raise ValueError(f"vertex {v} is not connected to the cover")
    chosen: tuple[int, ...] = ()
    for subset in cover_subsets(cover):
        reps = [table.representative[x] for x in subset]
        if len(set(reps)) == len(reps):
            chosen = subset
            break
    by_rep = {table.representative[x]: x for x in chosen}
    assignment = {v: (v if v in by_rep.values() else by_rep[table.representative[v]])
                  for v in s.vertices}
    return Decomposition(assignment)


# ---------------------------------------------------------------------------
# capped/linked graph for the least m with (exists q)(forall s) theta(m, q, s)

@dataclass(frozen=True)
class ThetaPredicate:
    k: int
    fn: Callable[[int, int, int], bool]
    name: str = "theta"

    def __call__(self, j: int, q: int, s: int) -> bool:
        return bool(self.fn(j, q, s))


def parse_theta(text: str, k: int) -> ThetaPredicate:
    """Builtin families: ``eq`` (q = j), ``geq:c`` (j >= c), ``false``, ``true``."""
    head, _, arg = text.partition(":")
    if head == "eq" and not arg:
        return ThetaPredicate(k, lambda j, q, s: q == j, "eq")
    if head == "geq" and arg:
        c = int(arg)
        return ThetaPredicate(k, lambda j, q, s: j >= c, f"geq:{c}")
    if head == "false" and not arg:
        return ThetaPredicate(k, lambda j, q, s: False, "false")
    if head == "true" and not arg:
        return ThetaPredicate(k, lambda j, q, s: True, "true")
    raise ValueError(f"unknown theta family {text!r}")


def b_table(theta: ThetaPredicate, j: int, horizon: Horizon) -> list[int]:
    """``b(0, j), b(1, j), ...`` for ``n <= H`` with witnesses ``s0 <= H``
    (``H = horizon.stages``); stops at the first entry with no witness."""
    if not 0 <= j < theta.k:
        raise ValueError(f"j={j} outside 0..{theta.k - 1}")
    H = horizon.stages
    out: list[int] = []
    for n in range(H + 1):
        s0 = next((s for s in range(H + 1) if not theta(j, n, s)), None)
        if s0 is None:
            break
        b = s0 + 1 if not out else max(out[-1] + 1, s0 + 1)
        out.append(b)
    return out


def decreasing_sequences(k: int) -> list[tuple[int, ...]]:
    """Nonempty strictly decreasing sequences over ``0..k-1``, shortest first."""
    out = []
    for length in range(1, k + 1):
        for combo in itertools.combinations(range(k - 1, -1, -1), length):
            out.append(tuple(combo))
    return out


class Sigma2Graph:
    """Root plus subgraphs ``G_tau`` on ``u[tau]_t``, ``v[tau]_t``.

    Built for the horizon-truncated predicate
    ``q <= H and (s > H or theta(j, q, s))``, so the least ``m`` it encodes is
    the least ``m`` with ``(exists q <= H)(forall s <= H) theta(m, q, s)``.
    Past the table, non-witness ``j`` get a ``b``-value at every index.
    """

    def __init__(self, theta: ThetaPredicate, horizon: Horizon):
        if theta.k < 1:
            raise ValueError("theta.k must be >= 1")
        self.theta = theta
        self.k = theta.k
        self.H = horizon.stages
        self.tables = [b_table(theta, j, horizon) for j in range(self.k)]
        self._bsets = [frozenset(t) for t in self.tables]
        self._full = [len(t) == self.H + 1 for t in self.tables]
        self.taus = decreasing_sequences(self.k)
        self.tau_codes = {encode_seq(t): t for t in self.taus}
        self._children: dict[int, list[tuple[int, int]]] = {
            c: [(j, encode_seq(t + (j,))) for j in range(t[-1])]
            for c, t in self.tau_codes.items()
        }

    @property
    def margin(self) -> int:
        """Past this index every ``b`` membership is periodic."""
        return 2 * self.H + 4

    def is_b(self, j: int, t: int) -> bool:
        if t in self._bsets[j]:
            return True
        return self._full[j] and t > self.tables[j][-1]

    def witnesses(self) -> list[int]:
        """``j`` whose ``b`` sequence stops, i.e. truncated-Sigma-2 witnesses."""
        return [j for j in range(self.k) if not self._full[j]]

    def _tau(self, code: int) -> tuple[int, ...]:
        return self.tau_codes[code]

    def vv(self, tau: int, t: int) -> bool:
        seq = self._tau(tau)
        if len(seq) == 1:
            return not self.is_b(seq[0], t)
        parent, j = split_last(tau)
        return self.vv(parent, t) and not self.is_b(j, t)

    def uu(self, tau: int, t: int) -> bool:
        seq = self._tau(tau)
        if len(seq) == 1:
            return True
        parent, _ = split_last(tau)
        return self.vv(parent, t)

    def vertical(self, tau: int, t: int) -> bool:
        seq = self._tau(tau)
        if len(seq) == 1:
            return self.is_b(seq[0], t)
        parent, j = split_last(tau)
        return (not self.vv(parent, t)) or self.is_b(j, t)

    def is_vertex(self, code: int) -> bool:
        kind, s, n = _split(code)
        if kind == RHO:
            return (s, n) == (0, 0)
        return s in self.tau_codes

    def neighbors(self, code: int) -> list[int]:
        kind, tau, t = _split(code)
        out: list[int] = []
        if kind == RHO:
            return [u_code(encode_seq((j,)), 0) for j in range(self.k)]
        if tau not in self.tau_codes:
            return out
        seq = self._tau(tau)
        if kind == U:
            if t == 0:
                if len(seq) == 1:
                    out.append(RHO_CODE)
                else:
                    out.append(v_code(split_last(tau)[0], 0))
            if self.uu(tau, t):
                out.append(u_code(tau, t + 1))
            if t > 0 and self.uu(tau, t - 1):
                out.append(u_code(tau, t - 1))
            if self.vertical(tau, t):
                out.append(v_code(tau, t))
            if len(seq) > 1 and t > 0:
                parent = split_last(tau)[0]
                if not self.vv(parent, t - 1):
                    out.append(v_code(parent, t))
        else:
            if self.vv(tau, t):
                out.append(v_code(tau, t + 1))
            if t > 0 and self.vv(tau, t - 1):
                out.append(v_code(tau, t - 1))
            if self.vertical(tau, t):
                out.append(u_code(tau, t))
            for _, child in self._children[tau]:
                if t == 0:
                    out.append(u_code(child, 0))
                elif not self.vv(tau, t - 1):
                    out.append(u_code(child, t))
        return out

    def edge(self, a: int, b: int) -> bool:
        return self.is_vertex(a) and self.is_vertex(b) and b in self.neighbors(a)

    def as_effective(self) -> EffectiveGraph:
        return EffectiveGraph(
            vertex_pred=self.is_vertex,
            edge_pred=self.edge,
            neighbor_hint=self.neighbors,
            labeler=vertex_label,
            name=f"sigma2-{self.theta.name}-k{self.k}",
        )

    def slice_vertices(self, top: int | None = None) -> list[int]:
        top = self.margin if top is None else top
        out = [RHO_CODE]
        for tau in self.tau_codes:
            for t in range(top + 1):
                out.append(u_code(tau, t))
                out.append(v_code(tau, t))
        return out

    def slice(self, top: int | None = None) -> GraphSlice:
        return slice_graph(self.as_effective(), self.slice_vertices(top))


def encode_sigma2_graph(theta: ThetaPredicate, horizon: Horizon) -> EffectiveGraph:
    return Sigma2Graph(theta, horizon).as_effective()


def sample_bound(k: int) -> int:
    """Any set of this many vertices contains a path-connected pair."""
    return 2 ** k * (k + 3) + 1


def brute_least_m(theta: ThetaPredicate, H: int) -> int | None:
    for m in range(theta.k):
        if any(all(theta(m, q, s) for s in range(H + 1)) for q in range(H + 1)):
            return m
    return None


def decode_least_m(table: ComponentTable, theta: ThetaPredicate, horizon: Horizon,
                   anchor: int = RHO_CODE) -> int:
    """Least ``m`` with ``(exists q)(forall s) theta(m, q, s)`` read off the
    block of ``anchor``."""
    g = Sigma2Graph(theta, horizon)
    top = g.margin
    for code in g.slice_vertices(top):
        if code not in table:
            raise Inconclusive(f"slice lacks {vertex_label(code)}")
    block = table.block_of(anchor)
    k = theta.k
    if RHO_CODE in block:
        for j in range(k):
            tau = encode_seq((j,))
            if any(v_code(tau, n) not in block for n in range(top + 1)):
                return j
        raise Inconclusive("no m < k has a witness within the horizon")
    found = None
    for tau_seq in g.taus:  # shortest first
        tau = encode_seq(tau_seq)
        hits = [n for n in range(top + 1) if v_code(tau, n) in block]
        if hits:
            found = (tau_seq, tau, hits[0])
            break
    if found is None:
        raise Inconclusive("block contains no v-vertex inside the slice")
    tau_seq, tau, n0 = found
    for j in range(tau_seq[-1]):
        child = extend_seq(tau, j)
        if any(v_code(child, n) not in block for n in range(n0 + 1, top + 1)):
            return j
    return tau_seq[-1]
