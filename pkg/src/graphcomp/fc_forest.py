"""Priority construction of a graph whose components are all finite index
intervals, its decoders, and the converters between the three forms of
"infinitely many components" (canonical indices, membership rows, totally
disconnected sets)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from sympy import factorint, prime, primepi

from . import _kernels
from .codec import Horizon, InjectionPrefix
from .errors import Inconclusive, InvariantViolation
from .graph import ComponentTable, EffectiveGraph, GraphSlice, components


def h(f: InjectionPrefix, s: int, e: int) -> int:
    """``max{n < s : f(n) <= e}``, or -1 when no such ``n`` exists."""
    if s > f.support:
        raise ValueError(f"h needs f below {s}, prefix has support {f.support}")
    for n in range(s - 1, -1, -1):
        if f(n) <= e:
            return n
    return -1


def stabilization_bound(f: InjectionPrefix, e: int, certified_only: bool = False) -> int | None:
    """Least ``t`` such that ``h_s(e') = h_t(e')`` for every ``e' <= e`` and
    every ``t < s <= support``.

    With ``certified_only`` the bound is returned only when every value
    ``<= e`` already occurs in the prefix, so injectivity rules out later
    changes; otherwise ``None``.
    """
    if certified_only and not all(f.in_range(x) for x in range(e + 1)):
        return None
    return h(f, f.support, e) + 1


@dataclass(frozen=True)
class StageGraph:
    """``G_stages`` on ``v_0..v_stages`` (vertex code = index)."""

    stages: int
    edges: frozenset[tuple[int, int]]
    attention_log: tuple[tuple[int | None, int], ...]
    f: InjectionPrefix

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(self.stages + 1))

    def slice(self, upto: int | None = None) -> GraphSlice:
        """``G_upto`` as a slice (``upto`` defaults to the last stage)."""
        upto = self.stages if upto is None else upto
        return GraphSlice(tuple(range(upto + 1)),
                          frozenset((a, b) for a, b in self.edges if b <= upto))

    @cached_property
    def table(self) -> ComponentTable:
        return components(self.slice())

    def trace(self) -> str:
        lines = [f"stage={s} attend={'none' if e is None else e}" for e, s in self.attention_log]
        return "\n".join(lines) + ("\n" if lines else "")


def build_fc_graph(f: InjectionPrefix, stages: int) -> StageGraph:
    """Replay the construction for ``stages`` stages.

    Stage ``s+1`` reads ``f(n)`` for ``n < s``, so ``stages`` may be at most
    ``support + 1``.
    """
    if stages < 0:
        raise ValueError("stages must be >= 0")
    if stages > f.support + 1:
        raise ValueError(f"{stages} stages need support >= {stages - 1}, have {f.support}")
    fvals = np.asarray(f.values, dtype=np.int64)
    if fvals.size == 0:
        fvals = np.zeros(1, dtype=np.int64)
    attend = _kernels.fc_attention(fvals, stages)
    edges = set()
    log = []
    for s in range(stages):
        e = int(attend[s])
        if e == _kernels.NO_ATTENTION:
            log.append((None, s + 1))
        else:
            log.append((e, s + 1))
            edges.update((i, s + 1) for i in range(e, s + 1))
    return StageGraph(stages, frozenset(edges), tuple(log), f)


@dataclass(frozen=True)
class ComponentInterval:
    lo: int
    hi: int  # exclusive

    def __contains__(self, i: int) -> bool:
        return self.lo <= i < self.hi


def component_intervals(g: StageGraph) -> list[ComponentInterval]:
    """Oracle blocks of the final stage, each checked to be an interval."""
    out = []
    for block in g.table.blocks:
        lo, hi = min(block), max(block) + 1
        if len(block) != hi - lo:
            raise InvariantViolation(f"component {sorted(block)} is not an index interval")
        out.append(ComponentInterval(lo, hi))
    return out


def is_pending(g: StageGraph, iv: ComponentInterval) -> bool:
    """Whether the interval contains the newest vertex or some known value
    ``f(n) <= lo`` with ``n >= hi - 1`` will make it require attention."""
    if iv.hi - 1 >= g.stages:
        return True
    return any(x <= iv.lo for x in g.f.values[iv.hi - 1:])


@dataclass(frozen=True)
class TotallyDisconnectedSet:
    indices: tuple[int, ...]

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("indices must be strictly increasing")


def greedy_tds(table: ComponentTable, vertices: Iterable[int]) -> TotallyDisconnectedSet:
    """Scan ``vertices`` upward, keeping each one whose block is new."""
    seen: set[int] = set()
    chosen = []
    for v in sorted(vertices):
        r = table.representative[v]
        if r not in seen:
            seen.add(r)
            chosen.append(v)
    return TotallyDisconnectedSet(tuple(chosen))


def decode_range_from_tds(g: StageGraph, A: TotallyDisconnectedSet, n: int) -> bool:
    """Decide ``n`` in the range of ``f`` from a totally disconnected set.

    Uses the first member of ``A`` whose component interval starts at or above
    ``n``: every ``m`` with ``f(m) <= lo`` lies inside that interval.
    """
    table = g.table
    reps = [table.representative[a] for a in A.indices if a in table]
    if len(set(reps)) != len(reps):
        raise ValueError("A is not totally disconnected")
    for a in A.indices:
        if a not in table:
            break
        block = table.block_of(a)
        iv = ComponentInterval(min(block), max(block) + 1)
        if iv.lo < n:
            continue
        if is_pending(g, iv):
            raise Inconclusive(f"interval [{iv.lo}, {iv.hi}) of v_{a} may still grow")
        return g.f.in_range(n, upto=iv.hi)
    raise Inconclusive(f"no member of A certifies n={n}")


# ---------------------------------------------------------------------------
# canonical indices and the FC-1 -> FC-2 -> FC-3 converters

def canonical_index(S: Iterable[int]) -> int:
    """``prod p_i ** a_i`` for ``S = {a_0 < ... < a_k}``, ``p_0 = 2``."""
    elems = sorted(set(S))
    if not elems:
        raise ValueError("canonical index of the empty set is undefined")
    out = 1
    for i, a in enumerate(elems):
        out *= prime(i + 1) ** a
    return out


@lru_cache(maxsize=1 << 16)
def canonical_set(code: int) -> frozenset[int] | None:
    """Inverse of :func:`canonical_index`; ``None`` if ``code`` is not one."""
    if code < 1:
        return None
    if code == 1:
        return frozenset({0})
    fac = factorint(code)
    top = int(primepi(max(fac)))
    exps = [fac.get(prime(i + 1), 0) for i in range(top)]
    if any(a >= b for a, b in zip(exps, exps[1:])):
        return None
    return frozenset(exps)


def fc1_indices(s: GraphSlice, closed: Callable[[frozenset[int]], bool] | None = None) -> list[int]:
    """Canonical indices of the slice's blocks by least member, stopping at
    the first block ``closed`` does not certify."""
    table = components(s)
    out = []
    for block in table.blocks:
        if closed is not None and not closed(block):
            break
        out.append(canonical_index(block))
    if not out:
        raise Inconclusive("no block of the slice is certified complete")
    return out


def fc1_to_fc2(indices: Sequence[int]) -> Callable[[int, int], int]:
    sets = [canonical_set(c) for c in indices]
    if any(x is None for x in sets):
        raise ValueError("not a sequence of canonical indices")

    def C(i: int, v: int) -> int:
        return int(v in sets[i])

    return C


def fc2_to_fc3(C: Callable[[int, int], int], horizon: Horizon) -> TotallyDisconnectedSet:
    """Least witness per row, then keep each witness exceeding all kept ones.

    Rows ``i < horizon.width`` are searched over ``v < horizon.stages``.
    """
    picks = []
    for i in range(horizon.width):
        w = next((v for v in range(horizon.stages) if C(i, v) == 1), None)
        if w is None:
            raise Inconclusive(f"row {i} has no member below {horizon.stages}")
        picks.append(w)
    kept: list[int] = []
    for w in picks:
        if not kept or w > kept[-1]:
            kept.append(w)
    return TotallyDisconnectedSet(tuple(kept))


def fc_effective_graph(f: InjectionPrefix) -> EffectiveGraph:
    """The union of the stage graphs as an effective graph on ``0..support``."""
    g = build_fc_graph(f, f.support + 1)
    adj: dict[int, set[int]] = {}
    for a, b in g.edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    top = f.support + 2
    return EffectiveGraph(
        vertex_pred=lambda v: 0 <= v < top,
        edge_pred=lambda a, b: b in adj.get(a, ()),
        neighbor_hint=lambda v: adj.get(v, ()),
        vertex_bound=top,
        name="fc-forest",
    )
