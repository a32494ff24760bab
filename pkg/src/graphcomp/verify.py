"""Randomised verification suites. Each compares a decoder or reduction with
the exact component oracle and reports trials, failures and inconclusive
answers."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from typing import Callable

from . import fc_forest as fc
from . import range_encodings as rng_enc
from . import weak_partitions as wp
from . import weihrauch as wr
from .codec import Horizon, InjectionPrefix, encode_seq, validate_injection
from .errors import Inconclusive
from .graph import (check_bounded, components, finite_graph, is_acyclic, slice_graph)


@dataclass
class SuiteResult:
    suite: str
    trials: int = 0
    failures: int = 0
    inconclusive: int = 0

    def record(self, ok: bool | None) -> None:
        """``None`` marks an inconclusive trial."""
        self.trials += 1
        if ok is None:
            self.inconclusive += 1
        elif not ok:
            self.failures += 1

    def as_dict(self) -> dict:
        return asdict(self)


def random_injection(r: random.Random, support: int, bound: int) -> InjectionPrefix:
    return validate_injection(r.sample(range(bound), support))


def random_graph(r: random.Random, n: int, p: float) -> tuple:
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if r.random() < p]
    return finite_graph(n, edges), edges


def graph_with_blocks(r: random.Random, n: int, k: int):
    """Random forest-plus-chords graph on ``n`` vertices with exactly ``k``
    blocks."""
    labels = list(range(k)) + [r.randrange(k) for _ in range(n - k)]
    r.shuffle(labels)
    edges = set()
    for c in range(k):
        members = [v for v in range(n) if labels[v] == c]
        for x, v in enumerate(members[1:], 1):
            u = members[r.randrange(x)]
            edges.add((min(u, v), max(u, v)))
        if len(members) > 2 and r.random() < 0.3:
            a, b = sorted(r.sample(members, 2))
            edges.add((a, b))
    return finite_graph(n, sorted(edges))


# ---------------------------------------------------------------------------

def suite_encoder(seed: int, trials: int = 100) -> SuiteResult:
    """Range encoder round trip on random prefixes (support <= 16, values < 16)."""
    r = random.Random(seed)
    res = SuiteResult("encoder")
    for _ in range(trials):
        f = random_injection(r, r.randint(0, 16), 16)
        table = components(slice_graph(rng_enc.encode_range_graph(f),
                                       rng_enc.decode_vertices(f, 0, range(16))))
        for j in range(16):
            try:
                res.record(rng_enc.decode_range(table, 0, j, f.support) == f.in_range(j))
            except Inconclusive:
                res.record(None)
    return res


def suite_variants(seed: int, trials: int = 100) -> SuiteResult:
    """Acyclicity of encoder slices; bounding function on bounded slices."""
    r = random.Random(seed)
    res = SuiteResult("variants")
    for _ in range(trials):
        f = random_injection(r, r.randint(0, 16), 16)
        verts = rng_enc.decode_vertices(f, 0, range(16))
        res.record(is_acyclic(slice_graph(rng_enc.encode_range_graph(f), verts)))
        bg = rng_enc.RangeGraph(f, rng_enc.BOUNDED)
        for vs in (verts, rng_enc.range_slice_vertices(f, 2, 3)):
            s = slice_graph(bg.as_effective(), vs)
            res.record(check_bounded(s, bg.bound) and is_acyclic(s))
    return res


def suite_fc(seed: int, trials: int = 100, stages: int = 200) -> SuiteResult:
    """Priority construction: interval blocks and range decoding from the
    greedy totally disconnected set."""
    r = random.Random(seed)
    res = SuiteResult("fc")
    for _ in range(trials):
        f = random_injection(r, stages - 1, 2 * stages)
        g = fc.build_fc_graph(f, stages)
        fc.component_intervals(g)
        A = fc.greedy_tds(g.table, g.vertices)
        guarded = True
        for n in range(stages):
            try:
                ok = fc.decode_range_from_tds(g, A, n) == f.in_range(n, upto=stages - 1)
            except Inconclusive:
                guarded = False
                res.record(None)
                continue
            # answers past the guard index would mean the guard is not a prefix
            res.record(ok and guarded)
    return res


def suite_sigma2(seed: int, samples: int = 1000, H: int = 64) -> SuiteResult:
    """Least-m decoding for two predicates with k = 3, plus the sample bound."""
    r = random.Random(seed)
    res = SuiteResult("sigma2")
    horizon = Horizon(1, 1, H)
    for text, expected in (("eq", 0), ("geq:2", 2)):
        theta = rng_enc.parse_theta(text, 3)
        g = rng_enc.Sigma2Graph(theta, horizon)
        table = components(g.slice())
        brute = rng_enc.brute_least_m(theta, H)
        for block in table.blocks:
            try:
                got = rng_enc.decode_least_m(table, theta, horizon, anchor=min(block))
            except Inconclusive:
                res.record(None)
                continue
            res.record(got == expected == brute)
        verts = g.slice_vertices()
        bound = rng_enc.sample_bound(3)
        for _ in range(samples):
            picked = r.sample(verts, bound)
            res.record(len({table.representative[v] for v in picked}) < bound)
    return res


def suite_cover(seed: int, trials: int = 100) -> SuiteResult:
    """Cover decomposition against the oracle on random slices."""
    r = random.Random(seed)
    res = SuiteResult("cover")
    for _ in range(trials):
        n = r.randint(1, 10)
        g, _ = random_graph(r, n, r.uniform(0.05, 0.5))
        s = slice_graph(g, range(n))
        table = components(s)
        cover = set(r.sample(range(n), r.randint(0, min(n, 3))))
        for block in table.blocks:
            if not cover & block:
                cover.add(r.choice(sorted(block)))
        res.record(rng_enc.decompose_with_cover(s, cover).agrees_with(table))
    return res


def random_partition_fixture(r: random.Random) -> tuple[wp.EnumeratedSequence, int]:
    """A consistent enumeration covering ``0..m-1``; returns it with ``m``."""
    m = r.randint(1, 8)
    nblocks = r.randint(1, m)
    labels = list(range(nblocks)) + [r.randrange(nblocks) for _ in range(m - nblocks)]
    r.shuffle(labels)
    blocks = [[j for j in range(m) if labels[j] == b] for b in range(nblocks)]
    nidx = r.randint(nblocks, nblocks + 3)
    owner = list(range(nblocks)) + [r.randrange(nblocks) for _ in range(nidx - nblocks)]
    r.shuffle(owner)
    entries = [(i, j) for i, b in enumerate(owner) for j in blocks[b]]
    r.shuffle(entries)
    return wp.EnumeratedSequence.from_table(entries), m


def suite_partitions(seed: int, trials: int = 50) -> SuiteResult:
    """Blocks recovered from the partition graph; graphs back to partitions."""
    r = random.Random(seed)
    res = SuiteResult("partitions")
    for _ in range(trials):
        D, m = random_partition_fixture(r)
        horizon = Horizon(1, m, len(D.table))
        res.record(wp.check_weak_partition(D, horizon).ok)
        enumerated = D.blocks(horizon.stages)
        table = components(wp.partition_slice(D, horizon))
        for i in range(max(enumerated) + 1):
            p, X = wp.component_to_block(table, wp.d_code(i))
            res.record(X == enumerated.get(p, frozenset()) == enumerated.get(i, frozenset()))

        n = r.randint(1, 7)
        g, _ = random_graph(r, n, r.uniform(0.1, 0.5))
        gt = components(slice_graph(g, range(n)))
        E = wp.weak_partition_from_graph(g, Horizon(1, n, 1))
        stop = wp.saturation_stage(E)
        res.record(wp.check_weak_partition(E, Horizon(1, n, stop)).ok)
        et = components(wp.partition_slice(E, Horizon(1, n, stop)))
        for v in range(n):
            p, X = wp.component_to_block(et, wp.d_code(v))
            res.record(X == gt.block_of(v) and gt.same(p, v))
    return res


def random_streams(r: random.Random, width: int, H: int) -> list[wr.LpoStream]:
    return [wr.LpoStream.zero_at(r.choice([None, r.randrange(H)])) for _ in range(width)]


def random_cn(r: random.Random) -> tuple[wr.CnInstance, int, int]:
    """Co-singleton or co-finite instance with least missing value < 32;
    returns it with a sufficient horizon and the least missing value."""
    least = r.randrange(32)
    missing = {least} | ({least + r.randint(1, 20) for _ in range(r.randint(0, 3))}
                         if r.random() < 0.5 else set())
    pool = [x for x in range(48) if x not in missing]
    head = r.sample(pool, r.randint(0, len(pool)))
    return wr.CnInstance.complement_of(missing, head), 2 * (len(head) + 64), least


def suite_reductions(seed: int, trials: int = 10) -> SuiteResult:
    r = random.Random(seed)
    res = SuiteResult("reductions")

    def rec(out: wr.Outcome) -> None:
        res.record(None if out.inconclusive else out.valid)

    for _ in range(trials):
        n = r.randint(1, 6)
        g, _ = random_graph(r, n, 0.35)
        h, _ = random_graph(r, r.randint(1, 4), 0.4)
        for v in range(n):
            rec(wr.run_p_to_pxp(g, n, v))
            rec(wr.run_p_to_d(g, n, v))
            rec(wr.run_pxp_to_p(g, h, 6, (v, r.randrange(h.vertex_bound))))
        rec(wr.run_d_to_lpohat(g, n))

        streams = random_streams(r, 4, 8)
        rec(wr.run_lpohat_to_p(streams, 8))
        rec(wr.run_lpohat_to_p(streams, 8, (r.randrange(8),)))
        rec(wr.run_lpohat_to_fc3(streams, 8))
        rec(wr.run_fc_chain(random_injection(r, 60, 120), 61))

        queries = [fc.canonical_index(b) for b in components(slice_graph(g, range(n))).blocks]
        queries += [fc.canonical_index(set(r.sample(range(n), r.randint(1, n)))) for _ in range(4)]
        queries += [r.randrange(1, 200) for _ in range(4)]
        rec(wr.run_fc1_to_lpohat(g, n, queries))

        for k in (2, 3):
            p, T, least = random_cn(r)
            for b in range(k):
                out = wr.run_cn_to_pk(p, T, k, b)
                res.record(None if out.inconclusive else (out.valid and out.answer == least))
            gk = graph_with_blocks(r, r.randint(k, 6), k)
            rec(wr.run_pk_to_dk(gk, gk.vertex_bound, 0))
            rec(wr.run_dk_to_cn(gk, k, gk.vertex_bound))
    return res


def suite_cn(seed: int, trials: int = 50) -> SuiteResult:
    """decode_cn on random co-singleton and co-finite instances."""
    r = random.Random(seed)
    res = SuiteResult("cn")
    for _ in range(trials):
        p, T, least = random_cn(r)
        G = wr.CnGraph(p, 2)
        s = G.slice(T)
        table = components(s)
        for block in table.blocks:
            try:
                res.record(wr.decode_cn(s, table, min(block)) == least)
            except Inconclusive:
                res.record(None)
    return res


def suite_tolerance(seed: int, horizons: tuple[int, ...] = (8, 16, 32)) -> SuiteResult:
    res = SuiteResult("tolerance")
    res.record(wr.differing_edge_indices(1024) == [0])
    for h in horizons:
        res.record(wr.block_families_disjoint(h))
    return res


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "encoder": suite_encoder,
    "variants": suite_variants,
    "fc": suite_fc,
    "sigma2": suite_sigma2,
    "cover": suite_cover,
    "partitions": suite_partitions,
    "reductions": suite_reductions,
    "cn": suite_cn,
    "tolerance": suite_tolerance,
}


def run_suites(name: str, seed: int) -> list[SuiteResult]:
    if name == "all":
        return [fn(seed) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return [SUITES[name](seed)]
