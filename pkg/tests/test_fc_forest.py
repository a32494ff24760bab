import itertools
import os
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcomp import _kernels
from graphcomp import fc_forest as fc
from graphcomp.codec import Horizon, validate_injection
from graphcomp.errors import Inconclusive
from graphcomp.graph import components, finite_graph, slice_graph


def replay(f, stages):
    """Straight-line version of the two attention clauses."""
    def h(s, e):
        return max((n for n in range(s) if f(n) <= e), default=-1)

    comps, log = [], []
    for s in range(stages):
        if s == 0:
            comps = [[0, 0]]
        att = next((c[0] for c in comps if h(s, c[0]) > h(c[1], c[0])), None)
        log.append(att)
        if att is None:
            comps.append([s + 1, s + 1])
        else:
            comps = [c for c in comps if c[0] < att] + [[att, s + 1]]
    return log


prefixes = st.integers(1, 40).flatmap(
    lambda n: st.lists(st.integers(0, 2 * n), unique=True, min_size=n, max_size=n)
).map(validate_injection)


def test_h_examples():
    ident = validate_injection(range(8))
    assert fc.h(ident, 5, 3) == 3
    assert fc.h(validate_injection([5, 0, 3]), 3, 3) == 2
    assert fc.h(ident, 0, 4) == -1
    with pytest.raises(ValueError):
        fc.h(ident, 9, 0)


def test_stabilization_examples():
    assert fc.stabilization_bound(validate_injection([5, 0, 3]), 0) == 2
    assert fc.stabilization_bound(validate_injection(range(8)), 3) == 4
    assert fc.stabilization_bound(validate_injection([9, 7, 8]), 3) == 0
    assert fc.stabilization_bound(validate_injection([5, 0, 3]), 1, certified_only=True) is None


@settings(max_examples=60, deadline=None)
@given(prefixes, st.integers(0, 10))
def test_stabilization_bound_is_stable(f, e):
    t = fc.stabilization_bound(f, e)
    for s in range(t + 1, f.support + 1):
        assert all(fc.h(f, s, x) == fc.h(f, t, x) for x in range(e + 1))


def test_no_attention_run():
    f = validate_injection([n + 100 for n in range(10)])
    g = fc.build_fc_graph(f, 9)
    assert not g.edges
    assert all(iv.hi - iv.lo == 1 for iv in fc.component_intervals(g))


def test_single_zero_example():
    g = fc.build_fc_graph(validate_injection([0]), 2)
    assert g.edges == {(0, 2), (1, 2)}
    assert g.trace() == "stage=1 attend=none\nstage=2 attend=0\n"
    assert fc.component_intervals(g)[0] == fc.ComponentInterval(0, 3)


def test_identity_log_matches_replay():
    f = validate_injection(range(17))
    g = fc.build_fc_graph(f, 16)
    assert [e for e, _ in g.attention_log] == replay(f, 16)


@settings(max_examples=80, deadline=None)
@given(prefixes)
def test_log_matches_replay(f):
    g = fc.build_fc_graph(f, f.support + 1)
    assert [e for e, _ in g.attention_log] == replay(f, f.support + 1)


@settings(max_examples=60, deadline=None)
@given(prefixes)
def test_kernel_paths_agree(f):
    fv = np.asarray(f.values, dtype=np.int64)
    a = _kernels.fc_attention_numpy(fv, f.support + 1)
    if _kernels._HAVE_NUMBA:
        assert (a == _kernels.fc_attention_numba(fv, f.support + 1)).all()


@settings(max_examples=60, deadline=None)
@given(prefixes)
def test_edges_stable_and_intervals_partition(f):
    g = fc.build_fc_graph(f, f.support + 1)
    for s in range(g.stages):
        early = fc.build_fc_graph(f, s)
        assert early.edges == {e for e in g.edges if e[1] <= s}
    ivs = fc.component_intervals(g)
    assert [iv.lo for iv in ivs] == sorted(iv.lo for iv in ivs)
    assert sum(iv.hi - iv.lo for iv in ivs) == g.stages + 1
    assert all(a.hi == b.lo for a, b in zip(ivs, ivs[1:]))


@settings(max_examples=40, deadline=None)
@given(prefixes)
def test_closed_intervals_never_grow(f):
    g = fc.build_fc_graph(f, f.support + 1)
    closed = [iv for iv in fc.component_intervals(g) if not fc.is_pending(g, iv)]
    for s in range(f.support + 1):
        short = fc.build_fc_graph(f, s)
        for iv in fc.component_intervals(short):
            if not fc.is_pending(short, iv):
                assert iv in fc.component_intervals(g)
    assert all(iv in fc.component_intervals(g) for iv in closed)


def test_build_rejects_short_prefix():
    with pytest.raises(ValueError):
        fc.build_fc_graph(validate_injection([0]), 3)


def test_decode_no_attention():
    f = validate_injection([n + 3 for n in range(12)])
    g = fc.build_fc_graph(f, 12)
    A = fc.TotallyDisconnectedSet(g.vertices)
    assert fc.decode_range_from_tds(g, A, 5) is True
    assert fc.decode_range_from_tds(g, A, 1) is False


def test_decode_empty_set_inconclusive():
    g = fc.build_fc_graph(validate_injection([3, 1, 2]), 3)
    with pytest.raises(Inconclusive):
        fc.decode_range_from_tds(g, fc.TotallyDisconnectedSet(()), 0)


def test_decode_uses_interval_start_not_member_index():
    # v_2 sits in the closed interval [0, 3) but 1 = f(10) arrives later;
    # reading the first member above n would answer "no"
    f = validate_injection([0] + [50 + n for n in range(9)] + [1] + [80 + n for n in range(10)])
    g = fc.build_fc_graph(f, f.support + 1)
    assert g.table.block_of(2) == {0, 1, 2}
    minima = fc.greedy_tds(g.table, g.vertices).indices
    A = fc.TotallyDisconnectedSet((2,) + minima[1:])
    assert fc.decode_range_from_tds(g, A, 1) is True


@settings(max_examples=60, deadline=None)
@given(prefixes)
def test_decode_matches_range(f):
    g = fc.build_fc_graph(f, f.support + 1)
    A = fc.greedy_tds(g.table, g.vertices)
    for n in range(f.support + 2):
        try:
            got = fc.decode_range_from_tds(g, A, n)
        except Inconclusive:
            continue
        assert got == f.in_range(n)


def test_canonical_index_examples():
    assert fc.canonical_index({0, 1}) == 3
    assert fc.canonical_index({2}) == 4
    assert fc.canonical_index({1, 2, 3}) == 2250
    with pytest.raises(ValueError):
        fc.canonical_index(set())


def test_canonical_index_injective_small_sets():
    seen = {}
    for size in range(1, 9):
        for S in itertools.combinations(range(8), size):
            code = fc.canonical_index(S)
            assert code not in seen
            seen[code] = S
            assert fc.canonical_set(code) == frozenset(S)
    assert fc.canonical_set(12) is None


def test_fc1_indices_examples():
    assert fc.fc1_indices(slice_graph(finite_graph(3, []), range(3))) == [1, 2, 4]
    assert fc.fc1_indices(slice_graph(finite_graph(4, [(0, 1), (2, 3)]), range(4))) == [3, 108]
    with pytest.raises(Inconclusive):
        fc.fc1_indices(slice_graph(finite_graph(2, []), range(2)), lambda b: False)


def test_fc1_indices_distinct_on_fc_run():
    f = validate_injection(random.Random(4).sample(range(100), 50))
    g = fc.build_fc_graph(f, 51)
    idx = fc.fc1_indices(g.slice())
    assert len(set(idx)) == len(idx)


def test_fc2_to_fc3_examples():
    ident = lambda i, v: int(v == i)
    assert fc.fc2_to_fc3(ident, Horizon(1, 4, 8)).indices == (0, 1, 2, 3)
    wit = [3, 1, 5]
    assert fc.fc2_to_fc3(lambda i, v: int(v == wit[i]), Horizon(1, 3, 8)).indices == (3, 5)
    assert fc.fc2_to_fc3(ident, Horizon(1, 1, 8)).indices == (0,)
    with pytest.raises(Inconclusive):
        fc.fc2_to_fc3(lambda i, v: 0, Horizon(1, 1, 4))


@settings(max_examples=40, deadline=None)
@given(prefixes)
def test_fc_chain_totally_disconnected(f):
    g = fc.build_fc_graph(f, f.support + 1)
    idx = fc.fc1_indices(g.slice())
    A = fc.fc2_to_fc3(fc.fc1_to_fc2(idx), Horizon(1, len(idx), g.stages + 1))
    reps = [g.table.representative[a] for a in A.indices]
    assert len(set(reps)) == len(reps)


def test_pure_numpy_flag_subprocess():
    import subprocess, sys
    code = "from graphcomp import _kernels; print(_kernels.USE_NUMBA)"
    env = dict(os.environ, GRAPHCOMP_PURE_NUMPY="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "False"
