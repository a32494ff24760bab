import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcomp import _kernels
from graphcomp.codec import validate_injection
from graphcomp.graph import (EffectiveGraph, check_bounded, components, export_dot, export_json,
                             find_path, finite_graph, is_acyclic, is_path, slice_graph,
                             slice_graph_bruteforce)
from graphcomp.range_encodings import RangeGraph, encode_range_graph, v_code
from graphcomp.codec import encode_seq


@st.composite
def small_graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return n, edges


def nx_blocks(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return sorted(frozenset(c) for c in nx.connected_components(g))


def test_slice_examples():
    empty = EffectiveGraph(lambda v: v >= 0, lambda a, b: False)
    assert slice_graph(empty, [0, 1, 2]).edges == frozenset()
    complete = EffectiveGraph(lambda v: v >= 0, lambda a, b: True)
    assert slice_graph(complete, [0, 1]).edges == {(0, 1)}


def test_slice_rejects_non_vertex():
    g = finite_graph(3, [])
    with pytest.raises(ValueError):
        slice_graph(g, [0, 5])


def test_slice_dedupes():
    s = slice_graph(finite_graph(3, [(0, 1)]), [1, 0, 1])
    assert s.vertices == (1, 0)


def test_small_injection_adjacency():
    # f(1)=2 and f(3)=0 must show up as diagonals from the root spine
    f = validate_injection([5, 2, 6, 0])
    g = encode_range_graph(f)
    verts = g.vertices_below(150)
    assert len(verts) == 50
    s = slice_graph(g, verts)
    assert s == slice_graph_bruteforce(g, verts)
    assert s.has_edge(v_code(0, 1), v_code(encode_seq([2]), 0))
    assert s.has_edge(v_code(0, 3), v_code(encode_seq([0]), 0))
    assert s.has_edge(v_code(0, 0), v_code(0, 1))
    assert not s.has_edge(v_code(0, 0), v_code(encode_seq([0]), 0))


def test_component_examples():
    assert len(components(slice_graph(finite_graph(3, []), range(3))).blocks) == 3
    assert components(slice_graph(finite_graph(3, [(0, 1), (1, 2)]), range(3))).blocks == (
        frozenset({0, 1, 2}),)
    tri = finite_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    t = components(slice_graph(tri, range(6)))
    assert t.blocks == (frozenset({0, 1, 2}), frozenset({3, 4, 5}))
    assert t.representative[5] == 3


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_components_match_networkx(data):
    n, edges = data
    t = components(slice_graph(finite_graph(n, edges), range(n)))
    assert sorted(t.blocks) == nx_blocks(n, edges)
    for b in t.blocks:
        assert all(t.representative[v] == min(b) for v in b)


@settings(max_examples=100, deadline=None)
@given(small_graphs(max_n=9))
def test_path_witness_iff_same_block(data):
    n, edges = data
    s = slice_graph(finite_graph(n, edges), range(n))
    t = components(s)
    for u in range(n):
        for v in range(n):
            p = find_path(s, u, v)
            assert (p is not None) == t.same(u, v)
            if p is not None:
                assert p[0] == u and p[-1] == v and is_path(s, p)


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=10), st.integers(1, 10))
def test_blocks_grow_monotonically(data, cut):
    n, edges = data
    g = finite_graph(n, edges)
    small = components(slice_graph(g, range(min(cut, n))))
    big = components(slice_graph(g, range(n)))
    for b in small.blocks:
        assert b <= big.block_of(min(b))


def test_find_path_examples():
    s = slice_graph(finite_graph(3, [(0, 1), (1, 2)]), range(3))
    assert find_path(s, 0, 2) == (0, 1, 2)
    assert find_path(slice_graph(finite_graph(2, []), range(2)), 0, 1) is None
    assert find_path(slice_graph(finite_graph(3, [(0, 1), (1, 2), (0, 2)]), range(3)), 0, 0) == (0,)
    with pytest.raises(KeyError):
        find_path(s, 0, 9)


def test_acyclic_examples():
    tree = finite_graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert is_acyclic(slice_graph(tree, range(5)))
    assert not is_acyclic(slice_graph(finite_graph(3, [(0, 1), (1, 2), (0, 2)]), range(3)))


@settings(max_examples=100, deadline=None)
@given(small_graphs(max_n=9))
def test_acyclic_matches_networkx(data):
    n, edges = data
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    assert is_acyclic(slice_graph(finite_graph(n, edges), range(n))) == nx.is_forest(g)


def test_bounded_examples():
    assert check_bounded(slice_graph(finite_graph(3, []), range(3)), lambda v: 0)
    s = slice_graph(finite_graph(6, [(0, 5)]), range(6))
    assert not check_bounded(s, lambda v: 3)
    f = validate_injection([2, 0, 3])
    rg = RangeGraph(f, "bounded")
    from graphcomp.range_encodings import range_slice_vertices
    assert check_bounded(slice_graph(rg.as_effective(), range_slice_vertices(f, 2, 4)), rg.bound)


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_kernel_paths_agree(data):
    n, edges = data
    arr = np.array(edges, dtype=np.int64).reshape(-1, 2)
    a = _kernels.label_components_numpy(n, arr)
    if _kernels._HAVE_NUMBA:
        assert (a == _kernels.label_components_numba(n, arr)).all()


def test_exports_are_stable():
    s = slice_graph(finite_graph(3, [(1, 2)]), [0, 1, 2])
    assert export_dot(s) == "graph G {\n  0;\n  1;\n  2;\n  1 -- 2;\n}\n"
    assert export_json(s) == '{"vertices":[0,1,2],"edges":[[1,2]],"labels":{}}\n'


def test_deterministic():
    f = validate_injection([2, 0, 3])
    g = encode_range_graph(f)
    from graphcomp.range_encodings import range_slice_vertices
    vs = range_slice_vertices(f, 1, 4)
    assert export_dot(slice_graph(g, vs)) == export_dot(slice_graph(g, vs))
