import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hatdigraph import (
    ArgumentError,
    Digraph,
    complete_bipartite,
    directed_cycle,
    directed_path,
    disjoint_union,
    induced_subdigraph,
    is_connected,
    reverse,
    weak_components,
)
from oracles import to_networkx


@st.composite
def digraphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    arcs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    return Digraph(n, frozenset(arcs))


def test_rejects_bad_arcs():
    with pytest.raises(ArgumentError):
        Digraph(2, frozenset({(0, 2)}))
    with pytest.raises(ArgumentError):
        directed_cycle(3).out_neighbours(5)


def test_complete_bipartite_shape():
    K = complete_bipartite(2, 3)
    assert K.n == 5 and len(K.arcs) == 6
    assert K.sources() == [0, 1] and K.sinks() == [2, 3, 4]


def test_path_and_cycle():
    assert directed_path(3).has_sinks_or_sources()
    C = directed_cycle(4)
    assert not C.has_sinks_or_sources()
    assert C.is_asymmetric()


def test_disjoint_union_and_components():
    D = disjoint_union(directed_cycle(3), directed_cycle(2))
    assert D.n == 5
    assert len(set(weak_components(D))) == 2
    assert not is_connected(D)


def test_induced_subdigraph_keeps_order():
    sub, keep = induced_subdigraph(directed_cycle(5), [3, 0, 4])
    assert keep == [0, 3, 4]
    assert sub.arcs == frozenset({(1, 2), (2, 0)})


@given(digraphs())
def test_reverse_is_involution(D):
    assert reverse(reverse(D)) == D
    assert all(D.out_valency(v) == reverse(D).in_valency(v) for v in range(D.n))


@given(digraphs())
def test_valency_sums_equal_arc_count(D):
    assert sum(D.out_valency(v) for v in range(D.n)) == len(D.arcs)
    assert sum(D.in_valency(v) for v in range(D.n)) == len(D.arcs)


@settings(max_examples=60)
@given(digraphs())
def test_connectivity_matches_networkx(D):
    assert is_connected(D) == nx.is_weakly_connected(to_networkx(D))
    assert len(set(weak_components(D))) == nx.number_weakly_connected_components(to_networkx(D))
