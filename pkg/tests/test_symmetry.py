import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hatdigraph import (
    CapacityError,
    Digraph,
    automorphisms,
    complete_bipartite,
    cyclic_quotient,
    delta_p,
    directed_cycle,
    enumerate_k_arcs,
    is_arc_transitive,
    is_isomorphic,
    is_k_arc_regular,
    is_k_arc_transitive,
    is_vertex_transitive,
    ladder,
    rooted_tree,
    vertex_orbits,
    vertex_stabilizer_order,
)
from hatdigraph.symmetry import compose, inverse, is_automorphism
from oracles import naive_automorphism_count, nx_automorphism_count, nx_isomorphic
from test_digraph import digraphs


def relabel(D: Digraph, perm) -> Digraph:
    return Digraph(D.n, frozenset((perm[u], perm[v]) for u, v in D.arcs))


def test_frozen_quotient_orders(aut_orders):
    for (p, n) in [(2, 3), (2, 4), (3, 3)]:
        assert automorphisms(cyclic_quotient(delta_p(p), n)).order == aut_orders[f"delta_{p}_quotient_{n}"]
        assert aut_orders[f"delta_{p}_quotient_{n}"] == math.factorial(p) ** n * n
    for n in (3, 4, 5):
        assert automorphisms(cyclic_quotient(ladder(), n)).order == aut_orders[f"ladder_quotient_{n}"] == 2 * n


def test_generators_are_automorphisms_and_close_to_the_group():
    D = cyclic_quotient(delta_p(2), 3)
    A = automorphisms(D)
    assert all(is_automorphism(D, g) for g in A.generators)
    assert len(A.elements) == 24
    g = A.generators[0]
    assert compose(g, inverse(g)) == tuple(range(D.n))


def test_cap_limits_listing_not_the_order():
    A = automorphisms(cyclic_quotient(delta_p(3), 3), cap=10)
    assert A.order == 648 and not A.complete
    with pytest.raises(CapacityError):
        A.elements
    with pytest.raises(CapacityError):
        is_k_arc_regular(A.digraph, 1, A)


def test_colours_and_fixed_points_restrict():
    D = directed_cycle(6)
    assert automorphisms(D).order == 6
    assert automorphisms(D, colours=[v % 2 for v in range(6)]).order == 3
    assert automorphisms(D, fix=[0]).order == 1


def test_transitivity_verdicts():
    C = directed_cycle(5)
    assert is_vertex_transitive(C) and is_arc_transitive(C)
    assert is_k_arc_regular(C, 3)
    Q = cyclic_quotient(ladder(), 4)
    assert is_vertex_transitive(Q) and not is_arc_transitive(Q)
    T = rooted_tree(2, 2)
    assert not is_vertex_transitive(T)
    verdict = is_k_arc_transitive(rooted_tree(2, 1), 2)
    assert verdict.transitive and verdict.vacuous


def test_k_arcs_allow_repeats():
    loop = Digraph(1, frozenset({(0, 0)}))
    assert enumerate_k_arcs(loop, 3) == [(0, 0, 0, 0)]


def test_stabilizer_order():
    K = complete_bipartite(2, 2)
    assert automorphisms(K).order == 4
    assert vertex_stabilizer_order(K, 0) == 2
    assert vertex_stabilizer_order(cyclic_quotient(delta_p(2), 3), 0) == 4


def test_isomorphism_distinguishes_in_and_out_twins():
    K = complete_bipartite(1, 2)
    assert is_isomorphic(K, relabel(K, (2, 0, 1))) is not None
    assert is_isomorphic(K, Digraph(3, frozenset({(1, 0), (2, 0)}))) is None


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=6))
def test_order_matches_backtracking_oracle(D):
    assert automorphisms(D).order == naive_automorphism_count(D.n, D.arcs)


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=7), st.randoms(use_true_random=False))
def test_isomorphism_against_networkx(D, rng):
    perm = list(range(D.n))
    rng.shuffle(perm)
    E = relabel(D, perm)
    m = is_isomorphic(D, E)
    assert m is not None
    assert {(m[u], m[v]) for u, v in D.arcs} == set(E.arcs)
    F = Digraph(D.n, frozenset(list(E.arcs)[1:]))
    assert (is_isomorphic(D, F) is not None) == nx_isomorphic(D, F)


@settings(max_examples=30, deadline=None)
@given(digraphs(max_n=6))
def test_orbit_stabilizer(D):
    A = automorphisms(D)
    for orbit in vertex_orbits(A):
        v = orbit[0]
        assert len(orbit) * vertex_stabilizer_order(D, v, A) == A.order


def test_networkx_counts_on_quotients():
    for p, n in [(2, 3), (2, 4)]:
        D = cyclic_quotient(delta_p(p), n)
        assert automorphisms(D).order == nx_automorphism_count(D)
