import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hatdigraph import (
    ArgumentError,
    PreconditionError,
    VoltagePresentation,
    cyclic_quotient,
    delta_p,
    derived_connectivity,
    directed_line,
    fibre_size,
    is_connected,
    is_folded,
    ladder,
    layered,
    property_z,
    psi_n,
    window,
)
from hatdigraph.digraph import weak_components
from hatdigraph.periodic import is_layered, is_leveling, window_position, window_vertex
from oracles import brute_property_z


@st.composite
def presentations(draw, max_cells=4, max_shift=2):
    cells = draw(st.integers(1, max_cells))
    cell = st.integers(0, cells - 1)
    varcs = draw(st.sets(st.tuples(cell, cell, st.integers(-max_shift, max_shift)), min_size=1, max_size=3 * cells))
    return VoltagePresentation(cells, frozenset(varcs))


def test_window_of_delta_2():
    W = window(delta_p(2), 0, 1)
    assert W.n == 4 and len(W.arcs) == 4
    assert W.labels == ("0:0", "0:1", "1:0", "1:1")


def test_window_vertex_round_trip():
    P = psi_n(3)
    for t in range(-2, 3):
        for c in range(3):
            assert window_position(P, -2, window_vertex(P, -2, t, c)) == (t, c)


def test_quotient_and_folding():
    Q = cyclic_quotient(delta_p(2), 3)
    assert Q.n == 6 and len(Q.arcs) == 12
    assert is_folded(ladder(), 2) and not is_folded(ladder(), 3)
    with pytest.raises(ArgumentError):
        cyclic_quotient(delta_p(2), 0)
    with pytest.raises(ArgumentError):
        window(delta_p(2), 2, 1)


def test_connectivity_not_visible_in_a_window():
    # cells 0 and 1 only meet through a shift-5 varc
    P = VoltagePresentation(2, frozenset({(0, 0, 1), (1, 0, 5)}))
    assert derived_connectivity(P).connected
    assert not is_connected(window(P, 0, 3))


def test_disconnected_presentations():
    doubled = VoltagePresentation(1, frozenset({(0, 0, 2)}))
    assert derived_connectivity(doubled).components == 2
    with pytest.raises(PreconditionError):
        property_z(doubled)
    split = VoltagePresentation(2, frozenset({(0, 0, 1), (1, 1, 1)}))
    assert not derived_connectivity(split).connected


def test_known_levelings():
    assert property_z(delta_p(2)).potential == (0, 0)
    assert property_z(directed_line()).potential == (0,)
    assert property_z(ladder()) is None
    for n in range(2, 6):
        assert property_z(psi_n(n)) is None


def test_general_stride_is_layered_back():
    # two cells per translation period, so each translation climbs two levels
    P = VoltagePresentation(2, frozenset({(0, 1, 0), (1, 0, 1)}))
    L = property_z(P)
    assert L.stride == 2 and is_leveling(P, L)
    assert fibre_size(P, L) == 1
    with pytest.raises(PreconditionError):
        layered(P, L)


def test_reversed_orientation_stride():
    P = VoltagePresentation(1, frozenset({(0, 0, -1)}))
    L = property_z(P)
    assert L.stride == -1
    assert is_layered(layered(P, L))


@settings(max_examples=150)
@given(presentations())
def test_property_z_agrees_with_brute_force(P):
    assume(derived_connectivity(P).connected)
    L = property_z(P)
    if L is not None:
        assert is_leveling(P, L)
        assert min(L.potential) == 0
    if brute_property_z(P):
        assert L is not None
    if L is not None and abs(L.stride) == 1:
        assert brute_property_z(P, span=max(L.potential) + 1)


@settings(max_examples=150)
@given(presentations(), st.integers(1, 8))
def test_quotient_components_follow_local_group(P, n):
    c = derived_connectivity(P)
    assume(c.base_connected)
    assert len(set(weak_components(cyclic_quotient(P, n)))) == math.gcd(c.local_group, n)


@settings(max_examples=80)
@given(presentations(max_shift=1), st.integers(-2, 2), st.integers(1, 3))
def test_window_is_translation_invariant(P, t, width):
    assert window(P, 0, width).arcs == window(P, t, t + width).arcs


@settings(max_examples=80)
@given(presentations())
def test_unfolded_quotient_keeps_every_arc(P):
    n = 2 * P.max_shift + 1
    assert len(cyclic_quotient(P, n).arcs) == n * len(P.varcs)
