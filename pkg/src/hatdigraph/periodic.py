"""Integer-voltage presentations of two-way-infinite periodic digraphs.

A presentation has ``cells`` base vertices and a set of voltage arcs
``(tail, head, shift)``.  Its derived digraph has vertex set Z x cells and an
arc ``(t, tail) -> (t + shift, head)`` for every integer ``t``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from hatdigraph.digraph import Digraph
from hatdigraph.errors import ArgumentError, PreconditionError

VArc = tuple[int, int, int]


@dataclass(frozen=True)
class VoltagePresentation:
    cells: int
    varcs: frozenset[VArc]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.cells < 1:
            raise ArgumentError(f"a presentation needs at least one cell, got {self.cells}")
        varcs = frozenset((int(u), int(w), int(s)) for u, w, s in self.varcs)
        for u, w, _ in varcs:
            if not (0 <= u < self.cells and 0 <= w < self.cells):
                raise ArgumentError(f"varc {(u, w)} has a cell outside 0..{self.cells - 1}")
        object.__setattr__(self, "varcs", varcs)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.cells:
                raise ArgumentError(f"expected {self.cells} cell labels, got {len(labels)}")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_varcs(cls, cells: int, varcs: Iterable[Sequence[int]], labels: Sequence[str] | None = None):
        return cls(cells, frozenset((a[0], a[1], a[2]) for a in varcs), None if labels is None else tuple(labels))

    @property
    def sorted_varcs(self) -> list[VArc]:
        return sorted(self.varcs)

    @property
    def max_shift(self) -> int:
        return max((abs(s) for _, _, s in self.varcs), default=0)

    def cell_label(self, c: int) -> str:
        return self.labels[c] if self.labels is not None else str(c)

    def out_valencies(self) -> list[int]:
        out = [0] * self.cells
        for u, _, _ in self.varcs:
            out[u] += 1
        return out

    def in_valencies(self) -> list[int]:
        inn = [0] * self.cells
        for _, w, _ in self.varcs:
            inn[w] += 1
        return inn

    def __repr__(self) -> str:
        return f"VoltagePresentation(cells={self.cells}, varcs={len(self.varcs)})"


@dataclass(frozen=True)
class Leveling:
    """A homomorphism onto the directed line, ``(t, v) -> stride * t + potential[v]``.

    For presentations in the usual normal form ``stride`` is 1 and the
    condition on a varc ``(u, w, s)`` reads ``potential[w] - potential[u] = 1 - s``.
    """

    potential: tuple[int, ...]
    stride: int = 1

    def level(self, t: int, cell: int) -> int:
        return self.stride * t + self.potential[cell]


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    # generator of the subgroup of Z spanned by closed-walk voltages; 0 if trivial
    local_group: int
    base_connected: bool

    @property
    def components(self) -> int | None:
        """Number of weak components of the derived digraph (None if infinite)."""
        if not self.base_connected or self.local_group == 0:
            return None
        return self.local_group


def _window_id(P: VoltagePresentation, lo: int, t: int, c: int) -> int:
    return (t - lo) * P.cells + c


def window_vertex(P: VoltagePresentation, lo: int, t: int, cell: int) -> int:
    """Vertex id of ``(t, cell)`` inside ``window(P, lo, hi)``."""
    return _window_id(P, lo, t, cell)


def window_position(P: VoltagePresentation, lo: int, vertex: int) -> tuple[int, int]:
    """Inverse of :func:`window_vertex`: ``(level, cell)``."""
    t, c = divmod(vertex, P.cells)
    return t + lo, c


def window(P: VoltagePresentation, lo: int, hi: int) -> Digraph:
    """Induced subdigraph of the derived digraph on translation levels lo..hi."""
    if lo > hi:
        raise ArgumentError(f"window needs lo <= hi, got {lo}:{hi}")
    arcs = set()
    for t in range(lo, hi + 1):
        for u, w, s in P.varcs:
            if lo <= t + s <= hi:
                arcs.add((_window_id(P, lo, t, u), _window_id(P, lo, t + s, w)))
    labels = tuple(f"{t}:{P.cell_label(c)}" for t in range(lo, hi + 1) for c in range(P.cells))
    return Digraph((hi - lo + 1) * P.cells, frozenset(arcs), labels)


def cyclic_quotient(P: VoltagePresentation, n: int) -> Digraph:
    """Reduce translation levels modulo ``n``; coinciding arcs collapse."""
    if n < 1:
        raise ArgumentError(f"quotient size must be >= 1, got {n}")
    arcs = frozenset(
        (t * P.cells + u, ((t + s) % n) * P.cells + w) for t in range(n) for u, w, s in P.varcs
    )
    labels = tuple(f"{t}:{P.cell_label(c)}" for t in range(n) for c in range(P.cells))
    return Digraph(n * P.cells, arcs, labels)


def is_folded(P: VoltagePresentation, n: int) -> bool:
    """True when quotient size ``n`` is too small to be trusted for symmetry checks."""
    return n <= 2 * P.max_shift


def _spanning_potentials(P: VoltagePresentation):
    """BFS over the undirected cell multigraph.

    Returns per-cell ``(arc_count, voltage)`` potentials along a spanning
    forest, the list of cycle values ``(net arcs, net shift)`` of the
    non-tree varcs, and whether the cell multigraph is connected.
    """
    incident: list[list[tuple[int, int, int, int]]] = [[] for _ in range(P.cells)]
    varcs = P.sorted_varcs
    for i, (u, w, s) in enumerate(varcs):
        incident[u].append((i, w, s, +1))
        incident[w].append((i, u, s, -1))
    pot: list[tuple[int, int] | None] = [None] * P.cells
    tree_arcs = set()
    pot[0] = (0, 0)
    queue = deque([0])
    while queue:
        u = queue.popleft()
        a, h = pot[u]
        for i, other, s, sign in incident[u]:
            if pot[other] is None:
                pot[other] = (a + sign, h + sign * s)
                tree_arcs.add(i)
                queue.append(other)
    base_connected = all(p is not None for p in pot)
    cycles = []
    for i, (u, w, s) in enumerate(varcs):
        if i in tree_arcs or pot[u] is None or pot[w] is None:
            continue
        cycles.append((pot[u][0] + 1 - pot[w][0], pot[u][1] + s - pot[w][1]))
    return pot, cycles, base_connected


def derived_connectivity(P: VoltagePresentation) -> Connectivity:
    """Exact weak-connectivity test for the derived digraph.

    The derived digraph is connected iff the cell multigraph is connected
    and the net shifts of its closed walks generate all of Z.
    """
    _, cycles, base_connected = _spanning_potentials(P)
    g = 0
    for _, sigma in cycles:
        g = math.gcd(g, sigma)
    return Connectivity(base_connected and g == 1, g, base_connected)


def is_derived_connected(P: VoltagePresentation) -> bool:
    return derived_connectivity(P).connected


def property_z(P: VoltagePresentation) -> Leveling | None:
    """Leveling witnessing Property Z, or None.

    Raises PreconditionError when the derived digraph is disconnected.
    """
    if not is_derived_connected(P):
        raise PreconditionError("property_z needs a presentation with connected derived digraph")
    pot, cycles, _ = _spanning_potentials(P)
    stride = None
    for length, sigma in cycles:
        if sigma == 0:
            if length != 0:
                return None
            continue
        if length % sigma:
            return None
        c = length // sigma
        if stride is None:
            stride = c
        elif stride != c:
            return None
    if not stride:
        # connected derived digraph guarantees some cycle with sigma != 0
        return None
    raw = [a - stride * h for a, h in pot]
    low = min(raw)
    return Leveling(tuple(x - low for x in raw), stride)


def is_leveling(P: VoltagePresentation, L: Leveling) -> bool:
    if len(L.potential) != P.cells or L.stride == 0:
        return False
    return all(L.potential[w] - L.potential[u] == 1 - L.stride * s for u, w, s in P.varcs)


def require_graded(P: VoltagePresentation, L: Leveling | None = None) -> Leveling:
    if L is None:
        L = property_z(P)
        if L is None:
            raise PreconditionError("the presentation does not have Property Z")
    elif not is_leveling(P, L):
        raise PreconditionError("the given leveling is not valid for this presentation")
    return L


def fibre_size(P: VoltagePresentation, L: Leveling | None = None) -> int:
    """Number of vertices in each fibre of the leveling."""
    L = require_graded(P, L)
    k = abs(L.stride)
    counts = [0] * k
    for p in L.potential:
        counts[p % k] += 1
    if len(set(counts)) != 1:
        raise PreconditionError(f"fibres have unequal sizes {counts}")
    return counts[0]


def layered(P: VoltagePresentation, L: Leveling | None = None) -> VoltagePresentation:
    """Re-anchor every cell at its fibre so that all shifts become +1.

    The derived digraphs are isomorphic via ``(t, v) -> (stride*t + potential[v], v)``.
    Only strides of absolute value 1 have such a form.
    """
    L = require_graded(P, L)
    if abs(L.stride) != 1:
        raise PreconditionError(f"leveling stride {L.stride} has no single-cell-per-fibre form")
    return VoltagePresentation(P.cells, frozenset((u, w, 1) for u, w, _ in P.varcs), P.labels)


def is_layered(P: VoltagePresentation) -> bool:
    return all(s == 1 for _, _, s in P.varcs)


def window_levels(P: VoltagePresentation, L: Leveling, lo: int, hi: int) -> list[int]:
    """Leveling value of every vertex of ``window(P, lo, hi)``."""
    return [L.level(t, c) for t in range(lo, hi + 1) for c in range(P.cells)]


def directed_line() -> VoltagePresentation:
    return VoltagePresentation(1, frozenset({(0, 0, 1)}))
