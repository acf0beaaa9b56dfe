"""Constructive operators and example families.

Finite and periodic partial line digraphs, blow-ups, and generators for
Delta_p, Psi_n, the ladder, rooted trees and the two-ended construction
built from an edge- but not vertex-transitive bipartite graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from hatdigraph.digraph import Digraph
from hatdigraph.errors import ArgumentError
from hatdigraph.periodic import VoltagePresentation

FAMILIES = ("delta_p", "psi_n", "ladder", "tree", "folkman_two_ended", "blowup", "pl_power")


def _walk_label(tail: str, head: str) -> str:
    # labels are '>'-joined walks; consecutive r-arcs overlap in r-1 vertices
    a = tail.split(">")
    b = head.split(">")
    if a[1:] == b[:-1]:
        return ">".join(a + b[-1:])
    return f"{tail}>{head}"


def pl(D: Digraph) -> Digraph:
    """Partial line digraph: vertices are the arcs of D, arcs are its 2-arcs."""
    arcs = D.sorted_arcs
    index = {a: i for i, a in enumerate(arcs)}
    new_arcs = frozenset(
        (index[(x, y)], index[(y, z)]) for x, y in arcs for z in D.out_neighbours(y)
    )
    labels = tuple(_walk_label(D.label(x), D.label(y)) for x, y in arcs)
    return Digraph(len(arcs), new_arcs, labels)


def pl_times(D: Digraph, r: int) -> Digraph:
    if r < 0:
        raise ArgumentError(f"r must be non-negative, got {r}")
    for _ in range(r):
        D = pl(D)
    return D


def pl_periodic(P: VoltagePresentation) -> VoltagePresentation:
    """Partial line digraph of a presentation.

    New cells are the varcs of P anchored at their tail level; the cell
    ``(u, v, s1)`` points at ``(v, w, s2)`` with shift ``s1``.
    """
    varcs = P.sorted_varcs
    index = {a: i for i, a in enumerate(varcs)}
    by_tail: dict[int, list[tuple[int, int, int]]] = {}
    for a in varcs:
        by_tail.setdefault(a[0], []).append(a)
    new = frozenset(
        (index[a1], index[a2], a1[2]) for a1 in varcs for a2 in by_tail.get(a1[1], ())
    )
    labels = tuple(_walk_label(P.cell_label(u), P.cell_label(w)) + ("" if s == 1 else f"@{s}") for u, w, s in varcs)
    return VoltagePresentation(len(varcs), new, labels)


def pl_power(P: VoltagePresentation, r: int) -> VoltagePresentation:
    if r < 0:
        raise ArgumentError(f"r must be non-negative, got {r}")
    for _ in range(r):
        P = pl_periodic(P)
    return P


def delta_p(p: int) -> VoltagePresentation:
    """Z x Z_p with every arc (i, x) -> (i+1, y)."""
    if p < 2:
        raise ArgumentError(f"delta_p needs p >= 2, got {p}")
    return VoltagePresentation(p, frozenset((x, y, 1) for x in range(p) for y in range(p)))


def psi_n(n: int) -> VoltagePresentation:
    """Horizontal lines (k, k, +1) glued to zig-zag lines (k, k+1 mod n, -1)."""
    if n < 2:
        raise ArgumentError(f"psi_n needs n >= 2, got {n}")
    varcs = {(k, k, 1) for k in range(n)} | {(k, (k + 1) % n, -1) for k in range(n)}
    return VoltagePresentation(n, frozenset(varcs))


def ladder() -> VoltagePresentation:
    """Bottom rail forwards, top rail backwards, rungs in both directions."""
    return VoltagePresentation(2, frozenset({(0, 0, 1), (1, 1, -1), (0, 1, 0), (1, 0, 0)}))


def blow_up(P: VoltagePresentation, k: int) -> VoltagePresentation:
    """Replace each cell by k copies and each varc by all k*k copies."""
    if k < 1:
        raise ArgumentError(f"blow-up factor must be >= 1, got {k}")
    varcs = frozenset(
        (u * k + i, w * k + j, s) for u, w, s in P.varcs for i in range(k) for j in range(k)
    )
    if k == 1:
        return P
    labels = tuple(f"{P.cell_label(c)}.{i}" for c in range(P.cells) for i in range(k))
    return VoltagePresentation(P.cells * k, varcs, labels)


def rooted_tree(p: int, depth: int) -> Digraph:
    """Out-directed p-ary tree of the given depth, root 0, breadth-first ids."""
    if p < 1 or depth < 0:
        raise ArgumentError(f"rooted_tree needs p >= 1 and depth >= 0, got ({p}, {depth})")
    arcs = []
    level = [0]
    n = 1
    for _ in range(depth):
        nxt = []
        for v in level:
            for _ in range(p):
                arcs.append((v, n))
                nxt.append(n)
                n += 1
        level = nxt
    return Digraph(n, frozenset(arcs))


@dataclass(frozen=True)
class BipartiteFixture:
    graph: Digraph
    side1: tuple[int, ...]
    side2: tuple[int, ...]
    certificate: dict = field(default_factory=dict, compare=False)


@lru_cache(maxsize=None)
def folkman_graph() -> BipartiteFixture:
    """The 20-vertex Folkman graph, oriented from one side to the other.

    Side 1 holds the ten 2-subsets of Z_5; side 2 holds two copies of each
    point of Z_5, and {a, b} is joined to both copies of a and of b.  Its
    defining properties are checked here rather than trusted.
    """
    from hatdigraph.symmetry import arc_orbits, automorphisms, vertex_orbits

    pairs = list(itertools.combinations(range(5), 2))
    side1 = tuple(range(10))
    side2 = tuple(range(10, 20))

    def copy(point: int, c: int) -> int:
        return 10 + 2 * point + c

    arcs = frozenset((i, copy(x, c)) for i, pair in enumerate(pairs) for x in pair for c in range(2))
    labels = tuple(f"{a}{b}" for a, b in pairs) + tuple(f"{x}'{c}" for x in range(5) for c in range(2))
    T = Digraph(20, arcs, labels)

    degrees = {len(T.out_neighbours(v)) + len(T.in_neighbours(v)) for v in range(20)}
    aut = automorphisms(T)
    cert = {
        "vertices": T.n,
        "degrees": sorted(degrees),
        "aut_order": aut.order,
        "vertex_orbits": len(vertex_orbits(aut)),
        "arc_orbits": len(arc_orbits(aut)),
    }
    if cert != {"vertices": 20, "degrees": [4], "aut_order": 3840, "vertex_orbits": 2, "arc_orbits": 1}:
        raise AssertionError(f"Folkman fixture failed its certificate: {cert}")
    return BipartiteFixture(T, side1, side2, cert)


def folkman_two_ended(T: Digraph, side1, side2) -> VoltagePresentation:
    """Cells side1 x side2; (a1, a2) -> (b1, b2) with shift +1 iff (a1, b2) is an arc of T."""
    side1 = tuple(side1)
    side2 = tuple(side2)
    s1, s2 = set(side1), set(side2)
    if s1 & s2 or s1 | s2 != set(range(T.n)):
        raise ArgumentError("the two sides must partition the vertex set of T")
    if len(side1) != len(side2):
        raise ArgumentError(f"unbalanced bipartition: {len(side1)} vs {len(side2)}")
    if any(u not in s1 or v not in s2 for u, v in T.arcs):
        raise ArgumentError("every arc of T must run from side1 to side2")
    degrees = {len(T.out_neighbours(v)) for v in side1} | {len(T.in_neighbours(v)) for v in side2}
    if len(degrees) != 1 or 0 in degrees:
        raise ArgumentError(f"T must be regular, found degrees {sorted(degrees)}")
    cells = [(a1, a2) for a1 in side1 for a2 in side2]
    index = {c: i for i, c in enumerate(cells)}
    varcs = frozenset(
        (index[(a1, a2)], index[(b1, b2)], 1)
        for a1, a2 in cells
        for b2 in T.out_neighbours(a1)
        for b1 in side1
    )
    labels = tuple(f"{T.label(a1)}|{T.label(a2)}" for a1, a2 in cells)
    return VoltagePresentation(len(cells), varcs, labels)


def folkman_construction() -> VoltagePresentation:
    fx = folkman_graph()
    return folkman_two_ended(fx.graph, fx.side1, fx.side2)
