"""Automorphisms, isomorphisms, orbits and k-arc transitivity of finite digraphs.

The search is individualization-refinement: colourings of the two digraphs
are refined in lockstep by (colour, out-neighbour colours, in-neighbour
colours) until stable, and a vertex of the smallest non-singleton cell is
individualized when refinement stalls.  Group orders are exact, computed as
the product of orbit lengths along a stabilizer chain, so they are available
even when the explicit element list would exceed the cap.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from hatdigraph.digraph import Digraph
from hatdigraph.errors import ArgumentError, CapacityError

Permutation = tuple[int, ...]

DEFAULT_CAP = int(os.environ.get("HATDIGRAPH_CAP", 10**6))
# search-tree nodes visited by a single extension search before giving up
NODE_LIMIT = int(os.environ.get("HATDIGRAPH_NODE_LIMIT", 200_000))


def vertex_invariants(D: Digraph) -> list[tuple]:
    """Isomorphism-invariant starting colour of every vertex.

    Valencies, loop flag, and how many vertices share exactly the same
    out-neighbourhood (resp. in-neighbourhood).
    """
    out_sets = [frozenset(D.out_neighbours(v)) for v in range(D.n)]
    in_sets = [frozenset(D.in_neighbours(v)) for v in range(D.n)]
    out_twins = Counter(out_sets)
    in_twins = Counter(in_sets)
    return [
        (len(out_sets[v]), len(in_sets[v]), v in out_sets[v], out_twins[out_sets[v]], in_twins[in_sets[v]])
        for v in range(D.n)
    ]


def _joint_relabel(keys1: Sequence[Hashable], keys2: Sequence[Hashable]):
    order = {k: i for i, k in enumerate(sorted(set(keys1) | set(keys2)))}
    return [order[k] for k in keys1], [order[k] for k in keys2]


def _swaps_to_automorphism(out, inn, u: int, v: int) -> bool:
    """Whether the transposition (u v) preserves arcs, i.e. u and v are twins."""

    def swap(x: int) -> int:
        return v if x == u else u if x == v else x

    return {swap(x) for x in out[u]} == set(out[v]) and {swap(x) for x in inn[u]} == set(inn[v])


def _all_twins(out, inn, cell: Sequence[int]) -> bool:
    # twinhood is an equivalence relation, so comparing with one member suffices
    return all(_swaps_to_automorphism(out, inn, cell[0], x) for x in cell[1:])


class _Matcher:
    """Lockstep refinement and backtracking between two digraphs on n vertices."""

    def __init__(self, D1: Digraph, D2: Digraph, node_limit: int | None = None):
        self.D1, self.D2 = D1, D2
        self.node_limit = NODE_LIMIT if node_limit is None else node_limit
        self.nodes = 0
        self.n = D1.n
        self.out1 = [D1.out_neighbours(v) for v in range(D1.n)]
        self.in1 = [D1.in_neighbours(v) for v in range(D1.n)]
        self.out2 = [D2.out_neighbours(v) for v in range(D2.n)]
        self.in2 = [D2.in_neighbours(v) for v in range(D2.n)]

    @staticmethod
    def _signatures(col, out, inn):
        return [
            (col[v], tuple(sorted(col[u] for u in out[v])), tuple(sorted(col[u] for u in inn[v])))
            for v in range(len(col))
        ]

    def refine(self, c1: list[int], c2: list[int]):
        """Equitable refinement of both colourings; None if they become incompatible."""
        classes = len(set(c1))
        while True:
            s1 = self._signatures(c1, self.out1, self.in1)
            s2 = self._signatures(c2, self.out2, self.in2)
            if Counter(s1) != Counter(s2):
                return None
            c1, c2 = _joint_relabel(s1, s2)
            new_classes = len(set(c1))
            if new_classes == classes:
                return c1, c2
            classes = new_classes

    def _verify(self, mapping: Sequence[int]) -> bool:
        arcs2 = self.D2.arcs
        return all((mapping[u], mapping[v]) in arcs2 for u, v in self.D1.arcs)

    def extend(self, c1: list[int], c2: list[int]) -> Permutation | None:
        """First isomorphism D1 -> D2 respecting the colourings, in vertex-id order."""
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise CapacityError(f"isomorphism search exceeded {self.node_limit} nodes")
        refined = self.refine(c1, c2)
        if refined is None:
            return None
        c1, c2 = refined
        sizes = Counter(c1)
        if all(k == 1 for k in sizes.values()):
            where = {c: w for w, c in enumerate(c2)}
            mapping = tuple(where[c] for c in c1)
            return mapping if self._verify(mapping) else None
        target = min((k, c) for c, k in sizes.items() if k > 1)[1]
        cell1 = [x for x in range(self.n) if c1[x] == target]
        cell2 = [x for x in range(self.n) if c2[x] == target]
        fresh = max(c1) + 1
        if _all_twins(self.out1, self.in1, cell1) and _all_twins(self.out2, self.in2, cell2):
            # any matching of twin cells is as good as any other
            d1, d2 = list(c1), list(c2)
            for i, (x, y) in enumerate(zip(cell1, cell2)):
                d1[x] = d2[y] = fresh + i
            return self.extend(d1, d2)
        v = cell1[0]
        for w in (x for x in range(self.n) if c2[x] == target):
            d1 = list(c1)
            d2 = list(c2)
            d1[v] = fresh
            d2[w] = fresh
            found = self.extend(d1, d2)
            if found is not None:
                return found
        return None


def _initial_colours(D1: Digraph, D2: Digraph, colours1=None, colours2=None):
    inv1 = vertex_invariants(D1)
    inv2 = vertex_invariants(D2)
    if colours1 is not None:
        inv1 = [(colours1[v],) + inv1[v] for v in range(D1.n)]
        inv2 = [(colours2[v],) + inv2[v] for v in range(D2.n)]
    return _joint_relabel(inv1, inv2)


def is_isomorphic(
    D1: Digraph, D2: Digraph, colours1: Sequence[Hashable] | None = None, colours2: Sequence[Hashable] | None = None
) -> Permutation | None:
    """A vertex bijection carrying arcs(D1) onto arcs(D2), or None.

    Optional colourings restrict the search to colour-preserving maps.
    """
    if D1.n != D2.n or len(D1.arcs) != len(D2.arcs):
        return None
    if (colours1 is None) != (colours2 is None):
        raise ArgumentError("give colourings for both digraphs or for neither")
    c1, c2 = _initial_colours(D1, D2, colours1, colours2)
    return _Matcher(D1, D2).extend(c1, c2)


def compose(g: Permutation, h: Permutation) -> Permutation:
    """Apply g first, then h."""
    return tuple(h[x] for x in g)


def inverse(g: Permutation) -> Permutation:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def is_automorphism(D: Digraph, g: Sequence[int]) -> bool:
    if sorted(g) != list(range(D.n)):
        return False
    return all((g[u], g[v]) in D.arcs for u, v in D.arcs)


@dataclass
class AutomorphismSet:
    """Automorphism group of a finite digraph, held as generators plus exact order.

    ``complete`` means the order is within the cap, so the full element list
    may be requested through :attr:`elements`.
    """

    digraph: Digraph
    generators: tuple[Permutation, ...]
    order: int
    cap: int
    base: tuple[int, ...] = ()
    _elements: list[Permutation] | None = field(default=None, repr=False)

    @property
    def complete(self) -> bool:
        return self.order <= self.cap

    @property
    def identity(self) -> Permutation:
        return tuple(range(self.digraph.n))

    def require_complete(self, what: str) -> None:
        if not self.complete:
            raise CapacityError(f"{what} needs the complete group, but |Aut| = {self.order} exceeds cap {self.cap}")

    @property
    def elements(self) -> list[Permutation]:
        self.require_complete("listing elements")
        if self._elements is None:
            seen = {self.identity}
            frontier = [self.identity]
            while frontier:
                nxt = []
                for g in frontier:
                    for s in self.generators:
                        h = compose(g, s)
                        if h not in seen:
                            seen.add(h)
                            nxt.append(h)
                frontier = nxt
            if len(seen) != self.order:
                raise AssertionError(f"closure has {len(seen)} elements, expected {self.order}")
            self._elements = sorted(seen)
        return self._elements

    def __len__(self) -> int:
        return self.order


def automorphisms(
    D: Digraph, cap: int = DEFAULT_CAP, colours: Sequence[Hashable] | None = None, fix: Iterable[int] = ()
) -> AutomorphismSet:
    """Automorphism group of D, optionally restricted to colour-preserving maps
    fixing every vertex in ``fix``.
    """
    if cap < 1:
        raise ArgumentError("cap must be positive")
    matcher = _Matcher(D, D)
    c, _ = _initial_colours(D, D, colours, colours)
    fresh = D.n + 1
    for v in fix:
        D._check(v)
        c[v] = fresh + len(c) + v  # distinct colour per fixed vertex
    c, _ = _joint_relabel(c, c)
    generators: list[Permutation] = []
    base: list[int] = []
    order = 1
    while True:
        c, _ = matcher.refine(c, list(c))
        sizes = Counter(c)
        if all(k == 1 for k in sizes.values()):
            break
        target = min((k, col) for col, k in sizes.items() if k > 1)[1]
        cell = [x for x in range(D.n) if c[x] == target]
        v = cell[0]
        new_colour = max(c) + 1
        if _all_twins(matcher.out1, matcher.in1, cell):
            # the stabilizer chain through a twin cell is the full symmetric group on it
            for x, y in zip(cell, cell[1:]):
                g = list(range(D.n))
                g[x], g[y] = y, x
                generators.append(tuple(g))
            order *= math.factorial(len(cell))
            base.extend(cell[:-1])
            c = list(c)
            for i, x in enumerate(cell):
                c[x] = new_colour + i
            continue
        level_gens: list[Permutation] = []
        ds = DisjointSet(cell)
        for w in cell[1:]:
            if ds.connected(v, w):
                continue
            if _swaps_to_automorphism(matcher.out1, matcher.in1, v, w):
                g = list(range(D.n))
                g[v], g[w] = w, v
                level_gens.append(tuple(g))
                ds.merge(v, w)
                continue
            d1 = list(c)
            d2 = list(c)
            d1[v] = new_colour
            d2[w] = new_colour
            matcher.nodes = 0
            g = matcher.extend(d1, d2)
            if g is None:
                continue
            level_gens.append(g)
            for x in cell:
                ds.merge(x, g[x])
        order *= len(ds.subset(v))
        generators.extend(level_gens)
        base.append(v)
        c = list(c)
        c[v] = new_colour
    return AutomorphismSet(D, tuple(generators), order, cap, tuple(base))


def automorphism_count(D: Digraph) -> int:
    return automorphisms(D).order


def _default_action(g: Permutation, x):
    if isinstance(x, int):
        return g[x]
    return tuple(g[v] for v in x)


def orbits(
    A: AutomorphismSet, points: Sequence[Hashable], action: Callable[[Permutation, Hashable], Hashable] = _default_action
) -> list[list]:
    """Partition ``points`` into orbits of the group generated by ``A``.

    The point list must be closed under the action.  Orbits are ordered by
    first appearance in ``points``.
    """
    index = {p: i for i, p in enumerate(points)}
    ds = DisjointSet(range(len(points)))
    for g in A.generators:
        for i, p in enumerate(points):
            q = action(g, p)
            if q not in index:
                raise ArgumentError(f"point list is not closed under the action: {p!r} -> {q!r}")
            ds.merge(i, index[q])
    groups: dict[int, list] = {}
    for i, p in enumerate(points):
        groups.setdefault(ds[i], []).append(p)
    return list(groups.values())


def vertex_orbits(A: AutomorphismSet) -> list[list[int]]:
    return orbits(A, list(range(A.digraph.n)))


def arc_orbits(A: AutomorphismSet) -> list[list[tuple[int, int]]]:
    return orbits(A, A.digraph.sorted_arcs)


def enumerate_k_arcs(D: Digraph, k: int) -> list[tuple[int, ...]]:
    """All walks v0..vk along positively oriented arcs (vertices may repeat)."""
    if k < 0:
        raise ArgumentError(f"k must be non-negative, got {k}")
    walks = [(v,) for v in range(D.n)]
    for _ in range(k):
        walks = [w + (u,) for w in walks for u in D.out_neighbours(w[-1])]
    return walks


@dataclass(frozen=True)
class Transitivity:
    transitive: bool
    k: int
    k_arc_count: int
    orbit_count: int

    @property
    def vacuous(self) -> bool:
        return self.k_arc_count == 0

    def __bool__(self) -> bool:
        return self.transitive


def is_k_arc_transitive(D: Digraph, k: int, aut: AutomorphismSet | None = None) -> Transitivity:
    """Whether Aut(D) is transitive on k-arcs; no k-arcs counts as (vacuously) transitive."""
    aut = aut if aut is not None else automorphisms(D)
    walks = enumerate_k_arcs(D, k)
    count = len(orbits(aut, walks)) if walks else 0
    return Transitivity(count <= 1, k, len(walks), count)


def is_vertex_transitive(D: Digraph, aut: AutomorphismSet | None = None) -> bool:
    return is_k_arc_transitive(D, 0, aut).transitive


def is_arc_transitive(D: Digraph, aut: AutomorphismSet | None = None) -> bool:
    return is_k_arc_transitive(D, 1, aut).transitive


def is_k_arc_regular(D: Digraph, k: int, aut: AutomorphismSet | None = None) -> bool:
    """Transitive on k-arcs with trivial k-arc stabilizers, i.e. |Aut| = #k-arcs."""
    if k < 1:
        raise ArgumentError(f"k must be positive, got {k}")
    aut = aut if aut is not None else automorphisms(D)
    aut.require_complete("is_k_arc_regular")
    verdict = is_k_arc_transitive(D, k, aut)
    return verdict.transitive and not verdict.vacuous and aut.order == verdict.k_arc_count


def vertex_stabilizer_order(D: Digraph, v: int, aut: AutomorphismSet | None = None) -> int:
    """|G_v|, computed by a stabilizer search and checked against orbit-stabilizer."""
    D._check(v)
    aut = aut if aut is not None else automorphisms(D)
    aut.require_complete("vertex_stabilizer_order")
    stab = automorphisms(D, cap=aut.cap, fix=[v]).order
    orbit = next(o for o in vertex_orbits(aut) if v in o)
    if len(orbit) * stab != aut.order:
        raise AssertionError(f"orbit-stabilizer violated: {len(orbit)} * {stab} != {aut.order}")
    return stab
