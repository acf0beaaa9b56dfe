"""Alternets: classes of the closure of "arcs share a tail or share a head".

Also the reachability relation on tails, the loose-attachment test, the
digraph of alternets, and its periodic version on graded presentations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from scipy.cluster.hierarchy import DisjointSet

from hatdigraph.digraph import Arc, Digraph
from hatdigraph.periodic import Leveling, VoltagePresentation, layered, require_graded


@dataclass(frozen=True)
class Alternet:
    id: int
    arcs: tuple[Arc, ...]
    sources: frozenset[int]
    sinks: frozenset[int]

    @property
    def vertices(self) -> frozenset[int]:
        return self.sources | self.sinks

    def is_degenerate(self) -> bool:
        """Contains a 2-arc: some vertex is a head and a tail inside the class."""
        return bool(self.sources & self.sinks)

    def is_complete_bipartite(self) -> bool:
        return not self.is_degenerate() and len(self.arcs) == len(self.sources) * len(self.sinks)


@dataclass(frozen=True)
class ArcPartition:
    digraph: Digraph
    arcs: tuple[Arc, ...]
    class_of: tuple[int, ...]
    classes: tuple[Alternet, ...]

    def class_of_arc(self, arc: Arc) -> Alternet:
        return self.classes[self.class_of[self.arcs.index(arc)]]

    def __len__(self) -> int:
        return len(self.classes)


def _classes(arcs: list) -> list[list[int]]:
    """Union-find over arc indices keyed by shared tail and shared head."""
    ds = DisjointSet(range(len(arcs)))
    first_tail: dict = {}
    first_head: dict = {}
    for i, (u, v) in enumerate(arcs):
        if u in first_tail:
            ds.merge(i, first_tail[u])
        else:
            first_tail[u] = i
        if v in first_head:
            ds.merge(i, first_head[v])
        else:
            first_head[v] = i
    groups: dict[int, list[int]] = {}
    for i in range(len(arcs)):
        groups.setdefault(ds[i], []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def alternets(D: Digraph) -> ArcPartition:
    """Alternet partition; class ids follow the smallest arc index they contain."""
    arcs = D.sorted_arcs
    class_of = [0] * len(arcs)
    classes = []
    for cid, members in enumerate(_classes(arcs)):
        for i in members:
            class_of[i] = cid
        cls_arcs = tuple(arcs[i] for i in members)
        classes.append(
            Alternet(cid, cls_arcs, frozenset(a[0] for a in cls_arcs), frozenset(a[1] for a in cls_arcs))
        )
    return ArcPartition(D, tuple(arcs), tuple(class_of), tuple(classes))


def is_degenerate(A: Alternet) -> bool:
    return A.is_degenerate()


def all_alternets_complete_bipartite(D: Digraph) -> int | None:
    """The common side size p if every alternet is K->_{p,p}, else None.

    p = 1 is returned as-is; callers that need a genuine valency check p >= 2.
    """
    part = alternets(D)
    sides = set()
    for A in part.classes:
        if not A.is_complete_bipartite() or len(A.sources) != len(A.sinks):
            return None
        sides.add(len(A.sources))
    return sides.pop() if len(sides) == 1 else None


def is_loosely_attached(D: Digraph) -> bool:
    """Any two distinct alternets share at most one vertex."""
    part = alternets(D)
    containing: dict[int, list[int]] = {}
    for A in part.classes:
        for v in A.vertices:
            containing.setdefault(v, []).append(A.id)
    shared = Counter()
    for ids in containing.values():
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                shared[(ids[i], ids[j])] += 1
    return all(k <= 1 for k in shared.values())


def reachability_classes(D: Digraph) -> list[list[int]]:
    """Classes of the reachability relation on vertices with out-arcs.

    Two such vertices are related exactly when they are tails of the same
    alternet, so the classes are the alternets' source sets.
    """
    return [sorted(A.sources) for A in alternets(D).classes]


def alternet_digraph(D: Digraph) -> Digraph:
    """Al(D): alternets as vertices, (A, B) when sinks(A) meets sources(B).

    Self-arcs appear exactly for degenerate alternets.
    """
    part = alternets(D)
    source_of: dict[int, list[int]] = {}
    for A in part.classes:
        for v in A.sources:
            source_of.setdefault(v, []).append(A.id)
    arcs = set()
    for A in part.classes:
        for v in A.sinks:
            for b in source_of.get(v, ()):
                arcs.add((A.id, b))
    labels = tuple(f"A{A.id}" for A in part.classes)
    return Digraph(len(part.classes), frozenset(arcs), labels)


@dataclass(frozen=True)
class PeriodicAlternets:
    """Alternets of a graded presentation between fibre 0 and fibre 1.

    ``classes`` lists (source cells, sink cells) in the layered form of the
    input; ``presentation`` is the digraph of alternets, again layered.
    """

    base: VoltagePresentation
    classes: tuple[tuple[frozenset[int], frozenset[int]], ...]
    presentation: VoltagePresentation

    def source_class(self) -> list[int]:
        """Index of the alternet each cell is a source of (-1 for none)."""
        out = [-1] * self.base.cells
        for i, (src, _) in enumerate(self.classes):
            for c in src:
                out[c] = i
        return out

    def sink_class(self) -> list[int]:
        out = [-1] * self.base.cells
        for i, (_, snk) in enumerate(self.classes):
            for c in snk:
                out[c] = i
        return out

    def arcs_of(self, i: int) -> int:
        src, snk = self.classes[i]
        return sum(1 for u, w, _ in self.base.varcs if u in src and w in snk)


def alternets_periodic(P: VoltagePresentation, L: Leveling | None = None) -> PeriodicAlternets:
    """Alternets of a graded presentation and the presentation of Al(P).

    Raises PreconditionError if P has no Property Z.
    """
    L = require_graded(P, L)
    base = layered(P, L)
    arcs = [(u, w) for u, w, _ in base.sorted_varcs]
    groups = _classes(arcs)
    classes = tuple(
        (frozenset(arcs[i][0] for i in g), frozenset(arcs[i][1] for i in g)) for g in groups
    )
    source_of: dict[int, int] = {}
    for j, (src, _) in enumerate(classes):
        for c in src:
            source_of[c] = j
    varcs = frozenset((j, source_of[c], 1) for j, (_, snk) in enumerate(classes) for c in snk if c in source_of)
    labels = tuple(f"A{j}" for j in range(len(classes)))
    return PeriodicAlternets(base, classes, VoltagePresentation(len(classes), varcs, labels))
