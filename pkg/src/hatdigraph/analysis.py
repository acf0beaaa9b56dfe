"""Structural procedures on finite and periodic digraphs.

* window certificates toward high-arc-transitivity for graded presentations,
* the decomposition of a graded prime-valency presentation as Pl^r(Delta_p),
* skew-symmetry verdicts,
* descendant sets and the rooted-tree test.
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Sequence, Union

from hatdigraph.alternets import PeriodicAlternets, alternets_periodic
from hatdigraph.digraph import Digraph, induced_subdigraph, reverse
from hatdigraph.errors import ArgumentError, ClassificationInapplicable, InconsistentVerdict, PreconditionError
from hatdigraph.periodic import (
    VoltagePresentation,
    cyclic_quotient,
    fibre_size,
    layered,
    property_z,
    require_graded,
    window,
    window_vertex,
)
from hatdigraph.symmetry import DEFAULT_CAP, Permutation, automorphisms, is_isomorphic, orbits
from hatdigraph.transforms import delta_p, pl_periodic

log = logging.getLogger(__name__)


def default_quotient_sizes(*presentations: VoltagePresentation) -> tuple[int, int]:
    n = 2 * max(P.max_shift for P in presentations) + 3
    return n, n + 1


@dataclass(frozen=True)
class PeriodicIsomorphism:
    """Isomorphisms between cyclic quotients of two presentations, one per size."""

    sizes: tuple[int, ...]
    witnesses: tuple[Permutation, ...]


def quotient_isomorphism(
    P: VoltagePresentation, Q: VoltagePresentation, sizes: Sequence[int] | None = None
) -> PeriodicIsomorphism | None:
    """Compare cyclic quotients of P and Q at every size; all must agree.

    A mix of isomorphic and non-isomorphic sizes raises InconsistentVerdict.
    """
    sizes = tuple(sizes) if sizes is not None else default_quotient_sizes(P, Q)
    if P.cells != Q.cells:
        return None
    found = [is_isomorphic(cyclic_quotient(P, n), cyclic_quotient(Q, n)) for n in sizes]
    hits = [m is not None for m in found]
    if all(hits):
        return PeriodicIsomorphism(sizes, tuple(found))
    if any(hits):
        raise InconsistentVerdict(f"quotients disagree across sizes {sizes}: {hits}")
    return None


def cell_isomorphism(P: VoltagePresentation, Q: VoltagePresentation, mapping: Sequence[int]) -> bool:
    """Whether a cell bijection carries the varcs of P exactly onto those of Q."""
    if P.cells != Q.cells or sorted(mapping) != list(range(Q.cells)):
        return False
    image = {(mapping[u], mapping[w], s) for u, w, s in P.varcs}
    return image == set(Q.varcs)


@dataclass(frozen=True)
class HatCertificate:
    depth: int
    transitive_on_out: bool
    stabilizer_order_at_depth: int
    base_cell: int
    window: tuple[int, int]
    out_orbits: tuple[tuple[int, ...], ...]


def hat_certificate_window(
    P: VoltagePresentation, depth: int, base_cell: int = 0, cap: int = DEFAULT_CAP
) -> HatCertificate:
    """Level-preserving automorphisms of the window on fibres 0..depth fixing
    fibre 0 pointwise, and whether they are transitive on out(v) for a fibre-0
    vertex v.

    A positive answer is evidence at the recorded depth only; window
    automorphisms need not extend to the whole digraph.
    """
    if depth < 1:
        raise ArgumentError(f"depth must be positive, got {depth}")
    L = require_graded(P)
    S = layered(P, L)
    if not 0 <= base_cell < S.cells:
        raise ArgumentError(f"base cell {base_cell} out of range")
    W = window(S, 0, depth)
    levels = [v // S.cells for v in range(W.n)]
    fibre0 = range(S.cells)
    group = automorphisms(W, cap=cap, colours=levels, fix=fibre0)
    v = window_vertex(S, 0, 0, base_cell)
    out = list(W.out_neighbours(v))
    out_orbits = orbits(group, out) if out else []
    return HatCertificate(
        depth,
        len(out_orbits) == 1,
        group.order,
        base_cell,
        (0, depth),
        tuple(tuple(o) for o in out_orbits),
    )


@dataclass(frozen=True)
class Decomposition:
    """Witness that a presentation is isomorphic to Pl^r(Delta_p).

    ``stages[0]`` is the layered input and ``stages[i+1]`` its digraph of
    alternets.  ``witnesses[i]`` is a cell bijection Pl(stages[i+1]) ->
    stages[i] preserving varcs exactly; ``base_witness`` holds quotient
    isomorphisms between the last stage and Delta_p.
    """

    p: int
    r: int
    fibre_size: int
    stages: tuple[VoltagePresentation, ...]
    witnesses: tuple[tuple[int, ...], ...]
    base_witness: PeriodicIsomorphism


@dataclass(frozen=True)
class Classification:
    decomposition: Decomposition | None
    diagnostic: str | None = None


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


def _pl_al_witness(S: VoltagePresentation, al: PeriodicAlternets) -> tuple[int, ...] | None:
    """Cell bijection Pl(Al(S)) -> S sending the varc (A, B) to the vertex shared by sinks(A) and sources(B)."""
    top = pl_periodic(al.presentation)
    mapping = []
    for j, k, _ in al.presentation.sorted_varcs:
        shared = al.classes[j][1] & al.classes[k][0]
        if len(shared) != 1:
            return None
        mapping.append(next(iter(shared)))
    return tuple(mapping) if cell_isomorphism(top, S, mapping) else None


def classify(P: VoltagePresentation) -> Classification:
    """Run the Pl^r(Delta_p) decomposition and keep the reason for a negative answer."""
    L = property_z(P)
    if L is None:
        raise PreconditionError("decomposition needs Property Z")
    stage = layered(P, L)
    m = fibre_size(P, L)
    outs, ins = stage.out_valencies(), stage.in_valencies()
    valencies = set(outs) | set(ins)
    if len(valencies) != 1:
        raise ClassificationInapplicable(f"in/out-valencies are not all equal: {sorted(valencies)}")
    p = valencies.pop()
    if not _is_prime(p):
        raise ClassificationInapplicable(f"valency {p} is not prime")

    stages = [stage]
    witnesses = []
    r = 0
    while True:
        al = alternets_periodic(stage)
        for i, (src, snk) in enumerate(al.classes):
            if len(src) != p or len(snk) != p or al.arcs_of(i) != p * p:
                return Classification(None, f"stage {r}: alternet {i} is not K_{{{p},{p}}}")
        sink_cls, src_cls = al.sink_class(), al.source_class()
        sizes = set(Counter(zip(sink_cls, src_cls)).values())
        if sizes == {p}:
            if stage.cells != p:
                return Classification(None, f"stage {r}: size-{p} classes but fibre size {stage.cells}")
            base = quotient_isomorphism(stage, delta_p(p))
            if base is None:
                return Classification(None, f"stage {r}: not isomorphic to Delta_{p}")
            break
        if sizes != {1}:
            return Classification(None, f"stage {r}: joint sink/source classes have sizes {sorted(sizes)}")
        nxt = al.presentation
        if nxt.cells * p != stage.cells:
            return Classification(None, f"stage {r}: Al has {nxt.cells} cells, expected {stage.cells // p}")
        witness = _pl_al_witness(stage, al)
        if witness is None:
            return Classification(None, f"stage {r}: Pl(Al(stage)) is not cell-isomorphic to the stage")
        witnesses.append(witness)
        stages.append(nxt)
        stage = nxt
        r += 1
    if p ** (r + 1) != m:
        return Classification(None, f"p^(r+1) = {p ** (r + 1)} differs from fibre size {m}")
    return Classification(Decomposition(p, r, m, tuple(stages), tuple(witnesses), base))


def decompose_pl_delta(P: VoltagePresentation) -> Decomposition | None:
    """(p, r) with P isomorphic to Pl^r(Delta_p), or None if P is not of that form."""
    result = classify(P)
    if result.decomposition is None:
        log.info("decomposition failed: %s", result.diagnostic)
    return result.decomposition


@dataclass(frozen=True)
class SkewSymmetry:
    skew: bool
    # (kind, size, witness): kind is "digraph", "quotient" or "window"
    evidence: tuple[tuple[str, int, Permutation | None], ...]

    def __bool__(self) -> bool:
        return self.skew


def is_skew_symmetric(
    obj: Union[Digraph, VoltagePresentation], sizes: Sequence[int] | None = None
) -> SkewSymmetry:
    """Isomorphism with the reverse digraph.

    For a presentation this is a desk-scale verdict: cyclic quotients at the
    given sizes and the window over levels 0..sizes[0] must all agree.
    """
    if isinstance(obj, Digraph):
        m = is_isomorphic(obj, reverse(obj))
        return SkewSymmetry(m is not None, (("digraph", obj.n, m),))
    sizes = tuple(sizes) if sizes is not None else default_quotient_sizes(obj)
    evidence = []
    for n in sizes:
        Q = cyclic_quotient(obj, n)
        evidence.append(("quotient", n, is_isomorphic(Q, reverse(Q))))
    W = window(obj, 0, sizes[0])
    evidence.append(("window", sizes[0], is_isomorphic(W, reverse(W))))
    verdicts = {m is not None for _, _, m in evidence}
    if len(verdicts) != 1:
        raise InconsistentVerdict(f"skew-symmetry evidence disagrees: {[(k, n, m is not None) for k, n, m in evidence]}")
    return SkewSymmetry(verdicts.pop(), tuple(evidence))


@dataclass(frozen=True)
class DescendantReport:
    root: int
    depth: int
    subdigraph: Digraph
    vertices: tuple[int, ...]
    per_depth: tuple[int, ...]
    is_rooted_tree: bool
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def count(self) -> int:
        return len(self.vertices)


def descendants(D: Digraph, v: int, depth: int) -> DescendantReport:
    """Vertices reachable from v by at most ``depth`` arcs, and the subdigraph they span.

    ``per_depth[i]`` counts vertices first reached after i steps.
    """
    if depth < 0:
        raise ArgumentError(f"depth must be non-negative, got {depth}")
    dist = {v: 0}
    queue = deque([v])
    D.out_neighbours(v)  # validates v
    while queue:
        x = queue.popleft()
        if dist[x] == depth:
            continue
        for y in D.out_neighbours(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    sub, keep = induced_subdigraph(D, dist)
    root = keep.index(v)
    per_depth = Counter(dist.values())
    tree = all(len(sub.in_neighbours(x)) == (0 if x == root else 1) for x in range(sub.n))
    return DescendantReport(v, depth, sub, tuple(keep), tuple(per_depth[i] for i in range(depth + 1)), tree)


def descendants_in_window(
    P: VoltagePresentation, lo: int, hi: int, level: int, cell: int, depth: int
) -> DescendantReport:
    """Descendants of ``(level, cell)`` computed inside ``window(P, lo, hi)``.

    The window must leave room for ``depth`` steps in every shift direction.
    """
    if not lo <= level <= hi:
        raise PreconditionError(f"level {level} is outside the window {lo}:{hi}")
    up = max((s for _, _, s in P.varcs if s > 0), default=0)
    down = max((-s for _, _, s in P.varcs if s < 0), default=0)
    if hi - level < depth * up or level - lo < depth * down:
        raise PreconditionError(f"window {lo}:{hi} too small for depth {depth} from level {level}")
    W = window(P, lo, hi)
    report = descendants(W, window_vertex(P, lo, level, cell), depth)
    report.extra.update(window=(lo, hi), level=level, cell=cell)
    return report
