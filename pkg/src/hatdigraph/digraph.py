"""Finite digraphs on the vertex set ``0..n-1``.

A :class:`Digraph` is an immutable pair (vertex count, arc set).  Loops and
antiparallel pairs are allowed, parallel arcs are not.  Adjacency is cached
in both directions at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from hatdigraph.errors import ArgumentError

Arc = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[Arc]
    labels: tuple[str, ...] | None = None
    _out: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _in: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ArgumentError(f"vertex count must be non-negative, got {self.n}")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        out: list[list[int]] = [[] for _ in range(self.n)]
        inn: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ArgumentError(f"arc {(u, v)} has an endpoint outside 0..{self.n - 1}")
            out[u].append(v)
            inn[v].append(u)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n:
                raise ArgumentError(f"expected {self.n} labels, got {len(labels)}")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_out", tuple(tuple(sorted(a)) for a in out))
        object.__setattr__(self, "_in", tuple(tuple(sorted(a)) for a in inn))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]], labels: Sequence[str] | None = None) -> Digraph:
        return cls(n, frozenset((a[0], a[1]) for a in arcs), None if labels is None else tuple(labels))

    def _check(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self.n):
            raise ArgumentError(f"invalid vertex id {v!r} for a digraph on {self.n} vertices")

    def out_neighbours(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._out[v]

    def in_neighbours(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._in[v]

    def out_valency(self, v: int) -> int:
        return len(self.out_neighbours(v))

    def in_valency(self, v: int) -> int:
        return len(self.in_neighbours(v))

    @property
    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self._in[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self._out[v]]

    def has_sinks_or_sources(self) -> bool:
        return any(not a for a in self._out) or any(not a for a in self._in)

    def is_asymmetric(self) -> bool:
        """No pair of distinct vertices joined in both directions."""
        return not any((v, u) in self.arcs for u, v in self.arcs if u != v)

    def label(self, v: int) -> str:
        self._check(v)
        return self.labels[v] if self.labels is not None else str(v)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


def out_neighbours(D: Digraph, v: int) -> set[int]:
    return set(D.out_neighbours(v))


def in_neighbours(D: Digraph, v: int) -> set[int]:
    return set(D.in_neighbours(v))


def weak_components(D: Digraph) -> list[int]:
    """Component index per vertex, ignoring arc orientation."""
    if D.n == 0:
        return []
    arcs = D.sorted_arcs
    rows = np.array([a[0] for a in arcs], dtype=np.int64)
    cols = np.array([a[1] for a in arcs], dtype=np.int64)
    mat = coo_matrix((np.ones(len(arcs)), (rows, cols)), shape=(D.n, D.n))
    _, comp = connected_components(mat, directed=True, connection="weak")
    return [int(c) for c in comp]


def is_connected(D: Digraph) -> bool:
    """Weak connectivity; the empty digraph counts as connected."""
    return D.n == 0 or len(set(weak_components(D))) == 1


def complete_bipartite(r: int, s: int) -> Digraph:
    """K->_{r,s}: every one of the first r vertices points at each of the last s."""
    if r < 1 or s < 1:
        raise ArgumentError(f"complete_bipartite needs r, s >= 1, got ({r}, {s})")
    return Digraph(r + s, frozenset((i, r + j) for i in range(r) for j in range(s)))


def directed_cycle(n: int) -> Digraph:
    if n < 1:
        raise ArgumentError(f"directed_cycle needs n >= 1, got {n}")
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def directed_path(n: int) -> Digraph:
    """The path 0 -> 1 -> ... -> n-1."""
    if n < 1:
        raise ArgumentError(f"directed_path needs n >= 1, got {n}")
    return Digraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def reverse(D: Digraph) -> Digraph:
    return Digraph(D.n, frozenset((v, u) for u, v in D.arcs), D.labels)


def disjoint_union(*digraphs: Digraph) -> Digraph:
    arcs = []
    offset = 0
    for D in digraphs:
        arcs.extend((u + offset, v + offset) for u, v in D.arcs)
        offset += D.n
    return Digraph(offset, frozenset(arcs))


def induced_subdigraph(D: Digraph, vertices: Iterable[int]) -> tuple[Digraph, list[int]]:
    """Subdigraph spanned by ``vertices``; also returns new-id -> old-id."""
    keep = sorted(set(vertices))
    for v in keep:
        D._check(v)
    index = {v: i for i, v in enumerate(keep)}
    arcs = frozenset((index[u], index[v]) for u, v in D.arcs if u in index and v in index)
    labels = None if D.labels is None else tuple(D.labels[v] for v in keep)
    return Digraph(len(keep), arcs, labels), keep
