"""Immutable weighted-graph representation and vertex-subset (frontier) abstraction.

Graphs are undirected and stored in CSR form with float64 edge weights.
Construction symmetrizes the input edge list, merges parallel edges and
drops self-loops, so the adjacency always satisfies:

- symmetry: (u, v, w) present iff (v, u, w) present with the same weight,
- no self-loops, no duplicate (u, v) entries,
- neighbor lists sorted ascending by vertex id.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph construction inputs."""


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph in CSR form.

    ``m`` counts undirected edges; ``indices``/``weights`` store both
    directions, so their length is ``2 * m``. ``total_weight`` is the sum
    of weights over undirected edges. Instances are immutable and safe to
    share across threads.
    """

    n: int
    m: int
    indptr: np.ndarray      # int64, length n + 1
    indices: np.ndarray     # int32, length 2m, sorted within each row
    weights: np.ndarray     # float64, length 2m
    total_weight: float

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor ids and weights of ``v`` (views into the CSR arrays)."""
        s, e = self.indptr[v], self.indptr[v + 1]
        return self.indices[s:e], self.weights[s:e]

    def weighted_degrees(self) -> np.ndarray:
        """Per-vertex sum of incident edge weights."""
        out = np.zeros(self.n)
        np.add.at(out, np.repeat(np.arange(self.n), self.degrees), self.weights)
        return out


def _as_edge_arrays(edges) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if isinstance(edges, tuple) and len(edges) == 3:
        u, v, w = edges
        return (np.asarray(u, dtype=np.int64),
                np.asarray(v, dtype=np.int64),
                np.asarray(w, dtype=np.float64))
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                     dtype=np.float64)
    if arr.size == 0:
        return (np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0))
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise GraphError("edge list must consist of (u, v, w) triples")
    return arr[:, 0].astype(np.int64), arr[:, 1].astype(np.int64), arr[:, 2]


def build_graph(edges, n: int | None = None) -> WeightedGraph:
    """Build a :class:`WeightedGraph` from an edge list of (u, v, w) triples.

    The list may contain duplicates, both orientations, and self-loops:

    - self-loops are dropped (they carry no clustering objective),
    - parallel edges with the same orientation are merged by summing,
    - an edge listed in both orientations is treated as one undirected
      edge (the orientation weights are averaged), so fully symmetrized
      inputs round-trip unchanged and missing reverse orientations are
      added.

    ``n`` overrides the vertex count (allows isolated trailing vertices);
    by default it is one past the largest id seen.
    """
    u, v, w = _as_edge_arrays(edges)
    return build_graph_arrays(u, v, w, n=n)


def build_graph_arrays(u: np.ndarray, v: np.ndarray, w: np.ndarray,
                       n: int | None = None) -> WeightedGraph:
    """Array-based fast path of :func:`build_graph`."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    w = np.asarray(w, dtype=np.float64)
    if not (u.shape == v.shape == w.shape):
        raise GraphError("edge arrays must have equal length")
    if u.size == 0 and n is None:
        raise GraphError("empty graph")
    if u.size and (u.min() < 0 or v.min() < 0):
        raise GraphError("vertex ids must be non-negative")
    n_seen = int(max(u.max(), v.max())) + 1 if u.size else 0
    if n is None:
        n = n_seen
    elif n < n_seen:
        raise GraphError(f"n={n} smaller than largest vertex id {n_seen - 1}")
    n = int(n)

    keep = u != v
    u, v, w = u[keep], v[keep], w[keep]
    if u.size == 0:
        return WeightedGraph(n=n, m=0,
                             indptr=np.zeros(n + 1, np.int64),
                             indices=np.empty(0, np.int32),
                             weights=np.empty(0),
                             total_weight=0.0)

    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    orient = (u > v).astype(np.int8)

    # Merge parallel same-orientation edges by weight sum. Sorting the
    # weight key last makes the summation order independent of the input
    # order, so permuted inputs produce bit-identical graphs.
    order = np.lexsort((w, orient, hi, lo))
    lo, hi, orient, w = lo[order], hi[order], orient[order], w[order]
    new_grp = np.empty(lo.size, bool)
    new_grp[0] = True
    new_grp[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1]) | (orient[1:] != orient[:-1])
    starts = np.flatnonzero(new_grp)
    gsum = np.add.reduceat(w, starts)
    glo, ghi = lo[starts], hi[starts]

    # Average over the orientations present for each unordered pair: an
    # edge listed once keeps its weight, an edge listed in both
    # orientations is one undirected edge, not two parallel ones.
    new_pair = np.empty(glo.size, bool)
    new_pair[0] = True
    new_pair[1:] = (glo[1:] != glo[:-1]) | (ghi[1:] != ghi[:-1])
    pstarts = np.flatnonzero(new_pair)
    pcounts = np.diff(np.append(pstarts, glo.size))
    ew = np.add.reduceat(gsum, pstarts) / pcounts
    eu, ev = glo[pstarts], ghi[pstarts]

    m = int(eu.size)
    src = np.concatenate([eu, ev])
    dst = np.concatenate([ev, eu])
    ww = np.concatenate([ew, ew])
    order = np.lexsort((dst, src))
    src, dst, ww = src[order], dst[order], ww[order]

    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return WeightedGraph(n=n, m=m, indptr=indptr,
                         indices=dst.astype(np.int32), weights=ww,
                         total_weight=float(ew.sum()))


# A frontier switches to the dense representation once it covers enough of
# the graph that mask iteration beats an explicit id list; with degree
# information the switch uses |S| + sum of member degrees > m / 20.
DENSE_EDGE_FRACTION = 20


@dataclass(frozen=True)
class Frontier:
    """Vertex subset, stored sparse (sorted id list) or dense (bool mask)."""

    n: int
    ids: np.ndarray | None = None     # sorted unique int64, sparse form
    mask: np.ndarray | None = None    # bool of length n, dense form
    _size: int = field(default=0)

    @property
    def is_dense(self) -> bool:
        return self.mask is not None

    @property
    def size(self) -> int:
        return self._size

    def members(self) -> np.ndarray:
        """Sorted member ids regardless of representation."""
        if self.mask is not None:
            return np.flatnonzero(self.mask).astype(np.int64)
        return self.ids

    def contains(self, v: int) -> bool:
        if not 0 <= v < self.n:
            return False
        if self.mask is not None:
            return bool(self.mask[v])
        i = np.searchsorted(self.ids, v)
        return i < self.ids.size and self.ids[i] == v


def frontier_from_members(ids, n: int, graph: WeightedGraph | None = None) -> Frontier:
    """Build a frontier from member ids, deduplicating and validating.

    With ``graph`` the sparse/dense switch uses the degree-weighted rule
    (|S| + sum of member degrees > m / 20); without degree information it
    falls back to |S| > n / 2.
    """
    ids = np.unique(np.asarray(ids, dtype=np.int64))
    if ids.size and (ids[0] < 0 or ids[-1] >= n):
        raise GraphError("frontier member id out of range")
    return _frontier_from_sorted(ids, n, graph)


def frontier_from_mask(mask: np.ndarray, graph: WeightedGraph) -> Frontier:
    size = int(np.count_nonzero(mask))
    if _use_dense(size, float(graph.degrees @ mask), graph):
        return Frontier(n=graph.n, mask=mask, _size=size)
    return Frontier(n=graph.n, ids=np.flatnonzero(mask).astype(np.int64), _size=size)


def frontier_all(n: int, graph: WeightedGraph | None = None) -> Frontier:
    return Frontier(n=n, mask=np.ones(n, bool), _size=n)


def _frontier_from_sorted(ids: np.ndarray, n: int,
                          graph: WeightedGraph | None) -> Frontier:
    size = int(ids.size)
    if graph is not None:
        dense = _use_dense(size, float(graph.degrees[ids].sum()), graph)
    else:
        dense = size > n / 2
    if dense:
        mask = np.zeros(n, bool)
        mask[ids] = True
        return Frontier(n=n, mask=mask, _size=size)
    return Frontier(n=n, ids=ids, _size=size)


def _use_dense(size: int, degree_sum: float, graph: WeightedGraph) -> bool:
    return size + degree_sum > graph.m / DENSE_EDGE_FRACTION
