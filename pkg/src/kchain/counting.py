"""Exact k-chain counting.

A k-chain for distances ``(d_1, ..., d_k)`` is an ordered tuple of k+1
pairwise-distinct points whose consecutive gaps are ``d_1, ..., d_k``.
:func:`count_chains` is the fast path (DFS over radius indexes);
:func:`count_chains_brute` is an independent reference that never touches the
index.
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .geometry import (
    DEFAULT_TOL,
    PointSet,
    RadiusIndex,
    TolerancePolicy,
    ValidationError,
    build_radius_index,
    distances_equal,
    squared_distance,
)

BRUTE_MAX_K = 6
BRUTE_MAX_TUPLES = 10**9


@dataclass(frozen=True)
class DistanceSequence:
    deltas: tuple[float, ...]

    def __init__(self, deltas: Sequence[float]):
        ds = tuple(float(d) for d in deltas)
        for d in ds:
            if not d > 0 or d != d or d == float("inf"):
                raise ValidationError(f"distances must be positive and finite, got {d!r}")
        object.__setattr__(self, "deltas", ds)

    @property
    def k(self) -> int:
        return len(self.deltas)

    def reversed(self) -> "DistanceSequence":
        return DistanceSequence(self.deltas[::-1])

    def __iter__(self):
        return iter(self.deltas)

    def __len__(self) -> int:
        return len(self.deltas)


def _as_sequence(ds) -> DistanceSequence:
    return ds if isinstance(ds, DistanceSequence) else DistanceSequence(ds)


@dataclass(frozen=True)
class RichHistogram:
    delta: float
    degree_counts: dict[int, int]

    def rich_count(self, r: int) -> int:
        """Number of points with at least ``r`` neighbors at distance ``delta``."""
        return sum(c for deg, c in self.degree_counts.items() if deg >= r)

    @property
    def n(self) -> int:
        return sum(self.degree_counts.values())


# -- reference oracle -------------------------------------------------------

def count_chains_brute(ps: PointSet, ds, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    """Count chains by nested enumeration over all points at every position."""
    ds = _as_sequence(ds)
    k, n = ds.k, ps.n
    if k > BRUTE_MAX_K or n ** (k + 1) > BRUTE_MAX_TUPLES:
        raise ValidationError(
            f"brute-force guard exceeded (n={n}, k={k}); use count_chains instead")
    pts = ps.points
    deltas = ds.deltas
    used = [False] * n

    def extend(prev: int, depth: int) -> int:
        if depth == k:
            return 1
        total = 0
        delta = deltas[depth]
        for j in range(n):
            if used[j] or not distances_equal(squared_distance(pts[prev], pts[j]), delta, tol):
                continue
            used[j] = True
            total += extend(j, depth + 1)
            used[j] = False
        return total

    total = 0
    for i in range(n):
        used[i] = True
        total += extend(i, 0)
        used[i] = False
    return total


# -- fast path --------------------------------------------------------------

def build_indexes(ps: PointSet, ds, tol: TolerancePolicy = DEFAULT_TOL) -> list[RadiusIndex]:
    """One radius index per position of ``ds``; equal distances share an index."""
    ds = _as_sequence(ds)
    cache: dict[float, RadiusIndex] = {}
    out = []
    for d in ds.deltas:
        if d not in cache:
            cache[d] = build_radius_index(ps, d, tol)
        out.append(cache[d])
    return out


def _count_from_starts(adj: list[tuple[tuple[int, ...], ...]],
                       adj_sets: list[list[frozenset[int]]],
                       starts: Sequence[int]) -> int:
    k = len(adj)
    visited: set[int] = set()
    last_sets = adj_sets[-1]

    def extend(v: int, depth: int) -> int:
        if depth == k - 1:
            # last step: neighbors of v minus points already on the chain
            nb = last_sets[v]
            return len(nb) - sum(1 for u in visited if u in nb)
        total = 0
        for u in adj[depth][v]:
            if u in visited:
                continue
            visited.add(u)
            total += extend(u, depth + 1)
            visited.discard(u)
        return total

    total = 0
    for s in starts:
        visited.add(s)
        total += extend(s, 0)
        visited.discard(s)
    return total


def _prepare(indexes: list[RadiusIndex]):
    adj = [ix.neighbors for ix in indexes]
    set_cache: dict[int, list[frozenset[int]]] = {}
    adj_sets = []
    for ix in indexes:
        if id(ix) not in set_cache:
            set_cache[id(ix)] = ix.neighbor_sets()
        adj_sets.append(set_cache[id(ix)])
    return adj, adj_sets


def count_chains(ps: PointSet, ds, tol: TolerancePolicy = DEFAULT_TOL, workers: int = 1) -> int:
    """Exact number of k-chains, by depth-first extension over radius indexes.

    With ``workers > 1`` the start points are split across processes and the
    partial counts summed; the total does not depend on the split.
    """
    ds = _as_sequence(ds)
    if ds.k == 0:
        return ps.n
    indexes = build_indexes(ps, ds, tol)
    return count_chains_indexed(indexes, ps.n, workers=workers)


def count_chains_indexed(indexes: list[RadiusIndex], n: int, workers: int = 1,
                         starts: Sequence[int] | None = None) -> int:
    if not indexes:
        return n if starts is None else len(starts)
    adj, adj_sets = _prepare(indexes)
    starts = range(n) if starts is None else starts
    if workers <= 1:
        return _count_from_starts(adj, adj_sets, starts)
    starts = list(starts)
    # the first edge prunes most start points; balance by first-step degree
    starts = [s for s in starts if adj[0][s]]
    workers = min(workers, os.cpu_count() or 1, max(1, len(starts)))
    if workers <= 1:
        return _count_from_starts(adj, adj_sets, starts)
    chunks = [starts[w::workers] for w in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_count_from_starts, adj, adj_sets, c) for c in chunks]
        return sum(f.result() for f in futures)


def count_walks(ps: PointSet, ds, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    """Count tuples satisfying the distance constraints with repeats allowed."""
    ds = _as_sequence(ds)
    if ds.k == 0:
        return ps.n
    indexes = build_indexes(ps, ds, tol)
    # weight[v] = number of walk suffixes starting at v; push back from the end
    weight = [1] * ps.n
    for ix in reversed(indexes):
        weight = [sum(weight[u] for u in nb) for nb in ix.neighbors]
    return sum(weight)


def iter_chains(ps: PointSet, ds, tol: TolerancePolicy = DEFAULT_TOL) -> Iterator[tuple[int, ...]]:
    """Yield chains as index tuples in the same DFS order that count_chains uses."""
    ds = _as_sequence(ds)
    if ds.k == 0:
        for i in range(ps.n):
            yield (i,)
        return
    adj = [ix.neighbors for ix in build_indexes(ps, ds, tol)]
    k = ds.k
    path: list[int] = []
    on_path: set[int] = set()

    def extend(v: int, depth: int):
        if depth == k:
            yield tuple(path)
            return
        for u in adj[depth][v]:
            if u in on_path:
                continue
            path.append(u)
            on_path.add(u)
            yield from extend(u, depth + 1)
            path.pop()
            on_path.discard(u)

    for s in range(ps.n):
        path.append(s)
        on_path.add(s)
        yield from extend(s, 0)
        path.pop()
        on_path.discard(s)


def enumerate_chains(ps: PointSet, ds, tol: TolerancePolicy = DEFAULT_TOL, limit: int = 100) -> list[tuple[int, ...]]:
    if limit < 1:
        raise ValidationError(f"limit must be >= 1, got {limit}")
    out = []
    for chain in iter_chains(ps, ds, tol):
        out.append(chain)
        if len(out) >= limit:
            break
    return out


def rich_point_histogram(ps: PointSet, delta: float, tol: TolerancePolicy = DEFAULT_TOL) -> RichHistogram:
    ix = build_radius_index(ps, delta, tol)
    counts = Counter(len(nb) for nb in ix.neighbors)
    return RichHistogram(delta=delta, degree_counts=dict(sorted(counts.items())))
