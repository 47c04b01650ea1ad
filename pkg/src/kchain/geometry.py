"""Points, tolerance-based distance equality and the fixed-radius neighbor index.

Every counting routine in the package sees the point set only through
:func:`squared_distance` and :func:`distances_equal`, so all of them agree on
what "at distance delta" means for floating-point input.
"""
from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

Point = tuple[float, ...]

DEFAULT_REL_TOL = 1e-9


class ValidationError(ValueError):
    """Raised when input data violates a documented invariant."""


@dataclass(frozen=True)
class TolerancePolicy:
    rel_tol: float = DEFAULT_REL_TOL

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1e-3):
            raise ValidationError(f"rel_tol must lie in (0, 1e-3), got {self.rel_tol!r}")

    def band(self, delta: float) -> tuple[float, float]:
        """Closed interval of squared distances accepted as equal to ``delta**2``."""
        d2 = delta * delta
        slack = self.rel_tol * max(1.0, d2)
        return d2 - slack, d2 + slack


DEFAULT_TOL = TolerancePolicy()


def squared_distance(p: Sequence[float], q: Sequence[float]) -> float:
    if len(p) != len(q):
        raise ValidationError(f"dimension mismatch: {len(p)} vs {len(q)}")
    # explicit left-to-right sum of products; the vectorized index path mirrors it
    total = 0.0
    for a, b in zip(p, q):
        d = a - b
        total += d * d
    return total


def distances_equal(d2: float, delta: float, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    d = delta * delta
    return abs(d2 - d) <= tol.rel_tol * max(1.0, d)


@dataclass(frozen=True)
class PointSet:
    """An immutable set of distinct points in R^2, R^3 or R^4."""

    dim: int
    points: tuple[Point, ...]
    tol: TolerancePolicy = field(default=DEFAULT_TOL, compare=False)

    def __init__(self, dim: int, points: Iterable[Sequence[float]], tol: TolerancePolicy = DEFAULT_TOL):
        if dim not in (2, 3, 4):
            raise ValidationError(f"dim must be 2, 3 or 4, got {dim!r}")
        pts = []
        for i, p in enumerate(points):
            if len(p) != dim:
                raise ValidationError(f"point {i} has {len(p)} coordinates, expected {dim}")
            q = tuple(float(c) for c in p)
            if not all(math.isfinite(c) for c in q):
                raise ValidationError(f"point {i} has a non-finite coordinate")
            pts.append(q)
        if not pts:
            raise ValidationError("a point set needs at least one point")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "tol", tol)
        dup = find_duplicate(self.points, tol)
        if dup is not None:
            i, j = dup
            raise ValidationError(f"points {i} and {j} coincide under rel_tol={tol.rel_tol}")

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    def diameter_squared(self) -> float:
        a = self.as_array()
        if len(a) == 1:
            return 0.0
        # farthest pair is among hull points, but n is small enough for a blocked scan
        best = 0.0
        for i in range(len(a)):
            diff = a[i + 1:] - a[i]
            if len(diff):
                best = max(best, float(np.max(np.einsum("ij,ij->i", diff, diff))))
        return best

    def to_json_dict(self) -> dict:
        return {"dim": self.dim, "points": [list(p) for p in self.points]}


def find_duplicate(points: Sequence[Point], tol: TolerancePolicy = DEFAULT_TOL) -> tuple[int, int] | None:
    """Return the first pair (i, j), i < j, of points closer than the tolerance allows.

    Two points coincide when their squared distance lies in the tolerance band
    around zero, i.e. ``d2 <= rel_tol``.
    """
    if len(points) < 2:
        return None
    tree = cKDTree(np.asarray(points, dtype=float))
    radius = math.sqrt(tol.rel_tol) * (1 + 1e-9)
    for i, j in sorted(tree.query_pairs(radius)):
        if squared_distance(points[i], points[j]) <= tol.rel_tol:
            return i, j
    return None


@dataclass(frozen=True)
class RadiusIndex:
    """The graph of point pairs at distance ``delta``; neighbor lists are sorted."""

    delta: float
    neighbors: tuple[tuple[int, ...], ...]

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.neighbors) // 2

    def neighbor_sets(self) -> list[frozenset[int]]:
        return [frozenset(nb) for nb in self.neighbors]


def _candidate_offsets(dim: int, reach: float) -> list[tuple[int, ...]]:
    # a cell at offset o is at least delta * sqrt(sum(max(|o_i| - 1, 0)^2)) away
    span = int(math.ceil(reach)) + 1
    out = []
    for off in itertools.product(range(-span, span + 1), repeat=dim):
        gap = sum(max(abs(o) - 1, 0) ** 2 for o in off)
        if gap <= reach * reach:
            out.append(off)
    return out


def build_radius_index(ps: PointSet, delta: float, tol: TolerancePolicy = DEFAULT_TOL) -> RadiusIndex:
    """Find every pair of points at distance ``delta`` using a uniform grid.

    Cells have side ``delta``; a pair of cells is scanned only if the shell of
    accepted distances can reach from one box into the other.  The per-pair test
    is the same arithmetic as :func:`distances_equal`, so the result equals the
    all-pairs scan.
    """
    if not delta > 0:
        raise ValidationError(f"delta must be positive, got {delta!r}")
    n, dim = ps.n, ps.dim
    lo2, hi2 = tol.band(delta)
    lo2 = max(lo2, 0.0)
    # widen the geometric pruning radii; the exact test happens afterwards
    r_hi = math.sqrt(hi2) * (1 + 1e-9) + 1e-12
    r_lo = math.sqrt(lo2) * (1 - 1e-9)
    reach = r_hi / delta

    coords = ps.as_array()
    cell_of = np.floor(coords / delta).astype(np.int64)
    cells: dict[tuple[int, ...], list[int]] = {}
    for i, c in enumerate(map(tuple, cell_of.tolist())):
        cells.setdefault(c, []).append(i)
    cell_arrays = {c: np.asarray(ix, dtype=np.int64) for c, ix in cells.items()}

    offsets = _candidate_offsets(dim, reach)
    adj: list[list[int]] = [[] for _ in range(n)]
    d_target = delta * delta
    slack = tol.rel_tol * max(1.0, d_target)
    for c, ia in cell_arrays.items():
        a = coords[ia]
        for off in offsets:
            # each unordered cell pair once
            if off < (0,) * dim:
                continue
            other = tuple(ci + oi for ci, oi in zip(c, off))
            ib = cell_arrays.get(other)
            if ib is None:
                continue
            gap2 = sum(max(abs(o) - 1, 0) ** 2 for o in off) * delta * delta
            far2 = sum((abs(o) + 1) ** 2 for o in off) * delta * delta
            if gap2 > r_hi * r_hi or far2 < r_lo * r_lo:
                continue
            b = coords[ib]
            d2 = np.zeros((len(ia), len(ib)))
            for axis in range(dim):
                diff = a[:, axis][:, None] - b[:, axis][None, :]
                d2 = d2 + diff * diff
            hit = np.abs(d2 - d_target) <= slack
            if not any(off):
                hit &= ia[:, None] < ib[None, :]
            for x, y in zip(*np.nonzero(hit)):
                i, j = int(ia[x]), int(ib[y])
                adj[i].append(j)
                adj[j].append(i)
    return RadiusIndex(delta=delta, neighbors=tuple(tuple(sorted(nb)) for nb in adj))


def radius_index_bruteforce(ps: PointSet, delta: float, tol: TolerancePolicy = DEFAULT_TOL) -> RadiusIndex:
    """All-pairs reference for :func:`build_radius_index`."""
    adj: list[list[int]] = [[] for _ in range(ps.n)]
    pts = ps.points
    for i in range(ps.n):
        for j in range(i + 1, ps.n):
            if distances_equal(squared_distance(pts[i], pts[j]), delta, tol):
                adj[i].append(j)
                adj[j].append(i)
    return RadiusIndex(delta=delta, neighbors=tuple(tuple(sorted(nb)) for nb in adj))


def _plane_basis(dim: int, plane: tuple[int, int] | None) -> tuple[int, int]:
    if plane is None:
        plane = (0, 1) if dim == 2 else (dim - 2, dim - 1)
    a, b = plane
    if a == b or not (0 <= a < dim and 0 <= b < dim):
        raise ValidationError(f"plane {plane!r} is not a pair of distinct axes in R^{dim}")
    return a, b


def points_on_circle(center: Sequence[float], radius: float, count: int,
                     plane: tuple[int, int] | None = None, phase: float = 0.0) -> list[Point]:
    """``count`` equally spaced points on a circle in an axis-aligned 2-plane.

    ``plane`` names the two coordinate axes spanning the circle's plane; it
    defaults to the first two axes in R^2 and the last two otherwise (so in R^3
    the circle lies in the plane ``x = center[0]``).
    """
    if count <= 0:
        raise ValidationError(f"count must be >= 1, got {count}")
    if not radius > 0:
        raise ValidationError(f"radius must be positive, got {radius!r}")
    a, b = _plane_basis(len(center), plane)
    out = []
    for j in range(count):
        theta = phase + 2 * math.pi * j / count
        p = list(map(float, center))
        p[a] += radius * math.cos(theta)
        p[b] += radius * math.sin(theta)
        out.append(tuple(p))
    return out


# -- file formats -----------------------------------------------------------

def point_set_from_json_dict(doc: dict, tol: TolerancePolicy = DEFAULT_TOL) -> PointSet:
    try:
        dim = int(doc["dim"])
        points = doc["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed point-set document: {exc}") from None
    return PointSet(dim, points, tol)


def load_point_set(path: str | Path, tol: TolerancePolicy = DEFAULT_TOL) -> PointSet:
    """Read a point set from JSON (``{"dim": d, "points": [...]}``) or headerless CSV."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        rows = [r for r in csv.reader(text.splitlines()) if r and any(c.strip() for c in r)]
        if not rows:
            raise ValidationError(f"{path}: empty CSV")
        try:
            pts = [[float(c) for c in r] for r in rows]
        except ValueError as exc:
            raise ValidationError(f"{path}: {exc}") from None
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise ValidationError(f"{path}: rows have differing column counts {sorted(dims)}")
        return PointSet(dims.pop(), pts, tol)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: {exc}") from None
    return point_set_from_json_dict(doc, tol)


def save_point_set(ps: PointSet, path: str | Path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with path.open("w", newline="") as fh:
            csv.writer(fh).writerows(ps.points)
    else:
        path.write_text(json.dumps(ps.to_json_dict(), sort_keys=True))
