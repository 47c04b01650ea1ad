"""Point configurations that span many k-chains.

Each generator returns a :class:`ConstructionOutput` whose ``deltas`` is the
distance sequence the configuration is built for and whose ``predicted_lb`` is
a guaranteed lower bound on ``count_chains(point_set, deltas)``.  Equal spacing
on circles can create extra coincidences (chords equal to a delta); those only
add chains, so the bound is a floor and not an exact count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bounds import format_rational, lower_exponent_r2, lower_exponent_r3
from .counting import DistanceSequence
from .geometry import DEFAULT_TOL, PointSet, TolerancePolicy, ValidationError, points_on_circle

CHILDS_MIN_RATIO = 2.5


@dataclass(frozen=True)
class ConstructionOutput:
    family: str
    point_set: PointSet
    deltas: DistanceSequence
    predicted_lb: int
    predicted_exponent: Fraction
    gadget_size: int | None = None

    def to_json_dict(self) -> dict:
        doc = self.point_set.to_json_dict()
        doc.update(
            family=self.family,
            deltas=list(self.deltas.deltas),
            predicted_lb=str(self.predicted_lb),
            predicted_exponent=format_rational(self.predicted_exponent),
        )
        return doc


def _positive(x: float, name: str) -> float:
    if not (isinstance(x, (int, float)) and x > 0 and math.isfinite(x)):
        raise ValidationError(f"{name} must be a positive number, got {x!r}")
    return float(x)


def falling(n: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= n - i
    return out


def hinge_extremal(n: int, delta1: float, delta2: float,
                   tol: TolerancePolicy = DEFAULT_TOL) -> ConstructionOutput:
    """Origin plus two concentric circles of radii delta1 and delta2 (planar).

    Every (point on the first circle, origin, point on the second circle)
    triple is a 2-chain, giving about n**2 / 4 chains.
    """
    if n < 3:
        raise ValidationError(f"hinge construction needs n >= 3, got {n}")
    d1, d2 = _positive(delta1, "delta1"), _positive(delta2, "delta2")
    origin = (0.0, 0.0)
    same = abs(d1 * d1 - d2 * d2) <= tol.rel_tol * max(1.0, d1 * d1)
    if same:
        pts = [origin] + points_on_circle(origin, d1, n - 1)
        lb = (n - 1) * (n - 2)
    else:
        m1, m2 = (n - 1) // 2, (n - 1) - (n - 1) // 2
        pts = [origin]
        if m1:
            pts += points_on_circle(origin, d1, m1)
        pts += points_on_circle(origin, d2, m2)
        lb = m1 * m2
    return ConstructionOutput("hinge", PointSet(2, pts, tol), DistanceSequence((d1, d2)),
                              lb, Fraction(2))


def _gadget(center: tuple[float, ...], radius: float, m: int, plane=None) -> list[tuple[float, ...]]:
    return [center] + points_on_circle(center, radius, m - 1, plane=plane)


def childs_r2(n: int, k: int, delta1: float, delta2: float,
              tol: TolerancePolicy = DEFAULT_TOL) -> ConstructionOutput:
    """Translated copies of a circle-plus-center gadget along the x axis (planar).

    A chain walks circle point -> center -> another circle point (delta1,
    delta1), then jumps by translation to the matching point of the next copy
    (delta2).  The tail of the walk depends on k mod 3.
    """
    if k < 0:
        raise ValidationError(f"k must be >= 0, got {k}")
    d1, d2 = _positive(delta1, "delta1"), _positive(delta2, "delta2")
    if d2 < CHILDS_MIN_RATIO * d1:
        raise ValidationError(
            f"childs-r2 needs delta2 >= {CHILDS_MIN_RATIO} * delta1 so gadgets stay apart")
    r = k % 3
    copies = {2: (k + 1) // 3, 1: (k + 2) // 3, 0: (k + 3) // 3}[r]
    m = n // copies
    if m < 3:
        raise ValidationError(f"gadget size {m} < 3 for n={n}, k={k}; increase n")

    pattern = [d1, d1, d2] * copies
    deltas = pattern[:k]
    # free choices: first circle point, then one circle point per visited center
    steps = {2: copies + 1, 1: copies, 0: copies}[r]
    lb = (m - 1) * (m - 2) ** (steps - 1)

    pts = []
    for i in range(copies):
        pts += _gadget((i * d2, 0.0), d1, m)
    return ConstructionOutput("childs-r2", PointSet(2, pts, tol), DistanceSequence(deltas),
                              lb, lower_exponent_r2(k).exponent, gadget_size=m)


def purwin_spacing(delta1: float, delta2: float) -> float:
    """Plane spacing t with t**2 + delta1**2 == delta2**2."""
    return math.sqrt((delta2 - delta1) * (delta2 + delta1))


def purwin_r3(n: int, k: int, delta1: float, delta2: float,
              tol: TolerancePolicy = DEFAULT_TOL) -> ConstructionOutput:
    """Circle-plus-center gadgets in parallel planes x = i*t of R^3.

    Every point on one circle is at distance delta2 from the centers of both
    neighboring gadgets, so a chain can pick a fresh circle point in each
    gadget it enters.  Odd k adds a lone center past the last gadget as the
    final chain point.
    """
    if k < 2:
        raise ValidationError(f"purwin-r3 needs k >= 2, got {k}")
    d1, d2 = _positive(delta1, "delta1"), _positive(delta2, "delta2")
    if not d1 < d2:
        raise ValidationError("purwin-r3 needs 0 < delta1 < delta2")
    t = purwin_spacing(d1, d2)
    even = k % 2 == 0
    copies = k // 2 if even else (k - 1) // 2
    m = (2 * n) // k if even else (2 * n) // (k - 1)
    if not even:
        # the lone center must fit within n points as well
        m = min(m, (n - 1) // copies)
    if m < 3:
        raise ValidationError(f"gadget size {m} < 3 for n={n}, k={k}; increase n")

    walk = [d1, d2] * copies
    deltas = walk[:2 * copies - 1] + [d1]
    if not even:
        deltas.append(d2)
    # one circle point per gadget plus one extra in the last gadget; each has >= m-2 choices
    steps = copies + 1
    lb = (m - 2) ** steps

    pts = []
    for i in range(copies):
        pts += _gadget((i * t, 0.0, 0.0), d1, m, plane=(1, 2))
    if not even:
        pts.append((copies * t, 0.0, 0.0))
    return ConstructionOutput("purwin-r3", PointSet(3, pts, tol), DistanceSequence(deltas),
                              lb, lower_exponent_r3(k).exponent, gadget_size=m)


def lenz_r4(n: int, k: int, delta: float, tol: TolerancePolicy = DEFAULT_TOL) -> ConstructionOutput:
    """Two circles of radius delta/sqrt(2) in orthogonal coordinate planes of R^4.

    Every point of one circle is at distance delta from every point of the
    other, so chains alternate between circles freely.
    """
    if k < 1:
        raise ValidationError(f"lenz-r4 needs k >= 1, got {k}")
    if n < 2 * (k + 1):
        raise ValidationError(f"lenz-r4 needs n >= 2(k+1) = {2 * (k + 1)}, got {n}")
    d = _positive(delta, "delta")
    radius = d / math.sqrt(2)
    na, nb = n // 2, n - n // 2
    origin = (0.0, 0.0, 0.0, 0.0)
    pts = points_on_circle(origin, radius, na, plane=(0, 1))
    pts += points_on_circle(origin, radius, nb, plane=(2, 3))
    hi, lo = (k + 2) // 2, (k + 1) // 2
    lb = falling(na, hi) * falling(nb, lo) + falling(nb, hi) * falling(na, lo)
    return ConstructionOutput("lenz-r4", PointSet(4, pts, tol), DistanceSequence([d] * k),
                              lb, Fraction(k + 1))


FAMILIES = ("hinge", "childs-r2", "purwin-r3", "lenz-r4")


def construct(family: str, n: int, k: int | None = None, delta1: float = 1.0,
              delta2: float | None = None, tol: TolerancePolicy = DEFAULT_TOL) -> ConstructionOutput:
    """Dispatch by family name; underscores and dashes are interchangeable."""
    fam = family.replace("_", "-")
    if fam == "hinge":
        if k not in (None, 2):
            raise ValidationError("the hinge family only builds 2-chains")
        if delta2 is None:
            raise ValidationError("hinge needs delta2")
        return hinge_extremal(n, delta1, delta2, tol)
    if k is None:
        raise ValidationError(f"{fam} needs k")
    if fam == "childs-r2":
        if delta2 is None:
            raise ValidationError("childs-r2 needs delta2")
        return childs_r2(n, k, delta1, delta2, tol)
    if fam == "purwin-r3":
        if delta2 is None:
            raise ValidationError("purwin-r3 needs delta2")
        return purwin_r3(n, k, delta1, delta2, tol)
    if fam == "lenz-r4":
        return lenz_r4(n, k, delta1, tol)
    raise ValidationError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
