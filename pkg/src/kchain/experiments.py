"""Growth experiments and diagnostic tables."""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import bounds
from .bounds import format_rational
from .constructions import construct
from .counting import DistanceSequence, count_chains, rich_point_histogram
from .geometry import DEFAULT_TOL, PointSet, TolerancePolicy, ValidationError


def fit_loglog_slope(pairs: Sequence[tuple[float, int]]) -> tuple[float, float, float]:
    """Least-squares line through (ln n, ln count); returns (slope, intercept, r2)."""
    if len(pairs) < 2:
        raise ValidationError("need at least two (n, count) pairs")
    for n, c in pairs:
        if c <= 0:
            raise ValidationError(f"count at n={n} is {c}; log-log fit needs positive counts")
        if n <= 0:
            raise ValidationError(f"size must be positive, got {n}")
    x = np.array([math.log(n) for n, _ in pairs])
    y = np.array([math.log(c) for _, c in pairs])
    if np.ptp(x) == 0:
        raise ValidationError("sizes must not all be equal")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - float(np.sum(resid ** 2)) / ss_tot
    return float(slope), float(intercept), r2


@dataclass(frozen=True)
class GrowthReport:
    family: str
    k: int
    sizes: tuple[int, ...]
    counts: tuple[int, ...]
    predicted_lbs: tuple[int, ...]
    point_counts: tuple[int, ...]
    fitted_slope: float
    fit_intercept: float
    fit_r2: float
    predicted_exponent: Fraction
    deltas_used: DistanceSequence
    tol: float

    @property
    def slope_error(self) -> float:
        return abs(self.fitted_slope - float(self.predicted_exponent))

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "sizes": list(self.sizes),
            "point_counts": list(self.point_counts),
            "counts": [str(c) for c in self.counts],
            "predicted_lbs": [str(c) for c in self.predicted_lbs],
            "fitted_slope": self.fitted_slope,
            "fit_intercept": self.fit_intercept,
            "fit_r2": self.fit_r2,
            "predicted_exponent": format_rational(self.predicted_exponent),
            "deltas_used": list(self.deltas_used.deltas),
            "tol": self.tol,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count", "ln_n", "ln_count"])
        for n, c in zip(self.sizes, self.counts):
            w.writerow([n, c, repr(math.log(n)), repr(math.log(c)) if c > 0 else "-inf"])
        return buf.getvalue()


def growth_experiment(family: str, k: int | None, sizes: Sequence[int], delta1: float = 1.0,
                      delta2: float | None = None, tol: TolerancePolicy = DEFAULT_TOL,
                      workers: int = 1) -> GrowthReport:
    """Build ``family`` at each size, count its chains exactly and fit the growth rate.

    Sizes run independently (up to ``workers`` at once); the report is always
    ordered by size.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) < 3:
        raise ValidationError("a growth fit needs at least three sizes")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValidationError("sizes must be strictly increasing")
    outs = [construct(family, n, k, delta1, delta2, tol) for n in sizes]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(count_chains, o.point_set, o.deltas, tol) for o in outs]
            counts = [f.result() for f in futures]
    else:
        counts = [count_chains(o.point_set, o.deltas, tol) for o in outs]
    slope, intercept, r2 = fit_loglog_slope(list(zip(sizes, counts)))
    first = outs[0]
    return GrowthReport(
        family=first.family,
        k=first.deltas.k,
        sizes=tuple(sizes),
        counts=tuple(counts),
        predicted_lbs=tuple(o.predicted_lb for o in outs),
        point_counts=tuple(o.point_set.n for o in outs),
        fitted_slope=slope,
        fit_intercept=intercept,
        fit_r2=r2,
        predicted_exponent=first.predicted_exponent,
        deltas_used=first.deltas,
        tol=tol.rel_tol,
    )


def rich_report(ps: PointSet, delta: float, r_values: Sequence[int],
                tol: TolerancePolicy = DEFAULT_TOL) -> list[dict]:
    """Empirical r-rich counts next to the dual incidence bound (constants set to 1).

    The bound places one circle (dim 2) or sphere (dim 3) of radius delta
    around every point; its value is informational only.
    """
    if not r_values:
        raise ValidationError("r_values must be nonempty")
    if ps.dim == 2:
        bound = bounds.rich_points_bound_circles
    elif ps.dim == 3:
        bound = bounds.rich_points_bound_spheres
    else:
        raise ValidationError(f"no rich-point bound for dim {ps.dim}")
    hist = rich_point_histogram(ps, delta, tol)
    rows = []
    for r in r_values:
        if r < 2:
            raise ValidationError(f"r must be >= 2, got {r}")
        rows.append({"r": int(r), "empirical": hist.rich_count(r), "bound": bound(ps.n, r)})
    return rows


def bounds_row(k: int, dim: int, u_exp=bounds.UNIT_DISTANCE_R2) -> dict:
    if dim == 2:
        lo = bounds.lower_exponent_r2(k)
        hi = bounds.upper_exponent_r2(k)
        opt = bounds.optimistic_exponent_r2(k, u_exp) if k >= 3 else None
    elif dim == 3:
        lo = bounds.lower_exponent_r3(k)
        hi = bounds.upper_exponent_r3(k)
        opt = None
    else:
        raise ValidationError(f"bounds are tabulated for dim 2 or 3, got {dim}")
    flags = [f"lower:{f}" for f in lo.flags()] + [f"upper:{f}" for f in hi.flags()]
    return {
        "k": k,
        "lower": str(lo),
        "optimistic": None if opt is None else str(opt),
        "upper": str(hi),
        "flags": ";".join(flags),
    }


def bounds_table(k_max: int, dim: int, u_exp=bounds.UNIT_DISTANCE_R2, k_min: int = 0) -> list[dict]:
    """One row of exponents per k in ``[k_min, k_max]``, rationals as "p/q" strings."""
    if k_max < 3:
        raise ValidationError(f"k_max must be >= 3, got {k_max}")
    if not 0 <= k_min <= k_max:
        raise ValidationError(f"k_min must lie in [0, {k_max}], got {k_min}")
    return [bounds_row(k, dim, u_exp) for k in range(k_min, k_max + 1)]


def table_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({key: "" if v is None else v for key, v in row.items()})
    return buf.getvalue()
