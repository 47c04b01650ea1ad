"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line (with runtime) that is printed in the
pytest terminal summary; run ``python tests/test_acceptance.py`` to get the
same lines without pytest.
"""
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from kchain.bounds import (
    chain_exponent_recurrence,
    gamma,
    lower_exponent_r2,
    optimistic_exponent_r2,
    upper_exponent_r2,
    upper_exponent_r3,
)
from kchain.constructions import childs_r2, hinge_extremal, lenz_r4, purwin_r3, purwin_spacing
from kchain.counting import count_chains, count_chains_brute
from kchain.experiments import growth_experiment
from kchain.geometry import PointSet, squared_distance

RESULTS: list[str] = []


@contextmanager
def criterion(number: int, title: str, budget_s: float):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget_s, f"took {elapsed:.1f}s, budget {budget_s}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        RESULTS.append(f"FAIL  {number:>2}. {title} ({elapsed:.2f}s): {exc}")
        raise
    RESULTS.append(f"PASS  {number:>2}. {title} ({elapsed:.2f}s)")


def uniform_instance(rng: random.Random, dim: int, n: int):
    ps = PointSet(dim, [tuple(rng.random() for _ in range(dim)) for _ in range(n)])
    dists = [math.sqrt(squared_distance(p, q))
             for i, p in enumerate(ps.points) for q in ps.points[i + 1:]]
    return ps, dists


def test_01_exponent_exactness():
    with criterion(1, "exponent exactness: 13/6, gamma(5)=1/12, 590/197", 1):
        assert upper_exponent_r2(3).exponent == F(13, 6)
        assert gamma(5) == F(1, 12)
        e = upper_exponent_r3(3).exponent
        assert e == F(590, 197)
        assert F(29949, 10000) < e < F(2995, 1000)


def test_02_recurrence_matches_closed_form():
    with criterion(2, "recurrence == closed form for 3 <= k <= 60", 1):
        for k in range(3, 61):
            assert chain_exponent_recurrence(k) == upper_exponent_r2(k).exponent, k


def test_03_gamma_limit():
    with criterion(3, "gamma(k) -> 4/75 within 1e-3 (k >= 20), gamma <= 1/12", 1):
        for k in range(20, 101):
            assert abs(gamma(k) - F(4, 75)) < F(1, 10**3), k
        for k in range(3, 101):
            assert gamma(k) <= F(1, 12), k


def test_04_oracle_equivalence():
    with criterion(4, "count_chains == count_chains_brute on 200 random instances", 60):
        rng = random.Random(4)
        for trial in range(200):
            dim = rng.choice([2, 3])
            ps, dists = uniform_instance(rng, dim, rng.randint(2, 10))
            ds = [rng.choice(dists) for _ in range(rng.randint(0, 3))]
            assert count_chains(ps, ds) == count_chains_brute(ps, ds), trial


def test_05_hinge():
    with criterion(5, "hinge: n=101 count >= 2500; slope within 0.15 of 2", 30):
        out = hinge_extremal(101, 1, 2)
        assert count_chains(out.point_set, out.deltas) >= 2500
        rep = growth_experiment("hinge", None, [50, 100, 200, 400], 1, 2)
        assert abs(rep.fitted_slope - 2) <= 0.15, rep.fitted_slope


def test_06_childs():
    with criterion(6, "childs-r2: k=3 slope within 0.2 of 2; k=5,n=20 count >= 576 both ways", 60):
        rep = growth_experiment("childs-r2", 3, [48, 96, 192, 384], 1, 3)
        assert abs(rep.fitted_slope - 2) <= 0.2, rep.fitted_slope
        out = childs_r2(20, 5, 1, 3)
        assert out.predicted_lb == 576
        fast = count_chains(out.point_set, out.deltas)
        brute = count_chains_brute(out.point_set, out.deltas)
        assert fast == brute >= 576


def test_07_purwin():
    with criterion(7, "purwin-r3: k=4 slope within 0.2 of 3; t^2+d1^2=d2^2 to 1e-12", 120):
        rep = growth_experiment("purwin-r3", 4, [40, 80, 160], 3, 5)
        assert abs(rep.fitted_slope - 3) <= 0.2, rep.fitted_slope
        for d1, d2 in [(3, 5), (1, 2), (0.3, 0.31), (7.5, 100)]:
            t = purwin_spacing(d1, d2)
            assert abs(t * t + d1 * d1 - d2 * d2) <= 1e-12 * d2 * d2
        out = purwin_r3(40, 4, 3, 5)
        assert count_chains(out.point_set, out.deltas) >= out.predicted_lb


def test_08_lenz():
    with criterion(8, "lenz-r4: n=12, k=2 count exactly 360, matching brute force", 5):
        out = lenz_r4(12, 2, 1)
        assert count_chains(out.point_set, out.deltas) == 360
        assert count_chains_brute(out.point_set, out.deltas) == 360


def test_09_conjecture_consistency():
    with criterion(9, "optimistic(k, u=1) == lower(k) for 3 <= k <= 30", 1):
        for k in range(3, 31):
            assert optimistic_exponent_r2(k, 1).exponent == lower_exponent_r2(k).exponent, k


def test_10_reversal_symmetry():
    with criterion(10, "reversal symmetry on 100 random instances", 30):
        rng = random.Random(10)
        for trial in range(100):
            dim = rng.choice([2, 3])
            ps, dists = uniform_instance(rng, dim, rng.randint(2, 10))
            # force some structure: reuse one realized distance at several positions
            pool = rng.sample(dists, min(2, len(dists)))
            ds = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
            assert count_chains(ps, ds) == count_chains(ps, ds[::-1]), trial


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except Exception:
                failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
