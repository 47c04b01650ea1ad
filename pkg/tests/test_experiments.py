import json
import math

import pytest

from kchain.constructions import hinge_extremal
from kchain.experiments import (
    bounds_table,
    fit_loglog_slope,
    growth_experiment,
    rich_report,
    table_to_csv,
)
from kchain.geometry import PointSet, ValidationError


def test_fit_power_laws():
    slope, _, _ = fit_loglog_slope([(10, 100), (100, 10000)])
    assert slope == pytest.approx(2.0, abs=1e-12)
    slope, intercept, r2 = fit_loglog_slope([(10, 10), (100, 100), (1000, 1000)])
    assert slope == pytest.approx(1.0, abs=1e-12)
    assert intercept == pytest.approx(0.0, abs=1e-12)
    assert r2 == pytest.approx(1.0)
    slope, _, _ = fit_loglog_slope([(2, 8), (4, 64), (8, 512)])
    assert slope == pytest.approx(3.0, abs=1e-12)


def test_fit_rejects_bad_input():
    with pytest.raises(ValidationError):
        fit_loglog_slope([(10, 0), (20, 5)])
    with pytest.raises(ValidationError):
        fit_loglog_slope([(10, 3)])


def test_growth_report_contents():
    rep = growth_experiment("hinge", None, [25, 50, 100], 1, 2)
    assert rep.sizes == (25, 50, 100)
    assert all(c >= lb for c, lb in zip(rep.counts, rep.predicted_lbs))
    assert rep.predicted_exponent == 2
    assert rep.k == 2
    doc = json.loads(rep.to_json())
    assert doc["counts"] == [str(c) for c in rep.counts]
    assert doc["predicted_exponent"] == "2/1"
    lines = rep.to_csv().splitlines()
    assert lines[0] == "n,count,ln_n,ln_count"
    n, c, ln_n, ln_c = lines[1].split(",")
    assert int(n) == 25 and float(ln_n) == pytest.approx(math.log(25))
    assert float(ln_c) == pytest.approx(math.log(int(c)))


def test_growth_is_deterministic():
    a = growth_experiment("childs-r2", 3, [24, 48, 96], 1, 3)
    b = growth_experiment("childs-r2", 3, [24, 48, 96], 1, 3, workers=2)
    assert a.to_json() == b.to_json()


def test_growth_validates_ladder():
    with pytest.raises(ValidationError):
        growth_experiment("hinge", None, [50, 100], 1, 2)
    with pytest.raises(ValidationError):
        growth_experiment("hinge", None, [50, 40, 100], 1, 2)
    with pytest.raises(ValidationError):
        growth_experiment("purwin-r3", 4, [40, 80, 160], 5, 3)


@pytest.mark.parametrize("family, k, base, d1, d2", [
    ("hinge", None, [25, 50, 100], 1, 2),
    ("childs-r2", 3, [24, 48, 96], 1, 3),
    ("childs-r2", 5, [30, 60, 120], 1, 3),
    ("purwin-r3", 4, [20, 40, 80], 3, 5),
])
def test_slope_error_shrinks_up_the_ladder(family, k, base, d1, d2):
    errors = []
    for shift in range(3):
        rep = growth_experiment(family, k, [b * 2 ** shift for b in base], d1, d2)
        errors.append(rep.slope_error)
    assert errors == sorted(errors, reverse=True)


def test_rich_report_square():
    sq = PointSet(2, [(0, 0), (1, 0), (1, 1), (0, 1)])
    rows = rich_report(sq, 1.0, [2])
    # n = 4 unit circles around the points: 4^2/2^3 + 4/2
    assert rows == [{"r": 2, "empirical": 4, "bound": pytest.approx(4.0)}]
    assert rich_report(sq, 1.0, [5])[0]["empirical"] == 0


def test_rich_report_hinge_center():
    out = hinge_extremal(101, 1, 2)
    rows = rich_report(out.point_set, 1.0, [2, 50])
    assert rows[1]["empirical"] >= 1


def test_rich_report_dims():
    cube = PointSet(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    rows = rich_report(cube, 1.0, [3])
    assert rows[0]["empirical"] == 1
    assert rows[0]["bound"] == pytest.approx(4 ** 3 / 3 ** 4 + 4 / 3)
    with pytest.raises(ValidationError):
        rich_report(PointSet(4, [(0, 0, 0, 0)]), 1.0, [2])
    with pytest.raises(ValidationError):
        rich_report(cube, 1.0, [])


def test_bounds_table_rows():
    rows = {r["k"]: r for r in bounds_table(5, 2)}
    assert rows[3] == {"k": 3, "lower": "2/1", "optimistic": "7/3", "upper": "13/6", "flags": ""}
    assert rows[2]["optimistic"] is None
    r3 = {r["k"]: r for r in bounds_table(4, 3)}
    assert r3[2]["lower"] == "2/1" and r3[2]["upper"] == "2/1"
    assert r3[3]["upper"] == "590/197" and r3[3]["flags"] == "upper:eps"
    assert r3[1]["flags"] == "lower:loglog;upper:eps"
    with pytest.raises(ValidationError):
        bounds_table(2, 2)
    csv_text = table_to_csv(bounds_table(3, 2, k_min=3))
    assert csv_text.splitlines() == ["k,lower,optimistic,upper,flags", "3,2/1,7/3,13/6,"]
