"""Counting, constructing and bounding k-chains of prescribed distances."""
from .bounds import (
    ExponentBound,
    chain_exponent_recurrence,
    gamma,
    incidence_bound_circles,
    incidence_bound_spheres,
    lower_exponent_r2,
    lower_exponent_r3,
    optimistic_exponent_r2,
    rich_points_bound_circles,
    rich_points_bound_spheres,
    upper_exponent_r2,
    upper_exponent_r3,
)
from .constructions import ConstructionOutput, childs_r2, construct, hinge_extremal, lenz_r4, purwin_r3
from .counting import (
    DistanceSequence,
    RichHistogram,
    count_chains,
    count_chains_brute,
    count_walks,
    enumerate_chains,
    rich_point_histogram,
)
from .experiments import GrowthReport, bounds_table, fit_loglog_slope, growth_experiment, rich_report
from .geometry import (
    PointSet,
    RadiusIndex,
    TolerancePolicy,
    ValidationError,
    build_radius_index,
    distances_equal,
    load_point_set,
    points_on_circle,
    squared_distance,
)

__version__ = "0.1.0"
