"""Exponent formulas and incidence bounds for k-chains, in exact rationals.

Exponents are :class:`fractions.Fraction` values.  Epsilon losses and
log factors are carried as flags on :class:`ExponentBound` and never folded
into the exponent itself, so identities between formulas stay exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .geometry import ValidationError

Rational = Fraction

UPPER = "upper"
LOWER = "lower"

# Exponents quoted from the literature the bounds build on.
UNIT_DISTANCE_R2 = Fraction(4, 3)        # Spencer-Szemeredi-Trotter
UNIT_DISTANCE_R3 = Fraction(295, 197)    # Zahl, with epsilon loss
UNIT_DISTANCE_R3_LOWER = Fraction(4, 3)  # Erdos, times log log n
CIRCLE_INCIDENCE_R3_TAIL = Fraction(23, 33)


@dataclass(frozen=True)
class ExponentBound:
    exponent: Fraction
    side: str
    has_epsilon: bool = False
    has_log_factor: bool = False

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponents are nonnegative")
        if self.side not in (UPPER, LOWER):
            raise ValueError(f"side must be {UPPER!r} or {LOWER!r}")

    def flags(self) -> list[str]:
        out = []
        if self.has_epsilon:
            out.append("eps")
        if self.has_log_factor:
            out.append("loglog")
        return out

    def __str__(self) -> str:
        return format_rational(self.exponent)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a rational number: {text!r}") from None


def _need_int(k, lo: int, name: str = "k") -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        raise ValidationError(f"{name} must be an integer, got {k!r}")
    if k < lo:
        raise ValidationError(f"{name} must be >= {lo}, got {k}")
    return k


# -- R^2 ----------------------------------------------------------------------

_GAMMA_COEFF = {0: Fraction(-4), 1: Fraction(-9), 2: Fraction(11), 3: Fraction(-13, 2)}


def gamma(k: int) -> Fraction:
    """Correction term in the R^2 upper exponent ``2k/5 + 1 + gamma(k)``."""
    _need_int(k, 3)
    return (4 + _GAMMA_COEFF[k % 4] * Fraction(-1, 4) ** (k // 4)) / 75


@lru_cache(maxsize=None)
def chain_exponent_recurrence(k: int) -> Fraction:
    """Upper exponent for k-chains in R^2 from ``a_k = a_{k-3}/2 + a_{k-2}/2 + 1``."""
    _need_int(k, 0)
    a = [Fraction(1), UNIT_DISTANCE_R2, Fraction(2)]
    while len(a) <= k:
        j = len(a)
        a.append(a[j - 3] / 2 + a[j - 2] / 2 + 1)
    return a[k]


def upper_exponent_r2(k: int) -> ExponentBound:
    _need_int(k, 0)
    if k == 0:
        e = Fraction(1)
    elif k == 1:
        e = UNIT_DISTANCE_R2
    elif k == 2:
        e = Fraction(2)
    else:
        e = Fraction(2 * k, 5) + 1 + gamma(k)
    return ExponentBound(e, UPPER)


def lower_exponent_r2(k: int) -> ExponentBound:
    """Exponent of the chain count achieved by the circle-gadget construction in R^2."""
    _need_int(k, 0)
    r = k % 3
    if r == 0:
        e = Fraction(k, 3) + 1
    elif r == 1:
        e = Fraction(k + 2, 3)
    else:
        e = Fraction(k + 1, 3) + 1
    return ExponentBound(e, LOWER)


def optimistic_exponent_r2(k: int, u_exp=UNIT_DISTANCE_R2) -> ExponentBound:
    """Upper exponent when the unit-distance count u(n) is modeled as n**u_exp."""
    _need_int(k, 3)
    u = Fraction(u_exp)
    if not (1 <= u <= UNIT_DISTANCE_R2):
        raise ValidationError(f"u_exp must lie in [1, 4/3], got {u}")
    r = k % 3
    if r == 0:
        e = 1 + u * Fraction(k, 3)
    elif r == 1:
        e = u * Fraction(k + 2, 3)
    else:
        e = 2 + u * Fraction(k - 2, 3)
    return ExponentBound(e, UPPER)


# -- R^3 ----------------------------------------------------------------------

def upper_exponent_r3(k: int) -> ExponentBound:
    _need_int(k, 0)
    if k == 0:
        return ExponentBound(Fraction(1), UPPER)
    if k == 1:
        return ExponentBound(UNIT_DISTANCE_R3, UPPER, has_epsilon=True)
    if k == 3:
        # two independent unit-distance pairs beat the generic residue-0 bound of 3
        return ExponentBound(min(Fraction(3), 2 * UNIT_DISTANCE_R3), UPPER, has_epsilon=True)
    r = k % 3
    base = Fraction(2 * k, 3)
    if r == 0:
        return ExponentBound(base + 1, UPPER)
    if r == 1:
        return ExponentBound(base + CIRCLE_INCIDENCE_R3_TAIL, UPPER, has_epsilon=True)
    return ExponentBound(base + Fraction(2, 3), UPPER)


def lower_exponent_r3(k: int) -> ExponentBound:
    _need_int(k, 0)
    if k == 0:
        return ExponentBound(Fraction(1), LOWER)
    if k == 1:
        return ExponentBound(UNIT_DISTANCE_R3_LOWER, LOWER, has_log_factor=True)
    if k % 2:
        return ExponentBound(Fraction(k + 1, 2), LOWER)
    return ExponentBound(Fraction(k, 2) + 1, LOWER)


# -- incidence bounds (constants fixed at 1) ----------------------------------

def _need_at_least(x: float, lo: float, name: str) -> float:
    if not x >= lo:
        raise ValidationError(f"{name} must be >= {lo}, got {x!r}")
    return float(x)


def incidence_bound_circles(m: float, n: float, eps: float = 0.0) -> float:
    """Point-circle incidences in the plane: m**(9/11+eps) n**(6/11) + (mn)**(2/3) + m + n."""
    m = _need_at_least(m, 1, "m")
    n = _need_at_least(n, 1, "n")
    eps = _need_at_least(eps, 0, "eps")
    return m ** (9 / 11 + eps) * n ** (6 / 11) + m ** (2 / 3) * n ** (2 / 3) + m + n


def incidence_bound_spheres(m: float, n: float) -> float:
    """Incidences between m points and n equal-radius spheres in R^3."""
    m = _need_at_least(m, 1, "m")
    n = _need_at_least(n, 1, "n")
    return m ** 0.75 * n ** 0.75 + m + n


def rich_points_bound_spheres(n: float, r: float) -> float:
    """Number of r-rich points for n equal-radius spheres: n^3/r^4 + n/r."""
    n = _need_at_least(n, 0, "n")
    r = _need_at_least(r, 2, "r")
    return n ** 3 / r ** 4 + n / r


def rich_points_bound_circles(n: float, r: float) -> float:
    """Number of r-rich points for n equal-radius circles: n^2/r^3 + n/r."""
    n = _need_at_least(n, 0, "n")
    r = _need_at_least(r, 2, "r")
    return n ** 2 / r ** 3 + n / r
