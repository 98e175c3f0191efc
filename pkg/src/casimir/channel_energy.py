"""Frequency-integrated energies and forces for the multi-channel model.

The interaction energy of two rank-1 mirrors a distance x apart is

    E(x) = 1/(2 pi) * integral_0^inf ln det(w, x) dw,

with the two-body determinant from :mod:`casimir.scattering`; the force is
F = -dE/dx, computed from the analytic x-derivative of the log-determinant
rather than by differencing energies.  Since the determinant lies in
(0, 1], E is always <= 0: repulsion shows up only as non-monotonicity of
E(x), never as a positive energy.

Also here: the dilogarithm and the short-distance law  x * E(x) ->
-Li2(cos^2 theta)/(4 pi)  with cos^2 theta the squared normalized overlap
of the two coupling vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .dispersion import ChannelSet
from .errors import DegenerateCouplingError, QuadratureConvergenceError
from .quadrature import QuadratureSpec, integrate_semi_infinite
from .rootfind import bisect_relative, sign_change_brackets
from .scattering import Mirror, pair_determinant, pair_determinant_dx

__all__ = ["EnergyCurve", "CurveSample", "EquilibriumKind", "Equilibrium",
           "EquilibriumReport", "energy", "force", "energy_curve",
           "find_equilibria", "dilog", "short_distance_coefficient"]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CurveSample:
    """One sampled separation: energy, force, error estimates, status flag."""

    x: float
    energy: float
    force: float
    energy_err: float
    force_err: float
    flag: str = ""


@dataclass(frozen=True)
class EnergyCurve:
    """Energy/force samples over a strictly increasing separation grid."""

    samples: tuple[CurveSample, ...]

    def __post_init__(self):
        xs = [s.x for s in self.samples]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("curve grid must be strictly increasing")


class EquilibriumKind(Enum):
    STABLE_MINIMUM = "stable_minimum"
    UNSTABLE_MAXIMUM = "unstable_maximum"


@dataclass(frozen=True)
class Equilibrium:
    x: float
    kind: EquilibriumKind


@dataclass(frozen=True)
class EquilibriumReport:
    """Force zeros found in a scan range; kinds alternate along x."""

    zeros: tuple[Equilibrium, ...]
    scan_range: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.scan_range
        for z in self.zeros:
            if not (lo <= z.x <= hi):
                raise ValueError(f"zero at {z.x} outside scan range {self.scan_range}")
        kinds = [z.kind for z in self.zeros]
        if any(a == b for a, b in zip(kinds, kinds[1:])):
            raise ValueError("equilibrium kinds must alternate along x")


def energy(A: Mirror, B: Mirror, cs: ChannelSet, x: float,
           spec: QuadratureSpec = QuadratureSpec()) -> tuple[float, float]:
    """Interaction energy at separation x > 0 and its quadrature error."""
    if not x > 0:
        raise ValueError(f"separation must be > 0, got {x}")
    res = integrate_semi_infinite(
        lambda w: pair_determinant(A, B, cs, w, x).log_value, spec)
    return res.value / _TWO_PI, res.error_estimate / _TWO_PI


def force(A: Mirror, B: Mirror, cs: ChannelSet, x: float,
          spec: QuadratureSpec = QuadratureSpec()) -> tuple[float, float]:
    """Force -dE/dx at separation x; negative values mean attraction."""
    if not x > 0:
        raise ValueError(f"separation must be > 0, got {x}")
    res = integrate_semi_infinite(
        lambda w: pair_determinant_dx(A, B, cs, w, x), spec)
    return -res.value / _TWO_PI, res.error_estimate / _TWO_PI


def energy_curve(A: Mirror, B: Mirror, cs: ChannelSet,
                 grid: Sequence[float],
                 spec: QuadratureSpec = QuadratureSpec()) -> EnergyCurve:
    """Sample energy and force over a separation grid.

    A sample whose quadrature fails to converge is kept in the curve with
    NaN entries and a descriptive flag; the curve itself fails only if
    every sample does.
    """
    samples = []
    failures = 0
    for x in grid:
        try:
            e, e_err = energy(A, B, cs, x, spec)
            f, f_err = force(A, B, cs, x, spec)
            samples.append(CurveSample(x, e, f, e_err, f_err))
        except QuadratureConvergenceError as exc:
            failures += 1
            samples.append(CurveSample(x, math.nan, math.nan, math.nan,
                                       math.nan, f"no-convergence: {exc}"))
    if failures == len(samples):
        raise QuadratureConvergenceError(
            "every sample of the curve failed to converge")
    return EnergyCurve(tuple(samples))


def find_equilibria(A: Mirror, B: Mirror, cs: ChannelSet,
                    scan: tuple[float, float, int],
                    spec: QuadratureSpec = QuadratureSpec()) -> EquilibriumReport:
    """Locate and classify force zeros on a log-spaced probe grid.

    Sign changes of the force are refined by bisection to relative width
    1e-8.  Classification samples the energy at x* (1 +- 1e-3): a stable
    minimum has E(x*-d) > E(x*) < E(x*+d).
    """
    x_lo, x_hi, n_probe = scan
    if not (0 < x_lo < x_hi):
        raise ValueError(f"scan range must satisfy 0 < lo < hi, got {scan}")
    if n_probe < 8:
        raise ValueError(f"need at least 8 probe points, got {n_probe}")
    ratio = (x_hi / x_lo) ** (1.0 / (n_probe - 1))
    grid = [x_lo * ratio ** i for i in range(n_probe)]
    grid[-1] = x_hi

    def f(x: float) -> float:
        return force(A, B, cs, x, spec)[0]

    zeros = []
    for lo, hi, flo, _ in sign_change_brackets(f, grid):
        x_star = bisect_relative(f, lo, hi, flo)
        d = 1e-3 * x_star
        e_lo = energy(A, B, cs, x_star - d, spec)[0]
        e_mid = energy(A, B, cs, x_star, spec)[0]
        e_hi = energy(A, B, cs, x_star + d, spec)[0]
        if e_lo > e_mid < e_hi:
            kind = EquilibriumKind.STABLE_MINIMUM
        elif e_lo < e_mid > e_hi:
            kind = EquilibriumKind.UNSTABLE_MAXIMUM
        else:
            # Energy triplet flat to within quadrature noise; fall back to
            # the force signs of the refined bracket.
            kind = (EquilibriumKind.STABLE_MINIMUM if flo > 0
                    else EquilibriumKind.UNSTABLE_MAXIMUM)
        zeros.append(Equilibrium(x_star, kind))
    return EquilibriumReport(tuple(zeros), (x_lo, x_hi))


def dilog(z: float) -> float:
    """Real dilogarithm Li2(z) on [-1, 1], accurate to 1e-14 absolute.

    Direct series for |z| <= 1/2; the Euler reflection identity maps
    (1/2, 1] onto the series region, and a Landen transformation maps
    [-1, -1/2) onto it.
    """
    if not -1.0 <= z <= 1.0:
        raise ValueError(f"dilog argument must lie in [-1, 1], got {z}")
    if z == 1.0:
        return math.pi ** 2 / 6.0
    if z > 0.5:
        #  Li2(z) = pi^2/6 - ln(z) ln(1-z) - Li2(1-z)
        return (math.pi ** 2 / 6.0 - math.log(z) * math.log1p(-z)
                - _dilog_series(1.0 - z))
    if z < -0.5:
        #  Li2(z) = -Li2(z/(z-1)) - ln^2(1-z)/2,  z/(z-1) in [1/3, 1/2]
        return -_dilog_series(z / (z - 1.0)) - 0.5 * math.log1p(-z) ** 2
    return _dilog_series(z)


def _dilog_series(z: float) -> float:
    total = 0.0
    power = 1.0
    for k in range(1, 200):
        power *= z
        term = power / (k * k)
        total += term
        if abs(term) < 1e-17:
            break
    return total


def short_distance_coefficient(A: Mirror, B: Mirror) -> float:
    """Predicted small-x limit of x * E(x) for constant coupling vectors.

    Equals -Li2((a.b)^2 / (|a|^2 |b|^2)) / (4 pi); parallel couplings give
    -pi/24 (the single-channel perfect-mirror law) and orthogonal ones 0.
    """
    if callable(A.coupling) or callable(B.coupling):
        raise ValueError("short-distance law needs frequency-independent couplings")
    a, b = A.coupling, B.coupling
    if len(a) != len(b):
        raise ValueError("coupling vectors differ in length")
    na2 = math.fsum(v * v for v in a)
    nb2 = math.fsum(v * v for v in b)
    if na2 == 0.0 or nb2 == 0.0:
        raise DegenerateCouplingError("zero coupling vector")
    dot = math.fsum(u * v for u, v in zip(a, b))
    return -dilog(dot * dot / (na2 * nb2)) / (4.0 * math.pi)
