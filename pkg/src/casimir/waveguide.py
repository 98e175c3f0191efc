"""Circular-waveguide mode reduction to a finite set of 1D channel masses.

A scalar field confined to an infinite cylinder of radius R separates into
angular orders m; each transverse mode behaves as a 1D channel whose mass
is a Bessel root scaled by 1/R:  J_m roots for TM-type (Dirichlet wall)
modes and nontrivial J_m' roots for TE-type (Neumann wall) modes.  Modes
with m >= 1 are doubly degenerate and contribute two identical channels.

Bessel functions are evaluated in-module: an ascending power series for
small argument and Miller's backward recurrence with even-order
normalization for moderate argument.  Roots come from a forward bracket
scan (consecutive roots are at least about pi apart), bisection, and a
Newton polish; every emitted root is certified by its residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dispersion import ChannelSet, Dispersion
from .errors import EmptyChannelSetError

__all__ = ["WaveguideSpec", "WaveguideMode", "bessel_zero", "channelize",
           "channel_modes"]

# Crossover between the ascending series and backward recurrence.  Below
# this argument the alternating series loses at most ~4 digits to
# cancellation, keeping absolute errors near roots well under the 1e-11
# residual certificate.
_SERIES_MAX_X = 9.0


def _bessel_j_series(m: int, x: float) -> float:
    half = 0.5 * x
    term = half ** m / math.factorial(m)
    total = term
    for j in range(1, 80):
        term *= -half * half / (j * (m + j))
        total += term
        if abs(term) <= 1e-18 * abs(total) + 1e-300:
            break
    return total


def _bessel_j_upto(n_max: int, x: float) -> list[float]:
    """J_0(x) .. J_n_max(x) by Miller's backward recurrence (x > 0)."""
    # Start high enough that the downward recurrence has converged onto
    # the minimal solution by order n_max.
    start = int(n_max + 12 + max(x + 12.0 * x ** (1.0 / 3.0), 20.0))
    if start % 2:
        start += 1
    jp = 0.0
    jc = 1e-300
    out = [0.0] * (start + 1)
    out[start] = jc
    for n in range(start, 0, -1):
        jm = (2.0 * n / x) * jc - jp
        jp, jc = jc, jm
        out[n - 1] = jc
        if abs(jc) > 1e250:
            jp *= 1e-250
            jc *= 1e-250
            for i in range(n - 1, start + 1):
                out[i] *= 1e-250
    norm = out[0] + 2.0 * math.fsum(out[n] for n in range(2, start + 1, 2))
    return [v / norm for v in out[: n_max + 1]]


def _j_and_neighbors(m: int, x: float) -> tuple[float, float, float]:
    """(J_{m-1}, J_m, J_{m+1}); J_{-1} = -J_1."""
    if x <= _SERIES_MAX_X:
        jm = _bessel_j_series(m, x)
        jl = _bessel_j_series(m - 1, x) if m >= 1 else -_bessel_j_series(1, x)
        jr = _bessel_j_series(m + 1, x)
        return jl, jm, jr
    js = _bessel_j_upto(m + 1, x)
    jl = js[m - 1] if m >= 1 else -js[1]
    return jl, js[m], js[m + 1]


def _jm(m: int, x: float) -> float:
    return _j_and_neighbors(m, x)[1]


def _jm_prime(m: int, x: float) -> float:
    jl, _, jr = _j_and_neighbors(m, x)
    return 0.5 * (jl - jr)


def bessel_zero(m: int, k: int, kind: str = "J") -> float:
    """k-th positive root of J_m (kind="J") or J_m' (kind="J_prime").

    For J_m' the trivial root at the origin is not counted, so k = 1
    names the first genuinely positive stationary point.  Roots are
    accurate to about 1e-12 absolute, with |J_m| (or |J_m'|) residuals
    below 1e-11.
    """
    if m < 0 or k < 1:
        raise ValueError(f"invalid root indices m={m}, k={k}")
    if kind == "J":
        f = lambda x: _jm(m, x)
    elif kind == "J_prime":
        f = lambda x: _jm_prime(m, x)
    else:
        raise ValueError(f"kind must be 'J' or 'J_prime', got {kind!r}")

    # March from just right of the origin (roots of either function exceed
    # m); consecutive roots are separated by at least about pi, so a step
    # of 0.2 cannot jump across a sign change.
    x = max(0.9 * m, 1e-3)
    fx = f(x)
    found = 0
    step = 0.2
    for _ in range(200000):
        x2 = x + step
        fx2 = f(x2)
        if fx * fx2 < 0.0:
            found += 1
            if found == k:
                return _polish_root(m, kind, f, x, x2, fx)
        x, fx = x2, fx2
    raise ArithmeticError(f"root scan failed for m={m}, k={k}, kind={kind}")


def _polish_root(m: int, kind: str, f, lo: float, hi: float,
                 f_lo: float) -> float:
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-13 * mid:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(3):
        jl, jm, jr = _j_and_neighbors(m, x)
        jp = 0.5 * (jl - jr)
        if kind == "J":
            dx = jm / jp
        else:
            # J'' from the Bessel equation.
            jpp = -jp / x - (1.0 - m * m / (x * x)) * jm
            dx = jp / jpp
        x -= dx
        if abs(dx) < 1e-14 * x:
            break
    return x


@dataclass(frozen=True)
class WaveguideSpec:
    """Cylinder radius, channel-mass cutoff, polarization, angular orders."""

    radius: float
    max_mass: float
    polarization: str = "both"
    angular_orders: int = 8

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be > 0, got {self.radius}")
        if not self.max_mass > 0:
            raise ValueError(f"max_mass must be > 0, got {self.max_mass}")
        if self.polarization not in ("TM", "TE", "both"):
            raise ValueError(f"polarization must be TM, TE or both, "
                             f"got {self.polarization!r}")
        if self.angular_orders < 0:
            raise ValueError("angular_orders must be >= 0")


@dataclass(frozen=True)
class WaveguideMode:
    mass: float
    m: int
    k: int
    kind: str          # "J" for TM, "J_prime" for TE
    degeneracy: int


def channel_modes(spec: WaveguideSpec) -> list[WaveguideMode]:
    """All transverse modes with mass = root/R below the cutoff."""
    kinds = {"TM": ("J",), "TE": ("J_prime",),
             "both": ("J", "J_prime")}[spec.polarization]
    modes = []
    for kind in kinds:
        for m in range(spec.angular_orders + 1):
            k = 1
            first = bessel_zero(m, 1, kind) / spec.radius
            if first > spec.max_mass:
                # First roots grow with the angular order, so no higher m
                # contributes -- except that the nontrivial first root of
                # J_0' exceeds the one of J_1', so m = 0 must not end the
                # scan for the TE family.
                if kind == "J_prime" and m == 0:
                    continue
                break
            mass = first
            while mass <= spec.max_mass:
                modes.append(WaveguideMode(mass, m, k, kind,
                                           2 if m >= 1 else 1))
                k += 1
                mass = bessel_zero(m, k, kind) / spec.radius
    modes.sort(key=lambda md: md.mass)
    return modes


def channelize(spec: WaveguideSpec) -> ChannelSet:
    """ChannelSet of 1D masses for the waveguide, degeneracy expanded.

    Modes with m >= 1 appear twice in the mass list, since downstream
    rank-1 mirrors couple to explicit channel entries.
    """
    masses = []
    for mode in channel_modes(spec):
        masses.extend([mode.mass] * mode.degeneracy)
    if not masses:
        raise EmptyChannelSetError(
            f"no waveguide mode below max_mass={spec.max_mass} "
            f"for radius={spec.radius}")
    masses.sort()
    return ChannelSet(tuple(Dispersion.massive(m) for m in masses))
