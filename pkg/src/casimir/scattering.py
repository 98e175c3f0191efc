"""Pointwise-in-frequency scattering algebra for rank-1 point mirrors.

A mirror constrains one linear combination of the channels through the
potential  lambda * (alpha x alpha^T) delta(x - x0).  On the imaginary
frequency axis its reflection matrix is rank 1 and negative semidefinite,

    r(iw) = - (at x at^T) / (|at|^2 + 2 w / lambda),

where ``at`` is the coupling rescaled by the group-velocity factor,
at_i = sqrt(dk_i/dw) * alpha_i  (equal to sqrt(w/k_i) * alpha_i for
massive channels).  The two-body mode determinant then collapses to the
scalar closed form

    det = 1 - s^2 / (D_A * D_B),      s = sum_i at_i bt_i exp(-k_i x),

with D = |at|^2 + 2 w / lambda per mirror.  This module evaluates that
closed form, its logarithm, and its exact x-derivative.

Numerically the determinant is assembled from unit-normalized couplings:
with ah = at/|at| and the strength fractions q = |at|^2 / D in (0, 1],

    det = (1 - sh^2) + sh^2 * (1 - q_A q_B),    sh = <ah| e^{-Kx} |bh>,

where 1 - sh^2 is expanded by a Lagrange-type identity in terms of
-expm1(-(k_i + k_j) x).  Every intermediate is an O(1) ratio, so the
evaluation survives both w -> 0 (where all scaled couplings vanish like
sqrt(w) on massive channels) and large separations (det -> 1).

The hard-mirror limit lambda = inf is first class: the 2w/lambda term is
dropped exactly rather than approximated by a large number.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .dispersion import ChannelSet, _check_omega
from .errors import DegenerateCouplingError

__all__ = ["Mirror", "ScaledCoupling", "DeterminantValue",
           "ConstantScaledCoupling", "scale_coupling", "reflection_matrix",
           "pair_determinant", "pair_determinant_dx", "product_eigenvalues"]

logger = logging.getLogger(__name__)

CouplingSpec = Sequence[float] | Callable[[float], Sequence[float]]

# Eigenvalues of the round-trip product may stick out of [0, 1] by rounding
# noise only; anything beyond this margin is a genuine bug.
_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class Mirror:
    """One rank-1 point mirror: position, coupling vector, strength.

    ``coupling`` is either a plain vector or a callable of frequency (the
    latter covers frequency-tuned models where the rescaled coupling is
    held constant).  ``strength`` is lambda in (0, inf]; math.inf selects
    the Dirichlet-type hard limit.
    """

    position: float
    coupling: CouplingSpec
    strength: float = math.inf

    def __post_init__(self):
        if not self.strength > 0:
            raise ValueError(f"strength must be > 0 or inf, got {self.strength}")
        if not callable(self.coupling):
            vec = tuple(float(c) for c in self.coupling)
            if not any(v != 0.0 for v in vec):
                raise ValueError("coupling vector must not be identically zero")
            object.__setattr__(self, "coupling", vec)

    def coupling_at(self, omega: float) -> tuple[float, ...]:
        if callable(self.coupling):
            return tuple(float(c) for c in self.coupling(omega))
        return self.coupling


@dataclass(frozen=True)
class ScaledCoupling:
    """Group-velocity-rescaled coupling vector and its squared norm."""

    components: tuple[float, ...]
    norm2: float


@dataclass(frozen=True)
class ConstantScaledCoupling:
    """Coupling function that undoes the group-velocity rescaling.

    Supplies alpha_i(w) = values_i / sqrt(dk_i/dw) for the given channel
    set, so the rescaled coupling is the constant vector ``values`` at
    every frequency.  This is the frequency-tuned construction in which
    the usual short-distance behavior can be engineered away.  Being a
    plain dataclass (not a closure) it survives pickling into worker
    processes.
    """

    values: tuple[float, ...]
    channels: "ChannelSet"

    def __call__(self, omega: float) -> tuple[float, ...]:
        return tuple(v / math.sqrt(c.dk_domega(omega))
                     for v, c in zip(self.values, self.channels.channels))


@dataclass(frozen=True)
class DeterminantValue:
    """Two-body determinant at one (w, x): value in (0, 1] and its log."""

    value: float
    log_value: float


def scale_coupling(m: Mirror, cs: ChannelSet, omega: float) -> ScaledCoupling:
    """Rescale a mirror's coupling by sqrt(dk_i/dw) per channel."""
    _check_omega(omega)
    raw = m.coupling_at(omega)
    if len(raw) != cs.n:
        raise ValueError(
            f"coupling has {len(raw)} components for {cs.n} channels")
    comps = tuple(math.sqrt(c.dk_domega(omega)) * v
                  for c, v in zip(cs.channels, raw))
    return ScaledCoupling(comps, math.fsum(v * v for v in comps))


def _finite_strength_term(m: Mirror, omega: float) -> float:
    """The 2w/lambda addition to the reflection denominator (0 if hard)."""
    return 0.0 if math.isinf(m.strength) else 2.0 * omega / m.strength


def reflection_matrix(m: Mirror, cs: ChannelSet, omega: float) -> np.ndarray:
    """Rank-1 negative-semidefinite reflection matrix of one mirror.

    The single nonzero eigenvalue is -|at|^2 / (|at|^2 + 2w/lambda), which
    lies in (-1, 0) for finite strength and reaches -1 in the hard limit.
    """
    sc = scale_coupling(m, cs, omega)
    d = sc.norm2 + _finite_strength_term(m, omega)
    if d == 0.0:
        raise DegenerateCouplingError(
            f"scaled coupling vanished at omega={omega} with hard strength; "
            "reflection denominator is zero")
    at = np.asarray(sc.components)
    return -np.outer(at, at) / d


def _unit_and_fraction(m: Mirror, scaled: list[float],
                       omega: float) -> tuple[list[float], float]:
    """Unit-normalized scaled coupling and the fraction q = |at|^2 / D.

    A vanishing scaled coupling is degenerate in the hard limit (zero
    denominator); with finite strength it simply decouples the mirror,
    signalled by q = 0 and a zero unit vector.
    """
    norm2 = math.fsum(v * v for v in scaled)
    c = _finite_strength_term(m, omega)
    if norm2 == 0.0:
        if c == 0.0:
            raise DegenerateCouplingError(
                f"scaled coupling vanished at omega={omega} with hard "
                "strength; reflection denominator is zero")
        return [0.0] * len(scaled), 0.0
    norm = math.sqrt(norm2)
    return [v / norm for v in scaled], norm2 / (norm2 + c)


class _PairState:
    """Unit couplings, wavenumbers, and strength fractions at one frequency."""

    __slots__ = ("ks", "ahat", "bhat", "qa", "qb", "n")

    def __init__(self, A: Mirror, B: Mirror, cs: ChannelSet, omega: float):
        _check_omega(omega)
        gv = [math.sqrt(c.dk_domega(omega)) for c in cs.channels]
        raw_a = A.coupling_at(omega)
        raw_b = B.coupling_at(omega)
        if len(raw_a) != cs.n or len(raw_b) != cs.n:
            raise ValueError("coupling length does not match channel count")
        self.n = cs.n
        self.ks = [c.k(omega) for c in cs.channels]
        self.ahat, self.qa = _unit_and_fraction(
            A, [g * v for g, v in zip(gv, raw_a)], omega)
        self.bhat, self.qb = _unit_and_fraction(
            B, [g * v for g, v in zip(gv, raw_b)], omega)


def _unit_overlap(st: _PairState, x: float) -> float:
    """sh = <ah| exp(-K x) |bh>, in [-1, 1]."""
    return math.fsum(ai * bi * math.exp(-k * x)
                     for ai, bi, k in zip(st.ahat, st.bhat, st.ks))


def _one_minus_sh2(st: _PairState, x: float) -> float:
    """1 - sh^2 without cancellation when all decay factors are near 1.

    Lagrange-type split on the unit vectors:
        1 - sh^2 = sum_{i<j} (ah_i bh_j - ah_j bh_i)^2
                   + sum_{ij} ah_i ah_j bh_i bh_j (1 - p_i p_j),
    with 1 - p_i p_j = -expm1(-(k_i + k_j) x).
    """
    a, b, ks, n = st.ahat, st.bhat, st.ks, st.n
    cross = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = a[i] * b[j] - a[j] * b[i]
            cross += d * d
    decay = 0.0
    for i in range(n):
        abi = a[i] * b[i]
        if abi == 0.0:
            continue
        for j in range(n):
            decay += abi * a[j] * b[j] * (-math.expm1(-(ks[i] + ks[j]) * x))
    return cross + decay


def pair_determinant(A: Mirror, B: Mirror, cs: ChannelSet, omega: float,
                     x: float) -> DeterminantValue:
    """Two-body determinant 1 - s^2/(D_A D_B) at one (w, x), with log.

    Equals det(1 - r_A e^{-Kx} r_B e^{-Kx}) of the dense n x n matrices;
    lies in (0, 1] for x > 0, reaching 1 only when the couplings decouple.
    """
    if not x > 0:
        raise ValueError(f"separation must be > 0, got {x}")
    st = _PairState(A, B, cs, omega)
    qq = st.qa * st.qb
    if qq == 0.0:
        return DeterminantValue(1.0, 0.0)
    sh = _unit_overlap(st, x)
    one_minus_q = (1.0 - st.qa) + (1.0 - st.qb) - (1.0 - st.qa) * (1.0 - st.qb)
    value = _one_minus_sh2(st, x) + sh * sh * one_minus_q
    if not value > 0.0:
        raise ArithmeticError(
            f"determinant lost positivity ({value!r}) at omega={omega}, x={x}")
    if value >= 0.5:
        log_value = math.log1p(-sh * sh * qq)
    else:
        log_value = math.log(value)
    if value > 1.0:
        value, log_value = 1.0, 0.0
    return DeterminantValue(value, min(log_value, 0.0))


def pair_determinant_dx(A: Mirror, B: Mirror, cs: ChannelSet, omega: float,
                        x: float) -> float:
    """d/dx of ln(pair_determinant), from the analytic derivative of s.

    With s' = -sum_i k_i at_i bt_i p_i this is -2 s s' / (D_A D_B - s^2);
    positive values mean the determinant grows with separation.
    """
    if not x > 0:
        raise ValueError(f"separation must be > 0, got {x}")
    st = _PairState(A, B, cs, omega)
    qq = st.qa * st.qb
    if qq == 0.0:
        return 0.0
    sh = _unit_overlap(st, x)
    one_minus_q = (1.0 - st.qa) + (1.0 - st.qb) - (1.0 - st.qa) * (1.0 - st.qb)
    value = _one_minus_sh2(st, x) + sh * sh * one_minus_q
    if not value > 0.0:
        raise ArithmeticError(
            f"determinant lost positivity ({value!r}) at omega={omega}, x={x}")
    sh_rate = math.fsum(k * ai * bi * math.exp(-k * x)
                        for ai, bi, k in zip(st.ahat, st.bhat, st.ks))
    return 2.0 * sh * sh_rate * qq / value


def product_eigenvalues(A: Mirror, B: Mirror, cs: ChannelSet,
                        omega: float) -> list[float]:
    """Eigenvalues of the x-independent reflection product r_A r_B.

    The product is similar to the positive-semidefinite matrix
    sqrt(-r_A) (-r_B) sqrt(-r_A), so all eigenvalues are real and lie in
    [0, 1); for rank-1 mirrors at most one is nonzero.  Values within
    1e-12 of 0 or 1 are clamped onto the boundary (and logged), keeping
    downstream logarithms finite in the idealized hard-mirror limit.
    """
    st = _PairState(A, B, cs, omega)
    if st.qa == 0.0 or st.qb == 0.0:
        return [0.0] * st.n
    ah = np.asarray(st.ahat)
    bh = np.asarray(st.bhat)
    # sqrt(-r_A) = sqrt(q_A) * (ah ah^T), -r_B = q_B * (bh bh^T)
    half_a = math.sqrt(st.qa) * np.outer(ah, ah)
    mid = st.qb * np.outer(bh, bh)
    sym = half_a @ mid @ half_a
    vals = np.linalg.eigvalsh(sym)
    out = []
    for v in sorted(vals, reverse=True):
        if -_CLAMP_TOL <= v < 0.0:
            logger.debug("clamped product eigenvalue %r to 0", v)
            v = 0.0
        elif 1.0 < v <= 1.0 + _CLAMP_TOL:
            logger.debug("clamped product eigenvalue %r to 1", v)
            v = 1.0
        elif v < 0.0 or v > 1.0:
            raise ArithmeticError(
                f"product eigenvalue {v!r} outside [0, 1] beyond rounding")
        out.append(float(v))
    return out
