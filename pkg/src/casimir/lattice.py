"""Brute-force zero-point oracle on a discretized multi-channel line.

Completely independent of the determinant pipeline: the field lives on N
interior sites of a fixed-end box, the Hamiltonian is the block 3-point
Laplacian plus channel mass terms plus one rank-1 block (lambda/h) a a^T
per mirror at its nearest site, and the zero-point energy is half the sum
of square-rooted eigenvalues from a dense symmetric eigensolve.  Interaction
energies are differences of two such sums at different separations with an
identical box, spacing, and strength, so every cutoff-dependent self-energy
cancels.

Correctness over speed: the only accuracy instruments are the placement
preconditions and the h-halving stability of the answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dispersion import ChannelSet
from .errors import IndefiniteMatrixError, LatticeSpecError
from .scattering import Mirror

__all__ = ["LatticeSpec", "zero_point_energy", "interaction_energy",
           "check_resolution"]

# Oracle-role cap on the dense eigenproblem dimension (channels * sites).
_MAX_DENSE_DIM = 20_000

# Mirrors must keep this many sites between themselves and either wall.
_WALL_MARGIN_SITES = 20


@dataclass(frozen=True)
class LatticeSpec:
    """Interior site count and spacing of the fixed-end box.

    The box length is (N + 1) h; interior site j (0-based) sits at
    (j + 1) h and the field vanishes on both walls.
    """

    sites: int
    spacing: float

    def __post_init__(self):
        if self.sites < 100:
            raise LatticeSpecError(f"need at least 100 sites, got {self.sites}")
        if not self.spacing > 0:
            raise LatticeSpecError(f"spacing must be > 0, got {self.spacing}")

    @property
    def box_length(self) -> float:
        return (self.sites + 1) * self.spacing

    def nearest_site(self, position: float) -> int:
        j = round(position / self.spacing) - 1
        if not 0 <= j < self.sites:
            raise LatticeSpecError(
                f"position {position} outside the box (length {self.box_length})")
        return j


def _channel_masses(cs: ChannelSet) -> list[float]:
    if not all(c.is_massive for c in cs.channels):
        raise LatticeSpecError(
            "the lattice oracle supports massive dispersions only")
    return [c.mass for c in cs.channels]


def _check_mirror(m: Mirror, cs: ChannelSet) -> tuple[float, ...]:
    if math.isinf(m.strength):
        raise LatticeSpecError(
            "the lattice oracle needs finite mirror strength (the hard "
            "limit converges too slowly on a lattice)")
    if callable(m.coupling):
        raise LatticeSpecError(
            "the lattice oracle needs frequency-independent couplings")
    if len(m.coupling) != cs.n:
        raise LatticeSpecError("coupling length does not match channel count")
    return m.coupling


def zero_point_energy(spec: LatticeSpec, cs: ChannelSet,
                      mirrors: Sequence[Mirror]) -> float:
    """Half the sum of mode frequencies of the discretized Hamiltonian.

    The value is cutoff-dominated and only differences at fixed spec are
    physical.  Raises if the spectrum comes out negative, which would
    signal an invalid discretization.
    """
    masses = _channel_masses(cs)
    n = cs.n
    N = spec.sites
    if n * N > _MAX_DENSE_DIM:
        raise LatticeSpecError(
            f"dense problem size {n * N} exceeds the cap {_MAX_DENSE_DIM}")
    h = spec.spacing
    margin = _WALL_MARGIN_SITES

    H = np.zeros((n * N, n * N))
    off = -1.0 / (h * h)
    for i, mass in enumerate(masses):
        sl = slice(i * N, (i + 1) * N)
        block = H[sl, sl]
        idx = np.arange(N)
        block[idx, idx] = 2.0 / (h * h) + mass * mass
        block[idx[:-1], idx[:-1] + 1] = off
        block[idx[:-1] + 1, idx[:-1]] = off

    for mirror in mirrors:
        coupling = _check_mirror(mirror, cs)
        j = spec.nearest_site(mirror.position)
        if j + 1 < margin or N - j < margin:
            raise LatticeSpecError(
                f"mirror at {mirror.position} is within {margin} sites of a "
                "wall")
        weight = mirror.strength / h
        for i1 in range(n):
            for i2 in range(n):
                H[i1 * N + j, i2 * N + j] += weight * coupling[i1] * coupling[i2]

    eigs = np.linalg.eigvalsh(H)
    floor = -1e-9 * (4.0 / (h * h))
    if eigs[0] < floor:
        raise IndefiniteMatrixError(
            f"negative lattice eigenvalue {eigs[0]!r}")
    return 0.5 * float(np.sum(np.sqrt(np.clip(eigs, 0.0, None))))


def check_resolution(spec: LatticeSpec, cs: ChannelSet, x: float) -> None:
    """Box-size and spacing invariants for a measurement separation x."""
    masses = _channel_masses(cs)
    if spec.box_length < 10.0 * x:
        raise LatticeSpecError(
            f"box {spec.box_length} shorter than 10 times the separation {x}")
    scale = min([x] + [1.0 / m for m in masses if m > 0])
    if spec.spacing > 0.02 * scale * (1.0 + 1e-12):
        raise LatticeSpecError(
            f"spacing {spec.spacing} exceeds 0.02 of the smallest length "
            f"scale {scale}")


def interaction_energy(spec: LatticeSpec, cs: ChannelSet, A: Mirror,
                       B: Mirror, x: float, x_ref: float) -> float:
    """Zero-point energy difference between separations x and x_ref.

    Mirror A stays at its own position; B is placed at A.position + x and
    at A.position + x_ref with identical box, spacing, and strengths, so
    the cutoff-dependent self-energies cancel in the difference.  Use the
    same x_ref when comparing against continuum energies (the reference
    interaction is subtracted, not assumed zero).
    """
    if not 0 < x <= x_ref:
        raise LatticeSpecError(f"need 0 < x <= x_ref, got x={x}, x_ref={x_ref}")
    if x == x_ref:
        return 0.0
    check_resolution(spec, cs, x)
    at_x = zero_point_energy(spec, cs, [A, _place(B, A.position + x)])
    at_ref = zero_point_energy(spec, cs, [A, _place(B, A.position + x_ref)])
    return at_x - at_ref


def _place(m: Mirror, position: float) -> Mirror:
    return Mirror(position, m.coupling, m.strength)
