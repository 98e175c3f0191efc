"""Channels, dispersion relations, and the diagonal propagation kernel.

A channel is one component of a multi-component 1D field living on the
imaginary frequency axis.  Its dispersion fixes the evanescent decay rate
k(w) of free propagation; a massive channel has k(w) = sqrt(w^2 + m^2).
Everything downstream (reflection matrices, determinants, energies) is
built from the per-channel wavenumbers and the diagonal kernel exp(-k x).

Units: hbar = c = 1; masses and frequencies carry inverse length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

__all__ = ["Dispersion", "ChannelSet", "wavenumbers", "propagation_kernel"]


@dataclass(frozen=True)
class Dispersion:
    """Dispersion relation of a single 1D channel.

    Either ``massive`` with k(w) = sqrt(w^2 + m^2), or ``custom`` with
    user-supplied k(w) and dk/dw.  Custom dispersions must provide the
    derivative explicitly; it enters the coupling rescaling as the
    group-velocity factor and is never obtained by numerical
    differentiation.
    """

    mass: float | None = None
    k_func: Callable[[float], float] | None = None
    dk_domega_func: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.mass is not None:
            if self.k_func is not None or self.dk_domega_func is not None:
                raise ValueError("massive dispersion takes no custom callables")
            if self.mass < 0 or not math.isfinite(self.mass):
                raise ValueError(f"mass must be finite and >= 0, got {self.mass}")
        else:
            if self.k_func is None or self.dk_domega_func is None:
                raise ValueError("custom dispersion needs both k and dk_domega")

    @classmethod
    def massive(cls, mass: float) -> "Dispersion":
        return cls(mass=float(mass))

    @classmethod
    def custom(cls, k: Callable[[float], float],
               dk_domega: Callable[[float], float]) -> "Dispersion":
        return cls(mass=None, k_func=k, dk_domega_func=dk_domega)

    @property
    def is_massive(self) -> bool:
        return self.mass is not None

    def k(self, omega: float) -> float:
        """Wavenumber k(w) for w > 0."""
        if self.mass is not None:
            return math.hypot(omega, self.mass)
        return self.k_func(omega)

    def dk_domega(self, omega: float) -> float:
        """Group-velocity factor dk/dw; equals w/k for a massive channel."""
        if self.mass is not None:
            return omega / math.hypot(omega, self.mass)
        return self.dk_domega_func(omega)


@dataclass(frozen=True)
class ChannelSet:
    """Ordered collection of n >= 1 channel dispersions."""

    channels: tuple[Dispersion, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.channels) < 1:
            raise ValueError("a ChannelSet needs at least one channel")
        object.__setattr__(self, "channels", tuple(self.channels))

    @classmethod
    def from_masses(cls, masses: Sequence[float]) -> "ChannelSet":
        return cls(tuple(Dispersion.massive(m) for m in masses))

    @property
    def n(self) -> int:
        return len(self.channels)

    @property
    def masses(self) -> tuple[float, ...]:
        """Channel masses; raises if any channel has a custom dispersion."""
        if not all(c.is_massive for c in self.channels):
            raise ValueError("channel set contains non-massive dispersions")
        return tuple(c.mass for c in self.channels)


def _check_omega(omega: float) -> None:
    if not (omega > 0) or not math.isfinite(omega):
        raise ValueError(f"frequency must be finite and > 0, got {omega}")


def wavenumbers(cs: ChannelSet, omega: float) -> list[float]:
    """Per-channel wavenumbers k_i(w) at one imaginary frequency w > 0."""
    _check_omega(omega)
    return [c.k(omega) for c in cs.channels]


def propagation_kernel(cs: ChannelSet, omega: float, x: float) -> list[float]:
    """Diagonal of exp(-K x): per-channel decay factors exp(-k_i(w) x).

    All entries lie in (0, 1]; they equal 1 exactly when x = 0.  The 1/2K
    propagator normalization is not included here; it is absorbed into the
    coupling rescaling.
    """
    _check_omega(omega)
    if x < 0:
        raise ValueError(f"separation must be >= 0, got {x}")
    return [math.exp(-c.k(omega) * x) for c in cs.channels]
