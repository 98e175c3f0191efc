"""Two-body Casimir energies for exactly reducible models.

Two families of scatterers make the frequency-integrated interaction
energy a scalar (or small-matrix) formula: rank-1 point mirrors coupled
to a multi-channel 1D field, and rank-1 separable (non-local) potentials.
The package computes energies, forces, and equilibria for both, provides
a Bessel-zero channelizer that maps a circular waveguide onto channel
masses, and cross-validates the determinant pipeline against a
brute-force lattice zero-point oracle.
"""

from .dispersion import ChannelSet, Dispersion, propagation_kernel, wavenumbers
from .errors import (CasimirError, ClusterOverlapError, ConfigError,
                     DegenerateCouplingError, EmptyChannelSetError,
                     IndefiniteMatrixError, IntegrandDomainError,
                     LatticeSpecError, QuadratureConvergenceError)
from .quadrature import IntegralResult, QuadratureSpec, integrate_semi_infinite
from .scattering import (ConstantScaledCoupling, DeterminantValue, Mirror,
                         ScaledCoupling, pair_determinant,
                         pair_determinant_dx, product_eigenvalues,
                         reflection_matrix, scale_coupling)
from .channel_energy import (CurveSample, EnergyCurve, Equilibrium,
                             EquilibriumKind, EquilibriumReport, dilog,
                             energy, energy_curve, find_equilibria, force,
                             short_distance_coefficient)
from .separable import (FormFactor, GreenKernel, default_prefactor,
                        explicit_matrix_check, gram, second_order_energy,
                        second_order_force, separable_energy,
                        separable_force, t_norm, unit_prefactor)
from .waveguide import (WaveguideMode, WaveguideSpec, bessel_zero,
                        channel_modes, channelize)
from .lattice import LatticeSpec, interaction_energy, zero_point_energy

__version__ = "0.1.0"

__all__ = [
    "CasimirError", "ChannelSet", "ClusterOverlapError", "ConfigError",
    "ConstantScaledCoupling", "CurveSample", "DegenerateCouplingError",
    "DeterminantValue", "Dispersion", "EmptyChannelSetError", "EnergyCurve",
    "Equilibrium", "EquilibriumKind", "EquilibriumReport", "FormFactor",
    "GreenKernel", "IndefiniteMatrixError", "IntegralResult",
    "IntegrandDomainError", "LatticeSpec", "LatticeSpecError", "Mirror",
    "QuadratureConvergenceError", "QuadratureSpec", "ScaledCoupling",
    "WaveguideMode", "WaveguideSpec", "bessel_zero", "channel_modes",
    "channelize", "default_prefactor", "dilog", "energy", "energy_curve",
    "explicit_matrix_check", "find_equilibria", "force", "gram",
    "integrate_semi_infinite", "interaction_energy", "pair_determinant",
    "pair_determinant_dx", "product_eigenvalues", "reflection_matrix",
    "scale_coupling", "second_order_energy", "second_order_force",
    "separable_energy", "separable_force", "short_distance_coefficient",
    "t_norm", "unit_prefactor", "wavenumbers", "zero_point_energy",
]
