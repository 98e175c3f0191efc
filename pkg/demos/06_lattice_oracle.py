"""Brute-force check: zero-point mode sums against the determinant route.

The field is discretized on a fixed-end box; the Hamiltonian gets one
rank-1 site-block per mirror, and the interaction energy is the
difference of half-sums of mode frequencies between two separations.
Nothing from the scattering machinery enters, so agreement with the
frequency-integrated determinant energy validates the whole pipeline.

Runs a deliberately small box (a few seconds of dense eigensolving); the
acceptance suite does the full-resolution comparison.
"""

import time

from casimir import (ChannelSet, LatticeSpec, Mirror, energy,
                     interaction_energy)

cs = ChannelSet.from_masses([0.0])
A = Mirror(8.004, (1.0,), strength=50.0)
B = Mirror(0.0, (1.0,), strength=50.0)
spec = LatticeSpec(sites=2000, spacing=0.012)   # box length 24.012
x_ref = 1.8

print(f"box {spec.box_length:.3f}, {spec.sites} sites, spacing {spec.spacing}")
print(f"{'x':>5} {'lattice':>13} {'determinant':>13} {'rel diff':>9}")
for x in (0.6, 0.9, 1.2):
    start = time.perf_counter()
    lattice_value = interaction_energy(spec, cs, A, B, x, x_ref)
    det_value = energy(A, B, cs, x)[0] - energy(A, B, cs, x_ref)[0]
    rel = abs(lattice_value - det_value) / abs(det_value)
    print(f"{x:5.2f} {lattice_value:13.8f} {det_value:13.8f} {rel:9.5f}"
          f"   ({time.perf_counter() - start:.1f}s)")
print("\nthe same comparison at acceptance resolution is in "
      "tests/test_acceptance.py (criterion 9)")
