"""From a circular waveguide to channel masses, and into an energy curve.

Confining the field to a cylinder of radius R quantizes the transverse
modes: each becomes a 1D channel of mass (Bessel root)/R, TM modes from
J_m roots and TE modes from the nontrivial roots of J_m'.  Modes with
m >= 1 carry angular degeneracy 2.  The finite channel list then feeds
the ordinary mirror-pair machinery; here a mirror couples uniformly to
the three lightest channels of a radius-1 cylinder.
"""

from casimir import (Mirror, WaveguideSpec, channel_modes, channelize,
                     energy, force)

spec = WaveguideSpec(radius=1.0, max_mass=6.0, polarization="both",
                     angular_orders=4)
print(f"cylinder radius {spec.radius}, channel masses up to {spec.max_mass}:")
for mode in channel_modes(spec):
    pol = "TM" if mode.kind == "J" else "TE"
    print(f"  mass {mode.mass:8.5f}  {pol} m={mode.m} k={mode.k} "
          f"degeneracy {mode.degeneracy}")

cs = channelize(spec)
print(f"\nchannel set size with degeneracy expanded: {cs.n}")

light = channelize(WaveguideSpec(radius=1.0, max_mass=3.9,
                                 polarization="both", angular_orders=2))
n = light.n
A = Mirror(0.0, (1.0,) * n)
B = Mirror(1.0, (1.0,) * n)
print(f"\nuniformly coupled mirrors on the {n} lightest channels:")
for x in (0.3, 0.6, 1.2, 2.4):
    E, _ = energy(A, B, light, x)
    F, _ = force(A, B, light, x)
    print(f"  x={x:4.1f}  E={E: .7f}  F={F: .7f}")
print("equal couplings keep every channel attractive, so no sign change")
