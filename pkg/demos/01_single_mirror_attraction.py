"""Two hard mirrors on a massless line: the classic attraction law.

A single massless channel with perfectly reflecting point mirrors has the
closed-form interaction energy E(x) = -pi/(24 x), so x * E(x) is constant
and the force F = -dE/dx = -pi/(24 x^2) is attractive at every
separation.  This script checks the quadrature pipeline against that law
and shows how a finite mirror strength weakens the bond.
"""

import math

from casimir import ChannelSet, Mirror, energy, force

cs = ChannelSet.from_masses([0.0])
A = Mirror(0.0, (1.0,))
B = Mirror(1.0, (1.0,))

print("hard mirrors, massless channel")
print(f"{'x':>6} {'E(x)':>15} {'x*E(x)':>15} {'F(x)':>15}")
for x in (0.25, 0.5, 1.0, 2.0, 4.0):
    E, _ = energy(A, B, cs, x)
    F, _ = force(A, B, cs, x)
    print(f"{x:6.2f} {E:15.9f} {x * E:15.9f} {F:15.9f}")
print(f"expected constant x*E = -pi/24 = {-math.pi / 24:.9f}")

print("\nsame pair at finite strength (softer mirrors bind less)")
for lam in (100.0, 10.0, 1.0):
    A_soft = Mirror(0.0, (1.0,), strength=lam)
    B_soft = Mirror(1.0, (1.0,), strength=lam)
    E, _ = energy(A_soft, B_soft, cs, 1.0)
    print(f"  strength {lam:6.1f}: E(1) = {E:12.9f}"
          f"  ({E / (-math.pi / 24):.3f} of the hard-mirror value)")
