"""Interference between channels of different mass can reverse the force.

Two channels with masses 1 and 5 and sign-mixed couplings alpha = (1, 5),
beta = (1, -5): each channel alone would attract, but the cross term
between them depends on separation and carves a repulsive window into the
energy curve.  The result is an unstable energy maximum followed by a
stable minimum where the mirrors can levitate.

At both extremes the force must attract: at large x only the lightest
channel survives (a single-mass system obeys the attraction theorem), and
at small x all wavenumbers degenerate so that the channels again behave
like one.  The short-distance law x * E -> -Li2(cos^2 theta)/(4 pi)
quantifies the approach, with cos^2 theta the squared normalized coupling
overlap.
"""

import csv
import math

from casimir import (ChannelSet, Mirror, energy, energy_curve,
                     find_equilibria, short_distance_coefficient)

cs = ChannelSet.from_masses([1.0, 5.0])
A = Mirror(0.0, (1.0, 5.0))
B = Mirror(1.0, (1.0, -5.0))

grid = [0.02 * (5.0 / 0.02) ** (i / 59) for i in range(60)]
curve = energy_curve(A, B, cs, grid)

with open("mode_interference_curve.csv", "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["x", "energy", "force"])
    for s in curve.samples:
        writer.writerow([f"{s.x:.10e}", f"{s.energy:.10e}", f"{s.force:.10e}"])
print("curve written to mode_interference_curve.csv")

report = find_equilibria(A, B, cs, (0.02, 5.0, 40))
for z in report.zeros:
    print(f"force zero at x = {z.x:.6f}  ({z.kind.value})")

coeff = short_distance_coefficient(A, B)
print(f"\nshort-distance coefficient -Li2(cos^2)/4pi = {coeff:.6f}")
for x in (1e-2, 1e-3):
    E, _ = energy(A, B, cs, x)
    print(f"  x = {x:g}: x*E = {x * E:.6f}  "
          f"(ratio {x * E / coeff:.4f} of the limit)")

signs = [s.force < 0 for s in curve.samples]
print(f"\nattractive at both grid ends: {signs[0] and signs[-1]}, "
      f"repulsive points in between: {sum(1 for s in signs if not s)}")
