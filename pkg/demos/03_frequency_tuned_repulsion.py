"""Frequency-tuned couplings keep the repulsion alive down to contact.

The short-distance attraction of the two-channel model comes from the
coupling overlap surviving as all wavenumbers degenerate at high
frequency.  Choosing couplings that undo the group-velocity rescaling
(so the rescaled vectors are constant) and making them orthogonal,
alpha_scaled = (1, 1) against beta_scaled = (1, -1) with masses (0, 1),
removes that leading term: the force stays repulsive all the way to
x -> 0 and the pair has a genuine stable resting separation.

Any perturbation of this tuning restores the usual short-distance
attraction, which the last section demonstrates.
"""

from casimir import (ChannelSet, ConstantScaledCoupling, Mirror, energy,
                     find_equilibria, force)

cs = ChannelSet.from_masses([0.0, 1.0])
A = Mirror(0.0, ConstantScaledCoupling((1.0, 1.0), cs))
B = Mirror(1.0, ConstantScaledCoupling((1.0, -1.0), cs))

print("tuned pair: constant rescaled couplings (1,1) vs (1,-1)")
print(f"{'x':>6} {'E(x)':>14} {'F(x)':>14}")
for x in (0.05, 0.2, 0.5, 1.0, 2.0, 4.0):
    E, _ = energy(A, B, cs, x)
    F, _ = force(A, B, cs, x)
    tag = "repulsive" if F > 0 else "attractive"
    print(f"{x:6.2f} {E:14.8f} {F:14.8f}  {tag}")

report = find_equilibria(A, B, cs, (0.02, 8.0, 40))
z = report.zeros[0]
print(f"\nstable resting separation at x = {z.x:.6f} ({z.kind.value})")

# detune: plain constant couplings of the same values bring the
# short-distance attraction back
A2 = Mirror(0.0, (1.0, 1.0))
B2 = Mirror(1.0, (1.0, -1.0))
F_small, _ = force(A2, B2, cs, 0.05)
print(f"\nsame coupling values without the tuning: F(0.05) = {F_small:.6f} "
      f"({'attractive' if F_small < 0 else 'repulsive'} at short distance)")
