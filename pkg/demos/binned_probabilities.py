"""Walk through the measurement model: a coherent beam enters one port of a
balanced interferometer, the output quadrature is measured by homodyne
detection, and the continuous readout is sorted into narrow bins centered at
multiples of the spacing b.  Everything downstream (signals, sensitivities,
simulation) is built on the conditional outcome probabilities printed here.

Run: python3 demos/binned_probabilities.py
"""

import math

from mzhomodyne import (
    BinningScheme,
    InterferometerConfig,
    default_cutoff,
    outcome_distribution,
    quadrature_pdf,
)

cfg = InterferometerConfig.from_nbar(200.0)
print(f"mean photon number {cfg.nbar:g}, coherent amplitude {cfg.alpha0:.4f}")

# the quadrature mean swings as -(alpha0/2) sin(phi); the bins have to cover
# that swing, which is what the default cutoff works out
a, b = 0.5, 3.8
kf = default_cutoff(cfg, a, b)
scheme = BinningScheme(half_width=a, spacing=b, cutoff=kf)
print(f"bins of half width {a} at spacing {b}: indices -{kf}..{kf} "
      f"plus a leftover outcome ({scheme.n_outcomes} outcomes total)")

print("\nconditional probabilities across the fringe:")
header = "phi".rjust(8) + "".join(f"P({k})".rjust(11) for k in scheme.bin_indices())
print(header + "P(left)".rjust(11) + "sum".rjust(9))
for phi in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0, math.pi / 2):
    dist = outcome_distribution(cfg, scheme, phi)
    cells = "".join(f"{p:11.3e}" for p in dist.bin_probs)
    total = math.fsum(dist.all_probs())
    print(f"{phi:8.3f}{cells}{dist.leftover_prob:11.3e}{total:9.5f}")

# each bin probability is the continuous pdf integrated over the bin window;
# check bin 1 at phi = -0.3 against a crude Riemann sum
phi = -0.3
dist = outcome_distribution(cfg, scheme, phi)
step = 2 * a / 4000
riemann = sum(
    quadrature_pdf(cfg, phi, b + (i + 0.5) * step - a) * step for i in range(4000)
)
print(f"\nbin 1 at phi={phi}: closed form {dist.bin_probs[kf + 1]:.8f}, "
      f"Riemann sum over the window {riemann:.8f}")

# mirror symmetry about phi = pi/2: the quadrature mean depends on sin(phi)
left = outcome_distribution(cfg, scheme, 0.7)
right = outcome_distribution(cfg, scheme, math.pi - 0.7)
print(f"mirror check P(-1|0.7) = {left.bin_probs[kf - 1]:.12f} equals "
      f"P(-1|pi-0.7) = {right.bin_probs[kf - 1]:.12f}")
