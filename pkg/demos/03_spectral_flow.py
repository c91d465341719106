#!/usr/bin/env python3
"""Spectra and spectral flow of the boundary-value operators Ju' + S u.

For boundary conditions moving along gamma_nor against the fixed vertical
subspace, the eigenvalues lie on the explicit branches pi*lambda - pi/2 + k pi
(multiplicity one) and pi/2 + k pi (multiplicity n-1).  Exactly one branch
crosses zero as lambda sweeps the interval, so the spectral flow is +1 and
matches the Maslov index.
"""

import numpy as np

from maslovflow import (
    BoundaryValueFamily,
    ConstantPath,
    eigen_detector,
    gamma_nor,
    l1_frame,
    maslov_pair,
    spectral_flow,
    spectral_flow_shifted,
    spectrum_window,
)

n = 2
g = gamma_nor(n)
L1 = ConstantPath(l1_frame(n))
fam = BoundaryValueFamily(g, L1)

print("detector at (lambda=0, mu=pi/2):", eigen_detector(fam, 0.0, np.pi / 2))
print("detector at (lambda=0, mu=0):  ", eigen_detector(fam, 0.0, 0.0))

print("\neigenvalues in (-pi + 0.1, pi - 0.1):")
for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
    w = spectrum_window(fam, lam, -np.pi + 0.1, np.pi - 0.1)
    desc = ", ".join(f"{mu:+.6f} (x{m})" for mu, m in w.eigenvalues)
    print(f"  lambda = {lam:4.2f}: {desc}")

result = spectral_flow(fam)
print("\nspectral flow:", result.value)
print("partition size:", len(result.partition), " thresholds used:",
      sorted(set(round(e, 3) for e in result.epsilons)))
print("Maslov index of the same pair:", maslov_pair(g, L1))

print("\nshift invariance (A + delta I):")
for delta in (0.1, 0.01, 0.001):
    print(f"  delta = {delta}: sfl = {spectral_flow_shifted(fam, delta)}")
