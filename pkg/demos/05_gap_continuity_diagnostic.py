#!/usr/bin/env python3
"""Gap continuity of the operator family, discretized.

The family of boundary-value operators varies continuously in the gap metric,
with the distance controlled by the motion of the boundary projections.  The
finite-dimensional surrogate builds the finite-difference operator with
boundary rows tied to the projections, forms graph subspaces, and watches the
graph gap shrink linearly with the boundary-projection distance.
"""

from maslovflow import (
    BoundaryValueFamily,
    ConstantPath,
    conjugation_spectrum_check,
    discretized_gap_diagnostic,
    gamma_nor,
    l1_frame,
)

fam = BoundaryValueFamily(gamma_nor(1), ConstantPath(l1_frame(1)))

report = discretized_gap_diagnostic(fam, 0.0, [0.08, 0.04, 0.02, 0.01, 0.005], N=64)
print(f"graph gaps against lambda0 = 0 (grid size {report.grid_size}):")
print(f"{'lambda':>8} {'graph gap':>12} {'boundary':>12} {'ratio':>8}")
for e in report.entries:
    print(f"{e.lam:8.3f} {e.graph_gap:12.6f} {e.boundary_distance:12.6f} {e.ratio:8.3f}")
print("gaps strictly decreasing:", report.gaps_decreasing)
print("ratios bounded by 100:   ", report.ratios_bounded)

# the conjugation behind the non-admissible reduction: shifting the operator
# by delta0 is unitarily equivalent to rotating the boundary condition
print("\nconjugation check (A + delta0 versus rotated boundary):")
for delta0 in (0.05, 0.1):
    rep = conjugation_spectrum_check(gamma_nor(1), ConstantPath(l1_frame(1)), delta0)
    print(f"  delta0 = {delta0}: spectra match within {rep.max_spectrum_deviation:.2e}, "
          f"flows {rep.sfl_shifted} == {rep.sfl_rotated}")
