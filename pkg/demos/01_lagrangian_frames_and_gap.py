#!/usr/bin/env python3
"""Lagrangian frames, unitary representatives and the gap metric.

A Lagrangian subspace of R^(2n) is stored as a 2n x n frame with orthonormal
columns on which the symplectic form vanishes.  Complexifying the two n x n
blocks of such a frame gives a unitary matrix, and the frame-independent
product W = U U^T is the working representative of the subspace: its
eigenvalue 1 counts the intersection with the horizontal subspace.
"""

import numpy as np

from maslovflow import (
    frame_from_basis,
    gap_distance,
    directed_gap,
    intersection_dimension,
    kato_projection_identity_check,
    l0_frame,
    l1_frame,
    rotate,
    souriau,
    standard_J,
    unitary_representative,
)

n = 2
J = standard_J(n)
print("standard J for n=2:")
print(J)
print("J^2 + I == 0:", np.allclose(J @ J, -np.eye(2 * n)))

# the horizontal subspace R^n x {0} and the vertical {0} x R^n
L0 = l0_frame(n)
L1 = l1_frame(n)
print("\nunitary representative of L0:", np.diag(unitary_representative(L0)))
print("unitary representative of L1:", np.diag(unitary_representative(L1)))

# an arbitrary isotropic basis is orthonormalized into a frame
B = np.array(
    [
        [1.0, 0.0],
        [2.0, 1.0],
        [0.0, 0.0],
        [0.0, 0.0],
    ]
)
L = frame_from_basis(B)
print("\nframe of span{(1,2,0,0), (0,1,0,0)}:")
print(L.F)
print("intersection with L0:", intersection_dimension(L, L0))
print("intersection with L1:", intersection_dimension(L, L1))

# rotating by pi/2 maps L0 onto L1; the gap metric sees the full distance
print("\ngap(L0, L1) =", gap_distance(L0, L1))
print("gap(L0, rotate(L0, pi/2)) =", gap_distance(rotate(L0, np.pi / 2), L1))

# the two directed gaps realize the symmetric gap as their maximum
theta = 0.4
Lt = rotate(L0, theta)
print(f"\nline rotated by {theta}:")
print("  directed gap L0 -> Lt:", directed_gap(L0, Lt))
print("  directed gap Lt -> L0:", directed_gap(Lt, L0))
print("  gap:", gap_distance(L0, Lt), " (sin theta =", np.sin(theta), ")")

# the projection-norm identity behind the gap estimates
rep = kato_projection_identity_check(L0.projector, Lt.projector)
print("\nprojection norms:", rep.norm_ImP_Q, rep.norm_ImQ_P, rep.norm_P_minus_Q)
print("identity spread:", rep.max_discrepancy)

# the Souriau matrix is invariant under the frame's right O(n) freedom
Q, _ = np.linalg.qr(np.random.default_rng(0).normal(size=(n, n)))
from maslovflow import LagrangianFrame

L_reframed = LagrangianFrame(n, L.F @ Q)
print("\nSouriau invariance under reframing:",
      np.linalg.norm(souriau(L).W - souriau(L_reframed).W, 2))
