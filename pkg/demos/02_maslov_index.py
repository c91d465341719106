#!/usr/bin/env python3
"""Maslov indices of loops and pairs of Lagrangian paths.

The pair index counts signed crossings of the eigenphases of the relative
unitary W1 conj(W2) through zero.  The two reference paths pin the sign
convention: the closed path winding once around the horizontal subspace has
index +1 against the vertical subspace, and the mirrored reference path gives
-1 when placed second.
"""

from maslovflow import (
    ConcatPath,
    ConstantPath,
    RotatedPath,
    crossing_list,
    gamma_nor,
    gamma_nor_prime,
    l0_frame,
    l1_frame,
    maslov_loop,
    maslov_pair,
    maslov_rel,
    perturbation_theta,
)

n = 1
g = gamma_nor(n)
gp = gamma_nor_prime(n)
L0, L1 = l0_frame(n), l1_frame(n)

print("loop winding of gamma_nor:      ", maslov_loop(g))
print("loop winding of gamma_nor_prime:", maslov_loop(gp))
print("loop winding traversed 3 times: ", maslov_loop(ConcatPath([g, g, g])))

print("\npair indices (normalization):")
print("  mu(gamma_nor, L1)       =", maslov_pair(g, ConstantPath(L1)))
print("  mu(L0, gamma_nor_prime) =", maslov_pair(ConstantPath(L0), gp))

print("\nreversal flips the sign:")
print("  mu(reversed gamma_nor, L1) =", maslov_rel(g.reversed(), L1))

print("\ncrossings of (gamma_nor, L1):")
for rec in crossing_list(g, ConstantPath(L1)):
    print(f"  lambda* = {rec.lambda_star:.9f}  sign = {rec.sign:+d}  multiplicity = {rec.multiplicity}")

# a non-admissible pair: both paths start and end at the same subspace.
# The index is defined through a small stable rotation of the second path.
print("\nnon-admissible pair (gamma_nor against itself):")
theta = perturbation_theta(g, g)
print("  stable rotation angle:", theta)
print("  mu(gamma_nor, gamma_nor) =", maslov_pair(g, g))
print("  same value at theta/2:    ",
      maslov_pair(g, RotatedPath(g, -theta / 2)))

# concatenation is additive piece by piece
double = ConcatPath([g, g])
wall = ConcatPath([ConstantPath(L1), ConstantPath(L1)])
print("\nconcatenated pair index:", maslov_pair(double, wall))
print("crossings of the concatenated pair:")
for rec in crossing_list(double, wall):
    print(f"  lambda* = {rec.lambda_star:.9f}  sign = {rec.sign:+d}")
