"""Tests for fundamental solutions and the Hamiltonian spectral-flow identities."""

import numpy as np
import pytest
import scipy.linalg

from maslovflow import (
    ConstantPath,
    PiecewiseLinear,
    RotatedPath,
    SymmetricFamily,
    alpha_beta_identity,
    clm_hamiltonian,
    fundamental_solution,
    gamma_nor,
    l1_frame,
    maslov_pair,
    morse_index_formula,
    standard_J,
    three_term_identity,
    transported_path,
)
from maslovflow.suites import random_pair, random_symmetric, random_symmetric_family


def test_symmetric_family_exact_symmetry_and_eval():
    rng = np.random.default_rng(0)
    coeffs = rng.normal(size=(3, 2, 4, 4))
    fam = SymmetricFamily(coeffs)
    for lam, t in ((0.0, 0.0), (0.3, 0.8), (1.0, 1.0)):
        M = fam(lam, t)
        assert np.array_equal(M, M.T)  # bitwise symmetric
    # evaluation matches the upper-triangle mirrored polynomial
    U = np.triu(coeffs[1, 1]) + np.triu(coeffs[1, 1], 1).T
    direct = sum(
        (np.triu(coeffs[j, k]) + np.triu(coeffs[j, k], 1).T) * 0.3**j * 0.8**k
        for j in range(3)
        for k in range(2)
    )
    assert np.allclose(fam(0.3, 0.8), direct, atol=1e-14)
    assert U is not None


def test_symmetric_family_degree_cap():
    with pytest.raises(ValueError, match="degree"):
        SymmetricFamily(np.zeros((6, 1, 2, 2)))


def test_symmetric_family_shift_and_zero():
    fam = SymmetricFamily.zero(1)
    assert fam.is_zero() and fam.t_independent()
    shifted = fam.shifted(0.25)
    assert np.allclose(shifted(0.5, 0.5), 0.25 * np.eye(2), atol=1e-15)


def test_fundamental_solution_zero_family():
    sol = fundamental_solution(SymmetricFamily.zero(2), 0.3)
    assert np.allclose(sol.end(), np.eye(4), atol=1e-14)
    assert np.allclose(sol.at(0.62), np.eye(4), atol=1e-14)


def test_fundamental_solution_rotation_pin():
    # S = delta0 I integrates to the rotation exp(delta0 J t); this example
    # pins the sign convention of the flow equation
    delta0 = 0.3
    S = SymmetricFamily.constant(delta0 * np.eye(2))
    sol = fundamental_solution(S, 0.0)
    J = standard_J(1)
    for t in (0.25, 0.37, 1.0):
        assert np.linalg.norm(sol.at(t) - scipy.linalg.expm(delta0 * t * J), 2) < 1e-12


def test_fundamental_solution_symplectic_and_converged():
    rng = np.random.default_rng(1)
    S = random_symmetric_family(rng, 1, 2, 2, 2.5)
    J = standard_J(1)
    sol_a = fundamental_solution(S, 0.4, steps=128)
    sol_b = fundamental_solution(S, 0.4, steps=256)
    # oracle: step halving
    assert np.linalg.norm(sol_a.end() - sol_b.end(), 2) < 1e-9
    assert np.linalg.norm(sol_b.end().T @ J @ sol_b.end() - J, 2) < 1e-8
    # off-grid evaluation is consistent with the stored grid
    t = sol_b.ts[100]
    assert np.linalg.norm(sol_b.at(float(t)) - sol_b.mats[100], 2) == 0.0
    mid = float(t) + 0.5 / 256
    ref = fundamental_solution(S, 0.4, steps=512).at(mid)
    assert np.linalg.norm(sol_b.at(mid) - ref, 2) < 1e-9


def test_fundamental_solution_drift_error():
    # a large genuinely t-dependent family at few steps must fail loudly
    coeffs = np.zeros((1, 2, 2, 2))
    coeffs[0, 0] = 18.0 * np.eye(2)
    coeffs[0, 1] = np.array([[9.0, 4.0], [4.0, -9.0]])
    with pytest.raises(ValueError, match="increase steps"):
        fundamental_solution(SymmetricFamily(coeffs), 0.0, steps=64)


def test_fundamental_solution_rejects_few_steps():
    with pytest.raises(ValueError, match="steps"):
        fundamental_solution(SymmetricFamily.zero(1), 0.0, steps=32)


def test_transported_endpoint_continuity_cauchy_ladder():
    # Psi_lambda(1) is Lipschitz in lambda: the largest increment over a
    # lambda grid must shrink by about the halving factor per refinement
    rng = np.random.default_rng(13)
    S = random_symmetric_family(rng, 1, 2, 1, 2.0)

    def max_increment(npts):
        lams = np.linspace(0.0, 1.0, npts)
        mats = [fundamental_solution(S, lam).end() for lam in lams]
        return max(
            np.linalg.norm(b - a, 2) for a, b in zip(mats[:-1], mats[1:])
        )

    e8, e16, e32 = max_increment(9), max_increment(17), max_increment(33)
    assert e16 <= e8 / 1.8
    assert e32 <= e16 / 1.8


def test_cocycle_for_constant_coefficients():
    K = random_symmetric(np.random.default_rng(2), 2, 1.2)
    S = SymmetricFamily.constant(K)
    sol = fundamental_solution(S, 0.0)
    D = standard_J(1) @ K
    for s, t in ((0.3, 0.4), (0.5, 0.25)):
        lhs = sol.at(s + t)
        assert np.linalg.norm(lhs - scipy.linalg.expm((s + t) * D), 2) < 1e-10
        assert np.linalg.norm(lhs - sol.at(s) @ sol.at(t), 2) < 1e-8


def test_clm_reduces_to_plain_theorem_for_zero_family():
    g1, g2 = random_pair(np.random.default_rng(3), 1)
    rep = clm_hamiltonian(SymmetricFamily.zero(1), g1, g2)
    assert rep.passed
    assert rep.values["maslov_transported"] == maslov_pair(g1, g2)


def test_clm_constant_family_matches_rotated_path():
    # S = delta I transports gamma_1 by the rotation exp(delta J); both sides
    # are computed by independent code paths
    delta = 0.3
    S = SymmetricFamily.constant(delta * np.eye(2))
    g1 = gamma_nor(1)
    g2 = ConstantPath(l1_frame(1))
    rep = clm_hamiltonian(S, g1, g2)
    assert rep.passed
    assert rep.values["maslov_transported"] == maslov_pair(RotatedPath(g1, delta), g2)


def test_clm_randomized_small():
    rng = np.random.default_rng(4)
    for _ in range(3):
        n = 1 + int(rng.integers(0, 2))
        g1, g2 = random_pair(rng, n)
        S = random_symmetric_family(rng, n, 2, 1, 2.0)
        assert clm_hamiltonian(S, g1, g2).passed


def test_transported_path_is_lagrangian():
    rng = np.random.default_rng(5)
    S = random_symmetric_family(rng, 1, 2, 2, 2.0)
    path = transported_path(S, gamma_nor(1))
    for lam in (0.0, 0.4, 1.0):
        F = path.frame(lam)
        assert F.n == 1  # construction revalidates the invariants


def test_three_term_zero_family_edges_vanish():
    g1, g2 = random_pair(np.random.default_rng(6), 1)
    rep = three_term_identity(SymmetricFamily.zero(1), g1, g2)
    assert rep.passed
    assert rep.values["term_end"] == 0 and rep.values["term_start"] == 0


def test_three_term_randomized():
    rng = np.random.default_rng(7)
    g1, g2 = random_pair(rng, 1)
    S = random_symmetric_family(rng, 1, 2, 1, 1.5)
    rep = three_term_identity(S, g1, g2)
    assert rep.passed
    assert rep.values["spectral_flow"] == (
        rep.values["term_end"] + rep.values["term_pair"] - rep.values["term_start"]
    )


def test_alpha_beta_constraint_validation():
    S = SymmetricFamily.zero(1)
    g1, g2 = random_pair(np.random.default_rng(8), 1)
    alpha = PiecewiseLinear([0.0, 1.0], [0.3, 0.0])
    bad_beta = PiecewiseLinear([0.0, 1.0], [0.2, 1.0])
    with pytest.raises(ValueError, match="breakpoint"):
        alpha_beta_identity(S, g1, g2, alpha, bad_beta)


def test_alpha_beta_degenerate_reparametrization_matches_three_term():
    # alpha = 0, beta = lambda: the reparametrized terms coincide with the
    # three-term corollary on the same data
    rng = np.random.default_rng(9)
    g1, g2 = random_pair(rng, 1)
    S = random_symmetric_family(rng, 1, 1, 1, 1.5)
    alpha = PiecewiseLinear([0.0, 1.0], [0.0, 0.0])
    beta = PiecewiseLinear([0.0, 1.0], [0.0, 1.0])
    rep = alpha_beta_identity(S, g1, g2, alpha, beta)
    oracle = three_term_identity(S, g1, g2)
    assert rep.passed and oracle.passed
    assert rep.values["spectral_flow"] == oracle.values["spectral_flow"]


def test_alpha_beta_tent_profile():
    rng = np.random.default_rng(10)
    g1, g2 = random_pair(rng, 1)
    S = random_symmetric_family(rng, 1, 1, 1, 1.5)
    alpha = PiecewiseLinear([0.0, 1.0], [0.5, 0.0])
    beta = PiecewiseLinear([0.0, 1.0], [0.5, 1.0])
    assert alpha_beta_identity(S, g1, g2, alpha, beta).passed


def test_alpha_beta_zero_family_reduces_to_plain_theorem():
    g1, g2 = random_pair(np.random.default_rng(11), 1)
    alpha = PiecewiseLinear([0.0, 1.0], [0.25, 0.0])
    beta = PiecewiseLinear([0.0, 1.0], [0.25, 1.0])
    rep = alpha_beta_identity(SymmetricFamily.zero(1), g1, g2, alpha, beta)
    assert rep.passed
    assert rep.values["spectral_flow"] == maslov_pair(g1, g2)


def test_morse_zero_family():
    rep = morse_index_formula(SymmetricFamily.zero(1))
    assert rep.passed
    assert rep.values["spectral_flow"] == 0


def _dirichlet_ramp_oracle(c: float) -> int:
    # spectrum of the ramp family is {lambda c + k pi}; branches k <= -1
    # cross zero upward exactly when k pi < c
    return sum(1 for k in range(1, 64) if k * np.pi < c)


@pytest.mark.parametrize("c", [5.0, 15.0, 30.0])
def test_morse_dirichlet_ramp(c):
    coeffs = np.zeros((2, 1, 2, 2))
    coeffs[1, 0] = c * np.eye(2)
    rep = morse_index_formula(SymmetricFamily(coeffs))
    assert rep.passed
    assert rep.values["spectral_flow"] == _dirichlet_ramp_oracle(c)


def test_morse_randomized_degree_one():
    rng = np.random.default_rng(12)
    for _ in range(2):
        S = random_symmetric_family(rng, 1, 1, 1, 2.5)
        assert morse_index_formula(S).passed
