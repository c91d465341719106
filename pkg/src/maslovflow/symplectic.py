"""Finite-dimensional symplectic linear algebra.

Lagrangian frames in R^(2n), their unitary and Souriau representatives,
intersection dimensions, and the gap metric between subspaces.  Frames are
the primary subspace representation throughout; orthogonal projectors are
derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

FRAME_ATOL = 1e-10
SYMPLECTIC_ATOL = 1e-8
SOURIAU_ATOL = 1e-9
RANK_TOL = 1e-8


def standard_J(n: int) -> np.ndarray:
    """The 2n x 2n block matrix [[0, -I], [I, 0]].

    Satisfies J^2 = -I, J^T = -J and ||J||_2 = 1; it encodes the standard
    symplectic form omega(x, y) = <Jx, y>.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"half-dimension n must be a positive integer, got {n!r}")
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -np.eye(n)
    J[n:, :n] = np.eye(n)
    return J


def _orthonormal_columns(B: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(B), column-pivoted QR plus a second pass."""
    B = np.asarray(B, dtype=float)
    Q, _, _ = scipy.linalg.qr(B, mode="economic", pivoting=True)
    Q, _ = np.linalg.qr(Q)
    return np.ascontiguousarray(Q[:, : B.shape[1]])


def subspace_frame(B: np.ndarray, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal frame of span(B) for a general full-rank basis matrix."""
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[1] == 0:
        raise ValueError("basis must be a matrix with at least one column")
    s = np.linalg.svd(B, compute_uv=False)
    rank = int(np.sum(s > rank_tol * s[0]))
    if rank < B.shape[1]:
        raise ValueError(
            f"basis is rank deficient: numerical rank {rank} < {B.shape[1]} columns"
        )
    return _orthonormal_columns(B)


@dataclass(frozen=True)
class LagrangianFrame:
    """A real 2n x n matrix with orthonormal columns spanning a Lagrangian subspace.

    Construction validates both invariants: ||F^T F - I|| <= 1e-10 and
    ||F^T J F|| <= 1e-10.  The stored array is read-only.
    """

    n: int
    F: np.ndarray

    def __post_init__(self):
        F = np.array(self.F, dtype=float)
        if F.shape != (2 * self.n, self.n):
            raise ValueError(f"frame must be {2 * self.n} x {self.n}, got {F.shape}")
        gram_err = np.linalg.norm(F.T @ F - np.eye(self.n), 2)
        if gram_err > FRAME_ATOL:
            raise ValueError(f"columns not orthonormal: ||F^T F - I|| = {gram_err:.3e}")
        iso_err = np.linalg.norm(F.T @ standard_J(self.n) @ F, 2)
        if iso_err > FRAME_ATOL:
            raise ValueError(f"span is not isotropic: ||F^T J F|| = {iso_err:.3e}")
        F.setflags(write=False)
        object.__setattr__(self, "F", F)

    @property
    def projector(self) -> np.ndarray:
        return self.F @ self.F.T


@dataclass(frozen=True)
class SymplecticMatrix:
    """A real 2n x 2n matrix A with ||A^T J A - J|| <= 1e-8."""

    n: int
    A: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        if A.shape != (2 * self.n, 2 * self.n):
            raise ValueError(f"matrix must be {2 * self.n} x {2 * self.n}, got {A.shape}")
        J = standard_J(self.n)
        err = np.linalg.norm(A.T @ J @ A - J, 2)
        if err > SYMPLECTIC_ATOL:
            raise ValueError(f"matrix is not symplectic: ||A^T J A - J|| = {err:.3e}")
        A.setflags(write=False)
        object.__setattr__(self, "A", A)


@dataclass(frozen=True)
class SouriauMatrix:
    """The complex symmetric unitary W = U U^T attached to a Lagrangian subspace."""

    n: int
    W: np.ndarray

    def __post_init__(self):
        W = np.array(self.W, dtype=complex)
        if W.shape != (self.n, self.n):
            raise ValueError(f"matrix must be {self.n} x {self.n}, got {W.shape}")
        uni_err = np.linalg.norm(W.conj().T @ W - np.eye(self.n), 2)
        if uni_err > SOURIAU_ATOL:
            raise ValueError(f"matrix is not unitary: deviation {uni_err:.3e}")
        sym_err = np.linalg.norm(W - W.T, 2)
        if sym_err > SOURIAU_ATOL:
            raise ValueError(f"matrix is not symmetric: ||W - W^T|| = {sym_err:.3e}")
        W.setflags(write=False)
        object.__setattr__(self, "W", W)


def frame_from_basis(B: np.ndarray) -> LagrangianFrame:
    """Orthonormal Lagrangian frame with the same column span as B.

    B must be 2n x n with independent columns spanning an isotropic subspace.
    """
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] % 2 != 0:
        raise ValueError(f"basis must be a 2n x n matrix, got shape {B.shape}")
    n = B.shape[0] // 2
    if B.shape[1] != n:
        raise ValueError(f"expected {n} columns for a Lagrangian basis, got {B.shape[1]}")
    Q = subspace_frame(B)
    iso_err = np.linalg.norm(Q.T @ standard_J(n) @ Q, 2)
    if iso_err > FRAME_ATOL:
        raise ValueError(f"span is not isotropic: ||F^T J F|| = {iso_err:.3e}")
    return LagrangianFrame(n, Q)


def nearest_lagrangian_frame(Q: np.ndarray) -> LagrangianFrame:
    """Project an orthonormal, nearly isotropic frame onto a Lagrangian frame.

    The complexification M = X + iY of the frame blocks satisfies
    M*M = I - i F^T J F, so for a small isotropy defect the nearest unitary
    (polar factor of M) spans a genuinely Lagrangian subspace a comparable
    distance away.  Exactly Lagrangian input is reproduced.
    """
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0] // 2
    M = Q[:n, :] + 1j * Q[n:, :]
    U, _, Vt = np.linalg.svd(M)
    W = U @ Vt
    return LagrangianFrame(n, np.vstack([W.real, W.imag]))


def l0_frame(n: int) -> LagrangianFrame:
    """Frame of the horizontal Lagrangian R^n x {0}."""
    return LagrangianFrame(n, np.vstack([np.eye(n), np.zeros((n, n))]))


def l1_frame(n: int) -> LagrangianFrame:
    """Frame of the vertical Lagrangian {0} x R^n."""
    return LagrangianFrame(n, np.vstack([np.zeros((n, n)), np.eye(n)]))


def unitary_representative(L: LagrangianFrame) -> np.ndarray:
    """The unitary U = X + iY built from the frame blocks F = [X; Y].

    U maps R^n x {0} onto L under the identification of R^(2n) with C^n;
    it is determined by L up to a right orthogonal factor.
    """
    U = L.F[: L.n, :] + 1j * L.F[L.n :, :]
    err = np.linalg.norm(U.conj().T @ U - np.eye(L.n), 2)
    if err > SOURIAU_ATOL:
        raise ValueError(f"frame does not yield a unitary representative: {err:.3e}")
    return U


def souriau(L: LagrangianFrame) -> SouriauMatrix:
    """The frame-independent representative W = U U^T of L in U(n)/O(n)."""
    U = unitary_representative(L)
    return SouriauMatrix(L.n, U @ U.T)


def intersection_dimension(L1: LagrangianFrame, L2: LagrangianFrame, tol: float = RANK_TOL) -> int:
    """dim(L1 cap L2) = 2n - rank([F1 | F2]), rank by singular values.

    Singular values below tol * sigma_max count as zero.
    """
    if L1.n != L2.n:
        raise ValueError(f"half-dimension mismatch: {L1.n} vs {L2.n}")
    s = np.linalg.svd(np.hstack([L1.F, L2.F]), compute_uv=False)
    rank = int(np.sum(s > tol * s[0]))
    return 2 * L1.n - rank


def _frame_matrix(L) -> np.ndarray:
    """Accept a LagrangianFrame or a plain orthonormal-column matrix."""
    Q = L.F if isinstance(L, LagrangianFrame) else np.asarray(L, dtype=float)
    if Q.ndim != 2:
        raise ValueError("subspace frame must be a matrix")
    if Q.shape[1] > 0:
        err = np.linalg.norm(Q.T @ Q - np.eye(Q.shape[1]), 2)
        if err > 1e-8:
            raise ValueError(f"frame columns are not orthonormal: deviation {err:.3e}")
    return Q


def gap_distance(L1, L2) -> float:
    """Gap metric ||P1 - P2||_2 between the spans of two orthonormal frames.

    Accepts Lagrangian frames or general subspace frames of any ranks in a
    common ambient space; zero exactly for equal subspaces.
    """
    Q1, Q2 = _frame_matrix(L1), _frame_matrix(L2)
    if Q1.shape[0] != Q2.shape[0]:
        raise ValueError(f"ambient dimension mismatch: {Q1.shape[0]} vs {Q2.shape[0]}")
    P1 = Q1 @ Q1.T
    P2 = Q2 @ Q2.T
    return float(np.linalg.norm(P1 - P2, 2))


def directed_gap(L1, L2) -> float:
    """One-sided gap sup over unit u in L1 of dist(u, L2), i.e. ||(I - P2) P1||_2."""
    Q1, Q2 = _frame_matrix(L1), _frame_matrix(L2)
    if Q1.shape[1] == 0:
        raise ValueError("directed gap is undefined for the zero subspace")
    if Q1.shape[0] != Q2.shape[0]:
        raise ValueError(f"ambient dimension mismatch: {Q1.shape[0]} vs {Q2.shape[0]}")
    P1 = Q1 @ Q1.T
    P2 = Q2 @ Q2.T
    return float(np.linalg.norm((np.eye(Q1.shape[0]) - P2) @ P1, 2))


@dataclass(frozen=True)
class KatoProjectionReport:
    """The three projection norms of the Kato identity check."""

    norm_ImP_Q: float
    norm_ImQ_P: float
    norm_P_minus_Q: float
    hypothesis_met: bool
    max_discrepancy: float


def kato_projection_identity_check(P: np.ndarray, Q: np.ndarray, atol: float = 1e-10) -> KatoProjectionReport:
    """Check ||(I-P)Q|| = ||(I-Q)P|| = ||P - Q|| for orthogonal projections.

    The identity holds whenever both one-sided norms are < 1; in that case a
    discrepancy above atol raises.  Otherwise the report flags the hypothesis
    as not met and carries the norms unchanged.
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    for name, R in (("P", P), ("Q", Q)):
        if R.ndim != 2 or R.shape[0] != R.shape[1]:
            raise ValueError(f"{name} must be a square matrix")
        if np.linalg.norm(R @ R - R, 2) > 1e-10 or np.linalg.norm(R - R.T, 2) > 1e-10:
            raise ValueError(f"{name} is not an orthogonal projection")
    I = np.eye(P.shape[0])
    a = float(np.linalg.norm((I - P) @ Q, 2))
    b = float(np.linalg.norm((I - Q) @ P, 2))
    c = float(np.linalg.norm(P - Q, 2))
    hypothesis = a < 1.0 and b < 1.0
    disc = max(abs(a - b), abs(a - c), abs(b - c))
    if hypothesis and disc > atol:
        raise ArithmeticError(
            f"projection-norm identity violated: norms ({a:.12e}, {b:.12e}, {c:.12e})"
        )
    return KatoProjectionReport(a, b, c, hypothesis, disc)


def rotation_matrix(n: int, theta: float) -> np.ndarray:
    """exp(theta J) = cos(theta) I + sin(theta) J, evaluated in closed form."""
    return np.cos(theta) * np.eye(2 * n) + np.sin(theta) * standard_J(n)


def rotate(L: LagrangianFrame, theta: float) -> LagrangianFrame:
    """Frame of exp(theta J) L; rotations are orthogonal so no renormalization."""
    return LagrangianFrame(L.n, rotation_matrix(L.n, theta) @ L.F)


def apply_symplectic(A, L: LagrangianFrame) -> LagrangianFrame:
    """Orthonormalized frame of A . span(F) for a symplectic matrix A."""
    if isinstance(A, SymplecticMatrix):
        if A.n != L.n:
            raise ValueError(f"half-dimension mismatch: {A.n} vs {L.n}")
        M = A.A
    else:
        M = np.asarray(A, dtype=float)
        if M.shape != (2 * L.n, 2 * L.n):
            raise ValueError(f"matrix must be {2 * L.n} x {2 * L.n}, got {M.shape}")
        J = standard_J(L.n)
        err = np.linalg.norm(M.T @ J @ M - J, 2)
        if err > SYMPLECTIC_ATOL:
            raise ValueError(f"matrix is not symplectic: ||A^T J A - J|| = {err:.3e}")
    return LagrangianFrame(L.n, _orthonormal_columns(M @ L.F))
