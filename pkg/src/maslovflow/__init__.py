"""Maslov indices of Lagrangian paths and spectral flow of the associated
first-order boundary-value operators, verified against each other with exact
integer agreement."""

from .symplectic import (
    LagrangianFrame,
    SymplecticMatrix,
    SouriauMatrix,
    KatoProjectionReport,
    standard_J,
    frame_from_basis,
    subspace_frame,
    l0_frame,
    l1_frame,
    unitary_representative,
    souriau,
    intersection_dimension,
    gap_distance,
    directed_gap,
    kato_projection_identity_check,
    rotation_matrix,
    rotate,
    apply_symplectic,
)
from .paths import (
    PiecewiseLinear,
    LagrangianPath,
    ConstantPath,
    RotationPath,
    UnitaryDiagonalPath,
    SymplecticActionPath,
    RotatedPath,
    ReversedPath,
    ReparametrizedPath,
    ConcatPath,
    gamma_nor,
    gamma_nor_prime,
    constant_path,
)
from .maslov import (
    CrossingRecord,
    maslov_pair,
    maslov_rel,
    maslov_loop,
    crossing_list,
    perturbation_theta,
)
from .families import SymmetricFamily
from .specflow import (
    BoundaryValueFamily,
    SpectrumWindow,
    SpectralFlowResult,
    ConjugationReport,
    GapDiagnosticReport,
    transfer_matrix,
    eigen_detector,
    spectrum_window,
    spectral_flow,
    spectral_flow_shifted,
    conjugation_spectrum_check,
    discretized_gap_diagnostic,
)
from .hamiltonian import (
    FundamentalSolution,
    fundamental_solution,
    transported_path,
    frozen_time_path,
    clm_hamiltonian,
    three_term_identity,
    alpha_beta_identity,
    morse_index_formula,
)
from .reports import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "LagrangianFrame",
    "SymplecticMatrix",
    "SouriauMatrix",
    "KatoProjectionReport",
    "standard_J",
    "frame_from_basis",
    "subspace_frame",
    "l0_frame",
    "l1_frame",
    "unitary_representative",
    "souriau",
    "intersection_dimension",
    "gap_distance",
    "directed_gap",
    "kato_projection_identity_check",
    "rotation_matrix",
    "rotate",
    "apply_symplectic",
    "PiecewiseLinear",
    "LagrangianPath",
    "ConstantPath",
    "RotationPath",
    "UnitaryDiagonalPath",
    "SymplecticActionPath",
    "RotatedPath",
    "ReversedPath",
    "ReparametrizedPath",
    "ConcatPath",
    "gamma_nor",
    "gamma_nor_prime",
    "constant_path",
    "CrossingRecord",
    "maslov_pair",
    "maslov_rel",
    "maslov_loop",
    "crossing_list",
    "perturbation_theta",
    "SymmetricFamily",
    "BoundaryValueFamily",
    "SpectrumWindow",
    "SpectralFlowResult",
    "ConjugationReport",
    "GapDiagnosticReport",
    "transfer_matrix",
    "eigen_detector",
    "spectrum_window",
    "spectral_flow",
    "spectral_flow_shifted",
    "conjugation_spectrum_check",
    "discretized_gap_diagnostic",
    "FundamentalSolution",
    "fundamental_solution",
    "transported_path",
    "frozen_time_path",
    "clm_hamiltonian",
    "three_term_identity",
    "alpha_beta_identity",
    "morse_index_formula",
    "VerificationReport",
]
