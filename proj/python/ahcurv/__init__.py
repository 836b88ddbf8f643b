"""Algebraic curvature tensors on almost Hermitian vector spaces.

Tensors are numpy arrays of shape (2n, 2n, 2n, 2n) in the adapted basis
e_1..e_n, Je_1..Je_n.
"""

from ._core import (
    AhcurvError,
    bochner,
    condition_residual,
    constrained_sample,
    lemma_kernel_dimension,
    pencil,
    phi,
    pi1,
    pi2,
    project_curvature,
    project_rk,
    psi,
    replay_derivation,
    ricci,
    run_cli,
    scalars,
    star_ricci,
    structure_j,
    symmetry_residuals,
    verify_corollary,
    verify_theorem,
)

__all__ = [
    "AhcurvError",
    "bochner",
    "condition_residual",
    "constrained_sample",
    "lemma_kernel_dimension",
    "pencil",
    "phi",
    "pi1",
    "pi2",
    "project_curvature",
    "project_rk",
    "psi",
    "replay_derivation",
    "ricci",
    "run_cli",
    "scalars",
    "star_ricci",
    "structure_j",
    "symmetry_residuals",
    "verify_corollary",
    "verify_theorem",
]
