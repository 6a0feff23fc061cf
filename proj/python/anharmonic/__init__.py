"""Nonlinearity and nonclassicality measures for anharmonic oscillator ground states."""

from ._core import (
    BoundStateError,
    Covariance,
    DomainError,
    Mho,
    Morse,
    NonConvergence,
    PoschlTeller,
    Poly,
    TruncationError,
    WignerField,
    appendix_wigner,
    covariance,
    entanglement_potential,
    fidelity,
    fidelity_map,
    fock_wigner,
    measure,
    mho_wigner,
    model_wigner,
    morse_wigner,
    negativity,
    numeric_ground,
    perturbative_gammas,
    run_cli,
)

__all__ = [name for name in dir() if not name.startswith("_")]
