"""Entangled coherent states under vacuum decay: closed forms, a one-bit
probabilistic teleportation protocol, and brute-force Fock-space checks."""

from ._core import (
    EcsError,
    binary_entropy,
    coherent_overlap,
    concurrence,
    d_from_gamma_t,
    ecs_normalization,
    eof_from_concurrence,
    gamma_t_from_d,
    hermitian_eig,
    mean_fidelity,
    mixed_ecs_eof,
    oracle_eof,
    pure_ecs_eof,
    revival_search,
    simulate_protocol,
    stable_log_ratio_kernel,
    success_probability,
    two_qubit_density,
)

__all__ = [
    "EcsError",
    "binary_entropy",
    "coherent_overlap",
    "concurrence",
    "d_from_gamma_t",
    "ecs_normalization",
    "eof_from_concurrence",
    "gamma_t_from_d",
    "hermitian_eig",
    "mean_fidelity",
    "mixed_ecs_eof",
    "oracle_eof",
    "pure_ecs_eof",
    "revival_search",
    "simulate_protocol",
    "stable_log_ratio_kernel",
    "success_probability",
    "two_qubit_density",
]
