"""Existence checks, coefficient sums and simulation for ARCH(inf) and FIGARCH models."""

from ._archinf import (
    BoundUndefinedError,
    CoeffSequence,
    DomainError,
    InnovationDist,
    PreconditionError,
    SimulationError,
    a_norm_p,
    check_cs,
    engine_discrepancy,
    figarch_pi,
    find_d_star,
    mu_p,
    phi,
    run_cli,
    sample,
    simulate,
    sum_a_log_a,
    z2_log_z2,
)

__version__ = "0.1.0"
