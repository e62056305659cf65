"""Radial F-harmonic map laboratory.

Thin Python surface over the C++ core: adaptive ODE solve of the radial
profile equation, shooting for boundary-value targets, a discrete energy
minimizer, and the qualitative-behaviour verification catalog.
"""

from ._fharmonic import (
    DegenerateCoefficientError,
    DiscreteProblem,
    MinimizeResult,
    NoBracketError,
    ProblemSpec,
    ProfileOverflowError,
    ShootingResult,
    SolverConfig,
    Trajectory,
    TrajectoryNode,
    alpha_second,
    dense_eval,
    energy_density,
    minimize,
    monotonicity_scan,
    radial_ricci,
    residual,
    run_verification,
    shoot,
    solve,
    theorem_ids,
    validate_spec,
)

__all__ = [
    "DegenerateCoefficientError",
    "DiscreteProblem",
    "MinimizeResult",
    "NoBracketError",
    "ProblemSpec",
    "ProfileOverflowError",
    "ShootingResult",
    "SolverConfig",
    "Trajectory",
    "TrajectoryNode",
    "alpha_second",
    "dense_eval",
    "energy_density",
    "minimize",
    "monotonicity_scan",
    "radial_ricci",
    "residual",
    "run_verification",
    "shoot",
    "solve",
    "theorem_ids",
    "validate_spec",
]

__version__ = "0.1.0"
