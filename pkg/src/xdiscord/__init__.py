"""Correlation dynamics of two coupled spin-1/2s in X-states.

Closed-form propagators for a family of time-dependent fields, analytic
concurrence and discord for X-states, and brute-force oracles to check both.
"""

from .correlations import (
    CorrelationReport,
    classical_correlations,
    concurrence_x,
    conditional_entropy_candidates,
    f_binary_entropy,
    full_report,
    mutual_information,
    quantum_discord,
)
from .dynamics import (
    BrightDrive,
    ConstantDrive,
    CouplingConstants,
    PropagatorPair,
    ScenarioConfig,
    SechDrive,
    constant_scenario,
    evolve_xstate,
    field_profile,
    full_evolution_operator,
    hamiltonian,
    propagator,
    sech_scenario,
)
from .errors import (
    ContractViolation,
    DomainError,
    InconsistencyError,
    IntegrationError,
    InvalidStateError,
    XDiscordError,
)
from .experiments import PRESETS, SweepRow, run_preset, sweep, write_csv
from .linalg import check_density_matrix, hermitian_eigenvalues, partial_trace, von_neumann_entropy
from .states import (
    Bell,
    BellMixture,
    BellMixtureSpec,
    BlochParams,
    XState,
    bell_mixture,
    bloch_params,
    canonicalize,
    from_bloch,
    random_xstate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
