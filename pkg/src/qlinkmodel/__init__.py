"""Error models and figures of merit for dual-OPA teleportation and GHZ links.

Modules
-------
link_params     operating point and Gaussian mode-pair moments
gaussian_fock   Fock-basis matrix elements, closed form and quadrature oracle
teleport        Bell-diagonal loading state, fidelity and throughput
qecc            five-qubit code tables, decoder and logical channel
epp             hashing-purification yield
ghz             GHZ loading states and closed-form QSS fidelities
qss             QSS protocol: exact oracle and Monte Carlo engines
sweep           configuration files, sweeps, CSV/JSON output
"""
__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DomainError,
    ModelError,
    ModelValidityError,
    OracleError,
    UndefinedConditionalError,
)
from .link_params import ModePairMoments, SystemConfig, link_transmissivity, pair_moments
from .gaussian_fock import FockDiagonals, fock_diagonals, fock_diagonals_oracle
from .teleport import (
    BellDiagonalState,
    average_fidelity,
    bell_event_probabilities,
    conditional_werner,
    singlet_throughput,
    success_probability,
)
from .qecc import enumerate_logical_channel, iterate_concatenation, logical_fidelity
from .epp import hashing_yield, von_neumann_entropy, werner_yield, yield_threshold
from .ghz import GhzDiagonalState, dual_dpa_diag, heralded_diag, pauli_channel_equivalent
from .paulis import PauliChannel
from .statevector import StateVector
from .qss import qss_average_fidelity_exact, qss_coded_fidelity_exact, qss_coded_fidelity_mc
from .sweep import SweepSpec, load_config, run_sweep
