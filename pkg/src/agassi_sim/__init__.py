"""Desk-scale digital quantum simulation of the Agassi pairing-plus-monopole model.

Subpackage map:

* :mod:`agassi_sim.paulis` -- Pauli-string algebra and the Jordan-Wigner map
* :mod:`agassi_sim.model` -- Hamiltonian construction and the phase line
* :mod:`agassi_sim.statevector` -- dense states, exact evolution, observables
* :mod:`agassi_sim.trotter` -- first-order digital evolution
* :mod:`agassi_sim.ion_compiler` -- trapped-ion gates, counts, error budget
* :mod:`agassi_sim.experiments` -- CSV-emitting experiment runner
* :mod:`agassi_sim.cli` -- command-line entry point
"""

__version__ = "0.1.0"

from .paulis import (
    CapacityError,
    FermionWord,
    PauliString,
    PauliSum,
    commutator,
    jw_map,
    pauli,
    to_matrix,
)
from .model import (
    ModelParams,
    SplitHamiltonian,
    build_collective_ops,
    build_hamiltonian,
    build_split_j1,
    critical_line,
)
from .statevector import (
    ExactPropagator,
    StateVector,
    TimeSeries,
    apply_pauli_exponential,
    basis_state,
    exact_evolve,
    expectation,
    fidelity,
)
from .trotter import (
    TrotterSchedule,
    build_schedule,
    digital_error,
    trotter_evolve,
)
from .ion_compiler import (
    CompilationError,
    ErrorBudget,
    GateCounts,
    GateSequence,
    GlobalPhase,
    MS,
    Rotation,
    compile_schedule,
    count_gates,
    error_budget,
    sequence_from_text,
    sequence_to_text,
    simulate_sequence,
)

__all__ = [
    "__version__",
    "CapacityError",
    "FermionWord",
    "PauliString",
    "PauliSum",
    "commutator",
    "jw_map",
    "pauli",
    "to_matrix",
    "ModelParams",
    "SplitHamiltonian",
    "build_collective_ops",
    "build_hamiltonian",
    "build_split_j1",
    "critical_line",
    "ExactPropagator",
    "StateVector",
    "TimeSeries",
    "apply_pauli_exponential",
    "basis_state",
    "exact_evolve",
    "expectation",
    "fidelity",
    "TrotterSchedule",
    "build_schedule",
    "digital_error",
    "trotter_evolve",
    "CompilationError",
    "ErrorBudget",
    "GateCounts",
    "GateSequence",
    "GlobalPhase",
    "MS",
    "Rotation",
    "compile_schedule",
    "count_gates",
    "error_budget",
    "sequence_from_text",
    "sequence_to_text",
    "simulate_sequence",
]
