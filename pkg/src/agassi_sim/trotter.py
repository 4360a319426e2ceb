"""First-order digital evolution of the j=1 model.

One step of the decomposition is

    U_step = exp[-i (h1+h2) dt] * exp[-i h3 dt],        dt = t / n_T,

read as an operator product, so the interaction block acts on the state
first.  h1+h2 is diagonal in the z basis and is applied exactly as per-basis
phases; h3 is applied as the ordered product of its eight mutually commuting
string exponentials, which is likewise exact for the block, so the whole
digital error comes from the single non-commuting pair (h1+h2 | h3) and
shrinks like 1/n_T.

Schedules are immutable and shareable; evolutions allocate fresh state.
General j has no closed split and is not supported here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import INTERACTION_STRINGS, ModelParams, build_hamiltonian, build_split_j1
from .paulis import PauliString, PauliSum
from .statevector import StateVector, _pauli_action, exact_evolve, fidelity


@dataclass(frozen=True)
class TrotterSchedule:
    """Everything needed to run (and compile) the digital evolution.

    ``interaction_layer`` holds ``(string, angle_per_unit_time)`` pairs in
    the canonical listing order; the exponential applied per step is
    ``exp(-i * angle_per_unit_time * dt * string)``.  The layer is empty
    exactly when g + V = 0, in which case the schedule is error-free.
    """

    diagonal_block: PauliSum
    interaction_layer: tuple[tuple[PauliString, float], ...]
    n_T: int
    t: float

    @property
    def dt(self) -> float:
        return self.t / self.n_T


def build_schedule(params: ModelParams, t: float, n_T: int) -> TrotterSchedule:
    """Schedule for evolving to time t in n_T first-order steps (j = 1)."""
    if params.j != 1:
        raise NotImplementedError("digital schedules are implemented for j = 1 only")
    if not (isinstance(n_T, int) and n_T >= 1):
        raise ValueError(f"n_T must be a positive integer, got {n_T!r}")
    if not t >= 0:
        raise ValueError(f"t must be nonnegative, got {t!r}")
    split = build_split_j1(params)
    strength = params.control
    if strength == 0.0:
        layer: tuple[tuple[PauliString, float], ...] = ()
    else:
        layer = tuple(
            (PauliString(1.0, letters), -sign * strength / 8)
            for letters, sign in INTERACTION_STRINGS
        )
    return TrotterSchedule(
        diagonal_block=split.diagonal,
        interaction_layer=layer,
        n_T=n_T,
        t=t,
    )


@lru_cache(maxsize=256)
def diagonal_energies(diagonal_block: PauliSum) -> np.ndarray:
    """Eigenvalue of a Z-only sum on every computational basis state."""
    size = 2**diagonal_block.n
    energies = np.zeros(size)
    idx = np.arange(size, dtype=np.int64)
    for term in diagonal_block.terms:
        if any(c not in "IZ" for c in term.letters):
            raise ValueError(f"{term.letters} is not diagonal in the z basis")
        mask = 0
        for i, c in enumerate(term.letters):
            if c == "Z":
                mask |= 1 << (diagonal_block.n - 1 - i)
        v = idx & mask
        v ^= v >> 8
        v ^= v >> 4
        v ^= v >> 2
        v ^= v >> 1
        energies += term.coefficient.real * (1.0 - 2.0 * (v & 1))
    energies.setflags(write=False)
    return energies


def _batched_schedule_steps(amps: np.ndarray, schedule: TrotterSchedule,
                            dts: np.ndarray) -> np.ndarray:
    """Run a schedule on a batch of states, one step size per batch row.

    ``amps`` has shape (len(dts), 2^n); row k is advanced with step dts[k]
    for schedule.n_T steps.   Each interaction string is applied through the
    same permutation-plus-phase kernel as apply_pauli_exponential, using
    cos(theta) - i sin(theta) P; the flip permutation is an involution, so
    indexing columns by it applies its inverse.
    """
    energies = diagonal_energies(schedule.diagonal_block)
    diag_phases = np.exp(-1j * np.outer(dts, energies))
    actions = [
        (_pauli_action(string.letters), rate)
        for string, rate in schedule.interaction_layer
    ]
    for _ in range(schedule.n_T):
        for (target, phases), rate in actions:
            theta = rate * dts
            flipped = (amps * phases)[:, target]
            amps = np.cos(theta)[:, None] * amps - 1j * np.sin(theta)[:, None] * flipped
        amps = diag_phases * amps
    return amps


def evolve_schedule(state: StateVector, schedule: TrotterSchedule) -> StateVector:
    """Apply every step of a schedule to a state."""
    amps = _batched_schedule_steps(
        state.amplitudes[None, :], schedule, np.array([schedule.dt])
    )
    return StateVector(amps[0], state.n)


def trotter_evolve(state: StateVector, params: ModelParams, t: float, n_T: int) -> StateVector:
    """Digitally evolved state after n_T first-order steps to time t."""
    return evolve_schedule(state, build_schedule(params, t, n_T))


def trotter_states_at(state: StateVector, params: ModelParams,
                      times: np.ndarray, n_T: int) -> np.ndarray:
    """Digital states at many times, each reached in n_T steps of its own
    size; shape (len(times), 2^n).  The per-time results are identical to
    ``trotter_evolve`` but the grid is advanced as one batch."""
    times = np.asarray(times, dtype=float)
    schedule = build_schedule(params, 1.0, n_T)
    amps = np.broadcast_to(state.amplitudes, (len(times), len(state.amplitudes))).copy()
    return _batched_schedule_steps(amps, schedule, times / n_T)


def digital_error(state: StateVector, params: ModelParams, t: float, n_T: int) -> float:
    """1 - fidelity between the exact and the digital state at time t."""
    exact = exact_evolve(state, build_hamiltonian(params), t)
    digital = trotter_evolve(state, params, t, n_T)
    return 1.0 - fidelity(exact, digital)
