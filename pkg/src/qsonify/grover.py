"""Stage-by-stage simulation of a 3-qubit Grover search.

Qubits are indexed 0, 1, 2 for q1, q2, q3.  Outcomes are read as the bit
string ``q3 q2 q1`` with q3 the most significant bit, so qubit ``i``
carries weight ``2**i`` in the outcome value.  Under that order the
single-iteration circuit with an X on q1 in its oracle marks ``110`` (6).

A circuit is a list of stages.  Each stage is a gate column: a tuple of
``(gate, qubits)`` pairs applied in order, where ``gate`` is ``"H"``,
``"X"`` or ``"CCX"`` (qubits given as ``(control, control, target)``).
"""

from dataclasses import dataclass

import numpy as np

from .statevec import HADAMARD, PAULI_X, SeededSampler, basis_state, born_probabilities, sample

N_QUBITS = 3
DIM = 2 ** N_QUBITS
LABELS = tuple(format(v, "03b") for v in range(DIM))

ORACLE_STAGES = 3
DIFFUSER_STAGES = 7

_SINGLE = {"H": HADAMARD, "X": PAULI_X}


@dataclass(frozen=True)
class GroverConfig:
    marked: int = 6
    iterations: int = 1
    shots_per_stage: int = 100
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.marked < DIM:
            raise ValueError(f"marked must be in [0, {DIM - 1}], got {self.marked}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.shots_per_stage < 1:
            raise ValueError(f"shots_per_stage must be >= 1, got {self.shots_per_stage}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class GroverCircuit:
    stages: tuple
    marked: int
    iterations: int

    @property
    def stage_count(self):
        return len(self.stages)


@dataclass(eq=False)
class TraceTable:
    """Per-stage shot samples and the exact distributions they came from.

    ``samples`` has one row of outcome values per stage; ``exact`` one row
    of Born probabilities per stage.
    """

    samples: np.ndarray
    exact: np.ndarray
    config: GroverConfig

    @property
    def shots(self):
        return self.samples.shape[1]

    @property
    def counts(self):
        return np.stack([np.bincount(row, minlength=DIM) for row in self.samples])

    @property
    def proportions(self):
        return self.counts / self.shots

    def __eq__(self, other):
        if not isinstance(other, TraceTable):
            return NotImplemented
        return (self.config == other.config
                and np.array_equal(self.samples, other.samples)
                and np.array_equal(self.exact, other.exact))


def single_qubit_op(gate, qubit):
    """Embed a 2x2 gate on ``qubit`` into the 8-dim space."""
    factors = [np.identity(2, dtype=complex)] * N_QUBITS
    factors[qubit] = gate
    # q3 is the slow index
    out = factors[2]
    for f in (factors[1], factors[0]):
        out = np.kron(out, f)
    return out


def ccx_op(control_a, control_b, target):
    u = np.zeros((DIM, DIM), dtype=complex)
    for v in range(DIM):
        w = v
        if (v >> control_a) & 1 and (v >> control_b) & 1:
            w = v ^ (1 << target)
        u[w, v] = 1.0
    return u


def gate_op(gate, qubits):
    if gate == "CCX":
        return ccx_op(*qubits)
    return single_qubit_op(_SINGLE[gate], qubits[0])


def column_op(column):
    u = np.identity(DIM, dtype=complex)
    for gate, qubits in column:
        u = gate_op(gate, qubits) @ u
    return u


def _all(gate):
    return tuple((gate, (q,)) for q in range(N_QUBITS))


def _oracle_stages(marked):
    # X on every qubit whose marked bit is 0 maps the marked state to |111>;
    # H-CCX-H on q3 is then a phase flip on |111>.
    flips_low = tuple(("X", (q,)) for q in (0, 1) if not (marked >> q) & 1)
    flip_q3 = () if (marked >> 2) & 1 else (("X", (2,)),)
    return [
        flips_low + flip_q3 + (("H", (2,)),),
        (("CCX", (0, 1, 2)),),
        flips_low + (("H", (2,)),) + flip_q3,
    ]


def _diffuser_stages():
    return [
        _all("H"),
        _all("X"),
        (("H", (2,)),),
        (("CCX", (0, 1, 2)),),
        (("H", (2,)),),
        _all("X"),
        _all("H"),
    ]


def build_circuit(config):
    stages = [_all("H")]
    for _ in range(config.iterations):
        stages += _oracle_stages(config.marked)
        stages += _diffuser_stages()
    return GroverCircuit(tuple(stages), config.marked, config.iterations)


def _check_stage(circuit, k):
    if not 1 <= k <= circuit.stage_count:
        raise ValueError(f"stage must be in [1, {circuit.stage_count}], got {k}")


def stage_states(circuit):
    """States after each stage, starting from |000>."""
    psi = basis_state(0, DIM)
    out = []
    for column in circuit.stages:
        psi = column_op(column) @ psi
        out.append(psi)
    return out


def state_at_stage(circuit, k):
    _check_stage(circuit, k)
    psi = basis_state(0, DIM)
    for column in circuit.stages[:k]:
        psi = column_op(column) @ psi
    return psi


def stage_distribution(circuit, k):
    return born_probabilities(state_at_stage(circuit, k))


def sample_stage(circuit, k, shots, sampler):
    return sample(stage_distribution(circuit, k), sampler, shots)


def full_trace(config):
    circuit = build_circuit(config)
    sampler = SeededSampler(config.seed)
    exact = np.array([born_probabilities(psi) for psi in stage_states(circuit)])
    samples = np.array([sample(p, sampler, config.shots_per_stage) for p in exact], dtype=np.int64)
    return TraceTable(samples, exact, config)


def block_op(circuit, first, last):
    """Composite operator of stages ``first..last`` (1-based, inclusive)."""
    u = np.identity(DIM, dtype=complex)
    for column in circuit.stages[first - 1:last]:
        u = column_op(column) @ u
    return u


def oracle_op(marked, iteration=1):
    circuit = build_circuit(GroverConfig(marked=marked, iterations=iteration))
    first = 2 + (iteration - 1) * (ORACLE_STAGES + DIFFUSER_STAGES)
    return block_op(circuit, first, first + ORACLE_STAGES - 1)


def diffuser_op(marked=6, iteration=1):
    circuit = build_circuit(GroverConfig(marked=marked, iterations=iteration))
    first = 2 + ORACLE_STAGES + (iteration - 1) * (ORACLE_STAGES + DIFFUSER_STAGES)
    return block_op(circuit, first, first + DIFFUSER_STAGES - 1)


def success_probability(iterations, n=DIM):
    """sin^2((2k+1) theta) with sin(theta) = 1/sqrt(n)."""
    theta = np.arcsin(1 / np.sqrt(n))
    return float(np.sin((2 * iterations + 1) * theta) ** 2)
