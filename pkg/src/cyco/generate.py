"""Seeded random circuit generation for property tests and benchmarks."""

from __future__ import annotations

import random

from .circuit import Circuit, DurationTable, GateInstance, IDENTITY, KNOWN_KINDS
from .errors import BadInput
from .topology import Topology

# parameter slots per parameterized kind; everything else takes none
_PARAM_COUNT = {
    "rx": 1, "ry": 1, "rz": 1, "p": 1, "u1": 1, "u2": 2, "u3": 3,
    "crx": 1, "cry": 1, "crz": 1, "cp": 1, "cu1": 1,
    "rzz": 1, "rxx": 1, "ryy": 1, "phasedxz": 3,
}


def _params(rng: random.Random, count: int) -> str:
    return ",".join(f"{rng.randint(1, 7)}*pi/4" for _ in range(count))


def random_circuit(
    t: Topology,
    table: DurationTable,
    n_gates: int,
    seed: int,
    two_qubit_fraction: float = 0.4,
) -> Circuit:
    """Deterministic random circuit drawing kinds from the duration table.

    Two-qubit gates land only on coupled usable pairs; identical arguments
    always produce the identical circuit.
    """
    rng = random.Random(seed)
    known = {k for k in table.entries if k in KNOWN_KINDS}
    one_q = sorted(k for k in known if KNOWN_KINDS[k].arity == 1 and k != IDENTITY)
    two_q = sorted(k for k in known if KNOWN_KINDS[k].arity == 2)
    usable = t.usable()
    if not usable:
        raise BadInput("topology has no usable qubits")
    if not one_q:
        raise BadInput("duration table lists no usable one-qubit gate kinds")
    usable_set = set(usable)
    edges = sorted(e for e in t.edges if e[0] in usable_set and e[1] in usable_set)
    gates = []
    for i in range(n_gates):
        if two_q and edges and rng.random() < two_qubit_fraction:
            name = rng.choice(two_q)
            a, b = rng.choice(edges)
            qubits = (b, a) if rng.random() < 0.5 else (a, b)
        else:
            name = rng.choice(one_q)
            qubits = (rng.choice(usable),)
        count = _PARAM_COUNT.get(name, 0)
        gates.append(
            GateInstance(
                id=i,
                kind=KNOWN_KINDS[name],
                qubits=qubits,
                param=_params(rng, count) if count else None,
                duration_cycles=table.cycles(name),
            )
        )
    return Circuit(num_qubits=t.num_qubits, gates=tuple(gates))
