"""Cycle-aware crosstalk-safe gate scheduling with barrier punching.

Pipeline: parse an OpenQASM 2.0 circuit, quantize gate durations into clock
cycles, build crosstalk-safe baseline layers, derive the time-and-distance
dependency graph, then punch layer barriers so finished gates' qubits move on
early while two-hop crosstalk separation is preserved.
"""

from .baseline import (
    DEFAULT_ALPHA,
    InterferenceReport,
    LayeredCircuit,
    identity_targets,
    insert_identity_mitigation,
    interference_cost,
    layerize_crosstalk_safe,
)
from .circuit import (
    Circuit,
    DurationTable,
    GateInstance,
    GateKind,
    KNOWN_KINDS,
    apply_layout,
    emit_qasm,
    gate_names,
    parse_qasm,
    quantize_durations,
    strip_identity_gates,
)
from .errors import (
    BadDistribution,
    BadIndex,
    BadInput,
    ConnectivityViolation,
    CycoError,
    InternalInvariantViolation,
    MissingDuration,
    ParseError,
    UnknownGate,
    UnknownProfile,
)
from .generate import random_circuit
from .metrics import (
    BenchRecord,
    bench_report,
    emit_gantt,
    hellinger_distance,
    hellinger_fidelity,
    parse_bench_report,
    speedup_ratio,
    total_time,
)
from .scheduler import (
    BarrierRecord,
    IterationRecord,
    Schedule,
    ScheduledGate,
    ScheduledLayer,
    VerificationReport,
    baseline_schedule,
    emit_scheduled_qasm,
    find_predecessors,
    mitigate_schedule,
    schedule_and_punch,
    verify_schedule,
)
from .simulator import probabilities, statevector, states_equivalent
from .tddg import (
    Tddg,
    build_tddg,
    compute_times,
    cross_layer_gates,
    filter_gate_candidates,
)
from .topology import (
    BUILTIN_PROFILES,
    UNREACHABLE,
    DistanceMatrix,
    Topology,
    all_pairs_distance,
    builtin_profile,
    gate_distance,
    grid_topology,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_PROFILES",
    "BadDistribution",
    "BadIndex",
    "BadInput",
    "BarrierRecord",
    "BenchRecord",
    "Circuit",
    "ConnectivityViolation",
    "CycoError",
    "DEFAULT_ALPHA",
    "DistanceMatrix",
    "DurationTable",
    "GateInstance",
    "GateKind",
    "InterferenceReport",
    "InternalInvariantViolation",
    "IterationRecord",
    "KNOWN_KINDS",
    "LayeredCircuit",
    "MissingDuration",
    "ParseError",
    "Schedule",
    "ScheduledGate",
    "ScheduledLayer",
    "Tddg",
    "Topology",
    "UNREACHABLE",
    "UnknownGate",
    "UnknownProfile",
    "VerificationReport",
    "all_pairs_distance",
    "apply_layout",
    "baseline_schedule",
    "bench_report",
    "build_tddg",
    "builtin_profile",
    "compute_times",
    "cross_layer_gates",
    "emit_gantt",
    "emit_qasm",
    "emit_scheduled_qasm",
    "filter_gate_candidates",
    "find_predecessors",
    "gate_distance",
    "gate_names",
    "grid_topology",
    "hellinger_distance",
    "hellinger_fidelity",
    "identity_targets",
    "insert_identity_mitigation",
    "interference_cost",
    "layerize_crosstalk_safe",
    "mitigate_schedule",
    "parse_bench_report",
    "parse_qasm",
    "probabilities",
    "quantize_durations",
    "random_circuit",
    "schedule_and_punch",
    "speedup_ratio",
    "statevector",
    "states_equivalent",
    "strip_identity_gates",
    "total_time",
    "verify_schedule",
]
