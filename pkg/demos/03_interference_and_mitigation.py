"""
Counting crosstalk and calming it with identities
=================================================

Always-on ZZ coupling makes neighbors interfere whether they are busy or
idle. Per layer we count two kinds of coupling edges: active-active (IA,
both endpoints running gates - the harmful clusters) and active-idle (IC,
a running qubit next to a parked one). The weighted score J = IA + alpha*IC
summarizes a layer; scheduling identities onto chosen idle neighbors turns
active-active edges into milder active-idle ones without stretching the
schedule.
"""

from cyco import (
    Topology,
    all_pairs_distance,
    builtin_profile,
    insert_identity_mitigation,
    interference_cost,
    layerize_crosstalk_safe,
    parse_qasm,
    quantize_durations,
)

# A four-qubit square: 0-1 / 1-2 / 2-3 / 3-0.
square = Topology(num_qubits=4, edges=frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))
dm = all_pairs_distance(square)
_, durations = builtin_profile("grid:2x2")


def show(title, gates):
    r = interference_cost(gates, square)
    print(f"{title}: IA={r.ia} IC={r.ic} clusters={r.clusters} J={r.j:.1f}")


def circ(body):
    return quantize_durations(durations, parse_qasm(f"OPENQASM 2.0;\nqreg q[4];\n{body}"))


# A lone two-qubit gate: its own edge is the intended interaction, not
# interference, so IA stays 0; both endpoints touch idle neighbors -> IC=2.
show("cz(0,1) alone         ", circ("cz q[0],q[1];\n").gates)

# Two single-qubit gates on adjacent qubits: the 0-1 edge is now pure
# interference (IA=1), and each active qubit still faces an idle neighbor.
show("rz(0),rz(1) adjacent  ", circ("rz(1) q[0];\nrz(1) q[1];\n").gates)

# Idle-idle edges never count: a lone rz contributes only its own two
# active-idle edges, and the untouched 1-2, 2-3 edges are free.
show("rz(0) alone           ", circ("rz(1) q[0];\n").gates)

# Mitigation: insert an identity on an idle neighbor of each active-active
# edge. The treated edge is reported as active-idle afterwards, and the
# identities (1 cycle) never lengthen a layer.
pair = circ("rz(1) q[0];\nrz(1) q[1];\n")
layered = layerize_crosstalk_safe(pair, square, dm)
mitigated = insert_identity_mitigation(layered, square)

print("\nafter identity insertion:")
for i, report in enumerate(mitigated.interference):
    print(f"layer {i}: IA={report.ia} IC={report.ic} J={report.j:.1f}")
added = [g for g in mitigated.circuit.gates if g.is_identity]
print("identities added on qubits:", sorted(g.qubits[0] for g in added))
print("program cycle before/after:", layered.program_cycle, "/", mitigated.program_cycle)

# alpha weights how much an active-idle edge costs relative to active-active.
raw = interference_cost(pair.gates, square, alpha=0.5)
print("\nJ at alpha=0.5:", raw.j, " at alpha=0.1:", interference_cost(pair.gates, square, alpha=0.1).j)
