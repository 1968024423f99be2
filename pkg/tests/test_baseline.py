"""Crosstalk-safe layering and interference accounting."""

from __future__ import annotations

import pytest

from conftest import line_topology

from cyco import (
    BadIndex,
    ConnectivityViolation,
    DurationTable,
    KNOWN_KINDS,
    GateInstance,
    Topology,
    all_pairs_distance,
    builtin_profile,
    gate_distance,
    grid_topology,
    identity_targets,
    insert_identity_mitigation,
    interference_cost,
    layerize_crosstalk_safe,
    parse_qasm,
    quantize_durations,
    random_circuit,
    strip_identity_gates,
)

SQUARE = Topology(num_qubits=4, edges=frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))


def _gates(spec: list[tuple[str, tuple[int, ...]]]) -> tuple[GateInstance, ...]:
    return tuple(
        GateInstance(id=i, kind=KNOWN_KINDS[name], qubits=qs, duration_cycles=1)
        for i, (name, qs) in enumerate(spec)
    )


def _circuit_on(t: Topology, body: str):
    table = DurationTable(
        tau_ns=10.0, unit="cycles", entries={"rz": 1, "cz": 2, "iswap": 6, "sx": 1}
    )
    c = parse_qasm(f"OPENQASM 2.0;\nqreg q[{t.num_qubits}];\n{body}")
    return quantize_durations(table, c)


class TestLayerize:
    def test_worked_example_layers(self, worked):
        assert worked.layered.layers == ((0, 1, 2), (3, 4))
        assert worked.layered.program_cycle == 12
        assert [worked.layered.layer_cycles(i) for i in range(2)] == [6, 6]

    def test_single_gate(self):
        t = line_topology(3)
        lc = layerize_crosstalk_safe(
            _circuit_on(t, "cz q[0],q[1];\n"), t, all_pairs_distance(t)
        )
        assert lc.layers == ((0,),)
        assert lc.program_cycle == 2

    def test_distant_two_qubit_gates_share_layer(self):
        t = line_topology(6)
        lc = layerize_crosstalk_safe(
            _circuit_on(t, "cz q[0],q[1];\ncz q[4],q[5];\n"), t, all_pairs_distance(t)
        )
        assert lc.layers == ((0, 1),)

    def test_close_two_qubit_gates_split(self):
        t = line_topology(6)
        lc = layerize_crosstalk_safe(
            _circuit_on(t, "cz q[0],q[1];\ncz q[2],q[3];\n"), t, all_pairs_distance(t)
        )
        assert lc.layers == ((0,), (1,))

    def test_one_qubit_gates_ignore_distance_rule(self):
        t = line_topology(3)
        lc = layerize_crosstalk_safe(
            _circuit_on(t, "rz(1) q[0];\nrz(1) q[1];\nrz(1) q[2];\n"),
            t,
            all_pairs_distance(t),
        )
        assert lc.layers == ((0, 1, 2),)

    def test_shared_qubit_forces_new_layer(self):
        t = line_topology(3)
        lc = layerize_crosstalk_safe(
            _circuit_on(t, "rz(1) q[0];\nsx q[0];\n"), t, all_pairs_distance(t)
        )
        assert lc.layers == ((0,), (1,))

    def test_uncoupled_pair_rejected(self):
        t = line_topology(4)
        with pytest.raises(ConnectivityViolation):
            layerize_crosstalk_safe(
                _circuit_on(t, "cz q[0],q[3];\n"), t, all_pairs_distance(t)
            )

    def test_unusable_qubit_rejected(self):
        t = Topology(num_qubits=3, edges=frozenset({(0, 1), (1, 2)}), unusable=frozenset({2}))
        with pytest.raises(ConnectivityViolation):
            layerize_crosstalk_safe(
                _circuit_on(t, "rz(1) q[2];\n"), t, all_pairs_distance(t)
            )

    def test_out_of_range_qubit_rejected(self):
        t = line_topology(2)
        c = _circuit_on(line_topology(5), "rz(1) q[4];\n")
        with pytest.raises(BadIndex):
            layerize_crosstalk_safe(c, t, all_pairs_distance(t))

    @pytest.mark.parametrize("seed", range(25))
    def test_layering_invariants_random(self, seed):
        t, table = builtin_profile("grid:3x5")
        dm = all_pairs_distance(t)
        c = strip_identity_gates(random_circuit(t, table, 50, seed))
        lc = layerize_crosstalk_safe(c, t, dm)

        placed = [i for layer in lc.layers for i in layer]
        assert sorted(placed) == list(range(len(c.gates)))  # each gate exactly once

        layer_of = {i: l for l, layer in enumerate(lc.layers) for i in layer}
        last: dict[int, int] = {}
        for g in c.gates:  # data order: later gate on a qubit sits in a later layer
            for q in g.qubits:
                if q in last:
                    assert layer_of[g.id] > last[q]
                last[q] = layer_of[g.id]

        for layer in lc.layers:
            gates = [c.gates[i] for i in layer]
            used: set[int] = set()
            for g in gates:
                assert not used.intersection(g.qubits)
                used.update(g.qubits)
            twoq = [g for g in gates if g.is_two_qubit]
            for i, a in enumerate(twoq):
                for b in twoq[i + 1:]:
                    assert gate_distance(a, b, dm) >= 2

    def test_greedy_is_asap(self):
        # a one-qubit gate slots back into the earliest admissible layer
        t = line_topology(4)
        lc = layerize_crosstalk_safe(
            _circuit_on(t, "cz q[0],q[1];\nsx q[0];\nrz(1) q[3];\n"),
            t,
            all_pairs_distance(t),
        )
        assert lc.layers == ((0, 2), (1,))


class TestInterference:
    def test_square_single_cz(self):
        report = interference_cost(_gates([("cz", (0, 1))]), SQUARE)
        assert (report.ia, report.ic) == (0, 2)
        assert report.j == pytest.approx(1.0)  # 0 + 0.5 * 2
        assert report.clusters == (2,)

    def test_square_two_rz(self):
        report = interference_cost(_gates([("rz", (0,)), ("rz", (1,))]), SQUARE)
        assert (report.ia, report.ic) == (1, 2)
        assert report.clusters == (2,)

    def test_empty_layer(self):
        report = interference_cost((), SQUARE)
        assert (report.ia, report.ic, report.j) == (0, 0, 0)
        assert report.clusters == ()

    def test_j_linear_in_alpha(self):
        gates = _gates([("rz", (0,)), ("rz", (2,))])
        low = interference_cost(gates, SQUARE, alpha=0.25)
        high = interference_cost(gates, SQUARE, alpha=0.75)
        assert high.j - low.j == pytest.approx(0.5 * low.ic)

    def test_unusable_edges_skipped(self):
        t = Topology(
            num_qubits=4,
            edges=frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}),
            unusable=frozenset({3}),
        )
        report = interference_cost(_gates([("cz", (0, 1))]), t)
        assert (report.ia, report.ic) == (0, 1)  # only edge 1-2 counts toward IC

    def test_cluster_sizes(self):
        t = grid_topology(1, 6)
        gates = _gates([("cz", (0, 1)), ("rz", (2,)), ("rz", (4,))])
        report = interference_cost(gates, t)
        # active {0,1,2} form one chain, {4} stands alone
        assert report.clusters == (3, 1)
        assert report.ia == 1  # edge 1-2 spans two different gates


class TestMitigation:
    def test_two_rz_square_case(self):
        gates = _gates([("rz", (0,)), ("rz", (1,))])
        targets, treated = identity_targets(gates, {0, 1, 2, 3}, SQUARE)
        assert targets == [2, 3] and treated == 1

    def test_layer_with_two_qubit_gate_unchanged(self):
        gates = _gates([("cz", (0, 1))])
        targets, treated = identity_targets(gates, {0, 1, 2, 3}, SQUARE)
        assert targets == [] and treated == 0

    def test_insert_identities_reclassifies(self):
        t = SQUARE
        lc = layerize_crosstalk_safe(
            _circuit_on(t, "rz(1) q[0];\nrz(1) q[1];\n"), t, all_pairs_distance(t)
        )
        mitigated = insert_identity_mitigation(lc, t)
        assert mitigated.interference is not None
        report = mitigated.interference[0]
        assert report.ia == 0
        assert report.ic == 3  # 2 original + 1 reclassified
        assert mitigated.program_cycle == lc.program_cycle
        assert len(mitigated.layers) == len(lc.layers)
        added = mitigated.layers[0][len(lc.layers[0]):]
        assert [mitigated.circuit.gates[i].kind.name for i in added] == ["id", "id"]
        assert [mitigated.circuit.gates[i].qubits[0] for i in added] == [2, 3]

    def test_mitigated_layers_still_exclusive(self):
        t, table = builtin_profile("grid:3x4")
        dm = all_pairs_distance(t)
        c = strip_identity_gates(random_circuit(t, table, 40, 3))
        lc = layerize_crosstalk_safe(c, t, dm)
        mitigated = insert_identity_mitigation(lc, t)
        for index in range(len(mitigated.layers)):
            used: set[int] = set()
            for g in mitigated.layer_gates(index):
                assert not used.intersection(g.qubits)
                used.update(g.qubits)
        assert mitigated.program_cycle == lc.program_cycle

    def test_mitigation_never_increases_ia(self):
        t, table = builtin_profile("grid:2x4")
        dm = all_pairs_distance(t)
        for seed in range(10):
            c = strip_identity_gates(random_circuit(t, table, 25, seed))
            lc = layerize_crosstalk_safe(c, t, dm)
            mitigated = insert_identity_mitigation(lc, t)
            for index, report in enumerate(mitigated.interference):
                raw = interference_cost(lc.layer_gates(index), t)
                assert report.ia <= raw.ia
                assert report.ia + report.ic == raw.ia + raw.ic
