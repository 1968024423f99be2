"""Barrier-punching scheduler: zone trace, windows, mitigation, verification."""

from __future__ import annotations

import json

import pytest

from conftest import ISWAP_0, CZ_0, RZ_0, CZ_1, ISWAP_1, line_topology

from cyco import (
    BarrierRecord,
    DurationTable,
    InternalInvariantViolation,
    IterationRecord,
    Schedule,
    ScheduledGate,
    ScheduledLayer,
    Topology,
    all_pairs_distance,
    baseline_schedule,
    build_tddg,
    builtin_profile,
    compute_times,
    emit_scheduled_qasm,
    find_predecessors,
    interference_cost,
    layerize_crosstalk_safe,
    mitigate_schedule,
    parse_qasm,
    quantize_durations,
    random_circuit,
    schedule_and_punch,
    strip_identity_gates,
    verify_schedule,
)

TABLE = DurationTable(
    tau_ns=10.0, unit="cycles", entries={"rz": 1, "cz": 2, "iswap": 6, "sx": 3}
)

SQUARE = Topology(num_qubits=4, edges=frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))


def _pipeline(t: Topology, body: str):
    dm = all_pairs_distance(t)
    c = quantize_durations(TABLE, parse_qasm(f"OPENQASM 2.0;\nqreg q[{t.num_qubits}];\n{body}"))
    lc = layerize_crosstalk_safe(c, t, dm)
    return c, dm, lc, compute_times(build_tddg(lc, dm))


class TestFindPredecessors:
    def test_worked_example_second_layer(self, worked):
        got = find_predecessors(worked.graph.layers[1], worked.graph)
        assert [(g.id, est) for g, est in got] == [(CZ_1, 6), (ISWAP_1, 2)]

    def test_first_layer_starts_at_zero(self, worked):
        got = find_predecessors(worked.graph.layers[0], worked.graph)
        assert [(g.id, est) for g, est in got] == [(ISWAP_0, 0), (CZ_0, 0), (RZ_0, 0)]

    def test_chain_waits_for_duration(self):
        _, _, _, g = _pipeline(line_topology(2), "sx q[0];\nrz(1) q[0];\n")
        got = find_predecessors(g.layers[1], g)
        assert [(x.id, est) for x, est in got] == [(1, 3)]

    def test_requires_times(self):
        t = line_topology(2)
        dm = all_pairs_distance(t)
        c = quantize_durations(
            TABLE, parse_qasm("OPENQASM 2.0;\nqreg q[2];\nsx q[0];\nrz(1) q[0];\n")
        )
        g = build_tddg(layerize_crosstalk_safe(c, t, dm), dm)
        with pytest.raises(InternalInvariantViolation):
            find_predecessors(g.layers[1], g)


class TestWorkedExample:
    @pytest.fixture()
    def sched(self, worked):
        return schedule_and_punch(worked.graph)

    def test_trace(self, sched):
        assert sched.trace == (
            IterationRecord(
                lmft=2,
                new_gates=(ISWAP_1,),
                pre_sz=(CZ_0, RZ_0),
                cross_layer=(ISWAP_0,),
                pez=(ISWAP_1, ISWAP_0),
                post_sz=(CZ_1,),
            ),
            IterationRecord(
                lmft=6,
                new_gates=(CZ_1,),
                pre_sz=(ISWAP_0,),
                cross_layer=(ISWAP_1,),
                pez=(CZ_1, ISWAP_1),
                post_sz=(),
            ),
        )

    def test_windows(self, sched):
        spans = [(layer.start, layer.end) for layer in sched.layers]
        assert spans == [(0, 2), (2, 6), (6, 8)]
        assert [layer.lam for layer in sched.layers] == [2, 4, 2]
        starts = {sg.gate.id: sg.start for layer in sched.layers for sg in layer.gates}
        assert starts == {ISWAP_0: 0, CZ_0: 0, RZ_0: 0, CZ_1: 6, ISWAP_1: 2}
        members = [tuple(sg.gate.id for sg in layer.gates) for layer in sched.layers]
        assert members == [(CZ_0, RZ_0), (ISWAP_0,), (ISWAP_1, CZ_1)]

    def test_program_cycle_shrinks(self, sched, worked):
        assert baseline_schedule(worked.layered).program_cycle == 12
        assert sched.program_cycle == 8

    def test_barriers(self, sched):
        assert sched.barriers == (
            BarrierRecord(time=2, retained=(0, 1, 2, 4, 5, 6, 10, 11), punched=(3, 7, 8, 9)),
            BarrierRecord(time=6, retained=(0, 1, 3, 4, 5, 7, 10, 11), punched=(2, 6, 8, 9)),
        )
        assert sched.layers[0].barrier_qubits == sched.barriers[0].retained
        assert sched.layers[1].barrier_qubits == sched.barriers[1].retained
        assert sched.layers[2].barrier_qubits == ()

    def test_gate_order(self, sched):
        assert [g.id for g in sched.gate_order()] == [ISWAP_0, CZ_0, RZ_0, ISWAP_1, CZ_1]

    def test_verifies(self, sched, worked):
        report = verify_schedule(sched, worked.circuit, worked.topology, worked.dm)
        assert report.ok and report.violations == ()

    def test_emitted_qasm(self, sched):
        assert emit_scheduled_qasm(sched) == (
            "OPENQASM 2.0;\n"
            "qreg q[12];\n"
            "iswap q[3],q[7];\n"
            "cz q[4],q[5];\n"
            "rz(pi/4) q[10];\n"
            "barrier q[0],q[1],q[2],q[4],q[5],q[6],q[10],q[11];\n"
            "iswap q[8],q[9];\n"
            "barrier q[0],q[1],q[3],q[4],q[5],q[7],q[10],q[11];\n"
            "cz q[2],q[6];\n"
        )

    def test_mitigation_reports(self, sched, worked):
        mit = mitigate_schedule(sched, worked.topology)
        assert [r.ia for r in mit.interference] == [0, 0, 0]
        assert [r.ic for r in mit.interference] == [11, 6, 8]
        assert [r.clusters for r in mit.interference] == [(2, 2, 1), (2, 2), (2, 2)]
        # nothing active-active anywhere, so no identities are inserted
        assert len(mit.circuit.gates) == 5
        assert mit.program_cycle == 8
        assert verify_schedule(mit, worked.circuit, worked.topology, worked.dm).ok

    def test_json_shape(self, sched, worked):
        obj = mitigate_schedule(sched, worked.topology).to_json_obj()
        assert set(obj) == {"program_cycle", "layers", "interference"}
        assert obj["program_cycle"] == 8
        assert [layer["lambda"] for layer in obj["layers"]] == [2, 4, 2]
        assert obj["layers"][0]["gates"][0] == {
            "id": CZ_0, "kind": "cz", "qubits": [4, 5], "start": 0, "dur": 2,
        }
        assert obj["layers"][2]["barrier_qubits"] == []
        assert obj["interference"] == {"IA": 0, "IC": 25, "alpha": 0.5, "J": 12.5}


class TestBaselineSchedule:
    def test_structure(self, worked):
        base = baseline_schedule(worked.layered)
        spans = [(layer.start, layer.end) for layer in base.layers]
        assert spans == [(0, 6), (6, 12)]
        starts = {sg.gate.id: sg.start for layer in base.layers for sg in layer.gates}
        assert starts == {ISWAP_0: 0, CZ_0: 0, RZ_0: 0, CZ_1: 6, ISWAP_1: 6}
        assert base.barriers == (
            BarrierRecord(time=6, retained=tuple(range(12)), punched=()),
        )
        assert verify_schedule(base, worked.circuit, worked.topology, worked.dm).ok

    def test_emission_has_full_width_barrier(self, worked):
        text = emit_scheduled_qasm(baseline_schedule(worked.layered))
        assert "barrier " + ",".join(f"q[{q}]" for q in range(12)) + ";" in text

    def test_single_layer_matches_punched(self):
        t = line_topology(6)
        _, _, lc, g = _pipeline(t, "cz q[0],q[1];\ncz q[4],q[5];\n")
        assert schedule_and_punch(g) == baseline_schedule(lc)
        assert schedule_and_punch(g).barriers == ()

    def test_empty_circuit(self):
        t = line_topology(3)
        _, _, lc, g = _pipeline(t, "")
        s = schedule_and_punch(g)
        assert s.layers == () and s.program_cycle == 0
        assert emit_scheduled_qasm(s) == "OPENQASM 2.0;\nqreg q[3];\n"
        assert baseline_schedule(lc).program_cycle == 0


class TestVerifier:
    def _gates(self, t: Topology, body: str):
        c = quantize_durations(
            TABLE, parse_qasm(f"OPENQASM 2.0;\nqreg q[{t.num_qubits}];\n{body}")
        )
        return c, all_pairs_distance(t)

    def _wrap(self, c, placed, end):
        gates = tuple(
            ScheduledGate(gate=c.gates[i], start=start, baseline_layer=layer)
            for i, start, layer in placed
        )
        return Schedule(
            circuit=c,
            layers=(ScheduledLayer(gates=gates, start=0, end=end),),
            barriers=(),
        )

    def test_double_booked_qubit(self):
        t = line_topology(2)
        c, dm = self._gates(t, "cz q[0],q[1];\nrz(1) q[0];\n")
        s = self._wrap(c, [(0, 0, 0), (1, 0, 0)], 2)
        report = verify_schedule(s, c, t, dm)
        assert not report.ok
        assert any("double-booked" in v for v in report.violations)

    def test_data_order_violation(self):
        t = line_topology(2)
        c, dm = self._gates(t, "sx q[0];\ncz q[0],q[1];\n")
        # cz placed before the sx it depends on, without time overlap on q0
        s = self._wrap(c, [(0, 4, 0), (1, 0, 0)], 7)
        report = verify_schedule(s, c, t, dm)
        assert any("starts before" in v for v in report.violations)

    def test_crosstalk_overlap(self):
        t = line_topology(4)
        c, dm = self._gates(t, "cz q[0],q[1];\ncz q[2],q[3];\n")
        gates = (
            ScheduledGate(gate=c.gates[0], start=0, baseline_layer=0),
            ScheduledGate(gate=c.gates[1], start=1, baseline_layer=1),
        )
        s = Schedule(
            circuit=c,
            layers=(
                ScheduledLayer(gates=(gates[0],), start=0, end=2),
                ScheduledLayer(gates=(gates[1],), start=2, end=3),
            ),
            barriers=(),
        )
        report = verify_schedule(s, c, t, dm)
        assert any("within two hops" in v for v in report.violations)

    def test_same_layer_overlap_allowed(self):
        # neighbors in one baseline layer never trip the crosstalk check;
        # the layering stage already vouched for them
        t = line_topology(4)
        c, dm = self._gates(t, "cz q[0],q[1];\ncz q[2],q[3];\n")
        s = self._wrap(c, [(0, 0, 0), (1, 0, 0)], 2)
        assert verify_schedule(s, c, t, dm).ok

    def test_makespan_mismatch(self):
        t = line_topology(2)
        c, dm = self._gates(t, "cz q[0],q[1];\n")
        s = self._wrap(c, [(0, 0, 0)], 5)
        report = verify_schedule(s, c, t, dm)
        assert any("program cycle" in v for v in report.violations)

    def test_missing_gate(self):
        t = line_topology(2)
        c, dm = self._gates(t, "sx q[0];\nrz(1) q[0];\n")
        s = self._wrap(c, [(0, 0, 0)], 3)
        report = verify_schedule(s, c, t, dm)
        assert any("missing" in v for v in report.violations)


class TestMitigatedWindows:
    def test_square_pair_gets_identities(self):
        dm = all_pairs_distance(SQUARE)
        c = quantize_durations(
            TABLE, parse_qasm("OPENQASM 2.0;\nqreg q[4];\nrz(1) q[0];\nrz(1) q[1];\n")
        )
        lc = layerize_crosstalk_safe(c, SQUARE, dm)
        s = schedule_and_punch(compute_times(build_tddg(lc, dm)))
        mit = mitigate_schedule(s, SQUARE)
        assert [r.ia for r in mit.interference] == [0]
        assert [r.ic for r in mit.interference] == [3]
        added = [sg for sg in mit.all_gates() if sg.synthetic]
        assert sorted(sg.gate.qubits[0] for sg in added) == [2, 3]
        assert all(sg.gate.is_identity and sg.start == 0 for sg in added)
        assert mit.program_cycle == s.program_cycle == 1
        assert verify_schedule(mit, c, SQUARE, dm).ok

    def test_gate_order_ignores_synthetic(self):
        dm = all_pairs_distance(SQUARE)
        c = quantize_durations(
            TABLE, parse_qasm("OPENQASM 2.0;\nqreg q[4];\nrz(1) q[0];\nrz(1) q[1];\n")
        )
        lc = layerize_crosstalk_safe(c, SQUARE, dm)
        mit = mitigate_schedule(schedule_and_punch(compute_times(build_tddg(lc, dm))), SQUARE)
        assert [g.id for g in mit.gate_order()] == [0, 1]


class TestScheduleProperties:
    @pytest.mark.parametrize(
        "profile,gates,seeds",
        [("grid:3x4", 40, range(12)), ("grid:2x5", 30, range(12, 20))],
    )
    def test_random_sweep(self, profile, gates, seeds):
        t, table = builtin_profile(profile)
        dm = all_pairs_distance(t)
        for seed in seeds:
            c = strip_identity_gates(random_circuit(t, table, gates, seed))
            lc = layerize_crosstalk_safe(c, t, dm)
            g = compute_times(build_tddg(lc, dm))
            s = schedule_and_punch(g)
            base = baseline_schedule(lc)

            assert s.program_cycle <= base.program_cycle
            assert verify_schedule(s, c, t, dm).ok
            assert verify_schedule(base, c, t, dm).ok

            # windows tile [0, program_cycle) and close exactly on a gate end
            assert s.layers[0].start == 0
            for a, b in zip(s.layers, s.layers[1:]):
                assert a.end == b.start and a.end > a.start
            for layer in s.layers:
                assert layer.end == max(sg.end for sg in layer.gates)

            assert len(s.barriers) == len(s.layers) - 1
            universe = set(range(c.num_qubits))
            for k, barrier in enumerate(s.barriers):
                assert barrier.time == s.layers[k].end
                assert set(barrier.retained) | set(barrier.punched) == universe
                assert not set(barrier.retained) & set(barrier.punched)
                assert s.layers[k].barrier_qubits == barrier.retained
            assert s.layers[-1].barrier_qubits == ()

            # each gate exactly once, and dependencies never overlap
            seen = sorted(sg.gate.id for sg in s.all_gates())
            assert seen == list(range(len(c.gates)))
            ends = {sg.gate.id: sg.end for sg in s.all_gates()}
            starts = {sg.gate.id: sg.start for sg in s.all_gates()}
            for (u, v) in g.kinds:
                assert starts[v] >= ends[u]

            mit = mitigate_schedule(s, t)
            assert mit.program_cycle == s.program_cycle
            assert verify_schedule(mit, c, t, dm).ok
            for layer, r in zip(s.layers, mit.interference):
                running = tuple(
                    sg.gate
                    for sg in s.all_gates()
                    if sg.start < layer.end and sg.end > layer.start
                )
                before = interference_cost(running, t, mit.alpha)
                assert 0 <= r.ia <= before.ia
                assert r.ia + r.ic == before.ia + before.ic

    @pytest.mark.parametrize("seed", range(6))
    def test_emitted_qasm_parses_back_in_order(self, seed):
        t, table = builtin_profile("grid:3x4")
        dm = all_pairs_distance(t)
        c = strip_identity_gates(random_circuit(t, table, 35, seed))
        lc = layerize_crosstalk_safe(c, t, dm)
        s = schedule_and_punch(compute_times(build_tddg(lc, dm)))
        back = parse_qasm(emit_scheduled_qasm(s))
        want = [(g.kind.name, g.qubits, g.param) for g in s.gate_order()]
        got = [(g.kind.name, g.qubits, g.param) for g in back.gates]
        assert got == want

    def test_json_deterministic(self, worked):
        a = mitigate_schedule(schedule_and_punch(worked.graph), worked.topology)
        b = mitigate_schedule(schedule_and_punch(worked.graph), worked.topology)
        assert json.dumps(a.to_json_obj(), sort_keys=True) == json.dumps(
            b.to_json_obj(), sort_keys=True
        )
