"""Barrier-punching scheduler over the dependency graph.

The baseline stalls every qubit at every layer boundary. This scheduler walks
consecutive layer pairs and, at each step, lets the next layer's earliest
gates start as soon as their dependencies finish (the punch), keeps barriers
only for gates that are genuinely done (Pre-SZ), and carries still-running
gates across the boundary (cross-layer gates). The result is a sequence of
boundary windows whose widths telescope to the final makespan.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from .baseline import (
    DEFAULT_ALPHA,
    InterferenceReport,
    LayeredCircuit,
    identity_targets,
    interference_cost,
)
from .circuit import Circuit, GateInstance, GateKind, IDENTITY
from .errors import InternalInvariantViolation
from .tddg import Tddg, compute_times
from .topology import DistanceMatrix, Topology, gate_distance


@dataclass(frozen=True)
class ScheduledGate:
    """A gate with its absolute start cycle."""

    gate: GateInstance
    start: int
    baseline_layer: int
    synthetic: bool = False  # mitigation identity, not program content

    @property
    def end(self) -> int:
        return self.start + self.gate.cycles


@dataclass(frozen=True)
class ScheduledLayer:
    """A boundary window; punched gates may start before or finish after it."""

    gates: tuple[ScheduledGate, ...]
    start: int
    end: int
    barrier_qubits: tuple[int, ...] = ()

    @property
    def lam(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class BarrierRecord:
    """One punched boundary: when it falls, who waits, who passes through."""

    time: int
    retained: tuple[int, ...]
    punched: tuple[int, ...]


@dataclass(frozen=True)
class IterationRecord:
    """Zone trace of one scheduling step, by gate id."""

    lmft: int
    new_gates: tuple[int, ...]
    pre_sz: tuple[int, ...]
    cross_layer: tuple[int, ...]
    pez: tuple[int, ...]
    post_sz: tuple[int, ...]


@dataclass(frozen=True)
class Schedule:
    circuit: Circuit
    layers: tuple[ScheduledLayer, ...]
    barriers: tuple[BarrierRecord, ...]
    trace: tuple[IterationRecord, ...] = ()
    interference: tuple[InterferenceReport, ...] | None = None
    alpha: float = DEFAULT_ALPHA

    @property
    def program_cycle(self) -> int:
        return self.layers[-1].end if self.layers else 0

    def all_gates(self) -> tuple[ScheduledGate, ...]:
        return tuple(sg for layer in self.layers for sg in layer.gates)

    def gate_order(self) -> tuple[GateInstance, ...]:
        """Program gates in executed order (synthetic identities excluded)."""
        real = [sg for sg in self.all_gates() if not sg.synthetic]
        return tuple(sg.gate for sg in sorted(real, key=lambda s: (s.start, s.gate.id)))

    def to_json_obj(self) -> dict:
        if self.interference is not None:
            ia = sum(r.ia for r in self.interference)
            ic = sum(r.ic for r in self.interference)
        else:
            ia = ic = 0
        return {
            "program_cycle": self.program_cycle,
            "layers": [
                {
                    "lambda": layer.lam,
                    "gates": [
                        {
                            "id": sg.gate.id,
                            "kind": sg.gate.kind.name,
                            "qubits": list(sg.gate.qubits),
                            "start": sg.start,
                            "dur": sg.gate.cycles,
                        }
                        for sg in layer.gates
                    ],
                    "barrier_qubits": list(layer.barrier_qubits),
                }
                for layer in self.layers
            ],
            "interference": {
                "IA": ia,
                "IC": ic,
                "alpha": self.alpha,
                "J": ia + self.alpha * ic,
            },
        }


def find_predecessors(
    layer: tuple[int, ...], g: Tddg
) -> list[tuple[GateInstance, int]]:
    """Earliest start (max predecessor finish) for every gate of a layer."""
    if not g.has_times:
        raise InternalInvariantViolation("find_predecessors needs compute_times first")
    return [
        (g.gate(i), max((g.gft[p] for p in g.preds[i]), default=0)) for i in layer
    ]


def schedule_and_punch(g: Tddg) -> Schedule:
    """Punch layer boundaries per the zone discipline; see the module docstring.

    Each step takes the smallest earliest-start among the next layer's gates
    as the new boundary (LMFT), retires previous-layer gates already finished
    by then, and forms the punched-zone set from the newly started gates plus
    everything still running.
    """
    c = g.circuit
    if not c.gates:
        return Schedule(circuit=c, layers=(), barriers=())
    if not g.has_times:
        compute_times(g)

    layer_of = {i: l for l, layer in enumerate(g.layers) for i in layer}
    gft = dict(g.gft)
    retired: set[int] = set()
    remaining = deque(list(layer) for layer in g.layers[1:])
    prev = list(g.layers[0])
    boundary = 0
    committed: list[tuple[list[int], int]] = []
    barriers: list[BarrierRecord] = []
    trace: list[IterationRecord] = []
    universe = set(range(c.num_qubits))

    while remaining:
        cur = remaining.popleft()
        est = {
            i: max(
                boundary,
                max((gft[p] for p in g.preds[i] if p not in retired), default=0),
            )
            for i in cur
        }
        lmft = min(est.values())
        new_gates = [i for i in cur if est[i] == lmft]
        pre_sz = [i for i in prev if gft[i] <= lmft]
        cross = [i for i in prev if gft[i] > lmft]
        pez = new_gates + cross
        for i in new_gates:
            gft[i] = lmft + c.gates[i].cycles
        retired.update(pre_sz)
        post = [i for i in cur if est[i] != lmft]
        trace.append(
            IterationRecord(
                lmft=lmft,
                new_gates=tuple(new_gates),
                pre_sz=tuple(pre_sz),
                cross_layer=tuple(cross),
                pez=tuple(pez),
                post_sz=tuple(post),
            )
        )
        if pre_sz:
            punched = sorted({q for i in pez for q in c.gates[i].qubits})
            committed.append((pre_sz, lmft))
            barriers.append(
                BarrierRecord(
                    time=lmft,
                    retained=tuple(sorted(universe - set(punched))),
                    punched=tuple(punched),
                )
            )
        if post:
            remaining.appendleft(post)
        prev = pez
        boundary = lmft

    committed.append((prev, max(gft[i] for i in prev)))

    layers: list[ScheduledLayer] = []
    window_start = 0
    for k, (ids, end) in enumerate(committed):
        gates = tuple(
            sorted(
                (
                    ScheduledGate(
                        gate=c.gates[i],
                        start=gft[i] - c.gates[i].cycles,
                        baseline_layer=layer_of[i],
                    )
                    for i in ids
                ),
                key=lambda sg: (sg.start, sg.gate.id),
            )
        )
        barrier = barriers[k].retained if k < len(barriers) else ()
        layers.append(
            ScheduledLayer(gates=gates, start=window_start, end=end, barrier_qubits=barrier)
        )
        window_start = end

    s = Schedule(circuit=c, layers=tuple(layers), barriers=tuple(barriers), trace=tuple(trace))
    if sum(layer.lam for layer in s.layers) != s.program_cycle:
        raise InternalInvariantViolation("window widths do not telescope to the makespan")
    return s


def baseline_schedule(lc: LayeredCircuit) -> Schedule:
    """Full-barrier schedule: every layer is a window, every gate starts with it."""
    c = lc.circuit
    layers: list[ScheduledLayer] = []
    barriers: list[BarrierRecord] = []
    universe = tuple(range(c.num_qubits))
    t0 = 0
    for i in range(len(lc.layers)):
        lam = lc.layer_cycles(i)
        gates = tuple(
            ScheduledGate(gate=g, start=t0, baseline_layer=i)
            for g in lc.layer_gates(i)
        )
        last = i == len(lc.layers) - 1
        layers.append(
            ScheduledLayer(
                gates=gates,
                start=t0,
                end=t0 + lam,
                barrier_qubits=() if last else universe,
            )
        )
        if not last:
            barriers.append(BarrierRecord(time=t0 + lam, retained=universe, punched=()))
        t0 += lam
    return Schedule(circuit=c, layers=tuple(layers), barriers=tuple(barriers))


_ID_KIND = GateKind(IDENTITY, 1)


def mitigate_schedule(
    s: Schedule, t: Topology, alpha: float = DEFAULT_ALPHA
) -> Schedule:
    """Insert mitigating identities per window and attach interference reports.

    A window's gate set is everything running during it, including punched-in
    gates from neighboring windows. Identities go on qubits idle for the whole
    window; treated active-active edges are reported as active-idle.
    """
    usable = set(t.usable())
    all_gates = s.all_gates()
    circuit_gates = list(s.circuit.gates)
    new_layers: list[ScheduledLayer] = []
    reports: list[InterferenceReport] = []
    for layer in s.layers:
        running = tuple(
            sg.gate
            for sg in all_gates
            if not sg.synthetic and sg.start < layer.end and sg.end > layer.start
        )
        base = interference_cost(running, t, alpha)
        targets, treated = identity_targets(running, usable, t)
        extra = []
        for q in sorted(targets):
            gate = GateInstance(
                id=len(circuit_gates), kind=_ID_KIND, qubits=(q,), duration_cycles=1
            )
            circuit_gates.append(gate)
            extra.append(
                ScheduledGate(
                    gate=gate, start=layer.start, baseline_layer=-1, synthetic=True
                )
            )
        new_layers.append(replace(layer, gates=layer.gates + tuple(extra)))
        reports.append(
            InterferenceReport(
                ia=base.ia - treated,
                ic=base.ic + treated,
                alpha=alpha,
                clusters=base.clusters,
            )
        )
    return replace(
        s,
        circuit=replace(s.circuit, gates=tuple(circuit_gates)),
        layers=tuple(new_layers),
        interference=tuple(reports),
        alpha=alpha,
    )


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple[str, ...] = ()


def verify_schedule(
    s: Schedule, c: Circuit, t: Topology, dm: DistanceMatrix
) -> VerificationReport:
    """Check qubit exclusivity, data order, crosstalk safety, and cycle sums."""
    violations: list[str] = []
    scheduled = s.all_gates()

    by_qubit: dict[int, list[ScheduledGate]] = {}
    for sg in scheduled:
        for q in sg.gate.qubits:
            by_qubit.setdefault(q, []).append(sg)
    for q, occupants in sorted(by_qubit.items()):
        occupants.sort(key=lambda sg: (sg.start, sg.gate.id))
        for a, b in zip(occupants, occupants[1:]):
            if b.start < a.end:
                violations.append(
                    f"qubit {q} double-booked by gates {a.gate.id} and {b.gate.id}"
                )

    timing = {sg.gate.id: sg for sg in scheduled if not sg.synthetic}
    last_user: dict[int, GateInstance] = {}
    for g in c.gates:
        if g.is_identity and g.id not in timing:
            continue  # identities are dropped before layering
        for q in g.qubits:
            earlier = last_user.get(q)
            if earlier is not None:
                if g.id not in timing or earlier.id not in timing:
                    violations.append(f"gate {g.id} or {earlier.id} missing from schedule")
                elif timing[g.id].start < timing[earlier.id].end:
                    violations.append(
                        f"gate {g.id} starts before gate {earlier.id} finishes on qubit {q}"
                    )
            last_user[q] = g

    real = sorted(
        (sg for sg in scheduled if not sg.synthetic),
        key=lambda sg: (sg.start, sg.gate.id),
    )
    running: list[ScheduledGate] = []
    for sg in real:
        running = [r for r in running if r.end > sg.start]
        for r in running:
            if r.baseline_layer != sg.baseline_layer:
                if gate_distance(r.gate, sg.gate, dm) < 2:
                    violations.append(
                        f"gates {r.gate.id} and {sg.gate.id} overlap within two hops"
                    )
        running.append(sg)

    if s.layers:
        lam_sum = sum(layer.lam for layer in s.layers)
        makespan = max(sg.end for sg in scheduled)
        if lam_sum != s.program_cycle or makespan != s.program_cycle:
            violations.append(
                f"program cycle {s.program_cycle} != window sum {lam_sum} or makespan {makespan}"
            )
    return VerificationReport(ok=not violations, violations=tuple(violations))


def emit_scheduled_qasm(s: Schedule) -> str:
    """OpenQASM 2.0 with gates in start order and punched barrier statements."""
    c = s.circuit
    lines = ["OPENQASM 2.0;", f"qreg q[{c.num_qubits}];"]
    if c.classical_bits:
        lines.append(f"creg c[{c.classical_bits}];")
    items: list[tuple[tuple[int, int, int], str]] = []
    for sg in s.all_gates():
        g = sg.gate
        param = f"({g.param})" if g.param is not None else ""
        operands = ",".join(f"q[{q}]" for q in g.qubits)
        items.append(((sg.start, 1, g.id), f"{g.kind.name}{param} {operands};"))
    for k, b in enumerate(s.barriers):
        if b.retained:
            operands = ",".join(f"q[{q}]" for q in b.retained)
            items.append(((b.time, 0, k), f"barrier {operands};"))
    lines += [text for _, text in sorted(items)]
    for q, cl in c.measurements:
        lines.append(f"measure q[{q}] -> c[{cl}];")
    return "\n".join(lines) + "\n"
