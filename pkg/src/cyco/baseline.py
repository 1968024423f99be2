"""Crosstalk-safe baseline layering and ZZ interference accounting.

The baseline is a greedy ASAP layering with two admission rules: gates in one
layer never share a qubit, and no two two-qubit gates sit closer than two
hops. Every layer boundary is a full synchronization barrier, so the baseline
program cycle is simply the sum of per-layer maxima. Identity insertion
converts active-active interference into the milder active-idle kind by
activating a neighboring idle qubit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .circuit import Circuit, GateInstance, GateKind, IDENTITY
from .errors import BadIndex, ConnectivityViolation
from .topology import DistanceMatrix, Topology, gate_distance

DEFAULT_ALPHA = 0.5

_ID_KIND = GateKind(IDENTITY, 1)


@dataclass(frozen=True)
class InterferenceReport:
    """Interference summary of one parallel gate set."""

    ia: int
    ic: int
    alpha: float
    clusters: tuple[int, ...] = ()

    @property
    def j(self) -> float:
        return self.ia + self.alpha * self.ic


@dataclass(frozen=True)
class LayeredCircuit:
    """A circuit partitioned into parallel layers, ids grouped per layer."""

    circuit: Circuit
    layers: tuple[tuple[int, ...], ...]
    interference: tuple[InterferenceReport, ...] | None = None

    def layer_gates(self, index: int) -> tuple[GateInstance, ...]:
        return tuple(self.circuit.gates[i] for i in self.layers[index])

    def layer_cycles(self, index: int) -> int:
        """Layer duration under full synchronization: the slowest member."""
        return max(g.cycles for g in self.layer_gates(index))

    @property
    def program_cycle(self) -> int:
        return sum(self.layer_cycles(i) for i in range(len(self.layers)))


def _check_gate(g: GateInstance, t: Topology) -> None:
    for q in g.qubits:
        if not 0 <= q < t.num_qubits:
            raise BadIndex(f"gate {g.id} touches qubit {q}, device has {t.num_qubits}")
        if q in t.unusable:
            raise ConnectivityViolation(f"gate {g.id} touches unusable qubit {q}")
    if g.is_two_qubit and not t.coupled(*g.qubits):
        raise ConnectivityViolation(
            f"gate {g.id} ({g.kind.name}) on uncoupled pair {g.qubits}"
        )


def _admits(members: list[GateInstance], g: GateInstance, dm: DistanceMatrix) -> bool:
    for m in members:
        if set(m.qubits) & set(g.qubits):
            return False
        if g.is_two_qubit and m.is_two_qubit and gate_distance(g, m, dm) < 2:
            return False
    return True


def layerize_crosstalk_safe(c: Circuit, t: Topology, dm: DistanceMatrix) -> LayeredCircuit:
    """Greedy ASAP layering honoring qubit exclusivity and the two-hop rule."""
    layers: list[list[GateInstance]] = []
    last_layer: dict[int, int] = {}
    for g in c.gates:
        _check_gate(g, t)
        floor = 1 + max((last_layer.get(q, -1) for q in g.qubits), default=0)
        place = next(
            (l for l in range(floor, len(layers)) if _admits(layers[l], g, dm)), None
        )
        if place is None:
            layers.append([])
            place = len(layers) - 1
        layers[place].append(g)
        for q in g.qubits:
            last_layer[q] = place
    return LayeredCircuit(
        circuit=c, layers=tuple(tuple(g.id for g in layer) for layer in layers)
    )


def interference_cost(
    layer: tuple[GateInstance, ...], t: Topology, alpha: float = DEFAULT_ALPHA
) -> InterferenceReport:
    """Count active-active (IA) and active-idle (IC) coupling edges for one layer.

    Edges internal to a single two-qubit gate are intentional interaction, not
    interference, and are excluded from IA. Unusable qubits count as removed.
    """
    owner: dict[int, int] = {}
    for g in layer:
        for q in g.qubits:
            owner[q] = g.id
    ia = ic = 0
    active_edges: list[tuple[int, int]] = []
    for a, b in t.edges:
        if a in t.unusable or b in t.unusable:
            continue
        if a in owner and b in owner:
            active_edges.append((a, b))
            if owner[a] != owner[b]:
                ia += 1
        elif a in owner or b in owner:
            ic += 1
    clusters = _cluster_sizes(set(owner), active_edges)
    return InterferenceReport(ia=ia, ic=ic, alpha=alpha, clusters=clusters)


def _cluster_sizes(active: set[int], edges: list[tuple[int, int]]) -> tuple[int, ...]:
    parent = {q: q for q in active}

    def find(q: int) -> int:
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    for a, b in edges:
        parent[find(a)] = find(b)
    sizes: dict[int, int] = {}
    for q in active:
        root = find(q)
        sizes[root] = sizes.get(root, 0) + 1
    return tuple(sorted(sizes.values(), reverse=True))


def identity_targets(
    gates: tuple[GateInstance, ...], idle: set[int], t: Topology
) -> tuple[list[int], int]:
    """Pick qubits for mitigating identities; returns (targets, treated IA edges).

    One identity per active-active interference edge, on the lowest-index idle
    neighbor of either endpoint, while one exists. A set of only single-qubit
    gates additionally gets an identity beside its lowest active qubit.
    """
    owner: dict[int, int] = {}
    for g in gates:
        for q in g.qubits:
            owner[q] = g.id
    idle = set(idle) - set(owner)
    targets: list[int] = []
    treated = 0
    ia_edges = sorted(
        (a, b)
        for a, b in t.edges
        if a in owner and b in owner and owner[a] != owner[b]
    )
    for a, b in ia_edges:
        candidates = [q for q in t.neighbors(a) + t.neighbors(b) if q in idle]
        if candidates:
            pick = min(candidates)
            targets.append(pick)
            idle.discard(pick)
            treated += 1
    if gates and all(not g.is_two_qubit for g in gates):
        candidates = [
            q for a in sorted(owner) for q in t.neighbors(a) if q in idle
        ]
        if candidates:
            pick = min(candidates)
            targets.append(pick)
            idle.discard(pick)
    return targets, treated


def insert_identity_mitigation(
    lc: LayeredCircuit, t: Topology, alpha: float = DEFAULT_ALPHA
) -> LayeredCircuit:
    """Add mitigating identity gates per layer and attach interference reports.

    Treated IA edges are reclassified as IC in the attached reports; layer
    count and the program cycle never change (identities run one cycle).
    """
    usable = set(t.usable())
    new_gates = list(lc.circuit.gates)
    new_layers: list[tuple[int, ...]] = []
    reports: list[InterferenceReport] = []
    for index in range(len(lc.layers)):
        gates = lc.layer_gates(index)
        base = interference_cost(gates, t, alpha)
        targets, treated = identity_targets(gates, usable, t)
        ids = list(lc.layers[index])
        for q in sorted(targets):
            g = GateInstance(
                id=len(new_gates), kind=_ID_KIND, qubits=(q,), duration_cycles=1
            )
            new_gates.append(g)
            ids.append(g.id)
        new_layers.append(tuple(ids))
        reports.append(
            InterferenceReport(
                ia=base.ia - treated,
                ic=base.ic + treated,
                alpha=alpha,
                clusters=base.clusters,
            )
        )
    circuit = replace(lc.circuit, gates=tuple(new_gates))
    return LayeredCircuit(
        circuit=circuit, layers=tuple(new_layers), interference=tuple(reports)
    )
