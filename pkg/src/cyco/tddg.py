"""Time-and-distance dependency graph (TDDG) over a layered circuit.

Nodes are gates plus start/end sentinels. A directed edge means the target
must wait for the source: either they share a qubit (data) or they sit within
two hops of each other (distance) and overlapping them would couple their
spectator qubits. Edges always point from an earlier layer to a later one.

Candidate filtering keeps a gate's finalists mutually distant: once a nearby
candidate is recorded, later candidates within two hops of it are assumed to
be ordered behind it and get no direct edge. That assumption fails when the
blocker shares the later gate's own layer, so a completion pass restores a
direct edge wherever a close cross-layer pair would otherwise have no
connecting path; without it the scheduler could overlap gates two hops apart
or even reorder gates sharing a qubit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .baseline import LayeredCircuit
from .circuit import Circuit, GateInstance
from .errors import InternalInvariantViolation
from .topology import DistanceMatrix, gate_distance

START = -1
END = -2

DATA = "data"
DISTANCE = "distance"


def filter_gate_candidates(
    a: GateInstance, sets: list[tuple[GateInstance, ...]], dm: DistanceMatrix
) -> list[GateInstance]:
    """Scan gate sets in order, returning a's valid finalists.

    A gate closer than two hops to a becomes a candidate; it is a finalist
    only if it is at least two hops from every earlier candidate. Every
    candidate, finalist or not, keeps blocking the ones after it.
    """
    candidates: list[GateInstance] = []
    finalists: list[GateInstance] = []
    for gate_set in sets:
        for b in gate_set:
            if gate_distance(a, b, dm) < 2:
                if not candidates or min(
                    gate_distance(c, b, dm) for c in candidates
                ) >= 2:
                    finalists.append(b)
                candidates.append(b)
    return finalists


@dataclass
class Tddg:
    """Dependency graph plus, once computed, per-gate times and per-layer LMFT."""

    circuit: Circuit
    layers: tuple[tuple[int, ...], ...]
    preds: dict[int, tuple[int, ...]]
    succs: dict[int, tuple[int, ...]]
    kinds: dict[tuple[int, int], str]
    start_gates: tuple[int, ...]
    end_gates: tuple[int, ...]
    gest: dict[int, int] = field(default_factory=dict)
    gft: dict[int, int] = field(default_factory=dict)
    lmft: tuple[int, ...] = ()

    @property
    def has_times(self) -> bool:
        return bool(self.gft) or not self.circuit.gates

    def gate(self, gate_id: int) -> GateInstance:
        return self.circuit.gates[gate_id]

    def edge_count(self) -> int:
        return sum(len(v) for v in self.succs.values())

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.kinds

    def to_json_obj(self) -> dict:
        from .circuit import gate_names

        names = gate_names(self.circuit)
        nodes = [
            {
                "id": g.id,
                "name": names[g.id],
                "kind": g.kind.name,
                "qubits": list(g.qubits),
                "gest": self.gest.get(g.id),
                "gft": self.gft.get(g.id),
            }
            for g in self.circuit.gates
        ]
        edges = [
            {"from": "start", "to": g, "kind": "order"} for g in self.start_gates
        ]
        edges += [
            {"from": u, "to": v, "kind": k} for (u, v), k in sorted(self.kinds.items())
        ]
        edges += [{"from": g, "to": "end", "kind": "order"} for g in self.end_gates]
        return {
            "nodes": nodes,
            "edges": edges,
            "layers": [list(l) for l in self.layers],
            "lmft": list(self.lmft),
        }

    def to_dot(self) -> str:
        from .circuit import gate_names

        names = gate_names(self.circuit)
        lines = ["digraph tddg {", "  rankdir=TB;", "  node [shape=box];"]
        lines.append('  start [shape=circle label="start"];')
        lines.append('  end [shape=circle label="end"];')
        for g in self.circuit.gates:
            qubits = ",".join(f"q{q}" for q in g.qubits)
            time = ""
            if g.id in self.gft:
                time = f"\\n[{self.gest[g.id]},{self.gft[g.id]}]"
            lines.append(f'  g{g.id} [label="{names[g.id]} {qubits}{time}"];')
        for g in self.start_gates:
            lines.append(f"  start -> g{g};")
        for (u, v), kind in sorted(self.kinds.items()):
            style = " [style=bold]" if kind == DISTANCE else ""
            lines.append(f"  g{u} -> g{v}{style};")
        for g in self.end_gates:
            lines.append(f"  g{g} -> end;")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _pair_distances(c: Circuit, dm: DistanceMatrix) -> np.ndarray:
    """Gate-by-gate minimum hop distance matrix."""
    ends = np.array([[g.qubits[0], g.qubits[-1]] for g in c.gates], dtype=np.int64)
    d = dm.d
    return np.minimum.reduce(
        [d[np.ix_(ends[:, i], ends[:, j])] for i in (0, 1) for j in (0, 1)]
    )


def _scan(a: int, pool: np.ndarray, gd: np.ndarray) -> list[int]:
    """Fast verbatim candidate filter over a scan-ordered id pool."""
    if pool.size == 0:
        return []
    hits = pool[gd[a, pool] < 2]
    finalists: list[int] = []
    candidates: list[int] = []
    for b in hits:
        b = int(b)
        for c in candidates:
            if gd[c, b] < 2:
                break
        else:
            finalists.append(b)
        candidates.append(b)
    return finalists


def build_tddg(lc: LayeredCircuit, dm: DistanceMatrix) -> Tddg:
    """Forward and backward candidate passes plus the path-completion pass."""
    c = lc.circuit
    n = len(c.gates)
    layers = tuple(tuple(sorted(layer)) for layer in lc.layers)
    if n == 0:
        return Tddg(c, (), {}, {}, {}, (), ())

    gd = _pair_distances(c, dm)
    layer_of = np.empty(n, dtype=np.int64)
    flat: list[int] = []
    offsets = [0]
    for i, layer in enumerate(layers):
        for g in layer:
            layer_of[g] = i
        flat.extend(layer)
        offsets.append(len(flat))
    flat_arr = np.array(flat, dtype=np.int64)

    kinds: dict[tuple[int, int], str] = {}

    def add_edge(u: int, v: int) -> None:
        shared = set(c.gates[u].qubits) & set(c.gates[v].qubits)
        kinds[(u, v)] = DATA if shared else DISTANCE

    for i, layer in enumerate(layers):
        pool = flat_arr[offsets[i + 1]:]
        for a in layer:
            for b in _scan(a, pool, gd):
                add_edge(a, b)
    for i in range(len(layers) - 1, -1, -1):
        pool = flat_arr[: offsets[i]]
        for b in layers[i]:
            for vp in _scan(b, pool, gd):
                add_edge(vp, b)

    _complete_paths(c, layers, dm, gd, kinds)

    preds: dict[int, list[int]] = {g.id: [] for g in c.gates}
    succs: dict[int, list[int]] = {g.id: [] for g in c.gates}
    for u, v in kinds:
        if layer_of[u] >= layer_of[v]:
            raise InternalInvariantViolation(f"edge {u}->{v} does not cross layers forward")
        succs[u].append(v)
        preds[v].append(u)
    return Tddg(
        circuit=c,
        layers=layers,
        preds={g: tuple(sorted(p)) for g, p in preds.items()},
        succs={g: tuple(sorted(s)) for g, s in succs.items()},
        kinds=kinds,
        start_gates=tuple(g for g in range(n) if not preds[g]),
        end_gates=tuple(g for g in range(n) if not succs[g]),
    )


def _complete_paths(
    c: Circuit,
    layers: tuple[tuple[int, ...], ...],
    dm: DistanceMatrix,
    gd: np.ndarray,
    kinds: dict[tuple[int, int], str],
) -> None:
    """Guarantee a directed path between every close pair of cross-layer gates."""
    preds: dict[int, list[int]] = {g.id: [] for g in c.gates}
    for u, v in kinds:
        preds[v].append(u)
    near = {q: set(np.nonzero(dm.d[q] <= 1)[0].tolist()) for q in range(dm.d.shape[0])}
    ancestry: dict[int, int] = {}
    bucket: dict[int, list[int]] = {}
    for layer in layers:
        for y in layer:
            anc = 0
            for p in preds[y]:
                anc |= ancestry[p] | (1 << p)
            zone: set[int] = set()
            for q in c.gates[y].qubits:
                zone |= near[q]
            candidates = sorted({x for q in zone for x in bucket.get(q, ())})
            for x in candidates:
                if gd[x, y] < 2 and not (anc >> x) & 1:
                    shared = set(c.gates[x].qubits) & set(c.gates[y].qubits)
                    kinds[(x, y)] = DATA if shared else DISTANCE
                    preds[y].append(x)
                    anc |= ancestry[x] | (1 << x)
            ancestry[y] = anc
        for y in layer:
            for q in c.gates[y].qubits:
                bucket.setdefault(q, []).append(y)


def compute_times(g: Tddg) -> Tddg:
    """Annotate earliest start (GEST) and finish (GFT) per gate, LMFT per layer."""
    gest: dict[int, int] = {}
    gft: dict[int, int] = {}
    for layer in g.layers:
        for gate_id in layer:
            earliest = max((gft[p] for p in g.preds[gate_id]), default=0)
            gest[gate_id] = earliest
            gft[gate_id] = earliest + g.gate(gate_id).cycles
    g.gest = gest
    g.gft = gft
    g.lmft = tuple(max(gft[i] for i in layer) for layer in g.layers)
    return g


def cross_layer_gates(g: Tddg, layer_index: int) -> tuple[GateInstance, ...]:
    """Gates of a layer still running when the next layer's earliest gate starts."""
    if not g.has_times:
        raise InternalInvariantViolation("cross_layer_gates needs compute_times first")
    if layer_index >= len(g.layers) - 1:
        return ()
    threshold = min(g.gest[i] for i in g.layers[layer_index + 1])
    return tuple(
        g.gate(i) for i in g.layers[layer_index] if g.gft[i] > threshold
    )
