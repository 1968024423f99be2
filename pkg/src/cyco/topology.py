"""Device coupling graphs, hop distances between qubits, and builtin profiles.

Crosstalk reasoning only needs one geometric fact: the minimum hop distance
between the qubits two gates touch. Distances are precomputed once per
topology with BFS over the usable subgraph.
"""

from __future__ import annotations

import json
import os
import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .circuit import DurationTable, GateInstance
from .errors import BadIndex, UnknownProfile

UNREACHABLE = 1 << 30

_PROFILE_DIR_ENV = "CYCO_PROFILE_DIR"
_GRID_RE = re.compile(r"^grid:(\d+)x(\d+)$")


@dataclass(frozen=True)
class Topology:
    """Undirected coupling graph with an optional set of unusable qubits."""

    num_qubits: int
    edges: frozenset[tuple[int, int]]
    unusable: frozenset[int] = frozenset()
    _adj: dict[int, tuple[int, ...]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for a, b in self.edges:
            if not (0 <= a < self.num_qubits and 0 <= b < self.num_qubits):
                raise BadIndex(f"edge ({a},{b}) outside 0..{self.num_qubits - 1}")
            if a == b:
                raise BadIndex(f"self-loop on qubit {a}")
        adj: dict[int, list[int]] = {q: [] for q in range(self.num_qubits)}
        for a, b in self.edges:
            if a in self.unusable or b in self.unusable:
                continue  # unusable qubits are removed vertices
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "_adj", {q: tuple(sorted(ns)) for q, ns in adj.items()})

    def neighbors(self, q: int) -> tuple[int, ...]:
        return self._adj[q]

    def usable(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.num_qubits) if q not in self.unusable)

    def coupled(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    @classmethod
    def from_json(cls, text: str) -> "Topology":
        raw = json.loads(text)
        edges = frozenset((min(a, b), max(a, b)) for a, b in raw["edges"])
        return cls(
            num_qubits=int(raw["num_qubits"]),
            edges=edges,
            unusable=frozenset(int(q) for q in raw.get("unusable", [])),
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "num_qubits": self.num_qubits,
                "edges": sorted(list(e) for e in self.edges),
                "unusable": sorted(self.unusable),
            },
            indent=2,
        )


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances; UNREACHABLE marks removed or disconnected pairs."""

    d: np.ndarray

    def between(self, a: int, b: int) -> int:
        return int(self.d[a, b])


def all_pairs_distance(t: Topology) -> DistanceMatrix:
    """BFS from every usable qubit over the usable subgraph."""
    n = t.num_qubits
    d = np.full((n, n), UNREACHABLE, dtype=np.int64)
    for src in t.usable():
        d[src, src] = 0
        seen = {src}
        queue = deque([(src, 0)])
        while queue:
            node, dist = queue.popleft()
            for nb in t.neighbors(node):
                if nb not in seen:
                    seen.add(nb)
                    d[src, nb] = dist + 1
                    queue.append((nb, dist + 1))
    return DistanceMatrix(d)


def gate_distance(a: GateInstance, b: GateInstance, dm: DistanceMatrix) -> int:
    """Minimum hop distance over all qubit pairs of two gates; 0 iff they share one."""
    return int(min(dm.d[qa, qb] for qa in a.qubits for qb in b.qubits))


def grid_topology(rows: int, cols: int) -> Topology:
    """Rectangular lattice, row-major qubit numbering."""
    edges = set()
    for r in range(rows):
        for c in range(cols):
            q = r * cols + c
            if c + 1 < cols:
                edges.add((q, q + 1))
            if r + 1 < rows:
                edges.add((q, q + cols))
    return Topology(num_qubits=rows * cols, edges=frozenset(edges))


_GRID_DURATIONS = DurationTable(
    tau_ns=10.0,
    unit="cycles",
    entries={"id": 1, "rz": 1, "sx": 1, "x": 1, "cz": 2, "iswap": 6},
)

BUILTIN_PROFILES = ("brisbane-127", "sycamore-53", "aspen-m", "ankaa-q3")


def _profile_dir() -> Path:
    override = os.environ.get(_PROFILE_DIR_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "profiles"


def builtin_profile(name: str) -> tuple[Topology, DurationTable]:
    """Resolve a builtin profile name to its topology and duration table.

    ``grid:RxC`` profiles are generated; the device profiles are JSON files,
    overridable through the CYCO_PROFILE_DIR environment variable.
    """
    m = _GRID_RE.match(name)
    if m:
        rows, cols = int(m.group(1)), int(m.group(2))
        if rows < 1 or cols < 1:
            raise UnknownProfile(f"degenerate grid profile {name!r}")
        return grid_topology(rows, cols), _GRID_DURATIONS
    path = _profile_dir() / f"{name}.json"
    if not path.is_file():
        raise UnknownProfile(f"no builtin profile {name!r} (looked in {path.parent})")
    raw = json.loads(path.read_text())
    topology = Topology.from_json(json.dumps(raw["topology"]))
    durations = DurationTable.from_json(json.dumps(raw["durations"]))
    return topology, durations
