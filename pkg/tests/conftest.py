"""Shared fixtures: the worked five-gate example and small oracle helpers."""

from __future__ import annotations

from dataclasses import dataclass

import pytest

from cyco import (
    Circuit,
    DistanceMatrix,
    DurationTable,
    LayeredCircuit,
    Tddg,
    Topology,
    all_pairs_distance,
    builtin_profile,
    layerize_crosstalk_safe,
    parse_qasm,
    quantize_durations,
    strip_identity_gates,
)
from cyco.tddg import build_tddg, compute_times

# Five gates on a 3x4 grid: two long iswaps, two cz, one rz. Program order
# fixes the gate ids: 0 iswap(3,7), 1 cz(4,5), 2 rz(10), 3 cz(2,6), 4 iswap(8,9).
WORKED_QASM = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[12];
iswap q[3],q[7];
cz q[4],q[5];
rz(pi/4) q[10];
cz q[2],q[6];
iswap q[8],q[9];
"""

ISWAP_0, CZ_0, RZ_0, CZ_1, ISWAP_1 = 0, 1, 2, 3, 4


@dataclass
class WorkedExample:
    topology: Topology
    table: DurationTable
    dm: DistanceMatrix
    circuit: Circuit
    layered: LayeredCircuit
    graph: Tddg


def build_worked() -> WorkedExample:
    t, table = builtin_profile("grid:3x4")
    dm = all_pairs_distance(t)
    c = quantize_durations(table, strip_identity_gates(parse_qasm(WORKED_QASM)))
    lc = layerize_crosstalk_safe(c, t, dm)
    g = compute_times(build_tddg(lc, dm))
    return WorkedExample(t, table, dm, c, lc, g)


@pytest.fixture(scope="session")
def worked() -> WorkedExample:
    return build_worked()


def line_topology(n: int) -> Topology:
    return Topology(num_qubits=n, edges=frozenset((i, i + 1) for i in range(n - 1)))


def floyd_warshall(t: Topology) -> list[list[float]]:
    """Independent all-pairs shortest-path oracle (unusable removed)."""
    inf = float("inf")
    n = t.num_qubits
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for a, b in t.edges:
        if a not in t.unusable and b not in t.unusable:
            d[a][b] = d[b][a] = 1
    for q in t.unusable:
        for i in range(n):
            d[q][i] = d[i][q] = inf
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def times_oracle(g: Tddg) -> tuple[dict[int, int], dict[int, int]]:
    """Independent longest-path recomputation of earliest-start/finish times."""
    gest: dict[int, int] = {}
    gft: dict[int, int] = {}

    def finish(i: int) -> int:
        if i not in gft:
            gest[i] = max((finish(p) for p in g.preds[i]), default=0)
            gft[i] = gest[i] + g.circuit.gates[i].cycles
        return gft[i]

    for layer in g.layers:
        for i in layer:
            finish(i)
    return gest, gft
