"""
Device topologies and hop distances
===================================

Every scheduling decision rests on one question: how many coupling hops
apart are two gates? This walks through the topology model - grid lattices,
bundled device profiles, unusable qubits - and the precomputed all-pairs
distance matrix the rest of the pipeline consults.
"""

from cyco import (
    Topology,
    UNREACHABLE,
    all_pairs_distance,
    builtin_profile,
    gate_distance,
    parse_qasm,
)

# Grids are generated on demand: "grid:RxC" gives R rows x C columns,
# row-major, nearest-neighbor coupling.
grid, durations = builtin_profile("grid:3x4")
print(f"grid:3x4 -> {grid.num_qubits} qubits, {len(grid.edges)} coupling edges")
print("neighbors of q5:", grid.neighbors(5))
print("gate durations (cycles):", dict(sorted(durations.entries.items())))

dm = all_pairs_distance(grid)
print("\nhop distances from q0 across the grid:")
for row in range(3):
    print("  ", [dm.between(0, row * 4 + col) for col in range(4)])

# Gate distance is the minimum hop count over the two gates' qubit pairs.
# Two gates closer than two hops may not overlap in time unless the
# dependency graph says their order is already forced.
c = parse_qasm(
    "OPENQASM 2.0;\nqreg q[12];\ncz q[2],q[6];\niswap q[3],q[7];\niswap q[8],q[9];\n"
)
cz26, iswap37, iswap89 = c.gates
print("\ngate_distance(cz(2,6), iswap(3,7)):", gate_distance(cz26, iswap37, dm))
print("gate_distance(iswap(3,7), iswap(8,9)):", gate_distance(iswap37, iswap89, dm))

# Bundled device profiles: real coupling maps with per-kind durations.
for name in ("brisbane-127", "sycamore-53", "aspen-m", "ankaa-q3"):
    t, table = builtin_profile(name)
    usable = len(t.usable())
    print(
        f"{name}: {t.num_qubits} qubits ({usable} usable), "
        f"{len(t.edges)} edges, kinds {sorted(table.entries)}"
    )

# Unusable qubits are treated as removed from the lattice: nothing routes
# through them and distances across a cut become UNREACHABLE.
line = Topology(
    num_qubits=5,
    edges=frozenset({(0, 1), (1, 2), (2, 3), (3, 4)}),
    unusable=frozenset({2}),
)
cut = all_pairs_distance(line)
d = cut.between(0, 4)
print("\nline 0-1-2-3-4 with q2 unusable:")
print("distance q0 -> q4:", "unreachable" if d >= UNREACHABLE else d)
print("distance q0 -> q1:", cut.between(0, 1))
