"""Circuit model: quantized gate instances plus a small OpenQASM 2.0 front end.

The scheduler works on integer cycle counts, so a circuit here is a flat,
program-ordered list of gate instances whose durations are filled in from a
device duration table before any layering happens.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, replace

from .errors import BadIndex, MissingDuration, ParseError, UnknownGate

IDENTITY = "id"


@dataclass(frozen=True)
class GateKind:
    """A named basis gate with a fixed qubit arity."""

    name: str
    arity: int


_ONE_QUBIT = (
    "id x y z h s sdg t tdg sx sxdg rx ry rz p u1 u2 u3 "
    "phasedxz virtualz physicalz"
).split()
_TWO_QUBIT = "cx cy cz ch swap iswap ecr siswap sycamore rzz rxx ryy crx cry crz cp cu1".split()

KNOWN_KINDS: dict[str, GateKind] = {name: GateKind(name, 1) for name in _ONE_QUBIT}
KNOWN_KINDS.update({name: GateKind(name, 2) for name in _TWO_QUBIT})


@dataclass(frozen=True)
class GateInstance:
    """One application of a gate, identified by its program-order id."""

    id: int
    kind: GateKind
    qubits: tuple[int, ...]
    param: str | None = None
    duration_cycles: int | None = None

    @property
    def is_identity(self) -> bool:
        return self.kind.name == IDENTITY

    @property
    def is_two_qubit(self) -> bool:
        return self.kind.arity == 2

    @property
    def cycles(self) -> int:
        if self.duration_cycles is None:
            raise MissingDuration(f"gate {self.kind.name} (id {self.id}) has no quantized duration")
        return self.duration_cycles

    def label(self) -> str:
        text = self.kind.name
        if self.param is not None:
            text += f"({self.param})"
        return text + " " + ",".join(f"q{q}" for q in self.qubits)


@dataclass(frozen=True)
class Circuit:
    """Program-ordered gates on a flattened qubit register."""

    num_qubits: int
    gates: tuple[GateInstance, ...] = ()
    classical_bits: int = 0
    measurements: tuple[tuple[int, int], ...] = ()

    def qubits_used(self) -> tuple[int, ...]:
        seen: set[int] = set()
        for g in self.gates:
            seen.update(g.qubits)
        return tuple(sorted(seen))


def gate_names(c: Circuit) -> dict[int, str]:
    """Stable display names: each kind numbered in program order (cz_0, cz_1, ...)."""
    counts: dict[str, int] = {}
    names: dict[int, str] = {}
    for g in c.gates:
        k = counts.get(g.kind.name, 0)
        counts[g.kind.name] = k + 1
        names[g.id] = f"{g.kind.name}_{k}"
    return names


@dataclass(frozen=True)
class DurationTable:
    """Per-kind gate durations, given directly in cycles or in nanoseconds."""

    tau_ns: float
    unit: str
    entries: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.unit not in ("cycles", "ns"):
            raise MissingDuration(f"duration table unit must be 'cycles' or 'ns', got {self.unit!r}")
        if self.tau_ns <= 0:
            raise MissingDuration(f"cycle length tau_ns must be positive, got {self.tau_ns}")

    def cycles(self, kind_name: str) -> int:
        """Quantized duration of one gate kind; always at least one cycle."""
        if kind_name not in self.entries:
            raise MissingDuration(f"no duration entry for gate kind {kind_name!r}")
        value = self.entries[kind_name]
        if value < 0:
            raise MissingDuration(f"negative duration for gate kind {kind_name!r}")
        if self.unit == "cycles":
            return max(1, int(value))
        return max(1, math.ceil(value / self.tau_ns))

    @classmethod
    def from_json(cls, text: str) -> "DurationTable":
        raw = json.loads(text)
        return cls(
            tau_ns=float(raw["tau_ns"]),
            unit=str(raw["unit"]),
            entries={str(k): float(v) for k, v in raw["gates"].items()},
        )

    def to_json(self) -> str:
        return json.dumps(
            {"tau_ns": self.tau_ns, "unit": self.unit, "gates": dict(sorted(self.entries.items()))},
            indent=2,
        )


# --- OpenQASM 2.0 subset -------------------------------------------------

_QREG_RE = re.compile(r"^(qreg|creg)\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_OPERAND_RE = re.compile(r"^([A-Za-z_]\w*)(?:\s*\[\s*(\d+)\s*\])?$")
_GATE_RE = re.compile(r"^([A-Za-z_]\w*)\s*(?:\(([^()]*(?:\([^()]*\)[^()]*)*)\))?\s*(.*)$")


def _split_statements(text: str) -> list[tuple[int, str]]:
    """Statements with their source line, comments stripped."""
    out: list[tuple[int, str]] = []
    pending = ""
    pending_line = 1
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("//", 1)[0]
        for ch in line:
            if not pending.strip():
                pending_line = lineno
            if ch == ";":
                stmt = pending.strip()
                if stmt:
                    out.append((pending_line, stmt))
                pending = ""
            else:
                pending += ch
        pending += " "
    tail = pending.strip()
    if tail:
        raise ParseError(f"unterminated statement {tail!r}", pending_line)
    return out


class _Registers:
    def __init__(self):
        self.offsets: dict[str, tuple[int, int]] = {}
        self.size = 0

    def declare(self, name: str, width: int, line: int):
        if name in self.offsets:
            raise ParseError(f"register {name!r} declared twice", line)
        self.offsets[name] = (self.size, width)
        self.size += width

    def resolve(self, operand: str, line: int) -> list[int]:
        m = _OPERAND_RE.match(operand.strip())
        if not m:
            raise ParseError(f"bad operand {operand!r}", line)
        name, idx = m.group(1), m.group(2)
        if name not in self.offsets:
            raise BadIndex(f"unknown register {name!r}", line)
        offset, width = self.offsets[name]
        if idx is None:
            return [offset + i for i in range(width)]
        i = int(idx)
        if i >= width:
            raise BadIndex(f"index {i} out of range for register {name}[{width}]", line)
        return [offset + i]


def parse_qasm(text: str, kinds: dict[str, GateKind] | None = None) -> Circuit:
    """Parse the OpenQASM 2.0 subset: registers, basis gates, barrier, measure."""
    kinds = KNOWN_KINDS if kinds is None else kinds
    qregs, cregs = _Registers(), _Registers()
    gates: list[GateInstance] = []
    measurements: list[tuple[int, int]] = []
    saw_version = False

    for line, stmt in _split_statements(text):
        head = stmt.split(None, 1)[0]
        if head == "OPENQASM":
            version = stmt.split(None, 1)[1].strip()
            if version != "2.0":
                raise ParseError(f"unsupported OPENQASM version {version!r}", line)
            if saw_version or qregs.size or gates:
                raise ParseError("version header must come first", line)
            saw_version = True
            continue
        if head == "include":
            continue
        m = _QREG_RE.match(stmt)
        if m:
            regs = qregs if m.group(1) == "qreg" else cregs
            regs.declare(m.group(2), int(m.group(3)), line)
            continue
        if head == "barrier":
            continue
        if head == "measure":
            body = stmt[len("measure"):]
            if "->" not in body:
                raise ParseError("measure needs '-> target'", line)
            src, dst = body.split("->", 1)
            qs = qregs.resolve(src, line)
            cs = cregs.resolve(dst, line)
            if len(qs) != len(cs):
                raise ParseError("measure operand widths differ", line)
            measurements.extend(zip(qs, cs))
            continue

        m = _GATE_RE.match(stmt)
        if not m:
            raise ParseError(f"cannot parse statement {stmt!r}", line)
        name, param, operands = m.group(1).lower(), m.group(2), m.group(3)
        if name not in kinds:
            raise UnknownGate(f"unknown gate {name!r}", line)
        kind = kinds[name]
        operand_list = [o for o in operands.split(",") if o.strip()]
        if not operand_list:
            raise ParseError(f"gate {name!r} needs operands", line)
        resolved = [qregs.resolve(o, line) for o in operand_list]
        if kind.arity == 1 and len(resolved) == 1:
            targets = [(q,) for q in resolved[0]]  # whole-register broadcast
        elif len(resolved) == kind.arity and all(len(r) == 1 for r in resolved):
            targets = [tuple(r[0] for r in resolved)]
        else:
            raise ParseError(f"gate {name!r} expects {kind.arity} indexed operand(s)", line)
        for qubits in targets:
            if len(set(qubits)) != len(qubits):
                raise BadIndex(f"gate {name!r} repeats a qubit", line)
            gates.append(GateInstance(id=len(gates), kind=kind, qubits=qubits, param=param))

    return Circuit(
        num_qubits=qregs.size,
        gates=tuple(gates),
        classical_bits=cregs.size,
        measurements=tuple(measurements),
    )


def emit_qasm(c: Circuit) -> str:
    """Serialize a circuit back to OpenQASM 2.0 on flattened q/c registers."""
    lines = ["OPENQASM 2.0;"]
    lines.append(f"qreg q[{c.num_qubits}];")
    if c.classical_bits:
        lines.append(f"creg c[{c.classical_bits}];")
    for g in c.gates:
        param = f"({g.param})" if g.param is not None else ""
        operands = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{g.kind.name}{param} {operands};")
    for q, cl in c.measurements:
        lines.append(f"measure q[{q}] -> c[{cl}];")
    return "\n".join(lines) + "\n"


def strip_identity_gates(c: Circuit) -> Circuit:
    """Drop explicit identity gates and renumber the survivors densely."""
    kept = [g for g in c.gates if not g.is_identity]
    return replace(c, gates=tuple(replace(g, id=i) for i, g in enumerate(kept)))


def quantize_durations(table: DurationTable, c: Circuit) -> Circuit:
    """Attach an integer cycle count to every gate from the duration table."""
    gates = tuple(replace(g, duration_cycles=table.cycles(g.kind.name)) for g in c.gates)
    return replace(c, gates=gates)


def apply_layout(c: Circuit, mapping: list[int], num_qubits: int | None = None) -> Circuit:
    """Relabel logical qubits onto physical ones via an initial-layout list."""
    if len(mapping) < c.num_qubits:
        raise BadIndex(f"layout covers {len(mapping)} qubits, circuit uses {c.num_qubits}")
    if len(set(mapping)) != len(mapping):
        raise BadIndex("layout maps two logical qubits to one physical qubit")
    if num_qubits is None:
        num_qubits = max(mapping) + 1 if mapping else 0
    gates = tuple(
        replace(g, qubits=tuple(mapping[q] for q in g.qubits)) for g in c.gates
    )
    measurements = tuple((mapping[q], cl) for q, cl in c.measurements)
    return replace(c, num_qubits=num_qubits, gates=gates, measurements=measurements)
