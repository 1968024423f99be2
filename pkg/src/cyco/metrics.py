"""Speedup, fidelity, and report emission for baseline-vs-punched comparisons."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from .errors import BadDistribution, BadInput
from .scheduler import Schedule

Distribution = dict  # outcome -> probability

_NORM_TOL = 1e-9


def total_time(s: Schedule | int, tau_ns: float) -> float:
    """Wall time in nanoseconds: program cycles times the clock period."""
    cycles = s if isinstance(s, int) else s.program_cycle
    return cycles * tau_ns


def speedup_ratio(tau_base: float, tau_cyco: float) -> float:
    """Percent improvement of the punched schedule over the baseline."""
    if tau_base <= 0:
        raise BadInput(f"baseline time must be positive, got {tau_base}")
    return (tau_base - tau_cyco) / tau_base * 100.0


def _check_distribution(p: Distribution, name: str) -> None:
    total = 0.0
    for key, value in p.items():
        if value < 0:
            raise BadDistribution(f"{name}[{key!r}] is negative: {value}")
        total += value
    if abs(total - 1.0) > _NORM_TOL:
        raise BadDistribution(f"{name} sums to {total}, expected 1")


def hellinger_distance(p: Distribution, q: Distribution) -> float:
    """H(p, q) = sqrt(1 - sum_i sqrt(p_i q_i)) over the key union."""
    _check_distribution(p, "p")
    _check_distribution(q, "q")
    bc = sum(math.sqrt(p[k] * q[k]) for k in p.keys() & q.keys())
    return math.sqrt(max(0.0, 1.0 - min(bc, 1.0)))


def hellinger_fidelity(p: Distribution, q: Distribution, variant: str = "paper") -> float:
    """Distribution similarity from the Hellinger distance H.

    variant="paper" uses ((1-H)^2)^2; variant="standard" uses the textbook
    (1-H^2)^2. Both are 1 when p = q and 0 on disjoint supports.
    """
    h = hellinger_distance(p, q)
    if variant == "paper":
        return ((1.0 - h) ** 2) ** 2
    if variant == "standard":
        return (1.0 - h * h) ** 2
    raise BadInput(f"unknown fidelity variant '{variant}' (use 'paper' or 'standard')")


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark's baseline-vs-punched timing comparison (times in us)."""

    benchmark: str
    tau_baseline: float
    tau_cyco: float
    cycles_baseline: int = 0
    cycles_cyco: int = 0
    j_baseline: float | None = None
    j_cyco: float | None = None

    @property
    def delta(self) -> float:
        return speedup_ratio(self.tau_baseline, self.tau_cyco)


_CSV_HEADER = ("benchmark", "tau_baseline", "tau_cyco", "delta")


def bench_report(records: list[BenchRecord], fmt: str = "csv") -> str:
    """Render records as CSV (pinned column order, mean footer) or JSON."""
    if fmt == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(_CSV_HEADER)
        for r in records:
            w.writerow([r.benchmark, repr(r.tau_baseline), repr(r.tau_cyco), f"{r.delta:.2f}"])
        if records:
            mean = sum(r.delta for r in records) / len(records)
            w.writerow(["mean", "", "", f"{mean:.2f}"])
        return out.getvalue()
    if fmt == "json":
        obj = {
            "benchmarks": [
                {
                    "benchmark": r.benchmark,
                    "tau_baseline": r.tau_baseline,
                    "tau_cyco": r.tau_cyco,
                    "delta": r.delta,
                    "cycles_baseline": r.cycles_baseline,
                    "cycles_cyco": r.cycles_cyco,
                    "j_baseline": r.j_baseline,
                    "j_cyco": r.j_cyco,
                }
                for r in records
            ],
            "mean_delta": (
                sum(r.delta for r in records) / len(records) if records else None
            ),
        }
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    raise BadInput(f"unknown report format '{fmt}' (use 'csv' or 'json')")


def parse_bench_report(text: str) -> list[BenchRecord]:
    """Read back a CSV produced by bench_report, skipping the mean footer."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != _CSV_HEADER:
        raise BadInput("not a benchmark report: bad header")
    out = []
    for row in rows[1:]:
        if not row or row[0] == "mean":
            continue
        out.append(BenchRecord(row[0], float(row[1]), float(row[2])))
    return out


_ROW_H = 26
_BAR_H = 18
_ML, _MT, _MB = 70, 34, 30


def _runs(indices: list[int]) -> list[tuple[int, int]]:
    """Collapse sorted ints into inclusive (first, last) runs."""
    runs: list[tuple[int, int]] = []
    for i in indices:
        if runs and i == runs[-1][1] + 1:
            runs[-1] = (runs[-1][0], i)
        else:
            runs.append((i, i))
    return runs


def emit_gantt(s: Schedule) -> str:
    """SVG timeline: one row per used qubit, blocks for gates, rules at barriers.

    Barrier rules only cross the rows of qubits the barrier retains, so a
    punched qubit's row shows an uninterrupted lane.
    """
    qubits = sorted({q for sg in s.all_gates() for q in sg.gate.qubits})
    row_of = {q: i for i, q in enumerate(qubits)}
    span = max(s.program_cycle, 1)
    px = max(12, min(48, 960 // span))
    width = _ML + span * px + 20
    height = _MT + max(len(qubits), 1) * _ROW_H + _MB
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="11">',
        f'<text x="{_ML}" y="16">program cycle: {s.program_cycle}</text>',
    ]
    for q in qubits:
        y = _MT + row_of[q] * _ROW_H
        parts.append(
            f'<line x1="{_ML}" y1="{y + _ROW_H}" x2="{_ML + span * px}" '
            f'y2="{y + _ROW_H}" stroke="#ddd"/>'
        )
        parts.append(f'<text x="8" y="{y + _ROW_H - 8}">q{q}</text>')
    step = max(1, span // 12)
    for t in range(0, span + 1, step):
        x = _ML + t * px
        y = _MT + len(qubits) * _ROW_H
        parts.append(f'<line x1="{x}" y1="{_MT}" x2="{x}" y2="{y}" stroke="#eee"/>')
        parts.append(f'<text x="{x - 4}" y="{y + 16}">{t}</text>')
    for sg in s.all_gates():
        fill = "#c8e6c9" if sg.synthetic else ("#1565c0" if sg.gate.is_two_qubit else "#64b5f6")
        for j, q in enumerate(sg.gate.qubits):
            y = _MT + row_of[q] * _ROW_H + (_ROW_H - _BAR_H) // 2
            x = _ML + sg.start * px
            parts.append(
                f'<rect x="{x}" y="{y}" width="{sg.gate.cycles * px}" height="{_BAR_H}" '
                f'fill="{fill}" stroke="#333"/>'
            )
            if j == 0:
                parts.append(
                    f'<text x="{x + 3}" y="{y + 13}" fill="#fff">{sg.gate.kind.name}</text>'
                )
    for b in s.barriers:
        x = _ML + b.time * px
        rows = sorted(row_of[q] for q in b.retained if q in row_of)
        for first, last in _runs(rows):
            y0 = _MT + first * _ROW_H
            y1 = _MT + (last + 1) * _ROW_H
            parts.append(
                f'<line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="#d32f2f" stroke-width="2"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
