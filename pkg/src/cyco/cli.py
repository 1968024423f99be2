"""Command-line pipeline: ingest, layer, punch, verify, report."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .baseline import DEFAULT_ALPHA, layerize_crosstalk_safe
from .circuit import (
    Circuit,
    DurationTable,
    apply_layout,
    emit_qasm,
    parse_qasm,
    quantize_durations,
    strip_identity_gates,
)
from .errors import BadInput, CycoError, MissingDuration
from .generate import random_circuit
from .metrics import BenchRecord, bench_report, emit_gantt, speedup_ratio
from .scheduler import (
    Schedule,
    baseline_schedule,
    emit_scheduled_qasm,
    mitigate_schedule,
    schedule_and_punch,
    verify_schedule,
)
from .tddg import build_tddg, compute_times
from .topology import DistanceMatrix, Topology, all_pairs_distance, builtin_profile

EXIT_OK = 0
EXIT_ERROR = 3
EXIT_VERIFY = 4

EMIT_TARGETS = ("qasm", "json", "layers", "tddg", "svg")


@dataclass(frozen=True)
class RunConfig:
    qasm: str | None = None
    topology: str | None = None
    profile: str | None = None
    durations: str | None = None
    layout: str | None = None
    alpha: float = DEFAULT_ALPHA
    fidelity_variant: str = "paper"
    emit: tuple[str, ...] = ()
    no_punch: bool = False
    out_dir: str = "."
    seed: int = 0
    jobs: int = 1


def _load_environment(cfg: RunConfig) -> tuple[Topology, DurationTable]:
    """Resolve (topology, durations) from --profile / --topology / --durations."""
    table: DurationTable | None = None
    if cfg.profile:
        t, table = builtin_profile(cfg.profile)
    elif cfg.topology:
        path = Path(cfg.topology)
        if path.exists():
            t = Topology.from_json(path.read_text())
        else:
            t, table = builtin_profile(cfg.topology)
    else:
        raise BadInput("need --topology or --profile")
    if cfg.durations:
        table = DurationTable.from_json(Path(cfg.durations).read_text())
    if table is None:
        raise MissingDuration("no duration table: pass --durations or use a profile")
    if cfg.alpha <= 0:
        raise BadInput(f"alpha must be positive, got {cfg.alpha}")
    return t, table


def _prepare_circuit(cfg: RunConfig, t: Topology, table: DurationTable) -> Circuit:
    c = parse_qasm(Path(cfg.qasm).read_text())
    c = strip_identity_gates(c)
    c = quantize_durations(table, c)
    if cfg.layout:
        mapping = json.loads(Path(cfg.layout).read_text())
        c = apply_layout(c, mapping, num_qubits=t.num_qubits)
    elif c.num_qubits > t.num_qubits:
        raise BadInput(
            f"circuit uses {c.num_qubits} qubits but topology has {t.num_qubits}"
        )
    else:
        c = replace(c, num_qubits=t.num_qubits)
    return c


def _run_pipeline(
    c: Circuit, t: Topology, dm: DistanceMatrix, alpha: float, punch: bool
) -> tuple[Schedule, Schedule]:
    """Return (baseline schedule, final schedule); both mitigated."""
    lc = layerize_crosstalk_safe(c, t, dm)
    base = baseline_schedule(lc)
    if punch and c.gates:
        g = compute_times(build_tddg(lc, dm))
        sched = schedule_and_punch(g)
    else:
        sched = base
    return mitigate_schedule(base, t, alpha), mitigate_schedule(sched, t, alpha)


def cmd_schedule(cfg: RunConfig) -> int:
    t, table = _load_environment(cfg)
    dm = all_pairs_distance(t)
    c = _prepare_circuit(cfg, t, table)
    lc = layerize_crosstalk_safe(c, t, dm)
    base, sched = _run_pipeline(c, t, dm, cfg.alpha, punch=not cfg.no_punch)
    report = verify_schedule(sched, c, t, dm)

    out = Path(cfg.out_dir)
    if cfg.emit:
        out.mkdir(parents=True, exist_ok=True)
    if "qasm" in cfg.emit:
        (out / "schedule.qasm").write_text(emit_scheduled_qasm(sched))
    if "json" in cfg.emit:
        (out / "schedule.json").write_text(
            json.dumps(sched.to_json_obj(), indent=2, sort_keys=True) + "\n"
        )
    if "layers" in cfg.emit:
        obj = {
            "program_cycle": lc.program_cycle,
            "layers": [
                {"lambda": lc.layer_cycles(i), "gates": list(layer)}
                for i, layer in enumerate(lc.layers)
            ],
        }
        (out / "layers.json").write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    if "tddg" in cfg.emit:
        g = compute_times(build_tddg(lc, dm)) if c.gates else None
        obj = g.to_json_obj() if g else {"nodes": [], "edges": []}
        (out / "tddg.json").write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        (out / "tddg.dot").write_text(g.to_dot() if g else "digraph tddg {\n}\n")
    if "svg" in cfg.emit:
        (out / "schedule.svg").write_text(emit_gantt(sched))

    delta = (
        speedup_ratio(base.program_cycle, sched.program_cycle)
        if base.program_cycle
        else 0.0
    )
    print(f"baseline program cycle: {base.program_cycle}")
    print(f"scheduled program cycle: {sched.program_cycle}")
    print(f"delta: {delta:.2f}%")
    if sched.interference is not None:
        j = sum(r.j for r in sched.interference)
        print(f"interference J (alpha={cfg.alpha:g}): {j:g}")
    print(f"verification: {'ok' if report.ok else 'FAILED'}")
    if not report.ok:
        for v in report.violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _bench_one(
    path: Path, t: Topology, dm: DistanceMatrix, table: DurationTable, alpha: float
) -> BenchRecord:
    c = parse_qasm(path.read_text())
    c = strip_identity_gates(c)
    c = quantize_durations(table, c)
    if c.num_qubits > t.num_qubits:
        raise BadInput(f"{c.num_qubits} qubits exceed topology capacity {t.num_qubits}")
    c = replace(c, num_qubits=t.num_qubits)
    base, sched = _run_pipeline(c, t, dm, alpha, punch=True)
    report = verify_schedule(sched, c, t, dm)
    if not report.ok:
        raise CycoError(f"{path.name}: verification failed: {report.violations[0]}")
    to_us = table.tau_ns / 1000.0
    return BenchRecord(
        benchmark=path.stem,
        tau_baseline=base.program_cycle * to_us,
        tau_cyco=sched.program_cycle * to_us,
        cycles_baseline=base.program_cycle,
        cycles_cyco=sched.program_cycle,
        j_baseline=sum(r.j for r in base.interference or ()),
        j_cyco=sum(r.j for r in sched.interference or ()),
    )


def cmd_bench(cfg: RunConfig, suite_dir: str) -> int:
    t, table = _load_environment(cfg)
    dm = all_pairs_distance(t)
    paths = sorted(Path(suite_dir).glob("*.qasm"))
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not paths:
        print(f"warning: no .qasm files in {suite_dir}", file=sys.stderr)

    def work(path: Path) -> tuple[Path, BenchRecord | None, str | None]:
        try:
            return path, _bench_one(path, t, dm, table, cfg.alpha), None
        except BadInput as exc:
            return path, None, str(exc)

    if cfg.jobs > 1 and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(work, paths))
    else:
        results = [work(p) for p in paths]

    records: list[BenchRecord] = []
    for path, record, problem in results:
        if record is not None:
            records.append(record)
        else:
            print(f"skipped {path.name}: {problem}", file=sys.stderr)
    records.sort(key=lambda r: r.benchmark)
    (out / "bench.csv").write_text(bench_report(records, "csv"))
    (out / "bench.json").write_text(bench_report(records, "json"))
    if records:
        mean = sum(r.delta for r in records) / len(records)
        print(f"benchmarks: {len(records)}  mean delta: {mean:.2f}%")
    else:
        print("benchmarks: 0")
    return EXIT_OK


def cmd_random(cfg: RunConfig, n_qubits: int, n_gates: int, out_path: str | None) -> int:
    if n_qubits < 1:
        raise BadInput(f"need at least one qubit, got {n_qubits}")
    if cfg.profile or cfg.topology:
        t, table = _load_environment(cfg)
    else:
        t, table = builtin_profile(f"grid:1x{n_qubits}")
        if cfg.durations:
            table = DurationTable.from_json(Path(cfg.durations).read_text())
    c = random_circuit(t, table, n_gates, cfg.seed)
    text = emit_qasm(c)
    if out_path:
        Path(out_path).parent.mkdir(parents=True, exist_ok=True)
        Path(out_path).write_text(text)
        print(f"wrote {out_path} ({n_gates} gates, seed {cfg.seed})")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--topology", help="topology JSON path, builtin profile name, or grid:RxC")
    p.add_argument("--profile", help="builtin device profile name")
    p.add_argument("--durations", help="duration table JSON path")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA,
                   help="cross-interference weight in J = IA + alpha*IC")
    p.add_argument("--out-dir", default=".", help="directory for emitted artifacts")
    p.add_argument("--seed", type=int, default=0, help="seed for any randomized step")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyco",
        description="Cycle-aware crosstalk-safe gate scheduling with barrier punching.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("schedule", help="schedule one circuit and emit artifacts")
    _add_common(ps)
    ps.add_argument("--qasm", required=True, help="input OpenQASM 2.0 file")
    ps.add_argument("--layout", help="JSON list mapping logical to physical qubits")
    ps.add_argument("--fidelity-variant", choices=("paper", "standard"),
                    default="paper", help="Hellinger fidelity convention for reports")
    ps.add_argument("--emit", default="", help=f"comma list of {','.join(EMIT_TARGETS)}")
    ps.add_argument("--no-punch", action="store_true",
                    help="keep full barriers (baseline schedule)")

    pb = sub.add_parser("bench", help="compare baseline vs punched over a suite")
    _add_common(pb)
    pb.add_argument("--suite", required=True, help="directory of .qasm files")
    pb.add_argument("--jobs", type=int, default=1, help="parallel workers")

    pr = sub.add_parser("random", help="emit a seeded random circuit as QASM")
    _add_common(pr)
    pr.add_argument("--qubits", type=int, required=True)
    pr.add_argument("--gates", type=int, required=True)
    pr.add_argument("--out", help="output path (stdout when omitted)")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    emit = tuple(x for x in getattr(args, "emit", "").split(",") if x)
    bad = [x for x in emit if x not in EMIT_TARGETS]
    if bad:
        raise BadInput(f"unknown emit target(s) {bad}; choose from {EMIT_TARGETS}")
    return RunConfig(
        qasm=getattr(args, "qasm", None),
        topology=args.topology,
        profile=args.profile,
        durations=args.durations,
        layout=getattr(args, "layout", None),
        alpha=args.alpha,
        fidelity_variant=getattr(args, "fidelity_variant", "paper"),
        emit=emit,
        no_punch=getattr(args, "no_punch", False),
        out_dir=args.out_dir,
        seed=args.seed,
        jobs=getattr(args, "jobs", 1),
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "schedule":
            return cmd_schedule(cfg)
        if args.command == "bench":
            return cmd_bench(cfg, args.suite)
        return cmd_random(cfg, args.qubits, args.gates, args.out)
    except CycoError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
