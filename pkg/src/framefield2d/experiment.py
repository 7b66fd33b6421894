"""Experiment harness: run solver/sampling/init grids and collect artifacts.

A plan expands into cells (sampling x solver x init x seed). Every cell yields
an SVG render, a signature JSON, a frame-field text file, and one row in the
summary CSV; failures are recorded in the row's status column without
stopping the other cells. Outputs are byte-deterministic for a fixed plan.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .dedicated import solve_field_dedicated
from .energy import energy
from .graph import FieldGraph, FrameField, build_dual, build_primal, framefield_to_text
from .initializers import InitSpec, initial_field
from .lbfgs import SolverConfig, solve_field_lbfgs
from .mesh import Mesh, load_mesh
from .render import render_svg
from .topology import TopologySignature, signature, signature_to_json

CSV_HEADER = "cell,sampling,solver,init,seed,energy,iterations,singularities,total_index,hole_turnings,status"

SAMPLINGS = ("primal", "dual")
SOLVERS = ("dedicated", "lbfgs")


@dataclass(frozen=True)
class Cell:
    sampling: str
    solver: str
    init: str = ""
    seed: int | None = None

    @property
    def name(self) -> str:
        bits = [self.sampling, self.solver]
        if self.init:
            bits.append(self.init)
        if self.seed is not None:
            bits.append(f"s{self.seed}")
        return "-".join(bits)


@dataclass(frozen=True)
class ExperimentPlan:
    mesh_path: str
    samplings: tuple[str, ...] = ("primal",)
    solvers: tuple[str, ...] = ("dedicated",)
    inits: tuple[str, ...] = ()
    seeds: tuple[int, ...] = ()
    config: SolverConfig = field(default_factory=SolverConfig)
    outdir: str = "out"
    trace: bool = False

    def __post_init__(self):
        for s in self.samplings:
            if s not in SAMPLINGS:
                raise ValueError(f"unknown sampling {s!r}")
        for s in self.solvers:
            if s not in SOLVERS:
                raise ValueError(f"unknown solver {s!r}")
        if not self.samplings or not self.solvers:
            raise ValueError("plan needs at least one sampling and one solver")
        if "lbfgs" in self.solvers and not self.inits:
            raise ValueError("lbfgs needs at least one init")
        if "random" in self.inits and not self.seeds:
            raise ValueError("random init needs at least one seed")


def plan_cells(plan: ExperimentPlan) -> list[Cell]:
    cells = []
    for sampling in plan.samplings:
        for solver in plan.solvers:
            if solver == "dedicated":
                cells.append(Cell(sampling=sampling, solver=solver))
                continue
            for init in plan.inits:
                if init == "random":
                    cells.extend(
                        Cell(sampling=sampling, solver=solver, init=init, seed=s)
                        for s in plan.seeds
                    )
                else:
                    cells.append(Cell(sampling=sampling, solver=solver, init=init))
    return cells


@dataclass
class CellResult:
    cell: Cell
    ok: bool
    row: str
    fld: FrameField | None = None
    sig: TopologySignature | None = None
    artifacts: dict[str, str] = field(default_factory=dict)


def _sanitize(msg: str) -> str:
    return msg.replace(",", ";").replace("\n", " ")


def run_cell(mesh: Mesh, graphs: dict[str, FieldGraph], cell: Cell,
             config: SolverConfig, trace: bool = False) -> CellResult:
    try:
        graph = graphs[cell.sampling]
        if cell.solver == "dedicated":
            fld = solve_field_dedicated(graph)
            result = None
        else:
            theta0 = initial_field(graph, InitSpec(kind=cell.init, seed=cell.seed))
            fld, result = solve_field_lbfgs(
                graph, theta0, config, init_name=cell.init, seed=cell.seed
            )
        sig = signature(graph, fld.theta)
        e = energy(graph, fld.theta)
    except Exception as exc:  # per-cell isolation: record, keep going
        row = f"{cell.name},{cell.sampling},{cell.solver},{cell.init}," \
              f"{'' if cell.seed is None else cell.seed},,,,,," \
              f"error: {_sanitize(str(exc))}"
        return CellResult(cell=cell, ok=False, row=row)

    turnings = ";".join(str(t) for _, t in sig.hole_turnings)
    row = ",".join(
        [
            cell.name,
            cell.sampling,
            cell.solver,
            cell.init,
            "" if cell.seed is None else str(cell.seed),
            repr(float(e)),
            str(fld.iterations),
            str(len(sig.singularities)),
            str(sig.total_index),
            turnings,
            fld.status,
        ]
    )
    artifacts = {
        f"{cell.name}.field.txt": framefield_to_text(fld),
        f"{cell.name}.signature.json": signature_to_json(sig, fld.degenerate_nodes),
        f"{cell.name}.svg": render_svg(mesh, graph, fld, sig),
    }
    if trace and result is not None:
        lines = ["iter,f,grad_norm"]
        lines += [f"{i},{f!r},{g!r}" for i, (f, g) in enumerate(result.trace)]
        artifacts[f"{cell.name}.trace.csv"] = "\n".join(lines) + "\n"
    return CellResult(cell=cell, ok=True, row=row, fld=fld, sig=sig, artifacts=artifacts)


@dataclass
class ExperimentReport:
    results: list[CellResult]
    csv_text: str

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def artifacts(self) -> dict[str, str]:
        merged: dict[str, str] = {}
        for r in self.results:
            merged.update(r.artifacts)
        return merged


def compute_experiment(mesh_text: str, plan: ExperimentPlan) -> ExperimentReport:
    """Run every cell of the plan in memory; no file I/O."""
    mesh = load_mesh(mesh_text)
    cells = plan_cells(plan)
    graphs: dict[str, FieldGraph] = {}
    for sampling in plan.samplings:
        graphs[sampling] = build_primal(mesh) if sampling == "primal" else build_dual(mesh)
    results = [run_cell(mesh, graphs, c, plan.config, plan.trace) for c in cells]
    csv_text = "\n".join([CSV_HEADER] + [r.row for r in results]) + "\n"
    return ExperimentReport(results=results, csv_text=csv_text)


def write_artifacts(outdir: str, artifacts: dict[str, str], csv_text: str | None = None) -> list[str]:
    """Write artifact texts (and optionally summary.csv) under outdir."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    for name in sorted(artifacts):
        path = os.path.join(outdir, name)
        with open(path, "w", newline="\n") as fh:
            fh.write(artifacts[name])
        written.append(path)
    if csv_text is not None:
        path = os.path.join(outdir, "summary.csv")
        with open(path, "w", newline="\n") as fh:
            fh.write(csv_text)
        written.append(path)
    return written


def run_experiment(plan: ExperimentPlan) -> ExperimentReport:
    """Load the plan's mesh, run all cells, write artifacts and summary.csv."""
    with open(plan.mesh_path) as fh:
        mesh_text = fh.read()
    report = compute_experiment(mesh_text, plan)
    write_artifacts(plan.outdir, report.artifacts, report.csv_text)
    return report


def single_cell_plan(mesh_path: str, cell: Cell, config: SolverConfig | None = None,
                     outdir: str = "out", trace: bool = False) -> ExperimentPlan:
    """Plan containing exactly one cell, for the `solve` entry point."""
    return ExperimentPlan(
        mesh_path=mesh_path,
        samplings=(cell.sampling,),
        solvers=(cell.solver,),
        inits=(cell.init,) if cell.init else (),
        seeds=(cell.seed,) if cell.seed is not None else (),
        config=config or SolverConfig(),
        outdir=outdir,
        trace=trace,
    )


__all__ = [
    "CSV_HEADER",
    "Cell",
    "CellResult",
    "ExperimentPlan",
    "ExperimentReport",
    "compute_experiment",
    "plan_cells",
    "run_cell",
    "run_experiment",
    "single_cell_plan",
    "write_artifacts",
]
