"""FastAPI service wrapping the frame-field toolkit.

The service is stateless compute: meshes travel inline as OBJ text, results
come back as rows plus named artifact texts. Clients (the CLI included) own
all file I/O.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..experiment import Cell, CellResult, ExperimentPlan, compute_experiment, run_cell
from ..generators import generate_mesh
from ..graph import build_dual, build_primal
from ..lbfgs import SolverConfig
from ..mesh import MeshError, boundary_loops, load_mesh
from ..topology import compare as compare_signatures
from ..topology import signature_from_json
from .schemas import (
    CellRow,
    CompareRequest,
    CompareResponse,
    ExperimentRequest,
    ExperimentResponse,
    GenerateRequest,
    GenerateResponse,
    HealthResponse,
    SolveRequest,
    SolveResponse,
    SolverOptions,
)

app = FastAPI(title="framefield2d", version=__version__)


def _config(opts: SolverOptions) -> SolverConfig:
    return SolverConfig(
        memory=opts.memory,
        grad_tol=opts.grad_tol,
        max_iters=opts.max_iters,
        wolfe_c1=opts.wolfe_c1,
        wolfe_c2=opts.wolfe_c2,
        max_line_search_steps=opts.max_line_search_steps,
    )


def _row_model(result: CellResult) -> CellRow:
    parts = result.row.split(",", 10)
    cell, sampling, solver, init, seed, e, iters, sing, total, holes, status = parts
    return CellRow(
        cell=cell,
        sampling=sampling,
        solver=solver,
        init=init,
        seed=int(seed) if seed else None,
        energy=float(e) if e else None,
        iterations=int(iters) if iters else None,
        singularities=int(sing) if sing else None,
        total_index=int(total) if total else None,
        hole_turnings=[int(t) for t in holes.split(";") if t],
        status=status,
    )


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/mesh/generate", response_model=GenerateResponse)
def mesh_generate(req: GenerateRequest) -> GenerateResponse:
    try:
        text = generate_mesh(req.kind, req.resolution)
        mesh = load_mesh(text)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return GenerateResponse(
        obj_text=text,
        vertices=mesh.vertex_count,
        triangles=mesh.triangle_count,
        boundary_loops=len(boundary_loops(mesh)),
    )


@app.post("/solve", response_model=SolveResponse)
def solve(req: SolveRequest) -> SolveResponse:
    if req.solver == "lbfgs" and req.init is None:
        raise HTTPException(status_code=422, detail="lbfgs requires an init")
    if req.init == "random" and req.seed is None:
        raise HTTPException(status_code=422, detail="random init requires a seed")
    try:
        mesh = load_mesh(req.mesh_obj)
    except MeshError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    graph = build_primal(mesh) if req.sampling == "primal" else build_dual(mesh)
    cell = Cell(
        sampling=req.sampling,
        solver=req.solver,
        init=(req.init or "") if req.solver == "lbfgs" else "",
        seed=req.seed if req.init == "random" and req.solver == "lbfgs" else None,
    )
    result = run_cell(mesh, {req.sampling: graph}, cell, _config(req.options), req.trace)
    if not result.ok:
        raise HTTPException(status_code=422, detail=result.row.rsplit(",", 1)[-1])
    sig_doc = json.loads(result.artifacts[f"{cell.name}.signature.json"])
    return SolveResponse(
        row=_row_model(result),
        theta=[float(t) for t in result.fld.theta],
        signature=sig_doc,
        field_text=result.artifacts[f"{cell.name}.field.txt"],
        svg=result.artifacts[f"{cell.name}.svg"],
        trace_csv=result.artifacts.get(f"{cell.name}.trace.csv"),
    )


@app.post("/experiment", response_model=ExperimentResponse)
def experiment(req: ExperimentRequest) -> ExperimentResponse:
    try:
        plan = ExperimentPlan(
            mesh_path="<inline>",
            samplings=tuple(req.samplings),
            solvers=tuple(req.solvers),
            inits=tuple(req.inits),
            seeds=tuple(req.seeds),
            config=_config(req.options),
            trace=req.trace,
        )
        report = compute_experiment(req.mesh_obj, plan)
    except (MeshError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return ExperimentResponse(
        rows=[_row_model(r) for r in report.results],
        csv_text=report.csv_text,
        artifacts=report.artifacts,
        ok=report.ok,
    )


@app.post("/compare", response_model=CompareResponse)
def compare(req: CompareRequest) -> CompareResponse:
    try:
        a = signature_from_json(json.dumps(req.a))
        b = signature_from_json(json.dumps(req.b))
        diff = compare_signatures(a, b)
    except (KeyError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return CompareResponse(
        indices_equal=diff.indices_equal,
        holes_equal=diff.holes_equal,
        count_difference=diff.count_difference,
        verdict=diff.verdict,
    )
