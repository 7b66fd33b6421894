"""Pydantic request/response models for the frame-field service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class SolverOptions(BaseModel):
    memory: int = 10
    grad_tol: float = 1e-6
    max_iters: int = 2000
    wolfe_c1: float = 1e-4
    wolfe_c2: float = 0.9
    max_line_search_steps: int = 40


class GenerateRequest(BaseModel):
    kind: Literal["disk", "annulus", "square"]
    resolution: int = Field(ge=3)


class GenerateResponse(BaseModel):
    obj_text: str
    vertices: int
    triangles: int
    boundary_loops: int


class SolveRequest(BaseModel):
    mesh_obj: str
    sampling: Literal["primal", "dual"] = "primal"
    solver: Literal["dedicated", "lbfgs"] = "dedicated"
    init: Literal["random", "zero", "front"] | None = None
    seed: int | None = None
    options: SolverOptions = Field(default_factory=SolverOptions)
    trace: bool = False


class CellRow(BaseModel):
    cell: str
    sampling: str
    solver: str
    init: str
    seed: int | None
    energy: float | None
    iterations: int | None
    singularities: int | None
    total_index: int | None
    hole_turnings: list[int]
    status: str


class SolveResponse(BaseModel):
    row: CellRow
    theta: list[float]
    signature: dict
    field_text: str
    svg: str
    trace_csv: str | None = None


class ExperimentRequest(BaseModel):
    mesh_obj: str
    samplings: list[Literal["primal", "dual"]] = ["primal"]
    solvers: list[Literal["dedicated", "lbfgs"]] = ["dedicated"]
    inits: list[Literal["random", "zero", "front"]] = []
    seeds: list[int] = []
    options: SolverOptions = Field(default_factory=SolverOptions)
    trace: bool = False


class ExperimentResponse(BaseModel):
    rows: list[CellRow]
    csv_text: str
    artifacts: dict[str, str]
    ok: bool


class CompareRequest(BaseModel):
    a: dict
    b: dict


class CompareResponse(BaseModel):
    indices_equal: bool
    holes_equal: bool
    count_difference: int
    verdict: str


class HealthResponse(BaseModel):
    status: str
    version: str
