"""Command-line client for the frame-field service.

Subcommands mirror the service endpoints: `gen` (meshes), `solve` (one cell),
`experiment` (the full grid), `compare` (two signature JSONs), plus `serve`
to run the HTTP service. By default requests are answered in-process; pass
--server URL to talk to a remote instance. All file writing happens here,
client-side.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from .experiment import write_artifacts
from .service import app as service_app
from .service.schemas import (
    CompareRequest,
    CompareResponse,
    ExperimentRequest,
    ExperimentResponse,
    GenerateRequest,
    GenerateResponse,
    SolveRequest,
    SolveResponse,
    SolverOptions,
)


class LocalClient:
    """Calls the service handlers in-process; same code path as over HTTP."""

    @staticmethod
    def _call(handler, req):
        from fastapi import HTTPException

        try:
            return handler(req)
        except HTTPException as exc:
            raise click.ClickException(str(exc.detail)) from exc

    def generate(self, req: GenerateRequest) -> GenerateResponse:
        from .service.app import mesh_generate

        return self._call(mesh_generate, req)

    def solve(self, req: SolveRequest) -> SolveResponse:
        from .service.app import solve

        return self._call(solve, req)

    def experiment(self, req: ExperimentRequest) -> ExperimentResponse:
        from .service.app import experiment

        return self._call(experiment, req)

    def compare(self, req: CompareRequest) -> CompareResponse:
        from .service.app import compare

        return self._call(compare, req)


class RemoteClient:
    def __init__(self, base_url: str):
        self.base_url = base_url.rstrip("/")

    def _post(self, path: str, payload, model):
        r = httpx.post(f"{self.base_url}{path}", json=payload.model_dump(), timeout=600.0)
        if r.status_code != 200:
            raise click.ClickException(f"{path}: {r.status_code} {r.text}")
        return model.model_validate(r.json())

    def generate(self, req):
        return self._post("/mesh/generate", req, GenerateResponse)

    def solve(self, req):
        return self._post("/solve", req, SolveResponse)

    def experiment(self, req):
        return self._post("/experiment", req, ExperimentResponse)

    def compare(self, req):
        return self._post("/compare", req, CompareResponse)


def _client(server: str | None):
    return RemoteClient(server) if server else LocalClient()


def _options(memory, grad_tol, max_iters, c1, c2, ls_steps) -> SolverOptions:
    return SolverOptions(
        memory=memory,
        grad_tol=grad_tol,
        max_iters=max_iters,
        wolfe_c1=c1,
        wolfe_c2=c2,
        max_line_search_steps=ls_steps,
    )


solver_options = [
    click.option("--memory", default=10, show_default=True, help="L-BFGS history size."),
    click.option("--grad-tol", default=1e-6, show_default=True, help="Gradient stop threshold (inf norm)."),
    click.option("--max-iters", default=2000, show_default=True),
    click.option("--c1", default=1e-4, show_default=True, help="Wolfe sufficient-decrease constant."),
    click.option("--c2", default=0.9, show_default=True, help="Wolfe curvature constant."),
    click.option("--ls-steps", default=40, show_default=True, help="Line-search evaluation budget."),
]


def _with_solver_options(fn):
    for opt in reversed(solver_options):
        fn = opt(fn)
    return fn


@click.group()
@click.option("--server", default=None, envvar="FRAMEFIELD_SERVER",
              help="Base URL of a running service; default runs in-process.")
@click.pass_context
def main(ctx, server):
    """Frame-field design toolkit for planar triangle meshes."""
    ctx.obj = _client(server)


@main.command()
@click.argument("kind", type=click.Choice(["disk", "annulus", "square"]))
@click.argument("resolution", type=int)
@click.option("-o", "--output", default=None, help="Output OBJ path.")
@click.pass_obj
def gen(client, kind, resolution, output):
    """Generate a test mesh and write it as an OBJ file."""
    resp = client.generate(GenerateRequest(kind=kind, resolution=resolution))
    path = output or f"{kind}{resolution}.obj"
    with open(path, "w", newline="\n") as fh:
        fh.write(resp.obj_text)
    click.echo(
        f"{path}: {resp.vertices} vertices, {resp.triangles} triangles, "
        f"{resp.boundary_loops} boundary loop(s)"
    )


@main.command()
@click.argument("mesh_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--sampling", type=click.Choice(["primal", "dual"]), default="primal", show_default=True)
@click.option("--solver", type=click.Choice(["dedicated", "lbfgs"]), default="dedicated", show_default=True)
@click.option("--init", type=click.Choice(["random", "zero", "front"]), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--outdir", default="out", show_default=True)
@click.option("--trace", is_flag=True, help="Also dump an iteration trace CSV.")
@_with_solver_options
@click.pass_obj
def solve(client, mesh_path, sampling, solver, init, seed, outdir, trace,
          memory, grad_tol, max_iters, c1, c2, ls_steps):
    """Solve one cell (sampling, solver, init, seed) and write its artifacts."""
    with open(mesh_path) as fh:
        mesh_obj = fh.read()
    req = SolveRequest(
        mesh_obj=mesh_obj,
        sampling=sampling,
        solver=solver,
        init=init,
        seed=seed,
        options=_options(memory, grad_tol, max_iters, c1, c2, ls_steps),
        trace=trace,
    )
    resp = client.solve(req)
    name = resp.row.cell
    artifacts = {
        f"{name}.field.txt": resp.field_text,
        f"{name}.signature.json": json.dumps(resp.signature, indent=2, sort_keys=True) + "\n",
        f"{name}.svg": resp.svg,
    }
    if resp.trace_csv:
        artifacts[f"{name}.trace.csv"] = resp.trace_csv
    write_artifacts(outdir, artifacts)
    click.echo(
        f"{name}: energy={resp.row.energy} iterations={resp.row.iterations} "
        f"singularities={resp.row.singularities} total_index={resp.row.total_index} "
        f"status={resp.row.status}"
    )


@main.command()
@click.argument("mesh_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--sampling", "samplings", type=click.Choice(["primal", "dual"]),
              multiple=True, default=("primal", "dual"), show_default=True)
@click.option("--solver", "solvers", type=click.Choice(["dedicated", "lbfgs"]),
              multiple=True, default=("dedicated", "lbfgs"), show_default=True)
@click.option("--init", "inits", type=click.Choice(["random", "zero", "front"]),
              multiple=True, default=("random", "front"), show_default=True)
@click.option("--seed", "seeds", type=int, multiple=True, default=(0,), show_default=True)
@click.option("--outdir", default="out", show_default=True)
@click.option("--trace", is_flag=True)
@_with_solver_options
@click.pass_obj
def experiment(client, mesh_path, samplings, solvers, inits, seeds, outdir, trace,
               memory, grad_tol, max_iters, c1, c2, ls_steps):
    """Run the full comparison grid and write artifacts plus summary.csv."""
    with open(mesh_path) as fh:
        mesh_obj = fh.read()
    req = ExperimentRequest(
        mesh_obj=mesh_obj,
        samplings=list(samplings),
        solvers=list(solvers),
        inits=list(inits),
        seeds=list(seeds),
        options=_options(memory, grad_tol, max_iters, c1, c2, ls_steps),
        trace=trace,
    )
    resp = client.experiment(req)
    write_artifacts(outdir, resp.artifacts, resp.csv_text)
    click.echo(resp.csv_text.rstrip("\n"))
    click.echo(f"wrote {len(resp.artifacts) + 1} files to {outdir}")
    if not resp.ok:
        sys.exit(1)


@main.command()
@click.argument("sig_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("sig_b", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def compare(client, sig_a, sig_b):
    """Diff two signature JSON files; exits 1 when the topology differs."""
    with open(sig_a) as fh:
        a = json.load(fh)
    with open(sig_b) as fh:
        b = json.load(fh)
    resp = client.compare(CompareRequest(a=a, b=b))
    click.echo(
        f"{resp.verdict} (indices_equal={resp.indices_equal} "
        f"holes_equal={resp.holes_equal} count_difference={resp.count_difference})"
    )
    if resp.verdict != "same topology":
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(service_app, host=host, port=port)


if __name__ == "__main__":
    main()
