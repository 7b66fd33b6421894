"""Dedicated frame-field solver: harmonic relaxation of representation vectors.

Each frame angle theta maps to the unit vector (cos 4 theta, sin 4 theta),
which turns frame smoothness into vector smoothness. Dropping the unit-norm
requirement leaves a graph Laplace problem with Dirichlet data at the
constrained nodes; solving it, normalizing, and dividing the angle by four
recovers a frame field. Only this initialization step is implemented - no
nonlinear polish afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import FieldGraph, FrameField, Provenance

HALF_PI = math.pi / 2.0

DENSE_CUTOFF = 200  # free-node count below which the direct solve is used
CG_RTOL = 1e-10
DEGENERATE_NORM = 1e-9


@dataclass(frozen=True)
class RepresentationField:
    """Per-node 2D vectors; constrained nodes carry exact unit vectors."""

    v: np.ndarray  # (N, 2)
    graph_key: str


def _split_edges(graph: FieldGraph):
    """Partition edges into free-free pairs and free-constrained pairs."""
    mask = graph.constraint_mask
    ff = []
    fc = []  # (free node, constrained node)
    for i, j in graph.edges:
        i, j = int(i), int(j)
        ci, cj = bool(mask[i]), bool(mask[j])
        if not ci and not cj:
            ff.append((i, j))
        elif ci != cj:
            fc.append((j, i) if ci else (i, j))
    return ff, fc


def _components_without_constraint(graph: FieldGraph) -> list[int]:
    """Representative node of each connected component lacking a constraint."""
    seen = np.zeros(graph.node_count, dtype=bool)
    bad = []
    for root in range(graph.node_count):
        if seen[root]:
            continue
        stack = [root]
        seen[root] = True
        comp = []
        has_constraint = False
        while stack:
            u = stack.pop()
            comp.append(u)
            if graph.constraint_mask[u]:
                has_constraint = True
            for w in graph.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if not has_constraint:
            bad.append(root)
    return bad


def _cg(matvec, b: np.ndarray, rtol: float, max_iters: int) -> np.ndarray:
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = float(r @ r)
    stop = rtol * math.sqrt(float(b @ b))
    for _ in range(max_iters):
        if math.sqrt(rs) <= stop:
            break
        ap = matvec(p)
        alpha = rs / float(p @ ap)
        x += alpha * p
        r -= alpha * ap
        rs_new = float(r @ r)
        p = r + (rs_new / rs) * p
        rs = rs_new
    return x


def relax_linear(graph: FieldGraph, method: str = "auto") -> RepresentationField:
    """Solve the relaxed (no unit norm) smoothness problem per coordinate.

    Free-node vectors solve the graph Laplace equation with the constrained
    vectors as Dirichlet data. `method` is "auto" (dense below 200 unknowns,
    conjugate gradient above), "dense", or "cg".
    """
    bad = _components_without_constraint(graph)
    if bad:
        raise ValueError(f"component of node {bad[0]} has no constrained node")

    n = graph.node_count
    v = np.zeros((n, 2))
    mask = graph.constraint_mask
    ang4 = 4.0 * graph.constraint_angle[mask]
    v[mask, 0] = np.cos(ang4)
    v[mask, 1] = np.sin(ang4)

    free = graph.free_nodes
    nf = len(free)
    if nf == 0:
        return RepresentationField(v=v, graph_key=graph.key())
    pos_of = -np.ones(n, dtype=np.int64)
    pos_of[free] = np.arange(nf)

    ff, fc = _split_edges(graph)
    deg = np.zeros(nf)
    for i, j in ff:
        deg[pos_of[i]] += 1.0
        deg[pos_of[j]] += 1.0
    b = np.zeros((nf, 2))
    for i, c in fc:
        deg[pos_of[i]] += 1.0
        b[pos_of[i]] += v[c]

    if method not in ("auto", "dense", "cg"):
        raise ValueError(f"unknown method {method!r}")
    use_dense = method == "dense" or (method == "auto" and nf < DENSE_CUTOFF)

    if use_dense:
        a = np.diag(deg)
        for i, j in ff:
            a[pos_of[i], pos_of[j]] -= 1.0
            a[pos_of[j], pos_of[i]] -= 1.0
        x = np.linalg.solve(a, b)
    else:
        ffi = np.array([pos_of[i] for i, _ in ff], dtype=np.int64)
        ffj = np.array([pos_of[j] for _, j in ff], dtype=np.int64)

        def matvec(p: np.ndarray) -> np.ndarray:
            out = deg * p
            if len(ffi):
                np.subtract.at(out, ffi, p[ffj])
                np.subtract.at(out, ffj, p[ffi])
            return out

        x = np.column_stack([
            _cg(matvec, b[:, k], CG_RTOL, 10 * nf) for k in (0, 1)
        ])

    v[free] = x
    return RepresentationField(v=v, graph_key=graph.key())


def harmonicity_residual(graph: FieldGraph, rep: RepresentationField) -> float:
    """Max over free nodes of || sum over neighbors (v_i - v_j) ||."""
    worst = 0.0
    for i in graph.free_nodes:
        res = np.zeros(2)
        for j in graph.adjacency[int(i)]:
            res += rep.v[int(i)] - rep.v[j]
        worst = max(worst, float(np.hypot(res[0], res[1])))
    return worst


def normalize_recover(graph: FieldGraph, rep: RepresentationField) -> tuple[np.ndarray, tuple[int, ...]]:
    """Angles from representation vectors, plus the degenerate node indices.

    Nodes whose vector nearly vanishes (possible at symmetry centers) get
    theta = 0 and are flagged rather than propagating junk.
    """
    norms = np.hypot(rep.v[:, 0], rep.v[:, 1])
    theta = np.zeros(graph.node_count)
    ok = norms >= DEGENERATE_NORM
    theta[ok] = (np.arctan2(rep.v[ok, 1], rep.v[ok, 0]) / 4.0) % HALF_PI
    theta[theta >= HALF_PI] -= HALF_PI
    mask = graph.constraint_mask
    theta[mask] = graph.constraint_angle[mask]
    degenerate = tuple(int(i) for i in np.flatnonzero(~ok) if not mask[i])
    return theta, degenerate


def solve_field_dedicated(graph: FieldGraph, method: str = "auto") -> FrameField:
    """Relax, normalize, recover angles; deterministic for a given graph."""
    rep = relax_linear(graph, method=method)
    theta, degenerate = normalize_recover(graph, rep)
    return FrameField(
        theta=theta,
        graph_key=graph.key(),
        provenance=Provenance(solver="dedicated"),
        degenerate_nodes=degenerate,
        iterations=0,
        status="ok",
    )
