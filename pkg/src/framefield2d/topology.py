"""Frame-field topology: cycle curvatures, singularities, hole turnings.

The curvature of an oriented cycle is the sum of quarter-wrapped angle
differences along it, always an exact multiple of pi/2 up to float noise.
Interior cycles with nonzero curvature are singularities; their index is
reported in integer quarter-turn units. Boundary-loop curvatures give hole
turning numbers. Because every edge is traversed once in each direction
across all cycles, the indices and turnings sum to zero on any field whose
wrapped differences stay clear of the +/- pi/4 tie.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .energy import wrap_quarter
from .graph import BOUNDARY, FACE, Cycle, FieldGraph

HALF_PI = math.pi / 2.0
QUARTER_PI = math.pi / 4.0

QUANTIZATION_TOL = 1e-6
TIE_TOL = 1e-12


@dataclass(frozen=True)
class Singularity:
    cycle: int  # index into graph.cycles
    index: int  # quarter-turn units, nonzero
    position: tuple[float, float]  # cycle centroid, for rendering only


@dataclass(frozen=True)
class TopologySignature:
    graph_key: str
    sampling: str
    singularities: tuple[Singularity, ...]
    hole_turnings: tuple[tuple[int, int], ...]  # (cycle index, turning)
    total_index: int


@dataclass(frozen=True)
class SignatureDiff:
    indices_equal: bool
    holes_equal: bool
    count_difference: int
    verdict: str  # "same topology" | "different topology"


def cycle_curvature(cycle: Cycle, theta: np.ndarray) -> float:
    """Sum of wrapped differences along the oriented cycle."""
    nodes = np.asarray(cycle.nodes, dtype=np.int64)
    if nodes.min() < 0 or nodes.max() >= len(theta):
        raise ValueError("cycle visits a node outside the field")
    vals = theta[nodes]
    return float(np.sum(wrap_quarter(np.roll(vals, -1) - vals)))


def _quarter_index(kappa: float, what: str) -> int:
    k = round(kappa / HALF_PI)
    if abs(kappa - k * HALF_PI) > QUANTIZATION_TOL:
        raise ValueError(f"{what} curvature {kappa!r} is not a multiple of pi/2")
    return int(k)


def has_wrap_ties(graph: FieldGraph, theta: np.ndarray) -> bool:
    """True if any edge difference wraps to within TIE_TOL of +/- pi/4."""
    if len(graph.edges) == 0:
        return False
    d = wrap_quarter(theta[graph.edges[:, 0]] - theta[graph.edges[:, 1]])
    return bool(np.any(np.abs(np.abs(d) - QUARTER_PI) <= TIE_TOL))


def singularities(graph: FieldGraph, theta: np.ndarray) -> list[tuple[int, int]]:
    """(cycle index, quarter-turn index) for interior cycles with k != 0."""
    out = []
    for ci, cyc in enumerate(graph.cycles):
        if cyc.kind != FACE:
            continue
        k = _quarter_index(cycle_curvature(cyc, theta), f"cycle {ci}")
        n = len(cyc.nodes)
        # Each wrapped term lies in (-pi/4, pi/4], so |k| <= floor(n/2).
        if abs(k) > n // 2:
            raise AssertionError(f"cycle {ci} index {k} exceeds bound {n // 2}")
        if k != 0:
            out.append((ci, k))
    return out


def hole_turning(graph: FieldGraph, theta: np.ndarray, loop: Cycle) -> int:
    """Quarter-turns of the frame per circuit of a boundary loop."""
    if loop.kind != BOUNDARY:
        raise ValueError("hole_turning expects a boundary-loop cycle")
    return _quarter_index(cycle_curvature(loop, theta), "boundary loop")


def signature(graph: FieldGraph, theta: np.ndarray) -> TopologySignature:
    theta = np.asarray(theta, dtype=float)
    sings = []
    for ci, k in singularities(graph, theta):
        pos = graph.node_position[np.asarray(graph.cycles[ci].nodes)].mean(axis=0)
        sings.append(Singularity(cycle=ci, index=k, position=(float(pos[0]), float(pos[1]))))
    holes = tuple(
        (ci, hole_turning(graph, theta, cyc))
        for ci, cyc in enumerate(graph.cycles)
        if cyc.kind == BOUNDARY
    )
    return TopologySignature(
        graph_key=graph.key(),
        sampling=graph.sampling,
        singularities=tuple(sings),
        hole_turnings=holes,
        total_index=sum(s.index for s in sings),
    )


def conservation_defect(graph: FieldGraph, theta: np.ndarray) -> int:
    """Sum of all cycle curvatures in quarter-turn units; 0 on tie-free fields."""
    return sum(
        _quarter_index(cycle_curvature(cyc, theta), f"cycle {ci}")
        for ci, cyc in enumerate(graph.cycles)
    )


def compare(a: TopologySignature, b: TopologySignature) -> SignatureDiff:
    """Diff two signatures over the same graph."""
    if a.graph_key != b.graph_key:
        raise ValueError(f"signatures live on different graphs: {a.graph_key} vs {b.graph_key}")
    indices_equal = sorted(s.index for s in a.singularities) == sorted(
        s.index for s in b.singularities
    )
    holes_equal = a.hole_turnings == b.hole_turnings
    same = indices_equal and holes_equal
    return SignatureDiff(
        indices_equal=indices_equal,
        holes_equal=holes_equal,
        count_difference=abs(len(a.singularities) - len(b.singularities)),
        verdict="same topology" if same else "different topology",
    )


def signature_to_json(sig: TopologySignature, degenerate_nodes=()) -> str:
    doc = {
        "graph_key": sig.graph_key,
        "sampling": sig.sampling,
        "singularities": [
            {"cycle": s.cycle, "k": s.index, "x": s.position[0], "y": s.position[1]}
            for s in sig.singularities
        ],
        "holes": [{"loop": ci, "turning": t} for ci, t in sig.hole_turnings],
        "total_index": sig.total_index,
        "degenerate_nodes": [int(i) for i in degenerate_nodes],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def signature_from_json(text: str) -> TopologySignature:
    doc = json.loads(text)
    return TopologySignature(
        graph_key=doc["graph_key"],
        sampling=doc["sampling"],
        singularities=tuple(
            Singularity(cycle=s["cycle"], index=s["k"], position=(s["x"], s["y"]))
            for s in doc["singularities"]
        ),
        hole_turnings=tuple((h["loop"], h["turning"]) for h in doc["holes"]),
        total_index=doc["total_index"],
    )
