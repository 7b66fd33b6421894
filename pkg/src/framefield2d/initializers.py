"""Starting fields for the quasi-Newton solver: random, zero, advancing front.

All three leave constrained entries bit-equal to the constraint angles and are
deterministic (the random one through its seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import FieldGraph

HALF_PI = math.pi / 2.0

INIT_KINDS = ("random", "zero", "front")


@dataclass(frozen=True)
class InitSpec:
    kind: str
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in INIT_KINDS:
            raise ValueError(f"unknown init kind {self.kind!r}")
        if (self.kind == "random") != (self.seed is not None):
            raise ValueError("seed is required for random init and only there")


def _template(graph: FieldGraph) -> np.ndarray:
    return np.where(graph.constraint_mask, graph.constraint_angle, 0.0)


def init_zero(graph: FieldGraph) -> np.ndarray:
    return _template(graph)


def init_random(graph: FieldGraph, seed: int) -> np.ndarray:
    if seed is None:
        raise ValueError("random init needs an explicit seed")
    theta = _template(graph)
    rng = np.random.default_rng(seed)
    free = graph.free_nodes
    theta[free] = rng.uniform(0.0, HALF_PI, size=len(free))
    return theta


def init_front(graph: FieldGraph) -> np.ndarray:
    """Propagate constraint angles outward by multi-source breadth-first search.

    All constrained nodes seed the front simultaneously; each newly reached
    free node copies the angle of its lowest-index neighbor in the previous
    level, so wrapped differences vanish along the BFS tree edges.
    """
    theta = _template(graph)
    assigned = graph.constraint_mask.copy()
    frontier = sorted(int(i) for i in np.flatnonzero(assigned))
    while frontier:
        nxt = []
        for u in frontier:
            for w in graph.adjacency[u]:
                if not assigned[w]:
                    assigned[w] = True
                    theta[w] = theta[u]
                    nxt.append(w)
        frontier = sorted(nxt)
    if not assigned.all():
        missing = int(np.flatnonzero(~assigned)[0])
        raise ValueError(f"node {missing} is unreachable from any constraint")
    return theta


def initial_field(graph: FieldGraph, spec: InitSpec) -> np.ndarray:
    if spec.kind == "zero":
        return init_zero(graph)
    if spec.kind == "front":
        return init_front(graph)
    return init_random(graph, spec.seed)
