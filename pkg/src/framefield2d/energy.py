"""Frame-field smoothness energy, its gradient, and quarter-period wrapping.

The energy of a field theta over a graph is 2 * sum over edges (i, j) of
(1 - cos(4 theta_i - 4 theta_j)); it vanishes exactly when all adjacent
frames coincide up to quarter turns, and tops out at 4 per edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import FieldGraph

QUARTER_PI = math.pi / 4.0
HALF_PI = math.pi / 2.0


def _check_length(graph: FieldGraph, theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (graph.node_count,):
        raise ValueError(f"theta must have length {graph.node_count}, got {theta.shape}")
    return theta


def energy(graph: FieldGraph, theta: np.ndarray) -> float:
    theta = _check_length(graph, theta)
    if len(graph.edges) == 0:
        return 0.0
    d = 4.0 * (theta[graph.edges[:, 0]] - theta[graph.edges[:, 1]])
    return float(2.0 * np.sum(1.0 - np.cos(d)))


def gradient(graph: FieldGraph, theta: np.ndarray) -> np.ndarray:
    """Per-node energy derivative: 8 sin(4 theta_i - 4 theta_j) summed over
    neighbors j for free nodes, exactly 0 for constrained nodes."""
    theta = _check_length(graph, theta)
    g = np.zeros(graph.node_count)
    if len(graph.edges):
        i, j = graph.edges[:, 0], graph.edges[:, 1]
        s = 8.0 * np.sin(4.0 * (theta[i] - theta[j]))
        np.add.at(g, i, s)
        np.add.at(g, j, -s)
    g[graph.constraint_mask] = 0.0
    return g


def wrap_quarter(delta):
    """Reduce an angle difference into (-pi/4, pi/4] by quarter-turn steps.

    The interval is right-closed: both +pi/4 and -pi/4 map to +pi/4.
    Accepts scalars or arrays.
    """
    arr = np.asarray(delta, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("wrap_quarter needs finite input")
    k = np.ceil(arr / HALF_PI - 0.5)
    out = arr - k * HALF_PI
    if np.ndim(delta) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class EnergyModel:
    """Reduced view of the energy: constraints eliminated, x = theta[free]."""

    graph: FieldGraph
    free_nodes: np.ndarray
    theta_template: np.ndarray  # constraint angles, zeros at free slots

    def assemble(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (len(self.free_nodes),):
            raise ValueError(f"x must have length {len(self.free_nodes)}, got {x.shape}")
        theta = self.theta_template.copy()
        theta[self.free_nodes] = x
        return theta

    def value_and_grad(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        theta = self.assemble(x)
        return energy(self.graph, theta), gradient(self.graph, theta)[self.free_nodes]


def make_model(graph: FieldGraph) -> EnergyModel:
    template = np.where(graph.constraint_mask, graph.constraint_angle, 0.0)
    return EnergyModel(graph=graph, free_nodes=graph.free_nodes, theta_template=template)


def reduced_objective(model: EnergyModel, x: np.ndarray) -> tuple[float, np.ndarray]:
    """Energy and free-node gradient of the full field assembled from x."""
    return model.value_and_grad(x)
