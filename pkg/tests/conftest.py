import numpy as np
import pytest

from framefield2d.generators import annulus_obj, disk_obj, square_obj
from framefield2d.graph import FieldGraph, build_dual, build_primal
from framefield2d.mesh import load_mesh

UNIT_SQUARE_OBJ = """\
v 0 0
v 1 0
v 1 1
v 0 1
f 1 2 3
f 1 3 4
"""

SINGLE_TRIANGLE_OBJ = """\
v 0 0
v 1 0
v 0 1
f 1 2 3
"""


def grid_obj(nx: int, ny: int) -> str:
    """Rectangular grid mesh text, nx * ny vertices."""
    lines = []
    for i in range(ny):
        for j in range(nx):
            lines.append(f"v {j / (nx - 1)!r} {i / (ny - 1)!r}")
    for i in range(ny - 1):
        for j in range(nx - 1):
            v00 = i * nx + j + 1
            v10 = v00 + 1
            v01 = v00 + nx
            v11 = v01 + 1
            lines.append(f"f {v00} {v10} {v11}")
            lines.append(f"f {v00} {v11} {v01}")
    return "\n".join(lines) + "\n"


def make_graph(n, edges, constraints=None, positions=None, cycles=(), sampling="primal"):
    """Hand-built FieldGraph for unit tests on synthetic instances."""
    edges = np.array(sorted(tuple(sorted(e)) for e in edges), dtype=np.int64).reshape(-1, 2)
    mask = np.zeros(n, dtype=bool)
    angle = np.zeros(n)
    for node, theta in (constraints or {}).items():
        mask[node] = True
        angle[node] = theta
    if positions is None:
        positions = np.zeros((n, 2))
    neigh = [[] for _ in range(n)]
    for i, j in edges:
        neigh[int(i)].append(int(j))
        neigh[int(j)].append(int(i))
    return FieldGraph(
        sampling=sampling,
        node_count=n,
        edges=edges,
        node_position=np.asarray(positions, dtype=float),
        constraint_mask=mask,
        constraint_angle=angle,
        cycles=tuple(cycles),
        connected=True,
        adjacency=tuple(tuple(sorted(x)) for x in neigh),
    )


def random_field_graph(rng, n_nodes, n_extra, n_constrained, sampling="primal"):
    """Connected random graph: spanning tree plus extra edges, random
    constraint angles on a random node subset."""
    edges = set()
    order = rng.permutation(n_nodes)
    for idx in range(1, n_nodes):
        a = int(order[idx])
        b = int(order[rng.integers(0, idx)])
        edges.add((min(a, b), max(a, b)))
    while len(edges) < n_nodes - 1 + n_extra:
        a, b = rng.integers(0, n_nodes, 2)
        if a != b:
            edges.add((min(int(a), int(b)), max(int(a), int(b))))
    picked = rng.choice(n_nodes, size=n_constrained, replace=False)
    constraints = {int(i): float(rng.uniform(0, np.pi / 2)) for i in picked}
    positions = rng.uniform(-1, 1, size=(n_nodes, 2))
    return make_graph(n_nodes, edges, constraints, positions, sampling=sampling)


@pytest.fixture(scope="session")
def square5_mesh():
    return load_mesh(square_obj(5))


@pytest.fixture(scope="session")
def disk_mesh():
    return load_mesh(disk_obj(4))


@pytest.fixture(scope="session")
def disk8_mesh():
    return load_mesh(disk_obj(8))


@pytest.fixture(scope="session")
def annulus_mesh():
    return load_mesh(annulus_obj(6))


@pytest.fixture(scope="session")
def unit_square_mesh():
    return load_mesh(UNIT_SQUARE_OBJ)


@pytest.fixture(scope="session")
def square5_primal(square5_mesh):
    return build_primal(square5_mesh)


@pytest.fixture(scope="session")
def disk_primal(disk_mesh):
    return build_primal(disk_mesh)


@pytest.fixture(scope="session")
def disk_dual(disk_mesh):
    return build_dual(disk_mesh)


def directed_traversals(graph):
    """Count of each directed edge step over all cycles (skipping self-steps)."""
    from collections import Counter

    count = Counter()
    for cyc in graph.cycles:
        nodes = cyc.nodes
        for a, b in zip(nodes, nodes[1:] + nodes[:1]):
            if a != b:
                count[(a, b)] += 1
    return count
