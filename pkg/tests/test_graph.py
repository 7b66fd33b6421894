import math

import numpy as np
import pytest

from framefield2d.graph import (
    BOUNDARY,
    FACE,
    build_dual,
    build_primal,
    canonical_angle,
    framefield_from_text,
    framefield_to_text,
)
from framefield2d.graph import FrameField, Provenance
from framefield2d.mesh import load_mesh

from conftest import SINGLE_TRIANGLE_OBJ, directed_traversals

HALF_PI = math.pi / 2


def test_primal_unit_square(unit_square_mesh):
    g = build_primal(unit_square_mesh)
    assert g.node_count == 4
    assert len(g.edges) == 5
    assert g.constraint_mask.all()
    assert len(g.face_cycles) == 2
    assert len(g.boundary_loop_cycles) == 1


def test_primal_single_triangle():
    g = build_primal(load_mesh(SINGLE_TRIANGLE_OBJ))
    assert (g.node_count, len(g.edges)) == (3, 3)
    assert g.constraint_mask.sum() == 3
    assert len(g.face_cycles) == 1 and len(g.boundary_loop_cycles) == 1


def test_primal_grid_constraint_count(square5_primal):
    assert square5_primal.node_count == 25
    assert square5_primal.constraint_mask.sum() == 16
    assert len(square5_primal.free_nodes) == 9


def test_dual_two_triangles(unit_square_mesh):
    g = build_dual(unit_square_mesh)
    assert g.node_count == 2
    assert len(g.edges) == 1
    assert g.constraint_mask.all()
    assert len(g.face_cycles) == 0
    assert all(len(c.nodes) < 3 for c in g.cycles)


def test_dual_hexagon_fan():
    # 6 triangles around one interior vertex
    lines = ["v 0 0"]
    for k in range(6):
        lines.append(f"v {math.cos(math.pi * k / 3)!r} {math.sin(math.pi * k / 3)!r}")
    for k in range(6):
        lines.append(f"f 1 {2 + k} {2 + (k + 1) % 6}")
    g = build_dual(load_mesh("\n".join(lines) + "\n"))
    assert (g.node_count, len(g.edges)) == (6, 6)
    fans = g.face_cycles
    assert len(fans) == 1 and len(fans[0].nodes) == 6


@pytest.mark.parametrize(
    "vec,expected",
    [((1, 0), 0.0), ((0, -1), 0.0), ((math.sqrt(2) / 2, math.sqrt(2) / 2), math.pi / 4)],
)
def test_canonical_angle(vec, expected):
    assert canonical_angle(vec) == pytest.approx(expected, abs=1e-15)


def test_canonical_angle_zero_vector():
    with pytest.raises(ValueError):
        canonical_angle((0.0, 0.0))


def test_constraints_canonicalized(disk_primal, disk_dual):
    for g in (disk_primal, disk_dual):
        angles = g.constraint_angle[g.constraint_mask]
        assert np.all(angles >= 0) and np.all(angles < HALF_PI)


def test_cycle_counts(disk_mesh, annulus_mesh):
    for mesh in (disk_mesh, annulus_mesh):
        gp = build_primal(mesh)
        loops = len(gp.boundary_loop_cycles)
        assert len(gp.cycles) == mesh.triangle_count + loops
        gd = build_dual(mesh)
        interior_vertices = mesh.vertex_count - len(
            {int(v) for e in mesh.boundary_edges for v in e}
        )
        assert len(gd.cycles) == interior_vertices + loops


def test_euler_disk(disk_mesh):
    g = build_primal(disk_mesh)
    v, e, f = g.node_count, len(g.edges), len(g.face_cycles)
    assert v - e + f == 1


@pytest.mark.parametrize("build", [build_primal, build_dual])
@pytest.mark.parametrize("mesh_fixture", ["unit_square_mesh", "disk_mesh", "annulus_mesh"])
def test_every_edge_traversed_once_each_way(build, mesh_fixture, request):
    g = build(request.getfixturevalue(mesh_fixture))
    count = directed_traversals(g)
    for i, j in g.edges:
        assert count[(int(i), int(j))] == 1
        assert count[(int(j), int(i))] == 1
    # and no traversal outside the edge set
    edge_set = {(int(i), int(j)) for i, j in g.edges}
    for a, b in count:
        assert (min(a, b), max(a, b)) in {(min(i, j), max(i, j)) for i, j in edge_set}


def test_dual_disconnect_flagged():
    # two separate triangles: dual graph has two isolated nodes
    text = "v 0 0\nv 1 0\nv 0 1\nv 5 5\nv 6 5\nv 5 6\nf 1 2 3\nf 4 5 6\n"
    g = build_dual(load_mesh(text))
    assert not g.connected
    assert g.node_count == 2 and len(g.edges) == 0


def test_framefield_text_roundtrip():
    theta = np.array([0.0, 0.25, math.pi / 4, 1.234567890123456789])
    fld = FrameField(
        theta=theta,
        graph_key="primal:4n:3e",
        provenance=Provenance(solver="lbfgs", init="random", seed=42),
    )
    again = framefield_from_text(framefield_to_text(fld))
    np.testing.assert_array_equal(again.theta, theta)
    assert again.provenance == fld.provenance
    assert again.sampling == "primal"


def test_framefield_text_roundtrip_no_seed():
    fld = FrameField(
        theta=np.array([0.5]),
        graph_key="dual:1n:0e",
        provenance=Provenance(solver="dedicated"),
    )
    again = framefield_from_text(framefield_to_text(fld))
    assert again.provenance.seed is None
    assert again.provenance.solver == "dedicated"
