"""Planar triangle meshes: OBJ-subset loading, boundary structure, normals.

The accepted file format is the OBJ subset made of ``v x y [z]`` and
``f i j k`` lines (1-based indices). ``vt``/``vn`` records and ``#`` comments
are ignored; any other directive is an error, as is a nonzero z coordinate.
Triangles are reoriented counter-clockwise at load time, and every edge must
belong to one or two triangles (manifold).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class MeshError(ValueError):
    """Raised for malformed mesh files or broken mesh topology."""


@dataclass(frozen=True)
class Mesh:
    """Immutable planar triangle mesh.

    vertices: (n, 2) float array of 2D positions.
    triangles: (m, 3) int array, counter-clockwise.
    boundary_edges: (k, 2) int array of vertex pairs, each belonging to
        exactly one triangle, ordered as directed in that triangle
        (domain interior on the left).
    """

    vertices: np.ndarray
    triangles: np.ndarray
    boundary_edges: np.ndarray = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)


def _signed_area2(p0, p1, p2) -> float:
    return (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1])


def _edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def edge_incidence(triangles: np.ndarray) -> dict[tuple[int, int], list[int]]:
    """Map each undirected edge to the list of triangles containing it."""
    incidence: dict[tuple[int, int], list[int]] = {}
    for t, (a, b, c) in enumerate(triangles):
        for u, v in ((a, b), (b, c), (c, a)):
            incidence.setdefault(_edge_key(int(u), int(v)), []).append(t)
    return incidence


def build_mesh(vertices: np.ndarray, triangles: np.ndarray) -> Mesh:
    """Validate raw arrays, enforce CCW orientation, derive boundary edges."""
    vertices = np.asarray(vertices, dtype=float)
    triangles = np.asarray(triangles, dtype=np.int64)
    if vertices.ndim != 2 or vertices.shape[1] != 2:
        raise MeshError("vertices must be an (n, 2) array")
    if len(triangles) and (triangles.min() < 0 or triangles.max() >= len(vertices)):
        raise MeshError("triangle vertex index out of range")

    oriented = triangles.copy()
    for t, (a, b, c) in enumerate(triangles):
        if a == b or b == c or a == c:
            raise MeshError(f"triangle {t} repeats a vertex")
        area2 = _signed_area2(vertices[a], vertices[b], vertices[c])
        if area2 == 0.0:
            raise MeshError(f"triangle {t} has zero area")
        if area2 < 0.0:
            oriented[t] = (a, c, b)

    incidence = edge_incidence(oriented)
    for (u, v), tris in incidence.items():
        if len(tris) > 2:
            raise MeshError(f"non-manifold edge ({u}, {v}) in {len(tris)} triangles")

    directed_boundary = []
    boundary_keys = {e for e, tris in incidence.items() if len(tris) == 1}
    for a, b, c in oriented:
        for u, v in ((a, b), (b, c), (c, a)):
            if _edge_key(int(u), int(v)) in boundary_keys:
                directed_boundary.append((int(u), int(v)))
    boundary = np.array(sorted(directed_boundary), dtype=np.int64).reshape(-1, 2)
    return Mesh(vertices=vertices, triangles=oriented, boundary_edges=boundary)


def load_mesh(text: str) -> Mesh:
    """Parse OBJ-subset text into a validated Mesh."""
    verts: list[tuple[float, float]] = []
    tris: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "v":
            if len(parts) not in (3, 4):
                raise MeshError(f"line {lineno}: vertex needs 2 or 3 coordinates")
            try:
                coords = [float(p) for p in parts[1:]]
            except ValueError as exc:
                raise MeshError(f"line {lineno}: bad vertex coordinate") from exc
            if len(coords) == 3 and coords[2] != 0.0:
                raise MeshError(f"line {lineno}: nonzero z coordinate")
            verts.append((coords[0], coords[1]))
        elif tag == "f":
            if len(parts) != 4:
                raise MeshError(f"line {lineno}: faces must be triangles")
            try:
                idx = [int(p.partition("/")[0]) for p in parts[1:]]
            except ValueError as exc:
                raise MeshError(f"line {lineno}: bad face index") from exc
            if any(i < 1 for i in idx):
                raise MeshError(f"line {lineno}: face indices are 1-based")
            tris.append((idx[0] - 1, idx[1] - 1, idx[2] - 1))
        elif tag in ("vt", "vn"):
            continue
        else:
            raise MeshError(f"line {lineno}: unsupported directive {tag!r}")
    if not verts or not tris:
        raise MeshError("mesh needs at least one vertex and one triangle")
    return build_mesh(np.array(verts), np.array(tris))


def mesh_to_text(mesh: Mesh) -> str:
    """Serialize back to the OBJ subset; load_mesh round-trips this exactly."""
    lines = [f"v {float(x)!r} {float(y)!r}" for x, y in mesh.vertices]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.triangles]
    return "\n".join(lines) + "\n"


def _outward_normal(mesh: Mesh, u: int, v: int) -> np.ndarray:
    # Boundary edge directed u->v with interior on the left; outward is the
    # direction rotated -90 degrees.
    d = mesh.vertices[v] - mesh.vertices[u]
    n = np.array([d[1], -d[0]])
    norm = float(np.hypot(n[0], n[1]))
    if norm == 0.0:
        raise MeshError(f"degenerate boundary edge ({u}, {v})")
    return n / norm


def boundary_vertex_normal(mesh: Mesh, v: int) -> np.ndarray:
    """Unit outward normal at boundary vertex v (average of edge normals)."""
    normals = [
        _outward_normal(mesh, int(a), int(b))
        for a, b in mesh.boundary_edges
        if v in (int(a), int(b))
    ]
    if not normals:
        raise MeshError(f"vertex {v} is not on the boundary")
    total = np.sum(normals, axis=0)
    norm = float(np.hypot(total[0], total[1]))
    if norm < 1e-12:
        raise MeshError(f"boundary normals cancel at vertex {v}")
    return total / norm


def boundary_triangle_normal(mesh: Mesh, t: int) -> np.ndarray:
    """Unit outward normal of triangle t, averaged over its boundary edges."""
    a, b, c = (int(i) for i in mesh.triangles[t])
    boundary = {(int(u), int(v)) for u, v in mesh.boundary_edges}
    normals = [
        _outward_normal(mesh, u, v)
        for u, v in ((a, b), (b, c), (c, a))
        if (u, v) in boundary
    ]
    if not normals:
        raise MeshError(f"triangle {t} has no boundary edge")
    total = np.sum(normals, axis=0)
    norm = float(np.hypot(total[0], total[1]))
    if norm < 1e-12:
        raise MeshError(f"boundary normals cancel at triangle {t}")
    return total / norm


def boundary_loops(mesh: Mesh) -> list[list[int]]:
    """Vertex loops of the boundary, each traversed with interior on the left.

    Loops are rotated to start at their smallest vertex index, and listed in
    order of that index, so the result is deterministic.
    """
    succ: dict[int, int] = {}
    for u, v in mesh.boundary_edges:
        u, v = int(u), int(v)
        if u in succ:
            raise MeshError(f"boundary vertex {u} has two outgoing edges (pinched)")
        succ[u] = v
    loops = []
    remaining = set(succ)
    while remaining:
        start = min(remaining)
        loop = [start]
        remaining.discard(start)
        cur = succ[start]
        while cur != start:
            loop.append(cur)
            remaining.discard(cur)
            cur = succ[cur]
        loops.append(loop)
    loops.sort(key=lambda lp: lp[0])
    return loops
