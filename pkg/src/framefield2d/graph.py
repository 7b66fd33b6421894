"""Field graphs over a mesh: primal (vertices/edges) or dual (triangles).

A FieldGraph carries the nodes the frame field lives on, the undirected edges
the smoothness energy couples, per-node boundary constraint angles, and the
oriented cycles used for topology extraction. Cycles are built so that every
graph edge is traversed exactly twice, once in each direction, counting
face cycles and boundary loops together; boundary-loop cycles are therefore
stored with the domain interior on the right (the reverse of the mesh-level
boundary walk).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .mesh import Mesh, boundary_loops, boundary_triangle_normal, boundary_vertex_normal, edge_incidence

HALF_PI = math.pi / 2.0

FACE = "face"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class Cycle:
    """Oriented closed node walk; `kind` is "face" or "boundary"."""

    nodes: tuple[int, ...]
    kind: str


@dataclass(frozen=True)
class FieldGraph:
    sampling: str  # "primal" | "dual"
    node_count: int
    edges: np.ndarray  # (E, 2) int, i < j
    node_position: np.ndarray  # (N, 2)
    constraint_mask: np.ndarray  # (N,) bool
    constraint_angle: np.ndarray  # (N,) float, 0.0 where unconstrained
    cycles: tuple[Cycle, ...]
    connected: bool = True
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    @property
    def free_nodes(self) -> np.ndarray:
        return np.flatnonzero(~self.constraint_mask)

    @property
    def boundary_loop_cycles(self) -> tuple[Cycle, ...]:
        return tuple(c for c in self.cycles if c.kind == BOUNDARY)

    @property
    def face_cycles(self) -> tuple[Cycle, ...]:
        return tuple(c for c in self.cycles if c.kind == FACE)

    def key(self) -> str:
        """Identity string used to match FrameFields and signatures."""
        return f"{self.sampling}:{self.node_count}n:{len(self.edges)}e"


def canonical_angle(direction) -> float:
    """Angle of `direction` against (1, 0), reduced to [0, pi/2).

    The frame has quarter-turn symmetry, so this canonical representative
    generates a frame containing +/-direction and its perpendicular.
    """
    x, y = float(direction[0]), float(direction[1])
    if x == 0.0 and y == 0.0:
        raise ValueError("zero direction has no angle")
    theta = math.atan2(y, x) % HALF_PI
    if theta >= HALF_PI:  # fold the rounding edge case back to 0
        theta -= HALF_PI
    return theta


def _adjacency(node_count: int, edges: np.ndarray) -> tuple[tuple[int, ...], ...]:
    neigh: list[list[int]] = [[] for _ in range(node_count)]
    for i, j in edges:
        neigh[int(i)].append(int(j))
        neigh[int(j)].append(int(i))
    return tuple(tuple(sorted(n)) for n in neigh)


def _is_connected(node_count: int, adjacency) -> bool:
    if node_count == 0:
        return True
    seen = np.zeros(node_count, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return bool(seen.all())


def build_primal(mesh: Mesh) -> FieldGraph:
    """One node per vertex, one edge per mesh edge, faces + boundary loops."""
    n = mesh.vertex_count
    edges = np.array(sorted(edge_incidence(mesh.triangles)), dtype=np.int64).reshape(-1, 2)

    mask = np.zeros(n, dtype=bool)
    angle = np.zeros(n, dtype=float)
    for v in sorted({int(u) for e in mesh.boundary_edges for u in e}):
        mask[v] = True
        angle[v] = canonical_angle(boundary_vertex_normal(mesh, v))

    cycles = [Cycle(tuple(int(i) for i in tri), FACE) for tri in mesh.triangles]
    for loop in boundary_loops(mesh):
        cycles.append(Cycle(tuple(reversed(loop)), BOUNDARY))

    adjacency = _adjacency(n, edges)
    return FieldGraph(
        sampling="primal",
        node_count=n,
        edges=edges,
        node_position=mesh.vertices.copy(),
        constraint_mask=mask,
        constraint_angle=angle,
        cycles=tuple(cycles),
        connected=_is_connected(n, adjacency),
        adjacency=adjacency,
    )


def _vertex_first(tri, v: int) -> tuple[int, int, int]:
    a, b, c = (int(x) for x in tri)
    if a == v:
        return a, b, c
    if b == v:
        return b, c, a
    if c == v:
        return c, a, b
    raise ValueError(f"vertex {v} not in triangle {tri}")


def build_dual(mesh: Mesh) -> FieldGraph:
    """One node per triangle (at its centroid), one edge per interior mesh edge.

    Face cycles are the CCW triangle fans around interior vertices. Each mesh
    boundary loop yields one cycle: the corridor of triangles met while
    walking the boundary and pivoting around each boundary vertex, reversed
    to match the edge-orientation convention. A disconnected dual graph is
    accepted and flagged via `connected=False`.
    """
    m = mesh.triangle_count
    incidence = edge_incidence(mesh.triangles)
    centroids = mesh.vertices[mesh.triangles].mean(axis=1)

    dual_edges = sorted(
        (min(tris), max(tris)) for tris in incidence.values() if len(tris) == 2
    )
    edges = np.array(dual_edges, dtype=np.int64).reshape(-1, 2)

    boundary_tris = sorted({int(tris[0]) for e, tris in incidence.items() if len(tris) == 1})
    mask = np.zeros(m, dtype=bool)
    angle = np.zeros(m, dtype=float)
    for t in boundary_tris:
        mask[t] = True
        angle[t] = canonical_angle(boundary_triangle_normal(mesh, t))

    # Crossing the (v, q) edge of v-first triangle (v, p, q) pivots CCW
    # around v; crossing (v, p) pivots CW.
    def across(t: int, a: int, b: int) -> int | None:
        tris = incidence[(a, b) if a < b else (b, a)]
        if len(tris) == 1:
            return None
        return tris[0] if tris[1] == t else tris[1]

    vertex_tris: list[list[int]] = [[] for _ in range(mesh.vertex_count)]
    for t, tri in enumerate(mesh.triangles):
        for v in tri:
            vertex_tris[int(v)].append(t)

    boundary_vertices = {int(u) for e in mesh.boundary_edges for u in e}
    cycles: list[Cycle] = []
    for v in range(mesh.vertex_count):
        if v in boundary_vertices:
            continue
        owners = vertex_tris[v]
        if not owners:
            continue  # isolated vertex: no fan
        start = min(owners)
        fan = [start]
        _, _, q = _vertex_first(mesh.triangles[start], v)
        nxt = across(start, v, q)
        while nxt is not None and nxt != start:
            fan.append(nxt)
            _, _, q = _vertex_first(mesh.triangles[nxt], v)
            nxt = across(nxt, v, q)
        if nxt is None:
            raise ValueError(f"interior vertex {v} has an open triangle fan")
        cycles.append(Cycle(tuple(fan), FACE))

    dir_owner = {}
    for t, (a, b, c) in enumerate(mesh.triangles):
        for u, w in ((a, b), (b, c), (c, a)):
            dir_owner[(int(u), int(w))] = t

    for loop in boundary_loops(mesh):
        walk: list[int] = []
        k = len(loop)
        for idx in range(k):
            u, v = loop[idx], loop[(idx + 1) % k]
            t = dir_owner[(u, v)]
            t_next = dir_owner[(v, loop[(idx + 2) % k])]
            walk.append(t)
            # Pivot clockwise around v from t toward the next boundary edge.
            cur = t
            while cur != t_next:
                _, p, _ = _vertex_first(mesh.triangles[cur], v)
                step = across(cur, v, p)
                if step is None:
                    raise ValueError(f"broken triangle fan at boundary vertex {v}")
                if step == t_next:
                    break
                walk.append(step)
                cur = step
        # Corner triangles produce consecutive repeats (null steps); drop them.
        compact = [walk[0]]
        for t in walk[1:]:
            if t != compact[-1]:
                compact.append(t)
        if len(compact) > 1 and compact[0] == compact[-1]:
            compact.pop()
        cycles.append(Cycle(tuple(reversed(compact)), BOUNDARY))

    adjacency = _adjacency(m, edges)
    return FieldGraph(
        sampling="dual",
        node_count=m,
        edges=edges,
        node_position=centroids,
        constraint_mask=mask,
        constraint_angle=angle,
        cycles=tuple(cycles),
        connected=_is_connected(m, adjacency),
        adjacency=adjacency,
    )


@dataclass(frozen=True)
class Provenance:
    solver: str
    init: str = ""
    seed: int | None = None


@dataclass
class FrameField:
    """One frame angle per graph node plus how it was produced."""

    theta: np.ndarray
    graph_key: str
    provenance: Provenance
    degenerate_nodes: tuple[int, ...] = ()
    iterations: int = 0
    status: str = "ok"

    @property
    def sampling(self) -> str:
        return self.graph_key.split(":", 1)[0]


def framefield_to_text(fld: FrameField) -> str:
    """One "index theta" line per node, after a provenance header."""
    seed = "" if fld.provenance.seed is None else str(fld.provenance.seed)
    head = (
        f"# sampling={fld.sampling} solver={fld.provenance.solver}"
        f" init={fld.provenance.init} seed={seed}"
    )
    lines = [head]
    lines += [f"{i} {float(t)!r}" for i, t in enumerate(fld.theta)]
    return "\n".join(lines) + "\n"


def framefield_from_text(text: str) -> FrameField:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing frame-field header")
    meta = dict(item.split("=", 1) for item in lines[0][1:].split())
    theta = np.empty(len(lines) - 1, dtype=float)
    for row, ln in enumerate(lines[1:]):
        idx_s, val_s = ln.split()
        if int(idx_s) != row:
            raise ValueError(f"unexpected node index on line {row + 2}")
        theta[row] = float(val_s)
    prov = Provenance(
        solver=meta.get("solver", ""),
        init=meta.get("init", ""),
        seed=int(meta["seed"]) if meta.get("seed") else None,
    )
    key = f"{meta.get('sampling', '')}:{len(theta)}n:?e"
    return FrameField(theta=theta, graph_key=key, provenance=prov)
