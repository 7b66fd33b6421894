"""Built-in test geometry: disk, annulus and square meshes in the OBJ subset.

All generators emit CCW manifold triangulations. Ring-based shapes start at a
small fixed angular offset so boundary constraint angles stay away from exact
quarter-frame ties, and their vertex density carries a gentle mode-2
modulation: perfectly uniform circular data puts a multiplicity-4 zero of the
representation vector field at the exact center, which no desk-scale mesh can
resolve; the modulation splits it into four well-separated simple zeros while
keeping every vertex exactly on its circle.
"""

from __future__ import annotations

import math

# Rotating the rings keeps wrapped angle differences off the +/- pi/4 tie.
_RING_OFFSET = 0.05
# Low-frequency density modulation amplitude and phase (see module docstring).
_MOD_AMP = 0.2
_MOD_PHASE = 1.0


def _obj(verts: list[tuple[float, float]], tris: list[tuple[int, int, int]]) -> str:
    lines = [f"v {x!r} {y!r}" for x, y in verts]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in tris]
    return "\n".join(lines) + "\n"


def _ring(radius: float, count: int) -> list[tuple[float, float]]:
    pts = []
    for k in range(count):
        t = _RING_OFFSET + 2.0 * math.pi * k / count
        ang = t + _MOD_AMP * math.sin(2.0 * t + _MOD_PHASE)
        pts.append((radius * math.cos(ang), radius * math.sin(ang)))
    return pts


def _stitch_rings(inner: list[int], outer: list[int], tris: list) -> None:
    """Triangulate the strip between two concentric vertex rings.

    Vertices are index lists ordered CCW by angle; the two rings may have
    different lengths. A two-pointer merge by fractional angle keeps the strip
    manifold and all triangles CCW.
    """
    ni, no = len(inner), len(outer)
    i = j = 0
    while i < ni or j < no:
        # Fractional progress of the next candidate vertex on each ring.
        fi = (i + 1) / ni
        fo = (j + 1) / no
        if j >= no or (i < ni and fi <= fo):
            # Advance inner ring: triangle (inner[i], outer[j], inner[i+1]).
            tris.append((inner[i % ni], outer[j % no], inner[(i + 1) % ni]))
            i += 1
        else:
            tris.append((inner[i % ni], outer[j % no], outer[(j + 1) % no]))
            j += 1


def disk_obj(resolution: int) -> str:
    """Fan/rings triangulation of the unit disk; resolution = ring count.

    Ring k holds 6k vertices, so the triangle count is 6 * resolution**2.
    """
    if resolution < 3:
        raise ValueError("resolution must be >= 3")
    verts: list[tuple[float, float]] = [(0.0, 0.0)]
    rings: list[list[int]] = []
    for k in range(1, resolution + 1):
        pts = _ring(k / resolution, 6 * k)
        rings.append(list(range(len(verts), len(verts) + len(pts))))
        verts.extend(pts)
    tris: list[tuple[int, int, int]] = []
    first = rings[0]
    for k in range(len(first)):
        tris.append((0, first[k], first[(k + 1) % len(first)]))
    for inner, outer in zip(rings, rings[1:]):
        _stitch_rings(inner, outer, tris)
    return _obj(verts, tris)


def annulus_obj(resolution: int, r_inner: float = 0.5, r_outer: float = 1.0) -> str:
    """Annulus between the two radii; resolution = radial strip count."""
    if resolution < 3:
        raise ValueError("resolution must be >= 3")
    per_ring = 4 * resolution
    verts: list[tuple[float, float]] = []
    rings: list[list[int]] = []
    for k in range(resolution + 1):
        r = r_inner + (r_outer - r_inner) * k / resolution
        pts = _ring(r, per_ring)
        rings.append(list(range(len(verts), len(verts) + len(pts))))
        verts.extend(pts)
    tris: list[tuple[int, int, int]] = []
    for inner, outer in zip(rings, rings[1:]):
        _stitch_rings(inner, outer, tris)
    return _obj(verts, tris)


def square_obj(resolution: int) -> str:
    """Regular grid on the unit square, each cell split into two triangles."""
    if resolution < 3:
        raise ValueError("resolution must be >= 3")
    n = resolution
    verts = [(j / (n - 1), i / (n - 1)) for i in range(n) for j in range(n)]
    tris = []
    for i in range(n - 1):
        for j in range(n - 1):
            v00 = i * n + j
            v10 = i * n + j + 1
            v01 = (i + 1) * n + j
            v11 = (i + 1) * n + j + 1
            tris.append((v00, v10, v11))
            tris.append((v00, v11, v01))
    return _obj(verts, tris)


_GENERATORS = {"disk": disk_obj, "annulus": annulus_obj, "square": square_obj}


def generate_mesh(kind: str, resolution: int) -> str:
    """Return OBJ text for one of the built-in shapes."""
    try:
        gen = _GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown mesh kind {kind!r}") from None
    return gen(resolution)
