"""SVG rendering of meshes, cross glyphs, singularities and hole turnings."""

from __future__ import annotations

import math
from xml.etree import ElementTree as ET

import numpy as np

from .graph import BOUNDARY, FieldGraph, FrameField
from .mesh import Mesh
from .topology import TopologySignature

ARM_SCALE = 0.3  # glyph arm = 0.3 x mean incident edge length
SING_SCALE = 0.6  # singularity radius = 0.6 x glyph arm
POSITIVE_COLOR = "#d62728"
NEGATIVE_COLOR = "#1f77b4"
MESH_COLOR = "#cccccc"
GLYPH_COLOR = "#222222"


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _arm_lengths(graph: FieldGraph) -> np.ndarray:
    lengths = np.zeros(graph.node_count)
    counts = np.zeros(graph.node_count)
    for i, j in graph.edges:
        d = graph.node_position[int(i)] - graph.node_position[int(j)]
        ell = float(np.hypot(d[0], d[1]))
        for k in (int(i), int(j)):
            lengths[k] += ell
            counts[k] += 1
    mean_all = lengths.sum() / counts.sum() if counts.sum() else 1.0
    arms = np.where(counts > 0, lengths / np.maximum(counts, 1), mean_all)
    return ARM_SCALE * arms


def render_svg(
    mesh: Mesh,
    graph: FieldGraph,
    fld: FrameField,
    sig: TopologySignature,
) -> str:
    """Valid SVG 1.1 document: mesh edges, one 4-armed cross per node,
    singularity dots colored by sign, hole turnings as text labels."""
    lo = mesh.vertices.min(axis=0)
    hi = mesh.vertices.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
    margin = 0.05 * span

    def pt(p) -> tuple[str, str]:
        # Flip y so the drawing keeps mathematical orientation.
        return _fmt(float(p[0])), _fmt(float(lo[1] + hi[1] - p[1]))

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "viewBox": " ".join(
                _fmt(v)
                for v in (lo[0] - margin, lo[1] - margin, span + 2 * margin, span + 2 * margin)
            ),
            "width": "800",
            "height": "800",
        },
    )

    mesh_group = ET.SubElement(
        svg, "g", {"class": "mesh", "stroke": MESH_COLOR, "stroke-width": _fmt(0.004 * span)}
    )
    seen = set()
    for a, b, c in mesh.triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            x1, y1 = pt(mesh.vertices[u])
            x2, y2 = pt(mesh.vertices[v])
            ET.SubElement(mesh_group, "line", {"x1": x1, "y1": y1, "x2": x2, "y2": y2})

    arms = _arm_lengths(graph)
    glyphs = ET.SubElement(
        svg,
        "g",
        {"class": "glyphs", "stroke": GLYPH_COLOR, "stroke-width": _fmt(0.003 * span)},
    )
    for i in range(graph.node_count):
        cx, cy = graph.node_position[i]
        arm = float(arms[i])
        t = float(fld.theta[i])
        d_parts = []
        for k in range(2):  # two full strokes give the four arms
            ang = t + k * math.pi / 2.0
            dx, dy = arm * math.cos(ang), arm * math.sin(ang)
            x1, y1 = pt((cx - dx, cy - dy))
            x2, y2 = pt((cx + dx, cy + dy))
            d_parts.append(f"M {x1} {y1} L {x2} {y2}")
        ET.SubElement(glyphs, "path", {"class": "glyph", "d": " ".join(d_parts)})

    sing_group = ET.SubElement(svg, "g", {"class": "singularities"})
    for s in sig.singularities:
        cyc = graph.cycles[s.cycle]
        radius = SING_SCALE * float(np.mean(arms[list(cyc.nodes)]))
        x, y = pt(s.position)
        ET.SubElement(
            sing_group,
            "circle",
            {
                "class": "sing",
                "cx": x,
                "cy": y,
                "r": _fmt(radius),
                "fill": POSITIVE_COLOR if s.index > 0 else NEGATIVE_COLOR,
            },
        )

    label_group = ET.SubElement(
        svg, "g", {"class": "holes", "font-size": _fmt(0.05 * span), "fill": GLYPH_COLOR}
    )
    for ci, turning in sig.hole_turnings:
        cyc = graph.cycles[ci]
        if cyc.kind != BOUNDARY:
            continue
        pos = graph.node_position[list(cyc.nodes)].mean(axis=0)
        x, y = pt(pos)
        el = ET.SubElement(label_group, "text", {"x": x, "y": y, "class": "hole"})
        el.text = f"turning {turning}"

    return ET.tostring(svg, encoding="unicode") + "\n"
