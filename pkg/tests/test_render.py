from xml.etree import ElementTree as ET

from framefield2d.dedicated import solve_field_dedicated
from framefield2d.graph import build_primal
from framefield2d.render import render_svg
from framefield2d.topology import TopologySignature, signature


def render(mesh, graph):
    fld = solve_field_dedicated(graph)
    sig = signature(graph, fld.theta)
    return render_svg(mesh, graph, fld, sig), fld, sig


def test_svg_is_wellformed_xml(disk_mesh, disk_primal):
    text, _, _ = render(disk_mesh, disk_primal)
    root = ET.fromstring(text)
    assert root.tag.endswith("svg")
    assert root.get("version") == "1.1"


def test_one_glyph_per_node(disk_mesh, disk_primal):
    text, _, _ = render(disk_mesh, disk_primal)
    root = ET.fromstring(text)
    ns = {"svg": "http://www.w3.org/2000/svg"}
    glyphs = root.findall(".//svg:path[@class='glyph']", ns)
    assert len(glyphs) == disk_primal.node_count


def test_singularity_circles_match_signature(disk_mesh, disk_primal):
    text, _, sig = render(disk_mesh, disk_primal)
    root = ET.fromstring(text)
    ns = {"svg": "http://www.w3.org/2000/svg"}
    circles = root.findall(".//svg:circle[@class='sing']", ns)
    assert len(circles) == len(sig.singularities)


def test_no_circles_without_singularities(unit_square_mesh):
    g = build_primal(unit_square_mesh)
    fld = solve_field_dedicated(g)
    empty = TopologySignature(g.key(), g.sampling, (), ((2, 0),), 0)
    text = render_svg(unit_square_mesh, g, fld, empty)
    root = ET.fromstring(text)
    ns = {"svg": "http://www.w3.org/2000/svg"}
    assert root.findall(".//svg:circle", ns) == []
    labels = root.findall(".//svg:text[@class='hole']", ns)
    assert len(labels) == 1


def test_hole_labels_on_annulus(annulus_mesh):
    g = build_primal(annulus_mesh)
    text, _, sig = render(annulus_mesh, g)
    root = ET.fromstring(text)
    ns = {"svg": "http://www.w3.org/2000/svg"}
    labels = root.findall(".//svg:text[@class='hole']", ns)
    assert len(labels) == len(sig.hole_turnings) == 2
