import xml.etree.ElementTree as ET

import numpy as np
import pytest

from sphdes.catalog import platonic
from sphdes.sphere import Design, from_vector, random_design
from sphdes.stereogram import StereogramStyle, project, project_design, render

SVG = "{http://www.w3.org/2000/svg}"


@pytest.mark.parametrize(
    "v, expected",
    [
        ((0, 0, 1), (0.0, 0.0, "north")),
        ((0, 0, -1), (0.0, 0.0, "south")),
        ((0, 0.6, 0.8), (0.0, 1 / 3, "north")),
        ((1, 0, 0), (1.0, 0.0, "north")),
    ],
)
def test_project_examples(v, expected):
    m = project(from_vector(v))
    assert m.u == pytest.approx(expected[0], abs=1e-15)
    assert m.v == pytest.approx(expected[1], abs=1e-15)
    assert m.hemisphere == expected[2]


def test_markers_inside_disk():
    for m in project_design(random_design(2000, 3)):
        assert m.u**2 + m.v**2 <= 1 + 1e-9


def test_antipodal_pairs_are_point_reflections():
    d = random_design(50, 4)
    for p, m in zip(d.points, project_design(d)):
        q = project(-p)
        assert (q.u, q.v) == pytest.approx((-m.u, -m.v), abs=1e-12)
        assert {q.hemisphere, m.hemisphere} == {"north", "south"}


def test_equatorial_mirror_pairs_coincide():
    d = random_design(50, 5)
    for p, m in zip(d.points, project_design(d)):
        q = project(from_vector((p.x, p.y, -p.z)))
        assert (q.u, q.v) == pytest.approx((m.u, m.v), abs=1e-12)
        assert q.hemisphere != m.hemisphere


def test_pole_pair_coincides():
    a, b = project(from_vector((0, 0, 1))), project(from_vector((0, 0, -1)))
    assert (a.u, a.v) == (b.u, b.v) and a.hemisphere != b.hemisphere


def test_mirror_pairs_render_concentric():
    d = Design.from_vectors([[0.6, 0, 0.8], [0.6, 0, -0.8]])
    _, ms = markers(render(d))
    (s,), (n,) = [m for m in ms if m[0] == "south"], [m for m in ms if m[0] == "north"]
    assert (s[1], s[2]) == (n[1], n[2]) and s[3] > n[3]


def markers(svg):
    root = ET.fromstring(svg)
    out = []
    for c in root.iter(f"{SVG}circle"):
        cls = c.get("class", "")
        if cls.startswith("marker"):
            out.append((cls.split()[1], float(c.get("cx")), float(c.get("cy")), float(c.get("r")), c.get("fill")))
    return root, out


def test_octahedron_golden():
    svg = render(platonic("octahedron"))
    _, ms = markers(svg)
    north = [m for m in ms if m[0] == "north"]
    south = [m for m in ms if m[0] == "south"]
    assert len(north) == 5 and len(south) == 1
    centre = [m for m in north if (m[1], m[2]) == (south[0][1], south[0][2])]
    assert len(centre) == 1
    assert south[0][3] > centre[0][3]
    assert south[0][4] == "white" and centre[0][4] == "black"
    assert svg.index('class="marker south"') < svg.index('class="marker north"')
    assert svg == render(platonic("octahedron"))


def test_tetrahedron_sign_pattern():
    design = platonic("tetrahedron")
    _, ms = markers(render(design))
    z = design.xyz[:, 2]
    assert sum(m[0] == "north" for m in ms) == int(np.sum(z >= 0))
    assert sum(m[0] == "south" for m in ms) == int(np.sum(z < 0))


def test_no_grid_counts():
    design = random_design(17, 8)
    svg = render(design, StereogramStyle(grid=False))
    root = ET.fromstring(svg)
    circles = list(root.iter(f"{SVG}circle"))
    assert len(circles) == design.n + 1
    assert sum(c.get("class") == "boundary" for c in circles) == 1
    assert not list(root.iter(f"{SVG}line"))


def test_grid_elements():
    style = StereogramStyle(grid=True, meridians=6, parallels=3)
    root = ET.fromstring(render(platonic("cube"), style))
    assert len([l for l in root.iter(f"{SVG}line") if l.get("class") == "meridian"]) == 6
    assert len([c for c in root.iter(f"{SVG}circle") if c.get("class") == "parallel"]) == 3


def test_canvas_orientation():
    svg = render(Design.from_vectors([[0, 0.6, 0.8]]), StereogramStyle(size=210))
    _, ms = markers(svg)
    # v = 1/3 maps above the centre (smaller y)
    assert ms[0][1] == pytest.approx(105.0, abs=1e-3)
    assert ms[0][2] == pytest.approx((1.05 - 1 / 3) * 100, abs=1e-3)


def test_style_validation():
    with pytest.raises(ValueError):
        StereogramStyle(size=0)
