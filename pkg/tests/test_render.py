import xml.etree.ElementTree as ET

import pytest

from sphersing.coloredfan import ColoredFan
from sphersing.errors import RenderRankUnsupported
from sphersing.render import render_svg

from conftest import HALF_111, toric

NS = "{http://www.w3.org/2000/svg}"


def _group(svg, gid):
    root = ET.fromstring(svg.encode())
    return next(g for g in root.iter(NS + "g") if g.get("id") == gid)


def test_three_cone_picture(three_cone):
    svg = render_svg(three_cone)
    assert len(_group(svg, "rays")) == 3
    assert len(_group(svg, "color-markers")) == 2
    assert len(_group(svg, "colorless-markers")) == 1
    assert len(_group(svg, "cones")) == 3


def test_byte_deterministic(three_cone):
    assert render_svg(three_cone, "x") == render_svg(three_cone, "x")


def test_trivial_fan_has_axes_only(sl3u):
    svg = render_svg(ColoredFan.build(sl3u, [([], [])]))
    assert len(_group(svg, "rays")) == 0 and len(_group(svg, "cones")) == 0
    assert len(_group(svg, "axes")) == 2


def test_p2_arrows():
    svg = render_svg(toric([[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]]))
    assert len(_group(svg, "rays")) == 3 and len(_group(svg, "colorless-markers")) == 3
    assert len(_group(svg, "color-markers")) == 0


def test_rank_three_rejected():
    with pytest.raises(RenderRankUnsupported):
        render_svg(toric([HALF_111]))


def test_title_escaped(three_cone):
    assert "<title>a &lt;b&gt; &amp; c</title>" in render_svg(three_cone, "a <b> & c")
