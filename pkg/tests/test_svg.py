"""SVG rendering: well-formed markup for every supported object kind."""

import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from ballpoly.diskpoly import boundary_structure
from ballpoly.proofreplay import build_symmetric_cap_domain
from ballpoly.sphere import GeneratorSet
from ballpoly.svgfig import render_svg

from conftest import two_point_gens


def parsed(markup: str) -> ET.Element:
    return ET.fromstring(markup)


class TestRenderSvg:
    def test_boundary_renders_parseable_markup(self, reuleaux_07):
        markup = render_svg(boundary_structure(reuleaux_07), generators=reuleaux_07)
        root = parsed(markup)
        assert root.tag.endswith("svg")
        assert "<path" in markup

    def test_full_ball_boundary_renders(self):
        gens = GeneratorSet(dim=2, radius=0.5, points=np.array([[0.0, 0.0, 1.0]]))
        markup = render_svg(boundary_structure(gens))
        parsed(markup)
        assert "<path" in markup

    def test_cap_domain_renders(self):
        dom = build_symmetric_cap_domain(0.31, 0.7)
        markup = render_svg(dom)
        parsed(markup)
        assert markup.count("<path") >= 3

    def test_bare_generator_set_renders_dots(self):
        gens = two_point_gens(0.7, 0.4)
        markup = render_svg(gens)
        parsed(markup)
        assert "<circle" in markup

    def test_stereographic_projection(self, reuleaux_half):
        markup = render_svg(boundary_structure(reuleaux_half),
                            projection="stereographic")
        parsed(markup)

    def test_writes_to_path(self, reuleaux_03, tmp_path):
        out = tmp_path / "fig.svg"
        markup = render_svg(boundary_structure(reuleaux_03), path=out)
        assert out.read_text() == markup

    def test_rejects_unknown_objects(self):
        with pytest.raises(TypeError):
            render_svg(math.pi)

    def test_deterministic_output(self, reuleaux_07):
        boundary = boundary_structure(reuleaux_07)
        assert render_svg(boundary) == render_svg(boundary)
