import json
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

import pytest

pytest.importorskip("cairo")

from operadwb.exceptions import UnsupportedDimension
from operadwb.models import CLOSED, OPEN, CubeConfig, LittleCube
from operadwb.schemas import RenderOptions
from operadwb.services.render import layout_config, render_svg

half = Fraction(1, 2)
GOLDEN = Path(__file__).parent / "data"


def swiss_cheese_pair() -> CubeConfig:
    return CubeConfig(
        2,
        (LittleCube.from_intervals((0, half), (0, half)), LittleCube.from_intervals((half, 1), (half, 1))),
        (CLOSED, OPEN),
        OPEN,
    )


def kinds(shapes) -> list[str]:
    return [s.kind for s in shapes]


def test_layout_counts_cubes():
    shapes = layout_config(swiss_cheese_pair())
    assert kinds(shapes).count("cube") == 2
    # the output face and the face of the open cube
    assert kinds(shapes).count("face") == 2
    assert kinds(shapes).count("label") == 2


def test_layout_matches_golden():
    shapes = layout_config(swiss_cheese_pair(), RenderOptions(size=200, margin=20))
    golden = json.loads((GOLDEN / "sc2_pair_layout.json").read_text(encoding="utf-8"))
    assert [asdict(s) for s in shapes] == golden


def test_second_axis_points_up():
    options = RenderOptions(size=100, margin=0)
    lower, upper = [s for s in layout_config(swiss_cheese_pair(), options) if s.kind == "cube"]
    assert lower.y == 50.0
    assert upper.y == 0.0


def test_one_dimensional_strip():
    options = RenderOptions(size=200, labels=False)
    x = CubeConfig(1, (LittleCube.from_intervals((0, half)), LittleCube.from_intervals((half, 1))))
    shapes = layout_config(x, options)
    assert "label" not in kinds(shapes)
    assert shapes[0].height == options.strip_height


def test_three_dimensional_cubes_are_not_drawn():
    with pytest.raises(UnsupportedDimension):
        layout_config(CubeConfig(3, (LittleCube.identity(3),)))


def test_svg_is_stable():
    one = render_svg(swiss_cheese_pair())
    two = render_svg(swiss_cheese_pair())
    assert one == two
    assert b"<svg" in one
