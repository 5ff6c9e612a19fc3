"""SVG pictures of cube configurations in dimensions 1 and 2.

`layout_config` is pure and returns what will be drawn; `render_svg` paints
those shapes on a cairo SVG surface. Cubes tagged open get a heavy stroke on
their right face, the face t_1 = 1 they must lie on.
"""

import io
import logging
import re
from dataclasses import dataclass
from fractions import Fraction

import cairo

from operadwb.exceptions import UnsupportedDimension
from operadwb.models.colours import OPEN
from operadwb.models.cube import CubeConfig
from operadwb.schemas.render import RenderOptions

logger = logging.getLogger(__name__)

FACE_WIDTH = 4.0
_SURFACE_ID = re.compile(rb"surface\d+")


@dataclass(frozen=True)
class Shape:
    kind: str  # "frame", "cube", "face" or "label"
    x: float
    y: float
    width: float = 0.0
    height: float = 0.0
    text: str = ""


def _canvas(config: CubeConfig, options: RenderOptions) -> tuple[float, float]:
    if config.d == 1:
        return float(options.size), float(options.strip_height + 2 * options.margin)
    return float(options.size), float(options.size)


def layout_config(config: CubeConfig, options: RenderOptions | None = None) -> list[Shape]:
    if config.d > 2:
        raise UnsupportedDimension(config.d)
    options = options or RenderOptions()
    width, height = _canvas(config, options)
    m = options.margin
    inner_w = width - 2 * m
    inner_h = height - 2 * m

    def box(lo_x: Fraction, hi_x: Fraction, lo_y: Fraction, hi_y: Fraction) -> tuple[float, float, float, float]:
        # the second axis points up
        return (
            m + float(lo_x) * inner_w,
            m + (1 - float(hi_y)) * inner_h,
            float(hi_x - lo_x) * inner_w,
            float(hi_y - lo_y) * inner_h,
        )

    shapes = [Shape("frame", m, m, inner_w, inner_h)]
    if config.output == OPEN:
        shapes.append(Shape("face", m + inner_w, m, 0.0, inner_h))

    for index, cube in enumerate(config.cubes, start=1):
        lo_x, hi_x = cube.interval(1)
        lo_y, hi_y = cube.interval(2) if config.d == 2 else (Fraction(0), Fraction(1))
        x, y, w, h = box(lo_x, hi_x, lo_y, hi_y)
        shapes.append(Shape("cube", x, y, w, h))
        if config.tags is not None and config.tags[index - 1] == OPEN:
            shapes.append(Shape("face", x + w, y, 0.0, h))
        if options.labels:
            shapes.append(Shape("label", x + w / 2, y + h / 2, text=str(index)))
    return shapes


def _paint(context: cairo.Context, shapes: list[Shape]) -> None:
    context.set_source_rgb(1, 1, 1)
    context.paint()
    context.select_font_face("sans-serif", cairo.FONT_SLANT_NORMAL, cairo.FONT_WEIGHT_NORMAL)
    context.set_font_size(11)
    for shape in shapes:
        if shape.kind == "frame":
            context.set_source_rgb(0, 0, 0)
            context.set_line_width(1.5)
            context.rectangle(shape.x, shape.y, shape.width, shape.height)
            context.stroke()
        elif shape.kind == "cube":
            context.set_source_rgba(0.55, 0.7, 0.9, 0.45)
            context.rectangle(shape.x, shape.y, shape.width, shape.height)
            context.fill_preserve()
            context.set_source_rgb(0.1, 0.2, 0.45)
            context.set_line_width(1)
            context.stroke()
        elif shape.kind == "face":
            context.set_source_rgb(0.75, 0.1, 0.1)
            context.set_line_width(FACE_WIDTH)
            context.move_to(shape.x, shape.y)
            context.line_to(shape.x, shape.y + shape.height)
            context.stroke()
        elif shape.kind == "label":
            extents = context.text_extents(shape.text)
            context.set_source_rgb(0, 0, 0)
            context.move_to(shape.x - extents.width / 2, shape.y + extents.height / 2)
            context.show_text(shape.text)


def render_svg(config: CubeConfig, options: RenderOptions | None = None) -> bytes:
    options = options or RenderOptions()
    shapes = layout_config(config, options)
    width, height = _canvas(config, options)
    buffer = io.BytesIO()
    surface = cairo.SVGSurface(buffer, width, height)
    surface.restrict_to_version(cairo.SVG_VERSION_1_1)
    context = cairo.Context(surface)
    _paint(context, shapes)
    surface.finish()
    logger.debug("rendered %d shapes for a %d-cube configuration", len(shapes), config.arity)
    # cairo numbers surfaces per process
    return _SURFACE_ID.sub(b"surface1", buffer.getvalue())
