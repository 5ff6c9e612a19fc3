"""operad-wb render: draw a cube configuration as SVG."""

import argparse

from operadwb.commands.files import read_text, write_bytes
from operadwb.config import settings
from operadwb.exceptions import UnsupportedInput
from operadwb.models.cube import CubeConfig
from operadwb.registry import get_instance
from operadwb.schemas.render import RenderOptions
from operadwb.services.documents import load_element, parse_document
from operadwb.services.render import render_svg


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("render", help="render a cube-config document to SVG")
    parser.add_argument("input", help="term document, '-' for stdin")
    parser.add_argument("--size", type=int, default=settings.RENDER_SIZE)
    parser.add_argument("--no-labels", action="store_true")
    parser.add_argument("--out", help="SVG file, stdout by default")
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    document = parse_document(read_text(args.input))
    x = load_element(document, get_instance(document.instance))
    if not isinstance(x, CubeConfig):
        raise UnsupportedInput(f"{document.instance} elements are not cube configurations")
    options = RenderOptions(size=args.size, labels=not args.no_labels)
    write_bytes(render_svg(x, options), args.out)
    return 0
