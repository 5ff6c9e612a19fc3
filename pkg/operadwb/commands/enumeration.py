"""operad-wb enumerate: isomorphism classes of small trees."""

import argparse

from operadwb.commands.files import write_text
from operadwb.models.colours import TreeKind
from operadwb.services.documents import print_trees
from operadwb.services.enumeration import enumerate_trees


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("enumerate", help="list trees up to isomorphism")
    parser.add_argument("--kind", choices=[k.value for k in TreeKind], default=TreeKind.PLAIN.value)
    parser.add_argument("--colours", default="c", help="comma-separated colours, e.g. 'c,o'")
    parser.add_argument("--max-leaves", type=int, default=2)
    parser.add_argument("--max-vertices", type=int, default=3)
    parser.add_argument("--out", help="output file, stdout by default")
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    colours = [c.strip() for c in args.colours.split(",") if c.strip()]
    found = enumerate_trees(colours, args.kind, args.max_leaves, args.max_vertices)
    write_text(print_trees(found, colours, args.kind), args.out)
    return 0
