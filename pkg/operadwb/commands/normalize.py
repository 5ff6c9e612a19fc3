"""operad-wb normalize: reprint a term document in normal form."""

import argparse
import random

from operadwb.commands.files import read_text, write_text
from operadwb.registry import get_instance
from operadwb.services.documents import load_element, parse_document, print_term
from operadwb.services.rewriting import RewriteSystem


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("normalize", help="rewrite a term document to normal form")
    parser.add_argument("input", help="term document, '-' for stdin")
    parser.add_argument("--seed", type=int, help="fire redexes in a random order drawn from this seed")
    parser.add_argument("--out", help="output file, stdout by default")
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    document = parse_document(read_text(args.input))
    structure = get_instance(document.instance)
    # loading already normalizes with the first-redex order
    x = load_element(document, structure)
    if isinstance(structure, RewriteSystem) and args.seed is not None:
        x = structure.normalize(x, random.Random(args.seed))
    write_text(print_term(document.instance, structure, x), args.out)
    return 0
