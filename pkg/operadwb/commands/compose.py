"""operad-wb compose: one structure map applied to term documents."""

import argparse
import logging

from operadwb.commands.files import read_text, write_text
from operadwb.exceptions import InvalidArgument, UnsupportedInput
from operadwb.registry import get_instance
from operadwb.services.documents import load_element, parse_document, print_term
from operadwb.services.operads import bimodule_act, compose
from operadwb.services.structures import Bimodule, Operad

logger = logging.getLogger(__name__)

MODES = ("compose", "left", "right")


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("compose", help="compose or act with term documents")
    parser.add_argument("inputs", nargs="+", help="term documents, '-' for stdin")
    parser.add_argument("--instance", help="structure to work in; defaults to the first document's")
    parser.add_argument("--slot", type=int, default=1, help="input slot for compose and right actions")
    parser.add_argument("--mode", choices=MODES, default="compose")
    parser.add_argument("--out", help="output file, stdout by default")
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    documents = [parse_document(read_text(path)) for path in args.inputs]
    name = args.instance or documents[0].instance
    structure = get_instance(name)

    if args.mode == "compose":
        if not isinstance(structure, Operad):
            raise UnsupportedInput(f"{structure.name} is not an operad; use --mode left or right")
        x, y = _pair(documents, structure, structure)
        result = compose(structure, x, args.slot, y)
    elif not isinstance(structure, Bimodule):
        raise UnsupportedInput(f"{structure.name} has no {args.mode} action")
    elif args.mode == "right":
        x, b = _pair(documents, structure, structure.right)
        result = bimodule_act(structure, "right", x, args.slot, b)
    else:
        a = load_element(documents[0], structure.left)
        xs = [load_element(document, structure) for document in documents[1:]]
        result = bimodule_act(structure, "left", a, xs)

    logger.info("%s on %s: result of arity %d", args.mode, structure.name, structure.arity(result))
    write_text(print_term(name, structure, result), args.out)
    return 0


def _pair(documents, first, second):
    if len(documents) != 2:
        raise InvalidArgument(f"expected two documents, got {len(documents)}")
    return load_element(documents[0], first), load_element(documents[1], second)
