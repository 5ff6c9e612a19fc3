"""Term documents: indented JSON carrying an instance name, a kind and the
instance's own encoding of one element."""

import json
import logging
from collections.abc import Iterable

from pydantic import ValidationError

from operadwb.exceptions import DocumentParseError, UnsupportedInput
from operadwb.models.colours import Colour, TreeKind
from operadwb.models.tree import Node
from operadwb.schemas.document import TermDocument, TreeListDocument
from operadwb.services.rewriting import dump_term
from operadwb.services.structures import SSequence

logger = logging.getLogger(__name__)


def print_term(instance: str, structure: SSequence, x) -> str:
    document = TermDocument(instance=instance, kind=structure.kind, element=structure.dump(x))
    return document.model_dump_json(indent=2, exclude_none=True)


def parse_document(text: str) -> TermDocument:
    try:
        return TermDocument.model_validate(json.loads(text))
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"line {exc.lineno}: {exc.msg}") from exc
    except ValidationError as exc:
        raise DocumentParseError(str(exc)) from exc


def load_element(document: TermDocument, structure: SSequence):
    if document.kind != structure.kind:
        raise DocumentParseError(f"{document.instance} holds {structure.kind.value} terms, not {document.kind.value}")
    try:
        x = structure.load(document.element)
    except ValidationError as exc:
        raise DocumentParseError(str(exc)) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentParseError(f"bad {document.kind.value} element: {exc}") from exc
    if not structure.contains(x):
        raise UnsupportedInput(f"the element does not belong to {structure.name}")
    return x


def print_trees(trees: Iterable[Node], colours: Iterable[Colour], kind: TreeKind | str) -> str:
    documents = [dump_term(tree, lambda vertex, above: None) for tree in trees]
    listing = TreeListDocument(kind=TreeKind(kind), colours=sorted(colours), count=len(documents), trees=documents)
    logger.debug("printing %d %s trees", listing.count, listing.kind.value)
    return listing.model_dump_json(indent=2, exclude_none=True)
