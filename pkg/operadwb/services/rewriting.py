"""Oriented rewriting of labelled tree terms.

Every tree-valued structure (free objects, the resolutions, L) is a
`RewriteSystem`: it names its rules, matches them at vertices and fires
them one at a time. The symmetric-action relation is never a rule; it is
absorbed by the canonical form computed at the end.
"""

import logging
import random
from dataclasses import dataclass, replace
from typing import Any, NamedTuple

from operadwb.config import settings
from operadwb.exceptions import DocumentParseError, LabelProfileError, RewriteLimitExceeded, UnsupportedInput
from operadwb.models.colours import ColourProfile
from operadwb.models.permutation import Permutation
from operadwb.models.tree import Leaf, Node, Vertex
from operadwb.schemas.document import NodeDocument, format_rational, parse_rational
from operadwb.services import trees
from operadwb.services.canonical import CanonicalCode, canonical_encoding, canonical_form
from operadwb.services.structures import SSequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Redex:
    rule: str
    vid: int


class Context(NamedTuple):
    vertex: Vertex
    parent: Vertex | None
    position: int
    above: bool


def contexts(term: Node) -> list[Context]:
    return [Context(*entry) for entry in trees.walk(term)]


def locate(term: Node, vid: int) -> Context:
    for context in contexts(term):
        if context.vertex.vid == vid:
            return context
    raise LabelProfileError(vid, "vertex vanished during rewriting")


def read_corolla(term: Node, space: SSequence, unit=None):
    """The element carried by a corolla, with its leaf permutation applied."""
    if isinstance(term, Leaf):
        if unit is None:
            raise UnsupportedInput("a bare edge carries no label here")
        return unit
    label = term.label
    rho = trees.leaf_order(term)
    return label if rho.is_identity() else space.act(label, rho)


class RewriteSystem:
    """Mixin for structures whose elements are normal tree terms.

    Subclasses list `rules`; rule r is matched by `match_r(context)` and
    fired by `fire_r(term, context)`.
    """

    name: str = "terms"
    rules: tuple[str, ...] = ()
    literal_colours: bool = True

    def space(self, vertex: Vertex, above: bool) -> SSequence | None:
        raise NotImplementedError

    # matching and firing

    def redexes(self, term: Node) -> list[Redex]:
        found = []
        for context in contexts(term):
            for rule in self.rules:
                if getattr(self, f"match_{rule}")(context):
                    found.append(Redex(rule, context.vertex.vid))
        return found

    def fire(self, term: Node, redex: Redex) -> Node:
        return getattr(self, f"fire_{redex.rule}")(term, locate(term, redex.vid))

    def check(self, term: Node) -> None:
        for vertex, _, _, above in trees.walk(term):
            space = self.space(vertex, above)
            if space is None or vertex.label is None:
                raise LabelProfileError(vertex.vid, "missing label")
            profile = space.profile(vertex.label)
            if profile.arity != vertex.arity:
                raise LabelProfileError(vertex.vid, f"label of arity {profile.arity} on {vertex.arity} inputs")
            if self.literal_colours and profile != ColourProfile(vertex.input_colours, vertex.colour):
                raise LabelProfileError(vertex.vid, f"label profile {profile} on edges {vertex.input_colours}")

    def normalize(self, term: Node, rng: random.Random | None = None) -> Node:
        """Rewrite to the fixpoint, firing the first redex or a random one."""
        term, _ = trees.renumber(term)
        self.check(term)
        steps = 0
        while found := self.redexes(term):
            if steps >= settings.REWRITE_LIMIT:
                raise RewriteLimitExceeded(self.name, steps)
            redex = found[0] if rng is None else rng.choice(found)
            term = self.fire(term, redex)
            steps += 1
        logger.debug("%s: normal form after %d rewrites", self.name, steps)
        return self.canonical(term)

    def is_normal(self, term: Node) -> bool:
        return not self.redexes(term)

    def canonical(self, term: Node) -> Node:
        form = canonical_form(term, self.space)
        return trees.renumber(form)[0]

    def code(self, term: Node) -> CanonicalCode:
        return canonical_encoding(term, self.space)

    # the SSequence surface shared by every tree-valued structure

    def profile(self, x: Node) -> ColourProfile:
        return trees.profile(x)

    def act(self, x: Node, sigma: Permutation) -> Node:
        return self.canonical(trees.act(x, sigma))

    def key(self, x: Node) -> str:
        return self.code(x).text

    def contains(self, x) -> bool:
        return isinstance(x, (Vertex, Leaf))

    def dump(self, x: Node) -> dict:
        return dump_term(x, self.space).model_dump(exclude_none=True)

    def load(self, data: Any) -> Node:
        document = data if isinstance(data, NodeDocument) else NodeDocument.model_validate(data)
        return self.normalize(load_term(document, self.space))

    # helpers for the rules

    def fresh_vid(self, term: Node) -> int:
        return trees.max_vid(term) + 1

    def splice(self, term: Node, context: Context, label) -> Node:
        """Contract the output edge of `context.vertex` into its parent."""
        return trees.contract_edge(term, context.vertex.vid, label=label)


def dump_term(tree: Node, space_for) -> NodeDocument:
    def visit(node: Node, above: bool) -> NodeDocument:
        if isinstance(node, Leaf):
            return NodeDocument(kind="leaf", colour=node.colour, index=node.index)
        space = space_for(node, above)
        label = space.dump(node.label) if space is not None and node.label is not None else None
        return NodeDocument(
            kind="vertex",
            colour=node.colour,
            pearl=node.pearl,
            label=label,
            level=format_rational(node.level),
            edge=format_rational(node.edge),
            children=[visit(child, above or node.pearl) for child in node.children],
        )

    return visit(tree, False)


def load_term(document: NodeDocument, space_for) -> Node:
    counter = iter(range(1_000_000))

    def visit(doc: NodeDocument, above: bool) -> Node:
        if doc.kind == "leaf":
            return Leaf(doc.colour, doc.index)
        children = tuple(visit(child, above or doc.pearl) for child in doc.children)
        vertex = Vertex(
            vid=next(counter),
            colour=doc.colour,
            children=children,
            pearl=doc.pearl,
            level=parse_rational(doc.level),
            edge=parse_rational(doc.edge),
        )
        space = space_for(vertex, above)
        if space is None or doc.label is None:
            raise DocumentParseError(f"vertex over {len(children)} inputs has no label")
        return replace(vertex, label=space.load(doc.label))

    return visit(document, False)
