"""Bounded enumeration of trees up to non-planar isomorphism.

Subtrees are grown from multisets of smaller subtrees, so every class is
produced from its sorted children and duplicates never arise; the shape
code is still used as the dedup key. Each representative gets its leaves
numbered 1..n in canonical planar order.
"""

import enum
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache

from operadwb.exceptions import InvalidArgument
from operadwb.models.colours import Colour, TreeKind
from operadwb.models.tree import Leaf, Node, Vertex
from operadwb.services import trees
from operadwb.services.canonical import canonical_encoding, shape_code, shape_form

logger = logging.getLogger(__name__)


class _Side(enum.Enum):
    ABOVE = "above"  # no pearl inside; must sit over a pearl
    SECTIONED = "sectioned"  # every path inside meets exactly one pearl


@dataclass(frozen=True)
class _Piece:
    code: str
    node: Node
    vertices: int
    leaves: int
    side: _Side


def _multisets(pieces: list[_Piece], start: int, vertex_budget: int, leaf_budget: int) -> Iterator[list[_Piece]]:
    yield []
    for j in range(start, len(pieces)):
        piece = pieces[j]
        if piece.vertices <= vertex_budget and piece.leaves <= leaf_budget:
            for rest in _multisets(pieces, j, vertex_budget - piece.vertices, leaf_budget - piece.leaves):
                yield [piece, *rest]


class _Enumerator:
    def __init__(self, colours: tuple[Colour, ...], kind: TreeKind):
        self.colours = colours
        self.kind = kind

    def _leaf_pieces(self) -> list[_Piece]:
        return [_Piece(shape_code(Leaf(c, 0)), Leaf(c, 0), 0, 1, _Side.ABOVE) for c in self.colours]

    @lru_cache(maxsize=None)
    def rooted(self, max_vertices: int, max_leaves: int) -> tuple[_Piece, ...]:
        """All subtrees rooted at a vertex within the bounds."""
        if max_vertices < 1:
            return ()
        candidates = self._leaf_pieces() + list(self.rooted(max_vertices - 1, max_leaves))
        candidates.sort(key=lambda p: p.code)
        found: dict[str, _Piece] = {}
        for children in _multisets(candidates, 0, max_vertices - 1, max_leaves):
            for piece in self._vertices_over(children):
                found.setdefault(piece.code, piece)
        return tuple(sorted(found.values(), key=lambda p: p.code))

    def _vertices_over(self, children: list[_Piece]) -> Iterable[_Piece]:
        v = 1 + sum(p.vertices for p in children)
        n = sum(p.leaves for p in children)
        sides = {p.side for p in children}
        nodes = tuple(p.node for p in children)
        for colour in self.colours:
            if self.kind is TreeKind.PLAIN:
                yield self._piece(Vertex(0, colour, nodes), v, n, _Side.ABOVE)
                continue
            if sides <= {_Side.ABOVE}:
                if self.kind is TreeKind.RSTREE and any(isinstance(p.node, Vertex) for p in children):
                    pass  # an above vertex must sit directly on its pearl
                else:
                    yield self._piece(Vertex(0, colour, nodes), v, n, _Side.ABOVE)
                if self.kind is TreeKind.STREE or all(
                    isinstance(p.node, Leaf) or all(isinstance(c, Leaf) for c in p.node.children) for p in children
                ):
                    yield self._piece(Vertex(0, colour, nodes, pearl=True), v, n, _Side.SECTIONED)
            elif sides == {_Side.SECTIONED}:
                if self.kind is TreeKind.RSTREE and not all(p.node.pearl for p in children):
                    continue
                yield self._piece(Vertex(0, colour, nodes), v, n, _Side.SECTIONED)

    @staticmethod
    def _piece(node: Vertex, v: int, n: int, side: _Side) -> _Piece:
        return _Piece(shape_code(node), node, v, n, side)


def _numbered(tree: Node) -> Node:
    form = shape_form(tree)
    counter = iter(range(1, trees.arity(form) + 1))
    form = trees.map_leaves(form, lambda leaf: Leaf(leaf.colour, next(counter)))
    return trees.renumber(form)[0]


def enumerate_trees(
    colours: Iterable[Colour], kind: TreeKind | str, max_leaves: int, max_vertices: int
) -> list[Node]:
    """Representatives of the isomorphism classes within the bounds, sorted by code."""
    kind = TreeKind(kind)
    if max_leaves < 0 or max_vertices < 0:
        raise InvalidArgument("enumeration bounds must be non-negative")
    palette = tuple(sorted(set(colours)))
    enumerator = _Enumerator(palette, kind)

    found: list[Node] = []
    if kind is TreeKind.PLAIN and max_leaves >= 1:
        found.extend(Leaf(c, 1) for c in palette)
    for piece in enumerator.rooted(max_vertices, max_leaves):
        if kind is TreeKind.PLAIN or piece.side is _Side.SECTIONED:
            found.append(_numbered(piece.node))

    found.sort(key=canonical_encoding)
    logger.debug("enumerated %d %s trees (leaves <= %d, vertices <= %d)", len(found), kind.value, max_leaves, max_vertices)
    return found


def consecutive_condition(tree: Node, k: int) -> bool:
    """True when no two adjacent vertices could be merged inside arity k,
    i.e. |v| + |w| - 1 > k for every inner edge v -> w."""
    for vertex, parent, _, _ in trees.walk(tree):
        if parent is not None and vertex.arity + parent.arity - 1 <= k:
            return False
    return True
