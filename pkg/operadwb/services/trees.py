"""Planar coloured trees, with or without a section of pearls.

A tree is a nested `Vertex`/`Leaf` value. Children are in planar order and
leaf indices carry the leaf permutation; a bare `Leaf` is the trunk-only
tree. Inner edges are named by the id of their source vertex.
"""

from collections.abc import Callable, Iterator
from dataclasses import replace

from operadwb.exceptions import ColourMismatch, EdgeKindError, SlotOutOfRange, UnknownVertex
from operadwb.models.colours import Colour, ColourProfile
from operadwb.models.permutation import Permutation
from operadwb.models.tree import Leaf, Node, Vertex

_KEEP = object()


def leaves(tree: Node) -> list[Leaf]:
    if isinstance(tree, Leaf):
        return [tree]
    found: list[Leaf] = []
    for child in tree.children:
        found.extend(leaves(child))
    return found


def vertices(tree: Node) -> list[Vertex]:
    if isinstance(tree, Leaf):
        return []
    found = [tree]
    for child in tree.children:
        found.extend(vertices(child))
    return found


def walk(tree: Node) -> Iterator[tuple[Vertex, Vertex | None, int, bool]]:
    """Yield (vertex, parent, position among the parent's children, above)."""

    def visit(node: Node, parent: Vertex | None, position: int, above: bool):
        if isinstance(node, Leaf):
            return
        yield node, parent, position, above
        for j, child in enumerate(node.children):
            yield from visit(child, node, j, above or node.pearl)

    yield from visit(tree, None, 0, False)


def arity(tree: Node) -> int:
    return len(leaves(tree))


def profile(tree: Node) -> ColourProfile:
    ordered = sorted(leaves(tree), key=lambda leaf: leaf.index)
    return ColourProfile(tuple(leaf.colour for leaf in ordered), tree.colour)


def leaf_order(tree: Node) -> Permutation:
    """rho with rho(i) the planar position of the leaf of index i."""
    positions = {leaf.index: p for p, leaf in enumerate(leaves(tree), start=1)}
    return Permutation(tuple(positions[i] for i in range(1, len(positions) + 1)))


def find_vertex(tree: Node, vid: int) -> Vertex:
    for vertex in vertices(tree):
        if vertex.vid == vid:
            return vertex
    raise UnknownVertex(vid)


def max_vid(tree: Node) -> int:
    return max((v.vid for v in vertices(tree)), default=-1)


def renumber(tree: Node, start: int = 0) -> tuple[Node, int]:
    """Fresh vertex ids in preorder from `start`; returns the next free id."""
    if isinstance(tree, Leaf):
        return tree, start
    vid = start
    start += 1
    children = []
    for child in tree.children:
        child, start = renumber(child, start)
        children.append(child)
    return replace(tree, vid=vid, children=tuple(children)), start


def map_leaves(tree: Node, fn: Callable[[Leaf], Node]) -> Node:
    if isinstance(tree, Leaf):
        return fn(tree)
    return replace(tree, children=tuple(map_leaves(child, fn) for child in tree.children))


def reindex(tree: Node, fn: Callable[[int], int]) -> Node:
    return map_leaves(tree, lambda leaf: Leaf(leaf.colour, fn(leaf.index)))


def act(tree: Node, sigma: Permutation) -> Node:
    """The right action: slot i of T.sigma is slot sigma(i) of T."""
    inverse = sigma.inverse()
    return reindex(tree, inverse)


def replace_vertex(tree: Node, vid: int, fn: Callable[[Vertex], Node]) -> Node:
    if isinstance(tree, Leaf):
        return tree
    if tree.vid == vid:
        return fn(tree)
    return replace(tree, children=tuple(replace_vertex(child, vid, fn) for child in tree.children))


def update_vertices(tree: Node, fn: Callable[[Vertex, bool], Vertex]) -> Node:
    """Rebuild bottom-up, applying fn(vertex, above) to every vertex."""

    def visit(node: Node, above: bool) -> Node:
        if isinstance(node, Leaf):
            return node
        children = tuple(visit(child, above or node.pearl) for child in node.children)
        return fn(replace(node, children=children), above)

    return visit(tree, False)


def corolla(
    vid: int,
    inputs: tuple[Colour, ...],
    output: Colour,
    label=None,
    pearl: bool = False,
    level=None,
    offset: int = 0,
) -> Vertex:
    children = tuple(Leaf(colour, offset + j) for j, colour in enumerate(inputs, start=1))
    return Vertex(vid=vid, colour=output, children=children, label=label, pearl=pearl, level=level)


def graft(tree: Node, i: int, sub: Node, edge=_KEEP) -> Node:
    """Graft `sub` onto the leaf of index i.

    The new leaves take indices i, ..., i+|sub|-1 and the later leaves of
    `tree` shift up; the vertex ids of `sub` move past those of `tree`.
    """
    n = arity(tree)
    if not 1 <= i <= n:
        raise SlotOutOfRange(i, n)
    target = next(leaf for leaf in leaves(tree) if leaf.index == i)
    if target.colour != sub.colour:
        raise ColourMismatch(i, target.colour, sub.colour)
    m = arity(sub)
    sub, _ = renumber(sub, max_vid(tree) + 1)
    sub = reindex(sub, lambda j: j + i - 1)
    if isinstance(sub, Vertex) and edge is not _KEEP:
        sub = replace(sub, edge=edge)

    def place(leaf: Leaf) -> Node:
        if leaf.index == i:
            return sub
        if leaf.index > i:
            return Leaf(leaf.colour, leaf.index + m - 1)
        return leaf

    return map_leaves(tree, place)


def parent_of(tree: Node, vid: int) -> tuple[Vertex | None, int]:
    for vertex, parent, position, _ in walk(tree):
        if vertex.vid == vid:
            return parent, position
    raise UnknownVertex(vid)


def contract_edge(tree: Node, vid: int, label=_KEEP) -> Node:
    """Merge vertex `vid` into its parent, splicing its children in place.

    The merged vertex keeps the parent's id, colour and parameters; pass
    `label` for the composite label.
    """
    parent, position = parent_of(tree, vid)
    if parent is None:
        raise EdgeKindError(vid)
    source = parent.children[position]
    children = parent.children[:position] + source.children + parent.children[position + 1 :]
    merged = replace(parent, children=children)
    if label is not _KEEP:
        merged = replace(merged, label=label)
    return replace_vertex(tree, parent.vid, lambda _: merged)


def path_to_root(tree: Node, vid: int) -> list[int]:
    parents = {v.vid: (p.vid if p is not None else None) for v, p, _, _ in walk(tree)}
    if vid not in parents:
        raise UnknownVertex(vid)
    path = [vid]
    while parents[path[-1]] is not None:
        path.append(parents[path[-1]])
    return path


def join_and_distance(tree: Node, v1: int, v2: int) -> tuple[int, int]:
    """The first common vertex j(v1;v2) of the two root paths and d(v1;v2)."""
    first = path_to_root(tree, v1)
    second = path_to_root(tree, v2)
    positions = {vid: k for k, vid in enumerate(second)}
    for k, vid in enumerate(first):
        if vid in positions:
            return vid, k + positions[vid]
    raise UnknownVertex(v2)


def pearl_ids(tree: Node) -> set[int]:
    return {v.vid for v in vertices(tree) if v.pearl}


def validate_section(tree: Node, pearls: set[int] | None = None, reduced: bool = False) -> bool:
    if pearls is None:
        pearls = pearl_ids(tree)

    def visit(node: Node, seen: int) -> bool:
        if isinstance(node, Leaf):
            return seen == 1
        seen += node.vid in pearls
        if seen > 1:
            return False
        if not node.children:
            return seen == 1
        return all(visit(child, seen) for child in node.children)

    if not visit(tree, 0):
        return False
    if not reduced:
        return True
    for vertex in vertices(tree):
        if vertex.vid in pearls:
            continue
        for pearl in pearls:
            join, distance = join_and_distance(tree, vertex.vid, pearl)
            if join in (vertex.vid, pearl) and distance != 1:
                return False
    return True


def side_map(tree: Node) -> dict[int, bool]:
    """vertex id -> True when a pearl lies strictly below it."""
    return {vertex.vid: above for vertex, _, _, above in walk(tree)}


def addresses(tree: Node) -> dict[tuple[int, ...], Node]:
    """Every vertex and leaf by its path of child positions from the root."""
    found: dict[tuple[int, ...], Node] = {}

    def visit(node: Node, address: tuple[int, ...]):
        found[address] = node
        if isinstance(node, Vertex):
            for j, child in enumerate(node.children):
                visit(child, address + (j,))

    visit(tree, ())
    return found
