"""Random raw terms, full of redexes, for the rewriting systems.

A raw term is built vertex by vertex without normalizing: unit vertices,
adjacent vertices on one side of the section, basepoint pearls and
parameters on the grid all show up, so different rewrite orders have
something to disagree about.
"""

import random

from operadwb.exceptions import InvalidArgument
from operadwb.models.colours import CLOSED, OPEN, Colour, ColourProfile
from operadwb.models.tree import Leaf, Node, Vertex
from operadwb.services import trees
from operadwb.services.bridge import LOperad, only_colour
from operadwb.services.empty import BVEmpty
from operadwb.services.free import FreeBimodule
from operadwb.services.resolutions import BVBimodule, BVOperad, restamp_edges, restamp_levels
from operadwb.services.structures import SSequence

UNIT_RATE = 0.2
STOP_RATE = 0.4


def _pick(space: SSequence, rng: random.Random, arities, colour: Colour):
    choices = list(arities)
    rng.shuffle(choices)
    for n in choices:
        x = space.sample(ColourProfile.mono(n, colour), rng)
        if x is not None:
            return x
    return None


def _label(operad, rng: random.Random, arities, colour: Colour):
    if rng.random() < UNIT_RATE:
        return operad.unit(colour)
    return _pick(operad, rng, arities, colour)


def _stack(operad, rng: random.Random, depth: int, native: Colour, edge: Colour) -> Node:
    """A leaf, or operations of `operad` piled on each other."""
    if depth == 0 or rng.random() < STOP_RATE:
        return Leaf(edge, 0)
    label = _label(operad, rng, (0, 1, 2), native)
    if label is None:
        return Leaf(edge, 0)
    children = tuple(_stack(operad, rng, depth - 1, native, edge) for _ in range(operad.arity(label)))
    return Vertex(vid=0, colour=edge, children=children, label=label)


def _pearl(system, rng: random.Random, depth: int, colour: Colour, upper_edge: Colour) -> Node:
    M = system.generators
    m = _pick(M, rng, (0, 1, 2), only_colour(M))
    if m is None:
        raise InvalidArgument(f"{M.name} has no elements of arity at most 2")
    upper = system.upper if hasattr(system, "upper") else system.right
    children = tuple(_stack(upper, rng, depth, only_colour(upper), upper_edge) for _ in range(M.arity(m)))
    return Vertex(vid=0, colour=colour, children=children, label=m, pearl=True)


def _below(system, rng: random.Random, depth: int, colour: Colour) -> Node:
    if depth == 0 or rng.random() < STOP_RATE:
        return _pearl(system, rng, depth, colour, colour)
    label = _label(system.left, rng, (1, 2), colour)
    if label is None:
        return _pearl(system, rng, depth, colour, colour)
    children = tuple(_below(system, rng, depth - 1, colour) for _ in range(system.left.arity(label)))
    return Vertex(vid=0, colour=colour, children=children, label=label)


def _shuffle_leaves(term: Node, rng: random.Random) -> Node:
    indices = list(range(1, trees.arity(term) + 1))
    rng.shuffle(indices)
    numbering = iter(indices)
    term = trees.map_leaves(term, lambda leaf: Leaf(leaf.colour, next(numbering)))
    return trees.renumber(term)[0]


def raw_sectioned(system, rng: random.Random, depth: int = 2) -> Node:
    """A tree with section for F_B(M), B(M) or B_∅(M)."""
    term = _below(system, rng, depth, only_colour(system.generators))
    if isinstance(system, BVEmpty):
        term = restamp_levels(term, rng, edges_above=True)
    elif isinstance(system, BVBimodule):
        term = restamp_levels(term, rng)
    return _shuffle_leaves(term, rng)


def raw_bv_operad(system: BVOperad, rng: random.Random, depth: int = 3) -> Node:
    colour = only_colour(system.operad)
    root = _pick(system.operad, rng, (2, 3), colour)
    if root is None:
        raise InvalidArgument(f"{system.operad.name} has no operations of arity 2 or 3")
    children = tuple(_stack(system.operad, rng, depth - 1, colour, colour) for _ in range(system.operad.arity(root)))
    term = Vertex(vid=0, colour=colour, children=children, label=root)
    return _shuffle_leaves(restamp_edges(term, rng), rng)


def _open_part(system: LOperad, rng: random.Random, depth: int) -> Node:
    roll = rng.random()
    if roll < 0.3:
        return Leaf(OPEN, 0)
    if depth == 0 or roll < 0.7:
        return _pearl(system, rng, depth, OPEN, CLOSED)
    label = _label(system.left, rng, (1, 2), only_colour(system.left))
    if label is None:
        return Leaf(OPEN, 0)
    children = tuple(_open_part(system, rng, depth - 1) for _ in range(system.left.arity(label)))
    return Vertex(vid=0, colour=OPEN, children=children, label=label)


def raw_l(system: LOperad, rng: random.Random, depth: int = 2) -> Node:
    """An open P-vertex over open leaves, nested P-vertices and pearls with
    closed operations above them."""
    label = _pick(system.left, rng, (1, 2, 3), only_colour(system.left))
    if label is None:
        raise InvalidArgument(f"{system.left.name} has no operations of arity 1 to 3")
    children = tuple(_open_part(system, rng, depth - 1) for _ in range(system.left.arity(label)))
    return _shuffle_leaves(Vertex(vid=0, colour=OPEN, children=children, label=label), rng)


def raw_term(system, rng: random.Random) -> Node:
    if isinstance(system, (FreeBimodule, BVBimodule, BVEmpty)):
        return raw_sectioned(system, rng)
    if isinstance(system, BVOperad):
        return raw_bv_operad(system, rng)
    if isinstance(system, LOperad):
        return raw_l(system, rng)
    raise InvalidArgument(f"no raw-term sampler for {system.name}")
