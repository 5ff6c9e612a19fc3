from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

from operadwb.models.colours import Colour


@dataclass(frozen=True)
class Leaf:
    """An input edge. `index` is its position in the leaf permutation."""

    colour: Colour
    index: int


@dataclass(frozen=True)
class Vertex:
    """A vertex together with the subtree above it.

    `colour` is the colour of the output edge, `level` the parameter of a
    non-pearl vertex in the bimodule resolutions and `edge` the parameter of
    the output edge in the operad-type resolutions.
    """

    vid: int
    colour: Colour
    children: tuple["Node", ...] = ()
    label: Any = None
    pearl: bool = False
    level: Fraction | None = None
    edge: Fraction | None = None

    @property
    def arity(self) -> int:
        return len(self.children)

    @property
    def input_colours(self) -> tuple[Colour, ...]:
        return tuple(child.colour for child in self.children)


Node = Union[Vertex, Leaf]
Term = Node


@dataclass(frozen=True)
class AutGroup:
    """Aut(T) as a recursive semi-direct product.

    `blocks` lists, for every class of isomorphic subtrees above the root,
    the group of one representative and the multiplicity n_i; generators
    are vertex maps given as dicts from vertex address to vertex address.
    """

    blocks: tuple[tuple["AutGroup", int], ...] = ()
    generators: tuple[dict, ...] = field(default=(), compare=False, hash=False)

    @property
    def order(self) -> int:
        total = 1
        for group, count in self.blocks:
            total *= group.order**count
            for k in range(2, count + 1):
                total *= k
        return total
