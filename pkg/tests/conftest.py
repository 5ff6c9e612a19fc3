import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest

from operadwb.models import CLOSED, ColourProfile, Leaf, Permutation, Vertex
from operadwb.services.fixtures import Associative, Commutative, FlagBimodule
from operadwb.services.free import FreeBimodule
from operadwb.services.operads import self_bimodule
from operadwb.services.sequences import GeneratedSequence


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture
def as_():
    return Associative()


@pytest.fixture
def com_pos():
    return Commutative(positive=True)


@pytest.fixture
def as_self():
    return self_bimodule(Associative())


def leaf(index: int, colour: str = CLOSED) -> Leaf:
    return Leaf(colour, index)


def node(label, *children, colour: str = CLOSED, pearl: bool = False, level=None, edge=None) -> Vertex:
    """A raw vertex; systems renumber vertex ids when they normalize."""
    return Vertex(
        vid=0,
        colour=colour,
        children=tuple(children),
        label=label,
        pearl=pearl,
        level=None if level is None else Fraction(level),
        edge=None if edge is None else Fraction(edge),
    )


def perm(*images: int) -> Permutation:
    return Permutation.of(*images)


def flag_generators() -> GeneratedSequence:
    """Y: y in arity 1, z in arity 2 with a free swap, no units."""
    return GeneratedSequence({"y": ColourProfile.mono(1), "z": ColourProfile.mono(2)}, name="Y", pointed=False)


def truncated_free_flag(k: int = 2) -> FreeBimodule:
    com = Commutative(positive=True)
    return FreeBimodule(flag_generators(), com, com, k=k)


def flag_target() -> FlagBimodule:
    com = Commutative(positive=True)
    return FlagBimodule(com, com)


def codes(system, terms) -> list[str]:
    return [system.key(x) for x in terms]


def tree_graph(tree) -> nx.DiGraph:
    """The tree as a rooted digraph; vertices and leaves keep their colour
    and pearl marks, labels and indices are dropped."""
    graph = nx.DiGraph()
    counter = itertools.count()

    def visit(n, parent):
        me = next(counter)
        if isinstance(n, Leaf):
            graph.add_node(me, colour=n.colour, pearl=False, leaf=True)
        else:
            graph.add_node(me, colour=n.colour, pearl=n.pearl, leaf=False)
            for child in n.children:
                visit(child, me)
        if parent is not None:
            graph.add_edge(parent, me)

    visit(tree, None)
    return graph


def same_node(a: dict, b: dict) -> bool:
    return a == b


def filtration_term() -> Vertex:
    """A B(As) term whose root sits at level 1 over two pearls.

    The first pearl carries a ternary vertex at level 1/2 and three bare
    leaves; the second carries a univalent vertex at level 1/3 and a
    binary vertex at level 1.
    """
    first = node(
        Permutation.identity(4),
        node(Permutation.identity(3), leaf(1), leaf(2), leaf(3), level="1/2"),
        leaf(4),
        leaf(5),
        leaf(6),
        pearl=True,
    )
    second = node(
        Permutation.identity(2),
        node(Permutation.identity(0), level="1/3"),
        node(Permutation.identity(2), leaf(7), leaf(8), level=1),
        pearl=True,
    )
    return node(Permutation.identity(2), first, second, level=1)
