from functools import lru_cache

import networkx as nx
import pytest

from operadwb.exceptions import InvalidArgument
from operadwb.models import CLOSED, OPEN, Leaf, Vertex
from operadwb.models.colours import TreeKind
from operadwb.services import trees
from operadwb.services.canonical import canonical_encoding, shape_code
from operadwb.services.enumeration import consecutive_condition, enumerate_trees
from tests.conftest import leaf, node, same_node, tree_graph

# Brute force: every planar tree within the bounds, grouped by an
# order-free key computed from scratch.

COLOURS = (CLOSED, OPEN)


def _sequences(grow, vertices: int, leaves: int):
    yield (), 0, 0
    for first, v, l in grow(vertices, leaves):
        for rest, rv, rl in _sequences(grow, vertices - v, leaves - l):
            yield (first, *rest), v + rv, l + rl


@lru_cache(maxsize=None)
def _above(vertices: int, leaves: int, colours: tuple) -> tuple:
    found = []
    if leaves >= 1:
        found.extend((("leaf", c), 0, 1) for c in colours)
    if vertices >= 1:
        grow = lambda v, l: _above(v, l, colours)  # noqa: E731
        for children, v, l in _sequences(grow, vertices - 1, leaves):
            found.extend((("vertex", c, False, children), v + 1, l) for c in colours)
    return tuple(found)


@lru_cache(maxsize=None)
def _sectioned(vertices: int, leaves: int, colours: tuple) -> tuple:
    if vertices < 1:
        return ()
    found = []
    above = lambda v, l: _above(v, l, colours)  # noqa: E731
    below = lambda v, l: _sectioned(v, l, colours)  # noqa: E731
    for children, v, l in _sequences(above, vertices - 1, leaves):
        found.extend((("vertex", c, True, children), v + 1, l) for c in colours)
    for children, v, l in _sequences(below, vertices - 1, leaves):
        if children:
            found.extend((("vertex", c, False, children), v + 1, l) for c in colours)
    return tuple(found)


def _reduced(planar, parent_pearl: bool = False, above: bool = False) -> bool:
    if planar[0] == "leaf":
        return True
    _, _, pearl, children = planar
    if above and not pearl and not parent_pearl:
        return False
    if not above and not pearl and not all(c[0] == "vertex" and c[2] for c in children):
        return False
    return all(_reduced(c, pearl, above or pearl) for c in children)


def _key(planar):
    if planar[0] == "leaf":
        return planar
    _, colour, pearl, children = planar
    return ("vertex", colour, pearl, tuple(sorted(_key(c) for c in children)))


def _to_planar(tree):
    if isinstance(tree, Leaf):
        return ("leaf", tree.colour)
    return ("vertex", tree.colour, tree.pearl, tuple(_to_planar(c) for c in tree.children))


def brute_force(kind: TreeKind, colours, max_vertices: int, max_leaves: int) -> set:
    colours = tuple(sorted(colours))
    planar = [t for t, _, _ in _sectioned(max_vertices, max_leaves, colours)]
    if kind is TreeKind.RSTREE:
        planar = [t for t in planar if _reduced(t)]
    return {_key(t) for t in planar}


class TestOracle:
    @pytest.mark.parametrize("kind", [TreeKind.RSTREE, TreeKind.STREE])
    def test_counts_and_classes_agree(self, kind):
        expected = brute_force(kind, COLOURS, 4, 3)
        found = enumerate_trees(COLOURS, kind, max_leaves=3, max_vertices=4)
        assert len(found) == len(expected)
        assert {_key(_to_planar(t)) for t in found} == expected

    @pytest.mark.parametrize("kind", [TreeKind.RSTREE, TreeKind.STREE])
    def test_codes_are_unique(self, kind):
        found = enumerate_trees(COLOURS, kind, max_leaves=3, max_vertices=4)
        assert len({shape_code(t) for t in found}) == len(found)

    @pytest.mark.parametrize("kind", [TreeKind.RSTREE, TreeKind.STREE])
    def test_single_colour_agrees(self, kind):
        expected = brute_force(kind, (CLOSED,), 4, 3)
        assert len(enumerate_trees([CLOSED], kind, max_leaves=3, max_vertices=4)) == len(expected)

    @pytest.mark.parametrize("kind", [TreeKind.RSTREE, TreeKind.STREE])
    def test_no_two_representatives_are_isomorphic(self, kind):
        found = enumerate_trees(COLOURS, kind, max_leaves=2, max_vertices=3)
        graphs = [tree_graph(t) for t in found]
        for i, g in enumerate(graphs):
            for h in graphs[i + 1 :]:
                if nx.faster_could_be_isomorphic(g, h):
                    assert not nx.is_isomorphic(g, h, node_match=same_node)


class TestRepresentatives:
    @pytest.mark.parametrize("kind", [TreeKind.RSTREE, TreeKind.STREE])
    def test_sections_are_valid(self, kind):
        for tree in enumerate_trees(COLOURS, kind, max_leaves=3, max_vertices=3):
            assert trees.validate_section(tree, reduced=kind is TreeKind.RSTREE)

    def test_leaves_are_numbered_in_planar_order(self):
        for tree in enumerate_trees([CLOSED], TreeKind.STREE, max_leaves=3, max_vertices=3):
            assert [leaf.index for leaf in trees.leaves(tree)] == list(range(1, trees.arity(tree) + 1))

    def test_plain_small_count(self):
        # a bare leaf, three corollas and six two-vertex trees
        assert len(enumerate_trees([CLOSED], TreeKind.PLAIN, max_leaves=2, max_vertices=2)) == 10

    def test_sorted_by_code(self):
        found = enumerate_trees(COLOURS, "stree", max_leaves=2, max_vertices=2)
        assert found == sorted(found, key=canonical_encoding)

    def test_negative_bounds(self):
        with pytest.raises(InvalidArgument):
            enumerate_trees([CLOSED], TreeKind.PLAIN, max_leaves=-1, max_vertices=2)


class TestConsecutiveCondition:
    def test_small_neighbours_merge(self):
        tree = trees.renumber(node(None, node(None, leaf(1), leaf(2)), leaf(3)))[0]
        assert not consecutive_condition(tree, 3)
        assert consecutive_condition(tree, 2)

    def test_corolla_is_fine(self):
        assert consecutive_condition(trees.corolla(0, (CLOSED,) * 3, CLOSED), 1)

    def test_unary_towers_do_not_survive_at_one(self):
        found = enumerate_trees([CLOSED], TreeKind.PLAIN, max_leaves=4, max_vertices=4)
        towers = [t for t in found if isinstance(t, Vertex) and all(v.arity == 1 for v in trees.vertices(t))]
        assert sorted(len(trees.vertices(t)) for t in towers) == [1, 2, 3, 4]
        assert [len(trees.vertices(t)) for t in towers if consecutive_condition(t, 1)] == [1]
        survivors = [t for t in found if consecutive_condition(t, 1)]
        assert survivors
        for tree in survivors:
            for vertex, parent, _, _ in trees.walk(tree):
                if parent is not None:
                    assert vertex.arity + parent.arity - 1 >= 2
