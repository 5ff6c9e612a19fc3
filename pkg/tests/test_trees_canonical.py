import pytest
from networkx.algorithms.isomorphism import DiGraphMatcher

from operadwb.exceptions import ColourMismatch, EdgeKindError, SlotOutOfRange, TieLimitExceeded
from operadwb.models import CLOSED, OPEN, ColourProfile
from operadwb.services import trees
from operadwb.services.automorphisms import automorphism_group
from operadwb.services.canonical import canonical_encoding, canonical_form, shape_code
from operadwb.services.fixtures import Associative
from tests.conftest import leaf, node, perm, same_node, tree_graph


def numbered(tree):
    return trees.renumber(tree)[0]


def automorphism_count(tree) -> int:
    graph = tree_graph(tree)
    return sum(1 for _ in DiGraphMatcher(graph, graph, node_match=same_node).isomorphisms_iter())


class TestTreeBasics:
    def test_profile_sorts_by_leaf_index(self):
        tree = numbered(node(None, leaf(2, OPEN), node(None, leaf(1), leaf(3))))
        assert trees.arity(tree) == 3
        assert trees.profile(tree) == ColourProfile((CLOSED, OPEN, CLOSED), CLOSED)
        assert len(trees.vertices(tree)) == 2

    def test_leaf_order(self):
        tree = numbered(node(None, leaf(3), leaf(1), leaf(2)))
        # leaf 1 sits at planar position 2
        assert trees.leaf_order(tree) == perm(2, 3, 1)

    def test_action_permutes_profile(self):
        tree = numbered(node(None, leaf(1, OPEN), leaf(2), leaf(3)))
        sigma = perm(2, 3, 1)
        moved = trees.act(tree, sigma)
        assert trees.profile(moved) == trees.profile(tree).permuted(sigma)

    def test_action_composes(self):
        tree = numbered(node(None, leaf(1), node(None, leaf(2), leaf(3)), leaf(4)))
        s, t = perm(2, 1, 4, 3), perm(3, 1, 2, 4)
        assert trees.act(trees.act(tree, s), t) == trees.act(tree, s * t)

    def test_renumber_is_preorder(self):
        tree = numbered(node(None, node(None, leaf(1)), node(None, leaf(2))))
        assert [v.vid for v in trees.vertices(tree)] == [0, 1, 2]


class TestGrafting:
    def test_graft_shifts_later_leaves(self):
        base = trees.corolla(0, (CLOSED, CLOSED, CLOSED), CLOSED)
        sub = trees.corolla(0, (CLOSED, CLOSED), CLOSED)
        grafted = trees.graft(base, 2, sub)
        assert trees.arity(grafted) == 4
        assert [leaf.index for leaf in trees.leaves(grafted)] == [1, 2, 3, 4]
        assert len({v.vid for v in trees.vertices(grafted)}) == 2

    def test_graft_splices_profile(self):
        base = trees.corolla(0, (CLOSED, OPEN), OPEN)
        sub = trees.corolla(0, (CLOSED, CLOSED), OPEN)
        grafted = trees.graft(base, 2, sub)
        assert trees.profile(grafted) == trees.profile(base).spliced(2, trees.profile(sub))

    def test_graft_checks_colour(self):
        base = trees.corolla(0, (CLOSED,), CLOSED)
        with pytest.raises(ColourMismatch):
            trees.graft(base, 1, trees.corolla(0, (CLOSED,), OPEN))

    def test_graft_checks_slot(self):
        base = trees.corolla(0, (CLOSED,), CLOSED)
        with pytest.raises(SlotOutOfRange):
            trees.graft(base, 2, trees.corolla(0, (), CLOSED))

    def test_contract_splices_children(self):
        tree = numbered(node("a", leaf(1), node("b", leaf(2), leaf(3)), leaf(4)))
        contracted = trees.contract_edge(tree, 1, label="ab")
        assert contracted.label == "ab"
        assert contracted.arity == 4
        assert len(trees.vertices(contracted)) == 1

    def test_root_has_no_edge_to_contract(self):
        tree = numbered(node(None, leaf(1)))
        with pytest.raises(EdgeKindError):
            trees.contract_edge(tree, 0)

    def test_join_and_distance(self):
        tree = numbered(node(None, node(None, node(None, leaf(1))), node(None, leaf(2))))
        # ids in preorder: 0 root, 1 and 2 on the left, 3 on the right
        assert trees.join_and_distance(tree, 2, 3) == (0, 3)
        assert trees.join_and_distance(tree, 2, 1) == (1, 1)


class TestSections:
    def test_every_path_meets_one_pearl(self):
        tree = numbered(node(None, node(None, leaf(1), pearl=True), node(None, pearl=True)))
        assert trees.validate_section(tree)

    def test_missing_pearl_fails(self):
        tree = numbered(node(None, node(None, leaf(1), pearl=True), leaf(2)))
        assert not trees.validate_section(tree)

    def test_two_pearls_on_a_path_fail(self):
        tree = numbered(node(None, node(None, leaf(1), pearl=True), pearl=True))
        assert not trees.validate_section(tree)

    def test_reduced_needs_distance_one(self):
        stacked = numbered(node(None, node(None, node(None, leaf(1), pearl=True))))
        assert trees.validate_section(stacked)
        assert not trees.validate_section(stacked, reduced=True)
        flat = numbered(node(None, node(None, node(None, leaf(1)), pearl=True)))
        assert trees.validate_section(flat, reduced=True)

    def test_side_map(self):
        tree = numbered(node(None, node(None, node(None, leaf(1)), pearl=True)))
        assert trees.side_map(tree) == {0: False, 1: False, 2: True}


class TestCanonical:
    def test_planar_order_is_forgotten(self):
        one = numbered(node(None, leaf(1), node(None, leaf(2), leaf(3))))
        two = numbered(node(None, node(None, leaf(3), leaf(2)), leaf(1)))
        assert canonical_encoding(one) == canonical_encoding(two)
        assert canonical_form(one) == canonical_form(two)

    def test_labels_move_with_children(self):
        as_ = Associative()
        one = numbered(node(perm(1, 2), leaf(1), leaf(2)))
        two = numbered(node(perm(2, 1), leaf(2), leaf(1)))
        code_one = canonical_encoding(one, lambda v, above: as_)
        code_two = canonical_encoding(two, lambda v, above: as_)
        assert code_one == code_two

    def test_distinct_labels_keep_distinct_codes(self):
        as_ = Associative()
        one = numbered(node(perm(1, 2), leaf(1), leaf(2)))
        two = numbered(node(perm(2, 1), leaf(1), leaf(2)))
        space = lambda v, above: as_  # noqa: E731
        assert canonical_encoding(one, space) != canonical_encoding(two, space)

    def test_parameters_are_part_of_the_code(self):
        low = numbered(node(None, leaf(1), level="1/3"))
        high = numbered(node(None, leaf(1), level="1/2"))
        assert canonical_encoding(low) != canonical_encoding(high)

    def test_shape_code_drops_labels_and_indices(self):
        one = numbered(node("a", leaf(1), leaf(2, OPEN)))
        two = numbered(node("b", leaf(2, OPEN), leaf(1)))
        assert shape_code(one) == shape_code(two)
        assert shape_code(one) != shape_code(numbered(node("a", leaf(1), leaf(2))))

    def test_identical_subtrees_try_every_arrangement(self):
        as_ = Associative()
        space = lambda v, above: as_  # noqa: E731
        one = numbered(node(perm(3, 1, 2), *(node(perm()) for _ in range(3))))
        two = numbered(node(perm(1, 2, 3), *(node(perm()) for _ in range(3))))
        assert canonical_encoding(one, space) == canonical_encoding(two, space)

    def test_too_many_identical_subtrees(self):
        as_ = Associative()
        wide = numbered(node(perm(*range(1, 9)), *(node(perm()) for _ in range(8))))
        with pytest.raises(TieLimitExceeded):
            canonical_encoding(wide, lambda v, above: as_)
        assert shape_code(wide).startswith("V")


class TestAutomorphisms:
    def test_corolla(self):
        assert automorphism_group(trees.corolla(0, (CLOSED,) * 3, CLOSED)).order == 6

    def test_colours_split_classes(self):
        assert automorphism_group(trees.corolla(0, (CLOSED, CLOSED, OPEN), CLOSED)).order == 2

    def test_pearls_split_classes(self):
        tree = numbered(node(None, node(None, pearl=True), node(None)))
        assert automorphism_group(tree).order == 1

    @pytest.mark.parametrize(
        "tree",
        [
            node(None, node(None, leaf(1), leaf(2)), node(None, leaf(3), leaf(4))),
            node(None, node(None, leaf(1), leaf(2)), node(None, leaf(3), leaf(4)), leaf(5)),
            node(None, node(None, node(None), node(None)), node(None, node(None), node(None))),
            node(None, node(None, leaf(1), pearl=True), node(None, leaf(2), pearl=True), node(None, leaf(3))),
            node(None, leaf(1, OPEN), leaf(2), node(None, leaf(3, OPEN), leaf(4))),
        ],
    )
    def test_order_matches_graph_automorphisms(self, tree):
        tree = numbered(tree)
        assert automorphism_group(tree).order == automorphism_count(tree)

    def test_generators_preserve_addresses(self):
        tree = numbered(node(None, node(None, leaf(1), leaf(2)), node(None, leaf(3), leaf(4))))
        group = automorphism_group(tree)
        known = trees.addresses(tree)
        for generator in group.generators:
            assert set(generator) <= set(known)
            assert set(generator.values()) <= set(known)
