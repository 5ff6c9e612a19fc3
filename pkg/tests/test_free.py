import random

import pytest

from operadwb.exceptions import InvalidArgument, TruncationExceeded
from operadwb.models import ColourProfile, Generator, Point, Vertex
from operadwb.registry import get_instance
from operadwb.services import trees
from operadwb.services.free import (
    FreeBimodule,
    evaluate,
    fb_act,
    fb_embed,
    fb_normalize,
    fb_universal_extension,
    first_components,
    free_operad,
    k_free,
)
from operadwb.services.homsets import count_bimodule_maps, count_sequence_maps
from operadwb.services.laws import check_bimodule_axioms
from operadwb.services.operads import self_bimodule
from operadwb.services.sampling import raw_term
from operadwb.services.sequences import GeneratedSequence, truncate
from tests.conftest import flag_generators, flag_target, leaf, node, perm, truncated_free_flag

IMAGES = {"x": perm(2, 1), "y": perm(1)}


def generator(name: str, arity: int) -> Generator:
    return Generator(name, perm(*range(1, arity + 1)), ColourProfile.mono(arity))


def to_as(g: Generator):
    """X -> As: x goes to the transposition, y to the unit, basepoints stay."""
    if g.name.startswith("γ:"):
        return perm()
    return IMAGES[g.name] * g.perm


@pytest.fixture
def free_as():
    return get_instance("fb-as")


class TestNormalForms:
    def test_unit_vertices_vanish(self, com_pos):
        free = FreeBimodule(flag_generators(), com_pos, com_pos)
        y = generator("y", 1)
        raw = node(Point(1), node(Point(2), node(y, leaf(1), pearl=True), node(y, leaf(2), pearl=True)))
        expected = free.left_act(Point(2), [free.embed(y), free.embed(y)])
        assert free.key(fb_normalize(free, raw)) == free.key(expected)

    def test_adjacent_vertices_merge(self, com_pos):
        free = FreeBimodule(flag_generators(), com_pos, com_pos)
        y = generator("y", 1)
        raw = node(
            Point(2),
            node(Point(2), node(y, leaf(1), pearl=True), node(y, leaf(2), pearl=True)),
            node(y, leaf(3), pearl=True),
        )
        term = fb_normalize(free, raw)
        assert term.label == Point(3)
        assert all(child.pearl for child in term.children)

    def test_above_vertices_merge(self, com_pos):
        free = FreeBimodule(flag_generators(), com_pos, com_pos)
        z = generator("z", 2)
        once = fb_act(free, "right", fb_embed(free, z), 1, Point(2))
        twice = fb_act(free, "right", once, 1, Point(2))
        above = [v for v in trees.vertices(twice) if not v.pearl]
        assert len(above) == 1
        assert above[0].label == Point(3)

    def test_basepoints_are_absorbed(self, free_as):
        x = generator("x", 2)
        gamma = free_as.gamma(perm())
        result = free_as.left_act(perm(1, 2), [free_as.embed(x), gamma])
        # the empty pearl is composed into the root, which is then a unit
        assert free_as.key(result) == free_as.key(free_as.embed(x))

    def test_loading_rejects_broken_sections(self, com_pos):
        free = FreeBimodule(flag_generators(), com_pos, com_pos)
        with pytest.raises(InvalidArgument):
            free.normalize(node(Point(2), node(generator("y", 1), leaf(1), pearl=True), leaf(2)))

    def test_truncation(self):
        free = truncated_free_flag(2)
        with pytest.raises(TruncationExceeded):
            free.right_act(free.embed(generator("z", 2)), 1, Point(2))

    def test_truncated_elements(self):
        free = truncated_free_flag(2)
        total = sum(len(free.elements(p)) for p in free.profiles(2))
        # y, z, z with swapped inputs, y over a binary operation, two copies of y under one
        assert total == 5


class TestConfluence:
    @pytest.mark.parametrize("name", ["fb-as"])
    def test_rewrite_orders_agree(self, name):
        system = get_instance(name)
        rng = random.Random(0)
        for _ in range(200):
            raw = raw_term(system, rng)
            expected = system.key(system.normalize(raw))
            for order in range(5):
                assert system.key(system.normalize(raw, random.Random(order))) == expected

    def test_flag_free_bimodule(self, com_pos):
        free = FreeBimodule(flag_generators(), com_pos, com_pos)
        rng = random.Random(1)
        for _ in range(100):
            raw = raw_term(free, rng)
            expected = free.key(free.normalize(raw))
            assert all(free.key(free.normalize(raw, random.Random(j))) == expected for j in range(5))


class TestEvaluation:
    def test_inner_and_outer_agree(self, free_as):
        target = self_bimodule(free_as.left)
        rng = random.Random(2)
        for _ in range(100):
            x = free_as.normalize(raw_term(free_as, rng))
            assert evaluate(free_as, target, to_as, x) == evaluate(free_as, target, to_as, x, order="outer")

    def test_rewriting_keeps_the_value(self, free_as):
        target = self_bimodule(free_as.left)
        rng = random.Random(3)
        for _ in range(100):
            raw = raw_term(free_as, rng)
            assert evaluate(free_as, target, to_as, raw) == evaluate(free_as, target, to_as, free_as.normalize(raw))

    def test_left_action_on_generators(self, free_as):
        target = self_bimodule(free_as.left)
        x, y = generator("x", 2), generator("y", 1)
        term = free_as.left_act(perm(2, 1), [free_as.embed(x), free_as.embed(y)])
        assert evaluate(free_as, target, to_as, term) == target.left_act(perm(2, 1), [perm(2, 1), perm(1)])

    def test_universal_extension(self, free_as):
        target = self_bimodule(free_as.left)
        extension = fb_universal_extension(free_as, target, to_as)
        assert extension(free_as.embed(generator("x", 2))) == perm(2, 1)

    def test_unknown_order(self, free_as):
        with pytest.raises(InvalidArgument):
            evaluate(free_as, self_bimodule(free_as.left), to_as, free_as.embed(generator("y", 1)), order="sideways")

    def test_laws(self, free_as):
        assert check_bimodule_axioms(free_as, budget=100, seed=4).ok


class TestAdjunction:
    def test_free_bimodule_maps_are_sequence_maps(self):
        free = truncated_free_flag(2)
        bimodule_maps = count_bimodule_maps(free, flag_target(), 2)
        sequence_maps = count_sequence_maps(flag_generators(), flag_target(), 2)
        assert bimodule_maps == sequence_maps == 4


class TestFreeOperad:
    def test_units_disappear(self):
        free = free_operad(GeneratedSequence({"x": ColourProfile.mono(2)}))
        x = free.embed(generator("x", 2))
        assert free.key(free.compose(x, 1, free.unit("c"))) == free.key(x)

    def test_arity_three_trees(self):
        free = free_operad(GeneratedSequence({"x": ColourProfile.mono(2)}))
        # two planar shapes times six leaf orders
        assert len(free.elements(ColourProfile.mono(3))) == 12


class TestKFree:
    def test_operad_merges_inside_the_bound(self, as_):
        system = k_free("operad", truncate(as_, 3), 3)
        composite = system.compose(system.embed(perm(1, 2)), 1, system.embed(perm(2, 1)))
        assert system.key(composite) == system.key(system.embed(perm(2, 1, 3)))

    def test_operad_keeps_large_composites_apart(self, as_):
        system = k_free("operad", truncate(as_, 2), 2)
        composite = system.compose(system.embed(perm(1, 2)), 1, system.embed(perm(1, 2)))
        assert len(trees.vertices(composite)) == 2

    def test_bimodule_absorbs_small_actions(self, as_self):
        system = k_free("bimodule", truncate(as_self, 2), 2)
        unit = system.embed(perm(1))
        assert system.key(system.left_act(perm(1, 2), [unit, unit])) == system.key(system.embed(perm(1, 2)))

    def test_bimodule_keeps_large_actions_apart(self, as_self):
        system = k_free("bimodule", truncate(as_self, 2), 2)
        two = system.embed(perm(1, 2))
        root = system.left_act(perm(1, 2), [two, two])
        assert isinstance(root, Vertex) and not root.pearl

    def test_first_components_give_back_the_input(self, as_):
        system = k_free("operad", truncate(as_, 2), 2)
        components = first_components(system, 2)
        assert len(components) == 1 + 1 + 2
        for key, term in components.items():
            if isinstance(term, Vertex):
                assert system.generators.key(term.label) == key

    @pytest.mark.parametrize("kind, k", [("ibimodule", 2), ("operad", 0)])
    def test_rejects(self, as_, kind, k):
        with pytest.raises(InvalidArgument):
            k_free(kind, truncate(as_, 2), k)
