import random
from fractions import Fraction

import pytest

from operadwb.exceptions import InvalidArgument, ParameterError, ProfileArityMismatch, SlotOutOfRange
from operadwb.models import CLOSED, ColourProfile, Vertex
from operadwb.registry import get_instance
from operadwb.services import trees
from operadwb.services.free import FreeBimodule, evaluate
from operadwb.services.laws import check_bimodule_axioms, check_operad_axioms
from operadwb.services.resolutions import (
    ONE,
    BVBimodule,
    BVOperad,
    FiltrationIndex,
    bvb_act,
    bvb_normalize,
    bvo_normalize,
    filtration_level,
    geometric_inputs,
    in_filtration,
    iota,
    join_edges,
    mu,
    mu_map,
    mu_operad,
    mu_operad_map,
    prime_decompose,
    reassemble,
    tau,
)
from operadwb.services.sampling import raw_term
from tests.conftest import filtration_term, leaf, node, perm


@pytest.fixture
def bvb(as_self):
    return BVBimodule(as_self)


@pytest.fixture
def bvo(as_):
    return BVOperad(as_)


class TestLevels:
    def test_levels_outside_the_interval(self, bvb):
        raw = node(perm(1, 2), node(perm(1), leaf(1), pearl=True), node(perm(1), leaf(2), pearl=True), level="3/2")
        with pytest.raises(ParameterError):
            bvb.normalize(raw)

    def test_missing_level(self, bvb):
        raw = node(perm(1, 2), node(perm(1), leaf(1), pearl=True), node(perm(1), leaf(2), pearl=True))
        with pytest.raises(ParameterError):
            bvb.normalize(raw)

    def test_levels_grow_away_from_the_section(self, bvb):
        pearls = (node(perm(1), leaf(1), pearl=True), node(perm(1), leaf(2), pearl=True))
        raw = node(perm(1), node(perm(1, 2), *pearls, level="3/4"), level="1/2")
        with pytest.raises(ParameterError):
            bvb.normalize(raw)

    def test_equal_levels_merge(self, bvb):
        pearls = [node(perm(1), leaf(i), pearl=True) for i in (1, 2, 3)]
        raw = node(perm(1, 2), node(perm(1, 2), pearls[0], pearls[1], level="1/2"), pearls[2], level="1/2")
        merged = node(perm(1, 2, 3), *pearls, level="1/2")
        assert bvb.key(bvb.normalize(raw)) == bvb.key(bvb.normalize(merged))

    def test_zero_level_below_is_absorbed(self, bvb):
        raw = node(perm(2, 1), node(perm(1), leaf(1), pearl=True), node(perm(1, 2), leaf(2), leaf(3), pearl=True), level=0)
        term = bvb.normalize(raw)
        assert isinstance(term, Vertex) and term.pearl
        assert mu(bvb, term) == bvb.generators.left_act(perm(2, 1), [perm(1), perm(1, 2)])

    def test_zero_level_above_is_absorbed(self, bvb):
        raw = node(perm(1, 2), node(perm(2, 1), leaf(1), leaf(2), level=0), leaf(3), pearl=True)
        term = bvb.normalize(raw)
        assert term.pearl and term.arity == 3
        assert mu(bvb, term) == perm(2, 1, 3)


class TestConfluence:
    @pytest.mark.parametrize("name, normalize", [("b-as", bvb_normalize), ("bv-as", bvo_normalize)])
    def test_rewrite_orders_agree(self, name, normalize):
        system = get_instance(name)
        rng = random.Random(0)
        for _ in range(200):
            raw = raw_term(system, rng)
            expected = system.key(normalize(system, raw))
            for order in range(5):
                assert system.key(normalize(system, raw, random.Random(order))) == expected


class TestBimoduleResolution:
    def test_laws(self, bvb):
        report = check_bimodule_axioms(bvb, budget=150, seed=1)
        assert report.ok, report.violations

    def test_embedding_is_undone(self, bvb):
        for x in (perm(1), perm(2, 1), perm(3, 1, 2)):
            assert mu(bvb, bvb.embed(x)) == x

    def test_actions_sit_at_level_one(self, bvb):
        term = bvb.left_act(perm(1, 2), [bvb.embed(perm(1)), bvb.embed(perm(2, 1))])
        assert not term.pearl and term.level == ONE

    def test_mu_after_tau_evaluates(self, as_, as_self, bvb):
        free = FreeBimodule(as_self, as_, as_)
        rng = random.Random(2)
        for _ in range(100):
            x = free.normalize(raw_term(free, rng))
            assert mu(bvb, tau(bvb, x)) == evaluate(free, as_self, lambda m: m, x)

    def test_checked_actions(self, bvb):
        x = bvb.embed(perm(1, 2))
        assert bvb.key(bvb_act(bvb, "right", x, 1, perm(2, 1))) == bvb.key(bvb.right_act(x, 1, perm(2, 1)))
        with pytest.raises(SlotOutOfRange):
            bvb_act(bvb, "right", x, 3, perm(2, 1))
        with pytest.raises(ProfileArityMismatch):
            bvb_act(bvb, "left", perm(1, 2), [x])

    def test_mu_is_a_bimodule_map(self, bvb):
        mu_map(bvb)


class TestOperadResolution:
    def test_laws(self, bvo):
        report = check_operad_axioms(bvo, budget=150, seed=3)
        assert report.ok, report.violations

    def test_mu_after_iota(self, as_, bvo):
        rng = random.Random(4)
        for _ in range(100):
            a = as_.sample(ColourProfile.mono(rng.randint(0, 4)), rng)
            assert mu_operad(bvo, iota(bvo, a)) == a

    def test_mu_reads_composites(self, as_, bvo):
        a, b = perm(2, 1), perm(1, 3, 2)
        composite = bvo.compose(iota(bvo, a), 2, iota(bvo, b))
        assert len(trees.vertices(composite)) == 2
        assert mu_operad(bvo, composite) == as_.compose(a, 2, b)

    def test_units_are_bare_edges(self, bvo):
        x = iota(bvo, perm(2, 1))
        assert bvo.key(bvo.compose(x, 1, bvo.unit(CLOSED))) == bvo.key(x)
        assert mu_operad(bvo, bvo.unit(CLOSED)) == perm(1)

    def test_zero_edges_compose(self, as_, bvo):
        raw = node(perm(1, 2), node(perm(2, 1), leaf(1), leaf(2), edge=0), leaf(3))
        term = bvo.normalize(raw)
        assert term.label == as_.compose(perm(1, 2), 1, perm(2, 1))

    def test_joined_edges_keep_the_larger_parameter(self):
        child = node(perm(1, 2), leaf(1), leaf(2), edge="1/4")
        assert join_edges(node(perm(1), child, edge="3/4"), child).edge == Fraction(3, 4)
        assert join_edges(node(perm(1), child), child).edge is None
        assert join_edges(node(perm(1), leaf(1), edge="1/2"), leaf(1)) == leaf(1)

    def test_mu_is_an_operad_map(self, bvo):
        mu_operad_map(bvo)


class TestFiltration:
    def test_level_of_the_two_pearl_term(self, bvb):
        x = bvb.normalize(filtration_term())
        assert filtration_level(bvb, x) == FiltrationIndex(6)
        assert filtration_level(bvb, x, "kl") == FiltrationIndex(6, 2)
        # the cut is what lowers it from the whole term's count
        assert geometric_inputs(x) == 9

    def test_membership(self, bvb):
        x = bvb.normalize(filtration_term())
        assert in_filtration(bvb, x, FiltrationIndex(6))
        assert not in_filtration(bvb, x, FiltrationIndex(5))
        assert not in_filtration(bvb, x, FiltrationIndex(6, 1))

    def test_decomposition_reassembles(self, bvb):
        x = bvb.normalize(filtration_term())
        decomposition = prime_decompose(bvb, x)
        assert not decomposition.is_prime
        assert len(decomposition.components) == 2
        assert decomposition.root is not None
        assert len(decomposition.actors) == 1
        assert bvb.key(reassemble(bvb, decomposition)) == bvb.key(x)

    def test_sampled_terms_reassemble(self, bvb, bvo):
        rng = random.Random(5)
        for system in (bvb, bvo):
            for _ in range(100):
                x = system.normalize(raw_term(system, rng))
                assert system.key(reassemble(system, prime_decompose(system, x))) == system.key(x)

    def test_operad_components_split_on_edges_at_one(self, bvo):
        composite = bvo.compose(iota(bvo, perm(1, 2)), 1, iota(bvo, perm(1, 2, 3)))
        decomposition = prime_decompose(bvo, composite)
        assert len(decomposition.components) == 2
        assert filtration_level(bvo, composite) == FiltrationIndex(3)

    def test_prime_terms_stand_alone(self, bvb):
        x = bvb.embed(perm(2, 1))
        decomposition = prime_decompose(bvb, x)
        assert decomposition.is_prime
        assert filtration_level(bvb, x) == FiltrationIndex(2)

    def test_index_order(self):
        assert FiltrationIndex(2) <= FiltrationIndex(3)
        assert not FiltrationIndex(4) <= FiltrationIndex(3)
        assert FiltrationIndex(2, 1) <= FiltrationIndex(2, 2)
        assert not FiltrationIndex(2, 3) <= FiltrationIndex(2, 2)

    def test_unknown_mode(self, bvb):
        with pytest.raises(InvalidArgument):
            filtration_level(bvb, bvb.embed(perm(1)), "lk")
