import random
from fractions import Fraction

import pytest

from operadwb.exceptions import ColourMismatch, InvalidArgument, InvalidCube, MissingColourTags
from operadwb.models import CLOSED, OPEN, ColourProfile, CubeConfig, LittleCube
from operadwb.services.cubes import (
    LittleCubes,
    LittleCubesInfinity,
    NonOverlappingCubes,
    SwissCheese,
    cube_compose,
    cube_embedding,
    dump_config,
    is_disjoint_config,
    is_l_overlap_free,
    is_swiss_cheese_config,
    load_config,
    permute_config,
    random_config,
    random_overlap_free_config,
    random_swiss_cheese_config,
)
from operadwb.services.laws import check_bimodule_axioms, check_operad_axioms
from tests.conftest import perm

half = Fraction(1, 2)


def box(*intervals) -> LittleCube:
    return LittleCube.from_intervals(*intervals)


def random_profile(rng: random.Random, max_arity: int = 3) -> ColourProfile:
    output = rng.choice([CLOSED, OPEN])
    n = rng.randint(0, max_arity)
    if output == CLOSED:
        return ColourProfile.mono(n)
    inputs = [rng.choice([CLOSED, OPEN]) for _ in range(n)]
    return ColourProfile(tuple(inputs), OPEN)


class TestLittleCube:
    def test_rejects_leaving_the_unit_cube(self):
        with pytest.raises(InvalidCube):
            box((half, Fraction(3, 2)))

    def test_rejects_degenerate_scale(self):
        with pytest.raises(InvalidCube):
            box((half, half))

    def test_after(self):
        outer = box((half, 1))
        assert outer.after(box((0, half))).interval(1) == (half, Fraction(3, 4))

    def test_mixed_dimensions(self):
        with pytest.raises(InvalidCube):
            CubeConfig(2, (box((0, 1)),))


class TestComposition:
    def test_three_into_two(self):
        x = CubeConfig(2, (box((0, half), (0, half)), box((half, 1), (0, half)), box((0, 1), (half, 1))))
        y = CubeConfig(2, (box((0, half), (0, 1)), box((half, 1), (0, 1))))
        z = cube_compose(x, 2, y)
        assert z.arity == 4
        assert z.cubes[0] == x.cubes[0]
        assert z.cubes[1].interval(1) == (half, Fraction(3, 4))
        assert z.cubes[2].interval(1) == (Fraction(3, 4), 1)
        assert z.cubes[1].interval(2) == (0, half)
        assert z.cubes[3] == x.cubes[2]
        assert is_disjoint_config(z)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgument):
            cube_compose(CubeConfig(1, (box((0, 1)),)), 1, CubeConfig(2, (box((0, 1), (0, 1)),)))

    def test_colour_mismatch(self):
        x = CubeConfig(2, (box((0, 1), (half, 1)),), (CLOSED,), OPEN)
        y = CubeConfig(2, (box((half, 1), (0, 1)),), (OPEN,), OPEN)
        with pytest.raises(ColourMismatch):
            cube_compose(x, 1, y)

    def test_permutation_moves_cubes(self):
        x = CubeConfig(1, (box((0, Fraction(1, 3))), box((Fraction(1, 3), Fraction(2, 3))), box((Fraction(2, 3), 1))))
        moved = permute_config(x, perm(3, 1, 2))
        assert moved.cubes == (x.cubes[2], x.cubes[0], x.cubes[1])

    def test_dump_and_load(self):
        x = CubeConfig(2, (box((0, half), (Fraction(1, 3), 1)),), (OPEN,), OPEN)
        assert load_config(dump_config(x)) == x


class TestOperadLaws:
    @pytest.mark.parametrize("d", [1, 2])
    def test_little_cubes(self, d):
        report = check_operad_axioms(LittleCubes(d), budget=500, seed=1, max_arity=4)
        assert report.ok, report.violations
        assert report.checked > 0

    def test_little_cubes_infinity(self):
        assert check_operad_axioms(LittleCubesInfinity(2), budget=200, seed=2).ok

    def test_swiss_cheese(self):
        assert check_operad_axioms(SwissCheese(2), budget=300, seed=3).ok

    def test_samples_are_members(self):
        rng = random.Random(4)
        c2 = LittleCubes(2)
        for n in range(5):
            assert c2.contains(c2.sample(ColourProfile.mono(n), rng))


class TestOverlap:
    def test_two_free_is_disjoint(self):
        rng = random.Random(5)
        for _ in range(1000):
            x = random_config(rng.choice([1, 2]), rng.randint(0, 5), rng)
            assert is_l_overlap_free(x, 2) == is_disjoint_config(x)

    def test_three_cubes_through_one_point(self):
        x = CubeConfig(1, (box((0, half)), box((Fraction(1, 4), Fraction(3, 4))), box((Fraction(1, 3), 1))))
        assert not is_disjoint_config(x)
        assert not is_l_overlap_free(x, 3)
        assert is_l_overlap_free(x, 4)

    def test_pairwise_overlaps_without_a_common_point(self):
        x = CubeConfig(1, (box((0, half)), box((Fraction(1, 4), Fraction(3, 4))), box((half, 1))))
        assert is_l_overlap_free(x, 3)

    def test_touching_faces_do_not_overlap(self):
        x = CubeConfig(2, (box((0, half), (0, 1)), box((half, 1), (0, 1))))
        assert is_disjoint_config(x)

    def test_bound_below_two(self):
        with pytest.raises(InvalidArgument):
            is_l_overlap_free(CubeConfig(1), 1)

    def test_stacked_layers(self):
        rng = random.Random(6)
        for _ in range(100):
            assert is_l_overlap_free(random_overlap_free_config(2, rng.randint(0, 6), 3, rng), 3)


class TestSwissCheese:
    def test_open_cube_must_touch_the_face(self):
        touching = CubeConfig(2, (box((half, 1), (0, 1)),), (OPEN,), OPEN)
        floating = CubeConfig(2, (box((0, half), (0, 1)),), (OPEN,), OPEN)
        assert is_swiss_cheese_config(touching)
        assert not is_swiss_cheese_config(floating)

    def test_closed_output_refuses_open_inputs(self):
        x = CubeConfig(2, (box((half, 1), (0, 1)),), (OPEN,), CLOSED)
        assert not is_swiss_cheese_config(x)
        assert random_swiss_cheese_config(2, ColourProfile((OPEN,), CLOSED), random.Random(0)) is None
        assert not SwissCheese(2).admits(ColourProfile((CLOSED, OPEN), CLOSED))

    def test_needs_tags(self):
        with pytest.raises(MissingColourTags):
            is_swiss_cheese_config(CubeConfig(2, (box((0, 1), (0, 1)),)))

    def test_one_dimensional_open_face_holds_one_cube(self):
        assert not SwissCheese(1).admits(ColourProfile((OPEN, OPEN), OPEN))

    def test_compositions_stay_admissible(self):
        rng = random.Random(7)
        sc = SwissCheese(2)
        checked = 0
        while checked < 500:
            profile = random_profile(rng)
            x = random_swiss_cheese_config(2, profile, rng)
            if x is None:
                assert not sc.admits(profile)
                continue
            assert is_swiss_cheese_config(x)
            if x.arity == 0:
                continue
            i = rng.randint(1, x.arity)
            inner = random_profile(rng)
            inner = ColourProfile(inner.inputs if x.tags[i - 1] == inner.output else (), x.tags[i - 1])
            y = random_swiss_cheese_config(2, inner, rng)
            if y is None:
                continue
            assert is_swiss_cheese_config(cube_compose(x, i, y))
            checked += 1


class TestNonOverlapping:
    def test_actions_preserve_membership(self):
        rng = random.Random(8)
        bimodule = NonOverlappingCubes(2, 3)
        c2 = LittleCubes(2)
        for _ in range(250):
            x = bimodule.sample(ColourProfile.mono(rng.randint(1, 4)), rng)
            i = rng.randint(1, x.arity)
            b = c2.sample(ColourProfile.mono(rng.randint(0, 3)), rng)
            assert bimodule.contains(bimodule.right_act(x, i, b))
        for _ in range(250):
            a = c2.sample(ColourProfile.mono(rng.randint(1, 3)), rng)
            xs = [bimodule.sample(ColourProfile.mono(rng.randint(0, 3)), rng) for _ in range(a.arity)]
            assert bimodule.contains(bimodule.left_act(a, xs))

    def test_bimodule_laws(self):
        assert check_bimodule_axioms(NonOverlappingCubes(2, 3), budget=200, seed=9, max_arity=4).ok

    def test_not_an_operad_bound(self):
        with pytest.raises(InvalidArgument):
            NonOverlappingCubes(2, 1)


class TestEmbedding:
    def test_padding_keeps_disjointness(self):
        rng = random.Random(10)
        embed = cube_embedding(2, 3)
        for n in range(4):
            x = LittleCubes(2).sample(ColourProfile.mono(n), rng)
            image = embed(x)
            assert image.d == 3
            assert LittleCubes(3).contains(image)

    def test_cannot_shrink(self):
        with pytest.raises(InvalidArgument):
            cube_embedding(3, 2)
