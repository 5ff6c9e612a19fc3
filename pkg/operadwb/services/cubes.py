"""Little cubes over exact rationals: C_d^inf, C_d, SC_d and the
non-(l)-overlapping configurations C_d^(l)."""

import itertools
import logging
import random
from fractions import Fraction

from operadwb.exceptions import (
    ColourMismatch,
    InvalidArgument,
    MissingColourTags,
    SlotOutOfRange,
)
from operadwb.models.colours import CLOSED, OPEN, Colour, ColourProfile, TermKind
from operadwb.models.cube import CubeConfig, LittleCube
from operadwb.models.permutation import Permutation
from operadwb.schemas.document import format_rational, parse_rational
from operadwb.services.operads import OperadMap
from operadwb.services.structures import Bimodule, Operad

logger = logging.getLogger(__name__)

GRID_STEPS = 4


def cube_compose(x: CubeConfig, i: int, y: CubeConfig) -> CubeConfig:
    if x.d != y.d:
        raise InvalidArgument(f"cannot compose a {y.d}-dimensional configuration into a {x.d}-dimensional one")
    if not 1 <= i <= x.arity:
        raise SlotOutOfRange(i, x.arity)
    outer = x.cubes[i - 1]
    cubes = x.cubes[: i - 1] + tuple(outer.after(c) for c in y.cubes) + x.cubes[i:]
    tags = None
    if x.tags is not None and y.tags is not None:
        if y.output is not None and x.tags[i - 1] != y.output:
            raise ColourMismatch(i, x.tags[i - 1], y.output)
        tags = x.tags[: i - 1] + y.tags + x.tags[i:]
    return CubeConfig(x.d, cubes, tags, x.output)


def permute_config(x: CubeConfig, sigma: Permutation) -> CubeConfig:
    cubes = tuple(x.cubes[sigma(i) - 1] for i in range(1, x.arity + 1))
    tags = None if x.tags is None else tuple(x.tags[sigma(i) - 1] for i in range(1, x.arity + 1))
    return CubeConfig(x.d, cubes, tags, x.output)


def _overlap(cubes: tuple[LittleCube, ...]) -> bool:
    """Open images share a point iff max(lo) < min(hi) on every axis."""
    for axis in range(1, cubes[0].d + 1):
        bounds = [c.interval(axis) for c in cubes]
        if max(lo for lo, _ in bounds) >= min(hi for _, hi in bounds):
            return False
    return True


def is_disjoint_config(x: CubeConfig) -> bool:
    return not any(_overlap(pair) for pair in itertools.combinations(x.cubes, 2))


def is_swiss_cheese_config(x: CubeConfig, output: Colour | None = None) -> bool:
    if x.tags is None:
        raise MissingColourTags()
    output = output or x.output
    if output == CLOSED:
        return all(tag == CLOSED for tag in x.tags) and is_disjoint_config(x)
    if not is_disjoint_config(x):
        return False
    return all(cube.touches_face() for cube, tag in zip(x.cubes, x.tags) if tag == OPEN)


def is_l_overlap_free(x: CubeConfig, l: int) -> bool:
    if l < 2:
        raise InvalidArgument(f"overlap bound must be at least 2, got {l}")
    n = x.arity
    if n < l:
        return True
    meets = [[i != j and _overlap((x.cubes[i], x.cubes[j])) for j in range(n)] for i in range(n)]

    def extend(chosen: list[int], start: int) -> bool:
        if len(chosen) == l:
            return not _overlap(tuple(x.cubes[i] for i in chosen))
        for j in range(start, n):
            # pairwise-disjoint members already force an empty intersection
            if all(meets[i][j] for i in chosen) and not extend(chosen + [j], j + 1):
                return False
        return True

    return extend([], 0)


def _grid_interval(rng: random.Random, lo: Fraction, width: Fraction, touch: bool = False) -> tuple[Fraction, Fraction]:
    a = rng.randint(0, GRID_STEPS - 1)
    b = GRID_STEPS if touch else rng.randint(a + 1, GRID_STEPS)
    return lo + width * Fraction(a, GRID_STEPS), lo + width * Fraction(b, GRID_STEPS)


def _cells(d: int, g: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(g), repeat=d))


def _cube_in_cell(rng: random.Random, cell: tuple[int, ...], g: int, touch: bool = False) -> LittleCube:
    width = Fraction(1, g)
    intervals = []
    for axis, index in enumerate(cell):
        intervals.append(_grid_interval(rng, index * width, width, touch=touch and axis == 0))
    return LittleCube.from_intervals(*intervals)


def random_cube(d: int, rng: random.Random) -> LittleCube:
    return _cube_in_cell(rng, (0,) * d, 1)


def random_disjoint_config(d: int, n: int, rng: random.Random) -> CubeConfig:
    g = 1
    while g**d < n:
        g += 1
    g = max(g, rng.randint(1, 3))
    cells = rng.sample(_cells(d, g), n)
    return CubeConfig(d, tuple(_cube_in_cell(rng, cell, g) for cell in cells))


def random_config(d: int, n: int, rng: random.Random) -> CubeConfig:
    """Half the time disjoint, otherwise arbitrary cubes."""
    if rng.random() < 0.5:
        return random_disjoint_config(d, n, rng)
    return CubeConfig(d, tuple(random_cube(d, rng) for _ in range(n)))


def random_overlap_free_config(d: int, n: int, l: int, rng: random.Random) -> CubeConfig:
    """l-1 stacked disjoint layers, so at most l-1 cubes meet anywhere."""
    layers = [rng.randrange(l - 1) for _ in range(n)]
    cubes: list[LittleCube | None] = [None] * n
    for layer in range(l - 1):
        members = [j for j in range(n) if layers[j] == layer]
        config = random_disjoint_config(d, len(members), rng)
        for j, cube in zip(members, config.cubes):
            cubes[j] = cube
    return CubeConfig(d, tuple(cubes))


def random_swiss_cheese_config(d: int, profile: ColourProfile, rng: random.Random) -> CubeConfig | None:
    tags = profile.inputs
    opens = [j for j, tag in enumerate(tags) if tag == OPEN]
    if profile.output == CLOSED:
        if opens:
            return None
        config = random_disjoint_config(d, len(tags), rng)
        return CubeConfig(d, config.cubes, tags, CLOSED)
    g = max(2, len(opens)) if d > 1 else 2
    while g**d < len(tags) + len(opens):
        g += 1
    faces = [cell for cell in _cells(d, g) if cell[0] == g - 1]
    if len(opens) > len(faces) or (d == 1 and len(opens) > 1):
        return None
    face_cells = rng.sample(faces, len(opens))
    rest = rng.sample([c for c in _cells(d, g) if c not in face_cells], len(tags) - len(opens))
    cubes: list[LittleCube] = []
    face_iter, rest_iter = iter(face_cells), iter(rest)
    for tag in tags:
        if tag == OPEN:
            cubes.append(_cube_in_cell(rng, next(face_iter), g, touch=True))
        else:
            cubes.append(_cube_in_cell(rng, next(rest_iter), g))
    return CubeConfig(d, tuple(cubes), tags, OPEN)


def _cube_key(cube: LittleCube) -> str:
    return "x".join(f"{s.numerator}/{s.denominator}:{o.numerator}/{o.denominator}" for s, o in cube.axes)


def config_key(x: CubeConfig) -> str:
    body = ";".join(_cube_key(c) for c in x.cubes)
    if x.tags is None:
        return f"{x.d}|{body}"
    return f"{x.d}|{body}|{','.join(x.tags)};{x.output}"


def dump_config(x: CubeConfig) -> dict:
    data: dict = {
        "d": x.d,
        "cubes": [[[format_rational(s), format_rational(o)] for s, o in c.axes] for c in x.cubes],
    }
    if x.tags is not None:
        data["tags"] = list(x.tags)
        data["output"] = x.output
    return data


def load_config(data: dict) -> CubeConfig:
    cubes = tuple(
        LittleCube(tuple((parse_rational(s), parse_rational(o)) for s, o in axes)) for axes in data["cubes"]
    )
    tags = tuple(data["tags"]) if data.get("tags") is not None else None
    return CubeConfig(int(data["d"]), cubes, tags, data.get("output"))


class _CubeOperad(Operad):
    kind = TermKind.CUBE_CONFIG

    def __init__(self, d: int):
        if d < 1:
            raise InvalidArgument(f"dimension must be at least 1, got {d}")
        self.d = d

    def profile(self, x: CubeConfig) -> ColourProfile:
        return ColourProfile.mono(x.arity)

    def act(self, x: CubeConfig, sigma: Permutation) -> CubeConfig:
        return permute_config(x, sigma)

    def key(self, x: CubeConfig) -> str:
        return config_key(x)

    def admits(self, profile: ColourProfile) -> bool:
        return profile.is_monochrome(CLOSED)

    def unit(self, colour: Colour) -> CubeConfig:
        return CubeConfig(self.d, (LittleCube.identity(self.d),))

    def compose(self, x: CubeConfig, i: int, y: CubeConfig) -> CubeConfig:
        return cube_compose(x, i, y)

    def dump(self, x: CubeConfig) -> dict:
        return dump_config(x)

    def load(self, data: dict) -> CubeConfig:
        return load_config(data)


class LittleCubesInfinity(_CubeOperad):
    """All tuples of little cubes, overlaps allowed."""

    def __init__(self, d: int):
        super().__init__(d)
        self.name = f"Cinf{d}"

    def sample(self, profile: ColourProfile, rng: random.Random) -> CubeConfig | None:
        if not self.admits(profile):
            return None
        return random_config(self.d, profile.arity, rng)


class LittleCubes(_CubeOperad):
    def __init__(self, d: int):
        super().__init__(d)
        self.name = f"C{d}"

    def contains(self, x: CubeConfig) -> bool:
        return x.d == self.d and x.tags is None and is_disjoint_config(x)

    def sample(self, profile: ColourProfile, rng: random.Random) -> CubeConfig | None:
        if not self.admits(profile):
            return None
        return random_disjoint_config(self.d, profile.arity, rng)


class SwissCheese(_CubeOperad):
    colours = frozenset({OPEN, CLOSED})

    def __init__(self, d: int):
        super().__init__(d)
        self.name = f"SC{d}"

    def profile(self, x: CubeConfig) -> ColourProfile:
        return ColourProfile(x.tags, x.output)

    def contains(self, x: CubeConfig) -> bool:
        return x.d == self.d and x.tags is not None and is_swiss_cheese_config(x, x.output)

    def admits(self, profile: ColourProfile) -> bool:
        opens = profile.inputs.count(OPEN)
        if profile.output == CLOSED:
            return opens == 0
        return self.d > 1 or opens <= 1

    def unit(self, colour: Colour) -> CubeConfig:
        return CubeConfig(self.d, (LittleCube.identity(self.d),), (colour,), colour)

    def sample(self, profile: ColourProfile, rng: random.Random) -> CubeConfig | None:
        if not self.admits(profile):
            return None
        return random_swiss_cheese_config(self.d, profile, rng)


class NonOverlappingCubes(Bimodule):
    """C_d^(l): no l cubes share an interior point; a bimodule over C_d."""

    kind = TermKind.CUBE_CONFIG

    def __init__(self, d: int, l: int):
        if l < 2:
            raise InvalidArgument(f"overlap bound must be at least 2, got {l}")
        self.d = d
        self.l = l
        self.left = self.right = LittleCubes(d)
        self.name = f"C{d}^({l})"

    def profile(self, x: CubeConfig) -> ColourProfile:
        return ColourProfile.mono(x.arity)

    def act(self, x: CubeConfig, sigma: Permutation) -> CubeConfig:
        return permute_config(x, sigma)

    def key(self, x: CubeConfig) -> str:
        return config_key(x)

    def contains(self, x: CubeConfig) -> bool:
        return x.d == self.d and is_l_overlap_free(x, self.l)

    def admits(self, profile: ColourProfile) -> bool:
        return profile.is_monochrome(CLOSED)

    def sample(self, profile: ColourProfile, rng: random.Random) -> CubeConfig | None:
        if not self.admits(profile):
            return None
        return random_overlap_free_config(self.d, profile.arity, self.l, rng)

    def left_act(self, a: CubeConfig, xs: list) -> CubeConfig:
        for i in range(len(xs), 0, -1):
            a = cube_compose(a, i, xs[i - 1])
        return a

    def right_act(self, x: CubeConfig, i: int, b: CubeConfig) -> CubeConfig:
        return cube_compose(x, i, b)

    def gamma(self, a: CubeConfig) -> CubeConfig:
        return a

    def gamma_preimage(self, x: CubeConfig):
        return x if x.arity == 0 else None

    def dump(self, x: CubeConfig) -> dict:
        return dump_config(x)

    def load(self, data: dict) -> CubeConfig:
        return load_config(data)


def pad_config(x: CubeConfig, n: int) -> CubeConfig:
    extra = ((Fraction(1), Fraction(0)),) * (n - x.d)
    return CubeConfig(n, tuple(LittleCube(c.axes + extra) for c in x.cubes), x.tags, x.output)


def cube_embedding(d: int, n: int) -> OperadMap:
    """C_d -> C_n, keeping the extra axes at the identity."""
    if n < d:
        raise InvalidArgument(f"cannot embed C{d} into C{n}")
    return OperadMap(LittleCubes(d), LittleCubes(n), lambda x: pad_config(x, n), name=f"C{d}->C{n}")
