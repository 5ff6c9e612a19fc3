"""Small finite instances: Com, As, the Flag bimodule and the Flag operad."""

import random

from operadwb.models.colours import CLOSED, OPEN, Colour, ColourProfile
from operadwb.models.elements import Coloured, Flag, Point
from operadwb.models.permutation import Permutation
from operadwb.services.structures import Bimodule, Operad


class Commutative(Operad):
    """One operation per arity; `positive` drops arity 0."""

    def __init__(self, positive: bool = False, colour: Colour = CLOSED):
        self.positive = positive
        self.colour = colour
        self.colours = frozenset({colour})
        self.name = "Com>0" if positive else "Com"
        if colour != CLOSED:
            self.name += f"[{colour}]"

    def profile(self, x: Point) -> ColourProfile:
        return ColourProfile.mono(x.arity, self.colour)

    def act(self, x: Point, sigma: Permutation) -> Point:
        return x

    def key(self, x: Point) -> str:
        return str(x.arity)

    def contains(self, x) -> bool:
        return isinstance(x, Point) and x.arity >= (1 if self.positive else 0)

    def admits(self, profile: ColourProfile) -> bool:
        return profile.is_monochrome(self.colour) and profile.arity >= (1 if self.positive else 0)

    def elements(self, profile: ColourProfile) -> list[Point]:
        return [Point(profile.arity)] if self.admits(profile) else []

    def unit(self, colour: Colour) -> Point:
        return Point(1)

    def compose(self, x: Point, i: int, y: Point) -> Point:
        return Point(x.arity + y.arity - 1)

    def dump(self, x: Point) -> dict:
        return {"arity": x.arity}

    def load(self, data: dict) -> Point:
        return Point(int(data["arity"]))


class Associative(Operad):
    """As(n) = Sigma_n with block composition; `positive` drops arity 0."""

    def __init__(self, positive: bool = False, colour: Colour = CLOSED):
        self.positive = positive
        self.colour = colour
        self.colours = frozenset({colour})
        self.name = "As>0" if positive else "As"
        if colour != CLOSED:
            self.name += f"[{colour}]"

    def profile(self, x: Permutation) -> ColourProfile:
        return ColourProfile.mono(len(x), self.colour)

    def act(self, x: Permutation, sigma: Permutation) -> Permutation:
        return x * sigma

    def key(self, x: Permutation) -> str:
        return ",".join(map(str, x.images))

    def contains(self, x) -> bool:
        return isinstance(x, Permutation) and len(x) >= (1 if self.positive else 0)

    def admits(self, profile: ColourProfile) -> bool:
        if profile.arity == 0:
            return profile.output == self.colour and not self.positive
        return profile.is_monochrome(self.colour)

    def elements(self, profile: ColourProfile) -> list[Permutation]:
        return list(Permutation.all(profile.arity)) if self.admits(profile) else []

    def sample(self, profile: ColourProfile, rng: random.Random) -> Permutation | None:
        if not self.admits(profile):
            return None
        return Permutation.random(profile.arity, rng)

    def unit(self, colour: Colour) -> Permutation:
        return Permutation.identity(1)

    def compose(self, x: Permutation, i: int, y: Permutation) -> Permutation:
        return x.partial_compose(i, y)

    def dump(self, x: Permutation) -> list[int]:
        return list(x.images)

    def load(self, data: list) -> Permutation:
        return Permutation(tuple(int(i) for i in data))


class FlagBimodule(Bimodule):
    """Flags over commutative operads: the left action raises the flag when
    any argument is raised, the right action keeps it."""

    def __init__(self, left: Operad, right: Operad, min_arity: int = 1, colour: Colour = CLOSED):
        self.left = left
        self.right = right
        self.min_arity = min_arity
        self.colour = colour
        self.colours = frozenset({colour})
        self.name = f"Flag[{left.name},{right.name}]"

    def profile(self, x: Flag) -> ColourProfile:
        return ColourProfile.mono(x.arity, self.colour)

    def act(self, x: Flag, sigma: Permutation) -> Flag:
        return x

    def key(self, x: Flag) -> str:
        return f"{x.arity}{'T' if x.raised else 'F'}"

    def admits(self, profile: ColourProfile) -> bool:
        if profile.arity == 0:
            return profile.output == self.colour and self.min_arity == 0
        return profile.is_monochrome(self.colour) and profile.arity >= self.min_arity

    def elements(self, profile: ColourProfile) -> list[Flag]:
        if not self.admits(profile):
            return []
        return [Flag(profile.arity, False), Flag(profile.arity, True)]

    def left_act(self, a, xs: list) -> Flag:
        return Flag(sum(x.arity for x in xs), any(x.raised for x in xs))

    def right_act(self, x: Flag, i: int, b) -> Flag:
        return Flag(x.arity + self.right.arity(b) - 1, x.raised)

    def gamma(self, a) -> Flag:
        return Flag(0, False)

    def gamma_preimage(self, x: Flag):
        if x.arity == 0 and not x.raised:
            found = self.left.elements(ColourProfile((), self.colour)) or []
            return found[0] if found else None
        return None

    def dump(self, x: Flag) -> dict:
        return {"arity": x.arity, "raised": x.raised}

    def load(self, data: dict) -> Flag:
        return Flag(int(data["arity"]), bool(data["raised"]))


class FlagOperad(Operad):
    """Two-coloured: one closed operation on closed inputs, two open
    operations (raised or not) on any inputs; composing into an open slot
    combines flags with "or"."""

    colours = frozenset({OPEN, CLOSED})

    def __init__(self, positive: bool = True):
        self.positive = positive
        self.name = "FlagOp"

    def profile(self, x: Coloured) -> ColourProfile:
        return x.profile

    def act(self, x: Coloured, sigma: Permutation) -> Coloured:
        return Coloured(x.profile.permuted(sigma), x.value)

    def key(self, x: Coloured) -> str:
        flag = "-" if x.value is None else ("T" if x.value else "F")
        return f"{x.profile}{flag}"

    def admits(self, profile: ColourProfile) -> bool:
        if self.positive and profile.arity == 0:
            return False
        if profile.output == CLOSED:
            return all(c == CLOSED for c in profile.inputs)
        return True

    def elements(self, profile: ColourProfile) -> list[Coloured]:
        if not self.admits(profile):
            return []
        if profile.output == CLOSED:
            return [Coloured(profile, None)]
        return [Coloured(profile, False), Coloured(profile, True)]

    def unit(self, colour: Colour) -> Coloured:
        profile = ColourProfile((colour,), colour)
        return Coloured(profile, None if colour == CLOSED else False)

    def compose(self, x: Coloured, i: int, y: Coloured) -> Coloured:
        profile = x.profile.spliced(i, y.profile)
        if x.profile.output == CLOSED:
            return Coloured(profile, None)
        if y.profile.output == CLOSED:
            return Coloured(profile, x.value)
        return Coloured(profile, x.value or y.value)

    def dump(self, x: Coloured) -> dict:
        return {"profile": str(x.profile), "value": x.value}

    def load(self, data: dict) -> Coloured:
        return Coloured(ColourProfile.parse(data["profile"]), data["value"])

