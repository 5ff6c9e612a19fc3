"""Interfaces shared by every instance: S-sequences, operads, bimodules and
infinitesimal bimodules.

Instances are immutable after construction. Structure methods on the
classes assume validated input; the checked entry points live in
`operadwb.services.operads`.
"""

import itertools
import random
from abc import ABC, abstractmethod
from typing import Any

from operadwb.exceptions import UnsupportedInput
from operadwb.models.colours import CLOSED, Colour, ColourProfile, TermKind
from operadwb.models.permutation import Permutation


class SSequence(ABC):
    name: str = "sequence"
    colours: frozenset[Colour] = frozenset({CLOSED})
    kind: TermKind = TermKind.BIMODULE

    @abstractmethod
    def profile(self, x) -> ColourProfile: ...

    @abstractmethod
    def act(self, x, sigma: Permutation): ...

    def key(self, x) -> str:
        return repr(x)

    def equal(self, x, y) -> bool:
        return self.key(x) == self.key(y)

    def arity(self, x) -> int:
        return self.profile(x).arity

    def contains(self, x) -> bool:
        return True

    def admits(self, profile: ColourProfile) -> bool:
        """False when the space of `profile` is known to be empty."""
        return True

    def elements(self, profile: ColourProfile) -> list | None:
        """All elements of a finite space, or None when not enumerable."""
        return None

    def sample(self, profile: ColourProfile, rng: random.Random) -> Any | None:
        found = self.elements(profile)
        if found:
            return rng.choice(found)
        return None

    def profiles(self, max_arity: int) -> list[ColourProfile]:
        colours = sorted(self.colours)
        found = []
        for n in range(max_arity + 1):
            for inputs in itertools.product(colours, repeat=n):
                for output in colours:
                    profile = ColourProfile(inputs, output)
                    if self.admits(profile):
                        found.append(profile)
        return found

    def gamma(self, a):
        raise UnsupportedInput(f"{self.name} has no basepoint maps")

    def gamma_preimage(self, x):
        """The a with gamma(a) = x, if x is a basepoint."""
        return None

    def dump(self, x) -> Any:
        raise UnsupportedInput(f"{self.name} has no document encoding")

    def load(self, data: Any):
        raise UnsupportedInput(f"{self.name} has no document encoding")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class Operad(SSequence):
    kind = TermKind.OPERAD

    @abstractmethod
    def unit(self, colour: Colour): ...

    @abstractmethod
    def compose(self, x, i: int, y): ...

    def is_unit(self, x) -> bool:
        profile = self.profile(x)
        if profile.arity != 1 or profile.inputs[0] != profile.output:
            return False
        return self.equal(x, self.unit(profile.output))

    def compose_many(self, x, ys: list):
        """Full composition x(y_1, ..., y_n), inserted from the last slot."""
        for i in range(len(ys), 0, -1):
            x = self.compose(x, i, ys[i - 1])
        return x


class Bimodule(SSequence):
    """A (left-right) bimodule; `left` acts by full insertion, `right` slot-wise."""

    left: Operad
    right: Operad

    @abstractmethod
    def left_act(self, a, xs: list): ...

    @abstractmethod
    def right_act(self, x, i: int, b): ...

    def right_act_many(self, x, bs: list):
        for i in range(len(bs), 0, -1):
            x = self.right_act(x, i, bs[i - 1])
        return x

    def decompose(self, x):
        """A splitting x = left_act(a, xs) . rho with a non-unit a, or None."""
        return None


class IBimodule(SSequence):
    operad: Operad

    @abstractmethod
    def left_inf(self, a, i: int, x): ...

    @abstractmethod
    def right_inf(self, x, i: int, b): ...
