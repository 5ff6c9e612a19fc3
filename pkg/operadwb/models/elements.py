from dataclasses import dataclass
from typing import Any

from operadwb.models.colours import ColourProfile
from operadwb.models.permutation import Permutation


@dataclass(frozen=True, order=True)
class Point:
    """The single operation of a given arity in a commutative operad."""

    arity: int


@dataclass(frozen=True, order=True)
class Flag:
    arity: int
    raised: bool = False


@dataclass(frozen=True)
class Coloured:
    """An element of a small two-coloured operad: a profile and a value."""

    profile: ColourProfile
    value: bool | None = None


@dataclass(frozen=True)
class Generator:
    """Generator `name` acted on by `perm`; name "*" marks a unit."""

    name: str
    perm: Permutation
    profile: ColourProfile

    @property
    def is_unit(self) -> bool:
        return self.name == "*"


@dataclass(frozen=True)
class Summand:
    """An element of a sum P ⊕ Q, tagged with the colour of its summand."""

    colour: str
    value: Any


@dataclass(frozen=True)
class Tagged:
    """A single-coloured element read in a two-coloured profile."""

    profile: ColourProfile
    value: Any
