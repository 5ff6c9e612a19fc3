"""Named instances reachable from the command line."""

import re
from collections.abc import Callable

from operadwb.exceptions import UnknownInstance
from operadwb.models.colours import ColourProfile
from operadwb.services.bridge import assemble_BV_empty, l_operad, make_CCd
from operadwb.services.cubes import LittleCubes, LittleCubesInfinity, NonOverlappingCubes, SwissCheese
from operadwb.services.empty import BVEmpty
from operadwb.services.fixtures import Associative, Commutative
from operadwb.services.free import FreeBimodule
from operadwb.services.operads import self_bimodule
from operadwb.services.resolutions import BVBimodule, BVOperad
from operadwb.services.sequences import GeneratedSequence
from operadwb.services.structures import SSequence


def _free_as() -> FreeBimodule:
    as_ = Associative()
    generators = GeneratedSequence(
        {"x": ColourProfile.mono(2), "y": ColourProfile.mono(1)}, base=as_, name="X", pointed=False
    )
    return FreeBimodule(generators, as_, as_, name="F_B(X)")


_FIXED: dict[str, Callable[[], SSequence]] = {
    "com": lambda: Commutative(),
    "com+": lambda: Commutative(positive=True),
    "as": lambda: Associative(),
    "as+": lambda: Associative(positive=True),
    "fb-as": _free_as,
    "b-as": lambda: BVBimodule(self_bimodule(Associative())),
    "bv-as": lambda: BVOperad(Associative()),
    "be-as": lambda: BVEmpty(self_bimodule(Associative())),
    "l-as": lambda: l_operad(self_bimodule(Associative()), Associative(), Associative()).operad,
    "bv0-as": lambda: assemble_BV_empty(Associative()).operad,
}

_PATTERNS: list[tuple[re.Pattern, Callable[..., SSequence]]] = [
    (re.compile(r"c(\d+)"), lambda d: LittleCubes(int(d))),
    (re.compile(r"cinf(\d+)"), lambda d: LittleCubesInfinity(int(d))),
    (re.compile(r"sc(\d+)"), lambda d: SwissCheese(int(d))),
    (re.compile(r"c(\d+)-l(\d+)"), lambda d, l: NonOverlappingCubes(int(d), int(l))),
    (re.compile(r"cc(\d+)"), lambda d: make_CCd(int(d)).operad),
]


def names() -> list[str]:
    return sorted(_FIXED) + ["c<d>", "cinf<d>", "sc<d>", "c<d>-l<l>", "cc<d>"]


def get_instance(name: str) -> SSequence:
    key = name.strip().lower()
    if key in _FIXED:
        return _FIXED[key]()
    for pattern, build in _PATTERNS:
        match = pattern.fullmatch(key)
        if match:
            return build(*match.groups())
    raise UnknownInstance(name)
