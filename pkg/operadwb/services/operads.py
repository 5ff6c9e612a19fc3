import enum
import itertools
import logging
import random
from collections.abc import Callable, Iterable, Mapping
from typing import Any

from operadwb.exceptions import (
    ColourMismatch,
    ConstructionError,
    InvalidArgument,
    ProfileArityMismatch,
    SlotOutOfRange,
    TruncationExceeded,
)
from operadwb.models.colours import Colour, ColourProfile, TermKind
from operadwb.models.permutation import Permutation
from operadwb.services.structures import Bimodule, IBimodule, Operad, SSequence

logger = logging.getLogger(__name__)

MAP_CHECK_SAMPLES = 24


class ActionMode(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _check_slot(outer: ColourProfile, i: int, inner: ColourProfile) -> None:
    if not 1 <= i <= outer.arity:
        raise SlotOutOfRange(i, outer.arity)
    if outer.inputs[i - 1] != inner.output:
        raise ColourMismatch(i, outer.inputs[i - 1], inner.output)


def compose(operad: Operad, x, i: int, y):
    _check_slot(operad.profile(x), i, operad.profile(y))
    return operad.compose(x, i, y)


def bimodule_act(bimodule: Bimodule, mode: ActionMode | str, *args):
    """left: (a, [x_1, ..., x_n]) -> gamma_l(a; x_1, ..., x_n);
    right: (x, i, b) -> x o^i b."""
    mode = ActionMode(mode)
    if mode is ActionMode.LEFT:
        a, xs = args
        outer = bimodule.left.profile(a)
        if len(xs) != outer.arity:
            raise ProfileArityMismatch(outer.arity, len(xs))
        for i, x in enumerate(xs, start=1):
            _check_slot(outer, i, bimodule.profile(x))
        return bimodule.left_act(a, list(xs))
    x, i, b = args
    _check_slot(bimodule.profile(x), i, bimodule.right.profile(b))
    return bimodule.right_act(x, i, b)


def ibimodule_act(ibimodule: IBimodule, mode: ActionMode | str, x, i: int, y):
    """left: a o_i x with a in the operad; right: x o^i b."""
    mode = ActionMode(mode)
    if mode is ActionMode.LEFT:
        _check_slot(ibimodule.operad.profile(x), i, ibimodule.profile(y))
        return ibimodule.left_inf(x, i, y)
    _check_slot(ibimodule.profile(x), i, ibimodule.operad.profile(y))
    return ibimodule.right_inf(x, i, y)


def colour_map(source: SSequence, target: SSequence, colours: Mapping[Colour, Colour] | None) -> dict:
    if colours is not None:
        return dict(colours)
    if len(source.colours) == 1 and len(target.colours) == 1:
        return {next(iter(source.colours)): next(iter(target.colours))}
    return {c: c for c in source.colours}


def _sample_any(sequence: SSequence, rng: random.Random, max_arity: int, output: Colour | None = None):
    profiles = [p for p in sequence.profiles(max_arity) if output is None or p.output == output]
    rng.shuffle(profiles)
    for profile in profiles[:8]:
        x = sequence.sample(profile, rng)
        if x is not None:
            return x
    return None


class OperadMap:
    """A colour-preserving operad map checked at construction."""

    def __init__(
        self,
        source: Operad,
        target: Operad,
        fn: Callable[[Any], Any],
        colours: Mapping[Colour, Colour] | None = None,
        name: str = "f",
        seed: int = 0,
        trivial: bool = False,
    ):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name
        self.trivial = trivial
        self.colours = colour_map(source, target, colours)
        if not trivial:
            self._validate(seed)

    @classmethod
    def identity(cls, operad: Operad) -> "OperadMap":
        return cls(operad, operad, lambda x: x, name=f"id[{operad.name}]", trivial=True)

    @property
    def is_identity(self) -> bool:
        return self.trivial

    def __call__(self, x):
        return self.fn(x)

    def _validate(self, seed: int) -> None:
        for colour in sorted(self.source.colours):
            image = self.fn(self.source.unit(colour))
            if not self.target.equal(image, self.target.unit(self.colours[colour])):
                raise ConstructionError(f"{self.name} does not preserve the unit of colour {colour}")
        rng = random.Random(seed)
        for _ in range(MAP_CHECK_SAMPLES):
            x = _sample_any(self.source, rng, 3)
            if x is None or self.source.arity(x) == 0:
                continue
            i = rng.randint(1, self.source.arity(x))
            y = _sample_any(self.source, rng, 2, output=self.source.profile(x).inputs[i - 1])
            if y is None:
                continue
            try:
                lhs = self.fn(self.source.compose(x, i, y))
            except TruncationExceeded:
                continue
            rhs = self.target.compose(self.fn(x), i, self.fn(y))
            if not self.target.equal(lhs, rhs):
                raise ConstructionError(
                    f"{self.name} does not preserve o_{i} on {self.source.key(x)}, {self.source.key(y)}"
                )


class BimoduleMap:
    """A map of bimodules over the same operads, checked at construction."""

    def __init__(self, source: Bimodule, target: Bimodule, fn: Callable[[Any], Any], name: str = "f", seed: int = 0):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name
        self._validate(seed)

    def __call__(self, x):
        return self.fn(x)

    def _validate(self, seed: int) -> None:
        for colour in sorted(self.source.left.colours):
            for a in self.source.left.elements(ColourProfile((), colour)) or []:
                if not self.target.equal(self.fn(self.source.gamma(a)), self.target.gamma(a)):
                    raise ConstructionError(f"{self.name} does not commute with the basepoint maps")
        rng = random.Random(seed)
        for _ in range(MAP_CHECK_SAMPLES):
            x = _sample_any(self.source, rng, 3)
            if x is None or self.source.arity(x) == 0:
                continue
            i = rng.randint(1, self.source.arity(x))
            b = _sample_any(self.source.right, rng, 2, output=self.source.profile(x).inputs[i - 1])
            if b is None:
                continue
            try:
                lhs = self.fn(self.source.right_act(x, i, b))
            except TruncationExceeded:
                continue
            if not self.target.equal(lhs, self.target.right_act(self.fn(x), i, b)):
                raise ConstructionError(f"{self.name} does not commute with the right action")


class OperadBimodule(Bimodule):
    """The target of an operad map eta: O1 -> O2 as an (O1-O1) bimodule."""

    def __init__(self, eta: OperadMap):
        self.eta = eta
        self.left = eta.source
        self.right = eta.source
        self.base = eta.target
        self.colours = eta.target.colours
        self.name = eta.target.name if eta.is_identity else f"{eta.target.name}<-{eta.source.name}"

    def profile(self, x) -> ColourProfile:
        return self.base.profile(x)

    def act(self, x, sigma: Permutation):
        return self.base.act(x, sigma)

    def key(self, x) -> str:
        return self.base.key(x)

    def contains(self, x) -> bool:
        return self.base.contains(x)

    def admits(self, profile: ColourProfile) -> bool:
        return self.base.admits(profile)

    def elements(self, profile: ColourProfile):
        return self.base.elements(profile)

    def sample(self, profile: ColourProfile, rng: random.Random):
        return self.base.sample(profile, rng)

    def left_act(self, a, xs: list):
        # (...(eta(a) o_n x_n)...) o_1 x_1
        return self.base.compose_many(self.eta(a), xs)

    def right_act(self, x, i: int, b):
        return self.base.compose(x, i, self.eta(b))

    def gamma(self, a):
        return self.eta(a)

    def gamma_preimage(self, x):
        if self.eta.is_identity and self.base.arity(x) == 0:
            return x
        return None

    def decompose(self, x):
        # x = gamma_l(x; *, ..., *) when the bimodule is the operad itself
        if not self.eta.is_identity:
            return None
        profile = self.base.profile(x)
        if profile.arity == 0 or self.base.is_unit(x):
            return None
        units = [self.base.unit(c) for c in profile.inputs]
        return x, units, Permutation.identity(profile.arity)

    def dump(self, x):
        return self.base.dump(x)

    def load(self, data):
        return self.base.load(data)


def operad_as_bimodule(eta: OperadMap) -> OperadBimodule:
    return OperadBimodule(eta)


def self_bimodule(operad: Operad) -> OperadBimodule:
    return OperadBimodule(OperadMap.identity(operad))


class BimoduleIBimodule(IBimodule):
    """A bimodule M under eta: O -> M as an infinitesimal bimodule over O."""

    kind = TermKind.IBIMODULE

    def __init__(self, eta: BimoduleMap):
        self.eta = eta
        self.bimodule = eta.target
        self.operad = eta.target.left
        self.colours = eta.target.colours
        self.name = f"inf({eta.target.name})"

    def profile(self, x) -> ColourProfile:
        return self.bimodule.profile(x)

    def act(self, x, sigma: Permutation):
        return self.bimodule.act(x, sigma)

    def key(self, x) -> str:
        return self.bimodule.key(x)

    def admits(self, profile: ColourProfile) -> bool:
        return self.bimodule.admits(profile)

    def elements(self, profile: ColourProfile):
        return self.bimodule.elements(profile)

    def sample(self, profile: ColourProfile, rng: random.Random):
        return self.bimodule.sample(profile, rng)

    def left_inf(self, a, i: int, x):
        # gamma_l(a; eta(*), ..., x, ..., eta(*))
        inputs = self.operad.profile(a).inputs
        args = [self.eta(self.operad.unit(c)) for c in inputs]
        args[i - 1] = x
        return self.bimodule.left_act(a, args)

    def right_inf(self, x, i: int, b):
        return self.bimodule.right_act(x, i, b)

    def dump(self, x):
        return self.bimodule.dump(x)

    def load(self, data):
        return self.bimodule.load(data)


def bimodule_as_ibimodule(eta: BimoduleMap) -> BimoduleIBimodule:
    if eta.target.left is not eta.target.right:
        raise ConstructionError("an infinitesimal bimodule needs the same operad on both sides")
    return BimoduleIBimodule(eta)


def _orbit(sequence: SSequence, x) -> list:
    n = sequence.arity(x)
    return [sequence.act(x, sigma) for sigma in Permutation.all(n)]


class _Pool:
    """Elements found so far, deduplicated by key."""

    def __init__(self, sequence: SSequence):
        self.sequence = sequence
        self.items: dict[str, Any] = {}

    def add(self, x) -> bool:
        fresh = False
        for y in _orbit(self.sequence, x):
            key = self.sequence.key(y)
            if key not in self.items:
                self.items[key] = y
                fresh = True
        return fresh

    def by_output(self, colour: Colour, max_arity: int) -> list:
        return [x for x in self.items.values() if self.sequence.profile(x).output == colour and self.sequence.arity(x) <= max_arity]

    def grouped(self) -> dict[ColourProfile, list]:
        grouped: dict[ColourProfile, list] = {}
        for x in self.items.values():
            grouped.setdefault(self.sequence.profile(x), []).append(x)
        return grouped


def operad_closure(operad: Operad, generators: Iterable, max_arity: int, rounds: int = 16) -> dict[ColourProfile, list]:
    """Everything generated by units and `generators` under composition and
    the symmetric action, within arity `max_arity`."""
    pool = _Pool(operad)
    for colour in operad.colours:
        pool.add(operad.unit(colour))
    for x in generators:
        pool.add(x)
    for _ in range(rounds):
        grew = False
        current = list(pool.items.values())
        for x in current:
            px = operad.profile(x)
            for i, colour in enumerate(px.inputs, start=1):
                for y in pool.by_output(colour, max_arity - px.arity + 1):
                    grew |= pool.add(operad.compose(x, i, y))
        if not grew:
            break
    return pool.grouped()


def bimodule_closure(bimodule: Bimodule, generators: Iterable, max_arity: int, rounds: int = 16) -> dict[ColourProfile, list]:
    """Closure of `generators` under both actions within arity `max_arity`.

    Left actions use operations of arity at most `max_arity`, so the result
    is complete only when no arity-0 elements feed the left action.
    """
    pool = _Pool(bimodule)
    for x in generators:
        pool.add(x)
    for colour in bimodule.left.colours:
        for a in bimodule.left.elements(ColourProfile((), colour)) or []:
            pool.add(bimodule.left_act(a, []))
    right_ops = [b for p in bimodule.right.profiles(max_arity) for b in bimodule.right.elements(p) or []]
    left_ops = [a for p in bimodule.left.profiles(max_arity) if p.arity > 0 for a in bimodule.left.elements(p) or []]

    for _ in range(rounds):
        grew = False
        current = list(pool.items.values())
        for x in current:
            px = bimodule.profile(x)
            for i, colour in enumerate(px.inputs, start=1):
                for b in right_ops:
                    pb = bimodule.right.profile(b)
                    if pb.output == colour and px.arity + pb.arity - 1 <= max_arity:
                        grew |= pool.add(bimodule.right_act(x, i, b))
        for a in left_ops:
            inputs = bimodule.left.profile(a).inputs
            choices = [pool.by_output(colour, max_arity) for colour in inputs]
            for xs in itertools.product(*choices):
                if sum(bimodule.arity(x) for x in xs) <= max_arity:
                    grew |= pool.add(bimodule.left_act(a, list(xs)))
        if not grew:
            break
    return pool.grouped()


def enumerate_elements(sequence: SSequence, max_arity: int) -> list:
    if max_arity < 0:
        raise InvalidArgument("max_arity must be non-negative")
    found = []
    for profile in sequence.profiles(max_arity):
        found.extend(sequence.elements(profile) or [])
    return found
