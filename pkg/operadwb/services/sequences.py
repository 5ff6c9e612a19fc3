import logging
import random
from collections.abc import Callable, Iterable, Mapping
from typing import Any

from operadwb.config import settings
from operadwb.exceptions import InvalidArgument, ProfileArityMismatch, TruncationExceeded
from operadwb.models.colours import ColourProfile
from operadwb.models.elements import Generator
from operadwb.models.permutation import Permutation
from operadwb.schemas.report import LawReport
from operadwb.services.structures import Bimodule, IBimodule, Operad, SSequence

logger = logging.getLogger(__name__)


def permute_element(sequence: SSequence, x, sigma: Permutation):
    arity = sequence.arity(x)
    if len(sigma) != arity:
        raise ProfileArityMismatch(arity, len(sigma))
    if sigma.is_identity():
        return x
    return sequence.act(x, sigma)


class FiniteSequence(SSequence):
    """An S-sequence given by explicit element tables."""

    def __init__(
        self,
        name: str,
        table: Mapping[ColourProfile, Iterable],
        act: Callable[[Any, Permutation], Any],
        profile: Callable[[Any], ColourProfile],
        key: Callable[[Any], str] = repr,
    ):
        self.name = name
        self.table = {p: list(xs) for p, xs in table.items()}
        self.colours = frozenset(c for p in self.table for c in (*p.inputs, p.output))
        self._act = act
        self._profile = profile
        self._key = key

    def profile(self, x) -> ColourProfile:
        return self._profile(x)

    def act(self, x, sigma: Permutation):
        return self._act(x, sigma)

    def key(self, x) -> str:
        return self._key(x)

    def admits(self, profile: ColourProfile) -> bool:
        return bool(self.table.get(profile))

    def elements(self, profile: ColourProfile) -> list:
        return list(self.table.get(profile, []))


class GeneratedSequence(SSequence):
    """The free S-sequence on named generators, pointed by units unless
    `pointed` is off.

    With a `base` operad, every element a of a finite base(;s) also gives a
    basepoint gamma(a) in arity 0.
    """

    def __init__(
        self,
        generators: Mapping[str, ColourProfile],
        base: Operad | None = None,
        name: str = "X",
        pointed: bool = True,
    ):
        self.name = name
        self.pointed = pointed
        self.generators = dict(generators)
        self.base = base
        colours = {c for p in self.generators.values() for c in (*p.inputs, p.output)}
        if base is not None:
            colours |= base.colours
        self.colours = frozenset(colours)

    def profile(self, x: Generator) -> ColourProfile:
        return x.profile

    def act(self, x: Generator, sigma: Permutation) -> Generator:
        return Generator(x.name, x.perm * sigma, x.profile.permuted(sigma))

    def key(self, x: Generator) -> str:
        return f"{x.name}{x.perm}{x.profile}"

    def unit(self, colour) -> Generator:
        return Generator("*", Permutation.identity(1), ColourProfile((colour,), colour))

    def is_unit(self, x: Generator) -> bool:
        return x.is_unit

    def elements(self, profile: ColourProfile) -> list[Generator]:
        found = []
        if self.pointed and profile.arity == 1 and profile.inputs[0] == profile.output and profile.output in self.colours:
            found.append(self.unit(profile.output))
        for name, generated in self.generators.items():
            if generated.arity != profile.arity or generated.output != profile.output:
                continue
            for sigma in Permutation.all(generated.arity):
                if generated.permuted(sigma) == profile:
                    found.append(Generator(name, sigma, profile))
        if profile.arity == 0 and self.base is not None:
            found.extend(self.gamma(a) for a in self.base.elements(profile) or [])
        return found

    def admits(self, profile: ColourProfile) -> bool:
        return bool(self.elements(profile))

    def gamma(self, a) -> Generator:
        return Generator(f"γ:{self.base.key(a)}", Permutation(()), self.base.profile(a))

    def gamma_preimage(self, x: Generator):
        if self.base is None or not x.name.startswith("γ:"):
            return None
        for a in self.base.elements(x.profile) or []:
            if f"γ:{self.base.key(a)}" == x.name:
                return a
        return None

    def dump(self, x: Generator) -> dict:
        return {"name": x.name, "perm": list(x.perm.images), "profile": str(x.profile)}

    def load(self, data: dict) -> Generator:
        return Generator(data["name"], Permutation(tuple(data["perm"])), ColourProfile.parse(data["profile"]))


class _Truncation:
    """Delegation shared by the truncated wrappers."""

    base: SSequence
    k: int

    def _init_truncation(self, base: SSequence, k: int):
        self.base = base
        self.k = k
        self.name = f"T{k}({base.name})"
        self.colours = base.colours
        self.kind = base.kind

    def _bounded(self, arity: int) -> None:
        if arity > self.k:
            raise TruncationExceeded(arity, self.k)

    def profile(self, x) -> ColourProfile:
        return self.base.profile(x)

    def act(self, x, sigma: Permutation):
        return self.base.act(x, sigma)

    def key(self, x) -> str:
        return self.base.key(x)

    def contains(self, x) -> bool:
        return self.base.arity(x) <= self.k and self.base.contains(x)

    def admits(self, profile: ColourProfile) -> bool:
        return profile.arity <= self.k and self.base.admits(profile)

    def elements(self, profile: ColourProfile) -> list | None:
        if profile.arity > self.k:
            return []
        return self.base.elements(profile)

    def sample(self, profile: ColourProfile, rng: random.Random):
        if profile.arity > self.k:
            return None
        return self.base.sample(profile, rng)

    def gamma(self, a):
        return self.base.gamma(a)

    def gamma_preimage(self, x):
        return self.base.gamma_preimage(x)

    def dump(self, x):
        return self.base.dump(x)

    def load(self, data):
        return self.base.load(data)


class TruncatedSequence(_Truncation, SSequence):
    def __init__(self, base: SSequence, k: int):
        self._init_truncation(base, k)


class TruncatedOperad(_Truncation, Operad):
    def __init__(self, base: Operad, k: int):
        self._init_truncation(base, k)

    def unit(self, colour):
        return self.base.unit(colour)

    def is_unit(self, x) -> bool:
        return self.base.is_unit(x)

    def compose(self, x, i: int, y):
        self._bounded(self.base.arity(x) + self.base.arity(y) - 1)
        return self.base.compose(x, i, y)


class TruncatedBimodule(_Truncation, Bimodule):
    """Left actions need m_1 + ... + m_n <= k, right actions n + m - 1 <= k."""

    def __init__(self, base: Bimodule, k: int):
        self._init_truncation(base, k)
        self.left = base.left
        self.right = base.right

    def left_act(self, a, xs: list):
        self._bounded(sum(self.base.arity(x) for x in xs))
        return self.base.left_act(a, xs)

    def right_act(self, x, i: int, b):
        self._bounded(self.base.arity(x) + self.right.arity(b) - 1)
        return self.base.right_act(x, i, b)

    def decompose(self, x):
        return self.base.decompose(x)


class TruncatedIBimodule(_Truncation, IBimodule):
    def __init__(self, base: IBimodule, k: int):
        self._init_truncation(base, k)
        self.operad = base.operad

    def left_inf(self, a, i: int, x):
        self._bounded(self.operad.arity(a) + self.base.arity(x) - 1)
        return self.base.left_inf(a, i, x)

    def right_inf(self, x, i: int, b):
        self._bounded(self.base.arity(x) + self.operad.arity(b) - 1)
        return self.base.right_inf(x, i, b)


def truncate(sequence: SSequence, k: int) -> SSequence:
    if k < 1:
        raise InvalidArgument(f"Truncation needs k >= 1, got {k}")
    if isinstance(sequence, _Truncation):
        return truncate(sequence.base, min(k, sequence.k))
    if isinstance(sequence, Operad):
        return TruncatedOperad(sequence, k)
    if isinstance(sequence, Bimodule):
        return TruncatedBimodule(sequence, k)
    if isinstance(sequence, IBimodule):
        return TruncatedIBimodule(sequence, k)
    return TruncatedSequence(sequence, k)


def check_action_axiom(
    sequence: SSequence,
    budget: int | None = None,
    seed: int | None = None,
    max_arity: int | None = None,
) -> LawReport:
    budget = settings.BUDGET if budget is None else budget
    seed = settings.SEED if seed is None else seed
    max_arity = settings.MAX_ARITY if max_arity is None else max_arity
    rng = random.Random(seed)
    report = LawReport(instance=sequence.name, family="action", seed=seed, budget=budget)

    profiles = sequence.profiles(max_arity)
    if not profiles:
        report.skip("no admissible profiles")
        return report

    for _ in range(budget):
        profile = rng.choice(profiles)
        x = sequence.sample(profile, rng)
        if x is None:
            report.skip(f"{profile}: not sampleable")
            continue
        n = profile.arity
        sigma = Permutation.random(n, rng)
        tau = Permutation.random(n, rng)
        report.checked += 1
        moved = sequence.act(x, sigma)
        if sequence.profile(moved) != profile.permuted(sigma):
            report.record("profile transport", profile, [sequence.key(x), str(sigma)])
        if not sequence.equal(sequence.act(moved, tau), sequence.act(x, sigma * tau)):
            report.record("action composition", profile, [sequence.key(x), str(sigma), str(tau)])
        if not sequence.equal(sequence.act(x, Permutation.identity(n)), x):
            report.record("identity action", profile, [sequence.key(x)])

    logger.info("action check on %s: %d samples, %s", sequence.name, report.checked, report.summary())
    return report
