"""Brute-force counts of structure maps between small truncated instances.

Every count enumerates the source up to `max_arity`, assigns each source
element a target element of the matching profile, and keeps the
assignments satisfying every structure equation among those elements.
Each equation is checked as soon as all elements it mentions are assigned.
"""

import itertools
import logging
from collections.abc import Callable, Iterable, Mapping
from typing import Any

from operadwb.exceptions import InvalidArgument, OperadError, TruncationExceeded
from operadwb.models.colours import Colour, ColourProfile
from operadwb.models.permutation import Permutation
from operadwb.services.operads import colour_map, enumerate_elements
from operadwb.services.structures import Bimodule, Operad, SSequence

logger = logging.getLogger(__name__)

Assignment = list
Check = Callable[[Assignment], bool]


class _Problem:
    """Source elements indexed by key, candidate images and pending checks."""

    def __init__(self, source: SSequence, target: SSequence, items: Iterable, colours: Mapping[Colour, Colour]):
        self.source = source
        self.target = target
        self.colours = dict(colours)
        self.items: list = []
        self.index: dict[str, int] = {}
        for x in items:
            key = source.key(x)
            if key not in self.index:
                self.index[key] = len(self.items)
                self.items.append(x)
        self.candidates = [self._candidates(x) for x in self.items]
        self.checks: dict[int, list[Check]] = {}

    def _candidates(self, x) -> list:
        profile = self.source.profile(x)
        mapped = ColourProfile(tuple(self.colours[c] for c in profile.inputs), self.colours[profile.output])
        found = self.target.elements(mapped)
        if found is None:
            raise InvalidArgument(f"{self.target.name} is not enumerable in profile {mapped}")
        return found

    def position(self, x) -> int | None:
        return self.index.get(self.source.key(x))

    def fix(self, x, value) -> None:
        i = self.position(x)
        if i is not None:
            self.candidates[i] = [y for y in self.candidates[i] if self.target.equal(y, value)]

    def require(self, positions: Iterable[int | None], check: Check) -> None:
        """Attach `check` to the last of `positions`; drop it when some
        element lies outside the enumerated range."""
        positions = list(positions)
        if any(p is None for p in positions):
            return
        self.checks.setdefault(max(positions), []).append(check)

    def count(self) -> int:
        assignment: Assignment = [None] * len(self.items)

        def extend(i: int) -> int:
            if i == len(self.items):
                return 1
            total = 0
            for value in self.candidates[i]:
                assignment[i] = value
                if all(check(assignment) for check in self.checks.get(i, ())):
                    total += extend(i + 1)
            assignment[i] = None
            return total

        return extend(0)


def _holds(target: SSequence, compute: Callable[[], Any], expected: Callable[[], Any]) -> bool:
    try:
        return target.equal(expected(), compute())
    except OperadError:
        return False


def _equivariance(problem: _Problem) -> None:
    source, target = problem.source, problem.target
    for i, x in enumerate(problem.items):
        for sigma in Permutation.all(source.arity(x)):
            if sigma.is_identity():
                continue
            j = problem.position(source.act(x, sigma))
            problem.require(
                (i, j),
                lambda a, i=i, j=j, sigma=sigma: _holds(target, lambda: target.act(a[i], sigma), lambda: a[j]),
            )


def _right_actions(problem: _Problem, right: Operad, max_arity: int) -> None:
    source, target = problem.source, problem.target
    right_ops = [b for p in right.profiles(max_arity) for b in right.elements(p) or []]
    for i, x in enumerate(problem.items):
        px = source.profile(x)
        for slot, colour in enumerate(px.inputs, start=1):
            for b in right_ops:
                pb = right.profile(b)
                if pb.output != colour or px.arity + pb.arity - 1 > max_arity:
                    continue
                try:
                    result = source.right_act(x, slot, b)
                except TruncationExceeded:
                    continue
                j = problem.position(result)
                problem.require(
                    (i, j),
                    lambda a, i=i, j=j, slot=slot, b=b: _holds(target, lambda: target.right_act(a[i], slot, b), lambda: a[j]),
                )


def _left_actions(problem: _Problem, left: Operad, max_arity: int) -> None:
    source, target = problem.source, problem.target
    by_output: dict[Colour, list[int]] = {}
    for i, x in enumerate(problem.items):
        by_output.setdefault(source.profile(x).output, []).append(i)
    for p in left.profiles(max_arity):
        if p.arity == 0:
            continue
        for a in left.elements(p) or []:
            for picks in itertools.product(*(by_output.get(c, []) for c in p.inputs)):
                if sum(source.arity(problem.items[i]) for i in picks) > max_arity:
                    continue
                try:
                    result = source.left_act(a, [problem.items[i] for i in picks])
                except TruncationExceeded:
                    continue
                j = problem.position(result)
                problem.require(
                    (*picks, j),
                    lambda v, a=a, picks=picks, j=j: _holds(
                        target, lambda: target.left_act(a, [v[i] for i in picks]), lambda: v[j]
                    ),
                )


def _basepoints(problem: _Problem, left: Operad) -> None:
    for colour in sorted(left.colours):
        for a in left.elements(ColourProfile((), colour)) or []:
            problem.fix(problem.source.gamma(a), problem.target.gamma(a))


def count_sequence_maps(
    source: SSequence,
    target: SSequence,
    max_arity: int,
    colours: Mapping[Colour, Colour] | None = None,
    pointed_over: Operad | None = None,
) -> int:
    """Equivariant maps of S-sequences in arities <= `max_arity`, commuting
    with the basepoints of `pointed_over` when given."""
    if max_arity < 0:
        raise InvalidArgument("max_arity must be non-negative")
    problem = _Problem(source, target, enumerate_elements(source, max_arity), colour_map(source, target, colours))
    _equivariance(problem)
    if pointed_over is not None:
        _basepoints(problem, pointed_over)
    found = problem.count()
    logger.info("sequence maps %s -> %s up to arity %d: %d", source.name, target.name, max_arity, found)
    return found


def count_bimodule_maps(source: Bimodule, target: Bimodule, max_arity: int, elements: Iterable | None = None) -> int:
    """Bimodule maps in arities <= `max_arity`, over the operads of `source`."""
    if max_arity < 0:
        raise InvalidArgument("max_arity must be non-negative")
    items = enumerate_elements(source, max_arity) if elements is None else elements
    problem = _Problem(source, target, items, colour_map(source, target, None))
    _equivariance(problem)
    _right_actions(problem, source.right, max_arity)
    _left_actions(problem, source.left, max_arity)
    _basepoints(problem, source.left)
    found = problem.count()
    logger.info("bimodule maps %s -> %s up to arity %d: %d", source.name, target.name, max_arity, found)
    return found


def count_operad_maps(
    source: Operad,
    target: Operad,
    max_arity: int,
    colours: Mapping[Colour, Colour] | None = None,
    fixed: Iterable[tuple[Any, Any]] = (),
    elements: Iterable | None = None,
) -> int:
    """Operad maps in arities <= `max_arity`.

    `fixed` pins the images of some source elements (the structure maps of
    an operad under P ⊕ Q); `elements` replaces the enumeration of a source
    whose spaces are not listed directly.
    """
    if max_arity < 0:
        raise InvalidArgument("max_arity must be non-negative")
    items = enumerate_elements(source, max_arity) if elements is None else elements
    problem = _Problem(source, target, items, colour_map(source, target, colours))
    for colour in sorted(source.colours):
        problem.fix(source.unit(colour), target.unit(problem.colours[colour]))
    for x, value in fixed:
        problem.fix(x, value)
    _equivariance(problem)
    for i, x in enumerate(problem.items):
        px = source.profile(x)
        for slot, colour in enumerate(px.inputs, start=1):
            for j, y in enumerate(problem.items):
                py = source.profile(y)
                if py.output != colour or px.arity + py.arity - 1 > max_arity:
                    continue
                try:
                    result = source.compose(x, slot, y)
                except TruncationExceeded:
                    continue
                k = problem.position(result)
                problem.require(
                    (i, j, k),
                    lambda a, i=i, j=j, k=k, slot=slot: _holds(
                        target, lambda: target.compose(a[i], slot, a[j]), lambda: a[k]
                    ),
                )
    found = problem.count()
    logger.info("operad maps %s -> %s up to arity %d: %d", source.name, target.name, max_arity, found)
    return found
