"""Canonical forms and codes of labelled tree terms.

Children are sorted by the code of their subtree and the vertex label is
moved along by the symmetric action, so the two sides of the relation
[T.s; a] ~ [T; a.s] get the same code. Identical subtrees (necessarily
leafless) can still be permuted freely; among those arrangements the one
with the smallest label key wins. Past TIE_ARRANGEMENT_LIMIT arrangements the
encoder raises rather than return a code that may not be canonical.
"""

import itertools
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Protocol

from operadwb.exceptions import TieLimitExceeded
from operadwb.models.permutation import Permutation
from operadwb.models.tree import Leaf, Node, Vertex

logger = logging.getLogger(__name__)

TIE_ARRANGEMENT_LIMIT = 5040


class LabelSpace(Protocol):
    def act(self, x, sigma: Permutation): ...

    def key(self, x) -> str: ...


SpaceFor = Callable[[Vertex, bool], LabelSpace | None]


@dataclass(frozen=True, order=True)
class CanonicalCode:
    text: str

    @property
    def bytes(self) -> bytes:
        return self.text.encode("utf-8")

    def __str__(self) -> str:
        return self.text


def _param(value: Fraction | None) -> str:
    if value is None:
        return "-"
    return f"{value.numerator}/{value.denominator}"


def _wrapped(text: str) -> str:
    return f"{len(text)}#{text}"


def _tie_groups(codes: list[str], order: list[int]) -> list[list[int]]:
    groups: list[list[int]] = []
    for position, j in enumerate(order):
        if position and codes[order[position - 1]] == codes[j]:
            groups[-1].append(j)
        else:
            groups.append([j])
    return groups


def _tie_count(groups: list[list[int]]) -> int:
    return math.prod(math.factorial(len(g)) for g in groups)


def _arrangements(groups: list[list[int]], exhaustive: bool):
    if not exhaustive or all(len(g) == 1 for g in groups):
        yield [j for g in groups for j in g]
        return
    options = [list(itertools.permutations(g)) if len(g) > 1 else [tuple(g)] for g in groups]
    for choice in itertools.product(*options):
        yield [j for g in choice for j in g]


def _canonical(
    node: Node, above: bool, space: SpaceFor | None, indices: bool, labels: bool
) -> tuple[Node, str]:
    if isinstance(node, Leaf):
        if indices:
            return node, f"L{node.colour}:{node.index}"
        return node, f"L{node.colour}"

    inner_above = above or node.pearl
    results = [_canonical(child, inner_above, space, indices, labels) for child in node.children]
    codes = [code for _, code in results]
    order = sorted(range(len(results)), key=lambda j: codes[j])

    label_space = space(node, above) if (space is not None and labels and node.label is not None) else None
    best: tuple[str, list[int], object] | None = None
    groups = _tie_groups(codes, order)
    count = _tie_count(groups) if label_space is not None else 1
    if count > TIE_ARRANGEMENT_LIMIT:
        raise TieLimitExceeded(count, TIE_ARRANGEMENT_LIMIT)
    if count > 1:
        logger.debug("trying %d arrangements of identical subtrees", count)
    for arrangement in _arrangements(groups, label_space is not None):
        label = node.label
        if label_space is not None:
            rho = Permutation(tuple(j + 1 for j in arrangement))
            if not rho.is_identity():
                label = label_space.act(label, rho)
            key = label_space.key(label)
        elif labels and label is not None:
            key = str(label)
        else:
            key = ""
        if best is None or key < best[0]:
            best = (key, arrangement, label)
        if label_space is None:
            break

    key, arrangement, label = best
    children = tuple(results[j][0] for j in arrangement)
    kind = "P" if node.pearl else "V"
    head = f"{kind}{node.colour}<{_wrapped(key)}>"
    if labels:
        head += f"{_param(node.level)}/{_param(node.edge)}"
    code = head + "(" + ",".join(codes[j] for j in arrangement) + ")"
    return replace(node, children=children, label=label), code


def canonical_form(tree: Node, space: SpaceFor | None = None) -> Node:
    return _canonical(tree, False, space, True, True)[0]


def canonical_encoding(tree: Node, space: SpaceFor | None = None) -> CanonicalCode:
    return CanonicalCode(_canonical(tree, False, space, True, True)[1])


def canonicalize(tree: Node, space: SpaceFor | None = None) -> tuple[Node, CanonicalCode]:
    form, code = _canonical(tree, False, space, True, True)
    return form, CanonicalCode(code)


def shape_code(tree: Node) -> str:
    """Code of the bare tree: colours and pearls, no labels or leaf indices."""
    return _canonical(tree, False, None, False, False)[1]


def shape_form(tree: Node) -> Node:
    return _canonical(tree, False, None, False, False)[0]
