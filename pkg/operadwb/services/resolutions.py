"""Boardman-Vogt type resolutions with exact rational parameters.

B(M) puts a level t_v in [0, 1] on every vertex off the section; BV(O) puts
a parameter on every inner edge, stored on the edge's source vertex. Level
or edge 0 means "compose now", 1 marks a free attachment along which a
composite term splits into prime components.
"""

import logging
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any

from operadwb.exceptions import InvalidArgument, InvariantBreach, ParameterError
from operadwb.models.colours import Colour, ColourProfile, TermKind
from operadwb.models.permutation import Permutation
from operadwb.models.tree import Leaf, Node, Vertex
from operadwb.services import trees
from operadwb.services.free import SectionedTerms, left_graft, operation_corolla, pearl_corolla, planar_numbered, sample_composite
from operadwb.services.operads import BimoduleMap, OperadMap, bimodule_act, compose
from operadwb.services.rewriting import Context, RewriteSystem, read_corolla
from operadwb.services.structures import Bimodule, Operad, SSequence

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)
PARAMETER_GRID = tuple(Fraction(k, 4) for k in range(5))


def _in_interval(value, vid: int, what: str) -> None:
    if not isinstance(value, Fraction) or not ZERO <= value <= ONE:
        raise ParameterError(f"{what} of vertex {vid} must be a rational in [0,1], got {value}")


def check_levels(term: Node, above_levels: bool = True) -> None:
    """Levels in [0,1] on the vertices off the section, non-decreasing away
    from the section on both sides."""
    for vertex, parent, _, above in trees.walk(term):
        if vertex.pearl or (above and not above_levels):
            continue
        _in_interval(vertex.level, vertex.vid, "level")
        if parent is None or parent.pearl:
            continue
        if above and vertex.level < parent.level:
            raise ParameterError(f"level {vertex.level} of vertex {vertex.vid} is below its target {parent.level}")
        if not above and vertex.level > parent.level:
            raise ParameterError(f"level {vertex.level} of vertex {vertex.vid} exceeds its target {parent.level}")


def check_edges(term: Node, above_only: bool = False) -> None:
    for vertex, parent, _, above in trees.walk(term):
        if above_only and (vertex.pearl or not above):
            continue
        if parent is None:
            if vertex.edge is not None:
                raise ParameterError("the root edge carries no parameter")
            continue
        _in_interval(vertex.edge, vertex.vid, "edge")


def restamp_levels(term: Node, rng: random.Random, edges_above: bool = False) -> Node:
    """Random monotone levels from the parameter grid; with `edges_above`
    the vertices above the section get random edge parameters instead."""

    def visit(node: Node, lo: Fraction, hi: Fraction, above: bool) -> Node:
        if isinstance(node, Leaf):
            return node
        if node.pearl:
            return replace(node, children=tuple(visit(ch, ZERO, ONE, True) for ch in node.children))
        if above and edges_above:
            children = tuple(visit(ch, ZERO, ONE, True) for ch in node.children)
            return replace(node, edge=rng.choice(PARAMETER_GRID), level=None, children=children)
        level = rng.choice([t for t in PARAMETER_GRID if lo <= t <= hi])
        bounds = (level, ONE) if above else (ZERO, level)
        return replace(node, level=level, children=tuple(visit(ch, *bounds, above) for ch in node.children))

    return visit(term, ZERO, ONE, False)


def restamp_edges(term: Node, rng: random.Random) -> Node:
    def visit(node: Node, root: bool) -> Node:
        if isinstance(node, Leaf):
            return node
        edge = None if root else rng.choice(PARAMETER_GRID)
        return replace(node, edge=edge, children=tuple(visit(ch, False) for ch in node.children))

    return visit(term, True)


def geometric_inputs(x: Node) -> int:
    """Leaves plus univalent vertices above the section; without a section,
    leaves plus univalent vertices."""
    sectioned = bool(trees.pearl_ids(x))
    count = len(trees.leaves(x))
    for vertex, _, _, above in trees.walk(x):
        if vertex.arity == 0 and not vertex.pearl and (above or not sectioned):
            count += 1
    return count


@dataclass(frozen=True)
class PrimeDecomposition:
    """Prime components and the 1-stamped frame joining them.

    `actors` are (component, leaf index, element) right actions and `root`
    the left-acting operation, for the bimodule resolutions; `links` are
    (parent component, leaf index, child component) for BV(O).
    """

    components: tuple[Node, ...]
    permutation: Permutation
    root: Any = None
    actors: tuple[tuple[int, int, Any], ...] = ()
    links: tuple[tuple[int, int, int], ...] = ()

    @property
    def is_prime(self) -> bool:
        return self.root is None and not self.actors and not self.links


@dataclass(frozen=True)
class FiltrationIndex:
    k: int
    l: int | None = None

    def __le__(self, other: "FiltrationIndex") -> bool:
        if self.k > other.k:
            return False
        return self.l is None or other.l is None or self.l <= other.l


def _trivial(x: Node) -> PrimeDecomposition:
    return PrimeDecomposition((x,), Permutation.identity(trees.arity(x)))


def _number_markers(tree: Node) -> tuple[Node, dict[int, int]]:
    """Renumber leaves 1..m in planar order; negative leaf indices mark cut
    points and are reported by their new index."""
    counter = iter(range(1, trees.arity(tree) + 1))
    positions: dict[int, int] = {}

    def number(leaf: Leaf) -> Leaf:
        p = next(counter)
        if leaf.index < 0:
            positions[-leaf.index - 1] = p
        return Leaf(leaf.colour, p)

    return trees.map_leaves(tree, number), positions


class SectionedPrimes:
    """Prime decomposition for the two bimodule-type resolutions."""

    def cut_above(self, vertex: Vertex) -> bool:
        raise NotImplementedError

    def actor(self, vertex: Vertex):
        raise NotImplementedError

    def root_is_cut(self, x: Node) -> bool:
        return isinstance(x, Vertex) and not x.pearl and x.level == ONE

    def decompose_primes(self, x: Node) -> PrimeDecomposition:
        root_cut = self.root_is_cut(x)
        if not root_cut and not any(above and not v.pearl and self.cut_above(v) for v, _, _, above in trees.walk(x)):
            return _trivial(x)
        rho = trees.leaf_order(x)
        planar = planar_numbered(x)
        pieces = list(planar.children) if root_cut else [planar]
        components, actors = [], []
        for c, piece in enumerate(pieces):
            found = []

            def strip(node: Node, above: bool) -> Node:
                if isinstance(node, Leaf):
                    return node
                if above and not node.pearl and self.cut_above(node):
                    found.append(self.actor(node))
                    return Leaf(node.colour, -len(found))
                return replace(node, children=tuple(strip(ch, above or node.pearl) for ch in node.children))

            stripped, positions = _number_markers(strip(piece, False))
            components.append(self.canonical(stripped))
            actors.extend((c, positions[j], actor) for j, actor in enumerate(found))
        return PrimeDecomposition(
            tuple(components), rho, root=planar.label if root_cut else None, actors=tuple(actors)
        )

    def reassemble(self, decomposition: PrimeDecomposition) -> Node:
        if decomposition.is_prime:
            return decomposition.components[0]
        parts = []
        for c, component in enumerate(decomposition.components):
            mine = sorted((a for a in decomposition.actors if a[0] == c), key=lambda a: -a[1])
            for _, leaf, actor in mine:
                component = self.right_act(component, leaf, actor)
            parts.append(component)
        term = parts[0] if decomposition.root is None else self.left_act(decomposition.root, parts)
        return self.act(term, decomposition.permutation)


class BVBimodule(SectionedPrimes, SectionedTerms, Bimodule):
    """B(M): levelled trees with section, a (left-right) bimodule."""

    kind = TermKind.BV_BIMODULE
    rules = ("unit", "gamma", "merge", "above_zero", "below_zero")

    def __init__(self, generators: Bimodule, name: str | None = None):
        self.generators = generators
        self.left = generators.left
        self.right = generators.right
        self.upper = generators.right
        self.colours = generators.colours
        self.name = name or f"B({generators.name})"

    def check(self, term: Node) -> None:
        super().check(term)
        check_levels(term)

    def match_merge(self, context: Context) -> bool:
        return self.adjacent_off_section(context) and context.vertex.level == context.parent.level

    def fire_merge(self, term: Node, context: Context) -> Node:
        return self.splice(term, context, self.merged_label(context))

    def match_above_zero(self, context: Context) -> bool:
        v, parent = context.vertex, context.parent
        return context.above and not v.pearl and v.level == ZERO and parent.pearl

    def fire_above_zero(self, term: Node, context: Context) -> Node:
        return self.absorb_right(term, context)

    def match_below_zero(self, context: Context) -> bool:
        v = context.vertex
        if context.above or v.pearl or v.level != ZERO or not v.children:
            return False
        return all(isinstance(ch, Vertex) and ch.pearl for ch in v.children)

    def fire_below_zero(self, term: Node, context: Context) -> Node:
        return self.absorb_pearls(term, context)

    def embed(self, m) -> Node:
        return self.normalize(pearl_corolla(self.generators, m))

    def contains(self, x) -> bool:
        return isinstance(x, Vertex)

    def left_act(self, a, xs: list) -> Node:
        if not xs:
            return self.gamma(a)
        return self.normalize(left_graft(operation_corolla(self.left, a, level=ONE), xs))

    def right_act(self, x: Node, i: int, b) -> Node:
        return self.normalize(trees.graft(x, i, operation_corolla(self.right, b, level=ONE)))

    def gamma(self, a) -> Node:
        return self.embed(self.generators.gamma(a))

    def gamma_preimage(self, x: Node):
        if isinstance(x, Vertex) and x.pearl and x.arity == 0:
            return self.generators.gamma_preimage(x.label)
        return None

    def sample(self, profile: ColourProfile, rng: random.Random):
        x = sample_composite(self, profile, rng)
        if x is None:
            return None
        return self.normalize(restamp_levels(x, rng))

    # cutting along level 1

    def cut_above(self, vertex: Vertex) -> bool:
        return vertex.level == ONE

    def actor(self, vertex: Vertex):
        return vertex.label


def bvb_normalize(system: BVBimodule, raw: Node, rng: random.Random | None = None) -> Node:
    return system.normalize(raw, rng)


def bvb_act(system: BVBimodule, mode, *args) -> Node:
    return bimodule_act(system, mode, *args)


def _stamp(term: Node, level: Fraction) -> Node:
    return trees.update_vertices(term, lambda v, above: v if v.pearl else replace(v, level=level))


def tau(system: BVBimodule, x: Node) -> Node:
    """F_B(M) -> B(M): every vertex off the section at level 1."""
    return system.normalize(_stamp(x, ONE))


def mu(system: BVBimodule, x: Node):
    """B(M) -> M: every level to 0, read the pearl corolla left over."""
    collapsed = system.normalize(_stamp(x, ZERO))
    if not (isinstance(collapsed, Vertex) and collapsed.pearl):
        raise InvariantBreach(f"{system.name}: levels at 0 left {system.key(collapsed)}")
    return read_corolla(collapsed, system.generators)


def mu_map(system: BVBimodule) -> BimoduleMap:
    return BimoduleMap(system, system.generators, lambda x: mu(system, x), name="mu")


class BVOperad(RewriteSystem, Operad):
    """BV(O): trees with a parameter on every inner edge."""

    kind = TermKind.BV_OPERAD
    rules = ("unit", "zero")

    def __init__(self, operad: Operad, name: str | None = None):
        self.operad = operad
        self.colours = operad.colours
        self.name = name or f"BV({operad.name})"

    def space(self, vertex: Vertex, above: bool) -> SSequence:
        return self.operad

    def check(self, term: Node) -> None:
        super().check(term)
        check_edges(term)

    def match_unit(self, context: Context) -> bool:
        v = context.vertex
        return v.arity == 1 and self.operad.is_unit(v.label)

    def fire_unit(self, term: Node, context: Context) -> Node:
        return trees.replace_vertex(term, context.vertex.vid, lambda v: join_edges(v, v.children[0]))

    def match_zero(self, context: Context) -> bool:
        return context.parent is not None and context.vertex.edge == ZERO

    def fire_zero(self, term: Node, context: Context) -> Node:
        label = self.operad.compose(context.parent.label, context.position + 1, context.vertex.label)
        return self.splice(term, context, label)

    def admits(self, profile: ColourProfile) -> bool:
        return self.operad.admits(profile)

    def unit(self, colour: Colour) -> Node:
        return Leaf(colour, 1)

    def is_unit(self, x: Node) -> bool:
        return isinstance(x, Leaf)

    def compose(self, x: Node, i: int, y: Node) -> Node:
        if isinstance(x, Leaf):
            return trees.graft(x, i, y)
        return self.normalize(trees.graft(x, i, y, edge=ONE))

    def sample(self, profile: ColourProfile, rng: random.Random):
        n = profile.arity
        if profile.is_monochrome() and n >= 2 and rng.random() < 0.6:
            colour = profile.output
            a = self.operad.sample(ColourProfile.mono(n - 1, colour), rng)
            b = self.operad.sample(ColourProfile.mono(2, colour), rng)
            if a is not None and b is not None:
                grafted = trees.graft(operation_corolla(self.operad, a), rng.randint(1, n - 1), operation_corolla(self.operad, b))
                return self.normalize(restamp_edges(grafted, rng))
        a = self.operad.sample(profile, rng)
        return None if a is None else iota(self, a)

    # cutting along edges at 1

    def decompose_primes(self, x: Node) -> PrimeDecomposition:
        if isinstance(x, Leaf) or not any(v.edge == ONE for v in trees.vertices(x)):
            return _trivial(x)
        rho = trees.leaf_order(x)
        components: list[Node | None] = []
        links: list[tuple[int, int, int]] = []

        def cut(piece: Vertex) -> int:
            index = len(components)
            components.append(None)
            pending: list[Vertex] = []

            def strip(node: Node, top: bool) -> Node:
                if isinstance(node, Leaf):
                    return node
                if not top and node.edge == ONE:
                    pending.append(node)
                    return Leaf(node.colour, -len(pending))
                return replace(node, children=tuple(strip(ch, False) for ch in node.children))

            stripped, positions = _number_markers(strip(piece, True))
            components[index] = self.canonical(replace(stripped, edge=None))
            for j, sub in enumerate(pending):
                links.append((index, positions[j], cut(sub)))
            return index

        cut(planar_numbered(x))
        return PrimeDecomposition(tuple(components), rho, links=tuple(links))

    def reassemble(self, decomposition: PrimeDecomposition) -> Node:
        if decomposition.is_prime:
            return decomposition.components[0]

        def build(index: int) -> Node:
            term = decomposition.components[index]
            mine = sorted((l for l in decomposition.links if l[0] == index), key=lambda l: -l[1])
            for _, leaf, child in mine:
                term = self.compose(term, leaf, build(child))
            return term

        return self.act(build(0), decomposition.permutation)


def join_edges(vertex: Vertex, child: Node) -> Node:
    """What is left when a bivalent vertex disappears: its child, whose
    output edge takes the larger of the two parameters."""
    if isinstance(child, Leaf):
        return child
    if vertex.edge is None:
        return replace(child, edge=None)
    return replace(child, edge=max(vertex.edge, child.edge))


def bvo_normalize(system: BVOperad, raw: Node, rng: random.Random | None = None) -> Node:
    return system.normalize(raw, rng)


def bvo_compose(system: BVOperad, x: Node, i: int, y: Node) -> Node:
    return compose(system, x, i, y)


def iota(system: BVOperad, a) -> Node:
    return system.normalize(operation_corolla(system.operad, a))


def mu_operad(system: BVOperad, x: Node):
    if isinstance(x, Leaf):
        return system.operad.unit(x.colour)
    zeroed = trees.update_vertices(x, lambda v, above: v if v.edge is None else replace(v, edge=ZERO))
    return read_corolla(system.normalize(zeroed), system.operad, unit=system.operad.unit(x.colour))


def mu_operad_map(system: BVOperad) -> OperadMap:
    return OperadMap(system, system.operad, lambda x: mu_operad(system, x), name="mu")


# filtration, shared by the three resolutions


def prime_decompose(system, x: Node) -> PrimeDecomposition:
    return system.decompose_primes(x)


def reassemble(system, decomposition: PrimeDecomposition) -> Node:
    return system.reassemble(decomposition)


def filtration_level(system, x: Node, mode: str = "k") -> FiltrationIndex:
    """The least (k) or (k, l) whose filtration term contains x: every prime
    component has at most k geometric inputs and at most l vertices."""
    if mode not in ("k", "kl"):
        raise InvalidArgument(f"filtration mode must be 'k' or 'kl', got {mode!r}")
    components = prime_decompose(system, x).components
    k = max(geometric_inputs(c) for c in components)
    if mode == "k":
        return FiltrationIndex(k)
    return FiltrationIndex(k, max(len(trees.vertices(c)) for c in components))


def in_filtration(system, x: Node, index: FiltrationIndex) -> bool:
    mode = "k" if index.l is None else "kl"
    return filtration_level(system, x, mode) <= index

