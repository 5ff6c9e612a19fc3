"""B_∅(M): levels below the section, edge parameters above it.

B_∅(M) is a bimodule over P on the left and BV(Q) on the right. Over an
operad acting on itself it receives B(O) through the edge
reparametrization, and both B(O) and B_∅(O) retract onto O.
"""

import logging
import random
from dataclasses import replace
from fractions import Fraction

from operadwb.exceptions import InvariantBreach, ParameterError, UnsupportedInput
from operadwb.models.colours import ColourProfile, TermKind
from operadwb.models.tree import Leaf, Node, Vertex
from operadwb.services import trees
from operadwb.services.free import SectionedTerms, left_graft, operation_corolla, pearl_corolla, planar_numbered, sample_composite
from operadwb.services.operads import OperadBimodule, bimodule_act
from operadwb.services.resolutions import (
    ONE,
    ZERO,
    BVBimodule,
    BVOperad,
    SectionedPrimes,
    check_edges,
    check_levels,
    join_edges,
    restamp_levels,
)
from operadwb.services.rewriting import Context, read_corolla
from operadwb.services.structures import Bimodule, Operad

logger = logging.getLogger(__name__)


class BVEmpty(SectionedPrimes, SectionedTerms, Bimodule):
    """B_∅(M) as a (P-BV(Q)) bimodule."""

    kind = TermKind.BV_EMPTY
    rules = ("unit", "gamma", "below_merge", "below_zero", "edge_zero")

    def __init__(self, generators: Bimodule, name: str | None = None):
        self.generators = generators
        self.left = generators.left
        self.upper = generators.right
        self.right = BVOperad(generators.right)
        self.colours = generators.colours
        self.name = name or f"B0({generators.name})"

    def check(self, term: Node) -> None:
        super().check(term)
        check_levels(term, above_levels=False)
        check_edges(term, above_only=True)

    def fire_unit(self, term: Node, context: Context) -> Node:
        if not context.above:
            return super().fire_unit(term, context)
        return trees.replace_vertex(term, context.vertex.vid, lambda v: join_edges(v, v.children[0]))

    def match_below_merge(self, context: Context) -> bool:
        return (
            not context.above
            and self.adjacent_off_section(context)
            and context.vertex.level == context.parent.level
        )

    def fire_below_merge(self, term: Node, context: Context) -> Node:
        return self.splice(term, context, self.merged_label(context))

    def match_below_zero(self, context: Context) -> bool:
        v = context.vertex
        if context.above or v.pearl or v.level != ZERO or not v.children:
            return False
        return all(isinstance(ch, Vertex) and ch.pearl for ch in v.children)

    def fire_below_zero(self, term: Node, context: Context) -> Node:
        return self.absorb_pearls(term, context)

    def match_edge_zero(self, context: Context) -> bool:
        return context.above and not context.vertex.pearl and context.vertex.edge == ZERO

    def fire_edge_zero(self, term: Node, context: Context) -> Node:
        if context.parent.pearl:
            return self.absorb_right(term, context)
        return self.splice(term, context, self.merged_label(context))

    def embed(self, m) -> Node:
        return self.normalize(pearl_corolla(self.generators, m))

    def contains(self, x) -> bool:
        return isinstance(x, Vertex)

    def left_act(self, a, xs: list) -> Node:
        if not xs:
            return self.gamma(a)
        return self.normalize(left_graft(operation_corolla(self.left, a, level=ONE), xs))

    def right_act(self, x: Node, i: int, y: Node) -> Node:
        """Graft a BV(Q) term, its root edge at 1; a bare edge acts as the unit."""
        if isinstance(y, Leaf):
            return x
        return self.normalize(trees.graft(x, i, y, edge=ONE))

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
        return self.normalize(restamp_levels(x, rng, edges_above=True))

    def cut_above(self, vertex: Vertex) -> bool:
        return vertex.edge == ONE

    def actor(self, vertex: Vertex) -> Node:
        return self.right.canonical(planar_numbered(replace(vertex, edge=None)))


def bve_normalize(system: BVEmpty, raw: Node, rng: random.Random | None = None) -> Node:
    return system.normalize(raw, rng)


def bve_act(system: BVEmpty, mode, *args) -> Node:
    return bimodule_act(system, mode, *args)


def edge_reparametrization(t_target: Fraction, t_source: Fraction) -> Fraction:
    """(t_t - t_s) / (t_t - 1) below 1, and 1 when the target sits at 1."""
    if t_target < ONE:
        return (t_target - t_source) / (t_target - ONE)
    return ONE


def identify_attached(system: BVEmpty, x: Node) -> Node:
    """Forget the parameters of every subterm hanging above an edge at 1."""

    def flatten(node: Node, attached: bool) -> Node:
        if isinstance(node, Leaf):
            return node
        edge = ZERO if attached else node.edge
        inside = attached or (not node.pearl and node.edge == ONE)
        return replace(node, edge=edge, children=tuple(flatten(ch, inside) for ch in node.children))

    return system.normalize(flatten(x, False))


def reparametrize_i(
    source: BVBimodule,
    x: Node,
    strict: bool = False,
    target: BVEmpty | None = None,
    quotient: bool = False,
) -> Node:
    """B(M) -> B_∅(M): keep the levels below the section and turn each
    level above it into a parameter on its output edge. Pearls count as
    level 0."""
    target = target or BVEmpty(source.generators)

    def convert(vertex: Vertex, parent: Vertex) -> Fraction:
        t_target = ZERO if parent.pearl else parent.level
        if strict and t_target == ONE:
            raise ParameterError(f"vertex {vertex.vid} sits on a target at level 1")
        return edge_reparametrization(t_target, vertex.level)

    originals = {v.vid: v for v in trees.vertices(x)}
    parents = {v.vid: p for v, p, _, _ in trees.walk(x)}

    def rebuild(node: Node, above: bool) -> Node:
        if isinstance(node, Leaf):
            return node
        children = tuple(rebuild(ch, above or node.pearl) for ch in node.children)
        if not above or node.pearl:
            return replace(node, children=children)
        edge = convert(originals[node.vid], parents[node.vid])
        return replace(node, children=children, level=None, edge=edge)

    result = target.normalize(rebuild(x, False))
    return identify_attached(target, result) if quotient else result


def _self_operad(system) -> Operad:
    generators = system.generators
    if not (isinstance(generators, OperadBimodule) and generators.eta.is_identity):
        raise UnsupportedInput(f"{system.name} is not built on an operad acting on itself")
    return generators.base


def _unit_tower(system, x) -> Node:
    operad = _self_operad(system)
    profile = operad.profile(x)
    if profile.arity == 0:
        return system.embed(x)
    pearls = tuple(
        Vertex(vid=j, colour=c, children=(Leaf(c, j),), label=operad.unit(c), pearl=True)
        for j, c in enumerate(profile.inputs, start=1)
    )
    root = Vertex(vid=0, colour=profile.output, children=pearls, label=x, level=ONE)
    return system.normalize(root)


def _read_through_root(system, term: Node):
    """Send every pearl of arity >= 1 below the section as a level-1 vertex
    over unit pearls, merge everything below, and read the root."""
    operad = _self_operad(system)

    def lower(vertex: Vertex, above: bool) -> Vertex:
        if not vertex.pearl:
            return vertex if above else replace(vertex, level=ONE)
        if vertex.arity == 0:
            return vertex
        units = tuple(
            Vertex(vid=0, colour=ch.colour, children=(ch,), label=operad.unit(ch.colour), pearl=True)
            for ch in vertex.children
        )
        return replace(vertex, pearl=False, level=ONE, children=units)

    flat = system.normalize(trees.renumber(trees.update_vertices(term, lower))[0])
    if isinstance(flat, Vertex) and flat.pearl:
        return read_corolla(flat, operad)
    if not all(isinstance(ch, Vertex) and ch.pearl and ch.arity == 1 for ch in flat.children):
        raise InvariantBreach(f"{system.name}: {system.key(flat)} did not reduce to one operation")
    return read_corolla(flat, operad)


def iota_prime(system: BVBimodule, x) -> Node:
    """O -> B(O): x at level 1 over bivalent unit pearls."""
    return _unit_tower(system, x)


def mu_prime(system: BVBimodule, x: Node):
    above_zero = trees.update_vertices(x, lambda v, above: replace(v, level=ZERO) if above and not v.pearl else v)
    return _read_through_root(system, system.normalize(above_zero))


def iota_dblprime(system: BVEmpty, x) -> Node:
    return _unit_tower(system, x)


def mu_dblprime(system: BVEmpty, x: Node):
    above_zero = trees.update_vertices(x, lambda v, above: replace(v, edge=ZERO) if above and not v.pearl else v)
    return _read_through_root(system, system.normalize(above_zero))


def retract_prime(system: BVBimodule, x: Node) -> Node:
    return iota_prime(system, mu_prime(system, x))


def retract_dblprime(system: BVEmpty, x: Node) -> Node:
    return iota_dblprime(system, mu_dblprime(system, x))
