"""Free objects as normal tree terms.

F_B(M) is the free (P-Q) bimodule on a sequence M: trees with a section of
pearls labelled in M, a root vertex below the section labelled in P and
corollas above it labelled in Q. The free operad F(X) uses plain trees.
The k-free variants only compose two adjacent vertices when the result
stays inside arity k.
"""

import logging
import random
from dataclasses import replace

from operadwb.config import settings
from operadwb.exceptions import ConstructionError, InvalidArgument, TruncationExceeded
from operadwb.models.colours import Colour, ColourProfile, TermKind
from operadwb.models.tree import Leaf, Node, Vertex
from operadwb.services import trees
from operadwb.services.operads import BimoduleMap, bimodule_act, bimodule_closure, operad_closure
from operadwb.services.rewriting import Context, RewriteSystem
from operadwb.services.structures import Bimodule, Operad, SSequence

logger = logging.getLogger(__name__)


def pearl_corolla(sequence: SSequence, m, vid: int = 0) -> Vertex:
    profile = sequence.profile(m)
    return trees.corolla(vid, profile.inputs, profile.output, label=m, pearl=True)


def operation_corolla(operad: SSequence, a, vid: int = 0, **params) -> Vertex:
    profile = operad.profile(a)
    vertex = trees.corolla(vid, profile.inputs, profile.output, label=a)
    return replace(vertex, **params) if params else vertex


def left_graft(root: Vertex, xs: list[Node]) -> Vertex:
    """Put the terms xs under `root`, numbering their leaves block by block."""
    children = []
    offset = 0
    next_vid = root.vid + 1
    for x in xs:
        n = trees.arity(x)
        x, next_vid = trees.renumber(x, next_vid)
        children.append(trees.reindex(x, lambda j, shift=offset: j + shift))
        offset += n
    return replace(root, children=tuple(children))


def planar_numbered(x: Node) -> Node:
    """A subterm with its leaves renumbered 1..n in planar order."""
    counter = iter(range(1, trees.arity(x) + 1))
    return trees.map_leaves(x, lambda leaf: Leaf(leaf.colour, next(counter)))


class SectionedTerms(RewriteSystem):
    """Rules shared by the bimodule-type constructions.

    Pearls carry labels in M, vertices above the section labels in the
    right operad, vertices below it labels in the left operad.
    """

    generators: SSequence
    left: Operad
    right: Operad
    upper: Operad  # labels above the section

    def space(self, vertex: Vertex, above: bool) -> SSequence:
        if vertex.pearl:
            return self.generators
        return self.operad_at(above)

    def operad_at(self, above: bool) -> Operad:
        return self.upper if above else self.left

    def check(self, term: Node) -> None:
        if not trees.validate_section(term):
            raise InvalidArgument("every path from a leaf or univalent vertex must meet exactly one pearl")
        super().check(term)

    # unit: a unit-labelled vertex off the section disappears

    def match_unit(self, context: Context) -> bool:
        v = context.vertex
        return not v.pearl and v.arity == 1 and self.operad_at(context.above).is_unit(v.label)

    def fire_unit(self, term: Node, context: Context) -> Node:
        return trees.replace_vertex(term, context.vertex.vid, lambda v: v.children[0])

    # gamma: a univalent pearl labelled gamma(a) is absorbed by the vertex below it

    def match_gamma(self, context: Context) -> bool:
        v, parent = context.vertex, context.parent
        return (
            v.pearl
            and v.arity == 0
            and parent is not None
            and not parent.pearl
            and self.generators.gamma_preimage(v.label) is not None
        )

    def fire_gamma(self, term: Node, context: Context) -> Node:
        a = self.generators.gamma_preimage(context.vertex.label)
        parent = context.parent
        label = self.left.compose(parent.label, context.position + 1, a)
        term = self.splice(term, context, label)
        if parent.arity == 1:
            term = trees.replace_vertex(
                term, parent.vid, lambda p: replace(p, pearl=True, label=self.generators.gamma(p.label), level=None)
            )
        return term

    # merge: two adjacent vertices on the same side of the section

    def adjacent_off_section(self, context: Context) -> bool:
        parent = context.parent
        return parent is not None and not parent.pearl and not context.vertex.pearl

    def merged_label(self, context: Context):
        operad = self.operad_at(context.above)
        return operad.compose(context.parent.label, context.position + 1, context.vertex.label)

    # left: a vertex below the section over pearls only becomes a pearl

    def absorb_pearls(self, term: Node, context: Context) -> Node:
        v = context.vertex
        label = self.generators.left_act(v.label, [child.label for child in v.children])
        children = tuple(grand for child in v.children for grand in child.children)
        pearl = replace(v, pearl=True, label=label, children=children, level=None)
        return trees.replace_vertex(term, v.vid, lambda _: pearl)

    def absorb_right(self, term: Node, context: Context) -> Node:
        label = self.generators.right_act(context.parent.label, context.position + 1, context.vertex.label)
        return self.splice(term, context, label)


class FreeBimodule(SectionedTerms, Bimodule):
    """F_B(M) over (left, right); `k` truncates to T_k F_B(M)."""

    rules = ("unit", "merge", "gamma")

    def __init__(self, generators: SSequence, left: Operad, right: Operad, k: int | None = None, name: str | None = None):
        if k is not None and k < 1:
            raise InvalidArgument(f"Truncation needs k >= 1, got {k}")
        self.generators = generators
        self.left = left
        self.right = right
        self.upper = right
        self.k = k
        self.colours = generators.colours | left.colours | right.colours
        self.name = name or (f"F_B({generators.name})" if k is None else f"T{k}F_B({generators.name})")
        self._elements: dict[int, dict[ColourProfile, list]] = {}

    def match_merge(self, context: Context) -> bool:
        return self.adjacent_off_section(context)

    def fire_merge(self, term: Node, context: Context) -> Node:
        return self.splice(term, context, self.merged_label(context))

    def _bounded(self, arity: int) -> None:
        if self.k is not None and arity > self.k:
            raise TruncationExceeded(arity, self.k)

    def embed(self, m) -> Node:
        return self.normalize(pearl_corolla(self.generators, m))

    def contains(self, x) -> bool:
        return isinstance(x, Vertex) and (self.k is None or trees.arity(x) <= self.k)

    def admits(self, profile: ColourProfile) -> bool:
        if self.k is not None and profile.arity > self.k:
            return False
        return True

    def left_act(self, a, xs: list) -> Node:
        self._bounded(sum(trees.arity(x) for x in xs))
        if not xs:
            return self.gamma(a)
        return self.normalize(left_graft(operation_corolla(self.left, a), xs))

    def right_act(self, x: Node, i: int, b) -> Node:
        self._bounded(trees.arity(x) + self.right.arity(b) - 1)
        return self.normalize(trees.graft(x, i, operation_corolla(self.right, b)))

    def gamma(self, a) -> Node:
        return self.embed(self.generators.gamma(a))

    def gamma_preimage(self, x: Node):
        if isinstance(x, Vertex) and x.pearl and x.arity == 0:
            return self.generators.gamma_preimage(x.label)
        return None

    def decompose(self, x: Node):
        if not isinstance(x, Vertex) or x.pearl:
            return None
        xs = [self.canonical(planar_numbered(child)) for child in x.children]
        return x.label, xs, trees.leaf_order(x)

    def _bound(self) -> int:
        return self.k if self.k is not None else settings.MAX_ARITY

    def elements(self, profile: ColourProfile) -> list | None:
        bound = self._bound()
        if profile.arity > bound:
            return [] if self.k is not None else None
        if bound not in self._elements:
            seeds = [self.embed(m) for p in self.generators.profiles(bound) for m in self.generators.elements(p) or []]
            self._elements[bound] = bimodule_closure(self, seeds, bound)
            logger.debug("%s: %d elements up to arity %d", self.name, sum(map(len, self._elements[bound].values())), bound)
        return list(self._elements[bound].get(profile, []))

    def sample(self, profile: ColourProfile, rng: random.Random):
        if self.k is not None:
            found = self.elements(profile)
            return rng.choice(found) if found else None
        return sample_composite(self, profile, rng)


def sample_composite(structure, profile: ColourProfile, rng: random.Random):
    """An embedded generator, sometimes acted on once from either side."""
    M, P, Q = structure.generators, structure.left, structure.right
    n = profile.arity
    colour = profile.output
    choice = rng.random()
    if profile.is_monochrome() and n >= 2 and choice < 0.35:
        x = M.sample(ColourProfile.mono(n - 1, colour), rng)
        b = Q.sample(ColourProfile.mono(2, colour), rng)
        if x is not None and b is not None:
            return structure.right_act(structure.embed(x), rng.randint(1, n - 1), b)
    if profile.is_monochrome() and n >= 2 and choice < 0.7:
        n1 = rng.randint(1, n - 1)
        a = P.sample(ColourProfile.mono(2, colour), rng)
        xs = [M.sample(ColourProfile.mono(n1, colour), rng), M.sample(ColourProfile.mono(n - n1, colour), rng)]
        if a is not None and None not in xs:
            return structure.left_act(a, [structure.embed(x) for x in xs])
    m = M.sample(profile, rng)
    return None if m is None else structure.embed(m)


def fb_embed(free: FreeBimodule, m) -> Node:
    return free.embed(m)


def fb_normalize(free: FreeBimodule, raw: Node, rng: random.Random | None = None) -> Node:
    return free.normalize(raw, rng)


def fb_act(free: FreeBimodule, mode, *args) -> Node:
    return bimodule_act(free, mode, *args)


def _evaluate_inner(free: FreeBimodule, target: Bimodule, f, node: Node, above: bool):
    if isinstance(node, Leaf):
        return free.right.unit(node.colour)
    values = [_evaluate_inner(free, target, f, child, above or node.pearl) for child in node.children]
    if node.pearl:
        return target.right_act_many(f(node.label), values)
    if above:
        return free.right.compose_many(node.label, values)
    return target.left_act(node.label, values)


def _evaluate_outer(free: FreeBimodule, target: Bimodule, f, node: Node):
    """Left actions on the bare pearl images first, right actions last."""

    def below(n: Node):
        if n.pearl:
            return f(n.label), list(n.children)
        parts = [below(child) for child in n.children]
        value = target.left_act(n.label, [v for v, _ in parts])
        return value, [c for _, cs in parts for c in cs]

    def upper(n: Node):
        if isinstance(n, Leaf):
            return free.right.unit(n.colour)
        return free.right.compose_many(n.label, [upper(child) for child in n.children])

    value, tops = below(node)
    return target.right_act_many(value, [upper(t) for t in tops])


def evaluate(free: FreeBimodule, target: Bimodule, f, x: Node, order: str = "inner"):
    if order == "inner":
        value = _evaluate_inner(free, target, f, x, False)
    elif order == "outer":
        value = _evaluate_outer(free, target, f, x)
    else:
        raise InvalidArgument(f"unknown evaluation order {order!r}")
    rho = trees.leaf_order(x)
    return value if rho.is_identity() else target.act(value, rho)


def fb_universal_extension(free: FreeBimodule, target: Bimodule, f, order: str = "inner", seed: int = 0) -> BimoduleMap:
    """The bimodule map F_B(M) -> target extending a sequence map f: M -> target."""
    for colour in sorted(free.left.colours):
        for a in free.left.elements(ColourProfile((), colour)) or []:
            if not target.equal(f(free.generators.gamma(a)), target.gamma(a)):
                raise ConstructionError("the generating map does not commute with the basepoint maps")
    return BimoduleMap(free, target, lambda x: evaluate(free, target, f, x, order), name=f"ext[{target.name}]", seed=seed)


class FreeOperad(RewriteSystem, Operad):
    """F(X) on a pointed sequence: trees labelled in X, units deleted."""

    rules = ("unit",)

    def __init__(self, generators: SSequence, name: str | None = None):
        self.generators = generators
        self.colours = generators.colours
        self.name = name or f"F({generators.name})"
        self._elements: dict[int, dict[ColourProfile, list]] = {}

    def space(self, vertex: Vertex, above: bool) -> SSequence:
        return self.generators

    def match_unit(self, context: Context) -> bool:
        v = context.vertex
        return v.arity == 1 and self.generators.is_unit(v.label)

    def fire_unit(self, term: Node, context: Context) -> Node:
        return trees.replace_vertex(term, context.vertex.vid, lambda v: v.children[0])

    def embed(self, g) -> Node:
        return self.normalize(operation_corolla(self.generators, g))

    def unit(self, colour: Colour) -> Node:
        return Leaf(colour, 1)

    def compose(self, x: Node, i: int, y: Node) -> Node:
        return self.normalize(trees.graft(x, i, y))

    def elements(self, profile: ColourProfile) -> list:
        bound = max(profile.arity, settings.MAX_ARITY)
        if bound not in self._elements:
            seeds = [self.embed(g) for p in self.generators.profiles(bound) for g in self.generators.elements(p) or []]
            self._elements[bound] = operad_closure(self, seeds, bound)
        return list(self._elements[bound].get(profile, []))


def free_operad(generators: SSequence) -> FreeOperad:
    return FreeOperad(generators)


class KFreeOperad(RewriteSystem, Operad):
    """F^k(X) for an operad truncated at k: adjacent vertices are composed
    in X whenever the composite has arity at most k."""

    rules = ("unit", "merge")

    def __init__(self, truncated: Operad, k: int):
        self.generators = truncated
        self.k = k
        self.colours = truncated.colours
        self.name = f"F^{k}({truncated.name})"

    def space(self, vertex: Vertex, above: bool) -> SSequence:
        return self.generators

    def match_unit(self, context: Context) -> bool:
        v = context.vertex
        return v.arity == 1 and self.generators.is_unit(v.label)

    def fire_unit(self, term: Node, context: Context) -> Node:
        return trees.replace_vertex(term, context.vertex.vid, lambda v: v.children[0])

    def match_merge(self, context: Context) -> bool:
        parent = context.parent
        return parent is not None and parent.arity + context.vertex.arity - 1 <= self.k

    def fire_merge(self, term: Node, context: Context) -> Node:
        label = self.generators.compose(context.parent.label, context.position + 1, context.vertex.label)
        return self.splice(term, context, label)

    def embed(self, x) -> Node:
        return self.normalize(operation_corolla(self.generators, x))

    def unit(self, colour: Colour) -> Node:
        return Leaf(colour, 1)

    def compose(self, x: Node, i: int, y: Node) -> Node:
        return self.normalize(trees.graft(x, i, y))


class KFreeBimodule(SectionedTerms, Bimodule):
    """F_B^k(M) for a bimodule M truncated at k."""

    rules = ("unit", "merge", "gamma", "right", "left")

    def __init__(self, truncated: Bimodule, k: int):
        self.generators = truncated
        self.left = truncated.left
        self.right = truncated.right
        self.upper = truncated.right
        self.k = k
        self.colours = truncated.colours
        self.name = f"F_B^{k}({truncated.name})"

    def match_merge(self, context: Context) -> bool:
        return self.adjacent_off_section(context) and context.parent.arity + context.vertex.arity - 1 <= self.k

    def fire_merge(self, term: Node, context: Context) -> Node:
        return self.splice(term, context, self.merged_label(context))

    def match_right(self, context: Context) -> bool:
        parent = context.parent
        return (
            context.above
            and parent is not None
            and parent.pearl
            and parent.arity + context.vertex.arity - 1 <= self.k
        )

    def fire_right(self, term: Node, context: Context) -> Node:
        return self.absorb_right(term, context)

    def match_left(self, context: Context) -> bool:
        v = context.vertex
        if v.pearl or context.above or not v.children:
            return False
        return all(child.pearl for child in v.children) and sum(c.arity for c in v.children) <= self.k

    def fire_left(self, term: Node, context: Context) -> Node:
        return self.absorb_pearls(term, context)

    def embed(self, m) -> Node:
        return self.normalize(pearl_corolla(self.generators, m))

    def left_act(self, a, xs: list) -> Node:
        if not xs:
            return self.embed(self.generators.gamma(a))
        return self.normalize(left_graft(operation_corolla(self.left, a), xs))

    def right_act(self, x: Node, i: int, b) -> Node:
        return self.normalize(trees.graft(x, i, operation_corolla(self.right, b)))

    def gamma(self, a) -> Node:
        return self.embed(self.generators.gamma(a))


def k_free(kind: TermKind | str, truncated: SSequence, k: int):
    """The k-free object on a k-truncated operad or bimodule."""
    if k < 1:
        raise InvalidArgument(f"k-free objects need k >= 1, got {k}")
    kind = TermKind(kind)
    if kind is TermKind.OPERAD:
        return KFreeOperad(truncated, k)
    if kind is TermKind.BIMODULE:
        return KFreeBimodule(truncated, k)
    raise InvalidArgument(f"no k-free construction for {kind.value}")


def first_components(structure, k: int) -> dict[str, Node]:
    """Embedded elements of arity <= k, keyed by the element they come from.

    The k-free object restricted to arities <= k should give back its input.
    """
    source = structure.generators
    found = {}
    for profile in source.profiles(k):
        for x in source.elements(profile) or []:
            found[source.key(x)] = structure.embed(x)
    return found
