"""Two-coloured operads under P ⊕ Q and the functors between them and
(P-Q) bimodules.

Colour c is the closed colour, o the open one. R reads off the (c,...,c;o)
operations of a two-coloured operad; L(M;P;Q) goes the other way, with
terms on two-level trees: a root in P over pearls in M and open leaves, and
closed operations in Q grafted above the pearls.
"""

import logging
import random
from collections.abc import Callable
from dataclasses import replace

from operadwb.exceptions import ConstructionError, InvalidArgument
from operadwb.models.colours import CLOSED, OPEN, Colour, ColourProfile, TermKind
from operadwb.models.elements import Coloured, Summand, Tagged
from operadwb.models.permutation import Permutation
from operadwb.models.tree import Leaf, Node, Vertex
from operadwb.services import trees
from operadwb.services.cubes import LittleCubes
from operadwb.services.empty import BVEmpty
from operadwb.services.fixtures import Commutative, FlagOperad
from operadwb.services.operads import BimoduleMap, OperadBimodule, OperadMap, compose, self_bimodule
from operadwb.services.resolutions import BVOperad
from operadwb.services.rewriting import Context, RewriteSystem
from operadwb.services.structures import Bimodule, Operad, SSequence

logger = logging.getLogger(__name__)


def only_colour(operad: SSequence) -> Colour:
    if len(operad.colours) != 1:
        raise InvalidArgument(f"{operad.name} is not single-coloured")
    return next(iter(operad.colours))


class RestrictedOperad(Operad):
    """The operations of `base` whose inputs and output all have one colour."""

    def __init__(self, base: Operad, colour: Colour):
        self.base = base
        self.colour = colour
        self.colours = frozenset({colour})
        self.name = f"{base.name}_{colour}"

    def profile(self, x) -> ColourProfile:
        return self.base.profile(x)

    def act(self, x, sigma: Permutation):
        return self.base.act(x, sigma)

    def key(self, x) -> str:
        return self.base.key(x)

    def contains(self, x) -> bool:
        return self.base.contains(x) and self.base.profile(x).is_monochrome(self.colour)

    def admits(self, profile: ColourProfile) -> bool:
        return profile.is_monochrome(self.colour) and self.base.admits(profile)

    def elements(self, profile: ColourProfile) -> list | None:
        return self.base.elements(profile) if self.admits(profile) else []

    def sample(self, profile: ColourProfile, rng: random.Random):
        return self.base.sample(profile, rng) if self.admits(profile) else None

    def unit(self, colour: Colour):
        return self.base.unit(colour)

    def is_unit(self, x) -> bool:
        return self.base.is_unit(x)

    def compose(self, x, i: int, y):
        return self.base.compose(x, i, y)

    def dump(self, x):
        return self.base.dump(x)

    def load(self, data):
        return self.base.load(data)


class TwoColourOperad:
    """An {o,c}-operad with its structure map from P ⊕ Q, given as the
    pair tau_c: Q -> O_c, tau_o: P -> O_o. Both are checked as operad maps."""

    def __init__(
        self,
        operad: Operad,
        p: Operad,
        q: Operad,
        tau_c: Callable,
        tau_o: Callable,
        name: str | None = None,
        seed: int = 0,
    ):
        self.operad = operad
        self.p = p
        self.q = q
        self.name = name or operad.name
        self.tau_c = OperadMap(
            q, restrict_colour(operad, CLOSED), tau_c, colours={only_colour(q): CLOSED}, name="tau_c", seed=seed
        )
        self.tau_o = OperadMap(
            p, restrict_colour(operad, OPEN), tau_o, colours={only_colour(p): OPEN}, name="tau_o", seed=seed
        )

    def __repr__(self) -> str:
        return f"<TwoColourOperad {self.name}>"


def restrict_colour(operad: Operad | TwoColourOperad, colour: Colour) -> RestrictedOperad:
    base = operad.operad if isinstance(operad, TwoColourOperad) else operad
    return RestrictedOperad(base, colour)


class SumOperad(Operad):
    """P ⊕ Q: P on the open colour, Q on the closed one, nothing mixed."""

    colours = frozenset({OPEN, CLOSED})

    def __init__(self, p: Operad, q: Operad):
        self.sides = {OPEN: p, CLOSED: q}
        self.native = {OPEN: only_colour(p), CLOSED: only_colour(q)}
        self.name = f"{p.name}+{q.name}"

    def profile(self, x: Summand) -> ColourProfile:
        n = self.sides[x.colour].arity(x.value)
        return ColourProfile.mono(n, x.colour)

    def act(self, x: Summand, sigma: Permutation) -> Summand:
        return Summand(x.colour, self.sides[x.colour].act(x.value, sigma))

    def key(self, x: Summand) -> str:
        return f"{x.colour}:{self.sides[x.colour].key(x.value)}"

    def contains(self, x) -> bool:
        return isinstance(x, Summand) and x.colour in self.sides and self.sides[x.colour].contains(x.value)

    def admits(self, profile: ColourProfile) -> bool:
        if not profile.is_monochrome(profile.output):
            return False
        side = self.sides[profile.output]
        return side.admits(ColourProfile.mono(profile.arity, self.native[profile.output]))

    def elements(self, profile: ColourProfile) -> list | None:
        if not self.admits(profile):
            return []
        colour = profile.output
        found = self.sides[colour].elements(ColourProfile.mono(profile.arity, self.native[colour]))
        return None if found is None else [Summand(colour, v) for v in found]

    def sample(self, profile: ColourProfile, rng: random.Random):
        if not self.admits(profile):
            return None
        colour = profile.output
        v = self.sides[colour].sample(ColourProfile.mono(profile.arity, self.native[colour]), rng)
        return None if v is None else Summand(colour, v)

    def unit(self, colour: Colour) -> Summand:
        return Summand(colour, self.sides[colour].unit(self.native[colour]))

    def compose(self, x: Summand, i: int, y: Summand) -> Summand:
        return Summand(x.colour, self.sides[x.colour].compose(x.value, i, y.value))

    def dump(self, x: Summand) -> dict:
        return {"colour": x.colour, "value": self.sides[x.colour].dump(x.value)}

    def load(self, data: dict) -> Summand:
        return Summand(data["colour"], self.sides[data["colour"]].load(data["value"]))


def direct_sum(p: Operad, q: Operad) -> TwoColourOperad:
    return TwoColourOperad(
        SumOperad(p, q), p, q, tau_c=lambda b: Summand(CLOSED, b), tau_o=lambda a: Summand(OPEN, a)
    )


class RestrictionBimodule(Bimodule):
    """R(O): the operations (c,...,c;o) as a (P-Q) bimodule through tau."""

    def __init__(self, two: TwoColourOperad):
        self.two = two
        self.base = two.operad
        self.left = two.p
        self.right = two.q
        self.colour = only_colour(two.q)
        self.colours = frozenset({self.colour})
        self.name = f"R({two.name})"

    def _native(self, n: int) -> ColourProfile:
        return ColourProfile((CLOSED,) * n, OPEN)

    def profile(self, x) -> ColourProfile:
        return ColourProfile.mono(self.base.arity(x), self.colour)

    def act(self, x, sigma: Permutation):
        return self.base.act(x, sigma)

    def key(self, x) -> str:
        return self.base.key(x)

    def contains(self, x) -> bool:
        return self.base.contains(x) and self.base.profile(x) == self._native(self.base.arity(x))

    def admits(self, profile: ColourProfile) -> bool:
        return profile.is_monochrome(self.colour) and self.base.admits(self._native(profile.arity))

    def elements(self, profile: ColourProfile):
        return self.base.elements(self._native(profile.arity)) if self.admits(profile) else []

    def sample(self, profile: ColourProfile, rng: random.Random):
        return self.base.sample(self._native(profile.arity), rng) if self.admits(profile) else None

    def left_act(self, a, xs: list):
        return self.base.compose_many(self.two.tau_o(a), xs)

    def right_act(self, x, i: int, b):
        return self.base.compose(x, i, self.two.tau_c(b))

    def gamma(self, a):
        return self.two.tau_o(a)

    def gamma_preimage(self, x):
        if self.base.arity(x) != 0:
            return None
        for a in self.left.elements(ColourProfile((), only_colour(self.left))) or []:
            if self.base.equal(self.two.tau_o(a), x):
                return a
        return None

    def dump(self, x):
        return self.base.dump(x)

    def load(self, data):
        return self.base.load(data)


def r_functor(two: TwoColourOperad) -> RestrictionBimodule:
    return RestrictionBimodule(two)


class LOperad(RewriteSystem, Operad):
    """L(M;P;Q) on two-level trees.

    Closed vertices are labelled in Q, pearls in M and open vertices in P.
    Labels are checked on arity only: M, P and Q carry their own colour.
    """

    colours = frozenset({OPEN, CLOSED})
    literal_colours = False
    kind = TermKind.L_TERM
    rules = ("unit", "q_edge", "right", "p_edge", "gamma", "push", "left")

    def __init__(self, generators: Bimodule, left: Operad, right: Operad, name: str | None = None):
        self.generators = generators
        self.left = left
        self.right = right
        self.name = name or f"L({generators.name})"

    def space(self, vertex: Vertex, above: bool) -> SSequence:
        if vertex.pearl:
            return self.generators
        return self.right if vertex.colour == CLOSED else self.left

    @staticmethod
    def _closed(v: Node | None) -> bool:
        return isinstance(v, Vertex) and not v.pearl and v.colour == CLOSED

    @staticmethod
    def _open(v: Node | None) -> bool:
        return isinstance(v, Vertex) and not v.pearl and v.colour == OPEN

    def match_unit(self, context: Context) -> bool:
        v = context.vertex
        return not v.pearl and v.arity == 1 and self.space(v, False).is_unit(v.label)

    def fire_unit(self, term: Node, context: Context) -> Node:
        return trees.replace_vertex(term, context.vertex.vid, lambda v: v.children[0])

    def match_q_edge(self, context: Context) -> bool:
        return self._closed(context.vertex) and self._closed(context.parent)

    def fire_q_edge(self, term: Node, context: Context) -> Node:
        label = self.right.compose(context.parent.label, context.position + 1, context.vertex.label)
        return self.splice(term, context, label)

    def match_right(self, context: Context) -> bool:
        return self._closed(context.vertex) and context.parent is not None and context.parent.pearl

    def fire_right(self, term: Node, context: Context) -> Node:
        label = self.generators.right_act(context.parent.label, context.position + 1, context.vertex.label)
        return self.splice(term, context, label)

    def match_p_edge(self, context: Context) -> bool:
        return self._open(context.vertex) and self._open(context.parent)

    def fire_p_edge(self, term: Node, context: Context) -> Node:
        label = self.left.compose(context.parent.label, context.position + 1, context.vertex.label)
        return self.splice(term, context, label)

    def match_left(self, context: Context) -> bool:
        v = context.vertex
        return self._open(v) and context.parent is None and all(isinstance(ch, Vertex) and ch.pearl for ch in v.children)

    def fire_left(self, term: Node, context: Context) -> Node:
        v = context.vertex
        label = self.generators.left_act(v.label, [ch.label for ch in v.children])
        children = tuple(grand for ch in v.children for grand in ch.children)
        return replace(v, pearl=True, label=label, children=children)

    def match_gamma(self, context: Context) -> bool:
        v = context.vertex
        return (
            v.pearl
            and v.arity == 0
            and self._open(context.parent)
            and self.generators.gamma_preimage(v.label) is not None
        )

    def fire_gamma(self, term: Node, context: Context) -> Node:
        a = self.generators.gamma_preimage(context.vertex.label)
        label = self.left.compose(context.parent.label, context.position + 1, a)
        return self.splice(term, context, label)

    def match_push(self, context: Context) -> bool:
        v = context.vertex
        return v.pearl and self._open(context.parent) and self.generators.decompose(v.label) is not None

    def fire_push(self, term: Node, context: Context) -> Node:
        """A pearl a(x_1,...,x_n).rho under the root becomes the open vertex a
        over pearls x_j; slot s of the composite takes child rho^-1(s)."""
        v = context.vertex
        a, xs, rho = self.generators.decompose(v.label)
        inverse = rho.inverse()
        vid = self.fresh_vid(term)
        pearls = []
        offset = 0
        for j, x in enumerate(xs, start=1):
            n = self.generators.arity(x)
            children = tuple(v.children[inverse(offset + q) - 1] for q in range(1, n + 1))
            pearls.append(Vertex(vid=vid + j, colour=OPEN, children=children, label=x, pearl=True))
            offset += n
        lowered = Vertex(vid=vid, colour=OPEN, children=tuple(pearls), label=a)
        return trees.replace_vertex(term, v.vid, lambda _: lowered)

    # operad structure

    def admits(self, profile: ColourProfile) -> bool:
        if profile.output == CLOSED:
            return profile.is_monochrome(CLOSED)
        return True

    def unit(self, colour: Colour) -> Node:
        return Leaf(colour, 1)

    def is_unit(self, x: Node) -> bool:
        return isinstance(x, Leaf)

    def compose(self, x: Node, i: int, y: Node) -> Node:
        return self.normalize(trees.graft(x, i, y))

    def tau_c(self, b) -> Node:
        profile = self.right.profile(b)
        return self.normalize(trees.corolla(0, (CLOSED,) * profile.arity, CLOSED, label=b))

    def tau_o(self, a) -> Node:
        profile = self.left.profile(a)
        return self.normalize(trees.corolla(0, (OPEN,) * profile.arity, OPEN, label=a))

    def tau_m(self, m) -> Node:
        profile = self.generators.profile(m)
        return self.normalize(trees.corolla(0, (CLOSED,) * profile.arity, OPEN, label=m, pearl=True))

    def sample(self, profile: ColourProfile, rng: random.Random):
        n = profile.arity
        if profile.output == CLOSED:
            if not profile.is_monochrome(CLOSED):
                return None
            b = self.right.sample(ColourProfile.mono(n, only_colour(self.right)), rng)
            return None if b is None else self.tau_c(b)
        closed = [i for i, c in enumerate(profile.inputs, start=1) if c == CLOSED]
        opened = [i for i, c in enumerate(profile.inputs, start=1) if c == OPEN]
        needs_pearl = bool(closed) or not opened
        m = self.generators.sample(ColourProfile.mono(len(closed), only_colour(self.generators)), rng) if needs_pearl else None
        if needs_pearl and m is None:
            return None
        if not opened:
            return self.tau_m(m)
        width = len(opened) + (1 if closed else 0)
        a = self.left.sample(ColourProfile.mono(width, only_colour(self.left)), rng)
        if a is None:
            return None
        children: list[Node] = []
        if closed:
            children.append(Vertex(vid=1, colour=OPEN, children=tuple(Leaf(CLOSED, i) for i in closed), label=m, pearl=True))
        children.extend(Leaf(OPEN, i) for i in opened)
        return self.normalize(Vertex(vid=0, colour=OPEN, children=tuple(children), label=a))


def l_normalize(system: LOperad, raw: Node, rng: random.Random | None = None) -> Node:
    return system.normalize(raw, rng)


def l_compose(system: LOperad, x: Node, i: int, y: Node) -> Node:
    return compose(system, x, i, y)


def l_operad(generators: Bimodule, left: Operad, right: Operad, name: str | None = None) -> TwoColourOperad:
    system = LOperad(generators, left, right, name=name)
    return TwoColourOperad(system, left, right, system.tau_c, system.tau_o, name=system.name)


def tau_m_map(two: TwoColourOperad) -> OperadMap:
    """P ⊕ Q -> L(M;P;Q)."""
    system = two.operad
    return OperadMap(
        SumOperad(two.p, two.q),
        system,
        lambda s: system.tau_c(s.value) if s.colour == CLOSED else system.tau_o(s.value),
        colours={OPEN: OPEN, CLOSED: CLOSED},
        name="tau_M",
    )


def _evaluate(node: Node, operad: Operad, head: Callable[[Vertex], object], order: str, unit: Callable | None = None):
    unit = unit or operad.unit
    if order == "inner":

        def inner(n: Node):
            if isinstance(n, Leaf):
                return unit(n.colour)
            return operad.compose_many(head(n), [inner(ch) for ch in n.children])

        return inner(node)
    if order != "outer":
        raise InvalidArgument(f"unknown evaluation order {order!r}")
    if isinstance(node, Leaf):
        return unit(node.colour)

    def fill(value, n: Vertex, offset: int):
        # one vertex at a time from the root up; later slots first
        for j in range(n.arity - 1, -1, -1):
            child = n.children[j]
            if isinstance(child, Vertex):
                value = operad.compose(value, offset + j + 1, head(child))
                value = fill(value, child, offset + j)
        return value

    return fill(head(node), node, 0)


def l_universal_extension(system: LOperad, target: TwoColourOperad, f: Callable, order: str = "inner", seed: int = 0) -> OperadMap:
    """The map L(M;P;Q) -> O' under P ⊕ Q extending a bimodule map M -> R(O')."""
    BimoduleMap(system.generators, r_functor(target), f, name="f", seed=seed)
    operad = target.operad

    def head(v: Vertex):
        if v.pearl:
            return f(v.label)
        return target.tau_c(v.label) if v.colour == CLOSED else target.tau_o(v.label)

    def extended(x: Node):
        value = _evaluate(x, operad, head, order)
        rho = trees.leaf_order(x)
        return value if rho.is_identity() else operad.act(value, rho)

    return OperadMap(system, operad, extended, colours={OPEN: OPEN, CLOSED: CLOSED}, name="ext", seed=seed)


def l_functor_map(source: LOperad, target: LOperad, f_p: Callable, f_m: Callable, f_q: Callable) -> OperadMap:
    """L(f): relabel every vertex, then normalize in the target."""

    def relabel(v: Vertex, above: bool) -> Vertex:
        if v.pearl:
            return replace(v, label=f_m(v.label))
        return replace(v, label=f_q(v.label) if v.colour == CLOSED else f_p(v.label))

    return OperadMap(
        source,
        target,
        lambda x: target.normalize(trees.update_vertices(x, relabel)),
        colours={OPEN: OPEN, CLOSED: CLOSED},
        name="L(f)",
    )


class CollapsedL(Operad):
    """L(O) for an operad acting on itself, with every term collapsed to one
    operation of O read in a two-coloured profile. Closed outputs need
    closed inputs."""

    colours = frozenset({OPEN, CLOSED})

    def __init__(self, operad: Operad, name: str | None = None):
        self.base = operad
        self.native = only_colour(operad)
        self.name = name or f"L({operad.name})"

    def profile(self, x: Tagged) -> ColourProfile:
        return x.profile

    def act(self, x: Tagged, sigma: Permutation) -> Tagged:
        return Tagged(x.profile.permuted(sigma), self.base.act(x.value, sigma))

    def key(self, x: Tagged) -> str:
        return f"{x.profile}|{self.base.key(x.value)}"

    def contains(self, x) -> bool:
        return isinstance(x, Tagged) and self.admits(x.profile) and self.base.contains(x.value)

    def admits(self, profile: ColourProfile) -> bool:
        if profile.output == CLOSED and not profile.is_monochrome(CLOSED):
            return False
        return self.base.admits(ColourProfile.mono(profile.arity, self.native))

    def elements(self, profile: ColourProfile) -> list | None:
        if not self.admits(profile):
            return []
        found = self.base.elements(ColourProfile.mono(profile.arity, self.native))
        return None if found is None else [Tagged(profile, v) for v in found]

    def sample(self, profile: ColourProfile, rng: random.Random):
        if not self.admits(profile):
            return None
        v = self.base.sample(ColourProfile.mono(profile.arity, self.native), rng)
        return None if v is None else Tagged(profile, v)

    def unit(self, colour: Colour) -> Tagged:
        return Tagged(ColourProfile((colour,), colour), self.base.unit(self.native))

    def compose(self, x: Tagged, i: int, y: Tagged) -> Tagged:
        return Tagged(x.profile.spliced(i, y.profile), self.base.compose(x.value, i, y.value))

    def tau_c(self, b) -> Tagged:
        return Tagged(ColourProfile.mono(self.base.arity(b), CLOSED), b)

    def tau_o(self, a) -> Tagged:
        return Tagged(ColourProfile.mono(self.base.arity(a), OPEN), a)

    def dump(self, x: Tagged) -> dict:
        return {"profile": str(x.profile), "value": self.base.dump(x.value)}

    def load(self, data: dict) -> Tagged:
        return Tagged(ColourProfile.parse(data["profile"]), self.base.load(data["value"]))


def collapse(system: LOperad, x: Node) -> Tagged:
    """Evaluate a term of L(O) for O acting on itself to one operation."""
    generators = system.generators
    if not (isinstance(generators, OperadBimodule) and generators.eta.is_identity):
        raise ConstructionError(f"{system.name} is not built on an operad acting on itself")
    operad = generators.base
    native = only_colour(operad)
    value = _evaluate(x, operad, lambda v: v.label, "inner", unit=lambda _: operad.unit(native))
    rho = trees.leaf_order(x)
    if not rho.is_identity():
        value = operad.act(value, rho)
    return Tagged(trees.profile(x), value)


def collapsed(operad: Operad, name: str | None = None) -> TwoColourOperad:
    system = CollapsedL(operad, name=name)
    return TwoColourOperad(system, operad, operad, system.tau_c, system.tau_o, name=system.name)


def make_CCd(d: int) -> TwoColourOperad:
    if d < 1:
        raise InvalidArgument(f"CC_d needs d >= 1, got {d}")
    return collapsed(LittleCubes(d), name=f"CC{d}")


def assemble_BV_empty(operad: Operad) -> TwoColourOperad:
    """L(B_∅(O); O; BV(O))."""
    return l_operad(BVEmpty(self_bimodule(operad)), operad, BVOperad(operad), name=f"BV0({operad.name})")


def flag_structure_maps(positive: bool = True) -> TwoColourOperad:
    """The Flag operad under Com ⊕ Com."""
    com = Commutative(positive=positive)
    return TwoColourOperad(
        FlagOperad(positive=positive),
        com,
        com,
        tau_c=lambda point: Coloured(ColourProfile.mono(point.arity, CLOSED), None),
        tau_o=lambda point: Coloured(ColourProfile.mono(point.arity, OPEN), False),
    )

