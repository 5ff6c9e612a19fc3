from collections import defaultdict

from operadwb.models.tree import AutGroup, Leaf, Node, Vertex
from operadwb.services.canonical import shape_code

Address = tuple[int, ...]


def _isomorphism(source: Node, target: Node, at: Address, to: Address) -> dict[Address, Address]:
    """Address map of an isomorphism between two subtrees of equal shape."""
    mapping = {at: to}
    if isinstance(source, Leaf):
        return mapping
    left = sorted(range(source.arity), key=lambda j: shape_code(source.children[j]))
    right = sorted(range(target.arity), key=lambda j: shape_code(target.children[j]))
    for a, b in zip(left, right):
        mapping.update(_isomorphism(source.children[a], target.children[b], at + (a,), to + (b,)))
    return mapping


def _cycle(node: Vertex, address: Address, positions: list[int]) -> dict[Address, Address]:
    mapping: dict[Address, Address] = {}
    for a, b in zip(positions, positions[1:] + positions[:1]):
        mapping.update(_isomorphism(node.children[a], node.children[b], address + (a,), address + (b,)))
    return mapping


def _group(node: Node, address: Address) -> AutGroup:
    if isinstance(node, Leaf):
        return AutGroup()
    classes: dict[str, list[int]] = defaultdict(list)
    for j, child in enumerate(node.children):
        classes[shape_code(child)].append(j)

    blocks = []
    generators: list[dict] = []
    for code in sorted(classes):
        positions = classes[code]
        first = _group(node.children[positions[0]], address + (positions[0],))
        blocks.append((first, len(positions)))
        generators.extend(first.generators)
        if len(positions) >= 2:
            generators.append(_cycle(node, address, positions[:2]))
        if len(positions) >= 3:
            generators.append(_cycle(node, address, positions))
    return AutGroup(tuple(blocks), tuple(generators))


def automorphism_group(tree: Node) -> AutGroup:
    """Aut(T) as (prod Aut(T_i)^n_i) x| (prod Sigma_n_i) over the classes of
    isomorphic subtrees at the root, recursively.

    Automorphisms preserve colours and pearls and fix the root; each
    generator maps the addresses it moves and fixes every other one.
    """
    return _group(tree, ())
