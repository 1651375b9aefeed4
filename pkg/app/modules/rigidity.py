# encoding: utf-8

import random
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import factorial

import networkx as nx

from app import logger
from app.constants import DEFAULT_HEREDITARY_EXHAUSTIVE_CAP, DEFAULT_ISO_LIST_CAP
from app.exceptions import (
    ConsistencyError,
    NotABallError,
    NotAnIsometryError,
    OverlappingBallsError,
    PreconditionError,
)
from app.modules.balls import Ball, enumerate_balls
from app.modules.repr_tree import (
    build_tree,
    match_subtrees,
    sibling_classes,
    subtree_codes,
)
from app.modules.space import Isometry, spectrum


@dataclass(frozen=True)
class IsoGroup:
    order: int
    generators: tuple
    orbits: tuple
    full_list: tuple = None

    @property
    def is_rigid(self):
        return self.order == 1


@dataclass(frozen=True)
class FixedPointMinimum:
    count: int
    witness: Isometry


@dataclass(frozen=True)
class TreeShapeVerdict:
    holds: bool
    violation: int = None
    reason: str = ""


@dataclass(frozen=True)
class Criterion:
    name: str
    holds: bool
    certificate: object


@dataclass(frozen=True)
class RigidityReport:
    size: int
    iso_order: int
    min_fix: int
    in_R: bool
    criteria: tuple


class _TreeSymmetry:
    """Representing tree of a space with its subtree codes and leaf transfers."""

    def __init__(self, space):
        space.require_ultrametric("isometry computations")
        self.space = space
        self.tree = build_tree(space)
        self.codes = subtree_codes(self.tree)
        self._transfers = {}

    def classes(self, index):
        return sibling_classes(self.tree, index, self.codes)

    def transfer(self, u, v):
        if (u, v) not in self._transfers:
            self._transfers[(u, v)] = match_subtrees(
                self.tree, u, self.tree, v, self.codes, self.codes
            )
        return self._transfers[(u, v)]

    def order(self):
        order = 1
        for index in self.tree.inner_nodes():
            for members in self.classes(index):
                order *= factorial(len(members))
        return order

    def generators(self):
        generators = []
        for index in self.tree.inner_nodes():
            for members in self.classes(index):
                for u, v in zip(members, members[1:]):
                    mapping = {p: p for p in self.space.points}
                    for x, y in self.transfer(u, v).items():
                        mapping[x] = y
                        mapping[y] = x
                    generators.append(Isometry.from_mapping(self.space, mapping))
        return tuple(generators)

    def automorphisms(self, index=None):
        """Every leaf permutation induced by a self-isomorphism of the subtree."""
        index = self.tree.root if index is None else index
        node = self.tree.nodes[index]
        if node.is_leaf:
            return [{node.leaf_point: node.leaf_point}]

        per_class = []
        for members in self.classes(index):
            member_autos = [self.automorphisms(member) for member in members]
            options = []
            for arrangement in permutations(range(len(members))):
                for choice in product(*member_autos):
                    mapping = {}
                    for i, alpha in enumerate(choice):
                        transfer = self.transfer(members[i], members[arrangement[i]])
                        for x, y in alpha.items():
                            mapping[x] = transfer[y]
                    options.append(mapping)
            per_class.append(options)

        result = []
        for combination in product(*per_class):
            merged = {}
            for mapping in combination:
                merged.update(mapping)
            result.append(merged)
        return result


def _orbits(space, generators):
    graph = nx.Graph()
    graph.add_nodes_from(space.points)
    for g in generators:
        graph.add_edges_from((p, g(p)) for p in space.points)
    return tuple(
        sorted(
            (space.sort_points(component) for component in nx.connected_components(graph)),
            key=lambda orbit: space.position(orbit[0]),
        )
    )


def isometry_group(space, list_cap=DEFAULT_ISO_LIST_CAP):
    symmetry = _TreeSymmetry(space)
    order = symmetry.order()
    generators = symmetry.generators()
    orbits = _orbits(space, generators)

    full_list = None
    if order <= list_cap:
        full_list = tuple(
            sorted(
                (Isometry.from_mapping(space, m) for m in symmetry.automorphisms()),
                key=lambda g: g.images,
            )
        )
        if len(set(full_list)) != order:
            raise ConsistencyError(
                f"Enumerated {len(set(full_list))} isometries, expected {order}"
            )

    logger.debug(
        "Iso(X) has order %s with %s generators and %s orbits",
        order,
        len(generators),
        len(orbits),
    )
    return IsoGroup(order, generators, orbits, full_list)


def min_fixed_points(space):
    symmetry = _TreeSymmetry(space)
    tree = symmetry.tree
    mapping = {p: p for p in space.points}

    def derange(index):
        for members in symmetry.classes(index):
            if len(members) == 1:
                if not tree.nodes[members[0]].is_leaf:
                    derange(members[0])
                continue
            for position, member in enumerate(members):
                target = members[(position + 1) % len(members)]
                mapping.update(symmetry.transfer(member, target))

    if not tree.nodes[tree.root].is_leaf:
        derange(tree.root)

    witness = Isometry.from_mapping(space, mapping)
    orbits = _orbits(space, symmetry.generators())
    count = sum(1 for orbit in orbits if len(orbit) == 1)
    if len(witness.fixed_points()) != count:
        raise ConsistencyError(
            f"Witness fixes {len(witness.fixed_points())} points, expected {count}"
        )
    return FixedPointMinimum(count, witness)


def nonrigid_witness(space):
    if len(space) < 2:
        raise PreconditionError("A nonrigidity witness needs at least two points")
    space.require_ultrametric("nonrigid_witness")
    tree = build_tree(space)

    candidates = [
        index
        for index in tree.inner_nodes()
        if all(tree.nodes[child].is_leaf for child in tree.nodes[index].children)
    ]
    chosen = min(
        candidates,
        key=lambda index: (
            -tree.nodes[index].level,
            min(space.position(p) for p in tree.nodes[index].leaves),
        ),
    )

    leaves = space.sort_points(tree.nodes[chosen].leaves)
    mapping = {p: p for p in space.points}
    for position, point in enumerate(leaves):
        mapping[point] = leaves[(position + 1) % len(leaves)]
    return Isometry.from_mapping(space, mapping)


def glue_partial_isometries(space, parts):
    """
    Extend self-isometries of pairwise disjoint balls by the identity.
    Each part is (ball, mapping) where mapping is a dict or an Isometry.
    """
    balls = {ball.members for ball in enumerate_balls(space)}
    mapping = {p: p for p in space.points}
    covered = set()

    for ball, partial in parts:
        members = frozenset(ball.members if isinstance(ball, Ball) else ball)
        if members not in balls:
            raise NotABallError(f"{sorted(members)} is not a ball of the space")
        if members & covered:
            raise OverlappingBallsError(f"{sorted(members)} overlaps another ball")
        covered |= members

        partial = partial.mapping if isinstance(partial, Isometry) else dict(partial)
        if set(partial) != members or set(partial.values()) != members:
            raise NotAnIsometryError(
                f"Partial map is not a bijection of {sorted(members)}"
            )
        for x, y in combinations(members, 2):
            if space.d(partial[x], partial[y]) != space.d(x, y):
                raise NotAnIsometryError(
                    f"Partial map does not preserve d({x}, {y})"
                )
        mapping.update(partial)

    return Isometry.from_mapping(space, mapping)


def tree_shape_criterion(tree):
    """Strictly binary, one inner node per level except the last level."""
    index = tree.root
    while True:
        node = tree.nodes[index]
        if len(node.children) != 2:
            return TreeShapeVerdict(
                False, index, f"node has {len(node.children)} children"
            )
        inner = [child for child in node.children if not tree.nodes[child].is_leaf]
        if not inner:
            return TreeShapeVerdict(True)
        if len(inner) == 2:
            return TreeShapeVerdict(False, index, "node has two inner children")
        index = inner[0]


def is_max_rigid(space):
    if len(space) < 2:
        raise PreconditionError("Membership in R needs at least two points")
    space.require_ultrametric("is_max_rigid")

    n = len(space)
    minimum = min_fixed_points(space)
    group = isometry_group(space, list_cap=0)
    shape = tree_shape_criterion(build_tree(space))

    criteria = (
        Criterion("min_fix", minimum.count == n - 2, minimum.witness),
        Criterion("order", group.order == 2, group.order),
        Criterion("tree_shape", shape.holds, shape),
    )
    verdicts = {criterion.holds for criterion in criteria}
    if len(verdicts) != 1:
        logger.error("Rigidity criteria disagree: %s", criteria)
        raise ConsistencyError(
            "min-fix, group order and tree shape disagree on membership in R"
        )

    return RigidityReport(n, group.order, minimum.count, verdicts.pop(), criteria)


def hereditary_subsets(space, cap, seed=0):
    """
    Subsets with at least two points: all of them when |X| <= cap, otherwise
    the sets along one random deletion chain per point.
    """
    if len(space) <= cap:
        for size in range(2, len(space) + 1):
            yield from combinations(space.points, size)
        return

    rng = random.Random(seed)
    for _ in range(len(space)):
        current = list(space.points)
        while len(current) >= 2:
            yield tuple(current)
            current.pop(rng.randrange(len(current)))


def hereditary_R_check(space, max_subset_size_for_exhaustion=DEFAULT_HEREDITARY_EXHAUSTIVE_CAP, seed=0):
    if not is_max_rigid(space).in_R:
        raise PreconditionError("hereditary_R_check needs a space in R")

    checked = 0
    for subset in hereditary_subsets(space, max_subset_size_for_exhaustion, seed):
        checked += 1
        if not is_max_rigid(space.subspace(subset)).in_R:
            logger.warning("Induced subspace %s is not in R", subset)
            return False

    logger.debug("All %s induced subspaces are in R", checked)
    return True


def spectrum_maximality(space_in_R, comparison):
    if len(space_in_R) != len(comparison):
        raise PreconditionError("Both spaces need the same number of points")
    comparison.require_ultrametric("spectrum_maximality")
    if not is_max_rigid(space_in_R).in_R:
        raise PreconditionError("The first space must belong to R")

    maximal = len(spectrum(space_in_R))
    other = len(spectrum(comparison))
    logger.debug("|Sp| in R: %s, comparison: %s", maximal, other)
    return other <= maximal and maximal == len(space_in_R)
