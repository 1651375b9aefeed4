# encoding: utf-8

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import networkx as nx

from app import logger
from app.constants import DEFAULT_EDGE_MINIMALITY_CAP
from app.exceptions import ConsistencyError, PreconditionError
from app.modules.balls import enumerate_balls
from app.modules.repr_tree import build_tree
from app.modules.rigidity import is_max_rigid, tree_shape_criterion
from app.modules.space import (
    Space,
    _diametrical_partition,
    diameter,
    level_graph,
    spectrum,
)
from app.utils import format_dist, parse_dist


@dataclass(frozen=True)
class WeightedEdge:
    u: str
    v: str
    weight: Fraction


@dataclass(frozen=True)
class SpanningStar:
    center: str
    rays: tuple

    @property
    def weights(self):
        return tuple(weight for _, weight in self.rays)

    def has_distinct_weights(self):
        return len(set(self.weights)) == len(self.weights)


@dataclass(frozen=True)
class HamPath:
    points: tuple
    weights: tuple

    def is_strictly_decreasing(self):
        return all(a > b for a, b in zip(self.weights, self.weights[1:]))


@dataclass(frozen=True)
class HamCycle:
    points: tuple
    weights: tuple


@dataclass(frozen=True)
class StarBallsReport:
    holds: bool
    violation: object = None


@dataclass(frozen=True)
class LevelStarReport:
    is_star: bool
    level: int
    rays: int
    n: int
    center: str = None


@dataclass(frozen=True)
class EdgeBoundReport:
    edge_count: int
    bound: int
    equality: bool
    is_star: bool


@dataclass(frozen=True)
class StarCompletion:
    space: Space
    unique: bool
    second_completion: Space = None


def weighted_edges(space):
    return tuple(WeightedEdge(x, y, value) for x, y, value in space.pairs())


def complete_weighted_graph(space):
    graph = nx.Graph()
    graph.add_nodes_from(space.points)
    for edge in weighted_edges(space):
        graph.add_edge(edge.u, edge.v, weight=edge.weight)
    return graph


def _require_pair_space(space, operation, minimum=2):
    if len(space) < minimum:
        raise PreconditionError(f"{operation} needs at least {minimum} points")
    space.require_ultrametric(operation)


def _is_star_partition(graph):
    return len(graph.partition) == 2 and min(len(b) for b in graph.partition) == 1


def balls_are_stars(space):
    _require_pair_space(space, "balls_are_stars")
    for ball in enumerate_balls(space):
        if len(ball) < 2:
            continue
        graph = _diametrical_partition(space, ball.sorted_members(space))
        if not _is_star_partition(graph):
            logger.debug("Diametrical graph of %s is not a star", sorted(ball.members))
            return StarBallsReport(False, ball)
    return StarBallsReport(True)


def level_star_check(space_in_R, r):
    r = parse_dist(r)
    if r <= 0 or r not in spectrum(space_in_R):
        raise PreconditionError(f"{format_dist(r)} is not a positive spectrum value")
    if not is_max_rigid(space_in_R).in_R:
        raise PreconditionError("level_star_check needs a space in R")

    tree = build_tree(space_in_R)
    labeled = [node for node in tree.nodes if node.label == r]
    if len(labeled) != 1:
        raise ConsistencyError(f"{len(labeled)} nodes carry the label {format_dist(r)}")

    p = labeled[0].level
    n = len(space_in_R) - 1
    reduced = level_graph(space_in_R, r).reduced()
    is_star = reduced.is_star() and reduced.edge_count == n - p
    return LevelStarReport(is_star, p, n - p, n, reduced.star_center())


def diametrical_edge_bound(space):
    _require_pair_space(space, "diametrical_edge_bound")
    graph = _diametrical_partition(space, space.points)
    report = EdgeBoundReport(
        graph.edge_count,
        len(space) - 1,
        graph.edge_count == len(space) - 1,
        graph.is_star(),
    )
    if report.edge_count < report.bound or report.equality != report.is_star:
        raise ConsistencyError(f"Diametrical edge bound violated: {report}")
    return report


def edge_minimality_check(space, exhaustive_cap=DEFAULT_EDGE_MINIMALITY_CAP):
    _require_pair_space(space, "edge_minimality_check")
    in_R = is_max_rigid(space).in_R

    if len(space) <= exhaustive_cap:
        checked = 0
        minimal = True
        for size in range(2, len(space) + 1):
            for subset in combinations(space.points, size):
                checked += 1
                diam = diameter(space, subset)
                edges = sum(1 for x, y in combinations(subset, 2) if space.d(x, y) == diam)
                if edges != size - 1:
                    minimal = False
        logger.debug("Checked diametrical edge counts of %s subsets", checked)
        if minimal != in_R:
            raise ConsistencyError("Exhaustive edge minimality disagrees with R")

    return in_R


def hamiltonian_decreasing_path(space):
    _require_pair_space(space, "hamiltonian_decreasing_path")
    tree = build_tree(space)
    if not tree_shape_criterion(tree).holds:
        return None

    points = []
    index = tree.root
    while True:
        children = [tree.nodes[c] for c in tree.nodes[index].children]
        inner = [c for c in tree.nodes[index].children if not tree.nodes[c].is_leaf]
        if not inner:
            points.extend(space.sort_points(c.leaf_point for c in children))
            break
        points.extend(c.leaf_point for c in children if c.is_leaf)
        index = inner[0]

    weights = tuple(space.d(a, b) for a, b in zip(points, points[1:]))
    path = HamPath(tuple(points), weights)
    if sorted(path.points) != sorted(space.points) or not path.is_strictly_decreasing():
        raise ConsistencyError(f"Extracted path {path.points} is not decreasing")
    return path


def distinct_weight_spanning_star(space):
    path = hamiltonian_decreasing_path(space)
    if path is None:
        return None

    center = path.points[-1]
    rays = tuple((point, space.d(center, point)) for point in reversed(path.points[:-1]))
    star = SpanningStar(center, rays)
    if not star.has_distinct_weights():
        raise ConsistencyError(f"Star at {center} has repeated weights")
    return star


def hamiltonian_cycle_check(space):
    _require_pair_space(space, "hamiltonian_cycle_check", minimum=3)
    path = hamiltonian_decreasing_path(space)
    if path is None:
        return None

    closing = space.d(path.points[-1], path.points[0])
    weights = path.weights + (closing,)
    if closing != weights[0] or closing != max(weights):
        raise ConsistencyError("Closing edge does not repeat the maximum weight")
    return HamCycle(path.points, weights)


def cycle_weights(space, cycle):
    return tuple(
        space.d(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
    )


def cycle_max_twice(space, cycle):
    space.require_ultrametric("cycle_max_twice")
    cycle = tuple(cycle)
    if len(cycle) < 3:
        raise PreconditionError("A cycle needs at least three points")
    if len(set(cycle)) != len(cycle):
        raise PreconditionError(f"Cycle {cycle} repeats a vertex")

    weights = cycle_weights(space, cycle)
    return weights.count(max(weights)) >= 2


def _star_input(rays, center):
    rays = tuple((str(point), parse_dist(weight)) for point, weight in rays)
    points = [str(center)] + [point for point, _ in rays]
    if len(set(points)) != len(points):
        raise PreconditionError("Star points must be distinct")
    if any(weight <= 0 for _, weight in rays):
        raise PreconditionError("Star weights must be positive")
    return rays, points


def complete_star(rays, center):
    rays, points = _star_input(rays, center)
    center = points[0]
    distances = {}
    for point, weight in rays:
        distances[(center, point)] = weight
    for (a, wa), (b, wb) in combinations(rays, 2):
        distances[(a, b)] = max(wa, wb)
    completion = Space.from_distances(points, distances)
    completion.require_ultrametric("complete_star")

    weights = [weight for _, weight in rays]
    unique = len(set(weights)) == len(weights)
    second = None
    if not unique:
        a, b, tie = next(
            (a, b, wa) for (a, wa), (b, wb) in combinations(rays, 2) if wa == wb
        )
        lowered = dict(distances)
        lowered[(a, b)] = tie / 2
        second = Space.from_distances(points, lowered)
        if not second.is_ultrametric:
            raise ConsistencyError("Lowered completion is not ultrametric")

    return StarCompletion(completion, unique, second)


def star_determination_check(space):
    _require_pair_space(space, "star_determination_check")
    star = distinct_weight_spanning_star(space)
    if star is None:
        return False
    completion = complete_star(star.rays, star.center)
    return completion.unique and completion.space.same_distances(space)
