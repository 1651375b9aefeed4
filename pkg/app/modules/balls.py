# encoding: utf-8

from dataclasses import dataclass

import networkx as nx

from app import logger
from app.exceptions import ConsistencyError, PreconditionError
from app.modules.repr_tree import build_tree
from app.modules.space import Kind, spectrum
from app.utils import parse_dist


@dataclass(frozen=True)
class Ball:
    """A ball B_r(t), kept only as its set of members."""

    members: frozenset

    def __len__(self):
        return len(self.members)

    def __contains__(self, point):
        return point in self.members

    def sorted_members(self, space):
        return space.sort_points(self.members)


@dataclass(frozen=True)
class GammaGraph:
    vertices: tuple
    edges: tuple
    root_vertex: Ball

    @property
    def vertex_count(self):
        return len(self.vertices)

    @property
    def edge_count(self):
        return len(self.edges)

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class GammaTreeReport:
    is_tree: bool
    vertex_count: int
    edge_count: int


@dataclass(frozen=True)
class GammaEdgeComparison:
    edges_x: int
    edges_y: int
    verdict: bool


def ball_key(space, ball):
    return len(ball), tuple(space.position(p) for p in ball.sorted_members(space))


def ball_of(space, center, radius):
    radius = parse_dist(radius)
    if radius < 0:
        raise PreconditionError("A ball radius cannot be negative")
    return Ball(frozenset(p for p in space.points if space.d(center, p) <= radius))


def enumerate_balls(space, tree=None):
    """
    All distinct balls, smallest first. For ultrametric spaces a
    representing tree may be passed; its leaf sets must be exactly the balls.
    """
    radii = spectrum(space)
    found = {ball_of(space, center, r) for center in space.points for r in radii}
    balls = tuple(sorted(found, key=lambda ball: ball_key(space, ball)))

    if tree is not None:
        leaf_sets = {Ball(frozenset(node.leaves)) for node in tree.nodes}
        if leaf_sets != found:
            logger.error("Balls and subtree leaf sets differ")
            raise ConsistencyError("Balls do not match the subtree leaf sets")

    logger.debug("Found %s balls in %s-point space", len(balls), len(space))
    return balls


def gamma_graph(space):
    balls = enumerate_balls(space)
    edges = []
    for small in balls:
        for large in balls:
            if not small.members < large.members:
                continue
            between = any(
                small.members < ball.members < large.members for ball in balls
            )
            if not between:
                edges.append((small, large))

    gamma = GammaGraph(balls, tuple(edges), Ball(frozenset(space.points)))
    if not nx.is_connected(gamma.to_networkx()):
        raise ConsistencyError("The ball graph of a finite metric space is connected")
    return gamma


def gamma_is_tree(space):
    gamma = gamma_graph(space)
    report = GammaTreeReport(
        gamma.vertex_count == gamma.edge_count + 1,
        gamma.vertex_count,
        gamma.edge_count,
    )
    if report.is_tree != nx.is_tree(gamma.to_networkx()):
        raise ConsistencyError("Edge count and tree test disagree on the ball graph")
    logger.debug(
        "Ball graph: |V| = %s, |E| = %s, tree: %s",
        report.vertex_count,
        report.edge_count,
        report.is_tree,
    )
    return report


def gamma_tree_matches_repr(space):
    """Check that v -> leaf set of T_v maps the tree onto the rooted ball graph."""
    space.require_ultrametric("gamma_tree_matches_repr")
    tree = build_tree(space)
    gamma = gamma_graph(space)

    image = [Ball(frozenset(node.leaves)) for node in tree.nodes]
    if len(set(image)) != len(image) or set(image) != set(gamma.vertices):
        return False
    if image[tree.root] != gamma.root_vertex:
        return False

    tree_edges = {
        (image[child], image[parent])
        for parent, node in enumerate(tree.nodes)
        for child in node.children
    }
    return tree_edges == set(gamma.edges)


def compare_gamma_edges(x, y):
    y.require_ultrametric("compare_gamma_edges")
    gamma_x, gamma_y = gamma_graph(x), gamma_graph(y)
    if gamma_x.vertex_count != gamma_y.vertex_count:
        raise PreconditionError(
            f"Both spaces need the same number of balls, got "
            f"{gamma_x.vertex_count} and {gamma_y.vertex_count}"
        )
    if gamma_x.edge_count < gamma_y.edge_count:
        raise ConsistencyError(
            "A ball graph has fewer edges than the tree with the same vertex count"
        )

    verdict = (gamma_x.edge_count == gamma_y.edge_count) == (x.kind is Kind.ULTRAMETRIC)
    return GammaEdgeComparison(gamma_x.edge_count, gamma_y.edge_count, verdict)
