# encoding: utf-8

import random

import networkx as nx

from app import logger
from app.constants import (
    DEFAULT_BRANCHING,
    RANDOM_METRIC_MAX_ATTEMPTS,
    RANDOM_METRIC_MAX_DISTANCE,
    VALID_GENERATOR_KINDS,
)
from app.exceptions import PreconditionError
from app.modules.repr_tree import random_tree, space_from_tree
from app.modules.space import Kind, Space


def _label_pool(rng, size):
    return rng.sample(range(1, 4 * size + 2), size)


def chain_space(n, seed):
    if n < 2:
        raise PreconditionError("Spaces in R need at least two points")
    rng = random.Random(seed)
    pool = _label_pool(rng, rng.randint(n - 1, 2 * n))
    return space_from_tree(random_tree(n, pool, rng.randrange(2**32), chain=True))


def random_ultrametric_space(n, seed, branching=DEFAULT_BRANCHING):
    if n < 1:
        raise PreconditionError("A space needs at least one point")
    rng = random.Random(seed)
    pool = _label_pool(rng, rng.randint(1, max(1, n)))
    tree = random_tree(n, pool, rng.randrange(2**32), branching=branching)
    return space_from_tree(tree)


def random_metric_space(n, seed, max_distance=RANDOM_METRIC_MAX_DISTANCE, max_attempts=RANDOM_METRIC_MAX_ATTEMPTS):
    """
    Sample a symmetric integer table and take its shortest-path closure,
    rejecting closures that happen to be ultrametric.
    """
    if n < 3:
        raise PreconditionError("Non-ultrametric metric spaces need at least 3 points")
    rng = random.Random(seed)
    points = [f"x{i}" for i in range(1, n + 1)]

    for attempt in range(1, max_attempts + 1):
        graph = nx.complete_graph(points)
        for u, v in graph.edges:
            graph[u][v]["weight"] = rng.randint(1, max_distance)
        closure = nx.floyd_warshall(graph)
        rows = [[closure[x][y] for y in points] for x in points]
        space = Space.from_matrix(points, rows)
        if space.kind is Kind.METRIC:
            logger.debug("Accepted random metric table after %s attempts", attempt)
            return space

    raise PreconditionError(
        f"No non-ultrametric metric on {n} points found in {max_attempts} attempts"
    )


def generate(kind, n, seed):
    if kind not in VALID_GENERATOR_KINDS:
        raise PreconditionError(
            f"Unknown generator '{kind}', supported values are {VALID_GENERATOR_KINDS}"
        )
    if kind == "chain_R":
        return chain_space(n, seed)
    if kind == "random_tree":
        return random_ultrametric_space(n, seed)
    return random_metric_space(n, seed)


def random_cycle(space, length, rng):
    return tuple(rng.sample(space.points, length))
