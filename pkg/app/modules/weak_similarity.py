# encoding: utf-8

from dataclasses import dataclass, field

import networkx as nx

from app import logger
from app.exceptions import ConsistencyError, PreconditionError
from app.modules.balls import gamma_graph
from app.modules.repr_tree import build_tree, canonical_code, isometric
from app.modules.rigidity import is_max_rigid
from app.modules.space import Space, spectrum


@dataclass(frozen=True)
class RankSpace:
    base: Space
    ranks: dict = field(compare=False)


@dataclass(frozen=True)
class WeakSimilarity:
    similar: bool
    mapping: dict = None
    spectrum_map: tuple = None


@dataclass(frozen=True)
class RClassReport:
    weakly_similar: bool
    trees_isomorphic_unlabeled: bool
    sizes_equal: bool


def rank_space(space):
    space.require_ultrametric("rank_transform")
    positive = [value for value in spectrum(space) if value > 0]
    return RankSpace(space, {value: rank for rank, value in enumerate(positive, start=1)})


def rank_transform(space):
    ranks = rank_space(space).ranks
    rows = [[ranks.get(value, 0) for value in row] for row in space.matrix]
    return Space.from_matrix(space.points, rows)


def weakly_similar(x, y):
    """
    A weak similarity pairs a bijection of points with the unique strictly
    increasing bijection of spectra, so it exists iff the rank transforms
    are isometric.
    """
    x.require_ultrametric("weakly_similar")
    y.require_ultrametric("weakly_similar")
    spectrum_x, spectrum_y = spectrum(x), spectrum(y)
    if len(x) != len(y) or len(spectrum_x) != len(spectrum_y):
        return WeakSimilarity(False)

    check = isometric(rank_transform(x), rank_transform(y))
    if not check.isometric:
        return WeakSimilarity(False)

    mapping = check.witness.mapping
    spectrum_map = tuple(zip(spectrum_x, spectrum_y))
    f = dict(spectrum_map)
    if any(f[value] != y.d(mapping[a], mapping[b]) for a, b, value in x.pairs()):
        raise ConsistencyError("Rank isometry is not a weak similarity")
    return WeakSimilarity(True, mapping, spectrum_map)


def weaksim_preserves_R(x, y):
    if not is_max_rigid(x).in_R:
        raise PreconditionError("The first space must belong to R")
    y.require_ultrametric("weaksim_preserves_R")
    if not weakly_similar(x, y).similar:
        raise PreconditionError("The spaces are not weakly similar")

    verdict = is_max_rigid(y).in_R
    if not verdict:
        logger.error("A space weakly similar to a space in R is outside R")
    return verdict


def r_class_size_criterion(x, y):
    for space in (x, y):
        if len(space) < 2 or not is_max_rigid(space).in_R:
            raise PreconditionError("Both spaces must belong to R")

    report = RClassReport(
        weakly_similar(x, y).similar,
        canonical_code(build_tree(x), labeled=False)
        == canonical_code(build_tree(y), labeled=False),
        len(x) == len(y),
    )
    if len({report.weakly_similar, report.trees_isomorphic_unlabeled, report.sizes_equal}) != 1:
        raise ConsistencyError(f"R-class criteria disagree: {report}")
    return report


def _rooted_gamma(space):
    gamma = gamma_graph(space)
    graph = gamma.to_networkx()
    nx.set_node_attributes(graph, False, "root")
    graph.nodes[gamma.root_vertex]["root"] = True
    return graph


def ball_graphs_isomorphic(x, y):
    """Rooted isomorphism of the ball graphs, which every weak similarity induces."""
    return nx.is_isomorphic(
        _rooted_gamma(x),
        _rooted_gamma(y),
        node_match=lambda a, b: a["root"] == b["root"],
    )
