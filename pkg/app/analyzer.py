import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from app import logger
from app.exceptions import ConsistencyError
from app.modules.balls import (
    Ball,
    enumerate_balls,
    gamma_graph,
    gamma_is_tree,
    gamma_tree_matches_repr,
)
from app.modules.characterizations import (
    balls_are_stars,
    complete_star,
    diametrical_edge_bound,
    distinct_weight_spanning_star,
    edge_minimality_check,
    hamiltonian_cycle_check,
    hamiltonian_decreasing_path,
    level_star_check,
    star_determination_check,
)
from app.modules.generators import generate, random_ultrametric_space
from app.modules.oracles import (
    oracle_ham_paths,
    oracle_isometries,
    oracle_spanning_stars,
    oracle_weaksim,
)
from app.modules.repr_tree import build_tree, canonical_code, spectrum_maximal
from app.modules.rigidity import (
    TreeShapeVerdict,
    hereditary_R_check,
    is_max_rigid,
    isometry_group,
    min_fixed_points,
    nonrigid_witness,
)
from app.modules.serialization import (
    emit_space,
    gamma_to_dict,
    gamma_to_dot,
    tree_to_dict,
    tree_to_dot,
)
from app.modules.space import Isometry, Space, gomory_hu_check, spectrum
from app.modules.weak_similarity import (
    ball_graphs_isomorphic,
    r_class_size_criterion,
    weakly_similar,
)
from app.utils import format_dist

# Random spaces used by the oracle sweep stay within the brute-force range
SWEEP_MAX_POINTS = 8


@dataclass
class AnalysisReport:
    """A report section tree plus whether it records a negative finding."""

    sections: dict = field(default_factory=dict)
    finding: bool = False

    def add(self, name, value):
        self.sections[name] = plain(value)
        return self


def plain(value):
    """Turn domain values into JSON/YAML friendly data."""
    if isinstance(value, Fraction):
        return format_dist(value)
    if isinstance(value, Isometry):
        return value.cycle_notation()
    if isinstance(value, Ball):
        return sorted(value.members)
    if isinstance(value, Space):
        return {
            "points": list(value.points),
            "matrix": [[format_dist(v) for v in row] for row in value.matrix],
        }
    if isinstance(value, TreeShapeVerdict):
        return {"holds": value.holds, "violation_node": value.violation, "reason": value.reason}
    if isinstance(value, dict):
        return {str(plain(k)): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [plain(item) for item in value]
    return value


class SpaceAnalyzer:
    def __init__(self, config):
        self.config = config

    def validate(self, space):
        report = space.report
        result = AnalysisReport(finding=not space.is_ultrametric)
        result.add("kind", report.kind.value)
        result.add("witnesses", report.witnesses)
        result.add("spectrum", spectrum(space))
        if space.is_ultrametric:
            gomory_hu = gomory_hu_check(space)
            result.add(
                "gomory_hu",
                {
                    "spectrum_size": gomory_hu.spectrum_size,
                    "size": gomory_hu.size,
                    "holds": gomory_hu.holds,
                },
            )
        return result

    def tree(self, space, export="json"):
        tree = build_tree(space)
        if export == "dot":
            return tree_to_dot(tree)
        maximal = spectrum_maximal(tree)
        if maximal != (len(spectrum(space)) == len(space)):
            logger.error("Tree shape and spectrum count disagree on spectrum maximality")
            raise ConsistencyError("spectrum_maximal disagrees with |Sp(X)| = |X|")
        return AnalysisReport().add(
            "tree",
            {
                "nodes": len(tree),
                "inner_nodes": len(tree.inner_nodes()),
                "depth": tree.depth(),
                "canonical_code": canonical_code(tree),
                "spectrum_maximal": maximal,
                "structure": tree_to_dict(tree),
            },
        )

    def balls(self, space):
        tree = build_tree(space) if space.is_ultrametric else None
        balls = enumerate_balls(space, tree=tree)
        return AnalysisReport().add(
            "balls",
            {
                "count": len(balls),
                "matches_tree": tree is not None,
                "members": [ball.sorted_members(space) for ball in balls],
            },
        )

    def gamma(self, space, export="json"):
        gamma = gamma_graph(space)
        if export == "dot":
            return gamma_to_dot(space, gamma)
        stats = gamma_is_tree(space)
        section = {
            "vertices": stats.vertex_count,
            "edges": stats.edge_count,
            "is_tree": stats.is_tree,
            "ultrametric": space.is_ultrametric,
            "graph": gamma_to_dict(space, gamma),
        }
        if space.is_ultrametric:
            section["matches_tree"] = gamma_tree_matches_repr(space)
        return AnalysisReport().add("gamma", section)

    def iso(self, space, full_list=False):
        cap = self.config.iso_list_cap if full_list else 0
        group = isometry_group(space, list_cap=cap)
        minimum = min_fixed_points(space)
        section = {
            "order": group.order,
            "generators": group.generators,
            "orbits": group.orbits,
            "min_fixed_points": minimum.count,
            "min_fixed_points_witness": minimum.witness,
        }
        if full_list:
            section["elements"] = group.full_list
        return AnalysisReport().add("iso", section)

    def rigidity(self, space):
        report = is_max_rigid(space)
        section = self._rigidity_section(report)
        section["nonrigid_witness"] = nonrigid_witness(space)
        if report.in_R:
            section["hereditary"] = hereditary_R_check(
                space, self.config.hereditary_exhaustive_cap, seed=self.config.seed
            )
        return AnalysisReport().add("rigidity", section)

    def _rigidity_section(self, report):
        return {
            "size": report.size,
            "iso_order": report.iso_order,
            "min_fix": report.min_fix,
            "in_R": report.in_R,
            "criteria": [
                {"name": c.name, "holds": c.holds, "certificate": c.certificate}
                for c in report.criteria
            ],
        }

    def check_r(self, space):
        """Every certificate of membership in R, side by side."""
        tree = build_tree(space)
        gamma = gamma_is_tree(space)
        report = is_max_rigid(space)
        result = AnalysisReport(finding=not report.in_R)

        result.add("kind", space.kind.value)
        result.add("spectrum", spectrum(space))
        result.add("tree", tree_to_dict(tree))
        result.add(
            "balls",
            {"count": len(enumerate_balls(space, tree=tree)), "tree_nodes": len(tree)},
        )
        result.add(
            "gamma",
            {
                "vertices": gamma.vertex_count,
                "edges": gamma.edge_count,
                "is_tree": gamma.is_tree,
                "matches_tree": gamma_tree_matches_repr(space),
            },
        )
        group = isometry_group(space, list_cap=0)
        result.add(
            "iso",
            {"order": group.order, "generators": group.generators, "orbits": group.orbits},
        )
        result.add("rigidity", self._rigidity_section(report))

        stars = balls_are_stars(space)
        bound = diametrical_edge_bound(space)
        path = hamiltonian_decreasing_path(space)
        star = distinct_weight_spanning_star(space)
        certificates = {
            "balls_are_stars": {"holds": stars.holds, "violation": stars.violation},
            "diametrical_edge_bound": {
                "edges": bound.edge_count,
                "bound": bound.bound,
                "equality": bound.equality,
                "is_star": bound.is_star,
            },
            "edge_minimality": edge_minimality_check(space, self.config.edge_minimality_cap),
            "hamiltonian_path": self._path_section(space, path),
            "spanning_star": self._star_section(star),
            "star_determination": star_determination_check(space),
        }
        if len(space) >= 3:
            cycle = hamiltonian_cycle_check(space)
            certificates["hamiltonian_cycle"] = (
                {"points": cycle.points, "weights": cycle.weights} if cycle else None
            )
        if report.in_R:
            certificates["level_stars"] = [
                self._level_star_section(space, r) for r in spectrum(space) if r > 0
            ]
        result.add("certificates", certificates)
        return result

    def _level_star_section(self, space, r):
        level = level_star_check(space, r)
        return {
            "r": r,
            "is_star": level.is_star,
            "level": level.level,
            "rays": level.rays,
            "center": level.center,
        }

    def _path_section(self, space, path):
        if path is None:
            return None
        return {"points": path.points, "weights": path.weights}

    def _star_section(self, star):
        if star is None:
            return None
        return {
            "center": star.center,
            "rays": [{"point": p, "weight": w} for p, w in star.rays],
        }

    def ham_path(self, space):
        path = hamiltonian_decreasing_path(space)
        result = AnalysisReport(finding=path is None)
        result.add("hamiltonian_path", self._path_section(space, path))
        if len(space) >= 3:
            cycle = hamiltonian_cycle_check(space)
            result.add(
                "hamiltonian_cycle",
                {"points": cycle.points, "weights": cycle.weights} if cycle else None,
            )
        return result

    def star(self, space):
        star = distinct_weight_spanning_star(space)
        result = AnalysisReport(finding=star is None)
        result.add("spanning_star", self._star_section(star))
        result.add("star_determination", star_determination_check(space))
        return result

    def complete_star(self, rays, center):
        completion = complete_star(rays, center)
        result = AnalysisReport()
        result.add("space", completion.space)
        result.add("unique", completion.unique)
        result.add("second_completion", completion.second_completion)
        return result

    def weaksim(self, x, y):
        if not (x.is_ultrametric and y.is_ultrametric):
            # general metric spaces only have the exhaustive search
            similar = oracle_weaksim(x, y, self.config.oracle_cap("weaksim_cap"))
            result = AnalysisReport(finding=not similar)
            result.add("weakly_similar", similar)
            result.add("method", "brute_force")
            result.add("ball_graphs_isomorphic", ball_graphs_isomorphic(x, y))
            return result

        similarity = weakly_similar(x, y)
        result = AnalysisReport(finding=not similarity.similar)
        result.add("weakly_similar", similarity.similar)
        result.add("method", "rank_transform")
        result.add("mapping", similarity.mapping)
        result.add("spectrum_map", similarity.spectrum_map)
        result.add("ball_graphs_isomorphic", ball_graphs_isomorphic(x, y))
        if len(x) >= 2 and len(y) >= 2 and is_max_rigid(x).in_R and is_max_rigid(y).in_R:
            criterion = r_class_size_criterion(x, y)
            result.add(
                "r_class",
                {
                    "weakly_similar": criterion.weakly_similar,
                    "trees_isomorphic_unlabeled": criterion.trees_isomorphic_unlabeled,
                    "sizes_equal": criterion.sizes_equal,
                },
            )
        return result

    def gen(self, kind, n, seed, fmt="json"):
        space = generate(kind, n, seed)
        logger.info("Generated %s space with %s points (seed %s)", kind, n, seed)
        return emit_space(space, fmt)

    def oracle(self, space):
        """Compare the structural computations with brute force on one space."""
        cap = self.config.oracle_cap("isometries_cap")
        brute = oracle_isometries(space, cap)
        if not space.is_ultrametric:
            # no structural side to compare with, report brute force alone
            result = AnalysisReport()
            result.add("size", len(space))
            result.add("kind", space.kind.value)
            result.add("brute_force_isometries", len(brute))
            result.add("brute_force_min_fixed_points", min(len(g.fixed_points()) for g in brute))
            result.add("agreement", {})
            return result

        group = isometry_group(space, list_cap=max(len(brute), self.config.iso_list_cap))
        checks = {
            "isometries": set(group.full_list or ()) == set(brute),
            "min_fixed_points": min_fixed_points(space).count
            == min(len(g.fixed_points()) for g in brute),
        }
        if len(space) >= 2:
            path_cap = self.config.oracle_cap("ham_paths_cap")
            path = hamiltonian_decreasing_path(space)
            paths = oracle_ham_paths(space, path_cap)
            star = distinct_weight_spanning_star(space)
            checks["hamiltonian_path"] = (path is None) == (not paths) and (
                path is None or path in paths
            )
            checks["spanning_star"] = (star is None) == (
                not oracle_spanning_stars(space, path_cap)
            )

        result = AnalysisReport(finding=not all(checks.values()))
        result.add("size", len(space))
        result.add("kind", space.kind.value)
        result.add("iso_order", group.order)
        result.add("brute_force_isometries", len(brute))
        result.add("agreement", checks)
        return result

    def oracle_sweep(self, count, seed, jobs=1):
        """Oracle comparisons over seeded random ultrametric spaces."""
        rng = random.Random(seed)
        tasks = [(rng.randint(2, SWEEP_MAX_POINTS), rng.randrange(2**32)) for _ in range(count)]

        def run(task):
            size, task_seed = task
            return self.oracle(random_ultrametric_space(size, task_seed))

        with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
            reports = list(executor.map(run, tasks))

        failures = [
            {"index": i, "size": report.sections["size"], "agreement": report.sections["agreement"]}
            for i, report in enumerate(reports)
            if report.finding
        ]
        logger.info("Oracle sweep: %s spaces, %s disagreements", count, len(failures))
        result = AnalysisReport(finding=bool(failures))
        result.add("spaces", count)
        result.add("seed", seed)
        result.add("disagreements", failures)
        return result
