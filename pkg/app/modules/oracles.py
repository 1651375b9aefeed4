# encoding: utf-8

"""
Exhaustive reference computations. They enumerate permutations and are
only meant for small spaces; every oracle refuses inputs above its cap.
"""

from fractions import Fraction
from itertools import combinations, permutations

from app import logger
from app.constants import DEFAULT_ORACLE_CAPS
from app.exceptions import PreconditionError
from app.modules.characterizations import HamPath, SpanningStar, _star_input
from app.modules.space import Isometry, Space, spectrum
from app.utils import parse_dist


def _check_cap(space, cap, oracle):
    if len(space) > cap:
        raise PreconditionError(
            f"{oracle} is capped at {cap} points, the space has {len(space)}"
        )


def oracle_isometries(space, cap=DEFAULT_ORACLE_CAPS["isometries_cap"]):
    _check_cap(space, cap, "oracle_isometries")
    n = len(space)
    found = []
    for images in permutations(range(n)):
        if all(
            space.matrix[i][j] == space.matrix[images[i]][images[j]]
            for i, j in combinations(range(n), 2)
        ):
            found.append(Isometry(space, space, tuple(space.points[k] for k in images)))
    logger.debug("Brute force found %s isometries", len(found))
    return sorted(found, key=lambda g: g.images)


def oracle_min_fixed_points(space, cap=DEFAULT_ORACLE_CAPS["isometries_cap"]):
    return min(len(g.fixed_points()) for g in oracle_isometries(space, cap))


def oracle_weaksim(x, y, cap=DEFAULT_ORACLE_CAPS["weaksim_cap"]):
    """Weak similarity of arbitrary finite metric spaces by trying every bijection."""
    _check_cap(x, cap, "oracle_weaksim")
    _check_cap(y, cap, "oracle_weaksim")
    spectrum_x, spectrum_y = spectrum(x), spectrum(y)
    if len(x) != len(y) or len(spectrum_x) != len(spectrum_y):
        return False

    f = dict(zip(spectrum_x, spectrum_y))
    n = len(x)
    for images in permutations(range(n)):
        if all(
            f[x.matrix[i][j]] == y.matrix[images[i]][images[j]]
            for i, j in combinations(range(n), 2)
        ):
            return True
    return False


def oracle_ham_paths(space, cap=DEFAULT_ORACLE_CAPS["ham_paths_cap"], strictly_decreasing=True):
    _check_cap(space, cap, "oracle_ham_paths")
    paths = []
    for order in permutations(space.points):
        weights = tuple(space.d(a, b) for a, b in zip(order, order[1:]))
        path = HamPath(order, weights)
        if not strictly_decreasing or path.is_strictly_decreasing():
            paths.append(path)
    return paths


def oracle_spanning_stars(space, cap=DEFAULT_ORACLE_CAPS["ham_paths_cap"]):
    """Spanning stars whose rays carry pairwise distinct weights."""
    _check_cap(space, cap, "oracle_spanning_stars")
    stars = []
    for center in space.points:
        rays = tuple((p, space.d(center, p)) for p in space.points if p != center)
        star = SpanningStar(center, rays)
        if star.has_distinct_weights():
            stars.append(star)
    return stars


def _candidate_values(weights):
    weights = sorted(set(weights))
    values = set(weights)
    values.update(w / 2 for w in weights)
    values.update((a + b) / 2 for a, b in combinations(weights, 2))
    values.add(max(weights) * 2)
    return sorted(values)


def oracle_completions(points, known, values=None):
    """
    Every ultrametric on `points` that keeps the distances in `known`
    (a mapping of point pairs to weights), with the missing distances drawn
    from `values` (a small rational grid around the known weights by default).
    """
    points = list(points)
    known = {(a, b): parse_dist(w) for (a, b), w in known.items()}
    if len(set(points)) != len(points):
        raise PreconditionError("Points must be distinct")
    if any(w <= 0 for w in known.values()):
        raise PreconditionError("Known distances must be positive")
    if not known:
        raise PreconditionError("At least one distance must be known")
    values = (
        _candidate_values(known.values())
        if values is None
        else [Fraction(v) for v in values]
    )
    fixed = {frozenset(pair): w for pair, w in known.items()}
    free = [pair for pair in combinations(points, 2) if frozenset(pair) not in fixed]
    chosen = {}
    completions = []

    def distance(a, b):
        pair = frozenset((a, b))
        return fixed.get(pair, chosen.get(pair))

    def consistent(a, b):
        # every triangle through the new pair whose sides are all known
        for c in points:
            if c in (a, b):
                continue
            sides = [distance(a, b), distance(a, c), distance(c, b)]
            if None in sides:
                continue
            largest = max(sides)
            if sides.count(largest) < 2:
                return False
        return True

    if not all(consistent(a, b) for a, b in (tuple(pair) for pair in fixed)):
        return []

    def search(position):
        if position == len(free):
            distances = dict(known)
            distances.update({tuple(pair): w for pair, w in chosen.items()})
            completions.append(Space.from_distances(points, distances))
            return
        pair = frozenset(free[position])
        for value in values:
            chosen[pair] = value
            if consistent(*free[position]):
                search(position + 1)
            del chosen[pair]

    search(0)
    logger.debug("Found %s completions of %s known distances", len(completions), len(known))
    return completions


def oracle_star_completions(rays, center, values=None):
    rays, points = _star_input(rays, center)
    return oracle_completions(points, {(points[0], p): w for p, w in rays}, values)


def oracle_path_completions(points, weights, values=None):
    """Ultrametric completions of a weighted Hamiltonian path."""
    points = [str(p) for p in points]
    if len(weights) != len(points) - 1:
        raise PreconditionError(
            f"A path on {len(points)} points needs {len(points) - 1} weights, got {len(weights)}"
        )
    return oracle_completions(points, dict(zip(zip(points, points[1:]), weights)), values)
