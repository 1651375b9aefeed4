# encoding: utf-8

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import networkx as nx

from app import logger
from app.exceptions import (
    ConsistencyError,
    NotAnIsometryError,
    NotUltrametricError,
    PreconditionError,
    SpaceInputError,
)
from app.utils import format_dist, parse_dist


class Kind(Enum):
    METRIC = "Metric"
    ULTRAMETRIC = "Ultrametric"
    INVALID = "Invalid"


@dataclass(frozen=True)
class ValidationReport:
    kind: Kind
    witnesses: tuple = ()

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None


@dataclass(frozen=True)
class Space:
    """
    A finite space (X, d) with an exact, symmetric distance table.

    `points` keeps the input order, which is the order every deterministic
    choice in the package (partition blocks, witnesses, child order) uses.
    """

    points: tuple
    matrix: tuple

    @classmethod
    def from_matrix(cls, points, rows):
        points = tuple(str(p) for p in points)
        if not points:
            raise SpaceInputError("A space needs at least one point")
        duplicates = sorted({p for p in points if points.count(p) > 1})
        if duplicates:
            raise SpaceInputError(f"Duplicate point names: {duplicates}")

        n = len(points)
        if len(rows) != n:
            raise SpaceInputError(
                f"Distance table has {len(rows)} rows but there are {n} points"
            )

        matrix = []
        for i, row in enumerate(rows):
            if len(row) != n:
                raise SpaceInputError(
                    f"Row for '{points[i]}' has {len(row)} entries, expected {n}",
                    pair=(points[i], None),
                )
            parsed = []
            for j, value in enumerate(row):
                try:
                    parsed.append(parse_dist(value))
                except SpaceInputError as err:
                    raise SpaceInputError(
                        f"{err} for pair ({points[i]}, {points[j]})",
                        pair=(points[i], points[j]),
                    )
            matrix.append(tuple(parsed))

        for i in range(n):
            if matrix[i][i] != 0:
                raise SpaceInputError(
                    f"d({points[i]}, {points[i]}) must be 0",
                    pair=(points[i], points[i]),
                )
            for j in range(n):
                if i == j:
                    continue
                pair = (points[i], points[j])
                if matrix[i][j] < 0:
                    raise SpaceInputError(
                        f"Negative distance d{pair} = {format_dist(matrix[i][j])}",
                        pair=pair,
                    )
                if matrix[i][j] != matrix[j][i]:
                    raise SpaceInputError(
                        f"Asymmetric distances for pair {pair}", pair=pair
                    )
                if matrix[i][j] == 0:
                    raise SpaceInputError(
                        f"Distinct points at distance 0: {pair}", pair=pair
                    )

        return cls(points, tuple(matrix))

    @classmethod
    def from_distances(cls, points, distances):
        """Build a space from a {(x, y): value} mapping over unordered pairs."""
        points = tuple(str(p) for p in points)
        table = {}
        for (x, y), value in distances.items():
            table[(str(x), str(y))] = value
            table[(str(y), str(x))] = value
        rows = []
        for x in points:
            row = []
            for y in points:
                if x == y:
                    row.append(0)
                elif (x, y) in table:
                    row.append(table[(x, y)])
                else:
                    raise SpaceInputError(f"Missing distance for pair ({x}, {y})")
            rows.append(row)
        return cls.from_matrix(points, rows)

    def __len__(self):
        return len(self.points)

    @property
    def size(self):
        return len(self.points)

    @cached_property
    def index(self):
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def report(self):
        return validate(self)

    @property
    def kind(self):
        return self.report.kind

    @property
    def is_ultrametric(self):
        return self.kind is Kind.ULTRAMETRIC

    def require_ultrametric(self, operation):
        if not self.is_ultrametric:
            raise NotUltrametricError(
                f"{operation} needs an ultrametric space, got {self.kind.value}",
                witness=self.report.witness,
            )

    def position(self, point):
        try:
            return self.index[point]
        except KeyError:
            raise PreconditionError(f"Unknown point '{point}'")

    def d(self, x, y):
        return self.matrix[self.position(x)][self.position(y)]

    def pairs(self):
        for i, j in combinations(range(len(self.points)), 2):
            yield self.points[i], self.points[j], self.matrix[i][j]

    def sort_points(self, points):
        return tuple(sorted(points, key=self.position))

    def subspace(self, points):
        chosen = self.sort_points(set(points))
        rows = [[self.d(x, y) for y in chosen] for x in chosen]
        return Space.from_matrix(chosen, rows)

    def reordered(self, points):
        if sorted(points) != sorted(self.points):
            raise PreconditionError("Reordering must use exactly the same points")
        rows = [[self.d(x, y) for y in points] for x in points]
        return Space.from_matrix(points, rows)

    def relabel(self, mapping):
        names = [mapping[p] for p in self.points]
        return Space.from_matrix(names, self.matrix)

    def scaled(self, factor):
        factor = parse_dist(factor)
        if factor <= 0:
            raise PreconditionError(f"Scale factor must be positive, got {factor}")
        rows = [[value * factor for value in row] for row in self.matrix]
        return Space.from_matrix(self.points, rows)

    def same_distances(self, other):
        """True when both spaces have the same points and distances, in any order."""
        if set(self.points) != set(other.points):
            return False
        return all(other.d(x, y) == value for x, y, value in self.pairs())


@dataclass(frozen=True)
class LevelGraph:
    vertices: tuple
    edges: tuple
    level: Fraction
    partition: tuple = None

    @property
    def edge_count(self):
        return len(self.edges)

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def reduced(self):
        """The graph with isolated vertices dropped."""
        touched = {v for edge in self.edges for v in edge}
        vertices = tuple(v for v in self.vertices if v in touched)
        return LevelGraph(vertices, self.edges, self.level)

    def is_star(self):
        if len(self.vertices) < 2:
            return False
        star = nx.star_graph(len(self.vertices) - 1)
        return nx.is_isomorphic(self.to_networkx(), star)

    def star_center(self):
        if not self.is_star():
            return None
        degrees = self.to_networkx().degree
        return max(self.vertices, key=lambda v: degrees[v])


@dataclass(frozen=True)
class GomoryHuReport:
    spectrum_size: int
    size: int
    holds: bool


@dataclass(frozen=True)
class Isometry:
    """
    A distance preserving bijection. `images[i]` is the image of
    `source.points[i]`; isometries compare by their images only.
    """

    source: Space = field(compare=False, repr=False)
    target: Space = field(compare=False, repr=False)
    images: tuple

    @classmethod
    def from_mapping(cls, source, mapping, target=None):
        target = source if target is None else target
        if set(mapping) != set(source.points):
            raise NotAnIsometryError("Mapping must be defined on every point")
        if sorted(mapping.values()) != sorted(target.points):
            raise NotAnIsometryError("Mapping is not a bijection onto the target")

        images = tuple(mapping[p] for p in source.points)
        for x, y, value in source.pairs():
            if target.d(mapping[x], mapping[y]) != value:
                raise NotAnIsometryError(
                    f"d({x}, {y}) = {format_dist(value)} is not preserved"
                )
        return cls(source, target, images)

    @classmethod
    def identity(cls, space):
        return cls(space, space, space.points)

    @property
    def mapping(self):
        return dict(zip(self.source.points, self.images))

    def __call__(self, point):
        return self.images[self.source.position(point)]

    def fixed_points(self):
        return tuple(p for p, q in zip(self.source.points, self.images) if p == q)

    def is_identity(self):
        return len(self.fixed_points()) == len(self.source)

    def compose(self, other):
        """self after other."""
        mapping = {p: self(other(p)) for p in other.source.points}
        return Isometry.from_mapping(other.source, mapping, self.target)

    def inverse(self):
        mapping = {q: p for p, q in zip(self.source.points, self.images)}
        return Isometry.from_mapping(self.target, mapping, self.source)

    def cycles(self):
        """Non-trivial cycles of a self-isometry, each starting at its first point."""
        mapping = self.mapping
        seen = set()
        result = []
        for start in self.source.points:
            if start in seen or mapping[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            current = mapping[start]
            while current != start:
                cycle.append(current)
                seen.add(current)
                current = mapping[current]
            result.append(tuple(cycle))
        return tuple(result)

    def cycle_notation(self):
        cycles = self.cycles()
        if not cycles:
            return "id"
        return "".join("(" + " ".join(cycle) + ")" for cycle in cycles)


def validate(space):
    """
    Classify the table as Ultrametric, Metric or Invalid. Witness triples
    (x, y, z) are pairs (x, y) whose distance breaks the (strong) triangle
    inequality through z, listed lexicographically by point index.
    """
    n = len(space.points)
    m = space.matrix
    triangle = []
    strong = []
    for i, j in combinations(range(n), 2):
        for k in range(n):
            if k == i or k == j:
                continue
            if m[i][j] > m[i][k] + m[k][j]:
                triangle.append((space.points[i], space.points[j], space.points[k]))
            elif m[i][j] > max(m[i][k], m[k][j]):
                strong.append((space.points[i], space.points[j], space.points[k]))

    if triangle:
        report = ValidationReport(Kind.INVALID, tuple(triangle))
    elif strong:
        report = ValidationReport(Kind.METRIC, tuple(strong))
    else:
        report = ValidationReport(Kind.ULTRAMETRIC)

    logger.debug(
        "Validated %s-point space: %s (%s witnesses)",
        n,
        report.kind.value,
        len(report.witnesses),
    )
    return report


def spectrum(space):
    return tuple(sorted({value for row in space.matrix for value in row}))


def diameter(space, subset=None):
    points = space.points if subset is None else tuple(subset)
    if not points:
        raise PreconditionError("The diameter of an empty set is undefined")
    indices = [space.position(p) for p in points]
    return max(
        (space.matrix[i][j] for i in indices for j in indices), default=Fraction(0)
    )


def level_graph(space, r):
    r = parse_dist(r)
    if r == 0 or r not in spectrum(space):
        raise PreconditionError(
            f"Level {format_dist(r)} must be a positive value of the spectrum"
        )
    edges = tuple((x, y) for x, y, value in space.pairs() if value == r)
    return LevelGraph(space.points, edges, r)


def diametrical_partition(space, subset=None):
    points = space.points if subset is None else space.sort_points(set(subset))
    if len(points) < 2:
        raise PreconditionError("A diametrical partition needs at least two points")
    induced = space if len(points) == len(space) else space.subspace(points)
    induced.require_ultrametric("diametrical_partition")
    return _diametrical_partition(space, points)


def _diametrical_partition(space, points):
    # points are assumed ordered by index and to span an ultrametric subspace
    diam = diameter(space, points)

    complement = nx.Graph()
    complement.add_nodes_from(points)
    edges = []
    for x, y in combinations(points, 2):
        if space.d(x, y) < diam:
            complement.add_edge(x, y)
        else:
            edges.append((x, y))

    blocks = sorted(
        (space.sort_points(component) for component in nx.connected_components(complement)),
        key=lambda block: space.position(block[0]),
    )

    block_of = {p: b for b, block in enumerate(blocks) for p in block}
    cross_pairs = sum(
        1 for x, y in combinations(points, 2) if block_of[x] != block_of[y]
    )
    inner_edges = [(x, y) for x, y in edges if block_of[x] == block_of[y]]
    if len(blocks) < 2 or inner_edges or cross_pairs != len(edges):
        logger.error("Diametrical graph on %s is not complete multipartite", points)
        raise ConsistencyError(
            f"Diametrical graph on {points} is not complete multipartite"
        )

    return LevelGraph(points, tuple(edges), diam, tuple(blocks))


def gomory_hu_check(space):
    space.require_ultrametric("gomory_hu_check")
    spectrum_size = len(spectrum(space))
    report = GomoryHuReport(spectrum_size, len(space), spectrum_size <= len(space))
    logger.debug("|Sp(X)| = %s, |X| = %s", report.spectrum_size, report.size)
    return report
