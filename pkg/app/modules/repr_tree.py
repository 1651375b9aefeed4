# encoding: utf-8

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from app import logger
from app.constants import DEFAULT_BRANCHING
from app.exceptions import ConsistencyError, PreconditionError, TreeInvariantError
from app.modules.space import Isometry, Space, _diametrical_partition
from app.utils import format_dist, parse_dist


@dataclass(frozen=True)
class TreeNode:
    label: Fraction
    children: tuple
    leaf_point: str = None
    level: int = 0
    leaves: tuple = ()

    @property
    def is_leaf(self):
        return self.leaf_point is not None


@dataclass(frozen=True)
class ReprTree:
    """
    Labeled rooted tree of a finite ultrametric space. Nodes are stored in
    preorder; `children` keep display order (smallest point first) and
    `leaves` lists the points below a node in preorder.
    """

    nodes: tuple
    root: int = 0

    def __len__(self):
        return len(self.nodes)

    @property
    def points(self):
        return self.nodes[self.root].leaves

    @cached_property
    def parents(self):
        parents = [None] * len(self.nodes)
        for index, node in enumerate(self.nodes):
            for child in node.children:
                parents[child] = index
        return tuple(parents)

    @cached_property
    def leaf_index(self):
        return {
            node.leaf_point: index
            for index, node in enumerate(self.nodes)
            if node.is_leaf
        }

    def inner_nodes(self):
        return tuple(i for i, node in enumerate(self.nodes) if not node.is_leaf)

    def depth(self):
        return max(node.level for node in self.nodes)

    def leaf_node(self, point):
        try:
            return self.leaf_index[point]
        except KeyError:
            raise PreconditionError(f"'{point}' is not a leaf of the tree")


def build_tree(space):
    space.require_ultrametric("build_tree")
    nodes = []

    def grow(points, level):
        index = len(nodes)
        nodes.append(None)
        if len(points) == 1:
            nodes[index] = TreeNode(Fraction(0), (), points[0], level, points)
            return index

        graph = _diametrical_partition(space, points)
        children = tuple(grow(block, level + 1) for block in graph.partition)
        leaves = tuple(p for child in children for p in nodes[child].leaves)
        nodes[index] = TreeNode(graph.level, children, None, level, leaves)
        return index

    grow(space.points, 0)
    tree = ReprTree(tuple(nodes))
    logger.debug(
        "Built representing tree with %s nodes (%s inner) for %s points",
        len(tree),
        len(tree.inner_nodes()),
        len(space),
    )
    return tree


def validate_tree(tree):
    if not tree.nodes:
        raise TreeInvariantError("A tree needs at least one node")

    root = tree.nodes[tree.root]
    if root.level != 0:
        raise TreeInvariantError("root level must be 0", node=tree.root)

    seen = {tree.root}
    stack = [tree.root]
    points = []
    while stack:
        index = stack.pop()
        node = tree.nodes[index]
        if node.is_leaf:
            if node.children or node.label != 0:
                raise TreeInvariantError(
                    "a leaf must have label 0 and no children", node=index
                )
            points.append(node.leaf_point)
            if node.leaves != (node.leaf_point,):
                raise TreeInvariantError("leaf set mismatch", node=index)
            continue

        if node.label <= 0:
            raise TreeInvariantError("inner nodes need a positive label", node=index)
        if len(node.children) < 2:
            raise TreeInvariantError(
                "inner nodes need at least two children", node=index
            )
        leaves = []
        for child in node.children:
            if child in seen or not 0 <= child < len(tree.nodes):
                raise TreeInvariantError(f"child {child} is not a fresh node", node=index)
            seen.add(child)
            child_node = tree.nodes[child]
            if child_node.label >= node.label:
                raise TreeInvariantError(
                    f"child {child} label {format_dist(child_node.label)} does not "
                    f"decrease from {format_dist(node.label)}",
                    node=index,
                )
            if child_node.level != node.level + 1:
                raise TreeInvariantError(f"child {child} has a wrong level", node=index)
            leaves.extend(child_node.leaves)
            stack.append(child)
        if tuple(leaves) != node.leaves:
            raise TreeInvariantError("leaf set mismatch", node=index)

    if len(seen) != len(tree.nodes):
        raise TreeInvariantError("tree has unreachable nodes")
    if len(set(points)) != len(points):
        raise TreeInvariantError("leaf points must be distinct")


def recover_distance(tree, a, b):
    """Largest label on the tree path joining the leaves of a and b."""
    start, end = tree.leaf_node(a), tree.leaf_node(b)
    if start == end:
        return Fraction(0)

    ancestors = []
    current = start
    while current is not None:
        ancestors.append(current)
        current = tree.parents[current]
    position = {node: i for i, node in enumerate(ancestors)}

    path = []
    current = end
    while current not in position:
        path.append(current)
        current = tree.parents[current]
    path.extend(ancestors[: position[current] + 1])

    return max(tree.nodes[node].label for node in path)


def space_from_tree(tree):
    validate_tree(tree)
    points = tree.points
    index = {p: i for i, p in enumerate(points)}
    rows = [[Fraction(0)] * len(points) for _ in points]

    for node in tree.nodes:
        for left, right in combinations(node.children, 2):
            for x in tree.nodes[left].leaves:
                for y in tree.nodes[right].leaves:
                    rows[index[x]][index[y]] = node.label
                    rows[index[y]][index[x]] = node.label

    return Space.from_matrix(points, rows)


def subtree_codes(tree, labeled=True):
    """Canonical code of every subtree, indexed like `tree.nodes`."""
    codes = [None] * len(tree.nodes)

    def encode(index):
        node = tree.nodes[index]
        if node.is_leaf:
            codes[index] = "(0)" if labeled else "()"
            return codes[index]
        children = "".join(sorted(encode(child) for child in node.children))
        if labeled:
            codes[index] = f"({format_dist(node.label)}:{children})"
        else:
            codes[index] = f"({children})"
        return codes[index]

    encode(tree.root)
    return codes


def canonical_code(tree, labeled=True):
    return subtree_codes(tree, labeled)[tree.root]


def sibling_classes(tree, index, codes):
    """Children of a node grouped by equal code, in display order."""
    groups = {}
    for child in tree.nodes[index].children:
        groups.setdefault(codes[child], []).append(child)
    return [tuple(members) for members in groups.values()]


def match_subtrees(tree_a, u, tree_b, v, codes_a, codes_b):
    """
    Leaf bijection realizing the isomorphism of two subtrees with equal
    codes. Children are paired in canonical order.
    """
    if codes_a[u] != codes_b[v]:
        raise ConsistencyError(f"Subtrees {u} and {v} are not isomorphic")

    node_a, node_b = tree_a.nodes[u], tree_b.nodes[v]
    if node_a.is_leaf:
        return {node_a.leaf_point: node_b.leaf_point}

    mapping = {}
    children_a = sorted(node_a.children, key=lambda c: codes_a[c])
    children_b = sorted(node_b.children, key=lambda c: codes_b[c])
    for child_a, child_b in zip(children_a, children_b):
        mapping.update(match_subtrees(tree_a, child_a, tree_b, child_b, codes_a, codes_b))
    return mapping


@dataclass(frozen=True)
class IsometryCheck:
    isometric: bool
    witness: Isometry = None


def isometric(x, y):
    x.require_ultrametric("isometric")
    y.require_ultrametric("isometric")
    tree_x, tree_y = build_tree(x), build_tree(y)
    codes_x, codes_y = subtree_codes(tree_x), subtree_codes(tree_y)

    if codes_x[tree_x.root] != codes_y[tree_y.root]:
        logger.debug("Canonical codes differ, spaces are not isometric")
        return IsometryCheck(False)

    mapping = match_subtrees(tree_x, tree_x.root, tree_y, tree_y.root, codes_x, codes_y)
    return IsometryCheck(True, Isometry.from_mapping(x, mapping, target=y))


def spectrum_maximal(tree):
    """|Sp(X)| = |X| holds iff the tree is strictly binary with distinct inner labels."""
    validate_tree(tree)
    inner = [tree.nodes[i] for i in tree.inner_nodes()]
    labels = [node.label for node in inner]
    return all(len(node.children) == 2 for node in inner) and len(set(labels)) == len(
        labels
    )


def _split(rng, total, parts):
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0] + cuts + [total]
    return [high - low for low, high in zip(bounds, bounds[1:])]


def random_tree(leaf_count, label_pool, seed, branching=DEFAULT_BRANCHING, chain=False):
    """
    Grow a random valid tree with leaves named x1..xn in preorder.

    `branching` weighs the number of children (2, 3, ...) of every inner
    node. With `chain` set every inner node has a leaf and one inner child
    (or two leaves at the bottom), which needs leaf_count - 1 labels.
    """
    if leaf_count < 1:
        raise PreconditionError("A tree needs at least one leaf")
    pool = sorted({parse_dist(value) for value in label_pool})
    if not pool or pool[0] <= 0:
        raise PreconditionError("The label pool must be nonempty and positive")
    if chain and len(pool) < leaf_count - 1:
        raise PreconditionError(
            f"A chain with {leaf_count} leaves needs {leaf_count - 1} labels, "
            f"the pool has {len(pool)}"
        )

    rng = random.Random(seed)
    counts = list(range(2, 2 + len(branching)))
    nodes = []
    names = iter(range(1, leaf_count + 1))

    def grow(size, available, level):
        index = len(nodes)
        nodes.append(None)
        if size == 1:
            point = f"x{next(names)}"
            nodes[index] = TreeNode(Fraction(0), (), point, level, (point,))
            return index

        if chain:
            parts = [1, size - 1]
            position = rng.randrange(size - 2, len(available))
        else:
            parts = _split(rng, size, min(size, rng.choices(counts, weights=branching)[0]))
            if max(parts) > 1 and len(available) < 2:
                parts = [1] * size
            low = 1 if max(parts) > 1 else 0
            position = rng.randrange(low, len(available))

        below = available[:position]
        children = tuple(grow(part, below, level + 1) for part in parts)
        leaves = tuple(p for child in children for p in nodes[child].leaves)
        nodes[index] = TreeNode(available[position], children, None, level, leaves)
        return index

    grow(leaf_count, pool, 0)
    tree = ReprTree(tuple(nodes))
    validate_tree(tree)
    return tree
