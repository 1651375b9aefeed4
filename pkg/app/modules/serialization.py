# encoding: utf-8

import csv
import io
import json
import os

from app import logger
from app.constants import VALID_DOCUMENT_FORMATS
from app.exceptions import ParseError, PreconditionError, SpaceInputError
from app.modules.repr_tree import ReprTree, TreeNode, validate_tree
from app.modules.space import Space
from app.utils import format_dist, format_points, parse_dist


def detect_format(path):
    extension = os.path.splitext(path)[1].lstrip(".").lower()
    if extension not in VALID_DOCUMENT_FORMATS:
        raise ParseError(
            f"Cannot tell the format of '{path}', expected one of {VALID_DOCUMENT_FORMATS}"
        )
    return extension


def load_space(path, fmt=None):
    fmt = fmt or detect_format(path)
    with open(path, "r", encoding="utf8") as stream:
        logger.debug("Loading %s space from %s", fmt, os.path.abspath(path))
        return parse(stream.read(), fmt)


def parse(document, fmt="json"):
    if fmt == "json":
        return _parse_json(document)
    if fmt == "csv":
        return _parse_csv(document)
    raise ParseError(f"Unsupported format '{fmt}', expected one of {VALID_DOCUMENT_FORMATS}")


def _parse_entry(value, row, col):
    if isinstance(value, float):
        raise ParseError(f"Binary float {value!r} is not exact, write it as a string", row, col)
    try:
        number = parse_dist(value)
    except SpaceInputError as err:
        raise ParseError(str(err), row, col)
    if number < 0:
        raise ParseError(f"Negative distance {value!r}", row, col)
    return number


def _build(points, rows):
    try:
        return Space.from_matrix(points, rows)
    except SpaceInputError as err:
        if err.pair and err.pair[1] is not None:
            names = [str(p) for p in points]
            row, col = (names.index(p) + 1 for p in err.pair)
            raise ParseError(str(err), row, col)
        raise ParseError(str(err))


def _parse_json(document):
    try:
        data = json.loads(document)
    except json.JSONDecodeError as err:
        raise ParseError(f"Invalid JSON: {err.msg}", err.lineno, err.colno)

    if not isinstance(data, dict) or "points" not in data or "matrix" not in data:
        raise ParseError("A space document needs 'points' and 'matrix' keys")
    points, matrix = data["points"], data["matrix"]
    if not isinstance(points, list) or not isinstance(matrix, list):
        raise ParseError("'points' and 'matrix' must be lists")
    if len(matrix) != len(points):
        raise ParseError(f"Matrix has {len(matrix)} rows for {len(points)} points")

    rows = []
    for i, row in enumerate(matrix, start=1):
        if not isinstance(row, list) or len(row) != len(points):
            raise ParseError(f"Row {i} must list {len(points)} entries", i, None)
        rows.append([_parse_entry(value, i, j) for j, value in enumerate(row, start=1)])
    return _build(points, rows)


def _parse_csv(document):
    records = [record for record in csv.reader(io.StringIO(document)) if record]
    if not records:
        raise ParseError("Empty CSV document")
    points = [name.strip() for name in records[0]]
    body = records[1:]
    if len(body) != len(points):
        raise ParseError(f"CSV has {len(body)} rows for {len(points)} points")

    rows = []
    for i, record in enumerate(body, start=1):
        if len(record) != len(points):
            raise ParseError(f"Row {i} must list {len(points)} entries", i, None)
        rows.append([_parse_entry(value, i, j) for j, value in enumerate(record, start=1)])
    return _build(points, rows)


def emit_space(space, fmt="json"):
    matrix = [[format_dist(value) for value in row] for row in space.matrix]
    if fmt == "json":
        return json.dumps({"points": list(space.points), "matrix": matrix}, indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(space.points)
        writer.writerows(matrix)
        return buffer.getvalue()
    raise PreconditionError(f"Unsupported format '{fmt}'")


def tree_to_dict(tree, index=None):
    index = tree.root if index is None else index
    node = tree.nodes[index]
    if node.is_leaf:
        return {"label": format_dist(node.label), "point": node.leaf_point}
    return {
        "label": format_dist(node.label),
        "children": [tree_to_dict(tree, child) for child in node.children],
    }


def tree_from_dict(data):
    """Inverse of tree_to_dict. Malformed nodes raise ParseError naming their path."""
    nodes = []

    def grow(item, level, path):
        if not isinstance(item, dict) or "label" not in item:
            raise ParseError(f"Tree node {path} needs a 'label'")
        try:
            label = parse_dist(item["label"])
        except SpaceInputError as err:
            raise ParseError(f"Tree node {path}: {err}")

        index = len(nodes)
        nodes.append(None)
        if "point" in item:
            point = str(item["point"])
            nodes[index] = TreeNode(label, (), point, level, (point,))
            return index
        items = item.get("children", [])
        if not isinstance(items, list) or not items:
            raise ParseError(f"Tree node {path} needs a 'point' or a list of children")
        children = tuple(
            grow(child, level + 1, f"{path}.children[{i}]") for i, child in enumerate(items)
        )
        leaves = tuple(p for child in children for p in nodes[child].leaves)
        nodes[index] = TreeNode(label, children, None, level, leaves)
        return index

    grow(data, 0, "root")
    tree = ReprTree(tuple(nodes))
    validate_tree(tree)
    return tree


def _dot_escape(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')


def tree_to_dot(tree):
    lines = ["digraph T {"]
    for index, node in enumerate(tree.nodes):
        text = f"label={format_dist(node.label)} {format_points(node.leaves)}"
        lines.append(f'    n{index} [label="{_dot_escape(text)}"];')
    for index, node in enumerate(tree.nodes):
        for child in node.children:
            lines.append(f"    n{index} -> n{child};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def gamma_to_dict(space, gamma):
    names = {ball: f"b{i}" for i, ball in enumerate(gamma.vertices)}
    return {
        "root": names[gamma.root_vertex],
        "vertices": [
            {"id": names[ball], "members": list(ball.sorted_members(space))}
            for ball in gamma.vertices
        ],
        "edges": [[names[small], names[large]] for small, large in gamma.edges],
    }


def gamma_to_dot(space, gamma):
    names = {ball: f"b{i}" for i, ball in enumerate(gamma.vertices)}
    lines = ["graph Gamma {"]
    for ball in gamma.vertices:
        text = format_points(ball.sorted_members(space))
        shape = ", shape=box" if ball == gamma.root_vertex else ""
        lines.append(f'    {names[ball]} [label="{_dot_escape(text)}"{shape}];')
    for small, large in gamma.edges:
        lines.append(f"    {names[small]} -- {names[large]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
