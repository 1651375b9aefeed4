import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.exceptions import ParseError, TreeInvariantError
from app.modules.balls import gamma_graph
from app.modules.generators import generate
from app.modules.repr_tree import build_tree, random_tree
from app.modules.serialization import (
    detect_format,
    emit_space,
    gamma_to_dict,
    gamma_to_dot,
    load_space,
    parse,
    tree_from_dict,
    tree_to_dict,
    tree_to_dot,
)
from tests.conftest import fixture_path


@pytest.mark.parametrize("name", ["R4.json", "R4.csv"])
def test_load_space_fixture(name, r4):
    assert load_space(fixture_path(name)) == r4


def test_load_space_with_explicit_format(r4, tmp_path):
    path = tmp_path / "r4.txt"
    path.write_text(emit_space(r4, "csv"))

    assert load_space(str(path), "csv") == r4


def test_detect_format():
    assert detect_format("spaces/R4.JSON") == "json"
    with pytest.raises(ParseError, match="Cannot tell"):
        detect_format("spaces/R4.txt")


@pytest.mark.parametrize(
    "name, row, col",
    [("negative.csv", 2, 3), ("float.json", 1, 2), ("asymmetric.json", 1, 2)],
)
def test_parse_errors_are_positioned(name, row, col):
    with pytest.raises(ParseError) as err:
        load_space(fixture_path(name))

    assert (err.value.row, err.value.col) == (row, col)
    assert f"(row {row}, col {col})" in str(err.value)


@pytest.mark.parametrize(
    "document, fmt, message",
    [
        ("{", "json", "Invalid JSON"),
        ('{"points": ["a"]}', "json", "'points' and 'matrix'"),
        ('{"points": ["a", "b"], "matrix": [["0", "1"]]}', "json", "1 rows for 2 points"),
        ('{"points": ["a", "b"], "matrix": [["0", "1"], ["1"]]}', "json", "Row 2"),
        ('{"points": ["a", "b"], "matrix": [["0", "x"], ["x", "0"]]}', "json", "Malformed"),
        ("", "csv", "Empty"),
        ("a,b\n0,1\n", "csv", "1 rows for 2 points"),
        ("a,b\n0,1\n1,0\n", "yaml", "Unsupported format"),
    ],
)
def test_parse_rejects_malformed_documents(document, fmt, message):
    with pytest.raises(ParseError, match=message):
        parse(document, fmt)


def test_emit_space_json(r4):
    data = json.loads(emit_space(r4, "json"))

    assert data["points"] == ["p1", "p2", "p3", "p4"]
    assert data["matrix"][2] == ["3", "2", "0", "1"]


def test_emit_space_keeps_rationals(r4):
    document = emit_space(r4.scaled("1/3"), "csv")

    assert document.splitlines()[1] == "0,1,1,1"
    assert document.splitlines()[3] == "1,2/3,0,1/3"


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from(["chain_R", "random_tree", "random_metric_nonultra"]),
    st.integers(min_value=3, max_value=9),
    st.integers(min_value=0, max_value=2**32 - 1),
    st.sampled_from(["json", "csv"]),
    st.fractions(min_value=0, max_value=50).filter(lambda f: f > 0),
)
def test_parse_inverts_emit(kind, n, seed, fmt, factor):
    space = generate(kind, n, seed).scaled(factor)

    assert parse(emit_space(space, fmt), fmt) == space


def test_tree_to_dict(p2):
    assert tree_to_dict(build_tree(p2)) == {
        "label": "1",
        "children": [{"label": "0", "point": "a"}, {"label": "0", "point": "b"}],
    }


def test_tree_from_dict_inverts_tree_to_dict(r4, f3):
    for space in (r4, f3):
        tree = build_tree(space)
        assert tree_from_dict(tree_to_dict(tree)) == tree


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=2**32 - 1))
def test_tree_from_dict_inverts_tree_to_dict_on_random_trees(leaf_count, seed):
    tree = random_tree(leaf_count, range(1, leaf_count + 3), seed)

    assert tree_from_dict(tree_to_dict(tree)) == tree


def test_tree_from_dict_validates():
    data = {"label": "1", "children": [{"label": "2", "children": [
        {"label": "0", "point": "a"}, {"label": "0", "point": "b"}]},
        {"label": "0", "point": "c"}]}

    with pytest.raises(TreeInvariantError):
        tree_from_dict(data)


@pytest.mark.parametrize(
    "data, message",
    [
        ({"children": [{"label": "0", "point": "a"}]}, "root needs a 'label'"),
        ("3", "root needs a 'label'"),
        ({"label": "x", "point": "a"}, "Malformed numeral"),
        ({"label": "1", "children": 5}, "needs a 'point' or a list of children"),
        ({"label": "1"}, "needs a 'point' or a list of children"),
        (
            {"label": "1", "children": [{"label": "0", "point": "a"}, {"point": "b"}]},
            r"root.children\[1\] needs a 'label'",
        ),
    ],
)
def test_tree_from_dict_rejects_malformed_nodes(data, message):
    with pytest.raises(ParseError, match=message):
        tree_from_dict(data)


def test_tree_to_dot(r4):
    dot = tree_to_dot(build_tree(r4))
    lines = dot.splitlines()

    assert lines[0] == "digraph T {"
    assert lines[-1] == "}"
    assert sum(1 for line in lines if "[label=" in line) == 7
    assert sum(1 for line in lines if "->" in line) == 6
    assert '    n0 [label="label=3 {p1, p2, p3, p4}"];' in lines
    assert '    n5 [label="label=0 {p3}"];' in lines


def test_gamma_exports(nu3):
    gamma = gamma_graph(nu3)

    dot = gamma_to_dot(nu3, gamma)
    assert dot.startswith("graph Gamma {")
    assert dot.count(" -- ") == 6
    assert dot.count("shape=box") == 1

    data = gamma_to_dict(nu3, gamma)
    assert len(data["vertices"]) == 6
    assert len(data["edges"]) == 6
    assert data["root"] == "b5"
    assert data["vertices"][5]["members"] == ["x1", "x2", "x3"]
