from fractions import Fraction

import pytest

from app.exceptions import (
    ConsistencyError,
    NotAnIsometryError,
    NotUltrametricError,
    PreconditionError,
    SpaceInputError,
)
from app.modules.space import (
    Isometry,
    Kind,
    Space,
    diameter,
    diametrical_partition,
    gomory_hu_check,
    level_graph,
    spectrum,
    validate,
)


@pytest.mark.parametrize(
    "points, rows, message",
    [
        (["a", "a"], [[0, 1], [1, 0]], "Duplicate"),
        (["a", "b"], [[0, 1]], "rows"),
        (["a", "b"], [[1, 1], [1, 0]], "must be 0"),
        (["a", "b"], [[0, -1], [-1, 0]], "Negative"),
        (["a", "b"], [[0, 1], [2, 0]], "Asymmetric"),
        (["a", "b"], [[0, 0], [0, 0]], "distance 0"),
        (["a", "b"], [[0, "x"], ["x", 0]], "Malformed"),
        (["a", "b"], [[0, 0.5], [0.5, 0]], "decimal/rational"),
        ([], [], "at least one point"),
    ],
)
def test_from_matrix_rejects_invalid_tables(points, rows, message):
    with pytest.raises(SpaceInputError, match=message):
        Space.from_matrix(points, rows)


def test_from_matrix_names_the_offending_pair():
    with pytest.raises(SpaceInputError) as err:
        Space.from_matrix(["a", "b", "c"], [[0, 1, 1], [1, 0, 2], [1, 3, 0]])

    assert err.value.pair == ("b", "c")


def test_from_matrix_keeps_exact_rationals():
    space = Space.from_matrix(["a", "b"], [[0, "7/2"], ["3.5", 0]])

    assert space.d("a", "b") == Fraction(7, 2)


def test_from_distances_fills_symmetric_table(r4):
    space = Space.from_distances(
        r4.points,
        {
            ("p1", "p2"): 3,
            ("p1", "p3"): 3,
            ("p1", "p4"): 3,
            ("p2", "p3"): 2,
            ("p2", "p4"): 2,
            ("p3", "p4"): 1,
        },
    )

    assert space == r4


def test_from_distances_requires_every_pair():
    with pytest.raises(SpaceInputError, match="Missing"):
        Space.from_distances(["a", "b", "c"], {("a", "b"): 1, ("a", "c"): 1})


def test_validate_ultrametric(r4, f3, e3, p2):
    for space in (r4, f3, e3, p2):
        report = validate(space)
        assert report.kind is Kind.ULTRAMETRIC
        assert report.witness is None


def test_validate_metric_not_ultrametric(nu3):
    report = validate(nu3)

    assert report.kind is Kind.METRIC
    assert report.witnesses == (("x1", "x2", "x3"),)


def test_validate_invalid_triangle():
    space = Space.from_matrix(["a", "b", "c"], [[0, 5, 1], [5, 0, 1], [1, 1, 0]])

    report = validate(space)

    assert report.kind is Kind.INVALID
    assert report.witness == ("a", "b", "c")


def test_validation_report_is_cached(nu3):
    assert nu3.kind is Kind.METRIC
    assert nu3.report is nu3.report


def test_require_ultrametric_carries_witness(nu3):
    with pytest.raises(NotUltrametricError) as err:
        nu3.require_ultrametric("build_tree")

    assert err.value.witness == ("x1", "x2", "x3")


def test_spectrum_includes_zero(r4, f3, one_point):
    assert spectrum(r4) == (0, 1, 2, 3)
    assert spectrum(f3) == (0, 1, 2, 4)
    assert spectrum(one_point) == (0,)


def test_diameter(r4, one_point):
    assert diameter(r4) == 3
    assert diameter(r4, ["p3", "p4"]) == 1
    assert diameter(one_point) == 0

    with pytest.raises(PreconditionError):
        diameter(r4, [])


def test_level_graph(r4):
    graph = level_graph(r4, 2)

    assert graph.edges == (("p2", "p3"), ("p2", "p4"))
    assert graph.reduced().vertices == ("p2", "p3", "p4")
    assert graph.reduced().is_star()
    assert graph.reduced().star_center() == "p2"


@pytest.mark.parametrize("r", [0, 5, "3/2"])
def test_level_graph_needs_positive_spectrum_value(r4, r):
    with pytest.raises(PreconditionError):
        level_graph(r4, r)


def test_diametrical_partition_star(r4):
    graph = diametrical_partition(r4)

    assert graph.partition == (("p1",), ("p2", "p3", "p4"))
    assert graph.level == 3
    assert graph.edge_count == 3
    assert graph.is_star()
    assert graph.star_center() == "p1"


def test_diametrical_partition_two_blocks(f3):
    graph = diametrical_partition(f3)

    assert graph.partition == (("a", "b"), ("c", "d"))
    assert graph.edge_count == 4
    assert not graph.is_star()
    assert graph.star_center() is None


def test_diametrical_partition_equilateral(e3):
    graph = diametrical_partition(e3)

    assert graph.partition == (("a",), ("b",), ("c",))
    assert graph.edge_count == 3


def test_diametrical_partition_of_subset(r4):
    graph = diametrical_partition(r4, ["p4", "p2", "p3"])

    assert graph.partition == (("p2",), ("p3", "p4"))
    assert graph.level == 2


def test_diametrical_partition_rejects_metric(nu3):
    with pytest.raises(NotUltrametricError):
        diametrical_partition(nu3)


def test_diametrical_partition_needs_two_points(one_point):
    with pytest.raises(PreconditionError):
        diametrical_partition(one_point)


def test_diametrical_partition_reports_broken_multipartite_structure(nu3, mocker):
    mocker.patch.object(Space, "require_ultrametric")
    with pytest.raises(ConsistencyError):
        diametrical_partition(nu3)


def test_gomory_hu(f3, r4, e3):
    assert gomory_hu_check(f3).spectrum_size == 4
    assert gomory_hu_check(f3).holds
    assert gomory_hu_check(r4).spectrum_size == len(r4)
    assert gomory_hu_check(e3).spectrum_size == 2


def test_subspace_keeps_input_order(r4):
    sub = r4.subspace(["p4", "p3"])

    assert sub.points == ("p3", "p4")
    assert sub.d("p3", "p4") == 1


def test_scaled_and_relabel(r4):
    scaled = r4.scaled("1/2")
    renamed = r4.relabel({"p1": "a", "p2": "b", "p3": "c", "p4": "d"})

    assert scaled.d("p1", "p2") == Fraction(3, 2)
    assert renamed.d("c", "d") == 1
    with pytest.raises(PreconditionError):
        r4.scaled(0)


def test_reordered_has_same_distances(r4):
    moved = r4.reordered(["p4", "p3", "p2", "p1"])

    assert moved.points == ("p4", "p3", "p2", "p1")
    assert moved != r4
    assert moved.same_distances(r4)
    with pytest.raises(PreconditionError):
        r4.reordered(["p1", "p2"])


def test_isometry_swap(r4):
    swap = Isometry.from_mapping(r4, {"p1": "p1", "p2": "p2", "p3": "p4", "p4": "p3"})

    assert swap.cycle_notation() == "(p3 p4)"
    assert swap.fixed_points() == ("p1", "p2")
    assert swap("p3") == "p4"
    assert swap.compose(swap).is_identity()
    assert swap.inverse() == swap
    assert Isometry.identity(r4).cycle_notation() == "id"


def test_isometry_rejects_distance_change(r4):
    with pytest.raises(NotAnIsometryError):
        Isometry.from_mapping(r4, {"p1": "p2", "p2": "p1", "p3": "p3", "p4": "p4"})


def test_isometry_rejects_non_bijection(r4):
    with pytest.raises(NotAnIsometryError):
        Isometry.from_mapping(r4, {"p1": "p1", "p2": "p2", "p3": "p3", "p4": "p3"})


def test_isometry_three_cycle(e3):
    rotation = Isometry.from_mapping(e3, {"a": "b", "b": "c", "c": "a"})

    assert rotation.cycles() == (("a", "b", "c"),)
    assert rotation.fixed_points() == ()
