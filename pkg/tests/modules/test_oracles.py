from fractions import Fraction

import pytest

from app.exceptions import PreconditionError
from app.modules.characterizations import complete_star
from app.modules.generators import chain_space, random_ultrametric_space
from app.modules.oracles import (
    oracle_ham_paths,
    oracle_isometries,
    oracle_completions,
    oracle_min_fixed_points,
    oracle_path_completions,
    oracle_spanning_stars,
    oracle_star_completions,
    oracle_weaksim,
)
from app.modules.space import Space


def test_oracle_isometries_r4(r4):
    found = oracle_isometries(r4)

    assert [g.cycle_notation() for g in found] == ["id", "(p3 p4)"]
    assert oracle_min_fixed_points(r4) == 2


def test_oracle_isometries_equilateral(e3):
    assert len(oracle_isometries(e3)) == 6
    assert oracle_min_fixed_points(e3) == 0


def test_oracle_isometries_metric_space(nu3):
    # all distances differ, so only the identity survives
    assert [g.cycle_notation() for g in oracle_isometries(nu3)] == ["id"]


def test_oracle_cap():
    space = chain_space(9, seed=0)

    with pytest.raises(PreconditionError, match="capped at 8"):
        oracle_isometries(space)
    with pytest.raises(PreconditionError):
        oracle_ham_paths(space)


def test_oracle_ham_paths(r4, f3):
    assert oracle_ham_paths(f3) == []

    paths = oracle_ham_paths(r4)
    assert [path.points for path in paths] == [("p1", "p2", "p3", "p4"), ("p1", "p2", "p4", "p3")]


def test_oracle_ham_paths_without_filter(e3):
    assert len(oracle_ham_paths(e3, strictly_decreasing=False)) == 6


def test_oracle_spanning_stars(r4, f3):
    centers = [star.center for star in oracle_spanning_stars(r4)]

    assert centers == ["p3", "p4"]
    assert oracle_spanning_stars(f3) == []


def test_oracle_weaksim(e3, nu3):
    scaled = e3.scaled(4)
    other_metric = Space.from_matrix(
        ["y1", "y2", "y3"], [[0, 3, 7], [3, 0, 5], [7, 5, 0]]
    )

    assert oracle_weaksim(e3, scaled)
    assert oracle_weaksim(nu3, other_metric)
    assert not oracle_weaksim(e3, nu3)


def test_oracle_star_completions_unique():
    completions = oracle_star_completions([("a", 1), ("b", 2), ("c", 3)], "o")

    assert len(completions) == 1
    assert completions[0].same_distances(
        complete_star([("a", 1), ("b", 2), ("c", 3)], "o").space
    )


def test_oracle_star_completions_with_tie():
    completions = oracle_star_completions([("a", 2), ("b", 2)], "o")

    assert len(completions) > 1
    assert {c.d("a", "b") for c in completions} == {Fraction(1), Fraction(2)}


def test_oracle_star_completions_custom_values():
    completions = oracle_star_completions([("a", 2), ("b", 2)], "o", values=[1, 2, 3])

    assert sorted(c.d("a", "b") for c in completions) == [1, 2]


def test_oracle_path_completions_of_r4(r4):
    completions = oracle_path_completions(["p1", "p2", "p3", "p4"], [3, 2, 1])

    assert len(completions) == 1
    assert completions[0].same_distances(r4)


def test_oracle_path_completions_with_repeated_weight():
    # d(a, c) may be anything up to 2
    completions = oracle_path_completions(["a", "b", "c"], [2, 2])

    assert sorted(c.d("a", "c") for c in completions) == [1, 2]


def test_oracle_path_completions_needs_matching_weights():
    with pytest.raises(PreconditionError, match="needs 2 weights"):
        oracle_path_completions(["a", "b", "c"], [1])


def test_oracle_completions_rejects_inconsistent_known_distances():
    known = {("a", "b"): 1, ("b", "c"): 2, ("a", "c"): 3}

    assert oracle_completions(["a", "b", "c"], known) == []


@pytest.mark.parametrize(
    "points, known",
    [(["a", "a"], {("a", "a"): 1}), (["a", "b"], {("a", "b"): 0}), (["a", "b"], {})],
)
def test_oracle_completions_rejects_bad_input(points, known):
    with pytest.raises(PreconditionError):
        oracle_completions(points, known)


@pytest.mark.parametrize("seed", range(10))
def test_oracles_agree_with_random_spaces(seed):
    space = random_ultrametric_space(2 + seed % 5, seed)

    assert len(oracle_isometries(space)) >= 1
    assert all(path.is_strictly_decreasing() for path in oracle_ham_paths(space))
