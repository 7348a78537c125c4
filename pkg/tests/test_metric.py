from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gromovclass.core import Permutation, apply_permutation, serialize
from gromovclass.errors import MetricError, NotDeltaGeneric
from gromovclass.metric import (
    DistanceMatrix,
    GromovTensor,
    format_metric,
    gromov_products,
    is_metric,
    parse_metric,
    pendant_free_reduction,
    read_metric,
    structure_of_metric,
    verify_gromov_identities,
    write_metric,
)

# a generic four-point metric whose structure is 124,213,324,413
SQUARE = [[0, 3, 4, 3], [3, 0, 3, 4], [4, 3, 0, 3], [3, 4, 3, 0]]


def random_metric(n):
    """Entries in [1, 2] always satisfy the triangle inequality."""
    entry = st.fractions(min_value=1, max_value=2, max_denominator=50)
    return st.lists(entry, min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(lambda xs: _fill(n, xs))


def _fill(n, xs):
    d = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), x in zip(combinations(range(n), 2), xs):
        d[i][j] = d[j][i] = x
    return DistanceMatrix.from_rows(d)


def test_products_and_distances_round_trip():
    d = DistanceMatrix.from_rows(SQUARE)
    t = gromov_products(d)
    assert t(1, 2, 4) == Fraction(3 + 3 - 4, 2) == 1
    assert t(1, 4, 2) == t(1, 2, 4)
    for i, j in combinations(range(1, 5), 2):
        assert t.distance(i, j) == d(i, j)
    assert len(list(t.slots())) == 4 * 3 * 2 // 2


def test_structure_of_square():
    assert serialize(structure_of_metric(DistanceMatrix.from_rows(SQUARE))) == "124,213,324,413"


def test_equilateral_is_not_generic():
    eq = DistanceMatrix.from_rows([[0 if i == j else 1 for j in range(4)] for i in range(4)])
    with pytest.raises(NotDeltaGeneric) as exc:
        structure_of_metric(eq)
    assert exc.value.node == 1


def test_float_entries_are_read_as_decimals():
    d = DistanceMatrix.from_rows([[0, 0.1, 0.2], [0.1, 0, 0.2], [0.2, 0.2, 0]])
    assert d(1, 2) == Fraction(1, 10)


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 1], [1, 0]],
        [[0, 1], [2, 0]],
        [[0, -1], [-1, 0]],
        [[0, 1, 1], [1, 0, 1]],
    ],
)
def test_distance_matrix_validation(rows):
    with pytest.raises(MetricError):
        DistanceMatrix(len(rows), tuple(map(tuple, rows)))


def test_is_metric_reports_violation():
    bad = DistanceMatrix.from_rows([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    v = is_metric(bad)
    assert not v and "triangle" in v.reason
    assert is_metric(DistanceMatrix.from_rows(SQUARE))


def test_identity_check_reports_violation():
    t = gromov_products(DistanceMatrix.from_rows(SQUARE))
    assert verify_gromov_identities(t)
    broken = dict(t.delta)
    broken[(1, (2, 3))] += 1
    v = verify_gromov_identities(GromovTensor(4, broken))
    assert not v and "identity fails" in v.reason


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 7).flatmap(random_metric), st.data())
def test_structure_is_equivariant(d, data):
    p = Permutation(tuple(data.draw(st.permutations(list(range(1, d.n + 1))))))
    try:
        s = structure_of_metric(d)
    except NotDeltaGeneric:
        with pytest.raises(NotDeltaGeneric):
            structure_of_metric(d.relabeled(p))
        return
    assert structure_of_metric(d.relabeled(p)) == apply_permutation(s, p)
    assert structure_of_metric(d.scaled(3)) == s


def test_pendant_free_reduction_of_square():
    g = pendant_free_reduction(DistanceMatrix.from_rows(SQUARE))
    # the two diagonals are picked and removed; every side loses 1 + 1
    assert set(g.weights) == {(1, 2), (1, 4), (2, 3), (3, 4)}
    assert all(w == 1 for w in g.weights.values())


def test_metric_file_round_trip(tmp_path):
    d = DistanceMatrix.from_rows([[0, Fraction(3, 2), 2], [Fraction(3, 2), 0, 1], [2, 1, 0]])
    path = tmp_path / "m.txt"
    write_metric(d, path)
    assert read_metric(path) == d


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("3\n0 1 1\n1 0 1\n1 1 x\n", 4, 3),
        ("# comment\n3\n0 1 1\n1 0 1\n1 2 0\n", 4, 3),
        ("3\n0 1 1\n1 0 1\n", 3, None),
        ("3\n0 1\n1 0 1\n1 1 0\n", 2, None),
        ("3\n0 1 1\n1 1 1\n1 1 0\n", 3, 2),
    ],
)
def test_metric_parse_errors_carry_position(text, line, column):
    with pytest.raises(MetricError) as exc:
        parse_metric(text)
    assert exc.value.line == line
    if column is not None:
        assert exc.value.column == column


def test_format_metric_is_parseable():
    d = DistanceMatrix.from_rows(SQUARE)
    assert parse_metric(format_metric(d)) == d
