import pytest

from core.exceptions import ContractViolation, InputError, QuadrantError
from core.series import LaurentPoly
from models.catalog import builtin_model
from services.closedforms import square_total
from services.enumerator import (
    Aggregate,
    AggregateKind,
    aggregate,
    aggregate_sequence,
    count_walks,
    parse_aggregate,
    series_from_table,
)


def walks(model, length):
    spec = builtin_model(model)
    return count_walks(spec.steps, spec.start, length)


def test_kreweras_returns_to_origin():
    table = walks("kreweras", 9)
    assert aggregate(table, Aggregate(AggregateKind.ORIGIN)) == [1, 0, 0, 2, 0, 0, 16, 0, 0, 192]


def test_square_totals():
    table = walks("square", 12)
    assert aggregate(table, Aggregate(AggregateKind.FREE)) == [square_total(n) for n in range(13)]
    assert [table.total(n) for n in range(5)] == [1, 2, 6, 18, 60]


def test_knight_walks_move_along_antidiagonals():
    table = walks("knight", 5)
    entries = list(table.entries())
    assert entries[0] == (0, 1, 1, 1)
    assert all(n == i + j - 2 for n, i, j, _ in entries)


def test_streaming_sequence_matches_table():
    spec = builtin_model("diagonal")
    table = count_walks(spec.steps, spec.start, 10)
    for text in ("free", "x_axis", "origin", "endpoint(2,0)"):
        kind = parse_aggregate(text)
        assert aggregate_sequence(spec.steps, spec.start, 10, kind) == aggregate(table, kind)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("endpoint(2,3)", Aggregate(AggregateKind.ENDPOINT, (2, 3))),
        ("endpoint:2,3", Aggregate(AggregateKind.ENDPOINT, (2, 3))),
        (" x-axis ", Aggregate(AggregateKind.X_AXIS)),
        ("origin", Aggregate(AggregateKind.ORIGIN)),
        ("FREE", Aggregate(AggregateKind.FREE)),
    ],
)
def test_parse_aggregate(text, expected):
    assert parse_aggregate(text) == expected


def test_bad_aggregates():
    with pytest.raises(InputError):
        parse_aggregate("corner")
    with pytest.raises(InputError):
        Aggregate(AggregateKind.ENDPOINT)
    with pytest.raises(ContractViolation):
        aggregate(walks("square", 3), Aggregate(AggregateKind.ENDPOINT, (100, 0)))


def test_contracts():
    spec = builtin_model("square")
    with pytest.raises(QuadrantError):
        count_walks(spec.steps, (-1, 0), 3)
    with pytest.raises(InputError):
        count_walks(spec.steps, (0, 0), -1)
    table = count_walks(spec.steps, (0, 0), 3)
    with pytest.raises(ContractViolation):
        table.count(4, 0, 0)


def test_series_from_table():
    q = series_from_table(walks("square", 4))
    assert q.order == 4
    assert q.coefficient(1) == LaurentPoly({(1, 0): 1, (0, 1): 1}, 2)
    assert q.coeff(2, (0, 0)) == 2
