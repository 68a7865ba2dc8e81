import pytest

from core.exceptions import InputError, QuadrantError
from core.series import TSeries
from models.catalog import builtin_model
from services import closedforms
from services.enumerator import Aggregate, AggregateKind, aggregate, count_walks
from services.kernel import axis_series, build_kernel, r_series, y_root_vanishing


def walks(model, length):
    spec = builtin_model(model)
    return count_walks(spec.steps, spec.start, length)


@pytest.fixture(scope="module")
def kreweras_table():
    return walks("kreweras", 27)


def test_kreweras_axis_count_values():
    assert [closedforms.kreweras_axis_count(0, n) for n in range(4)] == [1, 2, 16, 192]
    assert closedforms.kreweras_axis_count(1, 0) == 1
    with pytest.raises(InputError):
        closedforms.kreweras_axis_count(-1, 2)


def test_kreweras_axis_counts_match_enumeration(kreweras_table):
    rows = closedforms.kreweras_axis_counts(27)
    for i, row in enumerate(rows):
        for n, value in enumerate(row):
            assert value == kreweras_table.count(3 * n + 2 * i, i, 0)
            assert value == closedforms.kreweras_axis_count(i, n)


def test_kreweras_totals_match_enumeration(kreweras_table):
    axis = aggregate(kreweras_table, Aggregate(AggregateKind.X_AXIS))
    assert closedforms.kreweras_axis_totals(27) == axis
    assert [closedforms.kreweras_axis_total(m) for m in range(28)] == axis
    assert closedforms.kreweras_free_totals(27) == aggregate(kreweras_table, Aggregate(AggregateKind.FREE))


def test_x_series():
    x = closedforms.solve_x(50)
    t = TSeries.t()
    assert (x - t * (x ** 3 + 2)).is_zero()
    assert closedforms.solve_x(10).render() == "2*t + 8*t^4 + 96*t^7 + 1536*t^10 + O(t^11)"


def test_kreweras_solution_matches_enumeration():
    solution = closedforms.solve_kreweras(24)
    counted = axis_series(walks("kreweras", 24))
    assert (solution.q00 - counted.filter(lambda key: key == (0,))).is_zero()
    assert (solution.qx0 - counted).is_zero()
    assert solution.q00.order == 24


def test_quadratic_method_system():
    solution = closedforms.solve_kreweras(12)
    for residual in closedforms.quadratic_method_residuals(solution):
        assert residual.is_zero()


def test_quadratic_equation_on_counts():
    q_axis = axis_series(walks("kreweras", 20))
    residual = closedforms.quadratic_equation_residual(q_axis, q_axis.filter(lambda key: key == (0,)))
    assert residual.is_zero()
    assert residual.order >= 20


def test_double_sums_match_enumeration():
    table = walks("kreweras", 15)
    checked = 0
    for r in range(16):
        for p in range(r + 1):
            for q in range(r + 1):
                if p + q + r > 15:
                    continue
                first, second = closedforms.kreweras_full_count(p, q, r)
                assert first == second == table.count(p + q + r, r - p, r - q)
                checked += 1
    assert checked > 100


def test_double_sums_reject_points_outside():
    with pytest.raises(QuadrantError):
        closedforms.kreweras_full_count(3, 0, 1)


@pytest.mark.parametrize(
    "model, count",
    [("square", closedforms.square_count), ("diagonal", closedforms.diagonal_count)],
)
def test_endpoint_counts_match_enumeration(model, count):
    table = walks(model, 20)
    for n in range(21):
        for i in range(n + 1):
            for j in range(n + 1):
                assert count(i, j, n) == table.count(n, i, j)


@pytest.mark.parametrize(
    "model, total, axis_total",
    [
        ("square", closedforms.square_total, closedforms.square_axis_total),
        ("diagonal", closedforms.diagonal_total, closedforms.diagonal_axis_total),
    ],
)
def test_totals_match_enumeration(model, total, axis_total):
    table = walks(model, 30)
    assert aggregate(table, Aggregate(AggregateKind.FREE)) == [total(n) for n in range(31)]
    assert aggregate(table, Aggregate(AggregateKind.X_AXIS)) == [axis_total(n) for n in range(31)]


def test_shuffle_sum_reduces_to_single_sum():
    assert all(closedforms.square_shuffle_total(n) == closedforms.square_total(n) for n in range(31))


def test_square_expansions():
    y0_sum, r_sum = closedforms.square_kernel_expansions(16)
    newton = y_root_vanishing(build_kernel(builtin_model("square").steps), 16)
    assert (y0_sum - newton).is_zero()
    assert (r_sum - r_series(walks("square", 15))).is_zero()
    assert r_sum.order == 16
