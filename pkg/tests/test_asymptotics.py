from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from config import settings
from core.numerics import binomial
from core.exceptions import FitError, UnknownModel
from services.asymptotics import (
    CountSequence,
    asymptotic_target,
    build_sequence,
    compare_to_table,
    detect_support,
    fit,
)
from services.enumerator import Aggregate, AggregateKind, parse_aggregate


def synthetic(mu, alpha, length=2001):
    """1 + floor(mu^n n^alpha), with a_0 = 1."""
    with mpmath.workdps(80):
        return [1] + [int(mpmath.floor(mpf(mu) ** n * mpf(n) ** mpf(alpha))) + 1 for n in range(1, length)]


def test_detect_support():
    assert detect_support([1, 0, 0, 2, 0, 0, 16]) == (3, 0)
    assert detect_support([0, 1, 0, 1, 0, 2]) == (2, 1)
    assert detect_support([5, 6, 7]) == (1, 0)
    with pytest.raises(FitError):
        detect_support([0, 0, 0])
    # the first nonzero term may come long after the start
    assert detect_support([0] * 100 + [1, 0, 1, 0, 3]) == (2, 100)


def test_count_sequence_is_lazy_and_bounded():
    calls = []

    def term(n):
        calls.append(n)
        return n * n

    sequence = CountSequence(term, 10)
    assert len(sequence) == 10
    assert sequence[3] == 9 and sequence[3] == 9
    assert calls == [3]
    with pytest.raises(IndexError):
        sequence[10]


def test_fit_four_to_the_n_over_n():
    sequence = [1] + [4 ** n // n for n in range(1, 2001)]
    result = fit(sequence)
    assert abs(float(result.mu_estimate) - 4) < 0.04
    assert abs(float(result.alpha_estimate) + 1) < 0.1
    assert result.precision == settings.FIT_PRECISION
    assert result.period == 1
    assert len(result.alpha_table) == len(result.samples)


@pytest.mark.parametrize(
    "mu, alpha",
    [(2, Fraction(-3)), (3, Fraction(-3, 4)), (4, Fraction(-2)), (4, Fraction(-1))],
)
def test_fit_synthetic_sequences(mu, alpha):
    result = fit(synthetic(mu, float(alpha)))
    assert abs(float(result.mu_estimate) - mu) / mu < 0.01
    assert abs(float(result.alpha_estimate) - float(alpha)) < 0.1


def test_fit_on_a_periodic_support():
    sequence = [0] * 2001
    with mpmath.workdps(80):
        for k in range(667):
            sequence[3 * k] = int(mpmath.floor(mpf(27) ** k * mpf(max(k, 1)) ** mpf(-2.5))) + 1
    result = fit(sequence)
    assert (result.period, result.offset) == (3, 0)
    assert abs(float(result.mu_estimate) - 3) < 0.03
    assert abs(float(result.alpha_estimate) + 2.5) < 0.1


def test_fit_after_a_long_run_of_zeros():
    sequence = [0] * 100 + synthetic(4, -1.0)[100:]
    result = fit(sequence)
    assert (result.period, result.offset) == (1, 0)
    assert min(sample.n for sample in result.samples) >= 100
    assert abs(float(result.mu_estimate) - 4) / 4 < 0.01
    assert abs(float(result.alpha_estimate) + 1) < 0.1


@pytest.mark.parametrize("model, aggregate", [("kreweras", "endpoint(40,0)"), ("square", "endpoint(70,0)")])
def test_endpoints_far_from_the_origin(model, aggregate):
    report = compare_to_table(model, parse_aggregate(aggregate), 2000)
    assert report.fit is not None
    assert float(report.mu_relative_error) < 0.01


def test_deviations_shrink_over_doubling_windows():
    result = fit([binomial(2 * n, n) for n in range(2001)])
    assert abs(float(result.alpha_estimate) + 0.5) < 0.05
    assert len(result.mu_deviations) == len(result.alpha_deviations) == len(result.samples)
    assert result.monotone
    deviations = [float(value) for value in result.alpha_deviations]
    assert deviations[-1] < deviations[0]


def test_fit_rejects_bad_sequences():
    with pytest.raises(FitError):
        fit([])
    with pytest.raises(FitError):
        fit([0] * 100)
    with pytest.raises(FitError):
        fit([2 ** n for n in range(20)])
    with pytest.raises(FitError):
        fit([1] + [-(2 ** n) for n in range(1, 200)])


def test_targets():
    target = asymptotic_target("kreweras", Aggregate(AggregateKind.X_AXIS))
    assert (target.mu, target.alpha) == ("3", "-7/4")
    knight = asymptotic_target("knight", parse_aggregate("endpoint(3,3)"))
    assert knight.structural_zero
    assert asymptotic_target("knight", Aggregate(AggregateKind.X_AXIS)).mu == "3/4^(1/3)"
    with pytest.raises(UnknownModel):
        asymptotic_target("hexagonal", Aggregate(AggregateKind.FREE))


def test_sequences_from_closed_forms():
    sequence, source = build_sequence("kreweras", Aggregate(AggregateKind.ORIGIN), 9)
    assert source == "closed form"
    assert [sequence[n] for n in range(10)] == [1, 0, 0, 2, 0, 0, 16, 0, 0, 192]
    sequence, _ = build_sequence("square", Aggregate(AggregateKind.FREE), 4)
    assert list(sequence[n] for n in range(5)) == [1, 2, 6, 18, 60]


def test_dynamic_programming_is_capped(monkeypatch):
    monkeypatch.setattr(settings, "DP_MAX_LENGTH", 30)
    sequence, source = build_sequence("knight", Aggregate(AggregateKind.FREE), 100)
    assert source == "dynamic programming"
    assert len(sequence) == 31


def test_knight_endpoint_is_a_structural_zero():
    report = compare_to_table("knight", parse_aggregate("endpoint(3,3)"), 22)
    assert report.fit is None
    assert report.nonzero_indices == [4]
    assert type(report).parse_raw(report.json()) == report


@pytest.mark.slow
@pytest.mark.parametrize(
    "model, aggregate",
    [
        ("square", "free"),
        ("square", "x_axis"),
        ("diagonal", "free"),
        ("diagonal", "x_axis"),
        ("kreweras", "free"),
        ("kreweras", "x_axis"),
    ],
)
def test_table_rows(model, aggregate):
    report = compare_to_table(model, parse_aggregate(aggregate), 2000)
    assert report.source == "closed form"
    assert float(report.mu_relative_error) < 0.01
    assert abs(float(report.alpha_error)) < 0.15
    assert report.fit.monotone


@pytest.mark.slow
def test_knight_free_growth():
    report = compare_to_table("knight", Aggregate(AggregateKind.FREE), 200)
    assert report.source == "dynamic programming"
    assert float(report.mu_relative_error) < 0.02
