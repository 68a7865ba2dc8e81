"""Growth-rate and exponent estimates for exact count sequences.

A sequence a_n ~ C mu^n n^alpha is first restricted to its support (an
arithmetic progression r + d k) and then sampled on multiples of a stride,
which removes periodic fluctuations coming from several dominant
singularities. mu comes from Richardson-extrapolated ratios and alpha from
doubling differences of log a_n extrapolated through a Romberg tableau.
Logarithms of the exact integers are taken with mpmath at high precision.
"""
import logging
import math
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mp, mpf

from config import settings
from core.exceptions import FitError, InputError
from core.numerics import format_rational
from models.catalog import ModelName, builtin_model
from schemas.asymptotics import AsymptoticTarget, ComparisonReport, FitResult, FitSample
from services import closedforms
from services.enumerator import Aggregate, AggregateKind, aggregate_sequence

logger = logging.getLogger(__name__)

MIN_SUPPORT_TERMS = 32
SUPPORT_PREFIX = 64
DIGITS = 20


class CountSequence:
    """Integer sequence a_0 .. a_{length-1} whose terms are computed on demand."""

    def __init__(self, term: Callable[[int], int], length: int):
        self._term = term
        self._length = length
        self._cache: Dict[int, int] = {}

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, n: int) -> int:
        if n < 0 or n >= self._length:
            raise IndexError(n)
        if n not in self._cache:
            self._cache[n] = int(self._term(n))
        return self._cache[n]


def detect_support(sequence: Sequence[int], window: int = SUPPORT_PREFIX) -> Tuple[int, int]:
    """Period d of the nonzero terms and the index of the first one.

    The period is read from the ``window`` terms that follow the first
    nonzero term, wherever that term sits in the sequence.
    """
    first = next((n for n in range(len(sequence)) if sequence[n]), None)
    if first is None:
        raise FitError("the sequence is zero everywhere")
    period = 0
    for n in range(first + 1, min(len(sequence), first + window)):
        if sequence[n]:
            period = math.gcd(period, n - first)
    return period or 1, first


def _sampling_plan(last: int, stride: int, depth: int, first: int = 0) -> Tuple[int, int, int]:
    # every sampled support index lies in [first, last]
    while True:
        unit = stride * 2 ** depth
        base = (last // 4 // unit) * unit
        if base > 0 and base // 2 ** depth >= first and (last // stride - 4) * stride >= first:
            return stride, depth, base
        if depth > 0:
            depth -= 1
        elif stride > 1:
            stride //= 2
        else:
            raise FitError(f"only {last + 1} support terms, too few to sample")


def _richardson(values: Dict[int, mpf], start: int, order: int) -> mpf:
    """Richardson sum of S(start), ..., S(start + order) for S(m) = L + c1/m + c2/m^2 + ..."""
    total = mpf(0)
    for j in range(order + 1):
        m = start + j
        sign = -1 if (j + order) % 2 else 1
        total += sign * values[m] * mpf(m) ** order / (math.factorial(j) * math.factorial(order - j))
    return total


def _non_increasing(values: List[mpf]) -> bool:
    return all(later <= earlier for earlier, later in zip(values, values[1:]))


def _romberg(values: List[mpf]) -> List[List[mpf]]:
    """Tableau for estimates at doubling sizes, coarse first, with errors in powers of 1/k."""
    table: List[List[mpf]] = []
    for i, value in enumerate(values):
        row = [value]
        for j in range(1, i + 1):
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (2 ** j - 1))
        table.append(row)
    return table


def fit(
        sequence: Sequence[int],
        skip_zeros: bool = True,
        stride: Optional[int] = None,
        precision: Optional[int] = None,
        depth: int = 3,
) -> FitResult:
    """
    Estimate mu and alpha in a_n ~ C mu^n n^alpha.

    With b_n = a_n / mu^n and D(k) = log b_2k - log b_k, which tends to
    alpha log 2, the combination 3 f(2k) - 2 f(k) - f(4k) used below equals
    2 D(k) - D(2k) for f = log a: the same doubling difference, with mu
    cancelled exactly and the leading 1/k term removed.
    """
    stride = settings.FIT_STRIDE if stride is None else stride
    precision = settings.FIT_PRECISION if precision is None else precision
    total = len(sequence)
    if total == 0:
        raise FitError("empty sequence")
    if skip_zeros:
        period, first_nonzero = detect_support(sequence)
    else:
        period, first_nonzero = 1, 0
    offset = first_nonzero % period
    first = first_nonzero // period
    last = (total - 1 - offset) // period
    if last - first + 1 < MIN_SUPPORT_TERMS:
        raise FitError(f"{last - first + 1} support terms, at least {MIN_SUPPORT_TERMS} are needed")
    stride, depth, base = _sampling_plan(last, stride, depth, first)

    with mp.workdps(precision):
        logs: Dict[int, mpf] = {}

        def f(k: int) -> mpf:
            if k not in logs:
                n = offset + period * k
                value = int(sequence[n])
                if value <= 0:
                    raise FitError(f"a_{n} = {value} on the support; cannot take its logarithm")
                logs[k] = mpmath.log(mpf(value))
            return logs[k]

        # growth rate: ratios over one stride, extrapolated in 1/m
        top = last // stride
        order = max(0, min(3, top - 2))
        ratios = {m: (f(stride * (m + 1)) - f(stride * m)) / stride for m in range(top - order - 1, top)}
        mu_table = [_richardson(ratios, top - 1 - j, j) for j in range(order + 1)]
        log_mu = mu_table[-1] / period

        # exponent: a_n ~ C mu^n n^alpha gives 3 f(2k) - 2 f(k) - f(4k) = alpha log 2 + O(1/k)
        ks = [base // 2 ** j for j in range(depth, -1, -1)]
        raw = [(3 * f(2 * k) - 2 * f(k) - f(4 * k)) / mpmath.log(2) for k in ks]
        tableau = _romberg(raw)
        alpha = tableau[-1][-1]

        mu = mpmath.exp(log_mu)
        samples = []
        mu_deviations = []
        for k, alpha_k in zip(ks, raw):
            mu_k = mpmath.exp((f(k + stride) - f(k)) / (stride * period))
            mu_deviations.append(abs(mu_k - mu))
            n = offset + period * k
            samples.append(FitSample(
                n=n, a_n=str(int(sequence[n])), mu_n=mpmath.nstr(mu_k, DIGITS), alpha_n=mpmath.nstr(alpha_k, DIGITS),
            ))
        # distance of each doubling window to the extrapolated values, coarse first
        alpha_deviations = [abs(value - alpha) for value in raw]
        monotone = _non_increasing(mu_deviations) and _non_increasing(alpha_deviations)
        result = FitResult(
            mu_estimate=mpmath.nstr(mu, DIGITS),
            alpha_estimate=mpmath.nstr(alpha, DIGITS),
            n_used=offset + period * 4 * base,
            period=period,
            offset=offset,
            stride=stride,
            precision=precision,
            mu_table=[mpmath.nstr(mpmath.exp(value / period), DIGITS) for value in mu_table],
            alpha_table=[[mpmath.nstr(value, DIGITS) for value in row] for row in tableau],
            samples=samples,
            mu_deviations=[mpmath.nstr(value, 6) for value in mu_deviations],
            alpha_deviations=[mpmath.nstr(value, 6) for value in alpha_deviations],
            monotone=monotone,
        )
    if not result.monotone:
        logger.warning(f"fit: deviations do not shrink over the doubling windows {[s.n for s in samples]}")
    logger.info(f"fit: mu ~ {result.mu_estimate}, alpha ~ {result.alpha_estimate} (period {period}, stride {stride})")
    return result


# (mu as text, mu value, alpha); None marks a structurally zero row
_TABLE = {
    ("square", "endpoint"): ("4", lambda: mpf(4), Fraction(-3)),
    ("square", "x_axis"): ("4", lambda: mpf(4), Fraction(-2)),
    ("square", "free"): ("4", lambda: mpf(4), Fraction(-1)),
    ("diagonal", "endpoint"): ("4", lambda: mpf(4), Fraction(-3)),
    ("diagonal", "x_axis"): ("4", lambda: mpf(4), Fraction(-2)),
    ("diagonal", "free"): ("4", lambda: mpf(4), Fraction(-1)),
    ("kreweras", "endpoint"): ("3", lambda: mpf(3), Fraction(-5, 2)),
    ("kreweras", "x_axis"): ("3", lambda: mpf(3), Fraction(-7, 4)),
    ("kreweras", "free"): ("3", lambda: mpf(3), Fraction(-3, 4)),
    ("knight", "endpoint"): None,
    ("knight", "x_axis"): ("3/4^(1/3)", lambda: mpf(3) / mpf(4) ** (mpf(1) / 3), Fraction(-3, 2)),
    ("knight", "free"): ("2", lambda: mpf(2), Fraction(0)),
}


def _row(kind: Aggregate) -> str:
    if kind.kind in (AggregateKind.ENDPOINT, AggregateKind.ORIGIN):
        return "endpoint"
    return kind.kind.value


def asymptotic_target(model: str, kind: Aggregate) -> AsymptoticTarget:
    model = builtin_model(model).name
    entry = _TABLE[(model, _row(kind))]
    if entry is None:
        return AsymptoticTarget(
            model=model, aggregate=kind.render(), mu="0", mu_value="0", alpha="0", structural_zero=True,
        )
    text, value, alpha = entry
    return AsymptoticTarget(
        model=model, aggregate=kind.render(), mu=text, mu_value=mpmath.nstr(value(), DIGITS),
        alpha=format_rational(alpha),
    )


def _endpoint(kind: Aggregate) -> Tuple[int, int]:
    return (0, 0) if kind.kind == AggregateKind.ORIGIN else kind.endpoint


def _kreweras_endpoint_term(i: int) -> Callable[[int], int]:
    def term(n: int) -> int:
        if n < 2 * i or (n - 2 * i) % 3:
            return 0
        return closedforms.kreweras_axis_count(i, (n - 2 * i) // 3)

    return term


def build_sequence(model: str, kind: Aggregate, max_n: int) -> Tuple[Sequence[int], str]:
    """
    Terms a_0 .. a_max_n of an aggregate, from closed forms when one exists.
    """
    if max_n < 0:
        raise InputError(f"max_n must be nonnegative, got {max_n}")
    spec = builtin_model(model)
    length = max_n + 1
    closed: Optional[Callable[[int], int]] = None
    if spec.name in (ModelName.SQUARE.value, ModelName.DIAGONAL.value):
        square = spec.name == ModelName.SQUARE.value
        if kind.kind == AggregateKind.FREE:
            closed = closedforms.square_total if square else closedforms.diagonal_total
        elif kind.kind == AggregateKind.X_AXIS:
            closed = closedforms.square_axis_total if square else closedforms.diagonal_axis_total
        else:
            i, j = _endpoint(kind)
            count = closedforms.square_count if square else closedforms.diagonal_count
            closed = lambda n: count(i, j, n)
    elif spec.name == ModelName.KREWERAS.value:
        if kind.kind == AggregateKind.FREE:
            return closedforms.kreweras_free_totals(max_n), "closed form"
        if kind.kind == AggregateKind.X_AXIS:
            closed = closedforms.kreweras_axis_total
        elif _endpoint(kind)[1] == 0:
            closed = _kreweras_endpoint_term(_endpoint(kind)[0])
    if closed is not None:
        return CountSequence(closed, length), "closed form"

    if max_n > settings.DP_MAX_LENGTH:
        logger.warning(f"{spec.name} {kind.render()} has no closed form; counting only up to {settings.DP_MAX_LENGTH}")
        max_n = settings.DP_MAX_LENGTH
    return aggregate_sequence(spec.steps, spec.start, max_n, kind), "dynamic programming"


def compare_to_table(model: str, kind: Aggregate, max_n: int, **fit_options) -> ComparisonReport:
    """
    Fit an aggregate sequence of a catalog model and measure the distance to its table entry.
    """
    target = asymptotic_target(model, kind)
    sequence, source = build_sequence(model, kind, max_n)
    if target.structural_zero:
        nonzero = [n for n in range(len(sequence)) if sequence[n]]
        return ComparisonReport(
            target=target, max_n=len(sequence) - 1, source=source, nonzero_indices=nonzero,
        )
    result = fit(sequence, **fit_options)
    with mp.workdps(settings.FIT_PRECISION):
        expected_mu = mpf(target.mu_value)
        mu_error = abs(mpf(result.mu_estimate) - expected_mu) / expected_mu
        expected_alpha = Fraction(target.alpha)
        alpha_error = mpf(result.alpha_estimate) - mpf(expected_alpha.numerator) / expected_alpha.denominator
        return ComparisonReport(
            target=target,
            max_n=len(sequence) - 1,
            source=source,
            fit=result,
            mu_relative_error=mpmath.nstr(mu_error, 6),
            alpha_error=mpmath.nstr(alpha_error, 6),
        )
