"""Explicit counting formulas and the algebraic solution of Kreweras walks."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from core.exceptions import InputError, QuadrantError, VerificationError
from core.numerics import (
    FactorialTable,
    binomial,
    catalan,
    exact_integer,
    half_binomial,
    multinomial,
)
from core.series import (
    DegreeBound,
    LaurentPoly,
    TSeries,
    newton_root,
    sqrt_series,
    substitute,
)

logger = logging.getLogger(__name__)

_factorials = FactorialTable()


def _check_nonnegative(**values: int) -> None:
    for name, value in values.items():
        if value < 0:
            raise InputError(f"{name} must be nonnegative, got {value}")


# Kreweras walks

def kreweras_axis_count(i: int, n: int) -> int:
    """Walks of length 3n + 2i from the origin ending at (i, 0)."""
    _check_nonnegative(i=i, n=n)
    value = Fraction(4 ** n * (2 * i + 1), (n + i + 1) * (2 * n + 2 * i + 1))
    return exact_integer(value * binomial(2 * i, i) * binomial(3 * n + 2 * i, n))


def kreweras_axis_counts(max_length: int) -> List[List[int]]:
    """
    rows[i][n] = kreweras_axis_count(i, n) for 3n + 2i <= max_length.

    Each row starts at Catalan(i) and follows the ratio between consecutive n.
    """
    rows = []
    for i in range(max_length // 2 + 1):
        value = catalan(i)
        row = [value]
        n = 0
        while 3 * (n + 1) + 2 * i <= max_length:
            k = 3 * n + 2 * i
            value = value * 2 * (k + 1) * (k + 2) * (k + 3) // ((n + i + 2) * (2 * n + 2 * i + 3) * (n + 1))
            row.append(value)
            n += 1
        rows.append(row)
    return rows


def kreweras_axis_totals(max_length: int) -> List[int]:
    """Walks of each length m <= max_length ending anywhere on the x-axis."""
    totals = [0] * (max_length + 1)
    for i, row in enumerate(kreweras_axis_counts(max_length)):
        for n, value in enumerate(row):
            totals[3 * n + 2 * i] += value
    return totals


def kreweras_axis_total(length: int) -> int:
    total = 0
    for i in range(length // 2 + 1):
        if (length - 2 * i) % 3 == 0:
            total += kreweras_axis_count(i, (length - 2 * i) // 3)
    return total


def kreweras_free_totals(max_length: int) -> List[int]:
    """All walks by length, from (1 - 3t) Q(1,1) = 1 - 2t Q(1,0)."""
    axis = kreweras_axis_totals(max_length)
    totals = [1]
    for m in range(1, max_length + 1):
        totals.append(3 * totals[-1] - 2 * axis[m - 1])
    return totals


def kreweras_full_count(p: int, q: int, r: int) -> Tuple[int, int]:
    """
    Walks with p West, q South and r North-East steps, by two double sums.

    Both values count walks of length p + q + r ending at (r - p, r - q).
    """
    _check_nonnegative(p=p, q=q, r=r)
    if r < p or r < q:
        raise QuadrantError(f"endpoint ({r - p},{r - q}) lies outside the quarter plane")
    first = Fraction(multinomial(p, q, r)) * (1 - Fraction(p + q, r + 1))
    for h in range(1, p + 1):
        for k in range(1, q + 1):
            sign = -1 if (h + k) % 2 else 1
            first += (
                    Fraction(sign, (h + k) * (h + k - 1))
                    * binomial(h + k, h)
                    * binomial(2 * h + 2 * k - 2, 2 * h - 1)
                    * multinomial(p - h, q - k, r + h + k)
            )
    second = multinomial(p, q, r)
    for n in range(min(p, q, r) + 1):
        for i in range(r - n + 1):
            crossing = multinomial(p - n, q - n - i - 1, r - n - i) + multinomial(p - n - i - 1, q - n, r - n - i)
            if crossing:
                second -= kreweras_axis_count(i, n) * crossing
    return exact_integer(first), second


@dataclass(frozen=True)
class KrewerasSolution:
    x_series: TSeries
    q00: TSeries
    qx0: TSeries
    order: int


def solve_x(order: int) -> TSeries:
    """The series X = t (2 + X^3)."""
    t = TSeries.t(1)
    return newton_root([-t * 2, 1, 0, -t], LaurentPoly.zero(1), order)


def solve_kreweras(order: int) -> KrewerasSolution:
    """
    Q(0,0) and Q(x,0) for Kreweras walks, through t^order.

    Q(x,0) is assembled coefficientwise in x; the closed form with
    sqrt(1 - x X^2) is evaluated as well and must agree.
    """
    if order < 1:
        raise InputError(f"order must be at least 1, got {order}")
    x_series = solve_x(order + 3)
    x_cubed = x_series ** 3
    q00 = (x_series.shift(-1) * Fraction(1, 2) * (1 - x_cubed * Fraction(1, 4))).truncate(order)

    qx0 = TSeries.zero(1)
    for i in range(order // 2 + 1):
        row = (
                (x_series ** (2 * i + 1)).shift(-1) * Fraction(1, 2 * 4 ** i)
                * (catalan(i) - x_cubed * Fraction(catalan(i + 1), 4))
        )
        qx0 = qx0 + row * LaurentPoly.variable(0, 1, i)
    qx0 = qx0.truncate(order)

    if not (qx0.filter(lambda key: key == (0,)) - q00).is_zero():
        raise VerificationError("the x^0 row of Q(x,0) differs from Q(0,0)")
    if not (sqrt_form_qx0(x_series) - qx0).is_zero():
        raise VerificationError("the coefficientwise Q(x,0) differs from its square-root form")
    logger.info(f"Solved Kreweras series through t^{order}")
    return KrewerasSolution(x_series.truncate(order), q00, qx0, order)


def sqrt_form_qx0(x_series: TSeries) -> TSeries:
    """Q(x,0) = 1/(tx) (1/(2t) - 1/x - (1/X - 1/x) sqrt(1 - x X^2))."""
    x = LaurentPoly.variable(0, 1)
    xbar = LaurentPoly.variable(0, 1, -1)
    root = sqrt_series(1 - x_series * x_series * x)
    inner = TSeries.t(1, -1) * Fraction(1, 2) - xbar - (x_series.inverse() - xbar) * root
    return (inner * xbar).shift(-1)


# Q(x,0) has x-exponents at most n/2 at t^n
AXIS_DEGREE_BOUND = DegreeBound(Fraction(1, 2), Fraction(0), Fraction(0), Fraction(0))


def quadratic_method_residuals(solution: KrewerasSolution) -> Tuple[TSeries, TSeries, TSeries]:
    """
    The quadratic equation in Q(x,0) and its two partial derivatives, all at x = X, u = Q(X,0).
    """
    t = TSeries.t(1)
    x_series = solve_x(solution.order + 1)
    u = substitute(solution.qx0, x_series, AXIS_DEGREE_BOUND)
    equation = t * t * x_series * x_series * u * u + (t * 2 - x_series) * u - t * solution.q00 * 2 + x_series
    d_u = t * t * x_series * x_series * u * 2 + t * 2 - x_series
    d_x = t * t * x_series * u * u * 2 - u + 1
    return equation, d_u, d_x


def quadratic_equation_residual(qx0: TSeries, q00: TSeries) -> TSeries:
    """t^2 x^2 Q(x,0)^2 + (2t - x) Q(x,0) - 2t Q(0,0) + x."""
    t = TSeries.t(1)
    x = TSeries.variable(0, 1)
    return (t * x) ** 2 * qx0 * qx0 + (t * 2 - x) * qx0 - t * q00 * 2 + x


# square and diagonal lattices

def square_count(i: int, j: int, n: int) -> int:
    _check_nonnegative(i=i, j=j, n=n)
    value = (
            Fraction((i + 1) * (j + 1), (n + 1) * (n + 2))
            * half_binomial(n + 2, n + i - j + 2)
            * half_binomial(n + 2, n - i - j)
    )
    return exact_integer(value)


def square_total(n: int) -> int:
    _check_nonnegative(n=n)
    return binomial(n, n // 2) * binomial(n + 1, (n + 1) // 2)


def square_shuffle_total(n: int) -> int:
    """Shuffles of two Dyck prefixes of lengths m and n - m."""
    _check_nonnegative(n=n)
    return sum(
        binomial(n, m) * binomial(m, m // 2) * binomial(n - m, (n - m) // 2)
        for m in range(n + 1)
    )


def square_axis_total(n: int) -> int:
    _check_nonnegative(n=n)
    _factorials.ensure(n + 2)
    total = 0
    for i in range(n % 2, n + 1, 2):
        total += (i + 1) * _factorials.binomial(n + 2, (n + i + 2) // 2) * _factorials.binomial(n + 2, (n - i) // 2)
    return exact_integer(Fraction(total, (n + 1) * (n + 2)))


def diagonal_count(i: int, j: int, n: int) -> int:
    _check_nonnegative(i=i, j=j, n=n)
    value = (
            Fraction((i + 1) * (j + 1), (n + 1) ** 2)
            * half_binomial(n + 1, n - i)
            * half_binomial(n + 1, n - j)
    )
    return exact_integer(value)


def diagonal_total(n: int) -> int:
    _check_nonnegative(n=n)
    return binomial(n, n // 2) ** 2


def diagonal_axis_total(n: int) -> int:
    """Walks ending on the x-axis: the endpoint row j = 0 needs n even."""
    _check_nonnegative(n=n)
    if n % 2:
        return 0
    _factorials.ensure(n + 1)
    column = _factorials.binomial(n + 1, n // 2)
    row = sum((i + 1) * _factorials.binomial(n + 1, (n - i) // 2) for i in range(0, n + 1, 2))
    return exact_integer(Fraction(column * row, (n + 1) ** 2))


def square_kernel_expansions(order: int) -> Tuple[TSeries, TSeries]:
    """
    Y0 and R(x) = t x Q(x,0) for the square lattice from their double-sum expansions.
    """
    if order < 1:
        raise InputError(f"order must be at least 1, got {order}")
    y0_terms = {}
    r_terms = {}
    for m in range(order // 2 + 1):
        for i in range(order + 1):
            k = 2 * m + i + 1
            if k > order:
                break
            value = Fraction(binomial(k, m + i) * binomial(k, m), k)
            y0_terms[(k, i)] = value
            if i:
                y0_terms[(k, -i)] = value
            r_terms[(k, i + 1)] = Fraction((i + 1) * binomial(k + 1, m + i + 1) * binomial(k + 1, m), k * (k + 1))
    return TSeries.from_terms(y0_terms, 1, order), TSeries.from_terms(r_terms, 1, order)
